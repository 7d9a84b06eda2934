"""Two-subiteration parallel thinning over the 8-neighborhood.

A pixel p has neighbors P2..P9 clockwise from north:

    P9 P2 P3
    P8  p P4
    P7 P6 P5

Per full iteration, two sub-passes each mark deletable pixels against the
image as it stood at the start of the sub-pass (parallel semantics) and
remove them all at once. With B(p) the count of foreground neighbors and
A(p) the number of 0->1 transitions in the cyclic sequence P2,P3,...,P9,P2:

    sub-pass 1 deletes p iff 2 <= B <= 6, A == 1, P2*P4*P6 == 0, P4*P6*P8 == 0
    sub-pass 2 deletes p iff 2 <= B <= 6, A == 1, P2*P4*P8 == 0, P2*P6*P8 == 0

Iteration stops when a full pass deletes nothing, so the result is a
fixed point: re-thinning a skeleton changes nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ThinningDivergenceError
from .masks import BinaryMask

# cap on full iterations; the scheme provably terminates well below this,
# so hitting it means an implementation bug rather than a hard input
ITERATION_CAP_FACTOR = 10


@dataclass(frozen=True)
class Skeleton:
    """One-pixel-thick remnant of a contact region."""

    source_width: int
    source_height: int
    points: frozenset  # of (row, col)

    @property
    def size(self) -> int:
        return len(self.points)

    def to_mask(self) -> BinaryMask:
        return BinaryMask.from_coords(self.source_width, self.source_height, self.points)

    def coords_array(self) -> np.ndarray:
        """Points as an (n, 2) array of (row, col), sorted row-major."""
        if not self.points:
            return np.empty((0, 2), dtype=np.intp)
        return np.array(sorted(self.points), dtype=np.intp)


def _neighbors(padded: np.ndarray):
    """The eight shifted views P2..P9 for every pixel of the unpadded grid."""
    p2 = padded[:-2, 1:-1]
    p3 = padded[:-2, 2:]
    p4 = padded[1:-1, 2:]
    p5 = padded[2:, 2:]
    p6 = padded[2:, 1:-1]
    p7 = padded[2:, :-2]
    p8 = padded[1:-1, :-2]
    p9 = padded[:-2, :-2]
    return p2, p3, p4, p5, p6, p7, p8, p9


def _subpass_deletions(img: np.ndarray, second: bool) -> np.ndarray:
    """Boolean grid of pixels deletable in one sub-pass of `img`."""
    padded = np.pad(img, 1, mode="constant", constant_values=False)
    p2, p3, p4, p5, p6, p7, p8, p9 = _neighbors(padded)
    seq = (p2, p3, p4, p5, p6, p7, p8, p9, p2)
    b = np.zeros(img.shape, dtype=np.uint8)
    for n in seq[:-1]:
        b += n
    a = np.zeros(img.shape, dtype=np.uint8)
    for cur, nxt in zip(seq[:-1], seq[1:]):
        a += ~cur & nxt
    cond = img & (b >= 2) & (b <= 6) & (a == 1)
    if not second:
        cond &= ~(p2 & p4 & p6) & ~(p4 & p6 & p8)
    else:
        cond &= ~(p2 & p4 & p8) & ~(p2 & p6 & p8)
    return cond


def _thin_array(img: np.ndarray, cap: int) -> np.ndarray:
    img = img.copy()
    for _ in range(cap):
        changed = False
        for second in (False, True):
            dele = _subpass_deletions(img, second)
            if dele.any():
                img &= ~dele
                changed = True
        if not changed:
            return img
    raise ThinningDivergenceError(f"thinning did not converge within {cap} iterations")


def thin(mask: BinaryMask) -> Skeleton:
    """Thin a contact region to its skeleton.

    Work is confined to the foreground bounding box (plus a one-pixel
    apron), which leaves the result identical and keeps the cost
    proportional to the region, not the canvas.
    """
    coords = mask.coords()
    if coords.shape[0] == 0:
        return Skeleton(mask.width, mask.height, frozenset())
    cap = ITERATION_CAP_FACTOR * max(mask.width, mask.height)
    r0, c0 = coords.min(axis=0)
    r1, c1 = coords.max(axis=0)
    window = mask.pixels[r0 : r1 + 1, c0 : c1 + 1]
    thinned = _thin_array(window, cap)
    rows, cols = np.nonzero(thinned)
    points = frozenset(zip((rows + r0).tolist(), (cols + c0).tolist()))
    return Skeleton(mask.width, mask.height, points)
