"""Binary mask and gray frame containers plus shared morphology.

Grids are stored as 2-D numpy arrays of shape (height, width), row-major,
with row 0 at the top. Pixel (row, col) maps to image coordinates
x = col (rightward), y = row (downward). All neighborhood operations treat
pixels outside the grid as background.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import DimensionMismatchError

_STRUCT_4 = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
_STRUCT_8 = np.ones((3, 3), dtype=bool)

MORPH_OPS = ("erode", "dilate", "open", "close")


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class BinaryMask:
    """Contact-region grid; True marks foreground."""

    pixels: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.pixels)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"mask must be a non-empty 2-D grid, got shape {a.shape}")
        if a.dtype != bool:
            a = a.astype(bool)
        object.__setattr__(self, "pixels", _freeze(np.ascontiguousarray(a)))

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def count(self) -> int:
        """Number of foreground pixels."""
        return int(self.pixels.sum())

    def coords(self) -> np.ndarray:
        """Foreground (row, col) pairs in row-major order, shape (n, 2)."""
        return np.argwhere(self.pixels)

    def same_shape(self, other: "BinaryMask | GrayFrame") -> bool:
        return self.pixels.shape == other_shape(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinaryMask):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    def __hash__(self):
        return hash((self.pixels.shape, self.pixels.tobytes()))

    @classmethod
    def empty(cls, width: int, height: int) -> "BinaryMask":
        return cls(np.zeros((height, width), dtype=bool))

    @classmethod
    def from_coords(cls, width: int, height: int, coords) -> "BinaryMask":
        """Build a mask from an iterable of (row, col) pairs."""
        a = np.zeros((height, width), dtype=bool)
        for r, c in coords:
            a[r, c] = True
        return cls(a)


@dataclass(frozen=True)
class GrayFrame:
    """Raw 8-bit tactile image."""

    intensity: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.intensity)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"frame must be a non-empty 2-D grid, got shape {a.shape}")
        if a.dtype != np.uint8:
            a = a.astype(np.uint8)
        object.__setattr__(self, "intensity", _freeze(np.ascontiguousarray(a)))

    @property
    def height(self) -> int:
        return self.intensity.shape[0]

    @property
    def width(self) -> int:
        return self.intensity.shape[1]


def other_shape(g) -> tuple[int, int]:
    if isinstance(g, BinaryMask):
        return g.pixels.shape
    return g.intensity.shape


@dataclass(frozen=True)
class Component:
    """One connected component: its pixels and size."""

    coords: np.ndarray  # (n, 2) rows of (row, col), row-major order
    size: int

    def top_left(self) -> tuple[int, int]:
        """Lexicographically smallest (row, col) of the component."""
        return tuple(int(v) for v in self.coords[0])


def _structure(connectivity: int) -> np.ndarray:
    if connectivity == 4:
        return _STRUCT_4
    if connectivity == 8:
        return _STRUCT_8
    raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")


def connected_components(mask: BinaryMask, connectivity: int = 8) -> list[Component]:
    """Maximal connected components of the foreground.

    Sorted by size descending; ties broken by the smallest (row, col)
    pixel of the component in lexicographic order.
    """
    labels, n = ndimage.label(mask.pixels, structure=_structure(connectivity))
    if n == 0:
        return []
    flat = labels.ravel()
    sizes = np.bincount(flat, minlength=n + 1)
    # first row-major occurrence per label doubles as the lexicographic
    # top-left pixel, giving a deterministic tie-break
    order = np.argsort(flat, kind="stable")
    starts = np.searchsorted(flat, np.arange(1, n + 1), sorter=order)
    first_idx = order[starts]
    by_label = sorted(range(1, n + 1), key=lambda k: (-sizes[k], first_idx[k - 1]))
    out = []
    for k in by_label:
        # stable argsort keeps flat indices of each label in row-major order
        idx = order[starts[k - 1] : starts[k - 1] + sizes[k]]
        coords = np.column_stack(np.unravel_index(idx, labels.shape))
        out.append(Component(coords=_freeze(coords), size=int(sizes[k])))
    return out


def largest_component(mask: BinaryMask, connectivity: int = 8) -> BinaryMask:
    """Keep only the largest component (ties per connected_components order)."""
    comps = connected_components(mask, connectivity)
    if not comps:
        return BinaryMask.empty(mask.width, mask.height)
    out = np.zeros_like(mask.pixels)
    c = comps[0].coords
    out[c[:, 0], c[:, 1]] = True
    return BinaryMask(out)


def morph(mask: BinaryMask, op: str, radius: int) -> BinaryMask:
    """Morphology with a square structuring element of side 2*radius + 1.

    Out-of-grid pixels count as background, so erosion eats the grid
    border and dilation never wraps.
    """
    if op not in MORPH_OPS:
        raise ValueError(f"op must be one of {MORPH_OPS}, got {op!r}")
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    size = 2 * radius + 1
    a = mask.pixels.view(np.uint8)

    def erode(x):
        return ndimage.minimum_filter(x, size=size, mode="constant", cval=0)

    def dilate(x):
        return ndimage.maximum_filter(x, size=size, mode="constant", cval=0)

    if op == "erode":
        out = erode(a)
    elif op == "dilate":
        out = dilate(a)
    elif op == "open":
        out = dilate(erode(a))
    else:
        out = erode(dilate(a))
    return BinaryMask(out.astype(bool))


def require_same_shape(a, b, what: str = "grids") -> None:
    if other_shape(a) != other_shape(b):
        raise DimensionMismatchError(
            f"{what} differ in size: {other_shape(a)} vs {other_shape(b)}"
        )
