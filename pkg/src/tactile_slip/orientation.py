"""Principal-orientation estimators for a contact region.

Three interchangeable methods share one angle convention: image frame
(x = column rightward, y = row downward), angle in degrees measured from
+x toward +y, reduced to (-90, 90]. An orientation is an axis, defined
modulo 180; resolving its sign over time is the tracker's job.

Estimates carry an elongation (square root of the major/minor eigenvalue
ratio of the second-moment matrix, or the fitted axis ratio for the
ellipse method) and a validity flag. Near-circular or tiny regions give
elongation close to 1 and come back invalid: a disc's rotation is
unobservable from its contact region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .masks import BinaryMask
from .thinning import Skeleton

DEFAULT_CIRCULARITY_THRESHOLD = 1.3
DEFAULT_MIN_AREA = 20
# skeletons are one pixel thick, so their point count is far below any
# sensible region min-area; two points already define an axis
DEFAULT_MIN_SKELETON_POINTS = 2
MIN_ELLIPSE_POINTS = 6

_EIG_EPS = 1e-9


@dataclass(frozen=True)
class AngleEstimate:
    """Orientation of the principal axis, with a degeneracy flag."""

    angle_deg: float
    elongation: float
    valid: bool

    def __post_init__(self):
        if not -90.0 < self.angle_deg <= 90.0:
            raise ValueError(f"angle_deg must lie in (-90, 90], got {self.angle_deg}")
        if self.elongation < 1.0:
            raise ValueError(f"elongation must be >= 1, got {self.elongation}")


INVALID_ESTIMATE = AngleEstimate(angle_deg=0.0, elongation=1.0, valid=False)


@dataclass(frozen=True)
class MomentSet:
    """Area, centroid, and central second moments of a pixel set."""

    m00: int
    centroid_x: float
    centroid_y: float
    mu20: float
    mu02: float
    mu11: float


def reduce_axis_deg(angle_deg: float) -> float:
    """Reduce an axis angle to the canonical (-90, 90] representative."""
    r = math.fmod(angle_deg, 180.0)
    if r > 90.0:
        r -= 180.0
    elif r <= -90.0:
        r += 180.0
    return r


def axis_difference_deg(a: float, b: float) -> float:
    """Absolute angular distance between two axes, in [0, 90]."""
    d = abs(reduce_axis_deg(a - b))
    return d


def _moments_of_points(xs: np.ndarray, ys: np.ndarray) -> MomentSet:
    n = xs.size
    if n == 0:
        return MomentSet(0, 0.0, 0.0, 0.0, 0.0, 0.0)
    cx = float(xs.mean())
    cy = float(ys.mean())
    dx = xs - cx
    dy = ys - cy
    return MomentSet(
        m00=int(n),
        centroid_x=cx,
        centroid_y=cy,
        mu20=float(np.dot(dx, dx)),
        mu02=float(np.dot(dy, dy)),
        mu11=float(np.dot(dx, dy)),
    )


def region_moments(mask: BinaryMask) -> MomentSet:
    """Centroid and central second moments over foreground pixel centers."""
    coords = mask.coords()
    return _moments_of_points(
        coords[:, 1].astype(np.float64), coords[:, 0].astype(np.float64)
    )


def _principal_axis(m: MomentSet) -> tuple[float, float]:
    """(angle_deg, elongation) of the second-moment principal axis."""
    angle = 0.5 * math.degrees(math.atan2(2.0 * m.mu11, m.mu20 - m.mu02))
    half_trace = 0.5 * (m.mu20 + m.mu02)
    disc = math.hypot(0.5 * (m.mu20 - m.mu02), m.mu11)
    lam_max = half_trace + disc
    lam_min = max(half_trace - disc, _EIG_EPS)
    elongation = math.sqrt(max(lam_max, _EIG_EPS) / lam_min)
    return reduce_axis_deg(angle), max(elongation, 1.0)


def _estimate_from_moments(
    m: MomentSet, min_count: int, circularity_threshold: float
) -> AngleEstimate:
    if m.m00 < max(min_count, 1):
        return INVALID_ESTIMATE
    angle, elongation = _principal_axis(m)
    if elongation < circularity_threshold:
        return AngleEstimate(angle_deg=0.0, elongation=elongation, valid=False)
    return AngleEstimate(angle_deg=angle, elongation=elongation, valid=True)


def pca_orientation(
    mask: BinaryMask,
    min_area: int = DEFAULT_MIN_AREA,
    circularity_threshold: float = DEFAULT_CIRCULARITY_THRESHOLD,
) -> AngleEstimate:
    """Principal axis of the region's second central moments."""
    return _estimate_from_moments(region_moments(mask), min_area, circularity_threshold)


def skeleton_orientation(
    skeleton: Skeleton,
    min_points: int = DEFAULT_MIN_SKELETON_POINTS,
    circularity_threshold: float = DEFAULT_CIRCULARITY_THRESHOLD,
) -> AngleEstimate:
    """Orthogonal (total-least-squares) line fit through the skeleton points.

    Equivalent to the principal axis of the point set: the TLS line
    minimizes summed squared perpendicular distance, which is exactly the
    direction of maximal second moment.
    """
    coords = skeleton.coords_array()
    if coords.shape[0] < max(min_points, 2):
        return INVALID_ESTIMATE
    m = _moments_of_points(
        coords[:, 1].astype(np.float64), coords[:, 0].astype(np.float64)
    )
    return _estimate_from_moments(m, 2, circularity_threshold)


def boundary_points(mask: BinaryMask) -> np.ndarray:
    """Foreground pixels with at least one background 4-neighbor, as (n, 2)."""
    a = mask.pixels
    padded = np.pad(a, 1, mode="constant", constant_values=False)
    interior = (
        padded[:-2, 1:-1] & padded[2:, 1:-1] & padded[1:-1, :-2] & padded[1:-1, 2:]
    )
    return np.argwhere(a & ~interior)


def _fit_conic_ellipse(xs: np.ndarray, ys: np.ndarray) -> tuple[float, ...] | None:
    """Direct least-squares conic fit constrained to an ellipse.

    Returns (A, B, C, D, E, F) for A x^2 + B xy + C y^2 + D x + E y + F = 0,
    or None when the scatter is degenerate. Uses the stabilized two-block
    formulation of the Fitzgibbon constraint 4AC - B^2 = 1.
    """
    x = xs - xs.mean()
    y = ys - ys.mean()
    d1 = np.column_stack([x * x, x * y, y * y])
    d2 = np.column_stack([x, y, np.ones_like(x)])
    s1 = d1.T @ d1
    s2 = d1.T @ d2
    s3 = d2.T @ d2
    try:
        t = -np.linalg.solve(s3, s2.T)
    except np.linalg.LinAlgError:
        return None
    m = s1 + s2 @ t
    # premultiply by inverse of the constraint matrix [[0,0,2],[0,-1,0],[2,0,0]]
    reduced = np.array([m[2] / 2.0, -m[1], m[0] / 2.0])
    try:
        _, eigvec = np.linalg.eig(reduced)
    except np.linalg.LinAlgError:
        return None
    # the admissible eigenvector satisfies 4ac - b^2 > 0; it is real, so
    # dropping imaginary parts only affects the inadmissible columns
    vec = np.real(eigvec)
    cond = 4.0 * vec[0] * vec[2] - vec[1] ** 2
    good = np.where(cond > 0)[0]
    if good.size == 0:
        return None
    a1 = vec[:, good[0]]
    a2 = t @ a1
    aa, bb, cc = (float(v) for v in a1)
    dd, ee, ff = (float(v) for v in a2)
    # undo the centering shift
    mx, my = float(xs.mean()), float(ys.mean())
    d0 = dd - 2.0 * aa * mx - bb * my
    e0 = ee - 2.0 * cc * my - bb * mx
    f0 = ff + aa * mx * mx + bb * mx * my + cc * my * my - dd * mx - ee * my
    return aa, bb, cc, d0, e0, f0


def _conic_axis(coeffs: tuple[float, ...]) -> tuple[float, float] | None:
    """(major-axis angle_deg, axis ratio) of an ellipse conic, or None."""
    aa, bb, cc, dd, ee, ff = coeffs
    m = np.array([[aa, bb / 2.0], [bb / 2.0, cc]])
    try:
        center = np.linalg.solve(2.0 * m, [-dd, -ee])
    except np.linalg.LinAlgError:
        return None
    x0, y0 = center
    g = (
        aa * x0 * x0 + bb * x0 * y0 + cc * y0 * y0 + dd * x0 + ee * y0 + ff
    )
    eigval, eigvec = np.linalg.eigh(m)
    lam_min, lam_max = float(eigval[0]), float(eigval[1])
    # real bounded ellipse needs both eigenvalues on one side of zero,
    # opposite in sign to the centered constant
    if lam_min * lam_max <= 0 or g * lam_min >= 0:
        return None
    ratio = math.sqrt(lam_max / lam_min) if lam_min > 0 else math.sqrt(lam_min / lam_max)
    # major axis lies along the eigenvector of the smaller |eigenvalue|
    v = eigvec[:, 0] if abs(lam_min) <= abs(lam_max) else eigvec[:, 1]
    angle = reduce_axis_deg(math.degrees(math.atan2(v[1], v[0])))
    return angle, abs(ratio)


def ellipse_orientation(
    mask: BinaryMask,
    min_area: int = DEFAULT_MIN_AREA,
    circularity_threshold: float = DEFAULT_CIRCULARITY_THRESHOLD,
) -> AngleEstimate:
    """Major-axis orientation of an ellipse fit to the region boundary.

    The boundary conic fit is deliberately distinct from the moments
    route; the two agreeing on elongated regions is a useful cross-check.
    Any fit failure is reported as valid = False, never an exception.
    """
    m = region_moments(mask)
    if m.m00 < max(min_area, 1):
        return INVALID_ESTIMATE
    pts = boundary_points(mask)
    if pts.shape[0] < MIN_ELLIPSE_POINTS:
        return INVALID_ESTIMATE
    coeffs = _fit_conic_ellipse(
        pts[:, 1].astype(np.float64), pts[:, 0].astype(np.float64)
    )
    if coeffs is None:
        return INVALID_ESTIMATE
    axis = _conic_axis(coeffs)
    if axis is None:
        return INVALID_ESTIMATE
    angle, elongation = axis
    if not math.isfinite(angle) or not math.isfinite(elongation):
        return INVALID_ESTIMATE
    elongation = max(elongation, 1.0)
    if elongation < circularity_threshold:
        return AngleEstimate(angle_deg=0.0, elongation=elongation, valid=False)
    return AngleEstimate(angle_deg=angle, elongation=elongation, valid=True)
