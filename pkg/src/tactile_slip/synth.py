"""Synthetic contact-shape generator: the ground-truth oracle.

Rasterization uses continuous image coordinates where pixel (row, col)
covers the unit square [col, col+1] x [row, row+1] and is sampled at its
center (col + 0.5, row + 0.5). A pixel is foreground iff its center lies
inside the shape. Shape centers and sizes are given in the same continuous
frame, so a canvas-centered shape sits at (canvas_w / 2, canvas_h / 2).

Sequences are deterministic: the same spec and seed yield bit-identical
frames on any machine with the same numpy generation (PCG64) semantics.
Noise flips only boundary-adjacent pixels so the region's topology and
ground-truth angle survive; the optional global salt-and-pepper mode is
off by default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeFitError
from .masks import BinaryMask

SHAPE_KINDS = ("capsule", "rectangle", "ellipse", "disc")
GENERATOR_NAME = "numpy-pcg64"


@dataclass(frozen=True)
class ShapeSpec:
    """An elongated contact shape posed on a canvas."""

    kind: str
    length: float
    width: float
    center: tuple[float, float]  # (x, y)
    angle_deg: float
    canvas: tuple[int, int]  # (width, height)

    def __post_init__(self):
        if self.kind not in SHAPE_KINDS:
            raise ValueError(f"kind must be one of {SHAPE_KINDS}, got {self.kind!r}")
        if not self.length >= self.width >= 1:
            raise ValueError(
                f"need length >= width >= 1, got length={self.length} width={self.width}"
            )
        if self.kind == "disc" and self.length != self.width:
            raise ValueError("disc needs length == width (the diameter)")
        if self.canvas[0] < 1 or self.canvas[1] < 1:
            raise ValueError(f"canvas must be at least 1x1, got {self.canvas}")

    def at_angle(self, angle_deg: float) -> "ShapeSpec":
        return ShapeSpec(
            self.kind, self.length, self.width, self.center, angle_deg, self.canvas
        )

    def half_extents(self) -> tuple[float, float]:
        """Exact half-width and half-height of the rotated bounding box."""
        th = math.radians(self.angle_deg)
        c, s = abs(math.cos(th)), abs(math.sin(th))
        hl, hw = self.length / 2.0, self.width / 2.0
        if self.kind == "capsule":
            return hl * c + hw, hl * s + hw
        if self.kind == "rectangle":
            return hl * c + hw * s, hl * s + hw * c
        if self.kind == "ellipse":
            return math.hypot(hl * c, hw * s), math.hypot(hl * s, hw * c)
        return hl, hl  # disc


@dataclass(frozen=True)
class SequenceSpec:
    """A rotation schedule for one shape, with seeded boundary noise."""

    shape: ShapeSpec
    schedule: tuple[float, ...]
    boundary_noise_p: float = 0.0
    seed: int = 0
    global_noise_p: float = 0.0  # salt-and-pepper over the whole grid, normally off

    def __post_init__(self):
        object.__setattr__(self, "schedule", tuple(float(a) for a in self.schedule))
        if not 0.0 <= self.boundary_noise_p < 1.0:
            raise ValueError(f"boundary_noise_p must be in [0, 1), got {self.boundary_noise_p}")
        if not 0.0 <= self.global_noise_p < 1.0:
            raise ValueError(f"global_noise_p must be in [0, 1), got {self.global_noise_p}")


def _check_fit(spec: ShapeSpec) -> None:
    ex, ey = spec.half_extents()
    cx, cy = spec.center
    w, h = spec.canvas
    if cx - ex < 0 or cx + ex > w or cy - ey < 0 or cy + ey > h:
        raise ShapeFitError(
            f"{spec.kind} (length={spec.length}, width={spec.width}) at "
            f"{spec.angle_deg:.1f} deg does not fit the {w}x{h} canvas"
        )


def rasterize(spec: ShapeSpec) -> BinaryMask:
    """Rasterize a shape: pixel centers inside the shape become foreground."""
    _check_fit(spec)
    w, h = spec.canvas
    ys, xs = np.mgrid[0:h, 0:w]
    px = xs + 0.5 - spec.center[0]
    py = ys + 0.5 - spec.center[1]
    th = math.radians(spec.angle_deg)
    c, s = math.cos(th), math.sin(th)
    u = c * px + s * py       # along the shape's long axis
    v = -s * px + c * py      # across it
    hl, hw = spec.length / 2.0, spec.width / 2.0
    if spec.kind == "capsule":
        du = np.maximum(np.abs(u) - hl, 0.0)
        inside = du * du + v * v <= hw * hw
    elif spec.kind == "rectangle":
        inside = (np.abs(u) <= hl) & (np.abs(v) <= hw)
    elif spec.kind == "ellipse":
        inside = (u / hl) ** 2 + (v / hw) ** 2 <= 1.0
    else:  # disc
        inside = px * px + py * py <= hl * hl
    return BinaryMask(inside)


def _boundary_band(pixels: np.ndarray) -> np.ndarray:
    """Pixels on either side of the contour: foreground with a background
    4-neighbor, or background with a foreground 4-neighbor."""
    padded = np.pad(pixels, 1, mode="constant", constant_values=False)
    n4_all = padded[:-2, 1:-1] & padded[2:, 1:-1] & padded[1:-1, :-2] & padded[1:-1, 2:]
    n4_any = padded[:-2, 1:-1] | padded[2:, 1:-1] | padded[1:-1, :-2] | padded[1:-1, 2:]
    return (pixels & ~n4_all) | (~pixels & n4_any)


def _frame_rng(seed: int, frame_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(frame_index,)))


def _apply_noise(mask: BinaryMask, spec: SequenceSpec, frame_index: int) -> BinaryMask:
    if spec.boundary_noise_p == 0.0 and spec.global_noise_p == 0.0:
        return mask
    rng = _frame_rng(spec.seed, frame_index)
    pixels = mask.pixels.copy()
    if spec.boundary_noise_p > 0.0:
        band = _boundary_band(pixels)
        flips = rng.random(int(band.sum())) < spec.boundary_noise_p
        rows, cols = np.nonzero(band)
        pixels[rows[flips], cols[flips]] ^= True
    if spec.global_noise_p > 0.0:
        pixels ^= rng.random(pixels.shape) < spec.global_noise_p
    return BinaryMask(pixels)


def gen_sequence(spec: SequenceSpec) -> list[tuple[BinaryMask, float]]:
    """Frames of (possibly noisy) masks with their pre-noise truth angles."""
    out = []
    for k, angle in enumerate(spec.schedule):
        clean = rasterize(spec.shape.at_angle(angle))
        out.append((_apply_noise(clean, spec, k), angle))
    return out


@dataclass(frozen=True)
class GraySceneSpec:
    """Parameters for turning masks into plausible raw tactile frames."""

    background: int = 80
    contact_delta: int = 70
    texture_amplitude: int = 6
    texture_seed: int = 1234


def gray_reference(canvas: tuple[int, int], scene: GraySceneSpec = GraySceneSpec()):
    """A no-contact frame: flat background plus fixed mild texture."""
    from .masks import GrayFrame

    w, h = canvas
    rng = np.random.default_rng(scene.texture_seed)
    base = np.full((h, w), scene.background, dtype=np.int16)
    if scene.texture_amplitude > 0:
        base += rng.integers(
            -scene.texture_amplitude, scene.texture_amplitude + 1, size=(h, w)
        ).astype(np.int16)
    return GrayFrame(np.clip(base, 0, 255).astype(np.uint8))


def gray_frame_from_mask(mask: BinaryMask, reference, scene: GraySceneSpec = GraySceneSpec()):
    """Contact frame: the reference brightened by a contact blob."""
    from .masks import GrayFrame

    lifted = reference.intensity.astype(np.int16) + np.where(
        mask.pixels, scene.contact_delta, 0
    ).astype(np.int16)
    return GrayFrame(np.clip(lifted, 0, 255).astype(np.uint8))


def linear_schedule(start_deg: float, stop_deg: float, step_deg: float) -> tuple[float, ...]:
    """start, start+step, ... through stop inclusive (within float tolerance)."""
    if step_deg == 0:
        raise ValueError("step_deg must be nonzero")
    n = int(round((stop_deg - start_deg) / step_deg))
    if n < 0:
        raise ValueError("step_deg points away from stop_deg")
    return tuple(start_deg + k * step_deg for k in range(n + 1))


@dataclass(frozen=True)
class CampaignTrial:
    """One shape and seed of the synthetic slip campaign."""

    label: str
    sequence: SequenceSpec


def campaign_trials(
    kinds: tuple[str, ...] = ("capsule", "rectangle", "ellipse"),
    aspects: tuple[float, ...] = (1.5, 2.5, 4.0),
    seeds: tuple[int, ...] = (0, 1, 2, 3, 4),
    schedule: tuple[float, ...] = (),
    boundary_noise_p: float = 0.03,
    canvas: tuple[int, int] = (320, 240),
) -> list[CampaignTrial]:
    """The 9-shape x 5-seed rotation campaign used by the evaluation suite.

    Shapes cover each kind at each aspect ratio, with the base pose chosen
    so every scheduled rotation still fits the canvas.
    """
    if not schedule:
        schedule = linear_schedule(0.0, 40.0, 2.0)
    base_angles = (-10.0, 0.0, 12.0)
    trials = []
    for kind in kinds:
        for aspect, base in zip(aspects, base_angles):
            length = 150.0 if kind != "rectangle" else 140.0
            width = length / aspect
            shape = ShapeSpec(
                kind=kind,
                length=length,
                width=width,
                center=(canvas[0] / 2.0, canvas[1] / 2.0),
                angle_deg=base,
                canvas=canvas,
            )
            label = f"{kind}-a{aspect:g}"
            for seed in seeds:
                trials.append(
                    CampaignTrial(
                        label=label,
                        sequence=SequenceSpec(
                            shape=shape,
                            schedule=tuple(base + a for a in schedule),
                            boundary_noise_p=boundary_noise_p,
                            seed=seed,
                        ),
                    )
                )
    return trials
