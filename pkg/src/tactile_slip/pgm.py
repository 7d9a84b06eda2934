"""Binary PGM (P5) reading and writing for masks and gray frames.

Writer output is canonical: ``P5\\n<width> <height>\\n255\\n`` followed by
one byte per pixel in row-major order. Masks store foreground as 255 and
background as 0; on load, intensity >= 128 maps to foreground. A mask
round-trips bit-exactly through save/load.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .errors import PgmFormatError
from .masks import BinaryMask, GrayFrame

MASK_THRESHOLD = 128


def _read_token(f) -> bytes:
    """Next whitespace-delimited header token, skipping # comments."""
    tok = b""
    while True:
        ch = f.read(1)
        if ch == b"":
            raise PgmFormatError("truncated PGM header")
        if ch == b"#":
            while ch not in (b"\n", b"\r", b""):
                ch = f.read(1)
            continue
        if ch.isspace():
            if tok:
                return tok
            continue
        tok += ch


def read_pgm_bytes(data: bytes) -> np.ndarray:
    """Decode a P5 PGM into a uint8 array of shape (height, width)."""
    f = io.BytesIO(data)
    magic = f.read(2)
    if magic != b"P5":
        raise PgmFormatError(f"not a binary PGM (magic {magic!r}, expected b'P5')")
    try:
        width = int(_read_token(f))
        height = int(_read_token(f))
        maxval = int(_read_token(f))
    except ValueError as e:
        raise PgmFormatError(f"malformed PGM header: {e}") from None
    if width < 1 or height < 1:
        raise PgmFormatError(f"invalid PGM size {width}x{height}")
    if not 1 <= maxval <= 255:
        raise PgmFormatError(f"unsupported PGM maxval {maxval} (need 1..255)")
    raster = f.read(width * height)
    if len(raster) != width * height:
        raise PgmFormatError(
            f"truncated PGM raster: expected {width * height} bytes, got {len(raster)}"
        )
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def write_pgm_bytes(intensity: np.ndarray) -> bytes:
    a = np.ascontiguousarray(intensity, dtype=np.uint8)
    header = f"P5\n{a.shape[1]} {a.shape[0]}\n255\n".encode("ascii")
    return header + a.tobytes()


def load_gray(path: str | Path) -> GrayFrame:
    return GrayFrame(read_pgm_bytes(Path(path).read_bytes()))


def save_gray(frame: GrayFrame, path: str | Path) -> None:
    Path(path).write_bytes(write_pgm_bytes(frame.intensity))


def mask_from_bytes(data: bytes) -> BinaryMask:
    return BinaryMask(read_pgm_bytes(data) >= MASK_THRESHOLD)


def mask_to_bytes(mask: BinaryMask) -> bytes:
    return write_pgm_bytes(np.where(mask.pixels, 255, 0).astype(np.uint8))


def load_mask(path: str | Path) -> BinaryMask:
    return mask_from_bytes(Path(path).read_bytes())


def save_mask(mask: BinaryMask, path: str | Path) -> None:
    Path(path).write_bytes(mask_to_bytes(mask))
