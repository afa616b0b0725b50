"""Grayscale image ingestion and label-map emission.

Binary portable graymaps (magic ``P5``, maxval 255 or 65535, two-byte samples
big-endian) are read and written by a small built-in codec so header handling
and failure modes stay explicit. Grayscale PNG input and the color overlay
output go through Pillow. All file writes are atomic (temp file + rename).
"""

import io
import os
import tempfile

import numpy as np
from PIL import Image, UnidentifiedImageError

__all__ = [
    "UnsupportedFormatError",
    "CorruptFileError",
    "read_pgm",
    "write_pgm",
    "load_image",
    "write_png",
    "LABEL_GRAYS",
    "LABEL_COLORS",
    "emit_labeling",
    "labels_from_graymap",
]


class UnsupportedFormatError(ValueError):
    """The file is recognizable but not an 8/16-bit grayscale PGM or PNG."""


class CorruptFileError(ValueError):
    """The file matches a supported format but its contents are malformed."""


# Gray levels and RGB palette for the four phase labels 0..3.
LABEL_GRAYS = np.array([0, 85, 170, 255], dtype=np.uint8)
LABEL_COLORS = np.array(
    [[0, 0, 255], [0, 128, 0], [255, 255, 0], [128, 0, 0]], dtype=np.uint8
)

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def atomic_write_bytes(path, data):
    """Write bytes to path via a temp file in the same directory plus rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _pgm_tokens(data, path):
    """Yield (token, end_offset) for whitespace-separated header tokens,

    skipping '#' comments that run to end of line."""
    i = 0
    n = len(data)
    while i < n:
        ch = data[i : i + 1]
        if ch in b" \t\r\n\x0b\x0c":
            i += 1
        elif ch == b"#":
            j = data.find(b"\n", i)
            i = n if j < 0 else j + 1
        else:
            j = i
            while j < n and data[j : j + 1] not in b" \t\r\n\x0b\x0c#":
                j += 1
            yield data[i:j], j
            i = j
    raise CorruptFileError(f"{path}: truncated graymap header")


def read_pgm(path):
    """Read a binary PGM; returns (values, maxval) with values shaped (H, W).

    Raises FileNotFoundError, UnsupportedFormatError for a non-P5 magic, and
    CorruptFileError for malformed headers or a short raster.
    """
    with open(path, "rb") as f:
        data = f.read()
    if len(data) < 2:
        raise CorruptFileError(f"{path}: file too short to be a graymap")
    magic = data[:2]
    if magic != b"P5":
        raise UnsupportedFormatError(
            f"{path}: unsupported magic {magic!r}, expected binary graymap 'P5'"
        )
    tokens = _pgm_tokens(data[2:], path)
    fields = []
    offset = 0
    for _ in range(3):
        token, offset = next(tokens)
        try:
            fields.append(int(token))
        except ValueError:
            raise CorruptFileError(f"{path}: non-numeric header token {token!r}") from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise CorruptFileError(f"{path}: invalid dimensions {width}x{height}")
    if not 0 < maxval < 65536:
        raise CorruptFileError(f"{path}: maxval {maxval} out of range")
    raster = data[2 + offset + 1 :]  # single whitespace byte after maxval
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    expected = width * height * dtype.itemsize
    if len(raster) < expected:
        raise CorruptFileError(
            f"{path}: raster holds {len(raster)} bytes, expected {expected}"
        )
    values = np.frombuffer(raster[:expected], dtype=dtype).reshape(height, width)
    return values.astype(np.uint16 if maxval > 255 else np.uint8), maxval


def write_pgm(path, values, maxval=None):
    """Write integer samples as a binary PGM (two-byte big-endian above 255)."""
    values = np.asarray(values)
    if values.ndim != 2:
        raise ValueError(f"graymap samples must be 2-D, got shape {values.shape}")
    if maxval is None:
        maxval = 65535 if values.max() > 255 else 255
    if not 0 < maxval < 65536:
        raise ValueError(f"maxval {maxval} out of range")
    if values.min() < 0 or values.max() > maxval:
        raise ValueError("sample values exceed maxval")
    h, w = values.shape
    header = f"P5\n{w} {h}\n{maxval}\n".encode("ascii")
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    atomic_write_bytes(path, header + values.astype(dtype).tobytes())


def _load_png(data, path):
    try:
        img = Image.open(io.BytesIO(data))
        img.load()
    except UnidentifiedImageError:
        raise CorruptFileError(f"{path}: not a decodable image") from None
    except OSError as exc:
        raise CorruptFileError(f"{path}: {exc}") from None
    if img.mode == "L":
        return np.asarray(img, dtype=np.float64) / 255.0
    if img.mode in ("I", "I;16"):
        return np.asarray(img, dtype=np.float64) / 65535.0
    raise UnsupportedFormatError(
        f"{path}: only grayscale input is supported, got mode {img.mode!r}"
    )


def load_image(path):
    """Load an 8/16-bit grayscale PGM or PNG, scaled to [0, 1] by the format max."""
    with open(path, "rb") as f:
        data = f.read()
    if data[:2] == b"P5":
        values, maxval = read_pgm(path)
        return values.astype(np.float64) / maxval
    if data[:8] == _PNG_MAGIC:
        return _load_png(data, path)
    if data[:1] == b"P" and data[1:2].isdigit():
        raise UnsupportedFormatError(
            f"{path}: only binary graymaps ('P5') are supported, got {data[:2]!r}"
        )
    raise UnsupportedFormatError(f"{path}: unrecognized image format")


def write_png(path, array):
    """Write an 8-bit grayscale (H, W) or color (H, W, 3) PNG."""
    buf = io.BytesIO()
    Image.fromarray(np.asarray(array, dtype=np.uint8)).save(buf, format="PNG")
    atomic_write_bytes(path, buf.getvalue())


def emit_labeling(labels, stem):
    """Write a label map twice: raw graymap and fixed-palette color image.

    ``stem`` is extended to ``<stem>.pgm`` (gray levels 0/85/170/255 for
    labels 0..3) and ``<stem>.png`` (blue/green/yellow/maroon). Returns the
    two paths.
    """
    labels = np.asarray(labels)
    if labels.min() < 0 or labels.max() > 3:
        raise ValueError("labels must lie in {0, 1, 2, 3}")
    pgm_path = f"{stem}.pgm"
    png_path = f"{stem}.png"
    write_pgm(pgm_path, LABEL_GRAYS[labels], maxval=255)
    write_png(png_path, LABEL_COLORS[labels])
    return pgm_path, png_path


def labels_from_graymap(values):
    """Decode a label graymap written by emit_labeling back to labels 0..3."""
    values = np.asarray(values)
    if not np.isin(values, LABEL_GRAYS).all():
        raise CorruptFileError("graymap contains gray levels outside the label palette")
    return (values // 85).astype(np.int_)
