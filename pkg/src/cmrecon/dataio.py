"""On-disk containers: a small binary array format and benchmark reports.

Array container layout (all integers little-endian, no padding):

    bytes 0..7    magic "CMRX0001"
    byte  8       kind: 0 k-space, 1 image, 2 maps, 3 mask
    byte  9       dtype: 0 complex128 (interleaved real/imag float64),
                         1 float64, 2 uint8
    byte  10      ndim
    bytes 11..    ndim u32 dimension sizes, axis order
                  (coil, frame, row, column) with absent axes omitted
    payload       row-major array data, exactly prod(dims) * itemsize

Every kind constrains dtype and ndim (see _KIND_RULES); readers verify
magic, the kind table, dimension positivity, and exact payload length,
and report the byte offset of the first violation.  Reports are written
as a CSV table plus a JSON mirror of the same rows.
"""

from __future__ import annotations

import json
import struct
from dataclasses import asdict
from decimal import Decimal
from pathlib import Path

import numpy as np

from .errors import FormatError

__all__ = ["write_array", "read_array", "write_report", "MAGIC", "KINDS"]

MAGIC = b"CMRX0001"

KINDS = ("kspace", "image", "maps", "mask")

_DTYPE_CODES = {0: np.dtype("<c16"), 1: np.dtype("<f8"), 2: np.dtype("u1")}

# kind id -> (allowed dtype codes, allowed ndim values)
_KIND_RULES = {
    0: ((0,), (4,)),          # kspace: complex (coil, frame, row, column)
    1: ((0, 1), (2, 3)),      # image: complex or real, single frame allowed
    2: ((0,), (3,)),          # maps: complex (coil, row, column)
    3: ((2,), (2, 3)),        # mask: binary, single frame allowed
}

_OFF_KIND = 8
_OFF_DTYPE = 9
_OFF_NDIM = 10
_OFF_DIMS = 11


def _dtype_code(arr: np.ndarray, kind_id: int) -> int:
    if np.issubdtype(arr.dtype, np.complexfloating):
        return 0
    if np.issubdtype(arr.dtype, np.floating):
        return 1
    if arr.dtype == np.uint8 or arr.dtype == bool:
        return 2
    raise FormatError(_OFF_DTYPE, f"no dtype code for array dtype {arr.dtype}")


def write_array(path, array: np.ndarray, kind: str) -> None:
    """Serialize one array under the given kind.

    The array's dtype and ndim must be legal for the kind, so every
    file this function produces is readable by :func:`read_array`.
    """
    if kind not in KINDS:
        raise FormatError(_OFF_KIND, f"unknown kind {kind!r}")
    kind_id = KINDS.index(kind)
    arr = np.ascontiguousarray(np.asarray(array))
    code = _dtype_code(arr, kind_id)
    allowed_codes, allowed_ndims = _KIND_RULES[kind_id]
    if code not in allowed_codes:
        raise FormatError(
            _OFF_DTYPE, f"kind {kind!r} cannot hold dtype code {code}"
        )
    if arr.ndim not in allowed_ndims:
        raise FormatError(
            _OFF_NDIM,
            f"kind {kind!r} expects ndim in {allowed_ndims}, got {arr.ndim}",
        )
    if kind_id == 3 and not np.isin(arr, (0, 1)).all():
        raise FormatError(
            _OFF_DIMS + 4 * arr.ndim, "mask payload must be 0/1 valued"
        )
    header = MAGIC + struct.pack(
        "<BBB" + "I" * arr.ndim, kind_id, code, arr.ndim, *arr.shape
    )
    payload = arr.astype(_DTYPE_CODES[code], copy=False).tobytes(order="C")
    Path(path).write_bytes(header + payload)


def read_array(path) -> tuple[np.ndarray, str]:
    """Parse one container, returning (array, kind name).

    Raises FormatError naming the byte offset of the first violation:
    bad magic at 0, unknown kind at 8, unknown or mismatched dtype at 9,
    illegal ndim at 10, a zero dimension at its own offset, and payload
    length mismatches at the payload offset.
    """
    blob = Path(path).read_bytes()
    if len(blob) < len(MAGIC) or blob[: len(MAGIC)] != MAGIC:
        raise FormatError(0, "bad magic, not an array container")
    if len(blob) < _OFF_DIMS:
        raise FormatError(len(blob), "truncated header")
    kind_id = blob[_OFF_KIND]
    if kind_id not in _KIND_RULES:
        raise FormatError(_OFF_KIND, f"unknown kind byte {kind_id}")
    code = blob[_OFF_DTYPE]
    if code not in _DTYPE_CODES:
        raise FormatError(_OFF_DTYPE, f"unknown dtype byte {code}")
    ndim = blob[_OFF_NDIM]
    allowed_codes, allowed_ndims = _KIND_RULES[kind_id]
    kind = KINDS[kind_id]
    if code not in allowed_codes:
        raise FormatError(_OFF_DTYPE, f"kind {kind!r} cannot hold dtype code {code}")
    if ndim not in allowed_ndims:
        raise FormatError(_OFF_NDIM, f"kind {kind!r} forbids ndim {ndim}")
    dims_end = _OFF_DIMS + 4 * ndim
    if len(blob) < dims_end:
        raise FormatError(len(blob), "truncated dimension list")
    dims = struct.unpack("<" + "I" * ndim, blob[_OFF_DIMS:dims_end])
    count = 1
    for i, d in enumerate(dims):
        if d == 0:
            raise FormatError(_OFF_DIMS + 4 * i, "zero dimension")
        count *= d
    dtype = _DTYPE_CODES[code]
    expected = count * dtype.itemsize
    actual = len(blob) - dims_end
    if actual != expected:
        raise FormatError(
            dims_end,
            f"payload holds {actual} bytes, shape {dims} needs {expected}",
        )
    arr = np.frombuffer(blob, dtype=dtype, count=count, offset=dims_end)
    arr = arr.reshape(dims).copy()
    if kind_id == 3 and not np.isin(arr, (0, 1)).all():
        raise FormatError(dims_end, "mask payload must be 0/1 valued")
    return arr, kind


def _format_float(value: float) -> str:
    """Six significant digits, positional; infinities print as inf."""
    if value != value:
        return "nan"
    if value == float("inf"):
        return "inf"
    if value == float("-inf"):
        return "-inf"
    if value == 0.0:
        # Zero has no significant digits; the fixed six-decimal form is
        # the pinned rendering.
        return "0.000000"
    d = Decimal(repr(value))
    lead = d.adjusted()
    # normalize into [1, 10), keep exactly 6 digits, shift back
    six = d.scaleb(-lead).quantize(Decimal("1.00000"))
    return format(six.scaleb(lead), "f")


_REPORT_FIELDS = (
    "method",
    "volume",
    "acceleration",
    "scheme",
    "ssim",
    "ssim3d",
    "psnr",
    "nmse",
    "wall_seconds",
)


def write_report(path, reports) -> tuple[Path, Path]:
    """Write benchmark rows as CSV plus a JSON mirror.

    ``path`` may carry a .csv or .json suffix or none; both siblings are
    written and returned.  Rows are sorted by (method, volume).  Float
    cells use 6 significant digits; non-finite values appear as inf,
    -inf, or nan strings in both files.
    """
    base = Path(path)
    if base.suffix in (".csv", ".json"):
        base = base.with_suffix("")
    csv_path = base.with_suffix(".csv")
    json_path = base.with_suffix(".json")

    rows = sorted(reports, key=lambda r: (r.method, r.volume))
    lines = [",".join(_REPORT_FIELDS)]
    records = []
    for row in rows:
        data = asdict(row)
        cells = []
        record = {}
        for name in _REPORT_FIELDS:
            value = data[name]
            if isinstance(value, float):
                text = _format_float(value)
                cells.append(text)
                record[name] = float(text) if np.isfinite(value) else text
            else:
                cells.append(str(value))
                record[name] = value
        lines.append(",".join(cells))
        records.append(record)
    csv_path.write_text("\n".join(lines) + "\n")
    json_path.write_text(json.dumps(records, indent=2) + "\n")
    return csv_path, json_path
