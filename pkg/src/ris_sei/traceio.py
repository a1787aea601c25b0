"""Binary I/Q trace files.

Layout (little-endian throughout):

    bytes 0..7    magic "RISSEIQ1"
    bytes 8..15   sample_rate_hz, u64
    bytes 16..23  n_samples, u64
    bytes 24..    payload: n_samples interleaved float32 pairs (I, Q)

Samples are quantized to float32 on write; a file round-trips bitwise,
and arrays already representable in float32 survive write/read unchanged.
Trailing bytes beyond the declared payload are ignored so traces can be
appended to containers; a short payload is an error.
"""

from __future__ import annotations

import os
import struct
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .channel import SampleBlock
from .errors import (
    BadMagicError,
    OutOfRangeError,
    TruncatedPayloadError,
    UnreadablePathError,
)

MAGIC = b"RISSEIQ1"
_HEADER = struct.Struct("<8sQQ")


@dataclass(frozen=True)
class TraceHeader:
    sample_rate_hz: int
    n_samples: int


def write_trace(path, samples, sample_rate_hz: int) -> None:
    """Write samples atomically (temp file + rename in the target directory)."""
    path = Path(path)
    samples = np.asarray(samples, dtype=np.complex128).ravel()
    if not isinstance(sample_rate_hz, int) or not 0 <= sample_rate_hz < 2**64:
        raise OutOfRangeError("sample_rate_hz", f"must be a u64, got {sample_rate_hz!r}")
    payload = samples.astype(np.complex64).view(np.float32).astype("<f4").tobytes()
    header = _HEADER.pack(MAGIC, sample_rate_hz, len(samples))
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, suffix=".part")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(header)
            fh.write(payload)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def _read_bytes(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UnreadablePathError(f"cannot read trace {path!s}: {exc}") from exc


def read_trace_header(path) -> TraceHeader:
    data = _read_bytes(path)
    return _parse_header(path, data)


def _parse_header(path, data: bytes) -> TraceHeader:
    if len(data) < _HEADER.size:
        raise BadMagicError(f"{path!s}: file shorter than the trace header")
    magic, rate, n_samples = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagicError(f"{path!s}: bad magic {magic!r}, expected {MAGIC!r}")
    return TraceHeader(sample_rate_hz=rate, n_samples=n_samples)


def read_trace(path) -> SampleBlock:
    """Read a trace back as a SampleBlock (provenance fields unset)."""
    data = _read_bytes(path)
    header = _parse_header(path, data)
    need = header.n_samples * 8
    payload = data[_HEADER.size :]
    if len(payload) < need:
        raise TruncatedPayloadError(
            f"{path!s}: payload holds {len(payload) // 8} samples, "
            f"header declares {header.n_samples}"
        )
    iq = np.frombuffer(payload[:need], dtype="<f4").astype(np.float64)
    samples = iq[0::2] + 1j * iq[1::2]
    return SampleBlock(samples=samples, hypothesis=None, seed_used=None)
