"""Binary eigenvalue cache.

Layout, all little-endian::

    magic    8 bytes  b"HWEYL001"
    version  u32
    limit    f64
    count    u64
    count records of 21 bytes: branch u8, index0 i64, index1 i64, multiplicity u32

Values are not stored; they are recomputed from the integer indices on load,
which makes a round trip bit-exact.
"""

from __future__ import annotations

import os
import struct
from pathlib import Path

import numpy as np

from hweyl.spectrum import JumpSequence, SpectrumTable, enumerate_spectrum

MAGIC = b"HWEYL001"
FORMAT_VERSION = 1
HEADER = struct.Struct("<8sIdQ")
RECORD = np.dtype([("branch", "u1"), ("index0", "<i8"), ("index1", "<i8"), ("multiplicity", "<u4")])

CACHE_ENV = "HWEYL_CACHE_DIR"
CACHE_FILENAME = "spectrum.hweyl"


class CacheFormatError(OSError):
    pass


def write_cache(path, table: SpectrumTable) -> None:
    records = np.empty(len(table), dtype=RECORD)
    records["branch"] = table.branch
    records["index0"] = table.index0
    records["index1"] = table.index1
    records["multiplicity"] = table.multiplicity
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, FORMAT_VERSION, table.limit, len(table)))
        fh.write(records.tobytes())
    os.replace(tmp, path)


def read_header(path) -> tuple[int, float, int]:
    with open(path, "rb") as fh:
        raw = fh.read(HEADER.size)
    if len(raw) != HEADER.size:
        raise CacheFormatError(f"{path}: truncated header")
    magic, version, limit, count = HEADER.unpack(raw)
    if magic != MAGIC:
        raise CacheFormatError(f"{path}: bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise CacheFormatError(f"{path}: unsupported format version {version}")
    return version, limit, count


def read_cache(path) -> SpectrumTable:
    _, limit, count = read_header(path)
    records = np.fromfile(path, dtype=RECORD, offset=HEADER.size)
    if records.size != count:
        raise CacheFormatError(f"{path}: header says {count} records, found {records.size}")
    return SpectrumTable(
        limit=limit,
        branch=records["branch"].astype(np.uint8),
        index0=records["index0"].astype(np.int64),
        index1=records["index1"].astype(np.int64),
        multiplicity=records["multiplicity"].astype(np.int64),
    )


def default_cache_path() -> Path:
    base = os.environ.get(CACHE_ENV)
    if base:
        return Path(base) / CACHE_FILENAME
    return Path.home() / ".cache" / "hweyl" / CACHE_FILENAME


def load_or_build(limit: float, path=None) -> JumpSequence:
    """Spectrum covering ``limit``, reusing the cache when its limit suffices."""
    path = Path(path) if path is not None else default_cache_path()
    if path.exists():
        _, cached_limit, _ = read_header(path)
        if cached_limit >= limit:
            return JumpSequence.from_table(read_cache(path))
    table = enumerate_spectrum(limit)
    write_cache(path, table)
    return JumpSequence.from_table(table)
