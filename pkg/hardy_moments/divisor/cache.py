"""Binary cache for divisor tables.

Layout (little endian):
    header  struct "<4sIQ32s": magic b"HMDT", format version, N_max,
            SHA-256 of the payload
    payload d(1..N_max) then d3(1..N_max), each as uint32
"""

import hashlib
import logging
import struct
from pathlib import Path

import numpy as np

from ..errors import TableCacheError
from .table import DivisorTable

logger = logging.getLogger(__name__)

MAGIC = b"HMDT"
VERSION = 1
HEADER = struct.Struct("<4sIQ32s")


def _payload(table: DivisorTable) -> bytes:
    return table.d[1:].astype("<u4").tobytes() + table.d3[1:].astype("<u4").tobytes()


def save_table(table: DivisorTable, path) -> Path:
    """Write a table to path.

    Args:
        table: Table to store.
        path: Destination file.

    Returns:
        The written path.

    Raises:
        TableCacheError: If the file cannot be written.
    """
    path = Path(path)
    payload = _payload(table)
    header = HEADER.pack(MAGIC, VERSION, table.limit, hashlib.sha256(payload).digest())
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(payload)
    except OSError as exc:
        raise TableCacheError(f"cannot write divisor cache {path}: {exc}") from exc
    logger.info("wrote divisor cache %s (N_max=%d)", path, table.limit)
    return path


def read_header(path) -> tuple:
    """Return (version, N_max) of a cache file without loading the payload."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            raw = fh.read(HEADER.size)
    except OSError as exc:
        raise TableCacheError(f"cannot read divisor cache {path}: {exc}") from exc
    if len(raw) != HEADER.size:
        raise TableCacheError(f"{path} is too short to be a divisor cache")
    magic, version, n_max, _ = HEADER.unpack(raw)
    if magic != MAGIC:
        raise TableCacheError(f"{path} is not a divisor cache (magic {magic!r})")
    return version, n_max


def load_table(path) -> DivisorTable:
    """Load and validate a cache file.

    Args:
        path: Cache file.

    Returns:
        DivisorTable.

    Raises:
        TableCacheError: On bad magic, version, length or checksum.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise TableCacheError(f"cannot read divisor cache {path}: {exc}") from exc
    if len(raw) < HEADER.size:
        raise TableCacheError(f"{path} is too short to be a divisor cache")
    magic, version, n_max, digest = HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise TableCacheError(f"{path} is not a divisor cache (magic {magic!r})")
    if version != VERSION:
        raise TableCacheError(f"{path} has cache version {version}, expected {VERSION}")
    payload = raw[HEADER.size:]
    if len(payload) != 8 * n_max:
        raise TableCacheError(f"{path} payload holds {len(payload)} bytes, expected {8 * n_max}")
    if hashlib.sha256(payload).digest() != digest:
        raise TableCacheError(f"{path} failed checksum validation")
    values = np.frombuffer(payload, dtype="<u4")
    d = np.zeros(n_max + 1, dtype=np.int32)
    d3 = np.zeros(n_max + 1, dtype=np.int32)
    d[1:] = values[:n_max]
    d3[1:] = values[n_max:]
    logger.info("loaded divisor cache %s (N_max=%d)", path, n_max)
    return DivisorTable(int(n_max), d, d3)
