"""Tests for the divisor-table cache file."""

import numpy as np
import pytest

from hardy_moments.divisor import build_table, load_table, read_header, save_table
from hardy_moments.divisor.cache import HEADER
from hardy_moments.errors import TableCacheError


class TestTableCache:
    """Writing, validating and reading cache files."""

    @pytest.fixture
    def cache_file(self, tmp_path):
        """A freshly written cache for n <= 500."""
        return save_table(build_table(500), tmp_path / "d.bin")

    def test_load_restores_table(self, cache_file):
        """Loaded arrays equal the sieved ones."""
        table = load_table(cache_file)
        reference = build_table(500)
        assert table.limit == 500
        np.testing.assert_array_equal(table.d, reference.d)
        np.testing.assert_array_equal(table.d3, reference.d3)

    def test_header(self, cache_file):
        """read_header reports version and limit."""
        assert read_header(cache_file) == (1, 500)

    def test_file_size(self, cache_file):
        """Header plus two uint32 arrays."""
        assert cache_file.stat().st_size == HEADER.size + 8 * 500

    def test_checksum(self, cache_file):
        """A flipped payload byte fails validation."""
        raw = bytearray(cache_file.read_bytes())
        raw[-1] ^= 0xFF
        cache_file.write_bytes(bytes(raw))
        with pytest.raises(TableCacheError, match="checksum"):
            load_table(cache_file)

    def test_truncated(self, cache_file):
        """A short payload fails validation."""
        cache_file.write_bytes(cache_file.read_bytes()[:-4])
        with pytest.raises(TableCacheError):
            load_table(cache_file)

    def test_bad_magic(self, tmp_path):
        """Files without the magic are rejected."""
        path = tmp_path / "junk.bin"
        path.write_bytes(b"\x00" * 100)
        with pytest.raises(TableCacheError, match="not a divisor cache"):
            load_table(path)
        with pytest.raises(TableCacheError):
            read_header(path)

    def test_missing_file(self, tmp_path):
        """Missing files surface as TableCacheError, an OSError."""
        with pytest.raises(OSError):
            load_table(tmp_path / "absent.bin")
