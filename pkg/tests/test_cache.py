import numpy as np
import pytest

from hweyl.cache import CacheFormatError, default_cache_path, load_or_build, read_cache, read_header, write_cache
from hweyl.spectrum import JumpSequence, enumerate_spectrum


def test_round_trip_is_bit_exact(tmp_path):
    table = enumerate_spectrum(5e4)
    path = tmp_path / "s.hweyl"
    write_cache(path, table)
    back = read_cache(path)
    assert back.limit == table.limit
    for name in ("branch", "index0", "index1", "multiplicity"):
        assert np.array_equal(getattr(back, name), getattr(table, name))
    a, b = JumpSequence.from_table(table), JumpSequence.from_table(back)
    assert a.jumps.tobytes() == b.jumps.tobytes()
    assert np.array_equal(a.cumulative, b.cumulative)


def test_header_fields(tmp_path):
    table = enumerate_spectrum(100)
    path = tmp_path / "s.hweyl"
    write_cache(path, table)
    version, limit, count = read_header(path)
    assert (version, limit, count) == (1, 100.0, len(table))


def test_bad_magic(tmp_path):
    path = tmp_path / "junk.hweyl"
    path.write_bytes(b"NOTMAGIC" + bytes(40))
    with pytest.raises(CacheFormatError):
        read_cache(path)


def test_truncated_records(tmp_path):
    path = tmp_path / "s.hweyl"
    write_cache(path, enumerate_spectrum(1000))
    raw = path.read_bytes()
    path.write_bytes(raw[:-5])
    with pytest.raises(CacheFormatError):
        read_cache(path)


def test_env_var_sets_location(tmp_path, monkeypatch):
    monkeypatch.setenv("HWEYL_CACHE_DIR", str(tmp_path))
    assert default_cache_path().parent == tmp_path


def test_load_or_build_reuses_and_extends(tmp_path):
    path = tmp_path / "s.hweyl"
    small = load_or_build(1000, path)
    assert read_header(path)[1] == 1000
    again = load_or_build(500, path)  # served from the larger cache
    assert again.limit == 1000 and again.count(500) == small.count(500)
    load_or_build(2000, path)
    assert read_header(path)[1] == 2000
