from __future__ import annotations

import numpy as np
import pytest

from tileworks.encoding import build_table
from tileworks.kernels import (
    E_ADDR_RANGE,
    E_EMPTY_ENTRY,
    E_MALFORMED,
    OK,
    RECORD_SIZE,
    S_N,
    S_P,
    S_STATUS,
    TableIndex,
    active_kernel_name,
    encode_symbols,
    resolve_kernel,
    sweep,
)


def _has_numba() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def test_symbol_codes_cover_alphabet():
    codes = encode_symbols(" 01#;,<>%")
    assert codes.tolist() == list(range(9))
    assert codes.dtype == np.uint8


def test_resolve_kernel_names(monkeypatch):
    name, fn = resolve_kernel("numpy")
    assert name == "numpy" and callable(fn)
    with pytest.raises(ValueError):
        resolve_kernel("fortran")
    monkeypatch.setenv("TILEWORKS_KERNEL", "numpy")
    assert active_kernel_name() == "numpy"
    monkeypatch.setenv("TILEWORKS_KERNEL", "auto")
    assert active_kernel_name() in ("numba", "numpy")


@pytest.mark.skipif(not _has_numba(), reason="numba unavailable")
def test_kernels_agree_across_corpus(compiled):
    for cs in compiled.values():
        idx = cs.table.index
        probe_addrs = sorted(cs.addresses)[:8] + [0, cs.entry_count - 1, cs.entry_count, -1]
        for addr in probe_addrs:
            for b in range(6):
                a = sweep(idx, addr, b, "numba")
                c = sweep(idx, addr, b, "numpy")
                assert np.array_equal(a, c), (cs.source.name, addr, b, a, c)
                assert a.shape == (RECORD_SIZE,)


def test_sweep_statuses(compiled):
    cs = compiled["elbow"]
    idx = cs.table.index
    assert sweep(idx, 15, 0, "numpy")[S_STATUS] == OK
    assert sweep(idx, 0, 0, "numpy")[S_STATUS] == E_EMPTY_ENTRY
    assert sweep(idx, 5000, 0, "numpy")[S_STATUS] == E_ADDR_RANGE
    assert sweep(idx, -1, 0, "numpy")[S_STATUS] == E_ADDR_RANGE


def test_selection_arithmetic(compiled):
    cs = compiled["nondet_elbow"]
    idx = cs.table.index
    for b in range(16):
        rec = sweep(idx, 1948, b, "numpy")
        assert rec[S_N] == 2
        assert rec[S_P] == b % 2


def test_malformed_tables_flagged():
    for bad in ("", "< no leading marker", "> # no middle"):
        idx = TableIndex(bad)
        assert sweep(idx, 0, 0, "numpy")[S_STATUS] == E_MALFORMED
    # a well-formed tiny table for contrast
    good = build_table("#a,b,c,d#")
    assert sweep(good.index, 0, 0, "numpy")[S_STATUS] == OK


@pytest.mark.skipif(not _has_numba(), reason="numba unavailable")
def test_loop_kernel_flags_malformed_too():
    for bad in ("", "< wrong start"):
        idx = TableIndex(bad)
        assert sweep(idx, 0, 0, "numba")[S_STATUS] == E_MALFORMED


def test_forced_numba_fails_fast_when_absent(monkeypatch):
    import tileworks.kernels as K

    monkeypatch.setattr(K, "_NUMBA_SWEEP", None)
    monkeypatch.setattr(K, "_NUMBA_ERROR", ImportError("forced for test"))
    with pytest.raises(ImportError):
        K.resolve_kernel("numba")
    name, _ = K.resolve_kernel("auto")
    assert name == "numpy"
