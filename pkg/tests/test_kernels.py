"""Parity of the JIT kernels with their pure-numpy fallbacks."""

import numpy as np
import pytest

from scheme_forge import _kernels
from scheme_forge.finite_field import build_field
from scheme_forge.search import trace_partition


needs_numba = pytest.mark.skipif(not _kernels.HAS_NUMBA,
                                 reason="numba unavailable")


@needs_numba
@pytest.mark.parametrize("p,f", [(3, 5), (11, 3), (37, 3), (7, 1), (2, 8), (5, 6)])
def test_antilog_backends_agree(p, f):
    field = build_field(p, f)
    mlow = list(field.modulus[:-1])
    q = p ** f
    out = np.empty(q - 1, dtype=np.int32)
    jit = _kernels._antilog_jit(p, f, q, np.asarray(mlow, dtype=np.int64), out)
    fallback = _kernels.antilog_table_numpy(p, f, q, mlow)
    assert np.array_equal(jit, fallback)
    assert np.array_equal(jit, field.antilog_table)


def _search_setup(p):
    N = 2 * (p + 1)
    t0, ts, tn = trace_partition(p)
    sden = np.zeros(N, dtype=np.int64)
    for i in ts:
        sden[i] = 1
    for i in tn:
        sden[i] = -1
    return N, t0, sden


def _run(prefixes, N, t0, sden, p, require_nonsym, force_numpy):
    counts = np.zeros(6, dtype=np.int64)
    rows = []
    j1s = ((t0[0] - np.arange(N)) % N).astype(np.int64)
    j2s = ((t0[1] - np.arange(N)) % N).astype(np.int64)
    for pre in prefixes:
        if force_numpy:
            got = _kernels._search_chunk_numpy(pre, N, 3, 4, N // 2, j1s, j2s,
                                               sden, p, require_nonsym, counts)
        else:
            got = _kernels.search_chunk(pre, N, 3, 4, N // 2,
                                        (t0[0], t0[1]), sden, p,
                                        require_nonsym, counts)
        if len(got):
            rows.append(got)
    surv = {tuple(r) for batch in rows for r in batch}
    return counts.tolist(), surv


@needs_numba
@pytest.mark.parametrize("require_nonsym", [True, False])
def test_search_backends_agree_p3(require_nonsym):
    p = 3
    N, t0, sden = _search_setup(p)
    prefixes = _kernels.search_prefixes(N, 4, 4)
    a = _run(prefixes, N, t0, sden, p, require_nonsym, force_numpy=False)
    b = _run(prefixes, N, t0, sden, p, require_nonsym, force_numpy=True)
    assert a == b


@needs_numba
def test_search_backends_agree_p7_chunk():
    p = 7
    N, t0, sden = _search_setup(p)
    prefixes = _kernels.search_prefixes(N, 4, 7)[100:104]
    a = _run(prefixes, N, t0, sden, p, True, force_numpy=False)
    b = _run(prefixes, N, t0, sden, p, True, force_numpy=True)
    assert a == b


def test_use_numba_env_flag(monkeypatch):
    monkeypatch.setenv("SCHEME_FORGE_PURE_NUMPY", "1")
    assert not _kernels.use_numba()
    monkeypatch.setenv("SCHEME_FORGE_PURE_NUMPY", "0")
    assert _kernels.use_numba() == _kernels.HAS_NUMBA
    monkeypatch.delenv("SCHEME_FORGE_PURE_NUMPY")
    assert _kernels.use_numba() == _kernels.HAS_NUMBA


def test_prefix_enumeration_is_partition_complete():
    # prefixes of depth 4 with <= 4 labels, extended freely, cover all RGS
    prefixes = _kernels.search_prefixes(8, 4, 4)
    as_tuples = {tuple(p) for p in prefixes}
    assert len(as_tuples) == len(prefixes)
    for pre in as_tuples:
        assert pre[0] == 0
        for j in range(1, 4):
            assert pre[j] <= min(max(pre[:j]) + 1, 3)
