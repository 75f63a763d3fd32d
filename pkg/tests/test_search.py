import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scheme_forge.cycint import CycInt
from scheme_forge.cyclotomy import build_cyclotomy
from scheme_forge.errors import BudgetExceeded, ModulusMismatch, PreconditionViolated
from scheme_forge.finite_field import build_field
from scheme_forge.scheme_core import brute_force_verify, is_scheme
from scheme_forge.search import (GroupRingElem, SearchConfig,
                                 enumeration_counts, exhaustive_nonexistence,
                                 gr_involution, gr_mul, trace_partition,
                                 ts_character_values, ts_identity_check)

from conftest import partition_to_relations


def stirling2(n, k):
    S = [[0] * (k + 1) for _ in range(n + 1)]
    S[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, k + 1):
            S[i][j] = j * S[i - 1][j] + S[i - 1][j - 1]
    return S[n][k]


# --- group ring ----------------------------------------------------------------

def test_gr_basis_convolution():
    a = GroupRingElem.basis(8, 2)
    b = GroupRingElem.basis(8, 3)
    assert gr_mul(a, b) == GroupRingElem.basis(8, 5)


def test_gr_involution_involutive():
    x = GroupRingElem(6, (1, -2, 3, 0, 5, 7))
    assert gr_involution(gr_involution(x)) == x


def test_gr_modulus_mismatch():
    with pytest.raises(ModulusMismatch):
        gr_mul(GroupRingElem.basis(6, 1), GroupRingElem.basis(8, 1))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=8, max_size=8),
       st.lists(st.integers(-9, 9), min_size=8, max_size=8))
def test_gr_mul_commutative(a, b):
    x = GroupRingElem(8, tuple(a))
    y = GroupRingElem(8, tuple(b))
    assert gr_mul(x, y) == gr_mul(y, x)


# --- trace partition and identities -----------------------------------------------

@pytest.mark.parametrize("p", [3, 7, 11])
def test_trace_partition_structure(p):
    t0, ts, tn = trace_partition(p)
    N = 2 * (p + 1)
    assert (len(t0), len(ts), len(tn)) == (2, p, p)
    assert set(t0) == {(p + 1) // 2, 3 * (p + 1) // 2}
    assert {(i + p + 1) % N for i in ts} == set(tn)


@pytest.mark.parametrize("p", [3, 7, 11])
def test_zero_trace_classes_have_full_period(p):
    field = build_field(p, 2)
    sys_n = build_cyclotomy(field, 2 * (p + 1))
    t0, _, _ = trace_partition(p)
    for i in t0:
        assert sys_n.periods[i] == CycInt.integer(p, (p - 1) // 2)


@pytest.mark.parametrize("p", [3, 7, 11, 19])
def test_three_valued_structure(p):
    assert ts_character_values(p)


@pytest.mark.parametrize("p", [3, 7, 11, 19, 23, 31])
def test_ts_identity(p):
    assert ts_identity_check(p)


def test_trace_partition_domain():
    with pytest.raises(PreconditionViolated):
        trace_partition(5)


# --- the exhaustive scan ------------------------------------------------------------

def test_enumeration_matches_stirling():
    counts = enumeration_counts(8, 4)
    assert counts[3] == stirling2(8, 3) == 966
    assert counts[4] == stirling2(8, 4) == 1701
    assert counts[1] == 1 and counts[2] == stirling2(8, 2)


def test_p3_nonexistence():
    result = exhaustive_nonexistence(SearchConfig(p=3))
    assert result.candidates_checked == 966 + 1701
    assert result.schemes_found == []


def test_p3_sanity_mode_finds_schemes():
    cfg = SearchConfig(p=3, require_nonsymmetric=False, require_primitive=False)
    result = exhaustive_nonexistence(cfg)
    assert len(result.schemes_found) >= 1
    field = build_field(3, 2)
    sys8 = build_cyclotomy(field, 8)
    for part in result.schemes_found:
        assert is_scheme(sys8, part)
        assert brute_force_verify(field,
                                  partition_to_relations(field, sys8, part))
    # the four-lines partition is among them
    lines = tuple(tuple((i, i + 4)) for i in range(4))
    assert any(set(p.part_sets()) ==
               {frozenset(x) for x in lines} for p in result.schemes_found)


def test_p3_max_classes_3():
    result = exhaustive_nonexistence(SearchConfig(p=3, max_classes=3))
    assert result.candidates_checked == 966
    assert result.schemes_found == []


def test_budget_guards():
    with pytest.raises(BudgetExceeded):
        exhaustive_nonexistence(SearchConfig(p=11))
    with pytest.raises(BudgetExceeded):
        exhaustive_nonexistence(SearchConfig(p=19, long_run=True))
    with pytest.raises(PreconditionViolated):
        exhaustive_nonexistence(SearchConfig(p=5))
