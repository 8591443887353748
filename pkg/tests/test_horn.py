from __future__ import annotations

import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from comin.feasibility import Engine, count_pi_lambda
from comin.horn import (
    box_partitions,
    classical_horn_feasible,
    conjugate,
    dual_partition,
    grassmannian,
    horn_compare,
    isotropic_codim,
    lagrangian_sequences,
    mu_kappa,
    naive_lg_check,
    naive_selection,
    naive_value,
    one_factor_masks,
    one_factor_value,
    positions_from_partitions,
    selector,
    sequence_of_position,
)
from comin.oracles import lr_coefficient
from comin.orbit import m_of_p
from comin.space import build_space, partition_of, popcount


@pytest.mark.parametrize("k,m", [(1, 4), (2, 3), (3, 3), (4, 2)])
def test_box_partition_count(k, m):
    assert len(box_partitions(k, m)) == comb(k + m, k)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_partition_algebra(k, m, data):
    mu = data.draw(st.sampled_from(box_partitions(k, m)))
    assert conjugate(conjugate(mu, m), k) == mu
    assert dual_partition(dual_partition(mu, k, k + m), k, k + m) == mu
    assert sum(dual_partition(mu, k, k + m)) == k * m - sum(mu)
    # the empty partition selects the first k rows
    assert selector((), k) == tuple(range(1, k + 1))
    assert mu_kappa(mu, (), k) == sum(mu)


@pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (3, 6), (2, 6)])
def test_classical_horn_matches_lr(k, n):
    m = n - k
    parts = box_partitions(k, m)
    for mu, nu in itertools.combinations_with_replacement(parts, 2):
        for lam in parts:
            if sum(lam) != sum(mu) + sum(nu):
                continue
            assert classical_horn_feasible(k, n, [mu, nu], lam) == (lr_coefficient(mu, nu, lam) > 0)


@pytest.mark.parametrize("k,n", [(3, 6), (2, 5), (4, 7), (3, 7)])
def test_rows_only_count_matches_partition_sum(k, n):
    # |pi|_lambda on one factor is |mu| - |mu|^kappa with kappa the conjugate of lambda's partition
    sp = grassmannian(k, n)
    for r in range(1, k):
        small = grassmannian(k - r, k)
        lams, _ = one_factor_masks(k, n, r)
        for lam in lams:
            kap = conjugate(partition_of(small, lam), r)
            for p in sp.positions:
                mu = partition_of(sp, p)
                assert one_factor_value(k, n, r, p, lam) == sum(mu) - mu_kappa(mu, kap, r)


# LG(1) is built as the projective line and has no symplectic cells
@pytest.mark.parametrize("n", range(2, 6))
def test_symplectic_sequences(n):
    lg = build_space(f"LG({n})")
    assert len(lagrangian_sequences(n)) == 2 ** n
    seen = set()
    for p in lg.positions:
        w = sequence_of_position(lg, p)
        seen.add(w)
        assert isotropic_codim(w, n) == lg.codim(p)
    assert len(seen) == len(lg.positions)


@pytest.mark.parametrize("n", range(2, 5))
def test_naive_check_matches_feasibility(n):
    lg = build_space(f"LG({n})")
    eng = Engine()
    for t in itertools.product(lg.positions, repeat=3):
        if sum(lg.codim(p) for p in t) == lg.dim:
            assert naive_lg_check(n, t, eng).passes == eng.is_feasible(lg, t).feasible


def test_naive_check_needs_top_degree():
    lg = build_space("LG(3)")
    with pytest.raises(ValueError):
        naive_lg_check(3, (lg.full, lg.full))


def test_naive_count_differs_from_recursion_count():
    # the naive inequalities use different coefficients, not a relabelling of the recursion's
    n = 4
    lg = build_space(f"LG({n})")
    differs = False
    for d in m_of_p(lg):
        (gr,) = d.levi_quotient.factors
        for lam in gr.positions:
            keep = naive_selection(n, d.r, partition_of(gr, lam))
            for p in lg.positions:
                if count_pi_lambda(lg, d, p, (lam,)) != naive_value(lg, p, keep):
                    differs = True
    assert differs


def test_naive_selection_keeps_r_indices():
    for n in range(2, 6):
        for r in range(1, n):
            for lam in grassmannian(r, n).positions:
                keep = naive_selection(n, r, partition_of(grassmannian(r, n), lam))
                assert len(keep) == r


def test_horn_compare_and_positions():
    res = horn_compare(2, 5, 3)
    assert res.tuples > 0 and not res.mismatches
    sp = grassmannian(3, 6)
    ps = positions_from_partitions(3, 6, [(2, 1), (1,), ()])
    assert [partition_of(sp, p) for p in ps] == [(2, 1, 0), (1, 0, 0), (0, 0, 0)]
    assert popcount(ps[2]) == sp.dim
