from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from comin.config import Config
from comin.errors import CapExceeded, NotationError
from comin.feasibility import Engine, count_pi_lambda, emit_inequalities, enumerate_feasible, is_feasible
from comin.oracles import product_nonzero
from comin.orbit import m_of_p
from comin.space import bits, build_space, dual

SMALL = ["Gr(2,4)", "Gr(2,5)", "Gr(3,6)", "LG(3)", "LG(4)", "OG(5)", "Q(7)", "Q(8)", "OP2"]


def _up(space, pos):
    return [pos | 1 << b for b in bits(space.full & ~pos) if space.is_ideal(pos | 1 << b)]


@pytest.mark.parametrize("name", SMALL + ["E7"])
def test_two_slots_feasible_exactly_for_dual_pairs(name):
    sp = build_space(name)
    for p in sp.positions:
        for q in sp.positions:
            if sp.codim(p) + sp.codim(q) == sp.dim:
                assert is_feasible(sp, (p, q)).feasible == (q == dual(sp, p))


@pytest.mark.parametrize("name", SMALL)
def test_basic_inequality_and_trivial_slots(name):
    sp = build_space(name)
    for p in sp.positions:
        assert is_feasible(sp, (p,)).feasible
        assert is_feasible(sp, (p, sp.full, sp.full)).feasible
        rep = is_feasible(sp, (p, dual(sp, p), sp.point)) if sp.dim else None
        if rep is not None and sp.codim(p) + sp.dim > 0:
            assert not rep.feasible and rep.witness.basic


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_permutation_invariance(name, data):
    sp = build_space(name)
    t = tuple(data.draw(st.sampled_from(sp.positions)) for _ in range(3))
    eng = Engine(sort_tuples=False)
    verdicts = {eng.is_feasible(sp, p).feasible for p in itertools.permutations(t)}
    assert len(verdicts) == 1


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_monotone(name, data):
    sp = build_space(name)
    t = tuple(data.draw(st.sampled_from(sp.positions)) for _ in range(3))
    f = is_feasible(sp, t).feasible
    for slot in range(3):
        for up in _up(sp, t[slot]):
            u = t[:slot] + (up,) + t[slot + 1:]
            if f:
                assert is_feasible(sp, u).feasible


DIM_16 = (
    [f"Gr({k},{n})" for n in range(2, 18) for k in range(1, n) if k * (n - k) <= 16]
    + [f"LG({n})" for n in range(2, 6)]
    + [f"OG({m})" for m in range(3, 7)]
    + [f"Q({m})" for m in range(3, 17)]
    + ["OP2"]
)


@pytest.mark.parametrize("name", DIM_16)
def test_modes_agree(name):
    # every tuple, not only top-degree ones, on every space of dimension <= 16
    sp = build_space(name)
    eng = Engine()
    for s in (2, 3):
        assert eng.enumerate_feasible(sp, s, top_only=False, mode="top") == eng.enumerate_feasible(
            sp, s, top_only=False, mode="full")


@pytest.mark.parametrize("name", ["Gr(2,5)", "LG(3)", "Q(8)"])
def test_inequalities_reproduce_verdicts(name):
    sp = build_space(name)
    ineqs = emit_inequalities(sp, 3)
    for t in itertools.product(sp.positions, repeat=3):
        assert all(q.holds(sp, t) for q in ineqs) == is_feasible(sp, t).feasible


@pytest.mark.parametrize("name", ["Gr(2,5)", "Gr(3,6)", "LG(4)", "OG(5)", "Q(7)", "Q(8)", "Q(10)"])
def test_agrees_with_oracle_on_all_tuples(name):
    # includes tuples below top degree, which the acceptance suite does not cover
    sp = build_space(name)
    for t in itertools.combinations_with_replacement(sp.positions, 3):
        assert is_feasible(sp, t).feasible == product_nonzero(sp, t), t


@pytest.mark.parametrize("name", SMALL)
def test_witness_is_a_violated_inequality(name):
    sp = build_space(name)
    data = {d.r: d for d in m_of_p(sp)}
    for t in itertools.combinations_with_replacement(sp.positions, 3):
        rep = is_feasible(sp, t)
        if rep.feasible:
            continue
        w = rep.witness
        assert w.lhs > w.rhs
        if not w.basic:
            d = data[w.r]
            assert w.rhs == d.dim_z
            assert sum(count_pi_lambda(sp, d, p, lam) for p, lam in zip(t, w.lambdas)) == w.lhs


def test_enumeration_matches_pointwise():
    sp = build_space("LG(3)")
    got = set(enumerate_feasible(sp, 3))
    want = {t for t in itertools.product(sp.positions, repeat=3)
            if sum(sp.codim(p) for p in t) == sp.dim and is_feasible(sp, t).feasible}
    assert got == want


def test_product_spaces():
    sp = build_space("Gr(2,4) x Q(5)")
    a, b = sp.factors
    for p in itertools.product(a.positions, b.positions):
        for q in itertools.product(a.positions, b.positions):
            both = is_feasible(a, (p[0], q[0])).feasible and is_feasible(b, (p[1], q[1])).feasible
            assert is_feasible(sp, (p, q)).feasible == both


def test_errors_and_caps():
    sp = build_space("Gr(2,4)")
    with pytest.raises(ValueError):
        is_feasible(sp, (sp.full,), mode="fast")
    with pytest.raises(NotationError):
        is_feasible(sp, (1 << sp.dim - 1,))
    with pytest.raises(CapExceeded):
        Engine(Config(tuple_cap=3)).enumerate_feasible(build_space("LG(3)"), 3)


def test_memo_survives_small_cache():
    sp = build_space("Gr(2,5)")
    eng = Engine(Config(cache_size=2))
    ref = Engine()
    for t in itertools.combinations_with_replacement(sp.positions, 2):
        assert eng.is_feasible(sp, t).feasible == ref.is_feasible(sp, t).feasible
    assert len(eng._memo) <= 2


def test_config_from_env(monkeypatch):
    monkeypatch.setenv("COMIN_TUPLE_CAP", "17")
    cfg = Config.from_env(ideal_cap=5)
    assert cfg.tuple_cap == 17 and cfg.ideal_cap == 5
    monkeypatch.setenv("COMIN_TUPLE_CAP", "many")
    with pytest.raises(ValueError):
        Config.from_env()
