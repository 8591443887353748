from __future__ import annotations

from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from comin.errors import CapExceeded, NotationError, UnsupportedSpace
from comin.space import (
    ProductSpace,
    bits,
    build_space,
    dual,
    enumerate_positions,
    format_permutation,
    format_position,
    ideal_of_partition,
    parse_position,
    partition_of,
    popcount,
    space_from_key,
)

SPACES = ["Gr(2,5)", "Gr(3,6)", "LG(3)", "LG(4)", "OG(5)", "Q(7)", "Q(8)", "OP2", "E7"]


@pytest.mark.parametrize(
    "name,count",
    [("Gr(2,4)", 6), ("Gr(3,7)", comb(7, 3)), ("Gr(4,9)", comb(9, 4)), ("LG(4)", 16), ("LG(5)", 32),
     ("OG(5)", 16), ("OG(7)", 64), ("Q(7)", 8), ("Q(8)", 10), ("OP2", 27), ("E7", 56)],
)
def test_position_counts(name, count):
    assert len(build_space(name).positions) == count


@pytest.mark.parametrize("name", SPACES)
def test_covers_differ_by_a_simple_root(name):
    sp = build_space(name)
    for b in range(sp.dim):
        for a in bits(sp.lower_covers[b]):
            diff = [y - x for x, y in zip(sp.coords(a), sp.coords(b))]
            assert sorted(diff) == [0] * (len(diff) - 1) + [1]


@pytest.mark.parametrize("name", SPACES)
def test_positions_are_ideals_sorted_by_codim(name):
    sp = build_space(name)
    ps = sp.positions
    assert len(set(ps)) == len(ps)
    assert all(sp.is_ideal(p) for p in ps)
    assert [sp.codim(p) for p in ps] == sorted(sp.codim(p) for p in ps)
    assert sp.codim(sp.full) == 0 and sp.codim(sp.point) == sp.dim
    assert sorted(enumerate_positions(sp, 1)) == sorted(p for p in ps if sp.codim(p) == 1)


@pytest.mark.parametrize("name", SPACES)
def test_duality(name):
    sp = build_space(name)
    inv = sp.involution
    assert all(inv[inv[w]] == w for w in range(sp.dim))
    # order reversing
    for a in range(sp.dim):
        for b in range(sp.dim):
            assert sp.leq(a, b) == sp.leq(inv[b], inv[a])
    for p in sp.positions:
        q = dual(sp, p)
        assert sp.is_ideal(q)
        assert sp.codim(q) == sp.dim - sp.codim(p)
        assert dual(sp, q) == p


@pytest.mark.parametrize("name", SPACES + ["Q(10)", "OG(6)", "Gr(2,4) x LG(2)"])
def test_notation_round_trip(name):
    sp = build_space(name)
    for p in sp.positions:
        assert parse_position(sp, format_position(sp, p)) == p


def test_grassmannian_notation():
    gr = build_space("Gr(5,11)")
    pi = parse_position(gr, "1 3 6 7 10 | 2 4 5 8 9 11")
    assert popcount(pi) == 12
    assert format_permutation(gr, pi).replace(" ", "") == "1367 10|2458911".replace(" ", "")
    assert parse_position(gr, format_position(gr, pi)) == pi
    assert sum(partition_of(gr, pi)) == gr.codim(pi)


def test_quadric_labels():
    q = build_space("Q(10)")
    a, b = parse_position(q, "5"), parse_position(q, "5bar")
    assert a != b and q.codim(a) == q.codim(b) == 5
    for spelling in ("5'", "5~", "5̄"):
        assert parse_position(q, spelling) == b
    assert format_position(q, b) == "5bar"
    # label t is the t-element ideal, so 0 is the point class
    assert parse_position(q, "0") == q.point
    assert parse_position(q, "10") == q.full


@pytest.mark.parametrize("n", range(2, 7))
def test_lagrangian_and_orthogonal_posets_match(n):
    lg, og = build_space(f"LG({n})"), build_space(f"OG({n + 1})")
    assert lg.dim == og.dim
    assert {partition_of(lg, p) for p in lg.positions} == {partition_of(og, p) for p in og.positions}
    for p in lg.positions:
        q = ideal_of_partition(og, partition_of(lg, p))
        assert og.codim(q) == lg.codim(p)


def test_product_space():
    sp = build_space("Gr(2,4) x LG(2)")
    assert isinstance(sp, ProductSpace)
    assert sp.dim == 4 + 3
    pos = parse_position(sp, "(1);(2)")
    assert sp.codim(pos) == 3
    assert dual(sp, dual(sp, pos)) == pos
    assert build_space("Gr(2,4)*LG(2)").key == sp.key


def test_space_grammar():
    assert build_space("Q(8)").key == ("D", 5, 1)
    assert build_space("Q(7)").key == ("B", 4, 1)
    assert build_space("LG(4)").key == ("C", 4, 4)
    assert build_space("OG(5)").key == ("D", 5, 5)
    assert build_space("X(E,7,7)").key == build_space("E7").key
    assert build_space("pt").dim == 0
    assert space_from_key("A", 4, 2).name == "Gr(2,5)"


@pytest.mark.parametrize("bad", ["Q(2)", "X(B,3,2)", "X(E,6,2)", "Gr(0,3)", "Gr(3,3)"])
def test_unsupported_spaces(bad):
    with pytest.raises((UnsupportedSpace, NotationError)):
        build_space(bad)


@pytest.mark.parametrize("name,text", [("Gr(2,4)", "(3)"), ("Gr(2,4)", "(1,2)"), ("LG(3)", "(2,2)"), ("Q(8)", "9"), ("OP2", "2")])
def test_bad_notation(name, text):
    with pytest.raises(NotationError):
        parse_position(build_space(name), text)


def test_ideal_cap():
    from comin.space import set_ideal_cap

    sp = build_space("LG(5)")
    try:
        set_ideal_cap(5)
        with pytest.raises(CapExceeded):
            list(sp.iter_ideals(5))
    finally:
        set_ideal_cap(10**7)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SPACES), st.data())
def test_ideal_closure(name, data):
    # the union and intersection of two ideals are ideals
    sp = build_space(name)
    a = data.draw(st.sampled_from(sp.positions))
    b = data.draw(st.sampled_from(sp.positions))
    assert sp.is_ideal(a | b) and sp.is_ideal(a & b)
