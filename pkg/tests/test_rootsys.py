from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from comin.errors import CapExceeded
from comin.rootsys import (
    act,
    build_root_system,
    classical_root_count,
    inversion_set,
    pairing,
    weyl_action_table,
    weyl_enumerate,
    weyl_order,
)

TYPES = [("A", 1), ("A", 3), ("A", 5), ("B", 2), ("B", 4), ("C", 3), ("D", 4), ("D", 5), ("E", 6), ("E", 7)]


@pytest.mark.parametrize("t,n", TYPES)
def test_root_count(t, n):
    rs = build_root_system(t, n)
    want = {"E6": 72, "E7": 126}.get(f"{t}{n}") or classical_root_count(t, n)
    assert len(rs.roots) == want
    assert sum(rs.positive) == want // 2


@pytest.mark.parametrize("t,n", TYPES)
def test_roots_closed_under_negation_and_reflection(t, n):
    rs = build_root_system(t, n)
    for b, c in enumerate(rs.roots):
        assert rs.roots[rs.negation[b]] == tuple(-x for x in c)
        for i in range(rs.rank):
            assert rs.reflections[i][rs.reflections[i][b]] == b
    for i in range(rs.rank):
        assert rs.reflections[i][rs.simple(i)] == rs.negation[rs.simple(i)]


@pytest.mark.parametrize("t,n", TYPES)
def test_pairings(t, n):
    rs = build_root_system(t, n)
    for a in range(len(rs.roots)):
        assert rs.pairing_table[a][a] == 2
        for b in range(len(rs.roots)):
            p = rs.pairing_table[b][a]
            assert p == pairing(rs, rs.roots[b], rs.roots[a])
            assert -3 <= p <= 3
            # s_a(b) = b - <b,a> a
            img = tuple(x - p * y for x, y in zip(rs.roots[b], rs.roots[a]))
            assert img in rs.index


@pytest.mark.parametrize("t,n", TYPES)
def test_highest_root_dominates(t, n):
    rs = build_root_system(t, n)
    hr = rs.roots[rs.highest_root]
    for c in rs.roots:
        assert all(x <= y for x, y in zip(c, hr))


@pytest.mark.parametrize("t,n,order", [("A", 2, 6), ("A", 3, 24), ("B", 2, 8), ("B", 3, 48), ("D", 4, 192)])
def test_weyl_orders(t, n, order):
    rs = build_root_system(t, n)
    assert weyl_order(t, n) == order
    elems = weyl_enumerate(rs)
    assert len(elems) == order
    assert len(weyl_action_table(rs)) == order


def test_weyl_cap():
    with pytest.raises(CapExceeded):
        weyl_enumerate(build_root_system("E", 7), size_cap=1000)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([("A", 3), ("B", 3), ("D", 4)]), st.data())
def test_inversion_sets_match_bfs(tn, data):
    rs = build_root_system(*tn)
    elem = data.draw(st.sampled_from(weyl_enumerate(rs)))
    assert inversion_set(rs, elem.word) == elem.inv
    assert len(elem.inv) == len(elem.word)


def test_act_applies_rightmost_letter_first():
    rs = build_root_system("A", 2)
    a1, a2 = rs.simple(0), rs.simple(1)
    # s1 s2 (a1) = s1 (a1 + a2) = a2
    assert act(rs, (0, 1), a1) == a2
    # s2 s1 (a1) = s2 (-a1) = -(a1 + a2)
    assert rs.roots[act(rs, (1, 0), a1)] == (-1, -1)
