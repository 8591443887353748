from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from comin.coset import (
    inverse_word,
    lambda_word,
    lambda_z,
    pattern_map,
    pi_lambda_inv,
    word_from_ideal,
    word_from_inversions,
)
from comin.errors import InternalError, NotationError
from comin.feasibility import count_pi_lambda, generalized_codim
from comin.orbit import m_of_p
from comin.rootsys import act, inversion_set
from comin.space import bits, build_space, popcount

SPACES = ["Gr(2,5)", "Gr(3,6)", "LG(3)", "LG(4)", "OG(5)", "OG(6)", "Q(7)", "Q(8)", "OP2", "E7"]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SPACES), st.data())
def test_word_has_the_ideal_as_inversions(name, data):
    sp = build_space(name)
    pi = data.draw(st.sampled_from(sp.positions))
    word = word_from_ideal(sp, pi)
    assert len(word) == popcount(pi)
    assert inversion_set(sp.rs, word) == {sp.weights[b] for b in bits(pi)}


def test_word_rejects_non_ideals():
    sp = build_space("Gr(2,4)")
    top = sp.dim - 1  # the highest weight alone is not a lower ideal
    with pytest.raises(NotationError):
        word_from_ideal(sp, 1 << top)
    with pytest.raises(InternalError):
        word_from_inversions(sp.rs, [sp.weights[top]])


@pytest.mark.parametrize("name", SPACES)
def test_lambda_images(name):
    sp = build_space(name)
    for d in m_of_p(sp):
        e = tuple(f.point for f in d.levi_quotient.factors)
        assert lambda_z(d, e) == d.z_mask
        for lam in d.levi_quotient.positions:
            assert popcount(lambda_z(d, lam)) == d.dim_z
            word = lambda_word(d, lam)
            assert all(act(sp.rs, inverse_word(word), act(sp.rs, word, b)) == b for b in sp.weights)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SPACES), st.data())
def test_inversions_of_products(name, data):
    sp = build_space(name)
    data_ = m_of_p(sp)
    if not data_:
        return
    d = data.draw(st.sampled_from(data_))
    pi = data.draw(st.sampled_from(sp.positions))
    lam = data.draw(st.sampled_from(d.levi_quotient.positions))
    inv = pi_lambda_inv(sp, pi, d, lam)
    lam_len = sum(popcount(x) for x in lam)
    assert len(inv) == popcount(pi) + lam_len
    # the same set, computed from a word for pi lambda
    word = word_from_ideal(sp, pi) + lambda_word(d, lam)
    assert inversion_set(sp.rs, word) == inv
    # |pi|_lambda counts the weights of z outside Inv(pi lambda)
    assert generalized_codim(sp, d.z_mask, pi, d, lam) == count_pi_lambda(sp, d, pi, lam)


@pytest.mark.parametrize("name", SPACES)
def test_pattern_map(name):
    sp = build_space(name)
    for d in m_of_p(sp):
        z_roots = {sp.weights[w] for w in d.phi_z}
        for pi in sp.positions:
            inv = {sp.weights[b] for b in bits(pi)}
            pat = pattern_map(z_roots, inv)
            assert pat == z_roots & inv
            assert len(z_roots) - len(pat) == count_pi_lambda(sp, d, pi, tuple(f.point for f in d.levi_quotient.factors))
