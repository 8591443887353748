"""Minimal coset representatives from order ideals, and their action on roots.

Words are read right to left: the last letter acts first, so
Inv(w s) = s Inv(w) + {delta_s} whenever the length goes up.
"""
from __future__ import annotations

from typing import Iterable

from .errors import InternalError, NotationError
from .orbit import OrbitDatum
from .rootsys import RootSystem, act
from .space import CominusculeSpace, bits


def word_from_inversions(rs: RootSystem, inv: Iterable[int]) -> tuple[int, ...]:
    """Reduced word for the element whose inversion set is ``inv`` (root indices)."""
    cur = set(inv)
    simple = {s: i for i, s in enumerate(rs.simple_indices)}
    letters: list[int] = []
    while cur:
        hit = [simple[b] for b in cur if b in simple]
        if not hit:
            raise InternalError("no simple root left to peel: not an inversion set")
        i = min(hit)
        delta = rs.simple(i)
        # w = w' s_delta with Inv(w') = s_delta(Inv(w) - {delta})
        refl = rs.reflections[i]
        nxt = set()
        for b in cur:
            if b == delta:
                continue
            img = refl[b]
            if not rs.positive[img]:
                raise InternalError("peeling left the positive roots: not an inversion set")
            nxt.add(img)
        cur = nxt
        letters.append(i)
    return tuple(reversed(letters))


def word_from_ideal(space: CominusculeSpace, ideal: int) -> tuple[int, ...]:
    """Reduced word (in the space's own nodes) of the position with Inv = ideal."""
    if not space.is_ideal(ideal):
        raise NotationError(f"{ideal:b} is not a lower order ideal of {space.name}")
    return word_from_inversions(space.rs, (space.weights[b] for b in bits(ideal)))


def lambda_word(datum: OrbitDatum, lam: tuple[int, ...]) -> tuple[int, ...]:
    """Word in the ambient nodes for a position on L/Q (a tuple, one ideal per factor)."""
    word: list[int] = []
    for f, (fac, ideal) in enumerate(zip(datum.levi_quotient.factors, lam)):
        word.extend(datum.ambient_word(f, word_from_ideal(fac, ideal)))
    return tuple(word)


def act_set(rs: RootSystem, word, roots: Iterable[int]) -> frozenset[int]:
    return frozenset(act(rs, word, b) for b in roots)


def inverse_word(word) -> tuple[int, ...]:
    return tuple(reversed(tuple(word)))


def lambda_z(datum: OrbitDatum, lam: tuple[int, ...]) -> int:
    """The weight set lambda Phi(z), as a bitmask over the space's weights."""
    space = datum.space
    word = lambda_word(datum, lam)
    out = 0
    for w in datum.phi_z:
        img = act(space.rs, word, space.weights[w])
        idx = space.weight_index.get(img)
        if idx is None:
            raise InternalError("lambda moved a weight of z out of g/p")
        out |= 1 << idx
    return out


def pi_lambda_inv(space: CominusculeSpace, pi: int, datum: OrbitDatum, lam: tuple[int, ...]) -> frozenset[int]:
    """Inv(pi lambda) = Inv(lambda) + lambda^-1 Inv(pi), as root indices."""
    rs = space.rs
    word = lambda_word(datum, lam)
    inv_lam = set()
    for f, ideal in enumerate(lam):
        rmap = datum.root_maps[f]
        fac = datum.levi_quotient.factors[f]
        inv_lam.update(rmap[fac.weights[b]] for b in bits(ideal))
    moved = act_set(rs, inverse_word(word), (space.weights[b] for b in bits(pi)))
    if inv_lam & moved:
        raise InternalError("Inv(lambda) and lambda^-1 Inv(pi) overlap")
    return frozenset(inv_lam | moved)


def pattern_map(sub_roots: Iterable[int], w_inv: Iterable[int]) -> frozenset[int]:
    """Inversion set of the pattern of w in a root subsystem."""
    return frozenset(sub_roots) & frozenset(w_inv)
