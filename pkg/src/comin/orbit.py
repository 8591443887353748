"""L-orbit data on g/p: orthogonal long-root sequences and the root-set decomposition.

For each orbit rank r the weights of g/p split into those orthogonal to the
chosen long roots (z) and the rest (l.v); the Levi roots split into the
stabilizer q and its complement l/q, whose simple roots cut L/Q into
cominuscule factors.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .errors import InternalError
from .rootsys import RootSystem, gram_matrix
from .space import CominusculeSpace, ProductSpace, space_from_key


@dataclass(frozen=True)
class OrbitDatum:
    space: CominusculeSpace
    r: int
    alphas: tuple[int, ...]  # root indices
    phi_z: tuple[int, ...]  # weight indices of the space
    phi_lv: tuple[int, ...]  # weight indices of the space
    phi_q: frozenset[int]  # root indices, m_alpha = 0
    phi_l_mod_q: frozenset[int]  # root indices, m_alpha = 0
    phi_n: frozenset[int]  # root indices, m_alpha = -1
    q_nodes: tuple[int, ...]  # simple roots of l lying in l/q, 0-based
    levi_quotient: ProductSpace
    node_maps: tuple[tuple[int, ...], ...]  # factor node c -> ambient node
    root_maps: tuple[dict[int, int], ...]  # factor root index -> ambient root index

    @property
    def z_mask(self) -> int:
        return sum(1 << w for w in self.phi_z)

    @property
    def dim_z(self) -> int:
        return len(self.phi_z)

    def ambient_word(self, factor: int, word) -> tuple[int, ...]:
        nm = self.node_maps[factor]
        return tuple(nm[c] for c in word)


def _long_weights(space: CominusculeSpace) -> list[int]:
    rs = space.rs
    return [w for w in range(space.dim) if rs.norms[space.weights[w]] == rs.max_norm]


def _greedy_sequence(space: CominusculeSpace) -> tuple[int, ...]:
    rs = space.rs
    chosen: list[int] = []
    longs = _long_weights(space)
    while True:
        # weights are in a linear extension, so the first candidate is poset-minimal
        cand = [
            w for w in longs
            if w not in chosen and all(rs.pairing_table[space.weights[w]][space.weights[c]] == 0 for c in chosen)
        ]
        if not cand:
            return tuple(space.weights[c] for c in chosen)
        chosen.append(cand[0])


@lru_cache(maxsize=None)
def _max_sequence(space: CominusculeSpace) -> tuple[int, ...]:
    return _greedy_sequence(space)


def max_rank(space: CominusculeSpace) -> int:
    return len(_max_sequence(space))


def orthogonal_sequence(space: CominusculeSpace, r: int) -> tuple[int, ...]:
    """First r roots of the greedy sequence of minimal pairwise-orthogonal long roots."""
    seq = _max_sequence(space)
    if not 1 <= r <= len(seq):
        raise ValueError(f"orbit rank {r} outside 1..{len(seq)} for {space.name}")
    return seq[:r]


# ----------------------------------------------------------------------------
# recognising Levi components


def _components(rs: RootSystem, nodes: list[int]) -> list[list[int]]:
    left = set(nodes)
    out = []
    while left:
        start = min(left)
        comp, stack = {start}, [start]
        while stack:
            a = stack.pop()
            for b in list(left):
                if b not in comp and rs.gram[a][b] != 0:
                    comp.add(b)
                    stack.append(b)
        left -= comp
        out.append(sorted(comp))
    return out


def _normalized(rs: RootSystem, comp: list[int]) -> list[list[int]]:
    g = [[rs.gram[a][b] for b in comp] for a in comp]
    scale = min(g[i][i] for i in range(len(comp))) // 2
    return [[x // scale for x in row] for row in g]


def _candidate_types(m: int) -> list[tuple[str, int]]:
    out = [("A", m)]
    if m >= 2:
        out += [("B", m), ("C", m)]
    if m >= 3:
        out.append(("D", m))
    if m in (6, 7):
        out.append(("E", m))
    return out


def _match(sub: list[list[int]], canon) -> tuple[int, ...] | None:
    """Bijection p with canon[p[i]][p[j]] == sub[i][j], by backtracking."""
    m = len(sub)
    p: list[int] = []
    used = [False] * m

    def rec(i: int) -> bool:
        if i == m:
            return True
        for c in range(m):
            if used[c] or canon[c][c] != sub[i][i]:
                continue
            if all(canon[p[j]][c] == sub[j][i] for j in range(i)):
                used[c] = True
                p.append(c)
                if rec(i + 1):
                    return True
                p.pop()
                used[c] = False
        return False

    return tuple(p) if rec(0) else None


def recognize_component(rs: RootSystem, comp: list[int]) -> tuple[str, int, tuple[int, ...]]:
    """(type, rank, canon) where ambient node comp[i] plays canonical node canon[i]."""
    sub = _normalized(rs, comp)
    for t, m in _candidate_types(len(comp)):
        p = _match(sub, gram_matrix(t, m))
        if p is not None:
            return t, m, p
    raise InternalError(f"cannot recognise Levi component on nodes {comp} of {rs.name}")


# ----------------------------------------------------------------------------


def orbit_datum(space: CominusculeSpace, r: int) -> OrbitDatum:
    return _orbit_datum(space, r)


@lru_cache(maxsize=None)
def _orbit_datum(space: CominusculeSpace, r: int) -> OrbitDatum:
    rs = space.rs
    alphas = orthogonal_sequence(space, r)
    pt = rs.pairing_table
    node = space.node

    phi_z, phi_lv = [], []
    for w, b in enumerate(space.weights):
        ps = [pt[b][a] for a in alphas]
        if all(p == 0 for p in ps):
            phi_z.append(w)
        elif all(p >= 0 for p in ps):
            phi_lv.append(w)
        else:
            raise InternalError(f"weight {rs.roots[b]} pairs negatively with an orthogonal root")

    phi_q, phi_lq, phi_n = set(), set(), set()
    for g, coords in enumerate(rs.roots):
        m = coords[node]
        ps = [pt[g][a] for a in alphas]
        if m == -1:
            if any(p > 0 for p in ps):
                raise InternalError("n_P root pairs positively with an orthogonal root")
            phi_n.add(g)
        elif m == 0:
            if all(p == 0 for p in ps) or any(p >= 1 for p in ps):
                phi_q.add(g)
            elif all(p <= 0 for p in ps) and sum(p == -1 for p in ps) == 1:
                phi_lq.add(g)
            else:
                raise InternalError(f"Levi root {coords} fits no row of the decomposition")

    # standardness: the negative Levi roots all stabilise the tangent space
    if any(not rs.positive[g] for g in phi_lq):
        raise InternalError(f"non-standard stabiliser for {space.name}, r={r}")

    levi_nodes = [i for i in range(rs.rank) if i != node]
    q_nodes = tuple(i for i in levi_nodes if rs.simple(i) in phi_lq)
    factors, node_maps, root_maps = [], [], []
    for comp in _components(rs, levi_nodes):
        omitted = [i for i in comp if i in q_nodes]
        if not omitted:
            continue
        if len(omitted) > 1:
            raise InternalError(f"Levi component {comp} has {len(omitted)} omitted nodes")
        t, m, canon = recognize_component(rs, comp)
        nm = [0] * m
        for amb, c in zip(comp, canon):
            nm[c] = amb
        fac = space_from_key(t, m, canon[comp.index(omitted[0])] + 1)
        rmap = {}
        for fr in fac.weights:
            coords = [0] * rs.rank
            for c, x in enumerate(fac.rs.roots[fr]):
                coords[nm[c]] = x
            rmap[fr] = rs.index[tuple(coords)]
        factors.append(fac)
        node_maps.append(tuple(nm))
        root_maps.append(rmap)

    covered = set().union(*(set(m.values()) for m in root_maps)) if root_maps else set()
    if covered != phi_lq:
        raise InternalError(f"Levi factors do not cover l/q for {space.name}, r={r}")

    return OrbitDatum(
        space, r, alphas, tuple(phi_z), tuple(phi_lv), frozenset(phi_q), frozenset(phi_lq),
        frozenset(phi_n), q_nodes, ProductSpace(tuple(factors)), tuple(node_maps), tuple(root_maps),
    )


def m_of_p(space: CominusculeSpace) -> tuple[OrbitDatum, ...]:
    """One datum per non-zero, non-dense orbit rank."""
    return tuple(orbit_datum(space, r) for r in range(1, max_rank(space)))


def factorize_levi(space: CominusculeSpace, datum: OrbitDatum) -> ProductSpace:
    return datum.levi_quotient
