"""Root systems of types A-E in simple-root coordinates.

Roots are integer tuples of coefficients over the simple roots.  The inner
product is an integer Gram matrix, scaled so that short roots have norm 2,
so every pairing <b, a> = 2(b, a)/(a, a) is computed exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import factorial
from typing import Iterable, Sequence

from .errors import CapExceeded, UnsupportedSpace

Coords = tuple[int, ...]


def _chain_gram(rank: int) -> list[list[int]]:
    g = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        g[i][i] = 2
        if i + 1 < rank:
            g[i][i + 1] = g[i + 1][i] = -1
    return g


def gram_matrix(type_letter: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Symmetric Gram matrix of the simple roots (Bourbaki numbering, 0-based)."""
    t = type_letter.upper()
    if t == "A" and rank >= 1:
        g = _chain_gram(rank)
    elif t == "B" and rank >= 2:
        # e_i - e_{i+1} long, e_n short; everything doubled
        g = [[2 * x for x in row] for row in _chain_gram(rank)]
        g[rank - 1][rank - 1] = 2
    elif t == "C" and rank >= 2:
        g = _chain_gram(rank)
        g[rank - 1][rank - 1] = 4
        g[rank - 2][rank - 1] = g[rank - 1][rank - 2] = -2
    elif t == "D" and rank >= 3:
        g = _chain_gram(rank)
        g[rank - 2][rank - 1] = g[rank - 1][rank - 2] = 0
        g[rank - 3][rank - 1] = g[rank - 1][rank - 3] = -1
    elif t == "E" and rank in (6, 7):
        g = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            g[i][i] = 2
        # Bourbaki: 1-3-4-5-6(-7), node 2 attached to node 4
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
        if rank == 7:
            edges.append((6, 7))
        for a, b in edges:
            g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    else:
        raise UnsupportedSpace(f"unsupported root system {type_letter}{rank}")
    return tuple(tuple(row) for row in g)


def weyl_order(type_letter: str, rank: int) -> int:
    t = type_letter.upper()
    if t == "A":
        return factorial(rank + 1)
    if t in "BC":
        return 2**rank * factorial(rank)
    if t == "D":
        return 2 ** (rank - 1) * factorial(rank)
    return {6: 51840, 7: 2903040}[rank]


@dataclass(frozen=True)
class WeylElement:
    word: tuple[int, ...]
    inv: frozenset[int]  # indices of positive roots


@dataclass(eq=False)
class RootSystem:
    type_letter: str
    rank: int
    gram: tuple[tuple[int, ...], ...]
    roots: tuple[Coords, ...] = field(repr=False)
    index: dict[Coords, int] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.type_letter}{self.rank}"

    def __repr__(self) -> str:
        return f"RootSystem({self.name}, {len(self.roots)} roots)"

    def inner(self, beta: Sequence[int], alpha: Sequence[int]) -> int:
        g = self.gram
        return sum(b * g[i][j] * a for i, b in enumerate(beta) if b for j, a in enumerate(alpha) if a)

    def norm(self, beta: Sequence[int]) -> int:
        return self.inner(beta, beta)

    @cached_property
    def max_norm(self) -> int:
        return max(self.gram[i][i] for i in range(self.rank))

    def is_long(self, i: int) -> bool:
        return self.norms[i] == self.max_norm

    @cached_property
    def norms(self) -> tuple[int, ...]:
        return tuple(self.norm(b) for b in self.roots)

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """cartan[i][j] = <delta_i, delta_j>."""
        g = self.gram
        return tuple(tuple(2 * g[i][j] // g[j][j] for j in range(self.rank)) for i in range(self.rank))

    def simple(self, i: int) -> int:
        """Root index of the i-th simple root."""
        return self.index[tuple(int(j == i) for j in range(self.rank))]

    @cached_property
    def simple_indices(self) -> tuple[int, ...]:
        return tuple(self.simple(i) for i in range(self.rank))

    @cached_property
    def positive(self) -> tuple[bool, ...]:
        return tuple(any(c > 0 for c in b) for b in self.roots)

    @cached_property
    def positive_indices(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.positive) if p)

    @cached_property
    def negation(self) -> tuple[int, ...]:
        return tuple(self.index[tuple(-c for c in b)] for b in self.roots)

    @cached_property
    def highest_root(self) -> int:
        top = max(self.positive_indices, key=lambda i: sum(self.roots[i]))
        # uniqueness of the top: it dominates every root coordinatewise
        hr = self.roots[top]
        assert all(all(a <= h for a, h in zip(b, hr)) for b in self.roots)
        return top

    @cached_property
    def pairing_table(self) -> tuple[tuple[int, ...], ...]:
        """pairing_table[b][a] = <root b, root a>."""
        n = len(self.roots)
        ips = [[0] * n for _ in range(n)]
        vecs = [[sum(b[i] * self.gram[i][j] for i in range(self.rank)) for j in range(self.rank)] for b in self.roots]
        for bi in range(n):
            v = vecs[bi]
            row = ips[bi]
            for ai, a in enumerate(self.roots):
                row[ai] = sum(x * y for x, y in zip(v, a))
        norms = self.norms
        return tuple(tuple(2 * ips[b][a] // norms[a] for a in range(n)) for b in range(n))

    @cached_property
    def reflections(self) -> tuple[tuple[int, ...], ...]:
        """reflections[i][b] = index of s_i(root b)."""
        out = []
        for i in range(self.rank):
            si = self.simple(i)
            col = [row[si] for row in self.pairing_table]
            perm = []
            for b, coords in enumerate(self.roots):
                c = list(coords)
                c[i] -= col[b]
                perm.append(self.index[tuple(c)])
            out.append(tuple(perm))
        return tuple(out)


def _close_roots(gram: tuple[tuple[int, ...], ...]) -> list[Coords]:
    rank = len(gram)
    simple = [tuple(int(j == i) for j in range(rank)) for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for b in frontier:
            for i in range(rank):
                ip = sum(b[k] * gram[k][i] for k in range(rank))
                p = 2 * ip // gram[i][i]
                if p == 0:
                    continue
                c = list(b)
                c[i] -= p
                t = tuple(c)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(seen)


def root_system_from_gram(type_letter: str, gram: Sequence[Sequence[int]]) -> RootSystem:
    g = tuple(tuple(int(x) for x in row) for row in gram)
    roots = tuple(_close_roots(g))
    return RootSystem(type_letter, len(g), g, roots, {b: i for i, b in enumerate(roots)})


@lru_cache(maxsize=None)
def build_root_system(type_letter: str, rank: int) -> RootSystem:
    """Root system of the given type, all roots generated by simple reflections."""
    return root_system_from_gram(type_letter.upper(), gram_matrix(type_letter, rank))


def classical_root_count(type_letter: str, rank: int) -> int:
    t = type_letter.upper()
    if t == "A":
        return rank * (rank + 1)
    if t in "BC":
        return 2 * rank * rank
    if t == "D":
        return 2 * rank * (rank - 1)
    return {6: 72, 7: 126}[rank]


def pairing(rs: RootSystem, beta: Sequence[int], alpha: Sequence[int]) -> int:
    """<beta, alpha> = 2 (beta, alpha) / (alpha, alpha)."""
    return 2 * rs.inner(beta, alpha) // rs.norm(alpha)


def act(rs: RootSystem, word: Iterable[int], root: int) -> int:
    """Apply the word (rightmost letter first) to a root index."""
    refl = rs.reflections
    for letter in reversed(tuple(word)):
        if not 0 <= letter < rs.rank:
            raise ValueError(f"invalid simple reflection index {letter}")
        root = refl[letter][root]
    return root


def inversion_set(rs: RootSystem, word: Sequence[int]) -> frozenset[int]:
    """Inv(w) = {beta > 0 : w(beta) < 0} as root indices."""
    pos = rs.positive
    return frozenset(b for b in rs.positive_indices if not pos[act(rs, word, b)])


def weyl_enumerate(rs: RootSystem, size_cap: int = 10**6) -> list[WeylElement]:
    """Every Weyl group element once, by breadth-first right multiplication."""
    order = weyl_order(rs.type_letter, rs.rank) if rs.type_letter in "ABCDE" else None
    if order is not None and order > size_cap:
        raise CapExceeded(f"|W({rs.name})| = {order} exceeds cap {size_cap}")
    refl = rs.reflections
    pos = rs.positive
    simple = rs.simple_indices
    ident = tuple(range(len(rs.roots)))
    # each element is stored as its action on all roots
    seen = {ident: WeylElement((), frozenset())}
    layer = [ident]
    while layer:
        nxt = []
        for perm in layer:
            elem = seen[perm]
            for i in range(rs.rank):
                if not pos[perm[simple[i]]]:
                    continue  # length would drop
                new = tuple(perm[refl[i][b]] for b in range(len(perm)))
                if new in seen:
                    continue
                # Inv(w s) = s Inv(w) + {delta_s}
                inv = frozenset(refl[i][b] for b in elem.inv) | {simple[i]}
                seen[new] = WeylElement(elem.word + (i,), inv)
                nxt.append(new)
                if len(seen) > size_cap:
                    raise CapExceeded(f"Weyl enumeration exceeded cap {size_cap}")
        layer = nxt
    return list(seen.values())


def weyl_action_table(rs: RootSystem, size_cap: int = 10**6) -> dict[tuple[int, ...], WeylElement]:
    """Map from the images of the simple roots to the element, for lookups."""
    out = {}
    for elem in weyl_enumerate(rs, size_cap):
        out[tuple(act(rs, elem.word, s) for s in rs.simple_indices)] = elem
    return out
