"""Cominuscule flag varieties as weight posets, and Schubert positions as ideals.

A position on a single space is an int bitmask over the weight indices:
bit i is set when weight i lies in the inversion set (a lower order ideal).
Positions on a product space are tuples of such ints, one per factor.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Iterator, Sequence, Union

from .errors import CapExceeded, NotationError, UnsupportedSpace
from .rootsys import RootSystem, act, build_root_system

Position = int


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> Iterator[int]:
    i = 0
    while x:
        if x & 1:
            yield i
        x >>= 1
        i += 1


# e-basis images of the simple roots, used only for human-facing notation
def _e_vectors(type_letter: str, rank: int) -> list[list[int]] | None:
    if type_letter == "A":
        # delta_t = e_{t+1} - e_t, so positive roots are e_j - e_i with j > i
        dim = rank + 1
        out = []
        for t in range(rank):
            v = [0] * dim
            v[t + 1], v[t] = 1, -1
            out.append(v)
        return out
    if type_letter in "BCD":
        dim = rank
        out = []
        for t in range(rank - 1):
            v = [0] * dim
            v[t], v[t + 1] = 1, -1
            out.append(v)
        v = [0] * dim
        if type_letter == "B":
            v[-1] = 1
        elif type_letter == "C":
            v[-1] = 2
        else:
            v[-2] = v[-1] = 1
        out.append(v)
        return out
    return None


@dataclass(eq=False)
class CominusculeSpace:
    rs: RootSystem
    node: int  # 0-based marked simple root

    def __repr__(self) -> str:
        return f"CominusculeSpace({self.name})"

    @property
    def key(self) -> tuple[str, int, int]:
        return (self.rs.type_letter, self.rs.rank, self.node + 1)

    @property
    def name(self) -> str:
        return space_name(*self.key)

    @property
    def factors(self) -> tuple["CominusculeSpace", ...]:
        return (self,)

    @property
    def alpha(self) -> int:
        return self.rs.simple(self.node)

    @cached_property
    def weights(self) -> tuple[int, ...]:
        """Root indices of the weights of g/p, in lex order of coordinates."""
        rs = self.rs
        ws = [i for i in rs.positive_indices if rs.roots[i][self.node] >= 1]
        return tuple(sorted(ws, key=lambda i: rs.roots[i]))

    @cached_property
    def weight_index(self) -> dict[int, int]:
        return {r: i for i, r in enumerate(self.weights)}

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def full(self) -> Position:
        """The whole space: every weight is an inversion, codimension 0."""
        return (1 << self.dim) - 1

    @property
    def point(self) -> Position:
        return 0

    def coords(self, w: int) -> tuple[int, ...]:
        return self.rs.roots[self.weights[w]]

    def leq(self, a: int, b: int) -> bool:
        return all(x <= y for x, y in zip(self.coords(a), self.coords(b)))

    @cached_property
    def lower_covers(self) -> tuple[int, ...]:
        """Bitmask of lower covers of each weight."""
        out = []
        for b in range(self.dim):
            cb = self.coords(b)
            m = 0
            for a in range(self.dim):
                ca = self.coords(a)
                diff = [y - x for x, y in zip(ca, cb)]
                if min(diff) >= 0 and sum(diff) == 1:
                    m |= 1 << a
            out.append(m)
        return tuple(out)

    @cached_property
    def below(self) -> tuple[int, ...]:
        """Bitmask of all weights <= each weight (inclusive)."""
        return tuple(sum(1 << a for a in range(self.dim) if self.leq(a, b)) for b in range(self.dim))

    @cached_property
    def above(self) -> tuple[int, ...]:
        return tuple(sum(1 << a for a in range(self.dim) if self.leq(b, a)) for b in range(self.dim))

    @cached_property
    def involution(self) -> tuple[int, ...]:
        """Order-reversing involution: the longest element of the Levi Weyl group."""
        rs = self.rs
        word: list[int] = []
        pos = rs.positive
        levi = [i for i in range(rs.rank) if i != self.node]
        while True:
            for i in levi:
                if pos[act(rs, word, rs.simple(i))]:
                    word.append(i)
                    break
            else:
                break
        return tuple(self.weight_index[act(rs, word, r)] for r in self.weights)

    def is_ideal(self, ideal: int) -> bool:
        if ideal < 0 or ideal >> self.dim:
            return False
        return all((ideal & self.lower_covers[b]) == self.lower_covers[b] for b in bits(ideal))

    def codim(self, ideal: Position) -> int:
        return self.dim - popcount(ideal)

    def coinversions(self, ideal: Position) -> int:
        return self.full & ~ideal

    def iter_ideals(self, cap: int | None = None) -> Iterator[Position]:
        covers = self.lower_covers
        n = self.dim
        count = 0

        def rec(i: int, cur: int) -> Iterator[int]:
            nonlocal count
            if i == n:
                count += 1
                if cap is not None and count > cap:
                    raise CapExceeded(f"more than {cap} ideals in {self.name}")
                yield cur
                return
            yield from rec(i + 1, cur)
            if cur & covers[i] == covers[i]:
                yield from rec(i + 1, cur | (1 << i))

        yield from rec(0, 0)

    @cached_property
    def positions(self) -> tuple[Position, ...]:
        """All positions, ordered by codimension and then by bitmask."""
        return tuple(sorted(self.iter_ideals(cap=_IDEAL_CAP[0]), key=lambda x: (self.codim(x), x)))

    @cached_property
    def position_index(self) -> dict[Position, int]:
        return {p: i for i, p in enumerate(self.positions)}

    @cached_property
    def e_vectors(self) -> list[tuple[int, ...]] | None:
        simple = _e_vectors(self.rs.type_letter, self.rs.rank)
        if simple is None:
            return None
        out = []
        for w in range(self.dim):
            c = self.coords(w)
            out.append(tuple(sum(ci * v[j] for ci, v in zip(c, simple)) for j in range(len(simple[0]))))
        return out


@dataclass(eq=False)
class ProductSpace:
    factors: tuple[CominusculeSpace, ...]

    def __repr__(self) -> str:
        return f"ProductSpace({self.name})"

    @property
    def key(self) -> tuple:
        return tuple(f.key for f in self.factors)

    @property
    def name(self) -> str:
        return " x ".join(f.name for f in self.factors) if self.factors else "pt"

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)

    @property
    def full(self) -> tuple[int, ...]:
        return tuple(f.full for f in self.factors)

    def codim(self, pos: Sequence[int]) -> int:
        return sum(f.codim(p) for f, p in zip(self.factors, pos))

    @cached_property
    def positions(self) -> tuple[tuple[int, ...], ...]:
        import itertools

        return tuple(itertools.product(*(f.positions for f in self.factors)))


Space = Union[CominusculeSpace, ProductSpace]

_IDEAL_CAP = [10**7]


def set_ideal_cap(cap: int) -> None:
    _IDEAL_CAP[0] = cap


def is_cominuscule_node(rs: RootSystem, node: int) -> bool:
    return rs.roots[rs.highest_root][node] == 1


@lru_cache(maxsize=None)
def space_from_key(type_letter: str, rank: int, node: int) -> CominusculeSpace:
    """Space for (type, rank, 1-based node); cached so each space is built once."""
    rs = build_root_system(type_letter, rank)
    if not 1 <= node <= rank:
        raise UnsupportedSpace(f"node {node} out of range for {rs.name}")
    if not is_cominuscule_node(rs, node - 1):
        raise UnsupportedSpace(f"node {node} of {rs.name} is not cominuscule")
    return CominusculeSpace(rs, node - 1)


def space_name(type_letter: str, rank: int, node: int) -> str:
    if type_letter == "A":
        return f"Gr({node},{rank + 1})"
    if type_letter == "B" and node == 1:
        return f"Q({2 * rank - 1})"
    if type_letter == "C" and node == rank:
        return f"LG({rank})"
    if type_letter == "D" and node == 1:
        return f"Q({2 * rank - 2})"
    if type_letter == "D" and node == rank:
        return f"OG({rank})"
    if type_letter == "E" and rank == 6 and node == 6:
        return "OP2"
    if type_letter == "E" and rank == 7 and node == 7:
        return "E7"
    return f"X({type_letter},{rank},{node})"


_SPACE_RE = {
    "Gr": re.compile(r"^Gr\((\d+),(\d+)\)$", re.I),
    "LG": re.compile(r"^LG\((\d+)\)$", re.I),
    "OG": re.compile(r"^OG\((\d+)\)$", re.I),
    "Q": re.compile(r"^Q\^?\(?(\d+)\)?$", re.I),
    "X": re.compile(r"^X\(([ABCDE]),(\d+),(\d+)\)$", re.I),
}


def parse_space_key(text: str) -> tuple[str, int, int]:
    t = re.sub(r"\s+", "", text)
    if t.upper() == "OP2":
        return ("E", 6, 6)
    if t.upper() == "E7":
        return ("E", 7, 7)
    m = _SPACE_RE["Gr"].match(t)
    if m:
        k, n = int(m[1]), int(m[2])
        if not 1 <= k < n:
            raise NotationError(f"Gr(k,n) needs 1 <= k < n: {text!r}")
        return ("A", n - 1, k)
    m = _SPACE_RE["LG"].match(t)
    if m:
        n = int(m[1])
        if n == 1:
            return ("A", 1, 1)
        if n < 2:
            raise NotationError(f"LG(n) needs n >= 1: {text!r}")
        return ("C", n, n)
    m = _SPACE_RE["OG"].match(t)
    if m:
        # OG(m) is the spinor variety of D_m (isotropic m-planes in C^{2m})
        n = int(m[1])
        if n < 3:
            raise NotationError(f"OG(m) needs m >= 3: {text!r}")
        return ("D", n, n)
    m = _SPACE_RE["Q"].match(t)
    if m:
        dim = int(m[1])
        if dim < 3:
            raise NotationError(f"Q(m) needs m >= 3 (Q(1) = Gr(1,2), Q(2) = Gr(1,2) x Gr(1,2)): {text!r}")
        if dim % 2:
            return ("B", (dim + 1) // 2, 1)
        return ("D", dim // 2 + 1, 1)
    m = _SPACE_RE["X"].match(t)
    if m:
        return (m[1].upper(), int(m[2]), int(m[3]))
    raise NotationError(f"unrecognised space {text!r}")


def build_space(desc: str | tuple | Sequence) -> Space:
    """Build a space from text (``Gr(2,4)``, ``OG(9)``, ``Gr(1,2) x Gr(1,2)``) or a key."""
    if isinstance(desc, tuple) and len(desc) == 3 and isinstance(desc[0], str):
        return space_from_key(desc[0].upper(), int(desc[1]), int(desc[2]))
    if isinstance(desc, str):
        parts = [p for p in re.split(r"\s+x\s+|\*", desc.strip()) if p.strip()]
        if desc.strip().lower() in ("pt", "point"):
            return ProductSpace(())
        if len(parts) == 1:
            return space_from_key(*parse_space_key(parts[0]))
        return ProductSpace(tuple(space_from_key(*parse_space_key(p)) for p in parts))
    raise NotationError(f"cannot build a space from {desc!r}")


def enumerate_positions(space: Space, codim: int | Callable[[object], bool] | None = None) -> list:
    """All positions, optionally those of one codimension or passing a predicate."""
    ps = list(space.positions)
    if codim is None:
        return ps
    if callable(codim):
        return [p for p in ps if codim(p)]
    return [p for p in ps if space.codim(p) == codim]


def dual(space: Space, pos):
    """Poincare dual position: the involution applied to the coinversions."""
    if isinstance(space, ProductSpace):
        return tuple(dual(f, p) for f, p in zip(space.factors, pos))
    inv = space.involution
    co = space.coinversions(pos)
    return sum(1 << inv[b] for b in bits(co))


# ----------------------------------------------------------------------------
# notation


def _cell_type_a(space: CominusculeSpace, w: int) -> tuple[int, int]:
    """(row, column) of a Grassmannian weight e_j - e_i: row i, column j - k."""
    v = space.e_vectors[w]
    i = v.index(-1) + 1
    j = v.index(1) + 1
    return i, j - (space.node + 1)


def _cell_staircase(space: CominusculeSpace, w: int) -> tuple[int, int]:
    """(row, column) of e_i + e_j, i <= j, for LG and OG staircases."""
    v = space.e_vectors[w]
    idx = [t + 1 for t, x in enumerate(v) for _ in range(x)]
    return idx[0], idx[-1]


def grassmannian_shape(space: CominusculeSpace) -> tuple[int, int]:
    k = space.node + 1
    return k, space.rs.rank + 1 - k


def partition_of(space: CominusculeSpace, ideal: int) -> tuple[int, ...]:
    """Row lengths of the coinversions (Gr) or of the strict partition (LG, OG)."""
    kind = notation_kind(space)
    if kind == "gr":
        k, _ = grassmannian_shape(space)
        rows = [0] * k
        for b in bits(space.coinversions(ideal)):
            rows[_cell_type_a(space, b)[0] - 1] += 1
        return tuple(rows)
    if kind in ("lg", "og"):
        height = space.rs.rank if kind == "lg" else space.rs.rank - 1
        rows = [0] * height
        for b in bits(space.coinversions(ideal)):
            rows[_cell_staircase(space, b)[0] - 1] += 1
        return tuple(x for x in rows if x)
    raise NotationError(f"{space.name} has no partition notation")


def ideal_of_partition(space: CominusculeSpace, parts: Sequence[int]) -> int:
    kind = notation_kind(space)
    parts = [int(p) for p in parts]
    if kind == "gr":
        k, m = grassmannian_shape(space)
        parts = parts + [0] * (k - len(parts))
        if len(parts) > k or any(p < 0 or p > m for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise NotationError(f"{tuple(parts)} is not a partition in the {k}x{m} box")
        co = 0
        for w in range(space.dim):
            i, j = _cell_type_a(space, w)
            if j > m - parts[i - 1]:
                co |= 1 << w
        return space.full & ~co
    if kind in ("lg", "og"):
        height = space.rs.rank if kind == "lg" else space.rs.rank - 1
        parts = [p for p in parts if p]
        if any(a <= b for a, b in zip(parts, parts[1:])) or len(parts) > height:
            raise NotationError(f"{tuple(parts)} is not a strict partition in the height-{height} staircase")
        co = 0
        offset = 0 if kind == "lg" else 1
        for r, length in enumerate(parts, start=1):
            if length > height + 1 - r:
                raise NotationError(f"row {r} of {tuple(parts)} is too long for the staircase")
            for w in range(space.dim):
                i, j = _cell_staircase(space, w)
                if i == r and j - i - offset < length:
                    co |= 1 << w
        ideal = space.full & ~co
        assert space.is_ideal(ideal)
        return ideal
    raise NotationError(f"{space.name} has no partition notation")


def notation_kind(space: CominusculeSpace) -> str:
    t, rank, node = space.key
    if t == "A":
        return "gr"
    if t == "C" and node == rank:
        return "lg"
    if t == "D" and node == rank:
        return "og"
    if (t == "D" and node == 1) or (t == "B" and node == 1):
        return "quadric"
    return "bits"


def quadric_labels(space: CominusculeSpace) -> list[str]:
    """Label of each weight: its height minus one, with a bar on the second middle root."""
    t, rank, _ = space.key
    labels = []
    for w in range(space.dim):
        c = space.coords(w)
        h = sum(c)
        if t == "D" and h == rank - 1 and c[rank - 1] == 1:
            labels.append(f"{h - 1}bar")
        else:
            labels.append(str(h - 1))
    return labels


_BAR_RE = re.compile(r"^(\d+)\s*(?:bar|'|̄|~)$", re.I)


def parse_position(space: Space, text: str):
    """Parse one position; product spaces take factor positions separated by ';'."""
    if isinstance(space, ProductSpace):
        chunks = [c for c in text.split(";")]
        if len(chunks) != len(space.factors):
            raise NotationError(f"expected {len(space.factors)} ';'-separated factor positions in {text!r}")
        return tuple(parse_position(f, c) for f, c in zip(space.factors, chunks))
    s = text.strip()
    kind = notation_kind(space)
    if kind == "gr":
        if "|" in s:
            return _parse_permutation(space, s)
        return ideal_of_partition(space, _ints(s))
    if kind in ("lg", "og"):
        return ideal_of_partition(space, _ints(s))
    if kind == "quadric":
        return _parse_quadric(space, s)
    return _parse_bits(space, s)


def _ints(s: str) -> list[int]:
    body = s.strip().strip("()[]")
    if not body.strip():
        return []
    try:
        return [int(x) for x in re.split(r"[,\s]+", body.strip()) if x]
    except ValueError as exc:
        raise NotationError(f"expected integers in {s!r}") from exc


def _parse_permutation(space: CominusculeSpace, s: str) -> int:
    left, _, right = s.partition("|")
    first, last = _ints(left), _ints(right)
    k, m = grassmannian_shape(space)
    perm = first + last
    if len(first) != k or len(last) != m or sorted(perm) != list(range(1, k + m + 1)):
        raise NotationError(f"{s!r} is not a permutation of 1..{k + m} split {k}|{m}")
    if first != sorted(first) or last != sorted(last):
        raise NotationError(f"{s!r} must be increasing on each side of '|'")
    ideal = 0
    for w in range(space.dim):
        i, col = _cell_type_a(space, w)
        j = col + k
        if perm[i - 1] > perm[j - 1]:
            ideal |= 1 << w
    return ideal


def _parse_quadric(space: CominusculeSpace, s: str) -> int:
    labels = quadric_labels(space)
    dim = space.dim
    t = s.strip()
    m = _BAR_RE.match(t)
    barred = m is not None
    try:
        size = int(m[1]) if m else int(t)
    except ValueError as exc:
        raise NotationError(f"bad quadric label {s!r}") from exc
    if not 0 <= size <= dim:
        raise NotationError(f"label {s!r} out of range 0..{dim}")
    candidates = [p for p in space.positions if popcount(p) == size]
    if len(candidates) == 1:
        if barred:
            raise NotationError(f"label {size} has no barred form")
        return candidates[0]
    # middle of an even quadric: n is the ideal containing n-1, nbar the one containing (n-1)bar
    want = f"{size - 1}bar" if barred else str(size - 1)
    for p in candidates:
        if any(labels[b] == want for b in bits(p)):
            return p
    raise NotationError(f"no position with label {s!r}")


def _parse_bits(space: CominusculeSpace, s: str) -> int:
    t = s.strip()
    if len(t) != space.dim or set(t) - {"0", "1"}:
        raise NotationError(f"expected a {space.dim}-character bitstring for {space.name}, got {s!r}")
    ideal = sum(1 << i for i, ch in enumerate(t) if ch == "1")
    if not space.is_ideal(ideal):
        raise NotationError(f"{s!r} is not a lower order ideal of {space.name}")
    return ideal


def format_position(space: Space, pos) -> str:
    if isinstance(space, ProductSpace):
        return ";".join(format_position(f, p) for f, p in zip(space.factors, pos))
    kind = notation_kind(space)
    if kind == "gr":
        part = [x for x in partition_of(space, pos) if x]
        return "(" + ",".join(map(str, part)) + ")"
    if kind in ("lg", "og"):
        return "(" + ",".join(map(str, partition_of(space, pos))) + ")"
    if kind == "quadric":
        size = popcount(pos)
        same = [p for p in space.positions if popcount(p) == size]
        if len(same) == 1:
            return str(size)
        labels = quadric_labels(space)
        return f"{size}bar" if any(labels[b].endswith("bar") for b in bits(pos)) and not any(
            labels[b] == str(size - 1) for b in bits(pos)
        ) else str(size)
    return "".join("1" if pos >> i & 1 else "0" for i in range(space.dim))


def format_permutation(space: CominusculeSpace, ideal: int) -> str:
    """One-line permutation with its unique descent at k, read off the ideal."""
    k, m = grassmannian_shape(space)
    # walk the border of the ideal: rows from the top, a vertical step per row
    part = partition_of(space, ideal)
    inv_rows = [m - p for p in part]  # inversions per row, left-justified
    first, last = [], []
    label = 1
    col = 0
    # boundary path from upper left to lower right around the inversion set
    for row in range(k):
        while col < inv_rows[row]:
            last.append(label)
            label += 1
            col += 1
        first.append(label)
        label += 1
    while label <= k + m:
        last.append(label)
        label += 1
    return " ".join(map(str, first)) + " | " + " ".join(map(str, last))
