"""Recursive feasibility test for Schubert positions on cominuscule spaces.

A tuple (pi_1..pi_s) is feasible iff the codimensions sum to at most dim, and
for every orbit datum and every feasible lambda-tuple on L/Q,
    sum_i |Inv^c(pi_i) & lambda_i Phi(z)| <= |Phi(z)|.
Feasibility of lambda-tuples is decided by the same engine one level down.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import DEFAULT, Config
from .coset import lambda_z, pi_lambda_inv
from .errors import CapExceeded, NotationError
from .orbit import OrbitDatum, m_of_p
from .space import CominusculeSpace, ProductSpace, Space, bits, popcount

MODES = ("top", "full")


@dataclass(frozen=True)
class Witness:
    lhs: int
    rhs: int
    r: int | None = None  # None for the basic codimension inequality
    lambdas: tuple | None = None
    factor: int | None = None  # index into a product space

    @property
    def basic(self) -> bool:
        return self.r is None


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.feasible


@dataclass(frozen=True)
class Inequality:
    """sum_i |Inv^c(pi_i) & slots[i]| <= rhs, with slots as weight bitmasks."""

    rhs: int
    slots: tuple[int, ...]
    r: int | None = None
    lambdas: tuple | None = None

    def slot_indices(self) -> list[list[int]]:
        return [list(bits(m)) for m in self.slots]

    def evaluate(self, space: CominusculeSpace, positions: Sequence[int]) -> int:
        return sum(popcount(space.coinversions(p) & m) for p, m in zip(positions, self.slots))

    def holds(self, space: CominusculeSpace, positions: Sequence[int]) -> bool:
        return self.evaluate(space, positions) <= self.rhs


def count_pi_lambda(space: CominusculeSpace, datum: OrbitDatum, pi: int, lam: tuple[int, ...]) -> int:
    """|pi|_lambda = |Inv^c(pi) & lambda Phi(z)|."""
    return popcount(space.coinversions(pi) & lambda_z(datum, lam))


def generalized_codim(space: CominusculeSpace, s_mask: int, pi: int, datum: OrbitDatum | None = None, lam=None) -> int:
    """|S - Inv(pi lambda)| for an upper set S of weights (bitmask); lambda = e if omitted."""
    for b in bits(s_mask):
        if space.above[b] & ~s_mask:
            raise ValueError("S is not upward closed")
    if datum is None or lam is None:
        return popcount(s_mask & ~pi)
    inv = pi_lambda_inv(space, pi, datum, lam)
    return sum(1 for b in bits(s_mask) if space.weights[b] not in inv)


class _DatumTable:
    """Per-datum lookup: V[pi, lam] = |Inv^c(pi) & lam Phi(z)| over all positions."""

    def __init__(self, space: CominusculeSpace, datum: OrbitDatum):
        self.datum = datum
        self.lams = datum.levi_quotient.positions
        self.masks = [lambda_z(datum, lam) for lam in self.lams]
        co = [space.coinversions(p) for p in space.positions]
        self.V = np.array([[popcount(c & m) for m in self.masks] for c in co], dtype=np.int32)
        self.lam_index = {lam: i for i, lam in enumerate(self.lams)}


@dataclass
class Engine:
    config: Config = field(default_factory=lambda: DEFAULT)
    sort_tuples: bool = True  # canonicalise memo keys; off to test permutation invariance
    _tables: dict = field(default_factory=dict, repr=False)
    _lam_tuples: dict = field(default_factory=dict, repr=False)
    _enum: dict = field(default_factory=dict, repr=False)
    _memo: dict = field(default_factory=dict, repr=False)

    # ---------------------------------------------------------------- tables

    def tables(self, space: CominusculeSpace) -> list[_DatumTable]:
        t = self._tables.get(space.key)
        if t is None:
            t = [_DatumTable(space, d) for d in m_of_p(space)]
            self._tables[space.key] = t
        return t

    def lambda_tuples(self, datum: OrbitDatum, s: int, mode: str) -> np.ndarray:
        """Feasible s-tuples on L/Q (top-degree only in mode=top) as rows of product-position indices."""
        key = (datum.space.key, datum.r, s, mode)
        out = self._lam_tuples.get(key)
        if out is not None:
            return out
        factors = datum.levi_quotient.factors
        if not factors:
            out = np.zeros((1, s), dtype=np.int64)
        else:
            per = [self._enum_indices(f, s, top_only=(mode == "top"), mode=mode) for f in factors]
            total = 1
            for a in per:
                total *= len(a)
            if total > self.config.tuple_cap:
                raise CapExceeded(f"{total} lambda-tuples on {datum.levi_quotient.name} exceed cap")
            sizes = [len(f.positions) for f in factors]
            strides = [int(np.prod(sizes[i + 1:], dtype=np.int64)) for i in range(len(sizes))]
            out = np.zeros((1, s), dtype=np.int64)
            for a, stride in zip(per, strides):
                # combine: every existing row with every factor row
                out = (out[:, None, :] + stride * a[None, :, :]).reshape(-1, s)
            out = out[np.lexsort(out.T[::-1])]
        self._lam_tuples[key] = out
        return out

    # ------------------------------------------------------------- checking

    def _check_batch(self, space: CominusculeSpace, P: np.ndarray, mode: str) -> list[Witness | None]:
        """First violated inequality for each row of position indices, or None."""
        n, s = P.shape
        out: list[Witness | None] = [None] * n
        if s <= 1 or n == 0:
            return out
        codims = np.array([space.codim(p) for p in space.positions], dtype=np.int64)
        tot = codims[P].sum(axis=1)
        alive = np.ones(n, dtype=bool)
        for i in np.nonzero(tot > space.dim)[0]:
            out[i] = Witness(int(tot[i]), space.dim)
            alive[i] = False
        for tab in self.tables(space):
            rows = np.nonzero(alive)[0]
            if len(rows) == 0:
                break
            L = self.lambda_tuples(tab.datum, s, mode)
            rhs = tab.datum.dim_z
            chunk = max(1, 4_000_000 // max(1, len(L)))
            for start in range(0, len(rows), chunk):
                rr = rows[start:start + chunk]
                lhs = np.zeros((len(rr), len(L)), dtype=np.int32)
                for i in range(s):
                    lhs += tab.V[P[rr, i]][:, L[:, i]]
                bad = lhs > rhs
                hit = bad.any(axis=1)
                first = bad.argmax(axis=1)
                for j in np.nonzero(hit)[0]:
                    row = rr[j]
                    col = int(first[j])
                    lams = tuple(tab.lams[int(x)] for x in L[col])
                    out[row] = Witness(int(lhs[j, col]), rhs, tab.datum.r, lams)
                    alive[row] = False
        return out

    def is_feasible(self, space: Space, positions: Sequence, mode: str = "top") -> FeasibilityReport:
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if isinstance(space, ProductSpace):
            for f, fac in enumerate(space.factors):
                rep = self.is_feasible(fac, [p[f] for p in positions], mode)
                if not rep.feasible:
                    w = rep.witness
                    return FeasibilityReport(False, Witness(w.lhs, w.rhs, w.r, w.lambdas, f))
            return FeasibilityReport(True)
        idx = []
        for p in positions:
            i = space.position_index.get(p)
            if i is None:
                raise NotationError(f"{p!r} is not a position of {space.name}")
            idx.append(i)
        order = sorted(range(len(idx)), key=lambda i: idx[i]) if self.sort_tuples else list(range(len(idx)))
        key_idx = tuple(idx[i] for i in order)
        key = (space.key, mode, key_idx)
        w = self._memo.get(key, False)
        if w is False:
            w = self._check_batch(space, np.array([key_idx], dtype=np.int64).reshape(1, len(key_idx)), mode)[0]
            if len(self._memo) >= self.config.cache_size:
                self._memo.clear()
            self._memo[key] = w
        if w is None:
            return FeasibilityReport(True)
        if w.lambdas is not None and self.sort_tuples:
            # report lambdas in the caller's slot order
            lams = [None] * len(order)
            for slot, i in enumerate(order):
                lams[i] = w.lambdas[slot]
            w = Witness(w.lhs, w.rhs, w.r, tuple(lams), w.factor)
        return FeasibilityReport(False, w)

    # ----------------------------------------------------------- enumeration

    def _candidates(self, space: CominusculeSpace, s: int, top_only: bool) -> np.ndarray:
        codims = [space.codim(p) for p in space.positions]
        rows = []

        def rec(start: int, left: int, cur: list[int]):
            if len(cur) == s:
                if not top_only or left == 0:
                    rows.append(tuple(cur))
                    if len(rows) > self.config.tuple_cap:
                        raise CapExceeded(f"more than {self.config.tuple_cap} tuples on {space.name}")
                return
            for i in range(start, len(codims)):
                if codims[i] <= left:
                    cur.append(i)
                    rec(i, left - codims[i], cur)
                    cur.pop()

        # basic inequality pruned here; it is re-checked in _check_batch
        rec(0, space.dim, [])
        return np.array(rows, dtype=np.int64).reshape(len(rows), s)

    def _enum_indices(self, space: CominusculeSpace, s: int, top_only: bool, mode: str) -> np.ndarray:
        key = (space.key, s, top_only, mode)
        out = self._enum.get(key)
        if out is not None:
            return out
        cand = self._candidates(space, s, top_only)
        wit = self._check_batch(space, cand, mode)
        rows = set()
        for row, w in zip(cand, wit):
            if w is None:
                rows.update(itertools.permutations(tuple(int(x) for x in row)))
        out = np.array(sorted(rows), dtype=np.int64).reshape(len(rows), s)
        self._enum[key] = out
        return out

    def enumerate_feasible(self, space: Space, s: int, top_only: bool = True, mode: str = "top") -> list[tuple]:
        """All feasible ordered s-tuples of positions, in canonical order."""
        if isinstance(space, ProductSpace):
            per = [self.enumerate_feasible(f, s, top_only, mode) for f in space.factors]
            out = []
            for combo in itertools.product(*per):
                out.append(tuple(tuple(c[i] for c in combo) for i in range(s)))
            return out
        pos = space.positions
        return [tuple(pos[i] for i in row) for row in self._enum_indices(space, s, top_only, mode)]

    def emit_inequalities(self, space: CominusculeSpace, s: int, mode: str = "top") -> list[Inequality]:
        """Basic codimension inequality plus one per (datum, feasible lambda-tuple)."""
        if isinstance(space, ProductSpace):
            raise NotationError("inequalities are emitted per factor; pass a single space")
        out = [Inequality(space.dim, (space.full,) * s)]
        for tab in self.tables(space):
            for row in self.lambda_tuples(tab.datum, s, mode):
                out.append(
                    Inequality(
                        tab.datum.dim_z,
                        tuple(tab.masks[int(x)] for x in row),
                        tab.datum.r,
                        tuple(tab.lams[int(x)] for x in row),
                    )
                )
        return out


_DEFAULT_ENGINE: Engine | None = None


def default_engine() -> Engine:
    global _DEFAULT_ENGINE
    if _DEFAULT_ENGINE is None:
        _DEFAULT_ENGINE = Engine()
    return _DEFAULT_ENGINE


def is_feasible(space: Space, positions: Sequence, mode: str = "top") -> FeasibilityReport:
    return default_engine().is_feasible(space, positions, mode)


def enumerate_feasible(space: Space, s: int, top_only: bool = True, mode: str = "top") -> list[tuple]:
    return default_engine().enumerate_feasible(space, s, top_only, mode)


def emit_inequalities(space: CominusculeSpace, s: int, mode: str = "top") -> list[Inequality]:
    return default_engine().emit_inequalities(space, s, mode)
