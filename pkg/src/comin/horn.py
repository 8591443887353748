"""Horn-type recursions on Grassmannians and the naive Lagrangian inequalities.

Partitions for Gr(k,n) are k-tuples mu^1 >= ... >= mu^k in the k x (n-k) box,
matching the coinversion rows of a position (see space.partition_of).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from .coset import word_from_ideal
from .errors import NotationError
from .feasibility import Engine, default_engine
from .oracles import product_nonzero
from .rootsys import act
from .space import (
    CominusculeSpace,
    build_space,
    ideal_of_partition,
    partition_of,
    popcount,
    space_from_key,
)

Partition = tuple[int, ...]


def grassmannian(k: int, n: int) -> CominusculeSpace:
    return space_from_key("A", n - 1, k)


def pad(mu: Sequence[int], k: int) -> Partition:
    mu = tuple(int(x) for x in mu)
    if len(mu) > k:
        if any(mu[k:]):
            raise NotationError(f"{mu} has more than {k} parts")
        mu = mu[:k]
    return mu + (0,) * (k - len(mu))


def box_partitions(k: int, m: int) -> list[Partition]:
    """All partitions with at most k parts, each at most m, as k-tuples."""
    out = []

    def rec(i: int, cap: int, cur: list[int]):
        if i == k:
            out.append(tuple(cur))
            return
        for x in range(cap, -1, -1):
            cur.append(x)
            rec(i + 1, x, cur)
            cur.pop()

    rec(0, m, [])
    return out


def conjugate(mu: Sequence[int], rows: int) -> Partition:
    """Transpose, returned with exactly ``rows`` parts."""
    mu = [x for x in mu if x]
    return tuple(sum(1 for x in mu if x > j) for j in range(rows))


def dual_partition(mu: Sequence[int], k: int, n: int) -> Partition:
    """hat(mu)^a = (n-k) - mu^(k+1-a)."""
    mu = pad(mu, k)
    return tuple(n - k - mu[k - a] for a in range(1, k + 1))


def selector(kappa: Sequence[int], r: int) -> tuple[int, ...]:
    """kappa[a] = a + kappa^(r+1-a), a = 1..r (1-based row indices)."""
    kappa = pad(kappa, r)
    return tuple(a + kappa[r - a] for a in range(1, r + 1))


def mu_kappa(mu: Sequence[int], kappa: Sequence[int], r: int) -> int:
    """|mu|^kappa = sum_a mu^(kappa[a])."""
    sel = selector(kappa, r)
    if sel and sel[-1] > len(mu):
        raise NotationError(f"selector {sel} does not fit a partition with {len(mu)} rows")
    return sum(mu[a - 1] for a in sel)


# ----------------------------------------------------------------------------
# classical Horn recursion


@lru_cache(maxsize=None)
def _horn_cached(k: int, n: int, mus: tuple[Partition, ...], nu: Partition) -> bool:
    m = len(mus)
    if m == 1:
        return mus[0] == nu
    for r in range(1, k):
        for kappas, theta in horn_feasible_sets(r, k, m):
            lhs = sum(mu_kappa(mu, kap, r) for mu, kap in zip(mus, kappas))
            if lhs < mu_kappa(nu, theta, r):
                return False
    return True


@lru_cache(maxsize=None)
def horn_feasible_sets(r: int, k: int, m: int) -> tuple[tuple[tuple[Partition, ...], Partition], ...]:
    """All (kappa_1..kappa_m, theta) on Gr(r,k) with sigma_theta in prod sigma_kappa_i, by the recursion."""
    parts = box_partitions(r, k - r)
    by_size: dict[int, list[Partition]] = {}
    for p in parts:
        by_size.setdefault(sum(p), []).append(p)
    out = []
    for kappas in itertools.product(parts, repeat=m):
        size = sum(sum(p) for p in kappas)
        for theta in by_size.get(size, []):
            if _horn_cached(r, k, kappas, theta):
                out.append((kappas, theta))
    return tuple(out)


def classical_horn_feasible(k: int, n: int, mus: Sequence[Sequence[int]], nu: Sequence[int]) -> bool:
    """Does sigma_nu occur in prod sigma_mu_i on Gr(k,n)?  Decided by Horn's recursion."""
    mus_p = tuple(pad(mu, k) for mu in mus)
    nu_p = pad(nu, k)
    for p in mus_p + (nu_p,):
        if any(x > n - k or x < 0 for x in p) or any(a < b for a, b in zip(p, p[1:])):
            raise NotationError(f"{p} is not a partition in the {k}x{n - k} box")
    if sum(nu_p) != sum(sum(p) for p in mus_p):
        raise ValueError("degree mismatch: |nu| must equal the sum of |mu_i|")
    if not mus_p:
        return not any(nu_p)
    return _horn_cached(k, n, mus_p, nu_p)


def horn_top_degree(k: int, n: int, parts: Sequence[Sequence[int]]) -> bool:
    """Feasibility of a top-degree tuple via the classical recursion (last slot dualised)."""
    *mus, last = [pad(p, k) for p in parts]
    return classical_horn_feasible(k, n, mus, dual_partition(last, k, n))


# ----------------------------------------------------------------------------
# one-factor recursion: only the rows of the rectangle are shuffled


@lru_cache(maxsize=None)
def one_factor_masks(k: int, n: int, r: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(lambda positions on Gr(k-r,k), masks of lambda Phi(z) on Gr(k,n)) for the rows-only orbit."""
    big = grassmannian(k, n)
    small = grassmannian(k - r, k)
    # Phi(z): the top k-r rows, i.e. weights using simple root k-r
    z = [w for w in range(big.dim) if big.coords(w)[k - r - 1] == 1]
    masks = []
    for lam in small.positions:
        word = word_from_ideal(small, lam)  # nodes 0..k-2 coincide with the big Levi's
        m = 0
        for w in z:
            m |= 1 << big.weight_index[act(big.rs, word, big.weights[w])]
        masks.append(m)
    return small.positions, tuple(masks)


@lru_cache(maxsize=None)
def _one_factor_tuples(k: int, n: int, s: int) -> tuple[tuple[int, ...], ...]:
    sp = grassmannian(k, n)
    out = []
    for tup in itertools.product(sp.positions, repeat=s):
        if sum(sp.codim(p) for p in tup) == sp.dim and _one_factor_ok(k, n, tup):
            out.append(tup)
    return tuple(out)


def _one_factor_ok(k: int, n: int, positions: tuple[int, ...]) -> bool:
    sp = grassmannian(k, n)
    s = len(positions)
    if s <= 1:
        return True
    co = [sp.coinversions(p) for p in positions]
    for r in range(1, k):
        lams, masks = one_factor_masks(k, n, r)
        idx = {p: i for i, p in enumerate(lams)}
        rhs = (k - r) * (n - k)
        for lt in _one_factor_tuples(k - r, k, s):
            if sum(popcount(c & masks[idx[l]]) for c, l in zip(co, lt)) > rhs:
                return False
    return True


def one_factor_feasible(k: int, n: int, positions: Sequence[int]) -> bool:
    """Top-degree feasibility on Gr(k,n) by the recursion over Gr(k-r,k) only."""
    sp = grassmannian(k, n)
    if sum(sp.codim(p) for p in positions) != sp.dim:
        raise ValueError("one-factor recursion needs a top-degree tuple")
    return _one_factor_ok(k, n, tuple(positions))


def one_factor_value(k: int, n: int, r: int, pi: int, lam: int) -> int:
    lams, masks = one_factor_masks(k, n, r)
    return popcount(grassmannian(k, n).coinversions(pi) & masks[lams.index(lam)])


# ----------------------------------------------------------------------------
# naive Lagrangian inequalities


def naive_selection(n: int, r: int, lam_partition: Sequence[int]) -> tuple[int, ...]:
    """Diagonal indices kept by hat(lambda)^t: [n] minus {n+1-kappa[j]} with kappa = lambda^t."""
    kappa = conjugate(lam_partition, n - r)
    drop = {n + 1 - a for a in selector(kappa, n - r)}
    return tuple(i for i in range(1, n + 1) if i not in drop)


def naive_value(lg: CominusculeSpace, pi: int, keep: Sequence[int]) -> int:
    """|pi|_{hat(lambda)^t}: coinversion cells (a,b) with both a, b in ``keep``."""
    from .space import _cell_staircase

    keep = set(keep)
    total = 0
    co = lg.coinversions(pi)
    for w in range(lg.dim):
        if co >> w & 1:
            a, b = _cell_staircase(lg, w)
            if a in keep and b in keep:
                total += 1
    return total


@dataclass(frozen=True)
class NaiveResult:
    passes: bool
    r: int | None = None
    lambdas: tuple | None = None
    lhs: int | None = None
    rhs: int | None = None


@lru_cache(maxsize=None)
def naive_table(n: int, r: int) -> np.ndarray:
    """T[pi, lam] = |pi|_{hat(lambda)^t} over LG(n) positions x Gr(r,n) positions."""
    lg = build_space(f"LG({n})")
    gr = grassmannian(r, n)
    return np.array(
        [[naive_value(lg, p, naive_selection(n, r, partition_of(gr, l))) for l in gr.positions] for p in lg.positions],
        dtype=np.int32,
    )


def naive_lg_check(n: int, positions: Sequence[int], engine: Engine | None = None, use_oracle: bool = False) -> NaiveResult:
    """sum_i |pi_i|_{hat(lambda_i)^t} >= C(r+1,2) over feasible top-degree lambda-tuples on Gr(r,n)."""
    engine = engine or default_engine()
    lg = build_space(f"LG({n})")
    if sum(lg.codim(p) for p in positions) != lg.dim:
        raise ValueError("naive inequalities are stated for top-degree tuples")
    idx = [lg.position_index[p] for p in positions]
    for r in range(1, n):
        gr = grassmannian(r, n)
        rhs = comb(r + 1, 2)
        lt = _gr_top_tuples(gr, len(positions), engine, use_oracle)
        if len(lt) == 0:
            continue
        T = naive_table(n, r)
        lhs = sum(T[i, lt[:, slot]] for slot, i in enumerate(idx))
        bad = np.nonzero(lhs < rhs)[0]
        if len(bad):
            j = int(bad[0])
            return NaiveResult(False, r, tuple(gr.positions[int(x)] for x in lt[j]), int(lhs[j]), rhs)
    return NaiveResult(True)


def _gr_top_tuples(gr: CominusculeSpace, s: int, engine: Engine, use_oracle: bool) -> np.ndarray:
    """Feasible top-degree s-tuples on a Grassmannian, as rows of position indices."""
    key = (gr.key, s, use_oracle, id(engine))
    out = _GR_TUPLES.get(key)
    if out is None:
        if use_oracle:
            rows = [
                tuple(gr.position_index[p] for p in t) for t in itertools.product(gr.positions, repeat=s)
                if sum(gr.codim(p) for p in t) == gr.dim and product_nonzero(gr, t)
            ]
        else:
            rows = [tuple(gr.position_index[p] for p in t) for t in engine.enumerate_feasible(gr, s, top_only=True)]
        out = np.array(rows, dtype=np.int64).reshape(len(rows), s)
        _GR_TUPLES[key] = out
    return out


_GR_TUPLES: dict = {}


# ----------------------------------------------------------------------------
# symplectic one-line notation, used to cross-check the naive evaluator


def lagrangian_sequences(n: int) -> list[tuple[int, ...]]:
    """Increasing w^1 < ... < w^n in [2n] with no two entries summing to 2n+1."""
    out = []
    for choice in itertools.product((0, 1), repeat=n):
        w = sorted(i + 1 if c == 0 else 2 * n - i for i, c in enumerate(choice))
        out.append(tuple(w))
    return out


def isotropic_codim(w: Sequence[int], n: int) -> int:
    """|w| = sum (w^j - j) - #{a < b : w^a + w^b > 2n+1}."""
    k = len(w)
    base = sum(w[j] - (j + 1) for j in range(k))
    return base - sum(1 for a in range(k) for b in range(a + 1, k) if w[a] + w[b] > 2 * n + 1)


def sequence_of_position(lg: CominusculeSpace, pi: int) -> tuple[int, ...]:
    """The w with a coinversion at (n+1-a, n+1-b) exactly when w^a + w^b > 2n+1."""
    from .space import _cell_staircase

    n = lg.rs.rank
    co = lg.coinversions(pi)
    cells = {_cell_staircase(lg, w) for w in range(lg.dim) if co >> w & 1}
    for w in lagrangian_sequences(n):
        got = {
            (n + 1 - b, n + 1 - a)
            for a in range(1, n + 1) for b in range(a, n + 1) if w[a - 1] + w[b - 1] > 2 * n + 1
        }
        if got == cells:
            return w
    raise ValueError("no symplectic sequence matches this position")


# ----------------------------------------------------------------------------
# comparison tables


@dataclass
class HornComparison:
    k: int
    n: int
    s: int
    tuples: int = 0
    feasible: int = 0
    mismatches: list = field(default_factory=list)


def horn_compare(k: int, n: int, s: int, engine: Engine | None = None) -> HornComparison:
    """Classical Horn, one-factor, cominuscule recursion and LR oracle over all top-degree s-tuples."""
    engine = engine or default_engine()
    sp = grassmannian(k, n)
    res = HornComparison(k, n, s)
    for tup in itertools.product(sp.positions, repeat=s):
        if sum(sp.codim(p) for p in tup) != sp.dim:
            continue
        res.tuples += 1
        verdicts = (
            horn_top_degree(k, n, [partition_of(sp, p) for p in tup]),
            one_factor_feasible(k, n, tup),
            engine.is_feasible(sp, tup).feasible,
            product_nonzero(sp, tup),
        )
        res.feasible += verdicts[3]
        if len(set(verdicts)) > 1:
            res.mismatches.append((tup, verdicts))
    return res


def positions_from_partitions(k: int, n: int, parts: Sequence[Sequence[int]]) -> list[int]:
    sp = grassmannian(k, n)
    return [ideal_of_partition(sp, p) for p in parts]
