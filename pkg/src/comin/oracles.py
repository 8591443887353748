"""Independent ground truth for non-vanishing of Schubert products.

Grassmannians use the Littlewood-Richardson rule, Lagrangian and maximal
orthogonal Grassmannians use Stembridge's shifted rule for Schur P/Q
functions, and quadrics use their explicit cohomology ring.  The brute-force
Weyl group enumeration lives in rootsys and is re-exported here.
"""
from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterable, Sequence

from .errors import UnsupportedSpace
from .rootsys import weyl_action_table, weyl_enumerate  # noqa: F401  (oracle re-export)
from .space import CominusculeSpace, ProductSpace, Space, notation_kind, partition_of, popcount

Partition = tuple[int, ...]


def _strip(p: Iterable[int]) -> Partition:
    return tuple(x for x in p if x)


# ----------------------------------------------------------------------------
# Littlewood-Richardson


@lru_cache(maxsize=None)
def lr_coefficient(mu: Partition, nu: Partition, lam: Partition) -> int:
    """c^lam_{mu nu}: LR tableaux of shape lam/mu and content nu."""
    mu, nu, lam = _strip(mu), _strip(nu), _strip(lam)
    if sum(lam) != sum(mu) + sum(nu) or len(mu) > len(lam):
        return 0
    mu_p = mu + (0,) * (len(lam) - len(mu))
    if any(m > l for m, l in zip(mu_p, lam)):
        return 0
    if not nu:
        return 1
    rows = [(mu_p[i], lam[i]) for i in range(len(lam))]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(nu) + 1)

    # fill rows top to bottom, each right to left: that is the reverse reading order,
    # so the lattice condition is checked as we go
    cells = [(i, j) for i, (a, b) in enumerate(rows) for j in range(b - 1, a - 1, -1)]

    def rec(c: int) -> int:
        if c == len(cells):
            return 1
        i, j = cells[c]
        hi = len(nu)
        right = filling.get((i, j + 1))
        if right is not None:
            hi = min(hi, right)
        lo = 1
        above = filling.get((i - 1, j))
        if above is not None:
            lo = above + 1
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= nu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(i, j)] = v
            total += rec(c + 1)
            del filling[(i, j)]
            counts[v] -= 1
        return total

    return rec(0)


def _partitions_in_box(size: int, rows: int, cols: int, lo: Partition = ()) -> list[Partition]:
    lo = lo + (0,) * (rows - len(lo))
    out = []

    def rec(i: int, left: int, cap: int, cur: list[int]):
        if i == rows:
            if left == 0:
                out.append(_strip(cur))
            return
        for x in range(min(cap, left), lo[i] - 1, -1):
            cur.append(x)
            rec(i + 1, left - x, x, cur)
            cur.pop()

    rec(0, size, cols, [])
    return out


@lru_cache(maxsize=None)
def lr_product(mu: Partition, nu: Partition, k: int, m: int) -> dict[Partition, int]:
    """sigma_mu * sigma_nu in H*(Gr(k, k+m)), truncated to the k x m box."""
    out = {}
    for lam in _partitions_in_box(sum(mu) + sum(nu), k, m, _strip(mu)):
        c = lr_coefficient(_strip(mu), _strip(nu), lam)
        if c:
            out[lam] = c
    return out


# ----------------------------------------------------------------------------
# shifted Littlewood-Richardson (Stembridge)

# marked letter k' is 2k-1, unmarked k is 2k


def _lattice_ok(word: Sequence[int], top: int) -> bool:
    n = len(word)
    for i in range(2, top + 1):
        # first pass right to left over unmarked letters
        mi = mj = 0
        for j in range(n):
            if mi == mj:
                x = word[n - j - 1]
                if x in (2 * i, 2 * i - 1):
                    return False
            x = word[n - j - 1]
            if x == 2 * i:
                mi += 1
            elif x == 2 * i - 2:
                mj += 1
        # second pass left to right over marked letters
        for j in range(n):
            if mi == mj:
                x = word[j]
                if x in (2 * i - 2, 2 * i - 1):
                    return False
            x = word[j]
            if x == 2 * i - 1:
                mi += 1
            elif x == 2 * i - 3:
                mj += 1
    return True


def _leftmost_unmarked(word: Sequence[int], top: int) -> bool:
    seen = set()
    for x in word:
        k = (x + 1) // 2
        if k not in seen:
            seen.add(k)
            if x % 2:
                return False
    return True


@lru_cache(maxsize=None)
def shifted_lr_coefficient(mu: Partition, nu: Partition, lam: Partition) -> int:
    """f^lam_{mu nu} with P_mu P_nu = sum f^lam_{mu nu} P_lam (Stembridge's rule)."""
    mu, nu, lam = _strip(mu), _strip(nu), _strip(lam)
    if sum(lam) != sum(mu) + sum(nu) or len(mu) > len(lam):
        return 0
    mu_p = mu + (0,) * (len(lam) - len(mu))
    if any(m > l for m, l in zip(mu_p, lam)):
        return 0
    if not nu:
        return 1
    # shifted row i occupies columns i .. i + lam_i - 1
    cells = [(i, j) for i in range(len(lam)) for j in range(i + mu_p[i], i + lam[i])]
    top = len(nu)
    fill: dict[tuple[int, int], int] = {}
    counts = [0] * (top + 1)

    def rec(c: int) -> int:
        if c == len(cells):
            word = [fill[(i, j)] for i in range(len(lam) - 1, -1, -1) for j in range(i, i + lam[i]) if (i, j) in fill]
            return int(_leftmost_unmarked(word, top) and _lattice_ok(word, top))
        i, j = cells[c]
        left = fill.get((i, j - 1))
        up = fill.get((i - 1, j))
        total = 0
        for x in range(1, 2 * top + 1):
            k = (x + 1) // 2
            if counts[k] >= nu[k - 1]:
                continue
            if left is not None and (x < left or (x == left and x % 2)):
                continue
            if up is not None and (x < up or (x == up and x % 2 == 0)):
                continue
            counts[k] += 1
            fill[(i, j)] = x
            total += rec(c + 1)
            del fill[(i, j)]
            counts[k] -= 1
        return total

    return rec(0)


def _strict_partitions(size: int, max_part: int, lo: Partition = ()) -> list[Partition]:
    out = []

    def rec(left: int, cap: int, cur: list[int]):
        if left == 0:
            p = tuple(cur)
            lp = lo + (0,) * max(0, len(p) - len(lo))
            if len(p) >= len(lo) and all(a >= b for a, b in zip(p + (0,) * len(lo), lp)):
                out.append(p)
            return
        for x in range(min(cap, left), 0, -1):
            cur.append(x)
            rec(left - x, x - 1, cur)
            cur.pop()

    rec(size, max_part, [])
    return out


@lru_cache(maxsize=None)
def p_product(mu: Partition, nu: Partition, max_part: int) -> dict[Partition, int]:
    """P_mu P_nu truncated to strict partitions with parts <= max_part."""
    out = {}
    for lam in _strict_partitions(sum(mu) + sum(nu), max_part, _strip(mu)):
        c = shifted_lr_coefficient(_strip(mu), _strip(nu), lam)
        if c:
            out[lam] = c
    return out


@lru_cache(maxsize=None)
def q_product(mu: Partition, nu: Partition, max_part: int) -> dict[Partition, int]:
    """Q_mu Q_nu = sum 2^(l(mu)+l(nu)-l(lam)) f^lam_{mu nu} Q_lam, truncated."""
    mu, nu = _strip(mu), _strip(nu)
    return {lam: c * 2 ** (len(mu) + len(nu) - len(lam)) for lam, c in p_product(mu, nu, max_part).items()}


# ----------------------------------------------------------------------------
# explicit P-polynomials, used only to validate the shifted rule


def p_polynomial(lam: Partition, nvars: int) -> dict[tuple[int, ...], int]:
    """P_lam(x_1..x_nvars) from marked shifted tableaux with unmarked diagonal."""
    lam = _strip(lam)
    cells = [(i, j) for i in range(len(lam)) for j in range(i, i + lam[i])]
    poly: dict[tuple[int, ...], int] = defaultdict(int)
    fill: dict[tuple[int, int], int] = {}

    def rec(c: int):
        if c == len(cells):
            e = [0] * nvars
            for x in fill.values():
                e[(x + 1) // 2 - 1] += 1
            poly[tuple(e)] += 1
            return
        i, j = cells[c]
        left = fill.get((i, j - 1))
        up = fill.get((i - 1, j))
        for x in range(1, 2 * nvars + 1):
            if i == j and x % 2:
                continue
            if left is not None and (x < left or (x == left and x % 2)):
                continue
            if up is not None and (x < up or (x == up and x % 2 == 0)):
                continue
            fill[(i, j)] = x
            rec(c + 1)
            del fill[(i, j)]

    rec(0)
    return {e: c for e, c in poly.items() if c}


def poly_mul(a: dict, b: dict) -> dict:
    out: dict = defaultdict(int)
    for ea, ca in a.items():
        for eb, cb in b.items():
            out[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    return {e: c for e, c in out.items() if c}


def expand_in_p_basis(poly: dict[tuple[int, ...], int], nvars: int) -> dict[Partition, int]:
    """Coefficients of a symmetric polynomial in the P basis, peeling leading terms."""
    rest = dict(poly)
    out = {}
    while rest:
        strict = [e for e in rest if all(a > b for a, b in zip(_strip(e), _strip(e)[1:])) and list(e) == sorted(e, reverse=True)]
        if not strict:
            raise ValueError("polynomial is not in the span of P-functions")
        lead = max(strict)
        c = rest[lead]
        lam = _strip(lead)
        out[lam] = c
        for e, v in p_polynomial(lam, nvars).items():
            nv = rest.get(e, 0) - c * v
            if nv:
                rest[e] = nv
            else:
                rest.pop(e, None)
    return out


# ----------------------------------------------------------------------------
# quadrics


def quadric_classes(m: int) -> list[tuple[int, str]]:
    """Schubert classes of Q^m as (codim, tag); tag 'a'/'b' marks the two middle classes."""
    if m < 3:
        raise UnsupportedSpace("quadrics of dimension < 3 are not simple")
    out = []
    for c in range(m + 1):
        if m % 2 == 0 and c == m // 2:
            out += [(c, "a"), (c, "b")]
        else:
            out.append((c, ""))
    return out


def quadric_ring(m: int) -> dict[tuple, dict]:
    """Full multiplication table of H*(Q^m) in the Schubert basis.

    With h the hyperplane class, sigma_c = h^c below the middle and
    h^c = 2 sigma_c above it; on Q^{2n} h^n splits as a + b, with
    h a = h b = sigma_{n+1}, and a.a = pt exactly when n is even.
    """
    n = m // 2
    even = m % 2 == 0
    classes = quadric_classes(m)

    def scale(c: int) -> int:
        return 1 if c <= n else 2

    def prod(x, y) -> dict:
        (a, ta), (b, tb) = x, y
        c = a + b
        if a == 0:
            return {y: 1}
        if b == 0:
            return {x: 1}
        if c > m:
            return {}
        if ta and tb:
            return {(m, ""): 1} if (ta == tb) == (n % 2 == 0) else {}
        if ta or tb:
            return {(c, ""): 1}
        if even and c == n:
            return {(n, "a"): 1, (n, "b"): 1}
        num, den = scale(c), scale(a) * scale(b)
        assert num % den == 0
        return {(c, ""): num // den}

    return {(x, y): prod(x, y) for x in classes for y in classes}


def _quadric_class_of(space: CominusculeSpace, pos: int) -> tuple[int, str]:
    from .space import format_position

    c = space.codim(pos)
    label = format_position(space, pos)
    if space.dim % 2 == 0 and c == space.dim // 2:
        return (c, "b" if label.endswith("bar") else "a")
    return (c, "")


# ----------------------------------------------------------------------------
# iterated products


def _iterate(vectors: list[dict], mul) -> dict:
    cur = vectors[0]
    for nxt in vectors[1:]:
        acc: dict = defaultdict(int)
        for a, ca in cur.items():
            for b, cb in nxt.items():
                for c, v in mul(a, b).items():
                    acc[c] += ca * cb * v
        cur = {k: v for k, v in acc.items() if v}
        if not cur:
            break
    return cur


def class_product(space: CominusculeSpace, positions: Sequence[int]) -> dict:
    """Schubert expansion of the product of the given classes."""
    kind = notation_kind(space)
    if not positions:
        return {"1": 1}
    if kind == "gr":
        k = space.node + 1
        m = space.rs.rank + 1 - k
        vecs = [{_strip(partition_of(space, p)): 1} for p in positions]
        return _iterate(vecs, lambda a, b: lr_product(a, b, k, m))
    if kind == "lg":
        n = space.rs.rank
        vecs = [{partition_of(space, p): 1} for p in positions]
        return _iterate(vecs, lambda a, b: q_product(a, b, n))
    if kind == "og":
        n = space.rs.rank - 1
        vecs = [{partition_of(space, p): 1} for p in positions]
        return _iterate(vecs, lambda a, b: p_product(a, b, n))
    if kind == "quadric":
        table = quadric_ring(space.dim)
        vecs = [{_quadric_class_of(space, p): 1} for p in positions]
        return _iterate(vecs, lambda a, b: table[(a, b)])
    raise UnsupportedSpace(f"no oracle for {space.name}")


def product_nonzero(space: Space, positions: Sequence) -> bool:
    if isinstance(space, ProductSpace):
        return all(product_nonzero(f, [p[i] for p in positions]) for i, f in enumerate(space.factors))
    return bool(class_product(space, list(positions)))


def has_oracle(space: Space) -> bool:
    if isinstance(space, ProductSpace):
        return all(has_oracle(f) for f in space.factors)
    return notation_kind(space) in ("gr", "lg", "og", "quadric")
