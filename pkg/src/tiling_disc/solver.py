"""Exact search over perfect K_r-tilings.

All searches branch on the lowest-index uncovered vertex and try the
r-cliques through it in lexicographic order, which fixes the enumeration
order. Exhaustive extremes memoize on the uncovered vertex set; the
branch-and-bound mode runs two pruned depth-first searches (maximize and
minimize) with the per-tile bound C(r, 2).
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable, Optional

from .errors import InfeasibleError, ParameterError
from .graph import Clique, EdgeLabeling, Graph, Tiling, iter_bits

THREADS_ENV = "TILING_DISC_THREADS"


@dataclass(frozen=True)
class DiscrepancyExtremes:
    min_disc: int
    max_disc: int
    witness_min: Tiling
    witness_max: Tiling
    tilings_seen: Optional[int] = None

    @property
    def max_abs(self) -> int:
        return max(abs(self.min_disc), abs(self.max_disc))

    @property
    def witness_max_abs(self) -> Tiling:
        return self.witness_max if abs(self.max_disc) >= abs(self.min_disc) else self.witness_min


def _check_divisible(g: Graph, r: int):
    if r < 1:
        raise ParameterError(f"clique size must be positive, got {r}")
    if g.n % r:
        raise ParameterError(f"r={r} does not divide n={g.n}")


def extensions(adj, v: int, free: int, r: int):
    """Yield (mask, clique) for r-cliques made of ``v`` and higher vertices of ``free``.

    Cliques come out in lexicographic order.
    """
    stack = [v]

    def rec(cand, need, m):
        if need == 0:
            yield m, tuple(stack)
            return
        for u in iter_bits(cand):
            if (cand >> u).bit_count() < need:
                return
            stack.append(u)
            yield from rec(cand & adj[u] & ~((2 << u) - 1), need - 1, m | (1 << u))
            stack.pop()

    yield from rec(adj[v] & free & ~((2 << v) - 1), r - 1, 1 << v)


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def enumerate_perfect_tilings(g: Graph, r: int, visitor: Optional[Callable[[Tiling], None]] = None) -> int:
    """Call ``visitor`` once per perfect tiling (in branching order) and return the count."""
    _check_divisible(g, r)
    adj = g.adj
    tiles: list[Clique] = []
    count = 0

    def rec(free: int):
        nonlocal count
        if not free:
            count += 1
            if visitor is not None:
                visitor(tuple(tiles))
            return
        v = _lowest(free)
        for m, c in extensions(adj, v, free, r):
            tiles.append(c)
            rec(free & ~m)
            tiles.pop()

    rec((1 << g.n) - 1)
    return count


class _Labels:
    """Cached clique discrepancies keyed by vertex mask."""

    def __init__(self, f: EdgeLabeling):
        self.mat = f.matrix()
        self.cache: dict[int, int] = {}

    def __call__(self, m: int, c: Clique) -> int:
        d = self.cache.get(m)
        if d is None:
            mat = self.mat
            d = sum(mat[a][b] for a, b in combinations(c, 2))
            self.cache[m] = d
        return d


def _exhaustive(adj, disc: _Labels, r: int, free: int):
    """Memoized (count, min, max, argmin-clique, argmax-clique) over tilings of ``free``."""
    memo: dict[int, tuple] = {0: (1, 0, 0, None, None)}

    def solve(free: int):
        hit = memo.get(free)
        if hit is not None:
            return hit
        v = _lowest(free)
        count = 0
        lo = hi = None
        arg_lo = arg_hi = None
        for m, c in extensions(adj, v, free, r):
            sub = solve(free & ~m)
            if not sub[0]:
                continue
            d = disc(m, c)
            count += sub[0]
            if lo is None or d + sub[1] < lo:
                lo, arg_lo = d + sub[1], (m, c)
            if hi is None or d + sub[2] > hi:
                hi, arg_hi = d + sub[2], (m, c)
        res = (count, lo, hi, arg_lo, arg_hi)
        memo[free] = res
        return res

    res = solve(free)

    def walk(free: int, slot: int) -> list[Clique]:
        out = []
        while free:
            m, c = memo[free][slot]
            out.append(c)
            free &= ~m
        return out

    if not res[0]:
        return 0, None, None, None, None
    return res[0], res[1], res[2], walk(free, 3), walk(free, 4)


def _bnb(adj, disc: _Labels, r: int, free: int, sign: int):
    """Best ``sign * discrepancy`` over tilings of ``free``; first optimum in search order."""
    per_tile = comb(r, 2)
    best = None
    best_tiles: Optional[list[Clique]] = None
    tiles: list[Clique] = []

    def rec(free: int, cur: int):
        nonlocal best, best_tiles
        if not free:
            if best is None or cur > best:
                best, best_tiles = cur, list(tiles)
            return
        if best is not None and cur + free.bit_count() // r * per_tile <= best:
            return
        v = _lowest(free)
        options = [(sign * disc(m, c), m, c) for m, c in extensions(adj, v, free, r)]
        options.sort(key=lambda t: -t[0])
        for d, m, c in options:
            tiles.append(c)
            rec(free & ~m, cur + d)
            tiles.pop()

    rec(free, 0)
    if best is None:
        return None, None
    return sign * best, best_tiles


def _branch_job(args):
    """Solve the subproblem below one top-level clique (picklable worker entry)."""
    n, adj, mat, r, mode, m, c = args
    disc = _Labels.__new__(_Labels)
    disc.mat, disc.cache = mat, {}
    d0 = disc(m, c)
    free = ((1 << n) - 1) & ~m
    if mode == "exhaustive":
        cnt, lo, hi, wlo, whi = _exhaustive(adj, disc, r, free)
        if not cnt:
            return 0, None, None, None, None
        return cnt, d0 + lo, d0 + hi, [c] + wlo, [c] + whi
    hi, whi = _bnb(adj, disc, r, free, +1)
    if hi is None:
        return 0, None, None, None, None
    lo, wlo = _bnb(adj, disc, r, free, -1)
    return None, d0 + lo, d0 + hi, [c] + wlo, [c] + whi


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def discrepancy_extremes(g: Graph, f: EdgeLabeling, r: int, mode: str = "exhaustive",
                         workers: Optional[int] = None) -> DiscrepancyExtremes:
    """Exact minimum and maximum discrepancy over all perfect r-tilings.

    ``mode`` is ``"exhaustive"`` (memoized, also counts tilings) or ``"bnb"``.
    With ``workers > 1`` the top-level branches are solved in separate
    processes and reduced in branch order, so the result (witnesses
    included) does not depend on the worker count.
    """
    if mode not in ("exhaustive", "bnb"):
        raise ParameterError(f"unknown mode {mode!r}")
    _check_divisible(g, r)
    if f.graph != g:
        raise ParameterError("labeling belongs to a different graph")
    workers = default_workers() if workers is None else workers
    full = (1 << g.n) - 1
    disc = _Labels(f)

    if g.n == 0:
        return DiscrepancyExtremes(0, 0, (), (), 1 if mode == "exhaustive" else None)

    if workers <= 1:
        if mode == "exhaustive":
            cnt, lo, hi, wlo, whi = _exhaustive(g.adj, disc, r, full)
            if not cnt:
                raise InfeasibleError("graph has no perfect tiling")
            return DiscrepancyExtremes(lo, hi, tuple(wlo), tuple(whi), cnt)
        hi, whi = _bnb(g.adj, disc, r, full, +1)
        if hi is None:
            raise InfeasibleError("graph has no perfect tiling")
        lo, wlo = _bnb(g.adj, disc, r, full, -1)
        return DiscrepancyExtremes(lo, hi, tuple(wlo), tuple(whi), None)

    # bnb explores children by decreasing oriented discrepancy; branches must
    # be reduced in that same order to reproduce the serial witnesses.
    top = list(extensions(g.adj, 0, full, r))
    jobs = [(g.n, g.adj, disc.mat, r, mode, m, c) for m, c in top]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_branch_job, jobs))
    return _reduce(results, top, disc, mode)


def _reduce(results, top, disc, mode) -> DiscrepancyExtremes:
    count = 0
    lo = hi = None
    wlo = whi = None
    if mode == "exhaustive":
        order_lo = order_hi = range(len(top))
    else:
        ds = [disc(m, c) for m, c in top]
        order_hi = sorted(range(len(top)), key=lambda i: -ds[i])
        order_lo = sorted(range(len(top)), key=lambda i: ds[i])
    for cnt, *_ in results:
        count += cnt or 0
    for i in order_hi:
        h, wh = results[i][2], results[i][4]
        if h is not None and (hi is None or h > hi):
            hi, whi = h, wh
    for i in order_lo:
        l, wl = results[i][1], results[i][3]
        if l is not None and (lo is None or l < lo):
            lo, wlo = l, wl
    if hi is None:
        raise InfeasibleError("graph has no perfect tiling")
    return DiscrepancyExtremes(lo, hi, tuple(wlo), tuple(whi), count if mode == "exhaustive" else None)


def exists_perfect_tiling(g: Graph, r: int) -> bool:
    if r < 1 or g.n % r:
        return False
    if g.n == 0:
        return True
    if any(a.bit_count() < r - 1 for a in g.adj):
        return False
    adj = g.adj
    dead: set[int] = set()

    def rec(free: int) -> bool:
        if not free:
            return True
        if free in dead:
            return False
        v = _lowest(free)
        for m, _ in extensions(adj, v, free, r):
            if rec(free & ~m):
                return True
        dead.add(free)
        return False

    return rec((1 << g.n) - 1)


def sample_tiling(g: Graph, r: int, seed: int, budget: Optional[int] = None) -> Optional[Tiling]:
    """Randomized greedy perfect tiling with restarts; None when the budget runs out.

    Each tile is grown from the lowest uncovered vertex by repeatedly adding
    a uniformly random common neighbor among the uncovered vertices. A dead
    end restarts the whole attempt. The default budget is 10*n attempts.
    """
    _check_divisible(g, r)
    budget = 10 * g.n if budget is None else budget
    rng = random.Random(seed)
    adj = g.adj
    full = (1 << g.n) - 1
    for _ in range(budget):
        free = full
        tiles = []
        while free:
            v = _lowest(free)
            free &= ~(1 << v)
            members = [v]
            cand = adj[v] & free
            while len(members) < r and cand:
                bits = list(iter_bits(cand))
                u = bits[rng.randrange(len(bits))]
                members.append(u)
                cand &= adj[u]
            if len(members) < r:
                break
            for u in members:
                free &= ~(1 << u)
            tiles.append(tuple(sorted(members)))
        else:
            return tuple(sorted(tiles))
    return None


def count_extensions(adj, v: int, free: int, r: int, cap: int) -> int:
    """Number of r-cliques through ``v`` in ``free | {v}``, counting stops at ``cap``."""
    total = 0
    for _ in extensions(adj, v, free, r):
        total += 1
        if total >= cap:
            break
    return total


def estimate_tiling_count(g: Graph, r: int, probes: int = 32, seed: int = 0, cap: int = 10**7) -> float:
    """Knuth's random-path estimate of the number of perfect tilings, clipped at ``cap``.

    Each probe walks one random root-to-leaf path and multiplies the
    branching factors; dead ends contribute 0.
    """
    _check_divisible(g, r)
    rng = random.Random(seed)
    adj = g.adj
    full = (1 << g.n) - 1
    total = 0.0
    for _ in range(probes):
        free, weight = full, 1.0
        while free:
            v = _lowest(free)
            k = count_extensions(adj, v, free, r, cap=int(cap // weight) + 1)
            if k == 0:
                weight = 0.0
                break
            weight *= k
            if weight > cap:
                return float(cap + 1)
            pick = rng.randrange(k)
            for idx, (m, _) in enumerate(extensions(adj, v, free, r)):
                if idx == pick:
                    free &= ~m
                    break
        total += weight
    return min(total / probes, float(cap + 1))
