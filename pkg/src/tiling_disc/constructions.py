"""Extremal labeled graphs with zero-discrepancy perfect tilings, and random graphs.

Every construction is a balanced complete multipartite graph whose classes
occupy consecutive index ranges. The special class, when split, lists X
before Y. Labels are inherited from a pattern on the classes, so the
metadata can be rebuilt from vertex indices alone.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, ceil
from typing import Optional

from .errors import ParameterError, StructureError
from .graph import EdgeLabeling, Graph, Tiling, is_perfect_tiling, min_degree

FAMILIES = ("mod03", "mod1", "mod2", "matching")


@dataclass(frozen=True)
class ConstructionMeta:
    family: str
    r: int
    n: int
    parts: tuple[tuple[int, ...], ...]
    special_split: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    # label of each class pair (i, j), i < j, for pairs carrying a pattern label
    class_labels: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        seen = sorted(v for p in self.parts for v in p)
        if seen != list(range(self.n)):
            raise StructureError("parts do not partition the vertex set")
        if len({len(p) for p in self.parts}) != 1:
            raise StructureError("parts are not balanced")
        if self.special_split is not None:
            x, y = self.special_split
            if set(x) & set(y) or sorted(x + y) != sorted(self.parts[-1]):
                raise StructureError("X, Y must partition the last class")

    def class_of(self) -> list[int]:
        cls = [0] * self.n
        for j, p in enumerate(self.parts):
            for v in p:
                cls[v] = j
        return cls

    @property
    def sidecar(self) -> str:
        x, y = self.special_split or ((), ())
        sizes = ",".join(str(len(p)) for p in self.parts)
        return f"meta family={self.family} r={self.r} n={self.n} parts={sizes} X={len(x)} Y={len(y)}"


@dataclass(frozen=True)
class TypeCensus:
    t1: int
    t2: int
    t3: int


def _parts(n: int, k: int, split: Optional[int] = None):
    size = n // k
    parts = tuple(tuple(range(j * size, (j + 1) * size)) for j in range(k))
    if split is None:
        return parts, None
    last = parts[-1]
    return parts, (last[:split], last[split:])


def _blow_up(parts, class_labels, special_split=None):
    """Complete multipartite graph labeled by class pair; X/Y rows override."""
    g = Graph.complete_multipartite([len(p) for p in parts])
    cls = [0] * g.n
    for j, p in enumerate(parts):
        for v in p:
            cls[v] = j
    side = {}
    if special_split is not None:
        x, y = special_split
        side.update({v: 1 for v in x})
        side.update({v: -1 for v in y})

    def label(u, v):
        if u in side:
            return side[u]
        if v in side:
            return side[v]
        i, j = sorted((cls[u], cls[v]))
        return class_labels[i, j]

    return g, EdgeLabeling(g, label)


def _first_pairs_plus(k: int, n_plus: int) -> dict:
    pairs = list(combinations(range(k), 2))
    return {p: (1 if idx < n_plus else -1) for idx, p in enumerate(pairs)}


def extremal_mod03(r: int, n: int):
    """Blow-up of a half-positive K_{r+1}, for r = 0 or 3 (mod 4).

    The first C(r+1, 2)/2 class pairs in lexicographic order are labeled +1.
    """
    if r < 2 or comb(r + 1, 2) % 2:
        raise ParameterError(f"C({r + 1},2) must be even; need r = 0 or 3 (mod 4), got r={r}")
    if n < r * (r + 1) or n % (r * (r + 1)):
        raise ParameterError(f"n must be a positive multiple of r(r+1)={r * (r + 1)}, got {n}")
    labels = _first_pairs_plus(r + 1, comb(r + 1, 2) // 2)
    parts, _ = _parts(n, r + 1)
    g, f = _blow_up(parts, labels)
    return g, f, ConstructionMeta("mod03", r, n, parts, None, labels)


def _check_split_n(r: int, n: int):
    q = 2 * r * (r + 1)
    if n < q or n % q:
        raise ParameterError(f"n must be a positive multiple of 2r(r+1)={q}, got {n}")


def circulant_pattern(r: int, m: int) -> dict:
    """Labels on K_r with -1 exactly on pairs at circular distance <= m."""
    labels = {}
    for i, j in combinations(range(r), 2):
        d = min(j - i, r - (j - i))
        labels[i, j] = -1 if d <= m else 1
    return labels


def extremal_mod1(m: int, n: int):
    """r = 4m+1: K_r pattern whose -1 pairs form a 2m-regular circulant; |X| = |Y|."""
    if m < 1:
        raise ParameterError(f"m must be positive, got {m}")
    r = 4 * m + 1
    _check_split_n(r, n)
    labels = circulant_pattern(r, m)
    parts, split = _parts(n, r + 1, split=n // (2 * (r + 1)))
    g, f = _blow_up(parts, labels, split)
    return g, f, ConstructionMeta("mod1", r, n, parts, split, labels)


def extremal_mod2(m: int, n: int):
    """r = 4m+2: K_r pattern with one more +1 pair than -1 pair.

    |X| = (r-1)n / (2r(r+1)) and |Y| = n / (2r).
    """
    if m < 1:
        raise ParameterError(f"m must be positive, got {m}")
    r = 4 * m + 2
    _check_split_n(r, n)
    labels = _first_pairs_plus(r, (comb(r, 2) + 1) // 2)
    parts, split = _parts(n, r + 1, split=(r - 1) * n // (2 * r * (r + 1)))
    g, f = _blow_up(parts, labels, split)
    return g, f, ConstructionMeta("mod2", r, n, parts, split, labels)


def matching_extremal(n: int):
    """4-partite Turan graph with every edge at the last class labeled -1 (r = 2)."""
    if n < 4 or n % 4:
        raise ParameterError(f"n must be a positive multiple of 4, got {n}")
    labels = {p: 1 for p in combinations(range(3), 2)}
    parts = _parts(n, 4)[0]
    split = ((), parts[-1])
    g, f = _blow_up(parts, labels, split)
    return g, f, ConstructionMeta("matching", 2, n, parts, split, labels)


def build_family(family: str, *, r: Optional[int] = None, m: Optional[int] = None, n: int):
    """Dispatch by family name; mod1/mod2 accept either m or the matching r."""
    if family == "mod03":
        if r is None:
            raise ParameterError("mod03 needs r")
        return extremal_mod03(r, n)
    if family in ("mod1", "mod2"):
        offset = 1 if family == "mod1" else 2
        if m is None:
            if r is None or (r - offset) % 4 or r < 4 + offset:
                raise ParameterError(f"{family} needs m, or r = 4m+{offset} with m >= 1")
            m = (r - offset) // 4
        return (extremal_mod1 if family == "mod1" else extremal_mod2)(m, n)
    if family == "matching":
        return matching_extremal(n)
    raise ParameterError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def canonical_tiling(meta: ConstructionMeta, g: Graph, shuffle_seed: Optional[int] = None) -> Tiling:
    """A perfect tiling with a round-robin choice of the class each tile misses.

    Each of the r+1 classes is missed by exactly n/(r(r+1)) tiles. With a
    seed, the order of vertices inside every class is shuffled first.
    """
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    pools = []
    for p in meta.parts:
        vs = list(p)
        if rng is not None:
            rng.shuffle(vs)
        pools.append(vs)

    if meta.family == "matching":
        half = len(pools[0])
        tiles = [tuple(sorted((pools[0][i], pools[1][i]))) for i in range(half)]
        tiles += [tuple(sorted((pools[2][i], pools[3][i]))) for i in range(half)]
    else:
        r = meta.r
        k = len(meta.parts)
        if k != r + 1 or meta.n % (r * (r + 1)):
            raise StructureError("metadata is not an (r+1)-partite construction with r(r+1) | n")
        per_class = meta.n // (r * (r + 1))
        cursor = [0] * k
        tiles = []
        for miss in range(k):
            for _ in range(per_class):
                tile = []
                for j in range(k):
                    if j != miss:
                        tile.append(pools[j][cursor[j]])
                        cursor[j] += 1
                tiles.append(tuple(sorted(tile)))
    tiling = tuple(sorted(tiles))
    if not is_perfect_tiling(g, tiling, meta.r):
        raise RuntimeError("canonical tiling is not a perfect tiling; construction invariants broken")
    return tiling


def type_census(meta: ConstructionMeta, tiling: Tiling) -> TypeCensus:
    """Count tiles avoiding the special class (t1), meeting X (t2), meeting Y (t3)."""
    if meta.special_split is None:
        raise StructureError(f"family {meta.family} has no X/Y split")
    cls = meta.class_of()
    x = set(meta.special_split[0])
    last = len(meta.parts) - 1
    t1 = t2 = t3 = 0
    for tile in tiling:
        classes = [cls[v] for v in tile]
        if len(set(classes)) != len(classes):
            raise StructureError(f"tile {tile} has two vertices in one class")
        special = [v for v in tile if cls[v] == last]
        if not special:
            t1 += 1
        elif special[0] in x:
            t2 += 1
        else:
            t3 += 1
    return TypeCensus(t1, t2, t3)


def census_discrepancy(meta: ConstructionMeta, census: TypeCensus) -> Fraction:
    """Tiling discrepancy computed from the type counts alone.

    Type-1 tiles carry the whole pattern. After deleting their special vertex,
    the type-2/3 tiles form t2+t3 copies of K_{r-1} that each use any fixed
    class pair with frequency (r-2)/r; X and Y vertices add +-(r-1) each.
    For the matching family a type-1 tile is one +1 edge and a type-3 tile
    one -1 edge.
    """
    if meta.family == "matching":
        return Fraction(census.t1 - census.t3)
    r = meta.r
    pattern = sum(s for (i, j), s in meta.class_labels.items() if i < r and j < r)
    return (census.t1 * pattern
            + Fraction(r - 2, r) * (census.t2 + census.t3) * pattern
            + (r - 1) * (census.t2 - census.t3))


# Random graphs for property checks and threshold scans.

def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def random_labeling(g: Graph, rng: random.Random) -> EdgeLabeling:
    return EdgeLabeling(g, {e: rng.choice((1, -1)) for e in g.edges()})


def degree_target(n: int, fraction: float) -> int:
    """Smallest integer degree >= fraction*n, capped at n-1."""
    return min(n - 1, max(0, ceil(fraction * n - 1e-9)))


def random_min_degree_graph(n: int, min_deg: int, rng: random.Random,
                            host: Optional[Graph] = None, tries: int = 50) -> Graph:
    """Rejection-sample G(n, p) (or a random subgraph of ``host``) with delta >= min_deg.

    p starts at min_deg/(n-1) and rises linearly to 1 over ``tries``
    attempts, so the loop always terminates (at p = 1 the result is the
    host itself, or K_n).
    """
    if host is None:
        host = Graph.complete(n)
    if min_degree(host) < min_deg:
        raise ParameterError(f"host has minimum degree {min_degree(host)} < {min_deg}")
    base = min_deg / (n - 1) if n > 1 else 1.0
    edges = host.edges()
    for t in range(tries + 1):
        p = base + (1.0 - base) * t / tries
        g = Graph.from_edges(n, [e for e in edges if rng.random() < p])
        if min_degree(g) >= min_deg:
            return g
    return host


def thin_to_min_degree(g: Graph, min_deg: int, rng: random.Random) -> Graph:
    """Delete edges in random order while both endpoints keep degree >= min_deg."""
    edges = g.edges()
    rng.shuffle(edges)
    deg = [g.degree(v) for v in range(g.n)]
    keep = []
    for u, v in edges:
        if deg[u] > min_deg and deg[v] > min_deg:
            deg[u] -= 1
            deg[v] -= 1
        else:
            keep.append((u, v))
    return Graph.from_edges(g.n, keep)
