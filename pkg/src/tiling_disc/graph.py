"""Labeled graphs, clique enumeration, discrepancy and clique-kind classification.

Vertices are dense indices ``0..n-1``; adjacency is stored as one Python
int bitmask per vertex. Cliques are sorted tuples of vertex indices and a
tiling is a tuple of cliques ordered by their smallest vertex.
"""
from __future__ import annotations

import enum
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import LabelDomainError, StructureError

Clique = tuple[int, ...]
Tiling = tuple[Clique, ...]
Edge = tuple[int, int]


def iter_bits(mask: int):
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: Sequence[int]):
        if len(adj) != n:
            raise StructureError(f"expected {n} adjacency masks, got {len(adj)}")
        full = (1 << n) - 1
        for v, a in enumerate(adj):
            if a & ~full:
                raise StructureError(f"vertex {v} has a neighbor outside [0, {n})")
            if (a >> v) & 1:
                raise StructureError(f"self-loop at vertex {v}")
            for u in iter_bits(a):
                if not (adj[u] >> v) & 1:
                    raise StructureError(f"adjacency not symmetric at {v}-{u}")
        self.n = n
        self.adj = tuple(adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise StructureError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise StructureError(f"edge {u}-{v} outside [0, {n})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def complete_multipartite(cls, sizes: Sequence[int]) -> "Graph":
        """Complete multipartite graph; part ``j`` occupies a consecutive index range."""
        n = sum(sizes)
        full = (1 << n) - 1
        adj = []
        start = 0
        for size in sizes:
            part = ((1 << size) - 1) << start
            adj.extend([full & ~part] * size)
            start += size
        return cls(n, adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def edges(self) -> list[Edge]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        if len(set(vs)) != len(vs):
            return False
        m = mask_of(vs)
        return all((self.adj[v] | (1 << v)) & m == m for v in vs)

    def is_complete(self) -> bool:
        return self.m == comb(self.n, 2)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class EdgeLabeling:
    """A total map ``E(G) -> {-1, +1}``.

    ``labels`` may be a mapping keyed by edge or a callable ``(u, v) -> int``.
    """

    __slots__ = ("graph", "_labels", "_plus")

    def __init__(self, graph: Graph, labels):
        table = {}
        if callable(labels):
            for u, v in graph.edges():
                table[(u, v)] = labels(u, v)
        else:
            for (u, v), s in labels.items():
                e = _edge(u, v)
                if not graph.has_edge(*e):
                    raise LabelDomainError(f"label given for non-edge {e}")
                table[e] = s
            if len(table) != graph.m:
                missing = next(e for e in graph.edges() if e not in table)
                raise StructureError(f"labeling is not total: edge {missing} unlabeled")
        for e, s in table.items():
            if s not in (1, -1):
                raise StructureError(f"label of {e} is {s!r}, expected +1 or -1")
        self.graph = graph
        self._labels = table
        plus = [0] * graph.n
        for (u, v), s in table.items():
            if s == 1:
                plus[u] |= 1 << v
                plus[v] |= 1 << u
        self._plus = tuple(plus)

    @classmethod
    def constant(cls, graph: Graph, value: int) -> "EdgeLabeling":
        return cls(graph, lambda u, v: value)

    def __call__(self, u: int, v: int) -> int:
        try:
            return self._labels[_edge(u, v)]
        except KeyError:
            raise LabelDomainError(f"edge {_edge(u, v)} is not in the labeling's domain") from None

    def items(self):
        return sorted(self._labels.items())

    def plus_neighbors(self, v: int) -> int:
        """Bitmask of N^+(v)."""
        return self._plus[v]

    def minus_neighbors(self, v: int) -> int:
        """Bitmask of N^-(v)."""
        return self.graph.adj[v] & ~self._plus[v]

    def matrix(self) -> list[list[int]]:
        """Dense label table with 0 on non-edges."""
        n = self.graph.n
        mat = [[0] * n for _ in range(n)]
        for (u, v), s in self._labels.items():
            mat[u][v] = mat[v][u] = s
        return mat

    def relabel(self, perm: Sequence[int]) -> "EdgeLabeling":
        g = self.graph.relabel(perm)
        return EdgeLabeling(g, {(perm[u], perm[v]): s for (u, v), s in self._labels.items()})

    def __eq__(self, other):
        return isinstance(other, EdgeLabeling) and self.graph == other.graph and self._labels == other._labels

    def __hash__(self):
        return hash((self.graph, tuple(self.items())))

    def __repr__(self):
        pos = sum(1 for s in self._labels.values() if s == 1)
        return f"EdgeLabeling(n={self.graph.n}, plus={pos}, minus={len(self._labels) - pos})"


def min_degree(g: Graph) -> int:
    if g.n == 0:
        return 0
    return min(a.bit_count() for a in g.adj)


def cliques_of_size(g: Graph, r: int, containing: Optional[Iterable[int]] = None) -> list[Clique]:
    """All r-cliques of ``g`` that contain ``containing``, in lexicographic order.

    Returns an empty list when the required set is not itself a clique or is
    larger than ``r``.
    """
    base = sorted(set(containing or ()))
    if len(base) > r or not g.is_clique(base):
        return []
    cand = (1 << g.n) - 1
    for v in base:
        cand &= g.adj[v]
    out: list[Clique] = []
    adj = g.adj

    def extend(chosen: list[int], cand: int, need: int):
        if need == 0:
            out.append(tuple(sorted(base + chosen)))
            return
        for v in iter_bits(cand):
            if (cand >> v).bit_count() < need:
                return
            chosen.append(v)
            # only larger vertices stay candidates so each set is produced once
            extend(chosen, cand & adj[v] & ~((2 << v) - 1), need - 1)
            chosen.pop()

    extend([], cand, r - len(base))
    out.sort()
    return out


def discrepancy(f: EdgeLabeling, edges: Iterable[Edge]) -> int:
    """Sum of labels over an edge collection."""
    return sum(f(u, v) for u, v in edges)


def clique_edges(c: Sequence[int]) -> list[Edge]:
    return [_edge(u, v) for u, v in combinations(c, 2)]


def clique_discrepancy(f: EdgeLabeling, c: Sequence[int]) -> int:
    return sum(f(u, v) for u, v in combinations(c, 2))


def tiling_discrepancy(f: EdgeLabeling, tiling: Iterable[Sequence[int]]) -> int:
    return sum(clique_discrepancy(f, c) for c in tiling)


def is_perfect_tiling(g: Graph, tiling: Iterable[Sequence[int]], r: int) -> bool:
    seen = 0
    for c in tiling:
        if len(c) != r or not g.is_clique(c):
            return False
        m = mask_of(c)
        if seen & m:
            return False
        seen |= m
    return seen == (1 << g.n) - 1


class Kind(enum.Enum):
    ALL_PLUS = "AllPlus"
    ALL_MINUS = "AllMinus"
    PLUS_STAR = "PlusStar"
    MINUS_STAR = "MinusStar"
    OTHER = "Other"


class CliqueKind(NamedTuple):
    kind: Kind
    head: Optional[int] = None

    def __str__(self):
        return self.kind.value if self.head is None else f"{self.kind.value}({self.head})"


def classify_clique(f: EdgeLabeling, c: Sequence[int]) -> CliqueKind:
    """Classify a labeled clique as K+, K-, a (K,+)-star, a (K,-)-star or other.

    A (K,+)-star with head ``h`` has exactly the edges at ``h`` labeled +1.
    For cliques on at least 3 vertices the kinds are mutually exclusive.
    """
    if len(c) < 3:
        raise StructureError(f"clique kinds are ambiguous below 3 vertices (got {len(c)})")
    c = tuple(sorted(c))
    if not f.graph.is_clique(c):
        raise StructureError(f"{c} is not a clique of the host graph")
    m = mask_of(c)
    plus_deg = [(f.plus_neighbors(v) & m).bit_count() for v in c]
    k = len(c)
    if all(d == k - 1 for d in plus_deg):
        return CliqueKind(Kind.ALL_PLUS)
    if all(d == 0 for d in plus_deg):
        return CliqueKind(Kind.ALL_MINUS)
    for v, d in zip(c, plus_deg):
        others_plus = sum(plus_deg) - 2 * d
        if d == k - 1 and others_plus == 0:
            return CliqueKind(Kind.PLUS_STAR, v)
        if d == 0 and others_plus == (k - 1) * (k - 2):
            return CliqueKind(Kind.MINUS_STAR, v)
    return CliqueKind(Kind.OTHER)


def kind_discrepancy(kind: Kind, r: int) -> Optional[int]:
    """Discrepancy of an r-clique of the given kind (None for OTHER)."""
    e = comb(r, 2)
    return {
        Kind.ALL_PLUS: e,
        Kind.ALL_MINUS: -e,
        Kind.PLUS_STAR: 2 * (r - 1) - e,
        Kind.MINUS_STAR: e - 2 * (r - 1),
    }.get(kind)


def swap_identity_holds(f: EdgeLabeling) -> bool:
    """Check f(ab) + f(cd) == f(ac) + f(bd) for all distinct a, b, c, d.

    Over an unordered 4-set the three perfect pairings must carry equal sums.
    """
    g = f.graph
    if not g.is_complete():
        raise StructureError("swap identity is only defined on a complete host")
    if g.n < 4:
        raise StructureError("swap identity needs at least 4 vertices")
    lab = f.matrix()
    for a, b, c, d in combinations(range(g.n), 4):
        s = lab[a][b] + lab[c][d]
        if s != lab[a][c] + lab[b][d] or s != lab[a][d] + lab[b][c]:
            return False
    return True


# Batched checks over many labelings of K_k, one row per labeling with the
# C(k,2) labels in lexicographic edge order.

def all_labelings(k: int) -> np.ndarray:
    """Every labeling of K_k as a (2**C(k,2), C(k,2)) int8 array of +-1."""
    e = comb(k, 2)
    codes = np.arange(1 << e, dtype=np.int64)[:, None]
    bits = (codes >> np.arange(e, dtype=np.int64)) & 1
    return (2 * bits - 1).astype(np.int8)


def _pair_index(k: int) -> dict[Edge, int]:
    return {e: i for i, e in enumerate(combinations(range(k), 2))}


def batch_swap_identity(labels: np.ndarray, k: int) -> np.ndarray:
    idx = _pair_index(k)
    ok = np.ones(labels.shape[0], dtype=bool)
    lab = labels.astype(np.int16)
    for a, b, c, d in combinations(range(k), 4):
        s1 = lab[:, idx[a, b]] + lab[:, idx[c, d]]
        s2 = lab[:, idx[a, c]] + lab[:, idx[b, d]]
        s3 = lab[:, idx[a, d]] + lab[:, idx[b, c]]
        ok &= (s1 == s2) & (s1 == s3)
    return ok


def batch_four_type(labels: np.ndarray, k: int) -> np.ndarray:
    """True where the labeling is K+, K-, or a (K,+)/(K,-)-star."""
    pairs = list(combinations(range(k), 2))
    ok = np.all(labels == 1, axis=1) | np.all(labels == -1, axis=1)
    for h in range(k):
        star = np.array([1 if h in p else -1 for p in pairs], dtype=np.int8)
        ok |= np.all(labels == star, axis=1) | np.all(labels == -star, axis=1)
    return ok


def labeling_from_row(row: Sequence[int], k: int) -> EdgeLabeling:
    g = Graph.complete(k)
    return EdgeLabeling(g, {e: int(s) for e, s in zip(combinations(range(k), 2), row)})


# Text format:
#   g <n> <m> <r>
#   e <u> <v> <+1|-1>     (m lines, u < v)
# Lines starting with '#' are ignored.

def format_graph(g: Graph, f: EdgeLabeling, r: int) -> str:
    if f.graph != g:
        raise StructureError("labeling belongs to a different graph")
    lines = [f"g {g.n} {g.m} {r}"]
    lines.extend(f"e {u} {v} {'+1' if s == 1 else '-1'}" for (u, v), s in f.items())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> tuple[Graph, EdgeLabeling, int]:
    header = None
    edges: dict[Edge, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if header is None:
            if tok[0] != "g" or len(tok) != 4:
                raise StructureError(f"line {lineno}: expected 'g <n> <m> <r>'")
            header = tuple(int(t) for t in tok[1:])
            continue
        if tok[0] != "e" or len(tok) != 4 or tok[3] not in ("+1", "-1"):
            raise StructureError(f"line {lineno}: expected 'e <u> <v> <+1|-1>'")
        u, v = int(tok[1]), int(tok[2])
        if not 0 <= u < v < header[0]:
            raise StructureError(f"line {lineno}: need 0 <= u < v < n")
        if (u, v) in edges:
            raise StructureError(f"line {lineno}: duplicate edge {u}-{v}")
        edges[(u, v)] = int(tok[3])
    if header is None:
        raise StructureError("missing 'g' header line")
    n, m, r = header
    if len(edges) != m:
        raise StructureError(f"header declares {m} edges, found {len(edges)}")
    g = Graph.from_edges(n, edges)
    return g, EdgeLabeling(g, edges), r
