"""K_r-templates and the two-clique gadgets whose templates differ in discrepancy.

A template is a multiset of r-cliques of a host F covering every vertex the
same number of times. Each gadget is two disjoint (r+1)-cliques, the first
on vertices 0..r (vertex 0 is the attaching vertex, and the head when the
clique is a star) and the second on r+1..2r+1 (vertex r+1 is the head when
it is a star), plus cross edges from vertex 0 only. Differences are always
reported as disc(K2) - disc(K1).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Optional, Sequence

from .errors import ParameterError, StructureError, TemplateArithmeticError
from .graph import Clique, EdgeLabeling, Graph, classify_clique, clique_discrepancy, kind_discrepancy

SCENARIOS = ("ObsB", "ObsC_AvoidHead", "ObsC_WithHead", "Case1", "Case2a", "Case2b")


@dataclass(frozen=True)
class KrTemplate:
    host: EdgeLabeling
    r: int
    members: tuple[tuple[Clique, int], ...]  # (canonical clique, multiplicity), sorted

    @classmethod
    def from_cliques(cls, host: EdgeLabeling, r: int, cliques: Iterable[Sequence[int]]) -> "KrTemplate":
        counts = Counter(tuple(sorted(c)) for c in cliques)
        return cls(host, r, tuple(sorted(counts.items())))

    @classmethod
    def from_counts(cls, host: EdgeLabeling, r: int, counts: dict) -> "KrTemplate":
        merged = Counter()
        for c, k in counts.items():
            if k:
                merged[tuple(sorted(c))] += k
        return cls(host, r, tuple(sorted(merged.items())))

    @property
    def s(self) -> int:
        return sum(k for _, k in self.members)

    def multiplicity(self, c: Sequence[int]) -> int:
        return dict(self.members).get(tuple(sorted(c)), 0)


@dataclass(frozen=True)
class CoverageReport:
    valid: bool
    s: int
    s_prime: Optional[int]
    coverage: tuple[int, ...]
    bad_vertex: Optional[int] = None


def validate_template(t: KrTemplate) -> CoverageReport:
    """Check every member is an r-clique of F and every vertex has equal coverage."""
    g = t.host.graph
    cover = [0] * g.n
    for c, k in t.members:
        if len(c) != t.r or not g.is_clique(c):
            raise StructureError(f"template member {c} is not an {t.r}-clique of the host")
        for v in c:
            cover[v] += k
    s = t.s
    target = cover[0] if cover else 0
    bad = next((v for v, x in enumerate(cover) if x != target), None)
    if bad is not None:
        return CoverageReport(False, s, None, tuple(cover), bad)
    if s * t.r != target * g.n:
        raise TemplateArithmeticError(f"s*r={s * t.r} but s'*|F|={target * g.n}")
    return CoverageReport(True, s, target, tuple(cover))


def _require_valid(t: KrTemplate) -> CoverageReport:
    rep = validate_template(t)
    if not rep.valid:
        raise StructureError(f"vertex {rep.bad_vertex} has coverage {rep.coverage[rep.bad_vertex]}, "
                             f"expected {rep.coverage[0]}")
    return rep


def template_discrepancy(t: KrTemplate) -> int:
    """Multiplicity-weighted sum of member discrepancies."""
    _require_valid(t)
    return sum(k * clique_discrepancy(t.host, c) for c, k in t.members)


def template_discrepancy_by_edges(t: KrTemplate) -> int:
    """Same quantity summed edge by edge: f(e) times the number of members containing e."""
    _require_valid(t)
    mult = Counter()
    for c, k in t.members:
        for e in combinations(c, 2):
            mult[e] += k
    return sum(t.host(*e) * k for e, k in mult.items())


def template_discrepancy_by_kind(t: KrTemplate) -> int:
    """Same quantity from a census of clique kinds; unclassified members are summed directly."""
    _require_valid(t)
    total = 0
    for c, k in t.members:
        d = kind_discrepancy(classify_clique(t.host, c).kind, t.r) if t.r >= 3 else None
        total += k * (clique_discrepancy(t.host, c) if d is None else d)
    return total


# Hamilton-window templates

def hamilton_window_template(f: EdgeLabeling, cycle: Sequence[int], r: int) -> KrTemplate:
    """The k windows of r consecutive vertices around ``cycle``."""
    k = f.graph.n
    if sorted(cycle) != list(range(k)):
        raise ParameterError("cycle must list every vertex exactly once")
    if not 1 <= r < k:
        raise ParameterError(f"need 1 <= r < k, got r={r}, k={k}")
    windows = [[cycle[(j + i) % k] for i in range(r)] for j in range(k)]
    return KrTemplate.from_cliques(f, r, windows)


def cycle_orders(k: int):
    """Hamilton cycles of K_k up to rotation and reflection: (k-1)!/2 of them."""
    for rest in permutations(range(1, k)):
        if rest[0] < rest[-1]:
            yield (0,) + rest


def adjacent_swap(cycle: Sequence[int], j: int) -> tuple[int, ...]:
    """Swap the entries at cyclic positions j and j+1."""
    c = list(cycle)
    k = len(c)
    c[j % k], c[(j + 1) % k] = c[(j + 1) % k], c[j % k]
    return tuple(c)


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Representative of a cycle under rotation and reflection, as listed by ``cycle_orders``."""
    k = len(cycle)
    j = list(cycle).index(0)
    c = tuple(cycle[(j + i) % k] for i in range(k))
    if k > 2 and c[1] > c[-1]:
        c = (0,) + tuple(reversed(c[1:]))
    return c


def window_discrepancies(f: EdgeLabeling, r: int) -> dict[tuple[int, ...], int]:
    return {c: template_discrepancy(hamilton_window_template(f, c, r)) for c in cycle_orders(f.graph.n)}


def find_discrepant_swap(f: EdgeLabeling, r: int):
    """A pair of cycles one adjacent transposition apart whose window templates differ, or None."""
    k = f.graph.n
    disc = window_discrepancies(f, r)
    for c, d in disc.items():
        for j in range(k):
            c2 = adjacent_swap(c, j)
            if disc[canonical_cycle(c2)] != d:
                return c, c2
    return None


# Gadgets

@dataclass(frozen=True)
class GadgetSpec:
    """One template scenario.

    ``i`` counts +1 cross edges among the r-1 edges used by the K2 recipe
    (ObsB, ObsC_*) or -1 cross edges (Case1). Case2a/Case2b have r = 3 and
    fully determined cross labels, so ``i`` is None.
    """
    r: int
    scenario: str
    i: Optional[int] = None
    attach: Optional[int] = None

    def __post_init__(self):
        r, sc = self.r, self.scenario
        if sc not in SCENARIOS:
            raise ParameterError(f"unknown scenario {sc!r}")
        if sc in ("Case2a", "Case2b"):
            want = 4
            if r != 3:
                raise ParameterError(f"{sc} requires r = 3")
            if self.i is not None:
                raise ParameterError(f"{sc} has no free sign count")
        else:
            if sc == "Case1":
                if r < 4:
                    raise ParameterError("Case1 requires r >= 4")
                want = r - 1
            else:
                if r < 3:
                    raise ParameterError(f"{sc} requires r >= 3")
                want = r - 1 if r % 2 == 0 else r
            if self.i is None or not 0 <= self.i <= r - 1:
                raise ParameterError(f"{sc} needs 0 <= i <= {r - 1}, got {self.i}")
        if self.attach is None:
            object.__setattr__(self, "attach", want)
        elif self.attach != want:
            raise ParameterError(f"{sc} with r={r} attaches exactly {want} cross edges, got {self.attach}")

    @property
    def fallback(self) -> bool:
        """r=3 with-head case where all cross edges are +1; K2 uses the avoid-head recipe."""
        return self.scenario == "ObsC_WithHead" and self.r == 3 and self.i == 2


def _first_clique(r):
    return list(range(r + 1))


def _second_clique(r):
    return list(range(r + 1, 2 * r + 2))


def _star(vertices, head, sign):
    """Labels of a star-type clique: edges at ``head`` get ``sign``, the rest ``-sign``."""
    return {(u, v): (sign if head in (u, v) else -sign) for u, v in combinations(vertices, 2)}


def _uniform(vertices, sign):
    return {e: sign for e in combinations(vertices, 2)}


def _cross_layout(spec: GadgetSpec):
    """(cross labels, vertices used by the K2 recipe) for the scenario."""
    r = spec.r
    head = r + 1
    second = _second_clique(r)
    non_head = second[1:]
    sc = spec.scenario
    if sc in ("Case2a", "Case2b"):
        s = -1 if sc == "Case2a" else 1
        return {v: (s if v == head else -s) for v in second}, non_head
    if sc == "Case1":
        targets = non_head[:r - 1]
        return {v: (-1 if idx < spec.i else 1) for idx, v in enumerate(targets)}, targets
    eligible = non_head if sc == "ObsC_AvoidHead" else second
    targets = eligible[:spec.attach]
    used = targets[:r - 1]
    labels = {v: (1 if idx < spec.i else -1) for idx, v in enumerate(used)}
    for v in targets[r - 1:]:
        labels[v] = 1
    if spec.fallback:
        used = [v for v in targets if v != head and labels[v] == 1][:r - 1]
    return labels, used


def build_gadget(spec: GadgetSpec) -> tuple[Graph, EdgeLabeling]:
    r = spec.r
    first, second = _first_clique(r), _second_clique(r)
    labels = {}
    if spec.scenario in ("ObsB", "ObsC_AvoidHead", "ObsC_WithHead"):
        labels.update(_uniform(first, 1))
    else:
        labels.update(_star(first, 0, 1))
    if spec.scenario == "ObsB":
        labels.update(_uniform(second, -1))
    elif spec.scenario in ("ObsC_AvoidHead", "ObsC_WithHead", "Case2b"):
        labels.update(_star(second, r + 1, 1))
    else:
        labels.update(_star(second, r + 1, -1))
    cross, _ = _cross_layout(spec)
    labels.update({(0, v): s for v, s in cross.items()})
    g = Graph.from_edges(2 * r + 2, labels)
    return g, EdgeLabeling(g, labels)


def _subcliques(vertices, r):
    return [tuple(c) for c in combinations(vertices, r)]


def build_K1_K2(spec: GadgetSpec) -> tuple[KrTemplate, KrTemplate]:
    """K1 = r copies of every r-subclique of both cliques; K2 = the scenario's recipe."""
    g, f = build_gadget(spec)
    r = spec.r
    first, second = _first_clique(r), _second_clique(r)
    k1 = {c: r for c in _subcliques(first, r) + _subcliques(second, r)}

    k2 = Counter()
    rest = tuple(first[1:])
    k2[rest] += 2 * r - 1
    for c in _subcliques(first, r):
        if 0 in c:
            k2[c] += r - 1
    _, used = _cross_layout(spec)
    if spec.scenario in ("Case2a", "Case2b"):
        head = r + 1
        for pair in combinations(used, 2):
            k2[(0,) + pair] += 1
        for c in _subcliques(second, r):
            k2[c] += 3 if head in c else 1
    else:
        x, y = (v for v in second if v not in used)
        k2[(0,) + tuple(used)] += r
        for c in _subcliques(second, r):
            if x in c and y in c:
                k2[c] += r + 1
            else:
                k2[c] += 1
    t1 = KrTemplate.from_counts(f, r, k1)
    t2 = KrTemplate.from_counts(f, r, dict(k2))
    for t in (t1, t2):
        rep = validate_template(t)
        if not rep.valid or rep.s != 2 * r * (r + 1) or rep.s_prime != r * r:
            raise RuntimeError(f"{spec}: recipe produced an invalid template {rep}")
    return t1, t2


def expected_difference(spec: GadgetSpec) -> Optional[int]:
    """Closed-form disc(K2) - disc(K1); None where no formula is available."""
    r, i = spec.r, spec.i
    sc = spec.scenario
    if sc == "ObsB":
        return 2 * i * r - r * (r - 1)
    if sc == "ObsC_WithHead":
        return None if spec.fallback else 2 * r * i - r * r - r
    if sc == "Case1":
        return -r * (r - 1) - 2 * r * i
    if sc == "Case2a":
        return -6
    if sc == "Case2b":
        return -12
    return None


def asserts_nonzero(spec: GadgetSpec) -> bool:
    """Whether the two templates are claimed to differ for this spec.

    The avoid-head and ObsB choices exclude i = (r-1)/2 and the with-head
    choice excludes i = (r+1)/2; the r = 3 all-positive case is rescued by
    the avoid-head recipe.
    """
    r, i = spec.r, spec.i
    if spec.scenario in ("ObsB", "ObsC_AvoidHead"):
        return 2 * i != r - 1
    if spec.scenario == "ObsC_WithHead":
        return spec.fallback or 2 * i != r + 1
    return True


def admissible_specs(scenario: str, r: int) -> list[GadgetSpec]:
    if scenario in ("Case2a", "Case2b"):
        return [GadgetSpec(3, scenario)] if r == 3 else []
    if scenario == "Case1" and r < 4:
        return []
    return [GadgetSpec(r, scenario, i) for i in range(r)]


@dataclass(frozen=True)
class GadgetRow:
    scenario: str
    r: int
    i: Optional[int]
    s: int
    s_prime: int
    disc_K1: int
    disc_K2: int
    diff: int
    expected: Optional[int]
    nonzero_claimed: bool

    @property
    def match(self) -> bool:
        if self.expected is not None and self.diff != self.expected:
            return False
        return (self.diff != 0) == self.nonzero_claimed

    def as_csv(self) -> str:
        na = lambda x: "NA" if x is None else str(x)
        return ",".join([self.scenario, str(self.r), na(self.i), str(self.s), str(self.s_prime),
                         str(self.disc_K1), str(self.disc_K2), str(self.diff), na(self.expected),
                         "true" if self.match else "false"])


CSV_HEADER = "scenario,r,i,s,s_prime,disc_K1,disc_K2,diff,expected,match"


def evaluate_gadget(spec: GadgetSpec) -> GadgetRow:
    t1, t2 = build_K1_K2(spec)
    rep = validate_template(t2)
    d1, d2 = template_discrepancy(t1), template_discrepancy(t2)
    return GadgetRow(spec.scenario, spec.r, spec.i, rep.s, rep.s_prime, d1, d2, d2 - d1,
                     expected_difference(spec), asserts_nonzero(spec))


def sweep(r_min: int = 3, r_max: int = 8, scenarios: Sequence[str] = SCENARIOS) -> list[GadgetRow]:
    rows = []
    for sc in scenarios:
        if sc not in SCENARIOS:
            raise ParameterError(f"unknown scenario {sc!r}")
        for r in range(r_min, r_max + 1):
            rows.extend(evaluate_gadget(spec) for spec in admissible_specs(sc, r))
    return rows
