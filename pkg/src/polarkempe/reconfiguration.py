"""Kempe reconfiguration graphs on colourings up to colour permutation."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .colouring import Colouring, canonical_word, distinct_colourings, normalize_poles
from .errors import BudgetExceeded, DomainError, InvariantViolation, NotEquivalent
from .invariants import (
    band_ordered_components,
    bicoloured_edge_count,
    class_size_formula,
    first_edge,
    invariant_vector,
    is_q_ke_shaped,
    kempe_distance_bound,
    realized_b_values,
)
from .kempe import _component_indices, kempe_moves
from .polar_graph import EdgeClass, PolarTriangulation

DEFAULT_BUDGET = 5_000_000


@dataclass
class ReconfigurationGraph:
    """Nodes are canonical colourings; edges are single proper Kempe changes.

    ``move_log`` maps an edge ``(i, j)`` with ``i < j`` to the first witness
    found: the colour pair and the vertex ids of the swapped chain, taken on
    the canonical representative of node ``i``.
    """

    host: PolarTriangulation
    nodes: tuple[Colouring, ...]
    adjacency: tuple[tuple[int, ...], ...]
    move_log: dict[tuple[int, int], tuple[tuple[int, int], tuple[str, ...]]] | None = field(
        default=None, repr=False
    )

    def __post_init__(self):
        self.index = {A.colours: k for k, A in enumerate(self.nodes)}

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, nbrs in enumerate(self.adjacency) for j in nbrs if i < j]

    def node_of(self, A: Colouring) -> int:
        if A.host != self.host:
            raise DomainError("colouring lives on a different graph")
        return self.index[canonical_word(A.colours)]

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by least node."""
        seen = [False] * len(self.nodes)
        comps = []
        for s in range(len(self.nodes)):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adjacency[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def bfs(self, source: int) -> list[int]:
        """Distances from ``source``; -1 marks unreachable nodes."""
        dist = [-1] * len(self.nodes)
        dist[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def d_value(self, node: int) -> int | None:
        if self.host.truncated:
            return None
        return invariant_vector(self.nodes[node]).d

    def to_json(self) -> dict:
        comps = self.components()
        return {
            "n": self.host.n,
            "truncated": self.host.truncated,
            "vertices": list(self.host.vertices),
            "nodes": [A.word for A in self.nodes],
            "edges": [list(e) for e in self.edges],
            "components": [
                {"nodes": comp, "d": self.d_value(comp[0])} for comp in comps
            ],
        }

    def to_dot(self) -> str:
        lines = [f"graph reconfig_{self.host.name.replace('-', '_')} {{"]
        for k, A in enumerate(self.nodes):
            lines.append(f'  {k} [label="{A.word}"];')
        for i, j in self.edges:
            lines.append(f"  {i} -- {j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_reconfiguration_graph(
    G: PolarTriangulation, budget_nodes: int = DEFAULT_BUDGET, record_moves: bool = False
) -> ReconfigurationGraph:
    nodes = distinct_colourings(G)
    if len(nodes) > budget_nodes:
        raise BudgetExceeded(len(nodes), budget_nodes)
    index = {A.colours: k for k, A in enumerate(nodes)}
    adjacency: list[set[int]] = [set() for _ in nodes]
    log: dict | None = {} if record_moves else None
    for k, A in enumerate(nodes):
        for pair, members, B in kempe_moves(A, proper_only=True):
            m = index[canonical_word(B.colours)]
            if m == k:
                continue
            adjacency[k].add(m)
            adjacency[m].add(k)
            if log is not None:
                key = (min(k, m), max(k, m))
                if key not in log:
                    log[key] = (pair, tuple(G.vertices[x] for x in members))
    return ReconfigurationGraph(G, nodes, tuple(tuple(sorted(s)) for s in adjacency), log)


@dataclass(frozen=True)
class KempeClassPartition:
    classes: tuple[tuple[int, ...], ...]
    d_values: tuple[int, ...]
    star_count: int

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


def kempe_classes(G: PolarTriangulation, budget_nodes: int = DEFAULT_BUDGET,
                  graph: ReconfigurationGraph | None = None) -> KempeClassPartition:
    """Partition the colourings of a full G_n into Kempe classes.

    Raises :class:`InvariantViolation` if the partition does not match the
    invariant description: non-constant colourings are equivalent exactly
    when their d-values agree, and d = 1 colourings are isolated.
    """
    if G.truncated:
        raise DomainError("Kempe classes are characterised on the full graph only")
    R = graph if graph is not None else build_reconfiguration_graph(G, budget_nodes)
    comps = R.components()
    d_of = [invariant_vector(A).d for A in R.nodes]
    d_values = []
    seen_d: dict[int, int] = {}
    for idx, comp in enumerate(comps):
        ds = {d_of[x] for x in comp}
        if len(ds) != 1:
            raise InvariantViolation(f"class {idx} mixes d-values {sorted(ds)}")
        d = ds.pop()
        d_values.append(d)
        if d == 1:
            if len(comp) != 1:
                raise InvariantViolation(f"a d = 1 colouring has Kempe neighbours (class size {len(comp)})")
            continue
        if d in seen_d:
            raise InvariantViolation(f"two distinct classes share d = {d}")
        seen_d[d] = idx
    constants = sum(1 for d in d_values if d == 1)
    star = len(comps) - constants + (1 if constants else 0)
    return KempeClassPartition(tuple(tuple(c) for c in comps), tuple(d_values), star)


def _ensure_same_class(R: ReconfigurationGraph, a: int, b: int, dist: list[int]) -> None:
    if dist[b] < 0:
        raise NotEquivalent(R.d_value(a), R.d_value(b))


def distance(R: ReconfigurationGraph, A: Colouring, B: Colouring) -> int:
    """Fewest proper Kempe changes turning ``A`` into a colouring equal to ``B``."""
    a, b = R.node_of(A), R.node_of(B)
    dist = R.bfs(a)
    _ensure_same_class(R, a, b, dist)
    return dist[b]


def diameter(R: ReconfigurationGraph) -> int:
    """Exact diameter by breadth-first search from every node."""
    best = 0
    for s in range(len(R.nodes)):
        dist = R.bfs(s)
        for t, v in enumerate(dist):
            if v < 0:
                raise NotEquivalent(R.d_value(s), R.d_value(t))
        best = max(best, max(dist))
    return best


def graph_report(R: ReconfigurationGraph, with_diameter: bool | None = None) -> dict:
    """Summary record for one reconfiguration graph.

    For the full graph ``star_count`` merges constant colourings; for H_n it
    is the plain component count.  The diameter is computed for H_n by
    default and only when the graph is connected.
    """
    comps = R.components()
    if R.host.truncated:
        d_per_class = None
        star = len(comps)
    else:
        part = kempe_classes(R.host, graph=R)
        d_per_class = list(part.d_values)
        star = part.star_count
    if with_diameter is None:
        with_diameter = R.host.truncated
    diam = diameter(R) if with_diameter and len(comps) == 1 else None
    bound = kempe_distance_bound(R.host.n) if R.host.truncated else None
    return {
        "n": R.host.n,
        "truncated": R.host.truncated,
        "node_count": len(R.nodes),
        "class_sizes": [len(c) for c in comps],
        "d_per_class": d_per_class,
        "star_count": star,
        "diameter": diam,
        "bound": bound,
        "bound_satisfied": None if diam is None or bound is None else diam <= bound,
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def expected_class_sizes(n: int) -> dict[int, int]:
    """Map d-value to class size (all constants merged for d = 1, Q class for d = 0)."""
    out = {2 * n - 3 * b: class_size_formula(n, b) for b in realized_b_values(n)}
    if n % 3 == 0:
        out[0] = 4
    return out


# -- restricted descent towards the two-component normal form ----------------


@dataclass(frozen=True)
class DescentWitness:
    """An ordering (first, second) of the two A(3,4) paths meeting the alignment hypothesis."""

    first: tuple[int, ...]
    second: tuple[int, ...]

    @property
    def start_edge(self) -> tuple[int, int]:
        return first_edge(self.first)


def descent_witnesses(A: Colouring) -> list[DescentWitness]:
    """Orderings of the two A(3,4) paths with |first| <= |second| whose adjoining ends share a colour.

    ``A`` must be a colouring of a full G_n with ``d = 2``.
    """
    if A.host.truncated:
        raise DomainError("needs the full graph G_n")
    N = normalize_poles(A)
    if N["a"] == N["b"] or bicoloured_edge_count(N, 1, 2, EdgeClass.TYPE1) != 2:
        raise DomainError("colouring does not have d = 2")
    comps = band_ordered_components(N)
    if len(comps) != 2:
        raise InvariantViolation(f"d = 2 colouring with {len(comps)} A(3,4) components")
    out = []
    for first, second in (comps, comps[::-1]):
        if len(first) <= len(second) and N.colours[first[-1]] == N.colours[second[0]]:
            out.append(DescentWitness(first, second))
    return out


def _type2_edge_swaps(G: PolarTriangulation, cols: tuple[int, ...]):
    type2 = G.edges_of_class(EdgeClass.TYPE2)
    for x, y in type2:
        pair = (cols[x], cols[y])
        i, j = min(pair), max(pair)
        comp = None
        for c in _component_indices(G, cols, i, j):
            if x in c:
                comp = c
                break
        if comp == [x, y]:
            new = list(cols)
            new[x], new[y] = cols[y], cols[x]
            yield tuple(new)


def descent_distance(A: Colouring, witness: DescentWitness, limit: int = 64) -> int:
    """Fewest Type2-edge chain swaps from ``A`` to a colouring of the two-component normal form.

    The target is a colouring with d = 2 in which the start edge of
    ``witness`` is itself a component of A(3,4).
    """
    G = A.host
    start = normalize_poles(A).colours
    e = witness.start_edge

    def is_target(cols) -> bool:
        return is_q_ke_shaped(Colouring(G, cols, check=False), 2, e)

    seen = {start: 0}
    queue = deque([start])
    while queue:
        cols = queue.popleft()
        if is_target(cols):
            return seen[cols]
        if seen[cols] >= limit:
            continue
        for nxt in _type2_edge_swaps(G, cols):
            if nxt not in seen:
                seen[nxt] = seen[cols] + 1
                queue.append(nxt)
    raise InvariantViolation("normal form unreachable by Type2-edge swaps")


def verify_descent(A: Colouring) -> int:
    """Measured restricted distance (max over valid orderings); asserts it is <= c(A)/2."""
    witnesses = descent_witnesses(A)
    if not witnesses:
        raise DomainError("alignment hypothesis not met")
    c = invariant_vector(A).c
    worst = 0
    for w in witnesses:
        dist = descent_distance(A, w)
        if 2 * dist > c:
            raise InvariantViolation(f"descent took {dist} swaps, more than c/2 = {c / 2}")
        worst = max(worst, dist)
    return worst


def eligible_descent_colourings(G: PolarTriangulation) -> list[Colouring]:
    out = []
    for A in distinct_colourings(G):
        if A["a"] == A["b"] or invariant_vector(A).d != 2:
            continue
        if descent_witnesses(A):
            out.append(A)
    return out

