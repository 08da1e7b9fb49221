"""Verification suites: each target turns a family of claims into check records."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .colouring import (
    COLOUR_PERMUTATIONS,
    Colouring,
    canonicalize,
    distinct_colourings,
    enumerate_proper_colourings,
    normalize_poles,
)
from .errors import BudgetExceeded, InvariantViolation, NotEquivalent, PolarKempeError
from .invariants import (
    bar,
    bicoloured_edge_count,
    class_count_formula,
    colour_classes_balanced,
    colouring_count_formula,
    constant_count_formula,
    h_d_value,
    invariant_vector,
    kempe_distance_bound,
    lift_minus,
    lift_plus,
    restrict,
)
from .kempe import COLOUR_PAIRS, ChainKind, Shape, bicoloured_components, kempe_moves
from .polar_graph import EdgeClass, build_polar_triangulation, build_truncated
from .reconfiguration import (
    DEFAULT_BUDGET,
    build_reconfiguration_graph,
    diameter,
    eligible_descent_colourings,
    expected_class_sizes,
    kempe_classes,
    verify_descent,
)

TARGETS = (
    "counts",
    "identities",
    "chains",
    "classes",
    "constants",
    "transforms",
    "hn-connectivity",
    "hn-diameter",
    "descent",
)
DEFAULT_N = (5, 6, 7, 8)
DEFAULT_HN_DIAMETER_MAX = 7


@dataclass
class CheckRecord:
    check_id: str
    n: int
    claim: str
    expected: object
    measured: object
    passed: bool
    wall_time: float | None = None

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "check_id": self.check_id,
            "n": self.n,
            "claim": self.claim,
            "expected": self.expected,
            "measured": self.measured,
            "passed": self.passed,
        }
        if timings:
            out["wall_time_s"] = None if self.wall_time is None else round(self.wall_time, 4)
        return out


@dataclass
class VerificationReport:
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def summary(self) -> dict:
        ok = sum(r.passed for r in self.records)
        return {"total": len(self.records), "passed": ok, "failed": len(self.records) - ok}

    def to_json(self, timings: bool = False) -> dict:
        return {
            "records": [r.to_json(timings) for r in self.records],
            "summary": self.summary(),
            "all_passed": self.passed,
        }

    def to_json_text(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), indent=2, sort_keys=True) + "\n"

    def to_text(self, timings: bool = False) -> str:
        lines = []
        for r in self.records:
            status = "PASS" if r.passed else "FAIL"
            line = (
                f"{status} {r.check_id} n={r.n} [{r.claim}] "
                f"expected={json.dumps(r.expected, sort_keys=True)} "
                f"measured={json.dumps(r.measured, sort_keys=True)}"
            )
            if timings and r.wall_time is not None:
                line += f" ({r.wall_time:.3f}s)"
            lines.append(line)
        s = self.summary()
        lines.append(f"{s['passed']}/{s['total']} checks passed, {s['failed']} failed")
        return "\n".join(lines) + "\n"


class Workspace:
    """Per-run cache of enumerations and reconfiguration graphs."""

    def __init__(self, budget_nodes: int = DEFAULT_BUDGET):
        self.budget_nodes = budget_nodes
        self.labelled = lru_cache(maxsize=None)(self._labelled)
        self.distinct = lru_cache(maxsize=None)(self._distinct)
        self.reconfig = lru_cache(maxsize=None)(self._reconfig)

    @staticmethod
    def graph(n: int, truncated: bool = False):
        return build_truncated(n) if truncated else build_polar_triangulation(n)

    def _labelled(self, n: int, truncated: bool = False) -> tuple[Colouring, ...]:
        cols = enumerate_proper_colourings(self.graph(n, truncated))
        if len(cols) > 24 * self.budget_nodes:
            raise BudgetExceeded(len(cols) // 24, self.budget_nodes)
        return cols

    def _distinct(self, n: int, truncated: bool = False) -> tuple[Colouring, ...]:
        return distinct_colourings(self.graph(n, truncated))

    def _reconfig(self, n: int, truncated: bool = False):
        return build_reconfiguration_graph(self.graph(n, truncated), self.budget_nodes)


def _rec(check_id, n, claim, expected, measured, passed=None) -> CheckRecord:
    if passed is None:
        passed = expected == measured
    return CheckRecord(check_id, n, claim, expected, measured, bool(passed))


# -- targets -------------------------------------------------------------------


def check_counts(n: int, ws: Workspace) -> list[CheckRecord]:
    labelled = ws.labelled(n)
    distinct = ws.distinct(n)
    orbit_sizes = [len({A.permuted(p) for p in COLOUR_PERMUTATIONS}) for A in distinct]
    return [
        _rec("counts.distinct", n, "colouring-count closed form",
             colouring_count_formula(n), len(distinct)),
        _rec("counts.orbit-sum", n, "orbit sizes add up to the labelled count",
             len(labelled), sum(orbit_sizes)),
    ]


def check_identities(n: int, ws: Workspace) -> list[CheckRecord]:
    vector_bad = balance_bad = perm_bad = 0
    for A in ws.labelled(n):
        if not invariant_vector(A).identities_hold(n):
            vector_bad += 1
        if A["a"] != A["b"] and not colour_classes_balanced(A):
            balance_bad += 1
    for A in ws.distinct(n):
        base = invariant_vector(A)
        if any(invariant_vector(A.permuted(p)) != base for p in COLOUR_PERMUTATIONS):
            perm_bad += 1
    return [
        _rec("identities.vector", n, "linear identities among a, b, c, d", 0, vector_bad),
        _rec("identities.balance", n, "colour classes pair up in size", 0, balance_bad),
        _rec("identities.permutation", n, "invariant vector is permutation invariant", 0, perm_bad),
    ]


def chain_shape_violations(A: Colouring) -> tuple[int, int]:
    """Count A(3,4) components and pole-free mixed chains of the wrong shape.

    ``A`` must have its poles coloured 1 and 2.
    """
    host = A.host
    bad34 = 0
    for ch in bicoloured_components(A, 3, 4):
        ok = ch.kind is ChainKind.KIND1 and ch.order % 2 == 0 and not ch.touches_pole
        if ok and ch.shape is Shape.PATH:
            edges = ch.walk_edges()
            ok = host.class_of(edges[0]) is EdgeClass.TYPE1 and host.class_of(edges[-1]) is EdgeClass.TYPE1
        bad34 += not ok
    bad_mixed = 0
    for pair in COLOUR_PAIRS:
        if pair == (3, 4):
            continue
        for ch in bicoloured_components(A, *pair):
            if ch.touches_pole:
                continue
            ok = ch.kind is ChainKind.KIND2 and ch.order % 2 == 0
            bad_mixed += not ok
    return bad34, bad_mixed


def check_chains(n: int, ws: Workspace) -> list[CheckRecord]:
    bad34 = bad_mixed = 0
    normalised = {normalize_poles(A) for A in ws.distinct(n)}
    for N in sorted(normalised):
        if N["a"] == N["b"]:
            continue
        x, y = chain_shape_violations(N)
        bad34 += x
        bad_mixed += y
    return [
        _rec("chains.a34", n, "A(3,4) components are even kind-1 paths or cycles", 0, bad34),
        _rec("chains.mixed", n, "pole-free chains through colours 1, 2 are even kind-2", 0, bad_mixed),
    ]


def check_classes(n: int, ws: Workspace) -> list[CheckRecord]:
    R = ws.reconfig(n)
    out = []
    d_of = [invariant_vector(A).d for A in R.nodes]
    d_breaks = sum(1 for i, j in R.edges if d_of[i] != d_of[j])
    out.append(_rec("classes.d-invariance", n, "d is preserved by every Kempe change", 0, d_breaks))
    try:
        part = kempe_classes(R.host, graph=R)
        structure = "ok"
    except InvariantViolation as exc:
        part, structure = None, str(exc)
    out.append(_rec("classes.structure", n, "classes are exactly the d-level sets; d = 1 isolated",
                    "ok", structure))
    if part is None:
        return out
    out.append(_rec("classes.star-count", n, "class count with constants merged",
                    class_count_formula(n), part.star_count))
    measured: dict[int, int] = {}
    for comp, d in zip(part.classes, part.d_values):
        measured[d] = measured.get(d, 0) + len(comp)
    expected = expected_class_sizes(n)
    out.append(_rec("classes.sizes", n, "class-size closed form",
                    {str(k): v for k, v in sorted(expected.items())},
                    {str(k): v for k, v in sorted(measured.items())}))
    return out


def _is_constant(A: Colouring) -> bool:
    base = canonicalize(A)
    return all(canonicalize(B) == base for _, _, B in kempe_moves(A))


def check_constants(n: int, ws: Workspace) -> list[CheckRecord]:
    distinct = ws.distinct(n)
    constant = [_is_constant(A) for A in distinct]
    ds = [invariant_vector(A).d for A in distinct]
    mismatches = sum(1 for c, d in zip(constant, ds) if c != (d == 1))
    out = [
        _rec("constants.characterisation", n, "constant iff d = 1", 0, mismatches),
        _rec("constants.count", n, "2n constant colourings when n = 2 mod 3",
             constant_count_formula(n), sum(constant)),
    ]
    if n % 3 == 0:
        R = ws.reconfig(n)
        q = next(k for k, A in enumerate(R.nodes) if A["a"] == A["b"])
        size = next(len(c) for c in R.components() if q in c)
        zero = sum(1 for d in ds if d == 0)
        out.append(_rec("constants.q-class", n, "the equal-pole class has four elements",
                        {"class_size": 4, "d0_count": 4}, {"class_size": size, "d0_count": zero}))
    return out


def transform_violations(A: Colouring) -> list[str]:
    """Problems found when lifting an eligible H_n colouring; empty when all is well."""
    problems = []
    try:
        plus, minus, full = lift_plus(A), lift_minus(A), bar(A)
    except InvariantViolation as exc:
        return [str(exc)]
    d = h_d_value(A)
    if h_d_value(plus) != d:
        problems.append("d(A+) != d(A)")
    if h_d_value(minus) != d:
        problems.append("d(A-) != d(A)")
    if invariant_vector(full).d != d:
        problems.append("d(bar A) != d(A)")
    if restrict(full) != minus:
        problems.append("restrict(bar A) != A-")
    return problems


def eligible_for_lifts(A: Colouring) -> bool:
    return A["a"] == 1 and bicoloured_edge_count(A, 1, 2, EdgeClass.TYPE2) == 0


def check_transforms(n: int, ws: Workspace) -> list[CheckRecord]:
    eligible = [A for A in ws.labelled(n, True) if eligible_for_lifts(A)]
    bad = sum(1 for A in eligible if transform_violations(A))
    return [
        _rec("transforms.lifts", n, "lifts preserve d and restrict(bar A) = A-",
             {"violations": 0}, {"violations": bad, "eligible": len(eligible)},
             passed=bad == 0 and len(eligible) > 0),
    ]


def check_hn_connectivity(n: int, ws: Workspace) -> list[CheckRecord]:
    R = ws.reconfig(n, True)
    return [_rec("hn.connected", n, "all colourings of H_n are Kempe equivalent", 1, len(R.components()))]


def check_hn_diameter(n: int, ws: Workspace) -> list[CheckRecord]:
    R = ws.reconfig(n, True)
    bound = kempe_distance_bound(n)
    try:
        diam = diameter(R)
    except NotEquivalent:
        diam = None
    return [
        _rec("hn.diameter", n, "Kempe distance bound on H_n", {"at_most": bound}, diam,
             passed=diam is not None and diam <= bound)
    ]


def check_descent(n: int, ws: Workspace) -> list[CheckRecord]:
    G = ws.graph(n)
    eligible = eligible_descent_colourings(G)
    bad = 0
    worst = 0
    slack = None
    for A in eligible:
        c = invariant_vector(A).c
        try:
            dist = verify_descent(A)
        except InvariantViolation:
            bad += 1
            continue
        worst = max(worst, dist)
        s = c / 2 - dist
        slack = s if slack is None else min(slack, s)
    return [
        _rec("descent.type2-swaps", n, "Type2-edge swaps reach the normal form within c/2",
             {"violations": 0},
             {"violations": bad, "eligible": len(eligible), "max_distance": worst, "min_slack": slack},
             passed=bad == 0),
    ]


SUITES: dict[str, Callable[[int, Workspace], list[CheckRecord]]] = {
    "counts": check_counts,
    "identities": check_identities,
    "chains": check_chains,
    "classes": check_classes,
    "constants": check_constants,
    "transforms": check_transforms,
    "hn-connectivity": check_hn_connectivity,
    "hn-diameter": check_hn_diameter,
    "descent": check_descent,
}


def run_verification(
    ns: Iterable[int],
    targets: Iterable[str] = TARGETS,
    budget_nodes: int = DEFAULT_BUDGET,
    hn_diameter_max: int | None = None,
) -> VerificationReport:
    """Run every (target, n) cell in a fixed order.

    Cells with ``hn-diameter`` above ``hn_diameter_max`` are not executed.
    Errors inside a cell become a failed record so the rest of the report
    survives.
    """
    ws = Workspace(budget_nodes)
    report = VerificationReport()
    ns = sorted(set(ns))
    for target in targets:
        if target not in SUITES:
            raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
        for n in ns:
            if target == "hn-diameter" and hn_diameter_max is not None and n > hn_diameter_max:
                continue
            t0 = time.perf_counter()
            try:
                records = SUITES[target](n, ws)
            except PolarKempeError as exc:
                records = [_rec(f"{target}.error", n, type(exc).__name__, None, str(exc), passed=False)]
            elapsed = time.perf_counter() - t0
            for r in records:
                r.wall_time = elapsed
            report.records.extend(records)
    return report


__all__ = [
    "CheckRecord",
    "VerificationReport",
    "Workspace",
    "TARGETS",
    "run_verification",
    "chain_shape_violations",
    "transform_violations",
    "eligible_for_lifts",
]
