"""Kempe invariants, colouring transforms on H_n, special colourings and counting formulas."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .colouring import Colouring, canonicalize, distinct_colourings, is_proper, normalize_poles
from .errors import DomainError, InvariantViolation, NoSuchColouring
from .kempe import ChainKind, KempeChain, Shape, bicoloured_components, kempe_moves
from .polar_graph import EdgeClass, PolarTriangulation, build_polar_triangulation, remove_pole


@dataclass(frozen=True)
class InvariantVector:
    """``a``: #colour 1, ``b``: #colour 3, ``c``: Type2 edges of A(3,4), ``d``: Type1 edges of A(1,2)."""

    a: int
    b: int
    c: int
    d: int

    def identities_hold(self, n: int) -> bool:
        a, b, c, d = self.a, self.b, self.c, self.d
        return (
            a + b == n + 1
            and c + d == b
            and c + 2 * d == 2 * a - 2
            and 3 * b + d == 2 * n
            and 3 * c + 4 * d == 2 * n
        )

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


def _require_full(A: Colouring) -> None:
    if A.host.truncated:
        raise DomainError("operation needs the full graph G_n")


def _require_h(A: Colouring) -> None:
    if A.host.removed_pole != "b":
        raise DomainError("operation needs H_n = G_n - b")


def poles_share_colour(A: Colouring) -> bool:
    _require_full(A)
    return A["a"] == A["b"]


def bicoloured_edge_count(A: Colouring, i: int, j: int, cls: EdgeClass) -> int:
    """Number of edges of class ``cls`` whose ends are coloured ``{i, j}``."""
    pair = {i, j}
    cols = A.colours
    return sum(
        1
        for e in A.host.edges_of_class(cls)
        if cols[e[0]] in pair and cols[e[1]] in pair
    )


def q_vector(n: int) -> InvariantVector:
    if n % 3:
        raise DomainError(f"the equal-pole colouring exists only for n divisible by 3, got {n}")
    return InvariantVector(n // 3 + 1, 2 * n // 3, 2 * n // 3, 0)


def invariant_vector(A: Colouring) -> InvariantVector:
    _require_full(A)
    if poles_share_colour(A):
        return q_vector(A.host.n)
    N = normalize_poles(A)
    return InvariantVector(
        a=N.colours.count(1),
        b=N.colours.count(3),
        c=bicoloured_edge_count(N, 3, 4, EdgeClass.TYPE2),
        d=bicoloured_edge_count(N, 1, 2, EdgeClass.TYPE1),
    )


def check_identities(A: Colouring) -> bool:
    return invariant_vector(A).identities_hold(A.host.n)


def colour_classes_balanced(A: Colouring) -> bool:
    """Pole colour classes have equal size, and so do the two remaining classes.

    Only meaningful when the poles differ in colour.
    """
    N = normalize_poles(A)
    counts = [N.colours.count(c) for c in (1, 2, 3, 4)]
    return counts[0] == counts[1] and counts[2] == counts[3]


def is_constant_colouring(A: Colouring) -> bool:
    """No single Kempe change leads to a colouring that differs up to permutation.

    Raises :class:`InvariantViolation` if the answer disagrees with ``d == 1``.
    """
    _require_full(A)
    base = canonicalize(A)
    constant = all(canonicalize(B) == base for _, _, B in kempe_moves(A))
    if constant != (invariant_vector(A).d == 1):
        raise InvariantViolation(f"constancy of {A!r} disagrees with its d-value")
    return constant


# -- band geometry ---------------------------------------------------------


def oriented_sequence(chain: KempeChain) -> tuple[int, ...]:
    """Vertices of a pole-free path in increasing band direction."""
    host = chain.host
    seq = chain.sequence
    if chain.shape is Shape.SINGLETON:
        return seq
    if chain.shape is not Shape.PATH or chain.touches_pole:
        raise DomainError("band orientation needs a pole-free path")
    two_n = 2 * host.n
    step = (host.band_position(seq[1]) - host.band_position(seq[0])) % two_n
    return seq if step in (1, 2) else tuple(reversed(seq))


def band_ordered_components(A: Colouring, i: int = 3, j: int = 4) -> list[tuple[int, ...]]:
    """Path components of ``A(i, j)`` oriented along the band, sorted by start position."""
    host = A.host
    comps = [oriented_sequence(ch) for ch in bicoloured_components(A, i, j)]
    return sorted(comps, key=lambda seq: host.band_position(seq[0]))


def _edge(seq: Sequence[int], k: int) -> tuple[int, int]:
    x, y = seq[k], seq[k + 1]
    return (x, y) if x < y else (y, x)


def first_edge(seq: Sequence[int]) -> tuple[int, int]:
    return _edge(seq, 0)


def is_q_ke_shaped(A: Colouring, k: int, e: tuple[int, int]) -> bool:
    """Shape test for a colouring with poles coloured 1 and 2.

    ``e`` is an internal edge key of a Type1 edge.
    """
    n = A.host.n
    if A["a"] != 1 or A["b"] != 2:
        return False
    if bicoloured_edge_count(A, 1, 2, EdgeClass.TYPE1) != k:
        return False
    chains = bicoloured_components(A, 3, 4)
    if any(ch.shape is not Shape.PATH for ch in chains):
        return False
    comps = band_ordered_components(A)
    singles = [len(seq) == 2 and A.host.class_of(first_edge(seq)) is EdgeClass.TYPE1 for seq in comps]
    if k == 1:
        return len(comps) == 1 and chains[0].kind is ChainKind.KIND1 and first_edge(comps[0]) == e
    if 2 * k == n:
        return len(comps) == k and all(singles) and any(first_edge(s) == e for s in comps)
    if len(comps) != k:
        return False
    starts = [p for p, seq in enumerate(comps) if len(seq) == 2 and first_edge(seq) == e]
    if not starts:
        return False
    p = starts[0]
    return all(singles[(p + t) % k] for t in range(k - 1))


@lru_cache(maxsize=None)
def _normalized_colourings(n: int) -> tuple[Colouring, ...]:
    G = build_polar_triangulation(n)
    return tuple(sorted({normalize_poles(A) for A in distinct_colourings(G)}))


def construct_Q(n: int) -> Colouring:
    """The colouring of G_n whose poles share a colour, with both poles coloured 1."""
    if n % 3:
        raise NoSuchColouring(f"no equal-pole colouring of G_{n}: n is not divisible by 3")
    found = [A for A in _normalized_colourings(n) if A["a"] == A["b"]]
    if len(found) != 1:
        raise InvariantViolation(f"expected exactly one equal-pole colouring, found {len(found)}")
    return found[0]


def construct_Q_ke(n: int, k: int, e: Sequence[str]) -> Colouring:
    """A colouring with ``d = k`` whose A(3,4) has the prescribed Type1-edge components at ``e``.

    The first match in sorted order among pole-normalised colourings is
    returned.
    """
    G = build_polar_triangulation(n)
    key = G.edge_key(e)
    if G.class_of(key) is not EdgeClass.TYPE1:
        raise DomainError(f"{tuple(e)} is not a Type1 edge")
    if not 1 <= k <= n / 2:
        raise NoSuchColouring(f"k must satisfy 1 <= k <= n/2, got k={k}, n={n}")
    if (n - 2 * k) % 3:
        raise NoSuchColouring(f"n={n} is not congruent to 2k={2 * k} mod 3")
    for A in _normalized_colourings(n):
        if A["a"] != A["b"] and is_q_ke_shaped(A, k, key):
            return A
    raise InvariantViolation(f"no colouring of shape (k={k}, e={tuple(e)}) found for n={n}")


# -- H_n machinery ---------------------------------------------------------


def h_d_value(A: Colouring) -> int:
    """Type1 edges in A(1,2) for a colouring of H_n, labels taken as given."""
    return bicoloured_edge_count(A, 1, 2, EdgeClass.TYPE1)


def p_set(A: Colouring) -> frozenset[str]:
    """Vertices of the ring around the deleted pole that share the colour of ``a``."""
    _require_h(A)
    ca = A["a"]
    return frozenset(v for v in A.host.ring_b if A[v] == ca)


class SingularityTag(enum.Enum):
    SINGULAR = "Singular"
    NONSINGULAR = "Nonsingular"


def apexes(G: PolarTriangulation, e: Sequence[str]) -> tuple[str, str]:
    key = G.edge_key(e)
    faces = G.faces_of(key)
    if len(faces) != 2:
        raise DomainError(f"edge {tuple(e)} does not lie in two faces")
    return tuple(G.vertices[next(x for x in f if x not in key)] for f in faces)


def is_singular(A: Colouring, e: Sequence[str]) -> SingularityTag:
    G = A.host
    if G.class_of(G.edge_key(e)) is not EdgeClass.TYPE1:
        raise DomainError(f"{tuple(e)} is not a Type1 edge")
    z, w = apexes(G, e)
    return SingularityTag.SINGULAR if A[z] == A[w] else SingularityTag.NONSINGULAR


def _require_liftable(A: Colouring) -> None:
    _require_h(A)
    if A["a"] != 1:
        raise DomainError("lifts expect the remaining pole to be coloured 1")
    if bicoloured_edge_count(A, 1, 2, EdgeClass.TYPE2):
        raise DomainError("A(1,2) contains a Type2 edge")


def _type1_12_vertices(A: Colouring) -> set[int]:
    cols = A.colours
    out: set[int] = set()
    for x, y in A.host.edges_of_class(EdgeClass.TYPE1):
        if {cols[x], cols[y]} == {1, 2}:
            out.update((x, y))
    return out


def _checked(host: PolarTriangulation, colours: list[int]) -> Colouring:
    if not is_proper(host, colours):
        raise InvariantViolation("transform produced an improper colouring")
    return Colouring(host, colours, check=False)


def lift_plus(A: Colouring) -> Colouring:
    """Recolour to 2 each ring-b vertex coloured 1 that is not on a Type1 edge of A(1,2)."""
    _require_liftable(A)
    keep = _type1_12_vertices(A)
    cols = list(A.colours)
    for v in A.host.ring_b:
        x = A.host.index[v]
        if cols[x] == 1 and x not in keep:
            cols[x] = 2
    return _checked(A.host, cols)


def lift_minus(A: Colouring) -> Colouring:
    """Recolour to 1 each ring-b vertex coloured 2."""
    _require_liftable(A)
    cols = list(A.colours)
    for v in A.host.ring_b:
        x = A.host.index[v]
        if cols[x] == 2:
            cols[x] = 1
    return _checked(A.host, cols)


def bar(A: Colouring) -> Colouring:
    """Extend ``lift_minus(A)`` to G_n by colouring ``b`` with 2."""
    low = lift_minus(A)
    G = build_polar_triangulation(A.host.n)
    mapping = low.as_dict()
    mapping["b"] = 2
    return _checked(G, [mapping[v] for v in G.vertices])


def restrict(A: Colouring) -> Colouring:
    """Drop pole ``b``."""
    _require_full(A)
    H = remove_pole(A.host, "b")
    return Colouring(H, [A[v] for v in H.vertices], check=False)


# -- closed forms ----------------------------------------------------------


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 3:
        raise DomainError(f"formulas are stated for integer n >= 3, got {n!r}")


def _ceil_div(p: int, q: int) -> int:
    return -(-p // q)


def realized_b_values(n: int) -> range:
    """Integers in the half-open interval [n/2, 2n/3)."""
    _check_n(n)
    return range(_ceil_div(n, 2), _ceil_div(2 * n, 3))


def class_count_formula(n: int) -> int:
    """Number of integers in [n/2, 2n/3]; cross-checked against the floor(n/6) form."""
    _check_n(n)
    count = 2 * n // 3 - _ceil_div(n, 2) + 1
    piecewise = n // 6 if n % 6 == 1 else n // 6 + 1
    if count != piecewise:
        raise InvariantViolation(f"interval count {count} != piecewise value {piecewise} at n={n}")
    return count


def _exact_div(p: int, q: int) -> int:
    if p % q:
        raise InvariantViolation(f"{p}/{q} is not an integer")
    return p // q


def colouring_count_formula(n: int) -> int:
    """Number of colourings of G_n up to colour permutation."""
    _check_n(n)
    total = 0
    for k in realized_b_values(n):
        d = 2 * n - 3 * k
        total += _exact_div(comb(k, d) * n * 2**d, k)
    if n % 3 == 0:
        total += 4
    return total


def class_size_formula(n: int, b_val: int) -> int:
    """Size of the class with invariant ``b = b_val`` (all constant colourings when d = 1)."""
    if b_val not in realized_b_values(n):
        raise DomainError(f"b={b_val} outside [n/2, 2n/3) for n={n}")
    d = 2 * n - 3 * b_val
    c = b_val - d
    return _exact_div(comb(c + d - 1, d - 1) * n * 2**d, d)


def constant_count_formula(n: int) -> int:
    """Number of constant colourings: 2n when n = 2 mod 3, otherwise none."""
    _check_n(n)
    return 2 * n if n % 3 == 2 else 0


def kempe_distance_bound(n: int) -> int:
    """Upper bound on the Kempe distance between any two colourings of H_n."""
    if n < 5:
        raise DomainError(f"bound is stated for n >= 5, got {n}")
    r = n % 3
    if r == 0:
        return 6 * (n // 2)
    if r == 2:
        return 9 * (n // 2)
    return 9 * (n // 2) + 6 * (n // 3) - 2
