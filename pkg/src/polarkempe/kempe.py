"""Bicoloured subgraphs, Kempe chains and Kempe changes."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .colouring import COLOURS, Colouring, is_proper
from .errors import DomainError, InvariantViolation, StaleChain
from .polar_graph import EdgeClass, PolarTriangulation

COLOUR_PAIRS = tuple(itertools.combinations(COLOURS, 2))


class Shape(enum.Enum):
    SINGLETON = "Singleton"
    PATH = "Path"
    CYCLE = "Cycle"
    BRANCHED = "Branched"  # any component that is not a path or a cycle


class ChainKind(enum.Enum):
    KIND1 = "Kind1"  # edges alternate Type1 / Type2
    KIND2 = "Kind2"  # every edge is Type2
    OTHER = "Other"


class ChainTag(enum.Enum):
    PROPER = "Proper"
    FULL = "Full"


@dataclass(frozen=True)
class ChainClass:
    tag: ChainTag
    trivial: bool


@dataclass(frozen=True)
class KempeChain:
    """One component of ``A(i, j)``.

    ``members`` holds sorted vertex indices.  For paths and cycles
    ``sequence`` lists the vertices in walk order (paths start at the
    lower-indexed end, cycles at their least vertex heading to its
    lower-indexed neighbour); it is empty for branched components.
    """

    host: PolarTriangulation = field(repr=False)
    colour_pair: tuple[int, int]
    members: tuple[int, ...]
    shape: Shape
    kind: ChainKind
    sequence: tuple[int, ...] = field(default=(), repr=False)

    @property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.host.vertices[i] for i in self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def touches_pole(self) -> bool:
        return any(self.host.is_pole(i) for i in self.members)

    def walk_edges(self) -> list[tuple[int, int]]:
        """Edges along ``sequence`` (closing edge included for cycles), as sorted index pairs."""
        seq = self.sequence
        steps = list(zip(seq, seq[1:]))
        if self.shape is Shape.CYCLE:
            steps.append((seq[-1], seq[0]))
        return [(x, y) if x < y else (y, x) for x, y in steps]

    def to_json(self) -> dict:
        return {
            "colour_pair": list(self.colour_pair),
            "vertices": [self.host.vertices[i] for i in self.members],
            "shape": self.shape.value,
            "kind": self.kind.value,
            "sequence": [self.host.vertices[i] for i in self.sequence],
        }


def _component_indices(host: PolarTriangulation, colours, i: int, j: int) -> list[list[int]]:
    pair = (i, j)
    seen: set[int] = set()
    comps = []
    for start, c in enumerate(colours):
        if c not in pair or start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            x = stack.pop()
            for y in host.neighbours[x]:
                if y not in seen and colours[y] in pair:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _walk(host: PolarTriangulation, members: list[int]) -> tuple[Shape, tuple[int, ...]]:
    if len(members) == 1:
        return Shape.SINGLETON, (members[0],)
    inside = set(members)
    local = {x: [y for y in host.neighbours[x] if y in inside] for x in members}
    degrees = [len(local[x]) for x in members]
    if max(degrees) > 2:
        return Shape.BRANCHED, ()
    ends = [x for x in members if len(local[x]) == 1]
    if len(ends) == 2:
        shape, start = Shape.PATH, min(ends)
    elif not ends:
        shape, start = Shape.CYCLE, members[0]
    else:
        return Shape.BRANCHED, ()
    seq = [start]
    prev, cur = None, start
    nxt = min(local[start])
    while True:
        prev, cur = cur, nxt
        if cur == start:
            break
        seq.append(cur)
        options = [y for y in local[cur] if y != prev]
        if not options:
            break
        nxt = options[0]
    return shape, tuple(seq)


def _kind(host: PolarTriangulation, shape: Shape, members: list[int], sequence) -> ChainKind:
    if shape in (Shape.SINGLETON, Shape.BRANCHED):
        return ChainKind.OTHER
    if any(host.is_pole(x) for x in members):
        return ChainKind.OTHER
    steps = list(zip(sequence, sequence[1:]))
    if shape is Shape.CYCLE:
        steps.append((sequence[-1], sequence[0]))
    types = [host.class_of((x, y) if x < y else (y, x)) for x, y in steps]
    if all(t is EdgeClass.TYPE2 for t in types):
        return ChainKind.KIND2
    pairs = list(zip(types, types[1:]))
    if shape is Shape.CYCLE:
        pairs.append((types[-1], types[0]))
    if all(s is not t for s, t in pairs):
        return ChainKind.KIND1
    return ChainKind.OTHER


def _make_chain(host: PolarTriangulation, i: int, j: int, members: list[int]) -> KempeChain:
    shape, seq = _walk(host, members)
    return KempeChain(host, (i, j), tuple(members), shape, _kind(host, shape, members, seq), seq)


def _check_pair(i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise DomainError("a Kempe chain needs two different colours")
    if i not in COLOURS or j not in COLOURS:
        raise DomainError(f"colour out of range: {i}, {j}")
    return (i, j) if i < j else (j, i)


def bicoloured_components(A: Colouring, i: int, j: int) -> list[KempeChain]:
    """Components of the subgraph induced by colours ``i`` and ``j``, by least vertex."""
    i, j = _check_pair(i, j)
    return [_make_chain(A.host, i, j, comp) for comp in _component_indices(A.host, A.colours, i, j)]


def _validate(A: Colouring, chain: KempeChain) -> None:
    if chain.host != A.host:
        raise StaleChain("chain belongs to a different graph")
    i, j = chain.colour_pair
    start = chain.members[0]
    if A.colours[start] not in (i, j):
        raise StaleChain("chain vertex does not carry the chain colours")
    for comp in _component_indices(A.host, A.colours, i, j):
        if start in comp:
            if tuple(comp) != chain.members:
                raise StaleChain("chain is not a component of this colouring")
            return


def _swap(A: Colouring, pair: tuple[int, int], members) -> Colouring:
    i, j = pair
    colours = list(A.colours)
    for x in members:
        colours[x] = j if colours[x] == i else i
    out = Colouring(A.host, colours, check=False)
    if __debug__ and not is_proper(A.host, out.colours):
        raise InvariantViolation("Kempe change produced an improper colouring")
    return out


def apply_change(A: Colouring, chain: KempeChain) -> Colouring:
    """Swap the two chain colours on the chain's vertices."""
    _validate(A, chain)
    return _swap(A, chain.colour_pair, chain.members)


def classify_chain(A: Colouring, chain: KempeChain) -> ChainClass:
    _validate(A, chain)
    i, j = chain.colour_pair
    total = sum(1 for c in A.colours if c == i or c == j)
    tag = ChainTag.FULL if chain.order == total else ChainTag.PROPER
    return ChainClass(tag, chain.order == 1)


def kempe_moves(A: Colouring, proper_only: bool = False) -> Iterator[tuple[tuple[int, int], tuple[int, ...], Colouring]]:
    """Yield ``(colour_pair, members, result)`` for every single Kempe change of ``A``.

    With ``proper_only`` the changes on a chain equal to all of ``A(i, j)``
    are skipped.
    """
    for pair in COLOUR_PAIRS:
        comps = _component_indices(A.host, A.colours, *pair)
        if proper_only and len(comps) == 1:
            continue
        for comp in comps:
            yield pair, tuple(comp), _swap(A, pair, comp)


def kempe_neighbours(A: Colouring, proper_only: bool = False) -> set[Colouring]:
    return {B for _, _, B in kempe_moves(A, proper_only)}


def chain_count(A: Colouring) -> int:
    return sum(len(_component_indices(A.host, A.colours, *pair)) for pair in COLOUR_PAIRS)
