"""Proper 4-colourings: representation, enumeration and canonical forms."""

from __future__ import annotations

import csv
import io
import itertools
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import DomainError, InvariantViolation
from .polar_graph import PolarTriangulation

COLOURS = (1, 2, 3, 4)

# A colour permutation P is stored as the tuple (P(1), P(2), P(3), P(4)).
ColourPermutation = tuple
COLOUR_PERMUTATIONS: tuple[ColourPermutation, ...] = tuple(itertools.permutations(COLOURS))
IDENTITY: ColourPermutation = COLOURS


def compose(p: ColourPermutation, q: ColourPermutation) -> ColourPermutation:
    """Return ``p o q`` (apply ``q`` first)."""
    return tuple(p[q[c - 1] - 1] for c in COLOURS)


def invert(p: ColourPermutation) -> ColourPermutation:
    out = [0] * 4
    for c in COLOURS:
        out[p[c - 1] - 1] = c
    return tuple(out)


def transposition(i: int, j: int) -> ColourPermutation:
    p = list(COLOURS)
    p[i - 1], p[j - 1] = j, i
    return tuple(p)


class Colouring:
    """A proper colouring of a polar triangulation.

    ``colours[k]`` is the colour of ``host.vertices[k]``.  Properness is
    checked at construction unless ``check=False``; internal callers only
    disable the check on outputs of operations that provably preserve it.
    """

    __slots__ = ("host", "colours")

    def __init__(self, host: PolarTriangulation, colours: Sequence[int], *, check: bool = True):
        colours = tuple(colours)
        if check:
            if len(colours) != len(host.vertices):
                raise DomainError(
                    f"expected {len(host.vertices)} colours for {host!r}, got {len(colours)}"
                )
            for c in colours:
                if c not in COLOURS:
                    raise DomainError(f"colour out of range: {c!r}")
            for i, j in host.edges:
                if colours[i] == colours[j]:
                    x, y = host.edge_ids((i, j))
                    raise DomainError(f"improper colouring: edge {x}{y} has colour {colours[i]} at both ends")
        self.host = host
        self.colours = colours

    @classmethod
    def from_mapping(cls, host: PolarTriangulation, mapping: Mapping[str, int]) -> "Colouring":
        missing = set(host.vertices) - set(mapping)
        extra = set(mapping) - set(host.vertices)
        if missing or extra:
            raise DomainError(f"assignment mismatch: missing {sorted(missing)}, unknown {sorted(extra)}")
        return cls(host, [int(mapping[v]) for v in host.vertices])

    def __getitem__(self, vertex: str) -> int:
        return self.colours[self.host.index[vertex]]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.host.vertices, self.colours))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Colouring):
            return NotImplemented
        return self.colours == other.colours and self.host == other.host

    def __hash__(self) -> int:
        return hash(self.colours)

    def __lt__(self, other: "Colouring") -> bool:
        return self.colours < other.colours

    def __repr__(self) -> str:
        return f"Colouring({self.host.name}, {''.join(map(str, self.colours))})"

    @property
    def word(self) -> str:
        """Colours in vertex order as a digit string, e.g. ``'1234...'``."""
        return "".join(map(str, self.colours))

    @property
    def packed(self) -> int:
        """Two bits per vertex, first vertex in the lowest bits."""
        out = 0
        for k, c in enumerate(self.colours):
            out |= (c - 1) << (2 * k)
        return out

    @classmethod
    def unpack(cls, host: PolarTriangulation, packed: int) -> "Colouring":
        colours = [((packed >> (2 * k)) & 3) + 1 for k in range(len(host.vertices))]
        return cls(host, colours)

    def permuted(self, p: ColourPermutation) -> "Colouring":
        """Return ``P o A``."""
        return Colouring(self.host, [p[c - 1] for c in self.colours], check=False)

    def vertices_coloured(self, *colours: int) -> list[str]:
        wanted = set(colours)
        return [v for v, c in zip(self.host.vertices, self.colours) if c in wanted]

    def to_json(self) -> dict[str, int]:
        return self.as_dict()


def is_proper(host: PolarTriangulation, colours: Sequence[int]) -> bool:
    return all(colours[i] != colours[j] for i, j in host.edges)


def iter_proper_colourings(G: PolarTriangulation) -> Iterator[Colouring]:
    """Backtracking over vertices in host order, colours ascending."""
    nv = len(G.vertices)
    earlier = [tuple(j for j in G.neighbours[i] if j < i) for i in range(nv)]
    colours = [0] * nv

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == nv:
            yield tuple(colours)
            return
        blocked = {colours[j] for j in earlier[k]}
        for c in COLOURS:
            if c not in blocked:
                colours[k] = c
                yield from extend(k + 1)
        colours[k] = 0

    for word in extend(0):
        yield Colouring(G, word, check=False)


def enumerate_proper_colourings(G: PolarTriangulation) -> tuple[Colouring, ...]:
    """All labelled proper 4-colourings of ``G`` in deterministic order."""
    out = tuple(iter_proper_colourings(G))
    if not out:
        raise InvariantViolation(f"{G!r} has no proper 4-colouring")
    return out


def _same_host(A: Colouring, B: Colouring) -> None:
    if A.host != B.host:
        raise DomainError(f"colourings live on different graphs: {A.host!r} vs {B.host!r}")


def canonical_word(colours: Sequence[int]) -> tuple[int, ...]:
    # Relabelling colours by order of first appearance gives the
    # lexicographically least word in the orbit.
    relabel: dict[int, int] = {}
    out = []
    for c in colours:
        if c not in relabel:
            relabel[c] = len(relabel) + 1
        out.append(relabel[c])
    return tuple(out)


def canonicalize(A: Colouring) -> Colouring:
    """Lexicographically least element of ``{P o A}`` under the vertex order."""
    return Colouring(A.host, canonical_word(A.colours), check=False)


def are_equal(A: Colouring, B: Colouring) -> bool:
    """True iff some colour permutation maps ``B`` to ``A``."""
    _same_host(A, B)
    return canonical_word(A.colours) == canonical_word(B.colours)


def normalize_poles(A: Colouring) -> Colouring:
    """Relabel so pole ``a`` gets 1 and pole ``b`` gets 2 (or 1 if both agree).

    Ties are broken by taking the lexicographically least result.
    """
    if A.host.truncated:
        raise DomainError("pole normalisation needs both poles")
    ca, cb = A["a"], A["b"]
    best = None
    for p in COLOUR_PERMUTATIONS:
        if p[ca - 1] != 1:
            continue
        if ca != cb and p[cb - 1] != 2:
            continue
        word = tuple(p[c - 1] for c in A.colours)
        if best is None or word < best:
            best = word
    return Colouring(A.host, best, check=False)


def distinct_colourings(G: PolarTriangulation) -> tuple[Colouring, ...]:
    """Canonical representatives of all colourings up to colour permutation, sorted."""
    seen = {canonical_word(A.colours) for A in iter_proper_colourings(G)}
    if not seen:
        raise InvariantViolation(f"{G!r} has no proper 4-colouring")
    return tuple(Colouring(G, w, check=False) for w in sorted(seen))


def orbit(A: Colouring) -> frozenset[Colouring]:
    return frozenset(A.permuted(p) for p in COLOUR_PERMUTATIONS)


def colourings_to_csv(colourings: Iterable[Colouring], extra: Mapping[str, Sequence] | None = None) -> str:
    """CSV with one row per colouring: optional extra columns, then one column per vertex."""
    colourings = list(colourings)
    if not colourings:
        return ""
    host = colourings[0].host
    extra = dict(extra or {})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", *extra.keys(), *host.vertices])
    for k, A in enumerate(colourings):
        writer.writerow([k, *(col[k] for col in extra.values()), *A.colours])
    return buf.getvalue()
