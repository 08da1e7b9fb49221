"""The polar triangulations G_n and their pole-deleted subgraphs.

G_n consists of two poles ``a`` and ``b`` and two rings of length ``n``:
``u0..u{n-1}`` (the neighbours of ``a``) and ``v0..v{n-1}`` (the neighbours
of ``b``).  The rings are joined by an antiprism band with edges ``u_i v_i``
and ``u_{i+1} v_i``.  Every ring vertex has degree 5 and both poles have
degree ``n``.

Vertices are addressed by string ids (``"a"``, ``"u3"``, ``"v0"``) at the
public surface and by integer position in :attr:`PolarTriangulation.vertices`
internally.  The vertex order is ``a, u0..u{n-1}, b, v0..v{n-1}``; it is the
order used for enumeration and canonical forms.
"""

from __future__ import annotations

import enum
import json
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError, UnknownEdge

MIN_RING = 5


class EdgeClass(enum.Enum):
    TYPE1 = "Type1"  # one end in each ring (band edge)
    TYPE2 = "Type2"  # both ends in the same ring
    SPOKE = "Spoke"  # incident to a pole

    def __str__(self) -> str:
        return self.value


class PolarTriangulation:
    """Immutable G_n, or G_n with one pole removed.

    Two instances compare equal when they have the same ring length and the
    same removed pole; construction is cached so equal graphs are usually
    the same object.
    """

    __slots__ = (
        "n",
        "removed_pole",
        "vertices",
        "index",
        "neighbours",
        "edges",
        "_edge_class",
        "faces",
        "_faces_by_edge",
        "ring_a",
        "ring_b",
    )

    def __init__(self, n: int, removed_pole: str | None = None):
        if not isinstance(n, int) or n < MIN_RING:
            raise DomainError(f"ring length must be an integer >= {MIN_RING}, got {n!r}")
        if removed_pole not in (None, "a", "b"):
            raise DomainError(f"not a pole: {removed_pole!r}")
        self.n = n
        self.removed_pole = removed_pole
        self.ring_a = tuple(f"u{i}" for i in range(n))
        self.ring_b = tuple(f"v{i}" for i in range(n))

        full_order = ("a",) + self.ring_a + ("b",) + self.ring_b
        self.vertices = tuple(v for v in full_order if v != removed_pole)
        self.index = {v: i for i, v in enumerate(self.vertices)}

        pairs: list[tuple[str, str, EdgeClass]] = []
        for i in range(n):
            j = (i + 1) % n
            pairs.append(("a", f"u{i}", EdgeClass.SPOKE))
            pairs.append(("b", f"v{i}", EdgeClass.SPOKE))
            pairs.append((f"u{i}", f"u{j}", EdgeClass.TYPE2))
            pairs.append((f"v{i}", f"v{j}", EdgeClass.TYPE2))
            pairs.append((f"u{i}", f"v{i}", EdgeClass.TYPE1))
            pairs.append((f"u{j}", f"v{i}", EdgeClass.TYPE1))

        adj: list[set[int]] = [set() for _ in self.vertices]
        edge_class: dict[tuple[int, int], EdgeClass] = {}
        for x, y, cls in pairs:
            if removed_pole in (x, y):
                continue
            key = self._key(self.index[x], self.index[y])
            edge_class[key] = cls
            adj[key[0]].add(key[1])
            adj[key[1]].add(key[0])
        self._edge_class = edge_class
        self.edges = tuple(sorted(edge_class))
        self.neighbours = tuple(tuple(sorted(s)) for s in adj)

        triples: list[tuple[str, str, str]] = []
        for i in range(n):
            j = (i + 1) % n
            triples.append(("a", f"u{i}", f"u{j}"))
            triples.append(("b", f"v{i}", f"v{j}"))
            triples.append((f"u{i}", f"v{i}", f"u{j}"))
            triples.append((f"u{j}", f"v{i}", f"v{j}"))
        faces = []
        by_edge: dict[tuple[int, int], list[tuple[int, int, int]]] = {e: [] for e in self.edges}
        for tri in triples:
            if removed_pole in tri:
                continue
            face = tuple(sorted(self.index[v] for v in tri))
            faces.append(face)
            x, y, z = face
            for e in ((x, y), (x, z), (y, z)):
                by_edge[e].append(face)
        self.faces = tuple(faces)
        self._faces_by_edge = {e: tuple(fs) for e, fs in by_edge.items()}

    @staticmethod
    def _key(i: int, j: int) -> tuple[int, int]:
        return (i, j) if i < j else (j, i)

    # -- identity ---------------------------------------------------------

    @property
    def truncated(self) -> bool:
        return self.removed_pole is not None

    @property
    def poles(self) -> tuple[str, ...]:
        return tuple(p for p in ("a", "b") if p != self.removed_pole)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolarTriangulation):
            return NotImplemented
        return (self.n, self.removed_pole) == (other.n, other.removed_pole)

    def __hash__(self) -> int:
        return hash((self.n, self.removed_pole))

    def __repr__(self) -> str:
        if self.removed_pole is None:
            return f"PolarTriangulation(n={self.n})"
        return f"PolarTriangulation(n={self.n}, removed_pole={self.removed_pole!r})"

    @property
    def name(self) -> str:
        return f"G{self.n}" if not self.truncated else f"G{self.n}-{self.removed_pole}"

    # -- lookups ----------------------------------------------------------

    def degree(self, vertex: str) -> int:
        return len(self.neighbours[self.index[vertex]])

    def is_pole(self, i: int) -> bool:
        return self.vertices[i] in ("a", "b")

    def edge_key(self, edge: Iterable[str]) -> tuple[int, int]:
        """Return the internal index pair for an edge given by vertex ids."""
        ends = tuple(edge)
        if len(ends) != 2:
            raise UnknownEdge(ends)
        try:
            key = self._key(self.index[ends[0]], self.index[ends[1]])
        except KeyError:
            raise UnknownEdge(ends) from None
        if key not in self._edge_class:
            raise UnknownEdge(ends)
        return key

    def edge_ids(self, key: tuple[int, int]) -> tuple[str, str]:
        return self.vertices[key[0]], self.vertices[key[1]]

    def class_of(self, key: tuple[int, int]) -> EdgeClass:
        return self._edge_class[key]

    def edges_of_class(self, cls: EdgeClass) -> tuple[tuple[int, int], ...]:
        return tuple(e for e in self.edges if self._edge_class[e] is cls)

    def faces_of(self, key: tuple[int, int]) -> tuple[tuple[int, int, int], ...]:
        return self._faces_by_edge[key]

    def band_position(self, i: int) -> int | None:
        """Position of a ring vertex along the band zigzag u0 v0 u1 v1 ...

        Type1 edges join positions one apart (cyclically, mod 2n), Type2
        edges join positions two apart.  Poles have no position.
        """
        v = self.vertices[i]
        if v[0] == "u":
            return 2 * int(v[1:])
        if v[0] == "v":
            return 2 * int(v[1:]) + 1
        return None

    # -- export -----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "truncated": self.truncated,
            "removed_pole": self.removed_pole,
            "vertices": list(self.vertices),
            "ring_a": list(self.ring_a),
            "ring_b": list(self.ring_b),
            "edges": [
                {"source": x, "target": y, "class": str(self._edge_class[e])}
                for e in self.edges
                for x, y in [self.edge_ids(e)]
            ],
            "faces": [[self.vertices[i] for i in f] for f in self.faces],
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def to_dot(self) -> str:
        lines = [f"graph {self.name.replace('-', '_')} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for e in self.edges:
            x, y = self.edge_ids(e)
            lines.append(f'  "{x}" -- "{y}" [class="{self._edge_class[e]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def _cached(n: int, removed_pole: str | None) -> PolarTriangulation:
    return PolarTriangulation(n, removed_pole)


def build_polar_triangulation(n: int) -> PolarTriangulation:
    """Build G_n; raises :class:`DomainError` for ``n < 5``."""
    if not isinstance(n, int) or n < MIN_RING:
        raise DomainError(f"ring length must be an integer >= {MIN_RING}, got {n!r}")
    return _cached(n, None)


def remove_pole(G: PolarTriangulation, pole: str) -> PolarTriangulation:
    """Delete ``pole`` and its spokes from a full G_n."""
    if G.truncated:
        raise DomainError(f"{G!r} already has a pole removed")
    if pole not in ("a", "b"):
        raise DomainError(f"not a pole: {pole!r}")
    return _cached(G.n, pole)


def build_truncated(n: int) -> PolarTriangulation:
    """Shortcut for H_n = G_n - b."""
    return remove_pole(build_polar_triangulation(n), "b")


def edge_class(G: PolarTriangulation, e: Sequence[str]) -> EdgeClass:
    return G.class_of(G.edge_key(e))


def facial_triangles(G: PolarTriangulation, e: Sequence[str]) -> list[tuple[str, str, str]]:
    """Facial 3-cycles containing ``e``, as vertex-id triples in vertex order."""
    key = G.edge_key(e)
    return [tuple(G.vertices[i] for i in face) for face in G.faces_of(key)]
