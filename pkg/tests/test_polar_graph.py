import json
from collections import Counter

import networkx as nx
import pytest

from polarkempe.errors import DomainError, UnknownEdge
from polarkempe.polar_graph import (
    EdgeClass,
    build_polar_triangulation,
    build_truncated,
    edge_class,
    facial_triangles,
    remove_pole,
)

RANGE = range(5, 16)


def test_g5_counts():
    G = build_polar_triangulation(5)
    assert len(G.vertices) == 12
    assert len(G.edges) == 30
    assert G.degree("a") == G.degree("b") == 5
    assert sum(1 for v in G.vertices if v not in "ab" and G.degree(v) == 5) == 10


def test_g6_poles():
    G = build_polar_triangulation(6)
    assert G.degree("a") == G.degree("b") == 6
    with pytest.raises(UnknownEdge):
        G.edge_key(("a", "b"))


@pytest.mark.parametrize("n", [4, 0, -3])
def test_small_ring_rejected(n):
    with pytest.raises(DomainError):
        build_polar_triangulation(n)


@pytest.mark.parametrize("n", RANGE)
def test_full_graph_is_triangulation(n):
    G = build_polar_triangulation(n)
    assert len(G.vertices) == 2 * n + 2
    assert len(G.edges) == 6 * n == 3 * len(G.vertices) - 6
    for v in G.vertices:
        assert G.degree(v) == (n if v in ("a", "b") else 5)
    for e in G.edges:
        assert len(G.faces_of(e)) == 2
    counts = Counter(G.class_of(e) for e in G.edges)
    assert counts == {EdgeClass.TYPE1: 2 * n, EdgeClass.TYPE2: 2 * n, EdgeClass.SPOKE: 2 * n}


@pytest.mark.parametrize("n", RANGE)
def test_planar_and_faces_are_triangles(n):
    G = build_polar_triangulation(n)
    g = nx.Graph([G.edge_ids(e) for e in G.edges])
    assert nx.check_planarity(g)[0]
    for face in G.faces:
        x, y, z = (G.vertices[i] for i in face)
        assert g.has_edge(x, y) and g.has_edge(y, z) and g.has_edge(x, z)
    # Euler: V - E + F = 2
    assert len(G.vertices) - len(G.edges) + len(G.faces) == 2


@pytest.mark.parametrize("n", RANGE)
def test_edge_classes_match_rings(n):
    G = build_polar_triangulation(n)
    ra, rb = set(G.ring_a), set(G.ring_b)
    for e in G.edges:
        x, y = G.edge_ids(e)
        cls = G.class_of(e)
        if "a" in (x, y) or "b" in (x, y):
            assert cls is EdgeClass.SPOKE
        elif {x, y} <= ra or {x, y} <= rb:
            assert cls is EdgeClass.TYPE2
        else:
            assert cls is EdgeClass.TYPE1
            assert len({x, y} & ra) == 1 and len({x, y} & rb) == 1


@pytest.mark.parametrize("n", RANGE)
def test_type1_edges_alternate_around_band(n):
    G = build_polar_triangulation(n)
    for i in range(n):
        assert edge_class(G, (f"u{i}", f"v{i}")) is EdgeClass.TYPE1
        assert edge_class(G, (f"u{(i + 1) % n}", f"v{i}")) is EdgeClass.TYPE1
    for e in G.edges_of_class(EdgeClass.TYPE1):
        x, y = (G.band_position(i) for i in e)
        assert (x - y) % (2 * n) in (1, 2 * n - 1)
    for e in G.edges_of_class(EdgeClass.TYPE2):
        x, y = (G.band_position(i) for i in e)
        assert (x - y) % (2 * n) in (2, 2 * n - 2)


def test_edge_class_examples():
    G = build_polar_triangulation(6)
    assert edge_class(G, ("u0", "v0")) is EdgeClass.TYPE1
    assert edge_class(G, ("u0", "u1")) is EdgeClass.TYPE2
    assert edge_class(G, ("a", "u3")) is EdgeClass.SPOKE
    assert edge_class(G, ("v0", "u0")) is EdgeClass.TYPE1
    with pytest.raises(UnknownEdge):
        edge_class(G, ("u0", "u3"))
    with pytest.raises(UnknownEdge):
        edge_class(G, ("u0", "zz"))


def test_facial_triangle_examples():
    G = build_polar_triangulation(6)
    assert {frozenset(t) for t in facial_triangles(G, ("u1", "v0"))} == {
        frozenset({"u0", "v0", "u1"}),
        frozenset({"u1", "v0", "v1"}),
    }
    assert {frozenset(t) for t in facial_triangles(G, ("a", "u0"))} == {
        frozenset({"a", "u5", "u0"}),
        frozenset({"a", "u0", "u1"}),
    }
    H = build_truncated(6)
    assert len(facial_triangles(H, ("v0", "v1"))) == 1
    with pytest.raises(UnknownEdge):
        facial_triangles(H, ("b", "v0"))


def test_remove_pole_examples():
    H = remove_pole(build_polar_triangulation(5), "b")
    assert len(H.vertices) == 11 and len(H.edges) == 25
    H7 = remove_pole(build_polar_triangulation(7), "b")
    assert all(H7.degree(v) == 4 for v in H7.ring_b)
    with pytest.raises(DomainError):
        remove_pole(build_polar_triangulation(5), "u0")
    with pytest.raises(DomainError):
        remove_pole(H, "a")


@pytest.mark.parametrize("n", RANGE)
def test_truncated_invariants(n):
    G = build_polar_triangulation(n)
    H = remove_pole(G, "b")
    assert H.truncated and "b" not in H.index
    assert len(H.vertices) == 2 * n + 1 and len(H.edges) == 5 * n
    assert H.degree("a") == n
    assert all(H.degree(u) == 5 for u in H.ring_a)
    assert all(H.degree(v) == 4 for v in H.ring_b)
    assert H.ring_a == G.ring_a and H.ring_b == G.ring_b
    for e in H.edges:
        ids = H.edge_ids(e)
        assert H.class_of(e) is G.class_of(G.edge_key(ids))
        faces = len(H.faces_of(e))
        if H.class_of(e) is EdgeClass.TYPE2 and set(ids) <= set(H.ring_b):
            assert faces == 1
        else:
            assert faces == 2


def test_removing_a_gives_mirror_image():
    Ga = remove_pole(build_polar_triangulation(6), "a")
    assert Ga.poles == ("b",)
    assert all(Ga.degree(u) == 4 for u in Ga.ring_a)


def test_equality_and_caching():
    assert build_polar_triangulation(7) is build_polar_triangulation(7)
    assert build_truncated(7) == remove_pole(build_polar_triangulation(7), "b")
    assert build_truncated(7) != build_polar_triangulation(7)


def test_exports_are_stable():
    G = build_polar_triangulation(5)
    dot = G.to_dot()
    assert dot.count(" -- ") == 30
    assert sum(1 for line in dot.splitlines() if line.strip().endswith('";') and "--" not in line) == 12
    assert '"u0" -- "v0" [class="Type1"]' in dot or '"u0" -- "v0"' in dot
    data = json.loads(G.to_json_text())
    assert len(data["vertices"]) == 12 and len(data["edges"]) == 30
    assert {e["class"] for e in data["edges"]} == {"Type1", "Type2", "Spoke"}
    assert G.to_dot() == build_polar_triangulation(5).to_dot()
