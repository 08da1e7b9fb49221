import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_canonical, transfer_matrix_count
from polarkempe.colouring import (
    COLOUR_PERMUTATIONS,
    Colouring,
    are_equal,
    canonical_word,
    canonicalize,
    colourings_to_csv,
    distinct_colourings,
    enumerate_proper_colourings,
    is_proper,
    normalize_poles,
    orbit,
)
from polarkempe.errors import DomainError
from polarkempe.invariants import construct_Q
from polarkempe.polar_graph import build_polar_triangulation, build_truncated


@pytest.mark.parametrize("n", range(5, 11))
def test_labelled_count_matches_transfer_matrix(n):
    G = build_polar_triangulation(n)
    labelled = enumerate_proper_colourings(G)
    assert len(labelled) == transfer_matrix_count(n)
    assert len(set(labelled)) == len(labelled)
    assert len(distinct_colourings(G)) * 24 == len(labelled)


@pytest.mark.parametrize("n", range(5, 10))
def test_truncated_count_matches_transfer_matrix(n):
    H = build_truncated(n)
    assert len(enumerate_proper_colourings(H)) == transfer_matrix_count(n, truncated=True)


def test_spot_counts():
    assert len(enumerate_proper_colourings(build_polar_triangulation(5))) == 240
    assert len(enumerate_proper_colourings(build_polar_triangulation(6))) == 480
    assert len(distinct_colourings(build_polar_triangulation(8))) == 48


def test_every_enumerated_colouring_is_proper():
    G = build_polar_triangulation(7)
    for A in enumerate_proper_colourings(G):
        for x, y in G.edges:
            assert A.colours[x] != A.colours[y]


def test_improper_colouring_rejected():
    G = build_polar_triangulation(5)
    with pytest.raises(DomainError):
        Colouring(G, [1] * len(G.vertices))
    with pytest.raises(DomainError):
        Colouring(G, [1, 2])
    A = distinct_colourings(G)[0]
    bad = list(A.colours)
    bad[0] = 5
    with pytest.raises(DomainError):
        Colouring(G, bad)
    clash = list(A.colours)
    clash[G.index["u0"]] = clash[G.index["a"]]
    assert not is_proper(G, clash)
    assert is_proper(G, A.colours)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_canonical_form_is_lex_least_permutation(n):
    for A in enumerate_proper_colourings(build_polar_triangulation(n)):
        assert canonicalize(A).colours == brute_canonical(A)


def test_canonical_form_properties():
    G = build_polar_triangulation(6)
    for A in enumerate_proper_colourings(G):
        C = canonicalize(A)
        assert canonicalize(C) == C
        assert C["a"] == 1
        assert are_equal(A, C)
    assert len({canonicalize(A) for A in enumerate_proper_colourings(build_polar_triangulation(5))}) == 10


def test_are_equal_over_all_permutations():
    G = build_polar_triangulation(6)
    A = distinct_colourings(G)[3]
    assert are_equal(A, A)
    for p in COLOUR_PERMUTATIONS:
        assert are_equal(A, A.permuted(p))
    assert len(orbit(A)) == 24


def test_q_differs_from_split_pole_colourings():
    Q = construct_Q(6)
    for A in distinct_colourings(Q.host):
        if A["a"] != A["b"]:
            assert not are_equal(Q, A)


def test_are_equal_rejects_host_mismatch():
    A = distinct_colourings(build_polar_triangulation(5))[0]
    B = distinct_colourings(build_polar_triangulation(6))[0]
    with pytest.raises(DomainError):
        are_equal(A, B)


def test_normalize_poles():
    G = build_polar_triangulation(7)
    for A in enumerate_proper_colourings(G)[:2000]:
        N = normalize_poles(A)
        assert are_equal(N, A)
        assert N["a"] == 1
        assert N["b"] == (1 if A["a"] == A["b"] else 2)
        candidates = [
            A.permuted(p).colours
            for p in COLOUR_PERMUTATIONS
            if A.permuted(p)["a"] == 1 and A.permuted(p)["b"] == N["b"]
        ]
        assert N.colours == min(candidates)
    Q = construct_Q(6)
    assert normalize_poles(Q)["a"] == normalize_poles(Q)["b"] == 1
    with pytest.raises(DomainError):
        normalize_poles(distinct_colourings(build_truncated(6))[0])


def test_pole_colours_3_and_4_normalise_to_1_and_2():
    G = build_polar_triangulation(6)
    A = next(A for A in enumerate_proper_colourings(G) if A["a"] == 3 and A["b"] == 4)
    N = normalize_poles(A)
    assert (N["a"], N["b"]) == (1, 2)


@settings(max_examples=200, deadline=None)
@given(
    n=st.integers(5, 9),
    idx=st.integers(0, 10_000),
    perm=st.sampled_from(COLOUR_PERMUTATIONS),
)
def test_canonical_word_is_permutation_invariant(n, idx, perm):
    cols = distinct_colourings(build_polar_triangulation(n))
    A = cols[idx % len(cols)]
    B = A.permuted(perm)
    assert canonical_word(B.colours) == A.colours
    assert Colouring.unpack(A.host, B.packed).colours == B.colours


def test_csv_export():
    G = build_polar_triangulation(5)
    text = colourings_to_csv(distinct_colourings(G), {"tag": list(range(10))})
    lines = text.strip().splitlines()
    assert lines[0].split(",") == ["id", "tag", *G.vertices]
    assert len(lines) == 11


def test_enumeration_order_is_deterministic():
    G = build_polar_triangulation(6)
    first = [A.colours for A in enumerate_proper_colourings(G)]
    assert first == sorted(first)
    assert [A.word for A in distinct_colourings(G)] == sorted(A.word for A in distinct_colourings(G))
    assert list(itertools.islice(first, 1))[0][0] == 1
