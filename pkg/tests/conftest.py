from __future__ import annotations

import itertools

import numpy as np
import pytest

from polarkempe.colouring import COLOUR_PERMUTATIONS, Colouring
from polarkempe.polar_graph import build_polar_triangulation, build_truncated


def transfer_matrix_count(n: int, truncated: bool = False) -> int:
    """Labelled proper 4-colourings counted ring-position by ring-position.

    State = (colour of u_i, colour of v_i).  Independent of the backtracking
    enumerator: it never looks at the adjacency lists.
    """
    total = 0
    pole_b_choices = [None] if truncated else [1, 2, 3, 4]
    for ca in range(1, 5):
        for cb in pole_b_choices:
            states = [
                (x, y)
                for x in range(1, 5)
                for y in range(1, 5)
                if x != ca and x != y and (cb is None or y != cb)
            ]
            T = np.zeros((len(states), len(states)), dtype=np.int64)
            for s, (x, y) in enumerate(states):
                for t, (x2, y2) in enumerate(states):
                    if x != x2 and y != y2 and x2 != y:
                        T[s, t] = 1
            total += int(np.trace(np.linalg.matrix_power(T, n)))
    return total


def brute_canonical(A: Colouring) -> tuple[int, ...]:
    return min(tuple(p[c - 1] for c in A.colours) for p in COLOUR_PERMUTATIONS)


@pytest.fixture(params=[5, 6, 7, 8])
def small_n(request) -> int:
    return request.param


@pytest.fixture
def g6():
    return build_polar_triangulation(6)


@pytest.fixture
def h6():
    return build_truncated(6)


def all_pairs():
    return list(itertools.combinations(range(1, 5), 2))
