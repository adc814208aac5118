"""Witness hypermatrices whose powers span the full n**3-dimensional space.

Each fixture is given by its row-column slices ``A[:, :, k]``. The
``second`` set was originally displayed with slices numbered from 1; it is
stored here with ``k`` starting at 0 like everything else. The same data
ships as ``.hmx`` files next to this module.
"""
from __future__ import annotations

import hashlib
from importlib import resources

from .hypermatrix import Hypermatrix, from_slices, loads

FIRST_SLICES = {
    "A0": [[[1]]],
    "A1": [
        [[1, 1], [-1, 1]],
        [[1, 1], [1, 1]],
    ],
    "A2": [
        [[-1, -1, 45], [0, -8, -1], [3, -79, 1]],
        [[-3, -1, 2], [-49, 10, -3], [-6, 2, -1]],
        [[-1, 2, -1], [-1, -1, 0], [-1, 0, -1]],
    ],
    "A3": [
        [[2, 0, 2, -1], [-3, 1, 1, 2], [2, -1, 1, 6], [-1, -3, 0, 20]],
        [[0, 0, -1, 3], [0, -1, -20, -1], [2, 1, 2, -1], [3, -1, 1, 0]],
        [[1, 1, 0, -3], [0, 1, 0, 1], [6, -1, -1, 0], [-2, -2, -5, 2]],
        [[-7, -2, -1, 11], [-1, -1, 3, 78], [-3, 3, 0, -1], [9, 0, 0, 2]],
    ],
}

SECOND_SLICES = {
    "A0": [[[1]]],
    "A1": [
        [[-7, -7], [1, -1]],
        [[2, 4], [1, -2]],
    ],
    "A2": [
        [[-1, 18, 0], [-3, 0, 5], [2, -1, 2]],
        [[0, -5, -2], [-3, 1, 1], [1, -2, 0]],
        [[-1, 0, 1], [-1, 2, -14], [6, -3, 1]],
    ],
    "A3": [
        [[18, 0, 0, 1], [0, 3, -1, -1], [0, 52, 4, 5], [-1, -1, -4, 0]],
        [[1, 0, -2, 8], [-2, 1, 1, 1], [4, -2, 6, -2], [-1, -1, 1, -2]],
        [[10, -1, 0, -1], [1, 0, 1, 3], [1, -1, 0, 0], [0, 1, 13, -1]],
        [[4, 12, 2, 0], [-1, -1, -3, 1], [-1, 1, 0, 0], [155, -1, 0, 0]],
    ],
}

NAMES = tuple(f"{family}_A{i}" for family in ("first", "second") for i in range(4))


def build(name: str) -> Hypermatrix:
    """Construct a fixture from the slice tables above."""
    family, label = name.split("_")
    table = {"first": FIRST_SLICES, "second": SECOND_SLICES}[family]
    return from_slices(table[label])


def fixture_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files(__package__).joinpath("fixtures", f"{name}.hmx").read_text(encoding="ascii")


def load_fixture(name: str) -> Hypermatrix:
    return loads(fixture_text(name))


#: The smallest cospectral pair, as undirected edge lists.
GRAPH_NAMES = ("star_k14", "c4_plus_k1")


def graph_fixture_text(name: str) -> str:
    if name not in GRAPH_NAMES:
        raise KeyError(f"unknown graph fixture {name!r}; choose from {', '.join(GRAPH_NAMES)}")
    return resources.files(__package__).joinpath("fixtures", f"{name}.edges").read_text(encoding="ascii")


def load_graph_fixture(name: str):
    from .graphs import load_graph

    return load_graph(graph_fixture_text(name), "edgelist", undirected=True)


def fixture_hash() -> str:
    h = hashlib.sha256()
    for name in NAMES:
        h.update(name.encode())
        h.update(fixture_text(name).encode())
    for name in GRAPH_NAMES:
        h.update(name.encode())
        h.update(graph_fixture_text(name).encode())
    return h.hexdigest()[:12]
