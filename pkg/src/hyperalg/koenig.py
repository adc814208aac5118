"""König hypergraphs of order-3 hypermatrices and tetrahedral complex counts.

``H(A)`` has red vertices for axis 0, green for axis 1 and blue for axis 2;
the hyperedge ``(R_i, G_j, B_k)`` carries weight ``A[i, j, k]``. Composing
three hypergraphs identifies red/green/blue vertices pairwise and sums over
the remaining ("white") vertices, which reproduces the BM product without
going through it.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .hypermatrix import Hypermatrix, ShapeError
from .powers import LEAF, TernaryTree, evaluate_tree
from .product import bm_product
from .scalars import EXACT, Backend

__all__ = [
    "GluingVariant",
    "KoenigHypergraph",
    "compose",
    "count_glued",
    "count_k_complexes",
    "count_tetrahedra",
    "from_hypermatrix",
    "k_complex_tree",
    "to_hypermatrix",
]


@dataclass(frozen=True)
class KoenigHypergraph:
    red: int
    green: int
    blue: int
    weights: dict = field(default_factory=dict)
    backend: Backend = EXACT

    def weight(self, r: int, g: int, b: int):
        return self.weights.get((r, g, b), 0)

    @property
    def sizes(self) -> tuple[int, int, int]:
        return (self.red, self.green, self.blue)

    def hyperedges(self) -> list[tuple[int, int, int]]:
        return sorted(self.weights)


def from_hypermatrix(A: Hypermatrix) -> KoenigHypergraph:
    if A.order != 3:
        raise ShapeError(f"König hypergraphs need order-3 hypermatrices, got order {A.order}")
    weights = {idx: x for idx, x in np.ndenumerate(A.data) if x != 0}
    return KoenigHypergraph(*A.dims, weights=weights, backend=A.backend)


def to_hypermatrix(H: KoenigHypergraph) -> Hypermatrix:
    arr = np.empty(H.sizes, dtype=object)
    arr.fill(0)
    for idx, w in H.weights.items():
        arr[idx] = w
    return Hypermatrix(arr, H.backend)


def compose(H1: KoenigHypergraph, H2: KoenigHypergraph, H3: KoenigHypergraph) -> KoenigHypergraph:
    """Glue three hypergraphs by vertex identification and sum out the white vertices."""
    if H1.red != H2.red:
        raise ShapeError(f"(H1, H2): red counts differ, {H1.red} vs {H2.red}")
    if H2.green != H3.green:
        raise ShapeError(f"(H2, H3): green counts differ, {H2.green} vs {H3.green}")
    if H1.blue != H3.blue:
        raise ShapeError(f"(H1, H3): blue counts differ, {H1.blue} vs {H3.blue}")
    if not H1.green == H2.blue == H3.red:
        raise ShapeError(
            f"white vertex counts differ: H1 green {H1.green}, H2 blue {H2.blue}, H3 red {H3.red}"
        )
    if not H1.backend == H2.backend == H3.backend:
        raise ShapeError("hypergraphs carry different scalar backends")

    # index hyperedges by the vertices shared with the output triple
    by_rb = defaultdict(list)  # H1: (r, b) -> [(w, weight)]
    for (r, w, b), x in H1.weights.items():
        by_rb[r, b].append((w, x))
    by_rg = defaultdict(dict)  # H2: (r, g) -> {w: weight}
    for (r, g, w), x in H2.weights.items():
        by_rg[r, g][w] = x
    by_gb = defaultdict(dict)  # H3: (g, b) -> {w: weight}
    for (w, g, b), x in H3.weights.items():
        by_gb[g, b][w] = x

    p = H1.backend.modulus
    out = {}
    for (r, b), first in by_rb.items():
        for g in range(H2.green):
            second = by_rg.get((r, g))
            third = by_gb.get((g, b))
            if not second or not third:
                continue
            total = 0
            for w, x in first:
                y = second.get(w)
                z = third.get(w)
                if y is not None and z is not None:
                    total += x * y * z
            if p is not None:
                total %= p
            if total != 0:
                out[r, g, b] = total
    return KoenigHypergraph(H1.red, H2.green, H1.blue, out, H1.backend)


def _require_binary_cube(A: Hypermatrix) -> int:
    if A.order != 3 or not A.is_cubic:
        raise ShapeError(f"expected a cubic order-3 hypermatrix, got dims {A.dims}")
    if not A.is_binary():
        raise ValueError("counting needs a 0/1 hypermatrix")
    return A.side


def count_tetrahedra(A: Hypermatrix) -> int:
    """Tetrahedra built from hyperedges of H(A) over increasing triples r < g < b."""
    n = _require_binary_cube(A)
    cube = bm_product([A, A, A]).data
    return int(sum(cube[r, g, b] for r in range(n) for g in range(r + 1, n) for b in range(g + 1, n)))


class GluingVariant(str, Enum):
    """Which slot of the outer product holds the inner cube.

    ``first`` glues the two tetrahedra at a face ``(r, w, b)``, ``second`` at
    ``(r, g, w)`` and ``third`` at ``(w, g, b)``.
    """

    FIRST = "first"
    SECOND = "second"
    THIRD = "third"

    @property
    def tree(self) -> TernaryTree:
        cube = TernaryTree((LEAF, LEAF, LEAF))
        slots = [LEAF, LEAF, LEAF]
        slots[["first", "second", "third"].index(self.value)] = cube
        return TernaryTree(tuple(slots))


def _check_index(n: int, r: int, g: int, b: int) -> None:
    for name, v in zip("rgb", (r, g, b)):
        if not 0 <= v < n:
            raise IndexError(f"index {name}={v} outside range({n})")


def count_glued(A: Hypermatrix, variant: GluingVariant | str, r: int, g: int, b: int) -> int:
    """Two-tetrahedron complexes over (r, g, b) glued at the variant's face."""
    n = _require_binary_cube(A)
    variant = GluingVariant(variant)
    _check_index(n, r, g, b)
    return int(evaluate_tree(A, variant.tree).data[r, g, b])


def k_complex_tree(k: int) -> TernaryTree:
    """The canonical power with ``k`` interior vertices: ``Prod(A, A, Prod(A, A, ...))``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    # right-nesting keeps a leaf in the earliest slots, i.e. the preorder-minimal tree
    tree = LEAF
    for _ in range(k):
        tree = TernaryTree((LEAF, LEAF, tree))
    return tree


def count_k_complexes(A: Hypermatrix, k: int, r: int, g: int, b: int) -> int:
    """k-tetrahedral complexes spanning (r, g, b): k interior vertices beyond the triangle."""
    n = _require_binary_cube(A)
    if not 1 <= k <= n**3 + 1:
        raise ValueError(f"k={k} outside the supported range 1..{n**3 + 1}")
    _check_index(n, r, g, b)
    return int(evaluate_tree(A, k_complex_tree(k)).data[r, g, b])
