"""Graphs, spectral comparisons and hypermatrix inflation invariants.

A graph is inflated to the 0/1 order-3 hypermatrix with ``a[r, g, b] = 1``
exactly when ``r -> g -> b`` is a length-two walk (or, with ``paths``
semantics, a path through three distinct vertices). The Cayley-Hamilton
data of the inflation is invariant under relabelling the graph.
"""
from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx
import numpy as np

from .hypermatrix import Hypermatrix
from .linalg import charpoly, matrix_power
from .powers import ch_analysis
from .product import Convention
from .scalars import EXACT, Backend, format_scalar

__all__ = [
    "Graph",
    "InvariantReport",
    "cospectral",
    "cycle_plus_isolated",
    "distinguish",
    "hypergraph_invariant",
    "inflate",
    "load_graph",
    "random_graph",
    "shifted_walk_relation",
    "star",
    "to_graph6",
]

#: Verdicts returned by :func:`distinguish`.
SAME = "same-invariant"
DIFFERENT = "different-invariant"
NOT_COSPECTRAL = "not-cospectral"

#: Inflations with more than this many entries default to the mod-p backend.
EXACT_ENTRY_LIMIT = 64


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    undirected: bool = False

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range 0..{self.n - 1}")

    @classmethod
    def from_edges(cls, n: int, edges, undirected: bool = False) -> Graph:
        es = set()
        for u, v in edges:
            es.add((u, v))
            if undirected:
                es.add((v, u))
        return cls(n, frozenset(es), undirected)

    def adjacency(self) -> np.ndarray:
        M = np.zeros((self.n, self.n), dtype=object)
        M.fill(0)
        for u, v in self.edges:
            M[u, v] = 1
        return M

    def relabel(self, sigma: Sequence[int]) -> Graph:
        """The graph with vertex ``v`` renamed ``sigma[v]``."""
        if sorted(sigma) != list(range(self.n)):
            raise ValueError(f"{list(sigma)} is not a permutation of range({self.n})")
        return Graph(self.n, frozenset((sigma[u], sigma[v]) for u, v in self.edges), self.undirected)

    def is_symmetric(self) -> bool:
        return all((v, u) in self.edges for u, v in self.edges)


def star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)], undirected=True)


def cycle_plus_isolated(length: int, isolated: int = 1) -> Graph:
    """C_length on vertices 0..length-1 plus ``isolated`` extra vertices."""
    edges = [(i, (i + 1) % length) for i in range(length)]
    return Graph.from_edges(length + isolated, edges, undirected=True)


def _load_edgelist(text: str, undirected: bool, n: int | None) -> Graph:
    pairs = []
    declared = n
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertices" and len(parts) == 2:
            declared = int(parts[1])
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: vertex labels must be integers, got {raw!r}") from None
        if u < 0 or v < 0:
            raise ValueError(f"line {lineno}: negative vertex index")
        pairs.append((u, v))
    seen = set()
    for e in pairs:
        if e in seen:
            warnings.warn(f"duplicate edge {e} ignored", stacklevel=3)
        seen.add(e)
    size = declared if declared is not None else 1 + max((max(e) for e in pairs), default=-1)
    if any(max(e) >= size for e in pairs):
        raise ValueError(f"vertex index out of range for {size} vertices")
    return Graph.from_edges(size, pairs, undirected)


def load_graph(text: str, fmt: str = "edgelist", undirected: bool = False, n: int | None = None) -> Graph:
    """Parse an edge list (``u v`` per line, optional ``vertices N``) or a graph6 string."""
    if fmt == "edgelist":
        return _load_edgelist(text, undirected, n)
    if fmt == "graph6":
        data = text.strip()
        if data.startswith(">>graph6<<"):
            data = data[len(">>graph6<<"):]
        try:
            G = nx.from_graph6_bytes(data.encode("ascii"))
        except (nx.NetworkXError, ValueError, IndexError, UnicodeEncodeError) as exc:
            raise ValueError(f"malformed graph6 string {data!r}: {exc}") from None
        return Graph.from_edges(G.number_of_nodes(), G.edges(), undirected=True)
    raise ValueError(f"unknown graph format {fmt!r}")


def to_graph6(G: Graph) -> str:
    if not G.is_symmetric() or any(u == v for u, v in G.edges):
        raise ValueError("graph6 encodes simple undirected graphs only")
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from((u, v) for u, v in G.edges if u < v)
    return nx.to_graph6_bytes(H, header=False).decode("ascii").strip()


def random_graph(rng, n: int, p: float = 0.5, undirected: bool = True) -> Graph:
    if undirected:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    else:
        edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Graph.from_edges(n, edges, undirected)


# -- spectral side -------------------------------------------------------------


def cospectral(G1: Graph, G2: Graph) -> bool:
    """Identical characteristic polynomials of the adjacency matrices (exact)."""
    if G1.n != G2.n:
        return False
    return charpoly(G1.adjacency()) == charpoly(G2.adjacency())


def shifted_walk_relation(G1: Graph, G2: Graph, tau: int) -> bool:
    """Check ``sum_{0<k<=n+1} alpha_k M^(tau+k) = 0`` for both graphs.

    The ``alpha`` come from the shared characteristic polynomial with
    ``alpha_{n+1} = 1``; returns False when the graphs are not cospectral.
    """
    if tau < 0:
        raise ValueError("tau must be non-negative")
    if not cospectral(G1, G2):
        return False
    alphas = charpoly(G1.adjacency())  # alpha_k = coefficient of x^(k-1)
    for G in (G1, G2):
        M = G.adjacency()
        P = matrix_power(M, tau + 1)
        total = np.zeros_like(P)
        for a in alphas:
            total = total + P * a
            P = np.dot(P, M)
        if any(x != 0 for x in total.ravel()):
            return False
    return True


# -- inflation and invariants ----------------------------------------------------


def inflate(G: Graph, semantics: str = "walks") -> Hypermatrix:
    if semantics not in ("walks", "paths"):
        raise ValueError(f"unknown inflation semantics {semantics!r}")
    n = G.n
    M = G.adjacency()
    arr = np.zeros((n, n, n), dtype=object)
    arr.fill(0)
    for r, g in G.edges:
        for b in range(n):
            if M[g, b] and (semantics == "walks" or len({r, g, b}) == 3):
                arr[r, g, b] = 1
    return Hypermatrix._wrap(arr, EXACT)


def default_backend(n: int) -> Backend:
    return EXACT if n**3 <= EXACT_ENTRY_LIMIT else Backend.modp()


@dataclass(frozen=True)
class InvariantReport:
    """Cayley-Hamilton data of a graph's inflation.

    ``r`` and ``alphas`` describe the first dependent power; ``span`` and
    ``independent`` give the dimension of the whole scanned power sequence
    and which term indices enlarge it.
    """

    graph: str
    n: int
    semantics: str
    formulation: str
    convention: str
    backend: Backend
    r: int
    alphas: tuple[str, ...]
    span: int
    independent: tuple[int, ...]
    scanned: int
    elapsed: float = field(default=0.0, compare=False)

    def key(self) -> tuple:
        """Everything the comparison looks at, cheapest first."""
        return (self.span, self.independent, self.r, self.alphas)

    def settings(self) -> tuple:
        return (self.semantics, self.formulation, self.convention, self.backend)

    def as_record(self, timing: bool = False) -> dict:
        rec = {
            "graph": self.graph,
            "n": self.n,
            "semantics": self.semantics,
            "formulation": self.formulation,
            "convention": self.convention,
            "backend": self.backend.describe(),
            "r": self.r,
            "alphas": list(self.alphas),
            "span": self.span,
            "independent": list(self.independent),
            "scanned": self.scanned,
        }
        if timing:
            rec["elapsed_s"] = round(self.elapsed, 6)
        return rec


def hypergraph_invariant(
    G: Graph,
    semantics: str = "walks",
    formulation: str = "second",
    convention: Convention | str = Convention.LITERAL,
    backend: Backend | None = None,
    name: str | None = None,
) -> InvariantReport:
    convention = Convention(convention)
    backend = default_backend(G.n) if backend is None else backend
    start = time.perf_counter()
    A = inflate(G, semantics).to_backend(backend)
    vec, res = ch_analysis(A, formulation, backend, convention, full_span=True)
    return InvariantReport(
        graph=name if name is not None else f"graph(n={G.n}, m={len(G.edges)})",
        n=G.n,
        semantics=semantics,
        formulation=formulation,
        convention=convention.value,
        backend=backend,
        r=vec.r,
        alphas=tuple(format_scalar(a) for a in vec.alphas),
        span=res.span,
        independent=tuple(res.independent),
        scanned=res.scanned,
        elapsed=time.perf_counter() - start,
    )


def distinguish(G1: Graph, G2: Graph, names: tuple[str, str] | None = None, **settings):
    """Return ``(verdict, report1, report2)``; reports are None when not cospectral."""
    if not cospectral(G1, G2):
        return NOT_COSPECTRAL, None, None
    n1, n2 = names if names is not None else (None, None)
    if "backend" not in settings or settings["backend"] is None:
        settings["backend"] = default_backend(G1.n)
    rep1 = hypergraph_invariant(G1, name=n1, **settings)
    rep2 = hypergraph_invariant(G2, name=n2, **settings)
    verdict = SAME if rep1.key() == rep2.key() else DIFFERENT
    return verdict, rep1, rep2
