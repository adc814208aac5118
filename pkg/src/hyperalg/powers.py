"""Hypermatrix powers and Cayley-Hamilton coefficients.

Two families of powers of a cubic order-3 hypermatrix ``A``:

* ``first``: every ternary parenthesization of BM products of copies of
  ``A``. Only odd degrees occur; degree ``2k+1`` has ``C(3k, k)/(2k+1)``
  distinct parenthesizations.
* ``second``: the sequence ``A^[0] = Delta``, ``A^[1] = A`` and
  ``A^[k+2] = Prod_{A^[k]}(A, A, A)`` (general product with background
  ``A^[k]``).

Terms are generated in a canonical order and the first term lying in the
span of its predecessors is expressed as a combination of them. Those
combination coefficients are the Cayley-Hamilton coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .hypermatrix import Hypermatrix, ShapeError, delta
from .linalg import IncrementalBasis, rank, solve_combination
from .product import Convention, bm_product, general_bm_product
from .scalars import EXACT, Backend, format_scalar

__all__ = [
    "CoefficientVector",
    "SequenceAnalysis",
    "TernaryTree",
    "analyze_terms",
    "ch_coefficients",
    "default_max_degree",
    "enumerate_powers_first",
    "enumerate_trees",
    "evaluate_tree",
    "fuss_catalan_closed",
    "fuss_catalan_count",
    "matrix_ch_coefficients",
    "power_sequence_second",
    "sequence_degree",
    "span_dimension",
]


# -- parenthesization trees --------------------------------------------------


@dataclass(frozen=True)
class TernaryTree:
    """A parenthesized BM power: a leaf (``A`` itself) or a product of three subtrees."""

    children: tuple[TernaryTree, TernaryTree, TernaryTree] | None = None

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    @property
    def degree(self) -> int:
        return 1 if self.children is None else sum(c.degree for c in self.children)

    @property
    def preorder(self) -> str:
        """``A`` for a leaf, ``P`` followed by the children's strings for a product."""
        if self.children is None:
            return "A"
        return "P" + "".join(c.preorder for c in self.children)

    def sort_key(self) -> tuple[int, str]:
        return (self.degree, self.preorder)

    def __lt__(self, other: TernaryTree) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.children is None:
            return "A"
        return "Prod(" + ",".join(str(c) for c in self.children) + ")"

    @classmethod
    def from_preorder(cls, text: str) -> TernaryTree:
        def walk(pos: int) -> tuple[TernaryTree, int]:
            if pos >= len(text):
                raise ValueError(f"truncated tree string {text!r}")
            if text[pos] == "A":
                return LEAF, pos + 1
            if text[pos] != "P":
                raise ValueError(f"unexpected {text[pos]!r} at offset {pos} in {text!r}")
            kids = []
            pos += 1
            for _ in range(3):
                kid, pos = walk(pos)
                kids.append(kid)
            return cls(tuple(kids)), pos

        tree, end = walk(0)
        if end != len(text):
            raise ValueError(f"trailing characters in tree string {text!r}")
        return tree


LEAF = TernaryTree()


def _check_odd(degree: int) -> None:
    if degree < 1 or degree % 2 == 0:
        raise ValueError(f"third order powers only exist in odd degrees >= 1, got {degree}")


@lru_cache(maxsize=None)
def fuss_catalan_count(degree: int) -> int:
    """Number of distinct degree-``degree`` powers, by the ternary convolution recurrence."""
    _check_odd(degree)
    if degree == 1:
        return 1
    total = 0
    for i in range(1, degree, 2):
        for j in range(1, degree - i, 2):
            rest = degree - i - j
            if rest >= 1 and rest % 2 == 1:
                total += fuss_catalan_count(i) * fuss_catalan_count(j) * fuss_catalan_count(rest)
    return total


def fuss_catalan_closed(degree: int) -> int:
    _check_odd(degree)
    k = (degree - 1) // 2
    return comb(3 * k, k) // (2 * k + 1)


@lru_cache(maxsize=None)
def enumerate_trees(degree: int) -> tuple[TernaryTree, ...]:
    """All trees of one odd degree, in canonical (preorder-lexicographic) order."""
    _check_odd(degree)
    if degree == 1:
        return (LEAF,)
    out = []
    for i in range(1, degree, 2):
        for j in range(1, degree - i, 2):
            rest = degree - i - j
            if rest < 1 or rest % 2 == 0:
                continue
            for a in enumerate_trees(i):
                for b in enumerate_trees(j):
                    for c in enumerate_trees(rest):
                        out.append(TernaryTree((a, b, c)))
    out.sort(key=TernaryTree.sort_key)
    return tuple(out)


def _require_cubic3(A: Hypermatrix) -> None:
    if A.order != 3 or not A.is_cubic:
        raise ShapeError(f"expected a cubic order-3 hypermatrix, got dims {A.dims}")


def evaluate_tree(A: Hypermatrix, tree: TernaryTree, cache: dict | None = None) -> Hypermatrix:
    if cache is None:
        cache = {}
    if tree.is_leaf:
        return A
    hit = cache.get(tree)
    if hit is None:
        hit = bm_product([evaluate_tree(A, c, cache) for c in tree.children])
        cache[tree] = hit
    return hit


def _iter_first(A: Hypermatrix, max_degree: int | None = None) -> Iterator[tuple[TernaryTree, Hypermatrix]]:
    cache: dict = {}
    degree = 1
    while max_degree is None or degree <= max_degree:
        for tree in enumerate_trees(degree):
            yield tree, evaluate_tree(A, tree, cache)
        degree += 2


def enumerate_powers_first(A: Hypermatrix, max_degree: int) -> list[tuple[TernaryTree, Hypermatrix]]:
    """Every distinct parenthesized power of ``A`` up to ``max_degree``, canonically ordered."""
    _require_cubic3(A)
    _check_odd(max_degree)
    return list(_iter_first(A, max_degree))


def default_max_degree(n: int) -> int:
    """Smallest odd degree whose cumulative power count reaches n**3."""
    degree, total = 1, 1
    while total < n**3:
        degree += 2
        total += fuss_catalan_count(degree)
    return degree


def _iter_second(A: Hypermatrix, convention: Convention) -> Iterator[Hypermatrix]:
    terms = [delta(3, A.side, A.backend), A]
    yield terms[0]
    yield terms[1]
    while True:
        nxt = general_bm_product([A, A, A], terms[-2], convention)
        terms.append(nxt)
        yield nxt


def power_sequence_second(
    A: Hypermatrix, count: int, convention: Convention | str = Convention.LITERAL
) -> list[Hypermatrix]:
    """Terms ``A^[0] .. A^[count-1]`` of the background-recurrence sequence."""
    _require_cubic3(A)
    if count < 1:
        raise ValueError("count must be at least 1")
    it = _iter_second(A, Convention(convention))
    return [next(it) for _ in range(count)]


def sequence_degree(k: int) -> int:
    """Polynomial degree (in the entries of A) of the k-th second-formulation term."""
    if k < 0:
        raise ValueError("term index must be non-negative")
    return k // 2 * 3 + k % 2


def span_dimension(terms: Sequence[Hypermatrix]) -> int:
    """Rank of the row-major flattenings of ``terms``."""
    if not terms:
        return 0
    dims, backend = terms[0].dims, terms[0].backend
    for t in terms:
        if t.dims != dims or t.backend != backend:
            raise ShapeError("span_dimension needs terms with equal dims and backend")
    return rank([t.flatten() for t in terms], backend)


# -- Cayley-Hamilton coefficients ---------------------------------------------


@dataclass(frozen=True)
class CoefficientVector:
    """``term_r = sum_{k<r} alphas[k] * term_k`` with the first r terms independent."""

    formulation: str
    backend: Backend
    convention: str | None
    r: int
    alphas: tuple
    labels: tuple[str, ...] = ()

    def alpha_strings(self) -> list[str]:
        return [format_scalar(a) for a in self.alphas]

    def as_record(self) -> dict:
        rec = {
            "formulation": self.formulation,
            "convention": self.convention,
            "backend": self.backend.describe(),
            "r": self.r,
            "alphas": self.alpha_strings(),
        }
        if self.labels:
            rec["terms"] = list(self.labels)
        return rec


@dataclass
class SequenceAnalysis:
    """Outcome of scanning a term sequence for linear dependences."""

    r: int | None = None
    alphas: list = field(default_factory=list)
    span: int = 0
    independent: list[int] = field(default_factory=list)
    scanned: int = 0


def analyze_terms(
    terms: Iterable[Sequence], backend: Backend, limit: int, stop_at_first: bool = True
) -> SequenceAnalysis:
    """Scan up to ``limit`` flattened terms, locating the first dependent one.

    With ``stop_at_first`` false the scan continues to ``limit`` terms so the
    full span dimension and the indices of independent terms are known too.
    """
    basis = IncrementalBasis(backend)
    kept: list[Sequence] = []
    out = SequenceAnalysis()
    for index, vec in enumerate(terms):
        if index >= limit:
            break
        out.scanned = index + 1
        if basis.add(vec):
            if out.r is None:
                kept.append(vec)
            continue
        if out.r is None:
            out.r = index
            out.alphas = solve_combination(kept, vec, backend)
            if stop_at_first:
                break
    out.span = basis.rank
    out.independent = list(basis.accepted)
    return out


def _term_stream(A: Hypermatrix, formulation: str, convention: Convention):
    if formulation == "first":
        for tree, term in _iter_first(A):
            yield tree.preorder, term
    elif formulation == "second":
        for k, term in enumerate(_iter_second(A, convention)):
            yield f"A^[{k}]", term
    else:
        raise ValueError(f"unknown formulation {formulation!r}")


def term_limit(n: int, formulation: str) -> int:
    """How many terms to scan so that a dependence is guaranteed to appear.

    For ``first`` whole degree classes are generated until the cumulative
    count exceeds n**3 + 1.
    """
    if formulation == "second":
        return n**3 + 2
    degree, total = 1, 1
    while total <= n**3 + 1:
        degree += 2
        total += fuss_catalan_count(degree)
    return total


def ch_analysis(
    A: Hypermatrix,
    formulation: str = "second",
    backend: Backend | None = None,
    convention: Convention | str = Convention.LITERAL,
    full_span: bool = False,
) -> tuple[CoefficientVector, SequenceAnalysis]:
    _require_cubic3(A)
    convention = Convention(convention)
    if backend is not None:
        A = A.to_backend(backend)
    backend = A.backend
    limit = term_limit(A.side, formulation)
    labels: list[str] = []

    def flat():
        for label, term in _term_stream(A, formulation, convention):
            labels.append(label)
            yield term.flatten()

    res = analyze_terms(flat(), backend, limit, stop_at_first=not full_span)
    if res.r is None:
        raise ArithmeticError(f"no linear dependence among the first {limit} terms")
    vec = CoefficientVector(
        formulation=formulation,
        backend=backend,
        convention=convention.value if formulation == "second" else None,
        r=res.r,
        alphas=tuple(res.alphas),
        labels=tuple(labels[: res.r + 1]) if formulation == "first" else (),
    )
    return vec, res


def ch_coefficients(
    A: Hypermatrix,
    formulation: str = "second",
    backend: Backend | None = None,
    convention: Convention | str = Convention.LITERAL,
) -> CoefficientVector:
    """Coefficients expressing the first dependent power of ``A`` over its predecessors.

    For the ``first`` formulation the record also lists the preorder labels of
    the terms involved, since the coefficient order follows the tree order.
    """
    return ch_analysis(A, formulation, backend, convention)[0]


def matrix_ch_coefficients(M, backend: Backend = EXACT) -> CoefficientVector:
    """Minimal linear dependence among I, M, M^2, ... (``M^r = sum alphas[k] M^k``)."""
    M = np.array(M, dtype=object)
    n = M.shape[0]
    if M.ndim != 2 or M.shape != (n, n):
        raise ShapeError(f"expected a square matrix, got shape {M.shape}")
    M = np.vectorize(backend.coerce, otypes=[object])(M)

    def powers():
        P = np.zeros((n, n), dtype=object)
        for i in range(n):
            P[i, i] = 1
        while True:
            yield P.ravel().tolist()
            P = np.dot(P, M)
            if not backend.exact:
                P = P % backend.modulus

    res = analyze_terms(powers(), backend, n + 1)
    return CoefficientVector("matrix", backend, None, res.r, tuple(res.alphas))


def combination_residual(terms: Sequence[Hypermatrix], vec: CoefficientVector) -> Hypermatrix:
    """``term_r - sum alphas[k] term_k``; the zero hypermatrix when ``vec`` is valid."""
    out = terms[vec.r]
    for a, t in zip(vec.alphas, terms):
        out = out - t.scale(a)
    return out
