"""Exact linear algebra over Q (fraction-free) and over Z/pZ.

Vectors are plain sequences of backend scalars: ints/Fractions for the exact
backend, residues for mod-p. Pivoting is always "first nonzero entry in
column order", so every routine is deterministic.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .scalars import EXACT, Backend, canonical

__all__ = [
    "IncrementalBasis",
    "bareiss_rank",
    "charpoly",
    "determinant",
    "matrix_power",
    "modp_rank",
    "rank",
    "solve_combination",
]


def _integerize(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive integer row with the same span."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def bareiss_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free (Bareiss) elimination."""
    if not rows:
        return 0
    M = np.array([_integerize(r) for r in rows], dtype=object)
    nrows, ncols = M.shape
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = [i for i in range(r, nrows) if M[i, c] != 0]
        if not nz:
            continue
        i = nz[0]
        if i != r:
            M[[r, i]] = M[[i, r]]
        piv = M[r, c]
        if r + 1 < nrows:
            below = M[r + 1 :, c + 1 :] * piv - np.outer(M[r + 1 :, c], M[r, c + 1 :])
            M[r + 1 :, c + 1 :] = below // prev
            M[r + 1 :, c] = 0
        prev = piv
        r += 1
    return r


def modp_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    basis = IncrementalBasis(Backend(p))
    for row in rows:
        basis.add(row)
    return basis.rank


def rank(rows: Sequence[Sequence], backend: Backend = EXACT) -> int:
    if backend.exact:
        return bareiss_rank(rows)
    return modp_rank(rows, backend.modulus)


class IncrementalBasis:
    """Row-echelon basis grown one vector at a time.

    ``add`` reports whether the new vector was independent of everything seen
    so far. Exact rows are kept as primitive integer vectors (cross-multiply,
    then divide out the content) so no fractions are ever formed.
    """

    def __init__(self, backend: Backend = EXACT):
        self.backend = backend
        self._rows: list[list[int]] = []
        self._pivots: list[int] = []
        self.accepted: list[int] = []
        self._seen = 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Sequence) -> list[int]:
        p = self.backend.modulus
        if p is None:
            v = _integerize(vec)
            for row, c in zip(self._rows, self._pivots):
                a = v[c]
                if a:
                    b = row[c]
                    v = [b * x - a * y for x, y in zip(v, row)]
                    v = _integerize(v)
        else:
            v = [x % p for x in vec]
            for row, c in zip(self._rows, self._pivots):
                a = v[c]
                if a:
                    v = [(x - a * y) % p for x, y in zip(v, row)]
        return v

    def add(self, vec: Sequence) -> bool:
        index = self._seen
        self._seen += 1
        v = self.reduce(vec)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            return False
        p = self.backend.modulus
        if p is not None:
            inv = pow(v[c], -1, p)
            v = [x * inv % p for x in v]
        elif v[c] < 0:
            v = [-x for x in v]
        self._rows.append(v)
        self._pivots.append(c)
        self.accepted.append(index)
        return True


def solve_combination(vectors: Sequence[Sequence], target: Sequence, backend: Backend = EXACT) -> list:
    """Coefficients ``a`` with ``target = sum_k a[k] * vectors[k]``.

    ``vectors`` must be linearly independent; raises ValueError when
    ``target`` is outside their span. The exact path eliminates the augmented
    system fraction-free and only forms fractions during back-substitution.
    """
    r = len(vectors)
    if r == 0:
        if any(x != 0 for x in target):
            raise ValueError("target is not in the span of an empty family")
        return []
    n = len(target)
    p = backend.modulus
    # columns = vectors, last column = target
    if p is None:
        cols = [_integerize(v) for v in vectors]
        den = 1
        for x in target:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        tgt = [int(x * den) for x in target]
    else:
        cols = [[x % p for x in v] for v in vectors]
        tgt = [x % p for x in target]
    # column scaling in the exact path: vectors[k] = cols[k] / s_k
    scales = [_scale(v, c) for v, c in zip(vectors, cols)] if p is None else None
    M = np.empty((n, r + 1), dtype=object)
    for k, col in enumerate(cols):
        M[:, k] = col
    M[:, r] = tgt

    prev = 1
    row = 0
    for c in range(r):
        nz = [i for i in range(row, n) if M[i, c] != 0]
        if not nz:
            raise ValueError("vectors are linearly dependent")
        i = nz[0]
        if i != row:
            M[[row, i]] = M[[i, row]]
        piv = M[row, c]
        if p is None:
            below = M[row + 1 :, c + 1 :] * piv - np.outer(M[row + 1 :, c], M[row, c + 1 :])
            M[row + 1 :, c + 1 :] = below // prev
            prev = piv
        else:
            inv = pow(int(piv), -1, p)
            M[row] = [x * inv % p for x in M[row]]
            factors = M[row + 1 :, c].copy()
            M[row + 1 :, c:] = (M[row + 1 :, c:] - np.outer(factors, M[row, c:])) % p
        M[row + 1 :, c] = 0
        row += 1
    if any(x != 0 for x in M[r:, r]):
        raise ValueError("target is not in the span of the vectors")

    coeffs: list = [0] * r
    for c in range(r - 1, -1, -1):
        acc = M[c, r]
        for k in range(c + 1, r):
            acc = acc - M[c, k] * coeffs[k]
        if p is None:
            coeffs[c] = Fraction(acc, M[c, c])
        else:
            coeffs[c] = acc * pow(int(M[c, c]), -1, p) % p
    if p is None:
        coeffs = [canonical(a * s / den) for a, s in zip(coeffs, scales)]
    return coeffs


def _scale(original: Sequence, ints: Sequence[int]) -> Fraction:
    """The factor s with ``ints = s * original``."""
    for x, y in zip(original, ints):
        if x != 0:
            return Fraction(y) / Fraction(x)
    return Fraction(1)


def _determinant_modp(M: Sequence[Sequence], backend: Backend) -> int:
    p = backend.modulus
    A = [[backend.coerce(x) for x in row] for row in M]
    n = len(A)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c] % p
        inv = pow(A[c][c], -1, p)
        for i in range(c + 1, n):
            f = A[i][c] * inv % p
            if f:
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[c])]
    return det % p


def determinant(M: Sequence[Sequence], backend: Backend = EXACT) -> object:
    """Determinant by Bareiss elimination (exact) or Gaussian elimination mod p."""
    n = len(M)
    if n == 0:
        return 1
    if not backend.exact:
        return _determinant_modp(M, backend)
    den = 1
    for row in M:
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
    A = np.array([[int(x * den) for x in row] for row in M], dtype=object)
    sign = 1
    prev = 1
    for c in range(n):
        nz = [i for i in range(c, n) if A[i, c] != 0]
        if not nz:
            return 0
        i = nz[0]
        if i != c:
            A[[c, i]] = A[[i, c]]
            sign = -sign
        piv = A[c, c]
        if c + 1 < n:
            A[c + 1 :, c + 1 :] = (A[c + 1 :, c + 1 :] * piv - np.outer(A[c + 1 :, c], A[c, c + 1 :])) // prev
        prev = piv
    return canonical(Fraction(sign * A[n - 1, n - 1], den**n))


def charpoly(M: Sequence[Sequence]) -> list:
    """Coefficients ``[c0, c1, ..., cn]`` (cn = 1) of det(xI - M), Faddeev-LeVerrier."""
    A = np.array([[canonical(x) for x in row] for row in M], dtype=object)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("charpoly needs a square matrix")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    ident = np.zeros((n, n), dtype=object)
    for i in range(n):
        ident[i, i] = 1
    Mk = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        Mk = np.dot(A, Mk) + ident * coeffs[n - k + 1]
        trace = sum(np.dot(A, Mk).diagonal().tolist())
        coeffs[n - k] = canonical(Fraction(-trace, k))
    return coeffs


def matrix_power(M: np.ndarray, k: int) -> np.ndarray:
    n = M.shape[0]
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    base = np.array(M, dtype=object)
    while k:
        if k & 1:
            out = np.dot(out, base)
        base = np.dot(base, base)
        k >>= 1
    return out

