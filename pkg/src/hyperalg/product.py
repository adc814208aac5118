"""Bhattacharya-Mesner products.

For operands ``A1..Am`` the BM product is

    B[i1..im] = sum_j  A1[i1, j, i3..im] * A2[i1, i2, j, ...] * ... * Am[j, i2..im]

i.e. operand ``t`` (1-based, t < m) has its slot ``t+1`` replaced by the
summation index and the last operand has slot 1 replaced. The general product
threads an independent index ``j_{t+1}`` through operand ``t`` (``j_1``
through the last) and weights each term by a cubic background ``B[j1..jm]``.

Order-3 inputs go through slice-batched kernels; other arities use a generic
einsum contraction. ``*_naive`` functions are plain nested loops kept as
reference implementations for benchmarking.
"""
from __future__ import annotations

import itertools
from enum import Enum
from math import prod
from typing import Sequence

import numpy as np

from .hypermatrix import Hypermatrix, ShapeError

__all__ = [
    "Convention",
    "bm_product",
    "bm_product_naive",
    "general_bm_product",
    "general_bm_product_naive",
    "product_dims",
]

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


class Convention(str, Enum):
    """How the background's index tuple is contracted.

    ``literal`` uses ``B[j1, j2, ..., jm]`` as written; ``reversed`` uses
    ``B[jm, ..., j2, j1]``. For m = 2 literal gives ``A1 @ B.T @ A2`` while
    reversed gives ``A1 @ B @ A2``.
    """

    LITERAL = "literal"
    REVERSED = "reversed"


def product_dims(operands: Sequence[Hypermatrix]) -> tuple[tuple[int, ...], int]:
    """Validate operand shapes; return (result dims, contraction length k)."""
    m = len(operands)
    if m < 2:
        raise ShapeError(f"a BM product needs at least 2 operands, got {m}")
    backend = operands[0].backend
    for t, A in enumerate(operands, 1):
        if A.order != m:
            raise ShapeError(f"operand {t} has order {A.order}, expected {m}")
        if A.backend != backend:
            raise ShapeError(
                f"operand {t} backend {A.backend.describe()} differs from {backend.describe()}"
            )
    # every result axis except the second can be read off operand 1
    first = operands[0].dims
    k = first[1]
    dims = (first[0], operands[1].dims[1]) + tuple(first[2:])
    # operand t (1-based, t < m) carries k in slot t+1; the last carries k in slot 1
    for t, A in enumerate(operands, 1):
        slot = t if t < m else 0
        want = list(dims)
        want[slot] = k
        for axis, (got, exp) in enumerate(zip(A.dims, want)):
            if got != exp:
                raise ShapeError(
                    f"operand {t} axis {axis} has length {got}, expected {exp} "
                    f"(operand dims {A.dims}, result dims {dims}, k={k})"
                )
    return dims, k


def _check_background(background: Hypermatrix, m: int, k: int, backend) -> None:
    if background.order != m or background.dims != (k,) * m:
        raise ShapeError(
            f"background must be cubic of order {m} and side {k}, got dims {background.dims}"
        )
    if background.backend != backend:
        raise ShapeError("background backend differs from the operands'")


def _finish(template: Hypermatrix, raw: np.ndarray) -> Hypermatrix:
    return template._finish(raw)


def _subscripts(m: int, with_background: bool) -> str:
    res = _LETTERS[:m]
    js = _LETTERS[m : 2 * m] if with_background else _LETTERS[m] * m
    ops = []
    for t in range(1, m + 1):
        slot = t if t < m else 0
        s = list(res)
        # general product: operand t gets j_{t+1}; the last gets j_1
        s[slot] = js[slot]
        ops.append("".join(s))
    if with_background:
        ops.append(js)
    return ",".join(ops) + "->" + res


def bm_product(operands: Sequence[Hypermatrix]) -> Hypermatrix:
    dims, k = product_dims(operands)
    m = len(operands)
    if m == 3:
        raw = _bm3(*(A.data for A in operands), dims, k)
    elif m == 2:
        raw = np.dot(operands[0].data, operands[1].data)
    else:
        raw = np.einsum(_subscripts(m, False), *(A.data for A in operands))
    return _finish(operands[0], raw)


def _bm3(A1, A2, A3, dims, k):
    n1, n2, n3 = dims
    out = np.empty(dims, dtype=object)
    for c in range(n3):
        acc = np.zeros((n1, n2), dtype=object)
        for j in range(k):
            acc = acc + A1[:, j, c][:, None] * A2[:, :, j] * A3[j, :, c][None, :]
        out[:, :, c] = acc
    return out


def general_bm_product(
    operands: Sequence[Hypermatrix],
    background: Hypermatrix,
    convention: Convention | str = Convention.LITERAL,
) -> Hypermatrix:
    convention = Convention(convention)
    dims, k = product_dims(operands)
    m = len(operands)
    _check_background(background, m, k, operands[0].backend)
    B = background.data
    if convention is Convention.REVERSED:
        B = B.transpose(tuple(range(m - 1, -1, -1)))
    if m == 3:
        raw = _general3(*(A.data for A in operands), B, dims)
    elif m == 2:
        # sum_{j1,j2} A1[a, j2] A2[j1, b] B[j1, j2]
        raw = np.dot(np.dot(operands[0].data, B.T), operands[1].data)
    else:
        raw = np.einsum(_subscripts(m, True), *(A.data for A in operands), B)
    return _finish(operands[0], raw)


def _general3(A1, A2, A3, B, dims):
    # C[:, :, c] = sum_z A2[:, :, z] * (A1[:, :, c] @ B[:, :, z].T @ A3[:, :, c])
    n1, n2, n3 = dims
    k = B.shape[0]
    out = np.empty(dims, dtype=object)
    for c in range(n3):
        left = A1[:, :, c]
        right = A3[:, :, c]
        acc = np.zeros((n1, n2), dtype=object)
        for z in range(k):
            acc = acc + A2[:, :, z] * np.dot(np.dot(left, B[:, :, z].T), right)
        out[:, :, c] = acc
    return out


def bm_product_naive(operands: Sequence[Hypermatrix]) -> Hypermatrix:
    dims, k = product_dims(operands)
    m = len(operands)
    out = np.empty(dims, dtype=object)
    for idx in itertools.product(*(range(n) for n in dims)):
        total = 0
        for j in range(k):
            term = 1
            for t, A in enumerate(operands, 1):
                slot = t if t < m else 0
                sub = list(idx)
                sub[slot] = j
                term = term * A.data[tuple(sub)]
            total = total + term
        out[idx] = total
    return _finish(operands[0], out)


def general_bm_product_naive(
    operands: Sequence[Hypermatrix],
    background: Hypermatrix,
    convention: Convention | str = Convention.LITERAL,
) -> Hypermatrix:
    convention = Convention(convention)
    dims, k = product_dims(operands)
    m = len(operands)
    _check_background(background, m, k, operands[0].backend)
    out = np.empty(dims, dtype=object)
    for idx in itertools.product(*(range(n) for n in dims)):
        total = 0
        for js in itertools.product(range(k), repeat=m):
            bidx = js if convention is Convention.LITERAL else js[::-1]
            b = background.data[bidx]
            if b == 0:
                continue
            terms = []
            for t, A in enumerate(operands, 1):
                slot = t if t < m else 0
                sub = list(idx)
                sub[slot] = js[slot]
                terms.append(A.data[tuple(sub)])
            total = total + prod(terms) * b
        out[idx] = total
    return _finish(operands[0], out)
