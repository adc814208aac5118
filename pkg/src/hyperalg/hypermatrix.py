"""Dense hypermatrices over an exact or prime-field backend, plus the HMX text format.

Indices are 0-based throughout. Entries are stored row-major (last index
fastest) in a read-only numpy object array.
"""
from __future__ import annotations

import itertools
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .scalars import EXACT, Backend, canonical, format_scalar, parse_scalar

__all__ = [
    "Hypermatrix",
    "HMXParseError",
    "ShapeError",
    "delta",
    "dumps",
    "from_slices",
    "load",
    "loads",
    "permute_indices",
    "save",
    "zeros",
]


class ShapeError(ValueError):
    """Dimensions or backends of hypermatrix operands do not fit together."""


class HMXParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _as_object_array(values) -> np.ndarray:
    arr = np.empty(np.shape(values), dtype=object)
    arr[...] = values
    return arr


class Hypermatrix:
    """An immutable order-d array of exact scalars.

    ``entries`` may be anything numpy can shape into an array (nested lists,
    an ndarray). Values are canonicalised into ``backend``.
    """

    __slots__ = ("_data", "backend")

    def __init__(self, entries, backend: Backend = EXACT):
        data = entries if isinstance(entries, np.ndarray) else _as_object_array(entries)
        if data.ndim < 1:
            raise ShapeError("a hypermatrix needs at least one axis")
        if 0 in data.shape:
            raise ShapeError(f"dimensions must be positive, got {data.shape}")
        flat = [backend.coerce(x) for x in data.ravel().tolist()]
        out = np.empty(len(flat), dtype=object)
        out[:] = flat
        out = out.reshape(data.shape)
        out.flags.writeable = False
        self._data = out
        self.backend = backend

    @classmethod
    def _wrap(cls, data: np.ndarray, backend: Backend) -> Hypermatrix:
        """Adopt an object array whose entries are already canonical (internal use)."""
        self = cls.__new__(cls)
        data = np.ascontiguousarray(data, dtype=object)
        data.flags.writeable = False
        self._data = data
        self.backend = backend
        return self

    @classmethod
    def from_flat(cls, dims: Sequence[int], values: Sequence, backend: Backend = EXACT) -> Hypermatrix:
        dims = tuple(int(n) for n in dims)
        if len(values) != prod(dims):
            raise ShapeError(f"{len(values)} entries do not fill dims {dims}")
        arr = np.empty(len(values), dtype=object)
        arr[:] = list(values)
        return cls(arr.reshape(dims), backend)

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def dims(self) -> tuple[int, ...]:
        return self._data.shape

    @property
    def order(self) -> int:
        return self._data.ndim

    @property
    def side(self) -> int:
        if not self.is_cubic:
            raise ShapeError(f"hypermatrix of dims {self.dims} is not cubic")
        return self.dims[0]

    @property
    def is_cubic(self) -> bool:
        return len(set(self.dims)) == 1

    def __getitem__(self, index):
        value = self._data[index]
        if isinstance(value, np.ndarray):
            return Hypermatrix._wrap(value.copy(), self.backend)
        return value

    def flatten(self) -> list:
        """Entries in row-major order."""
        return self._data.ravel().tolist()

    def slice(self, axis: int, value: int) -> Hypermatrix:
        """The order-(d-1) hypermatrix with index ``axis`` fixed to ``value``."""
        if self.order < 2:
            raise ShapeError("cannot slice an order-1 hypermatrix")
        return Hypermatrix._wrap(np.take(self._data, value, axis=axis).copy(), self.backend)

    def nonzero(self) -> list[tuple[int, ...]]:
        return [idx for idx, x in np.ndenumerate(self._data) if x != 0]

    def is_binary(self) -> bool:
        return all(x == 0 or x == 1 for x in self._data.flat)

    def is_zero(self) -> bool:
        return not any(x != 0 for x in self._data.flat)

    def to_backend(self, backend: Backend) -> Hypermatrix:
        if backend == self.backend:
            return self
        if not self.backend.exact:
            raise ShapeError("only exact hypermatrices can be reduced to another backend")
        return Hypermatrix(self._data, backend)

    def scale(self, c) -> Hypermatrix:
        c = self.backend.coerce(c)
        return self._finish(self._data * c)

    def _finish(self, raw: np.ndarray) -> Hypermatrix:
        """Canonicalise a freshly computed object array into this backend."""
        p = self.backend.modulus
        if p is None:
            flat = [canonical(x) for x in raw.ravel().tolist()]
        else:
            flat = [x % p for x in raw.ravel().tolist()]
        out = np.empty(len(flat), dtype=object)
        out[:] = flat
        return Hypermatrix._wrap(out.reshape(raw.shape), self.backend)

    def __add__(self, other: Hypermatrix) -> Hypermatrix:
        _check_same(self, other)
        return self._finish(self._data + other._data)

    def __sub__(self, other: Hypermatrix) -> Hypermatrix:
        _check_same(self, other)
        return self._finish(self._data - other._data)

    def __eq__(self, other):
        if not isinstance(other, Hypermatrix):
            return NotImplemented
        return (
            self.backend == other.backend
            and self.dims == other.dims
            and self.flatten() == other.flatten()
        )

    def __hash__(self):
        return hash((self.backend, self.dims, tuple(self.flatten())))

    def __repr__(self):
        return f"Hypermatrix(dims={self.dims}, backend={self.backend.describe()!r})"


def _check_same(a: Hypermatrix, b: Hypermatrix) -> None:
    if a.dims != b.dims:
        raise ShapeError(f"dims differ: {a.dims} vs {b.dims}")
    if a.backend != b.backend:
        raise ShapeError(f"backends differ: {a.backend.describe()} vs {b.backend.describe()}")


def zeros(dims: Sequence[int], backend: Backend = EXACT) -> Hypermatrix:
    arr = np.empty(tuple(dims), dtype=object)
    arr.fill(0)
    return Hypermatrix._wrap(arr, backend)


def delta(order: int, side: int, backend: Backend = EXACT) -> Hypermatrix:
    """Kronecker delta: 1 where all indices agree, 0 elsewhere."""
    if order < 2 or side < 1:
        raise ValueError(f"delta needs order >= 2 and side >= 1, got ({order}, {side})")
    arr = np.empty((side,) * order, dtype=object)
    arr.fill(0)
    for i in range(side):
        arr[(i,) * order] = 1
    return Hypermatrix._wrap(arr, backend)


def from_slices(slices: Sequence[Sequence[Sequence]], backend: Backend = EXACT) -> Hypermatrix:
    """Build an order-3 hypermatrix from its row-column slices ``A[:, :, k]``."""
    stacked = np.stack([_as_object_array(s) for s in slices], axis=-1)
    return Hypermatrix(stacked, backend)


def permute_indices(A: Hypermatrix, sigma: Sequence[int]) -> Hypermatrix:
    """``B[i, j, k] = A[sigma[i], sigma[j], sigma[k]]`` (any order, cubic ``A``)."""
    n = A.side
    sigma = list(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"{sigma} is not a permutation of range({n})")
    idx = np.ix_(*([sigma] * A.order))
    return Hypermatrix._wrap(A.data[idx].copy(), A.backend)


def inverse_permutation(sigma: Sequence[int]) -> list[int]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return inv


# -- HMX v1 ----------------------------------------------------------------


def dumps(A: Hypermatrix) -> str:
    lines = [
        "hmx 1",
        f"order {A.order}",
        "dims " + " ".join(str(n) for n in A.dims),
        f"backend {A.backend.describe()}",
    ]
    lines.extend(format_scalar(x) for x in A.flatten())
    return "\n".join(lines) + "\n"


def _expect(lines: list[str], i: int, keyword: str) -> list[str]:
    if i >= len(lines):
        raise HMXParseError(f"missing '{keyword}' header", i + 1)
    parts = lines[i].split(" ")
    if parts[0] != keyword:
        raise HMXParseError(f"expected '{keyword}', found {parts[0]!r}", i + 1)
    return parts[1:]


def _int_field(token: str, line: int, column: int) -> int:
    if not token.isdigit() or (token.startswith("0") and token != "0"):
        raise HMXParseError(f"expected a non-negative integer, found {token!r}", line, column)
    return int(token)


def loads(text: str) -> Hypermatrix:
    if "\r" in text:
        raise HMXParseError("CR characters are not allowed (LF line endings only)", text[: text.index("\r")].count("\n") + 1)
    if not text.endswith("\n"):
        raise HMXParseError("file must end with a newline", text.count("\n") + 1)
    lines = text[:-1].split("\n")

    version = _expect(lines, 0, "hmx")
    if version != ["1"]:
        raise HMXParseError(f"unsupported version {' '.join(version)!r}", 1, 5)
    order_tok = _expect(lines, 1, "order")
    if len(order_tok) != 1:
        raise HMXParseError("'order' takes exactly one value", 2)
    order = _int_field(order_tok[0], 2, 7)
    dim_toks = _expect(lines, 2, "dims")
    col = 6
    dims = []
    for tok in dim_toks:
        n = _int_field(tok, 3, col)
        if n == 0:
            raise HMXParseError("dimensions must be positive", 3, col)
        dims.append(n)
        col += len(tok) + 1
    if len(dims) != order or order == 0:
        raise HMXParseError(f"order {order} but {len(dims)} dims given", 3)
    backend_tok = _expect(lines, 3, "backend")
    if backend_tok == ["exact"]:
        backend = EXACT
    elif len(backend_tok) == 2 and backend_tok[0] == "modp":
        p = _int_field(backend_tok[1], 4, 14)
        try:
            backend = Backend(p)
        except ValueError as exc:
            raise HMXParseError(str(exc), 4, 14) from None
    else:
        raise HMXParseError(f"unknown backend {' '.join(backend_tok)!r}", 4, 9)

    body = lines[4:]
    expected = prod(dims)
    if len(body) != expected:
        raise HMXParseError(
            f"dims {tuple(dims)} need {expected} entries, found {len(body)}",
            4 + min(len(body), expected) + 1,
        )
    values = []
    for offset, tok in enumerate(body):
        try:
            x = parse_scalar(tok)
        except ValueError as exc:
            raise HMXParseError(str(exc), 5 + offset) from None
        if backend.modulus is not None and not (isinstance(x, int) and 0 <= x < backend.modulus):
            raise HMXParseError(f"{tok!r} is not a residue mod {backend.modulus}", 5 + offset)
        values.append(x)
    arr = np.empty(expected, dtype=object)
    arr[:] = values
    return Hypermatrix._wrap(arr.reshape(dims), backend)


def load(path) -> Hypermatrix:
    with open(path, encoding="ascii", newline="") as fh:
        return loads(fh.read())


def save(A: Hypermatrix, path) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(dumps(A))


def random_hypermatrix(rng, dims: Iterable[int], values: Sequence = (0, 1), backend: Backend = EXACT) -> Hypermatrix:
    """Entries drawn uniformly from ``values`` using a ``random.Random``-like ``rng``."""
    dims = tuple(dims)
    flat = [rng.choice(values) for _ in range(prod(dims))]
    return Hypermatrix.from_flat(dims, flat, backend)


def all_binary(dims: Sequence[int]) -> Iterable[Hypermatrix]:
    """Every 0/1 hypermatrix of the given dims, in lexicographic order."""
    for bits in itertools.product((0, 1), repeat=prod(dims)):
        yield Hypermatrix.from_flat(dims, bits)
