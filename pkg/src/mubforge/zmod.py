"""Arithmetic over Z_p and Z_4: scalars, vectors, matrices, elimination."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    return all(m % d for d in range(2, int(m**0.5) + 1))


def _check_modulus(modulus: int) -> None:
    if not (modulus == 4 or is_prime(modulus)):
        raise ValueError(f"modulus must be prime or 4, got {modulus}")


@dataclass(frozen=True)
class ZModScalar:
    modulus: int
    value: int

    def __post_init__(self):
        _check_modulus(self.modulus)
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, ZModScalar):
            if other.modulus != self.modulus:
                raise ValueError("modulus mismatch")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return ZModScalar(self.modulus, self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        return ZModScalar(self.modulus, self.value - self._coerce(other))

    def __rsub__(self, other):
        return ZModScalar(self.modulus, self._coerce(other) - self.value)

    def __mul__(self, other):
        return ZModScalar(self.modulus, self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return ZModScalar(self.modulus, -self.value)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, ZModScalar):
            return (self.modulus, self.value) == (other.modulus, other.value)
        if isinstance(other, int):
            return (other - self.value) % self.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.modulus, self.value))

    def inverse(self) -> "ZModScalar":
        return ZModScalar(self.modulus, pow(self.value, -1, self.modulus))


# -- vector space V = Z_p^n in lexicographic order ---------------------------

@lru_cache(maxsize=None)
def all_vectors(p: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Every vector of Z_p^n, coords[0] most significant."""
    return tuple(itertools.product(range(p), repeat=n))


def vector_index(coords: Sequence[int], p: int) -> int:
    idx = 0
    for c in coords:
        idx = idx * p + (c % p)
    return idx


@lru_cache(maxsize=None)
def addition_table(p: int, n: int) -> tuple[tuple[int, ...], ...]:
    """``table[u][v]`` is the index of ``u + v`` in Z_p^n."""
    vecs = all_vectors(p, n)
    return tuple(
        tuple(vector_index([a + b for a, b in zip(u, v)], p) for v in vecs)
        for u in vecs
    )


@lru_cache(maxsize=None)
def dot_table(p: int, n: int, modulus: int | None = None) -> tuple[tuple[int, ...], ...]:
    """``table[a][v] = a . v`` reduced mod ``modulus`` (default p)."""
    m = p if modulus is None else modulus
    vecs = all_vectors(p, n)
    return tuple(tuple(sum(x * y for x, y in zip(a, v)) % m for v in vecs) for a in vecs)


@dataclass(frozen=True)
class VecZp:
    modulus: int
    coords: tuple[int, ...]

    def __post_init__(self):
        _check_modulus(self.modulus)
        object.__setattr__(self, "coords", tuple(int(c) % self.modulus for c in self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    def _check(self, other: "VecZp"):
        if self.modulus != other.modulus or self.n != other.n:
            raise ValueError("vector shape/modulus mismatch")

    def __add__(self, other: "VecZp") -> "VecZp":
        self._check(other)
        return VecZp(self.modulus, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "VecZp") -> "VecZp":
        self._check(other)
        return VecZp(self.modulus, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "VecZp":
        return VecZp(self.modulus, tuple(-a for a in self.coords))

    def scale(self, c: int) -> "VecZp":
        return VecZp(self.modulus, tuple(c * a for a in self.coords))

    def dot(self, other: "VecZp") -> ZModScalar:
        self._check(other)
        return ZModScalar(self.modulus, sum(a * b for a, b in zip(self.coords, other.coords)))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def index(self) -> int:
        return vector_index(self.coords, self.modulus)


# -- matrices ----------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Square n x n matrix over Z_m (m prime or 4)."""

    modulus: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_modulus(self.modulus)
        rows = tuple(tuple(int(x) % self.modulus for x in row) for row in self.entries)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def zero(cls, modulus: int, n: int):
        return cls(modulus, tuple((0,) * n for _ in range(n)))

    @classmethod
    def identity(cls, modulus: int, n: int):
        return cls(modulus, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def is_symmetric(self) -> bool:
        e = self.entries
        return all(e[i][j] == e[j][i] for i in range(self.n) for j in range(i))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def _combine(self, other: "Matrix", op) -> "Matrix":
        if self.modulus != other.modulus or self.n != other.n:
            raise ValueError("matrix shape/modulus mismatch")
        rows = tuple(
            tuple(op(a, b) for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)
        )
        cls = SymMatrix if isinstance(self, SymMatrix) and isinstance(other, SymMatrix) else Matrix
        return cls(self.modulus, rows)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return type(self)(self.modulus, tuple(tuple(-x for x in r) for r in self.entries))

    def scale(self, c: int):
        return type(self)(self.modulus, tuple(tuple(c * x for x in r) for r in self.entries))

    def bilinear(self, u: Sequence[int], v: Sequence[int]) -> int:
        """u M v^T reduced mod the matrix modulus."""
        e = self.entries
        total = 0
        for i, ui in enumerate(u):
            if ui:
                total += ui * sum(e[i][j] * vj for j, vj in enumerate(v))
        return total % self.modulus

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


class SymMatrix(Matrix):
    """Symmetric n x n matrix over Z_p or Z_4."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_symmetric():
            raise ValueError("matrix is not symmetric")


def rank_mod_p(rows: Iterable[Sequence[int]], p: int) -> int:
    """Rank over Z_p by Gaussian elimination."""
    m = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(x - f * y) % p for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def is_nonsingular(m: Matrix) -> bool:
    if not is_prime(m.modulus):
        raise ValueError(
            f"nonsingularity is only defined here over a prime field, got Z_{m.modulus}; "
            "reduce mod 2 first"
        )
    return rank_mod_p(m.entries, m.modulus) == m.n


def reduce_mod2(m: Matrix) -> Matrix:
    if m.modulus != 4:
        raise ValueError("reduce_mod2 expects a matrix over Z_4")
    return type(m)(2, m.entries)


def solve_mod_p(rows: Sequence[Sequence[int]], rhs: Sequence[int], p: int) -> list[int]:
    """Solve x A = rhs for square nonsingular A over Z_p (row-vector convention)."""
    n = len(rows)
    # x A = b  <=>  A^T x^T = b^T
    aug = [[rows[j][i] % p for j in range(n)] + [rhs[i] % p] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("singular system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [x * inv % p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]
