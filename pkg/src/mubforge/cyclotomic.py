"""Exact arithmetic in Z[zeta_p] (odd p) and the Gaussian integers Z[i].

Elements of Z[zeta_p] use the redundant basis 1, zeta, ..., zeta^(p-1).  The
relation 1 + zeta + ... + zeta^(p-1) = 0 lets every element be shifted so its
last coefficient is zero; that shifted form is canonical.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

from .zmod import is_prime


@dataclass(frozen=True)
class CyclotomicInt:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        if len(c) < self.p:
            c += [0] * (self.p - len(c))
        elif len(c) > self.p:
            folded = [0] * self.p
            for k, x in enumerate(c):
                folded[k % self.p] += x
            c = folded
        top = c[-1]
        object.__setattr__(self, "coeffs", tuple(x - top for x in c))

    @classmethod
    def from_int(cls, p: int, c: int) -> "CyclotomicInt":
        return cls(p, (c,))

    @classmethod
    def from_counts(cls, p: int, counts: Sequence[int]) -> "CyclotomicInt":
        """sum_k counts[k] zeta^k."""
        return cls(p, tuple(counts))

    def _coerce(self, other) -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt.from_int(self.p, other)
        if isinstance(other, CyclotomicInt):
            if other.p != self.p:
                raise ValueError(f"mismatched roots of unity: {self.p} vs {other.p}")
            return other
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other) if isinstance(other, (int, CyclotomicInt)) else NotImplemented
        if o is NotImplemented:
            return o
        return self.p == o.p and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __add__(self, other):
        o = self._coerce(other)
        return CyclotomicInt(self.p, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return CyclotomicInt(self.p, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return CyclotomicInt(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[(i + j) % p] += a * b
        return CyclotomicInt(p, tuple(out))

    __rmul__ = __mul__

    def conj(self) -> "CyclotomicInt":
        p = self.p
        return CyclotomicInt(p, tuple(self.coeffs[(-k) % p] for k in range(p)))

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def __complex__(self):
        z = cmath.exp(2j * cmath.pi / self.p)
        return sum(c * z**k for k, c in enumerate(self.coeffs))

    def __str__(self):
        terms = [f"{c}" if k == 0 else f"{c}*z^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class GaussianInt:
    re: int
    im: int = 0

    def _coerce(self, other):
        if isinstance(other, int):
            return GaussianInt(other, 0)
        if isinstance(other, GaussianInt):
            return other
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return (self.re, self.im) == (o.re, o.im)

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        o = self._coerce(other)
        return GaussianInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return GaussianInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        return GaussianInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def __complex__(self):
        return complex(self.re, self.im)

    def __str__(self):
        return f"{self.re}{self.im:+d}i"

    @classmethod
    def from_counts(cls, counts: Sequence[int]) -> "GaussianInt":
        """sum_k counts[k] i^k for k in Z_4."""
        c0, c1, c2, c3 = counts
        return cls(c0 - c2, c1 - c3)


_I_POWERS = (GaussianInt(1, 0), GaussianInt(0, 1), GaussianInt(-1, 0), GaussianInt(0, -1))


def i_power(k: int) -> GaussianInt:
    return _I_POWERS[k % 4]


def root_power(p: int, k: int) -> CyclotomicInt:
    """zeta_p^k in canonical form (odd p; use ``i_power`` in characteristic 2)."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    coeffs = [0] * p
    coeffs[k % p] = 1
    return CyclotomicInt(p, tuple(coeffs))


def norm_sq(a: CyclotomicInt | GaussianInt):
    """a * conj(a); an integer for Gaussian integers."""
    if isinstance(a, GaussianInt):
        return a.re * a.re + a.im * a.im
    return a * a.conj()
