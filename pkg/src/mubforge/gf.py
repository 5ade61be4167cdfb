"""Finite fields GF(p^n), the trace map, and self-dual bases of GF(2^n)."""

from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path
from typing import Sequence

from .zmod import ZModScalar, is_prime

FIELD_TABLE_ENV = "MUBFORGE_FIELD_TABLE"
SELF_DUAL_BUDGET = 10**6


class FieldError(ValueError):
    pass


class SearchBudgetExhausted(RuntimeError):
    pass


# -- modulus polynomial table ---------------------------------------------

_override_path: str | None = None


def set_field_table(path: str | os.PathLike | None) -> None:
    """Override the modulus table for this process (CLI ``--field-table``)."""
    global _override_path
    _override_path = None if path is None else str(path)


def field_table_path() -> str | None:
    return _override_path or os.environ.get(FIELD_TABLE_ENV) or None


@lru_cache(maxsize=None)
def _read_table(path: str | None) -> dict[tuple[int, int], tuple[int, ...]]:
    if path is None:
        text = resources.files("mubforge").joinpath("data/field_moduli.json").read_text()
    else:
        text = Path(path).read_text()
    raw = json.loads(text)
    table = {}
    for p, by_n in raw["moduli"].items():
        for n, coeffs in by_n.items():
            table[int(p), int(n)] = tuple(int(c) for c in coeffs)
    return table


def modulus_table() -> dict[tuple[int, int], tuple[int, ...]]:
    return _read_table(field_table_path())


def _prime_factors(m: int) -> list[int]:
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def is_primitive_polynomial(coeffs: Sequence[int], p: int) -> bool:
    """True iff the monic polynomial (low-to-high ``coeffs``) is primitive over Z_p."""
    n = len(coeffs) - 1
    if coeffs[-1] % p != 1 or n < 1:
        return False
    field = GaloisField(p, n, coeffs)
    x = field.generator
    order = p**n - 1
    if x**order != field.one:
        return False
    return all(x ** (order // q) != field.one for q in _prime_factors(order))


def find_primitive_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Smallest primitive monic polynomial of degree n (coefficients read low-to-high,
    compared from the constant term upward)."""
    for low in itertools.product(range(p), repeat=n):
        coeffs = tuple(reversed(low)) + (1,)
        if is_primitive_polynomial(coeffs, p):
            return coeffs
    raise FieldError(f"no primitive polynomial of degree {n} over Z_{p}")


# -- fields ------------------------------------------------------------------

class GaloisField:
    """GF(p^n) = Z_p[x]/(f) with f taken from the modulus table unless given."""

    def __init__(self, p: int, n: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldError(f"characteristic must be prime, got {p}")
        if n < 1:
            raise FieldError("degree must be >= 1")
        if modulus is None:
            try:
                modulus = modulus_table()[p, n]
            except KeyError:
                raise FieldError(f"no modulus polynomial for GF({p}^{n})") from None
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus for GF({p}^{n}) must be monic of degree {n}")
        self.p = p
        self.n = n
        self.modulus = modulus

    def __repr__(self):
        return f"GaloisField({self.p}, {self.n}, {list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, GaloisField) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @property
    def _key(self):
        return (self.p, self.n, self.modulus)

    @property
    def order(self) -> int:
        return self.p**self.n

    def __call__(self, coeffs: Sequence[int] | int) -> "GFElement":
        if isinstance(coeffs, int):
            coeffs = (coeffs,) + (0,) * (self.n - 1)
        return GFElement(self, tuple(coeffs))

    @property
    def zero(self) -> "GFElement":
        return self(0)

    @property
    def one(self) -> "GFElement":
        return self(1)

    @property
    def generator(self) -> "GFElement":
        """The class of x in Z_p[x]/(f)."""
        if self.n == 1:
            return self(-self.modulus[0])
        return self((0, 1) + (0,) * (self.n - 2))

    def elements(self) -> list["GFElement"]:
        """All elements; coefficient tuples listed with the x^0 coefficient most significant."""
        return [GFElement(self, c) for c in itertools.product(range(self.p), repeat=self.n)]

    def reduce(self, poly: list[int]) -> tuple[int, ...]:
        p, n, f = self.p, self.n, self.modulus
        poly = [c % p for c in poly]
        for deg in range(len(poly) - 1, n - 1, -1):
            c = poly[deg]
            if c:
                shift = deg - n
                for k in range(n + 1):
                    poly[shift + k] = (poly[shift + k] - c * f[k]) % p
        poly = poly[:n] + [0] * max(0, n - len(poly))
        return tuple(poly)

    @cached_property
    def trace_table(self) -> dict[tuple[int, ...], int]:
        return {x.coeffs: int(trace(x)) for x in self.elements()}


@dataclass(frozen=True, eq=False)
class GFElement:
    field: GaloisField
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) % self.field.p for x in self.coeffs)
        if len(c) != self.field.n:
            raise FieldError(f"expected {self.field.n} coefficients, got {len(c)}")
        object.__setattr__(self, "coeffs", c)

    def __repr__(self):
        return f"GF({self.field.p}^{self.field.n}){list(self.coeffs)}"

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, GFElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def _lift(self, other) -> "GFElement":
        if isinstance(other, int):
            return self.field(other)
        if not isinstance(other, GFElement) or other.field != self.field:
            raise FieldError("operands live in different fields")
        return other

    def __add__(self, other):
        o = self._lift(other)
        return GFElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return GFElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return GFElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._lift(other)
        prod = [0] * (2 * self.field.n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    prod[i + j] += a * b
        return GFElement(self.field, self.field.reduce(prod))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def inverse(self) -> "GFElement":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()


def trace(x: GFElement) -> ZModScalar:
    """x + x^p + ... + x^(p^(n-1)), an element of the prime subfield."""
    f = x.field
    total, y = f.zero, x
    for _ in range(f.n):
        total = total + y
        y = y**f.p
    if any(total.coeffs[1:]):
        raise FieldError(f"trace left the prime subfield: {total!r} (bad modulus?)")
    return ZModScalar(f.p, total.coeffs[0])


def field_axiom_failures(field: GaloisField, samples: int = 10**4, seed: int = 0) -> list[str]:
    """Names of violated field axioms; exhaustive on triples when |F|^3 <= samples."""
    elems = field.elements()
    q = field.order
    if q**3 <= samples:
        triples = itertools.product(elems, repeat=3)
    else:
        rng = random.Random(seed)
        triples = ((rng.choice(elems), rng.choice(elems), rng.choice(elems)) for _ in range(samples))
    failures = []
    assoc_ok = distrib_ok = comm_ok = True
    for a, b, c in triples:
        if assoc_ok and (a * b) * c != a * (b * c):
            assoc_ok = False
        if distrib_ok and a * (b + c) != a * b + a * c:
            distrib_ok = False
        if comm_ok and a * b != b * a:
            comm_ok = False
    if not assoc_ok:
        failures.append("multiplicative associativity")
    if not distrib_ok:
        failures.append("distributivity")
    if not comm_ok:
        failures.append("multiplicative commutativity")
    one = field.one
    if any(not x.is_zero() and x ** (q - 1) != one for x in elems):
        failures.append(f"multiplicative group order {q - 1}")
    nonzero = [x for x in elems if not x.is_zero()]
    if q <= 256 and any((x * y).is_zero() for x in nonzero for y in nonzero[: min(len(nonzero), 64)]):
        failures.append("no zero divisors")
    return failures


# -- self-dual bases (p = 2) -------------------------------------------------

@dataclass(frozen=True)
class SelfDualBasis:
    """Basis b_1..b_n of GF(2^n) with Tr(b_i b_j) = delta_ij."""

    field: GaloisField
    basis: tuple[GFElement, ...]

    def __post_init__(self):
        if self.field.p != 2:
            raise FieldError("self-dual bases are only used for p = 2")
        if len(self.basis) != self.field.n:
            raise FieldError("wrong number of basis elements")
        if gram_matrix(self.basis) != [[int(i == j) for j in range(self.field.n)] for i in range(self.field.n)]:
            raise FieldError("basis is not self-dual")

    @property
    def n(self) -> int:
        return self.field.n

    def coordinates(self, x: GFElement) -> tuple[int, ...]:
        return tuple(int(trace(x * b)) for b in self.basis)

    def element(self, coords: Sequence[int]) -> GFElement:
        total = self.field.zero
        for c, b in zip(coords, self.basis):
            if c % 2:
                total = total + b
        return total


def gram_matrix(basis: Sequence[GFElement]) -> list[list[int]]:
    return [[int(trace(x * y)) for y in basis] for x in basis]


def find_self_dual_basis(
    n: int,
    seed: int = 0,
    budget: int = SELF_DUAL_BUDGET,
    field: GaloisField | None = None,
) -> SelfDualBasis:
    """Seeded randomized orthogonal build-up of a self-dual basis of GF(2^n).

    Each step draws random candidates orthonormal to the elements chosen so
    far; a dead end (an alternating complement) restarts the build.  Every
    candidate drawn counts against ``budget``.
    """
    if n < 1:
        raise FieldError("degree must be >= 1")
    field = field or GaloisField(2, n)
    if field.p != 2 or field.n != n:
        raise FieldError("field must be GF(2^n)")
    rng = random.Random(seed)
    elems = field.elements()
    tr = field.trace_table
    # Tr(x^2) = Tr(x), so a unit-norm element is one with trace 1.
    unit = [x for x in elems if tr[x.coeffs] == 1]
    used = 0
    while used < budget:
        chosen: list[GFElement] = []
        while len(chosen) < n:
            pool = [x for x in unit if all(tr[(x * b).coeffs] == 0 for b in chosen)]
            used += 1
            if not pool:
                break
            chosen.append(rng.choice(pool))
            used += len(pool)
            if used >= budget:
                break
        if len(chosen) == n:
            return SelfDualBasis(field, tuple(chosen))
    raise SearchBudgetExhausted(f"no self-dual basis of GF(2^{n}) within {budget} candidates")
