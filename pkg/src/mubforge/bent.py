"""Function tables on V = Z_p^n, bent tests, and mubent-set verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from .cyclotomic import CyclotomicInt, norm_sq
from .zmod import VecZp, addition_table, all_vectors, dot_table, is_prime, vector_index


@dataclass(frozen=True)
class FunctionTable:
    """A total function Z_p^n -> Z_codomain stored in lexicographic vector order.

    ``codomain`` is p itself, or 4 when p = 2.
    """

    p: int
    n: int
    codomain: int
    values: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p) or self.n < 1:
            raise ValueError(f"bad domain Z_{self.p}^{self.n}")
        if not (self.codomain == self.p or (self.p == 2 and self.codomain == 4)):
            raise ValueError(f"codomain Z_{self.codomain} not allowed over Z_{self.p}^n")
        vals = tuple(int(x) % self.codomain for x in self.values)
        if len(vals) != self.p**self.n:
            raise ValueError(f"expected {self.p**self.n} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, p: int, n: int, codomain: int | None = None) -> "FunctionTable":
        return cls(p, n, codomain or p, (0,) * p**n)

    @classmethod
    def from_function(
        cls, p: int, n: int, codomain: int, fn: Callable[[tuple[int, ...]], int]
    ) -> "FunctionTable":
        return cls(p, n, codomain, tuple(fn(v) for v in all_vectors(p, n)))

    @property
    def size(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int | Sequence[int]) -> int:
        if isinstance(v, int):
            return self.values[v]
        return self.values[vector_index(v, self.p)]

    def _check(self, other: "FunctionTable"):
        if (self.p, self.n, self.codomain) != (other.p, other.n, other.codomain):
            raise ValueError("function tables have different domain or codomain")

    def __add__(self, other: "FunctionTable") -> "FunctionTable":
        self._check(other)
        return FunctionTable(self.p, self.n, self.codomain,
                             tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "FunctionTable") -> "FunctionTable":
        self._check(other)
        return FunctionTable(self.p, self.n, self.codomain,
                             tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "FunctionTable":
        return FunctionTable(self.p, self.n, self.codomain, tuple(-a for a in self.values))

    def add_constant(self, c: int) -> "FunctionTable":
        return FunctionTable(self.p, self.n, self.codomain, tuple(a + c for a in self.values))

    def translate(self, t: Sequence[int]) -> "FunctionTable":
        """v -> f(v + t)."""
        row = addition_table(self.p, self.n)[vector_index(t, self.p)]
        return FunctionTable(self.p, self.n, self.codomain, tuple(self.values[row[v]] for v in range(self.size)))

    def is_zero(self) -> bool:
        return not any(self.values)


@dataclass(frozen=True)
class MubentSet:
    """Candidate family of function tables sharing domain and codomain."""

    functions: tuple[FunctionTable, ...]

    def __post_init__(self):
        fs = tuple(self.functions)
        if not fs:
            raise ValueError("empty function family")
        for f in fs[1:]:
            fs[0]._check(f)
        object.__setattr__(self, "functions", fs)

    @property
    def p(self) -> int:
        return self.functions[0].p

    @property
    def n(self) -> int:
        return self.functions[0].n

    @property
    def codomain(self) -> int:
        return self.functions[0].codomain

    def __len__(self):
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def __getitem__(self, i):
        return self.functions[i]


@dataclass(frozen=True)
class DerivativeHistogram:
    u: VecZp
    counts: tuple[int, ...]


def _histogram(values: Sequence[int], codomain: int, shifted: Sequence[int]) -> list[int]:
    counts = [0] * codomain
    for v, w in enumerate(shifted):
        counts[(values[w] - values[v]) % codomain] += 1
    return counts


def derivative_histogram(f: FunctionTable, u: VecZp | Sequence[int]) -> DerivativeHistogram:
    """Counts of B(v+u) - B(v) over all v, indexed by codomain value."""
    if not isinstance(u, VecZp):
        u = VecZp(f.p, tuple(u))
    if u.modulus != f.p or u.n != f.n:
        raise ValueError("shift vector does not live in the function's domain")
    if u.is_zero():
        raise ValueError("derivative direction must be nonzero")
    shifted = addition_table(f.p, f.n)[u.index()]
    return DerivativeHistogram(u, tuple(_histogram(f.values, f.codomain, shifted)))


def _bent_failure(f: FunctionTable) -> int | None:
    """Index of the first direction u != 0 violating bentness, else None."""
    table = addition_table(f.p, f.n)
    m = f.codomain
    if m == f.p:
        target = f.size // m
        for u in range(1, f.size):
            if any(c != target for c in _histogram(f.values, m, table[u])):
                return u
    else:
        for u in range(1, f.size):
            c = _histogram(f.values, 4, table[u])
            if c[0] != c[2] or c[1] != c[3]:
                return u
    return None


def is_bent_odd(f: FunctionTable) -> bool:
    """Every nonzero derivative takes each value of Z_p exactly p^(n-1) times."""
    if f.p == 2 or f.codomain != f.p:
        raise ValueError("is_bent_odd needs odd p and codomain Z_p")
    return _bent_failure(f) is None


def is_bent_z4(f: FunctionTable) -> bool:
    """n(u,0) == n(u,2) and n(u,1) == n(u,3) for every u != 0."""
    if f.p != 2 or f.codomain != 4:
        raise ValueError("is_bent_z4 needs domain Z_2^n and codomain Z_4")
    return _bent_failure(f) is None


def is_bent_z2(f: FunctionTable) -> bool:
    """Boolean bentness: balanced derivatives (used by the real variant)."""
    if f.p != 2 or f.codomain != 2:
        raise ValueError("is_bent_z2 needs domain Z_2^n and codomain Z_2")
    return _bent_failure(f) is None


def is_bent(f: FunctionTable) -> bool:
    return _bent_failure(f) is None


def walsh_bent_oracle(f: FunctionTable) -> bool:
    """|sum_v zeta^(f(v) + u.v)|^2 == p^n for every u, computed in Z[zeta_p]."""
    if f.p == 2 or f.codomain != f.p:
        raise ValueError("walsh_bent_oracle needs odd p and codomain Z_p")
    p, size = f.p, f.size
    dots = dot_table(p, f.n)
    for u in range(size):
        counts = [0] * p
        for v in range(size):
            counts[(f.values[v] + dots[u][v]) % p] += 1
        if norm_sq(CyclotomicInt.from_counts(p, counts)) != size:
            return False
    return True


@dataclass
class MubentReport:
    ok: bool
    size: int
    expected_size: int
    pairs_checked: int = 0
    failing_pair: tuple[int, int] | None = None
    failing_u: tuple[int, ...] | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def full(self) -> bool:
        return self.size == self.expected_size

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "size": self.size,
            "expected_size": self.expected_size,
            "pairs_checked": self.pairs_checked,
            "failing_pair": list(self.failing_pair) if self.failing_pair else None,
            "failing_u": list(self.failing_u) if self.failing_u is not None else None,
            "failures": list(self.failures),
        }


def check_pairwise_bent(functions: Sequence[FunctionTable]) -> MubentReport:
    """Bentness of every pairwise difference, without the size requirement."""
    fs = list(functions)
    size = fs[0].p ** fs[0].n if fs else 0
    report = MubentReport(ok=True, size=len(fs), expected_size=size)
    for f in fs[1:]:
        fs[0]._check(f)
    vecs = all_vectors(fs[0].p, fs[0].n) if fs else ()
    for i, j in combinations(range(len(fs)), 2):
        report.pairs_checked += 1
        bad = _bent_failure(fs[i] - fs[j])
        if bad is not None and report.failing_pair is None:
            report.ok = False
            report.failing_pair = (i, j)
            report.failing_u = vecs[bad]
            report.failures.append(f"difference of functions {i} and {j} is not bent")
    return report


def verify_mubent(functions: MubentSet | Sequence[FunctionTable]) -> MubentReport:
    """Full mubent check: |V| members with every pairwise difference bent."""
    fs = list(functions)
    if not fs:
        raise ValueError("empty function family")
    report = check_pairwise_bent(fs)
    if not report.full:
        report.ok = False
        report.failures.insert(
            0, f"not a full mubent set: {report.size} functions, expected {report.expected_size}"
        )
    return report
