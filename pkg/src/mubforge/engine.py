"""Phase matrices for the bases M_inf and M_B, and exact MUB certification.

Every basis vector is kept unnormalized: rows of a non-standard basis have
squared length N, standard rows have length 1.  Two bases are unbiased iff
every cross inner product alpha satisfies N |alpha|^2 == |x|^2 |y|^2, which
is the normalized condition |(u, v)|^2 = 1/N written over the integers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .bent import FunctionTable, MubentSet
from .cyclotomic import CyclotomicInt, GaussianInt, i_power, norm_sq, root_power
from .zmod import dot_table

ZETA = "zeta_p"
PM_I = "pm_i"
STANDARD = "standard"


@dataclass(frozen=True)
class PhaseMatrix:
    """N x N matrix of root-of-unity exponents; row a is the vector e_{a,B}.

    ``zeta_p`` rows hold integers e meaning zeta^e.  ``pm_i`` rows hold pairs
    (s, t) meaning (-1)^s i^t.  ``standard`` is the identity (no exponents).
    """

    p: int
    n: int
    encoding: str
    exponents: tuple | None = None

    def __post_init__(self):
        N = self.p**self.n
        if self.encoding == STANDARD:
            if self.exponents is not None:
                raise ValueError("standard basis carries no exponents")
            return
        if self.encoding == ZETA:
            if self.p == 2:
                raise ValueError("zeta_p encoding needs odd p")
            rows = tuple(tuple(int(e) % self.p for e in r) for r in self.exponents)
        elif self.encoding == PM_I:
            if self.p != 2:
                raise ValueError("pm_i encoding needs p = 2")
            rows = tuple(tuple((int(s) % 2, int(t) % 4) for s, t in r) for r in self.exponents)
        else:
            raise ValueError(f"unknown encoding {self.encoding!r}")
        if len(rows) != N or any(len(r) != N for r in rows):
            raise ValueError(f"phase matrix must be {N} x {N}")
        object.__setattr__(self, "exponents", rows)

    @property
    def N(self) -> int:
        return self.p**self.n

    @property
    def standard_basis(self) -> bool:
        return self.encoding == STANDARD

    @property
    def self_norm(self) -> int:
        """Squared length of every unnormalized row."""
        return 1 if self.standard_basis else self.N

    @property
    def normalization(self) -> str:
        return "1" if self.standard_basis else f"1/sqrt({self.N})"

    @cached_property
    def phase_array(self) -> np.ndarray:
        """Exponents folded to a single root: zeta^e (odd) or i^q with q = 2s + t (p = 2)."""
        if self.encoding == ZETA:
            return np.array(self.exponents, dtype=np.int64)
        if self.encoding == PM_I:
            arr = np.array(self.exponents, dtype=np.int64)
            return (2 * arr[..., 0] + arr[..., 1]) % 4
        raise ValueError("standard basis has no phase array")

    @property
    def root_order(self) -> int:
        return 4 if self.p == 2 else self.p

    def row(self, a: int) -> "PhaseRow":
        return PhaseRow(self, a)

    def entry(self, a: int, v: int):
        """Exact entry of the unnormalized row a at coordinate v."""
        if self.standard_basis:
            val = int(a == v)
            return GaussianInt(val) if self.p == 2 else CyclotomicInt.from_int(self.p, val)
        if self.encoding == ZETA:
            return root_power(self.p, self.exponents[a][v])
        s, t = self.exponents[a][v]
        return i_power(2 * s + t)

    def to_complex(self, normalized: bool = True) -> np.ndarray:
        """Floating-point shadow of the basis (rows are vectors)."""
        if self.standard_basis:
            return np.eye(self.N, dtype=complex)
        k = self.root_order
        mat = np.exp(2j * np.pi * self.phase_array / k)
        return mat / np.sqrt(self.N) if normalized else mat


class PhaseRow(NamedTuple):
    matrix: PhaseMatrix
    index: int


@dataclass(frozen=True)
class MubFamily:
    bases: tuple[PhaseMatrix, ...]
    provenance: MubentSet | None = None

    @property
    def p(self) -> int:
        return self.bases[0].p

    @property
    def n(self) -> int:
        return self.bases[0].n

    @property
    def N(self) -> int:
        return self.bases[0].N

    def __len__(self):
        return len(self.bases)


def build_standard_basis(p: int, n: int) -> PhaseMatrix:
    return PhaseMatrix(p, n, STANDARD)


def build_basis(B: FunctionTable, p: int | None = None, n: int | None = None) -> PhaseMatrix:
    """Rows e_{a,B}: zeta^(a.v + B(v)) for odd p, (-1)^(a.v) i^B(v) for p = 2.

    A Z_2-valued table over Z_2^n gives the real variant (-1)^(a.v + B(v)).
    """
    if (p is not None and p != B.p) or (n is not None and n != B.n):
        raise ValueError(f"table lives on Z_{B.p}^{B.n}, engine expects Z_{p}^{n}")
    dots = dot_table(B.p, B.n)
    vals = B.values
    if B.p != 2:
        rows = tuple(tuple((d + b) % B.p for d, b in zip(drow, vals)) for drow in dots)
        return PhaseMatrix(B.p, B.n, ZETA, rows)
    if B.codomain == 4:
        rows = tuple(tuple((d, b) for d, b in zip(drow, vals)) for drow in dots)
    else:
        rows = tuple(tuple(((d + b) % 2, 0) for d, b in zip(drow, vals)) for drow in dots)
    return PhaseMatrix(2, B.n, PM_I, rows)


def build_mub_family(functions: MubentSet) -> MubFamily:
    """M_inf followed by M_B for each B, in the order given."""
    bases = [build_standard_basis(functions.p, functions.n)]
    bases += [build_basis(B) for B in functions]
    return MubFamily(tuple(bases), functions)


def build_real_mub_family(functions) -> MubFamily:
    """Real bases (+-1 entries) from Z_2-valued tables, plus the standard basis."""
    fs = list(functions)
    if not fs:
        raise ValueError("need the domain; pass at least one table or use build_standard_basis")
    for f in fs:
        if f.p != 2 or f.codomain != 2:
            raise ValueError("real MUBs need Z_2-valued tables on Z_2^n")
    bases = [build_standard_basis(2, fs[0].n)] + [build_basis(f) for f in fs]
    return MubFamily(tuple(bases), MubentSet(tuple(fs)))


def _ring_value(p: int, counts) -> CyclotomicInt | GaussianInt:
    counts = [int(c) for c in counts]
    return GaussianInt.from_counts(counts) if p == 2 else CyclotomicInt.from_counts(p, counts)


def inner_product(x: PhaseRow, y: PhaseRow):
    """(x, y) = sum_v x_v conj(y_v), exact."""
    X, a = x
    Y, b = y
    if (X.p, X.n) != (Y.p, Y.n):
        raise ValueError("rows come from different spaces")
    if X.standard_basis:
        return Y.entry(b, a).conj()
    if Y.standard_basis:
        return X.entry(a, b)
    k = X.root_order
    diff = (X.phase_array[a] - Y.phase_array[b]) % k
    return _ring_value(X.p, np.bincount(diff, minlength=k))


def gram_block(X: PhaseMatrix, Y: PhaseMatrix) -> list[list]:
    """All inner products (x_a, y_b), exact, as a nested list indexed [a][b]."""
    N = X.N
    if X.standard_basis or Y.standard_basis:
        return [[inner_product(X.row(a), Y.row(b)) for b in range(N)] for a in range(N)]
    k = X.root_order
    diff = (X.phase_array[:, None, :] - Y.phase_array[None, :, :]) % k
    counts = np.stack([(diff == j).sum(axis=2) for j in range(k)], axis=-1)
    return [[_ring_value(X.p, counts[a, b]) for b in range(N)] for a in range(N)]


# -- verification -------------------------------------------------------------------

@dataclass
class VerificationReport:
    ok: bool = True
    complete: bool = True
    bases_checked: int = 0
    pairs_checked: int = 0
    inner_products_checked: int = 0
    first_failure: dict | None = None
    expected_bases: int = 0
    found_bases: int = 0

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "complete": self.complete,
            "expected_bases": self.expected_bases,
            "found_bases": self.found_bases,
            "bases_checked": self.bases_checked,
            "pairs_checked": self.pairs_checked,
            "inner_products_checked": self.inner_products_checked,
            "first_failure": self.first_failure,
        }


def _check_basis(X: PhaseMatrix, i: int) -> tuple[int, dict | None]:
    gram = gram_block(X, X)
    N, target = X.N, X.self_norm
    count, failure = 0, None
    for a in range(N):
        for b in range(a, N):
            count += 1
            want = target if a == b else 0
            if failure is None and gram[a][b] != want:
                failure = {
                    "kind": "self_norm" if a == b else "orthogonality",
                    "bases": [i, i],
                    "vectors": [a, b],
                    "value": str(gram[a][b]),
                    "expected": want,
                }
    return count, failure


def _check_pair(X: PhaseMatrix, Y: PhaseMatrix, i: int, j: int) -> tuple[int, dict | None]:
    gram = gram_block(X, Y)
    N = X.N
    # N |alpha|^2 == |x|^2 |y|^2
    num = X.self_norm * Y.self_norm
    if num % N:
        raise ValueError("cannot compare two standard bases")
    want = num // N
    count, failure = 0, None
    for a in range(N):
        for b in range(N):
            count += 1
            value = norm_sq(gram[a][b])
            if failure is None and value != want:
                failure = {
                    "kind": "unbiasedness",
                    "bases": [i, j],
                    "vectors": [a, b],
                    "value": str(value),
                    "expected": want,
                }
    return count, failure


def _run_task(task):
    kind, mats, idx = task
    if kind == "basis":
        return kind, _check_basis(mats[0], idx[0])
    return kind, _check_pair(mats[0], mats[1], idx[0], idx[1])


def verify_complete_mub(
    family: MubFamily,
    parallelism: int = 1,
    fail_fast: bool = False,
    require_complete: bool = True,
) -> VerificationReport:
    """Exact check that ``family`` is a set of pairwise unbiased orthogonal bases.

    Work is split into one task per basis (orthogonality and self norms) and
    one task per basis pair (unbiasedness), reduced in a fixed order so the
    report does not depend on ``parallelism``.  With ``require_complete`` the
    family must also have exactly N + 1 bases.
    """
    bases = family.bases
    p, n = bases[0].p, bases[0].n
    for X in bases:
        if (X.p, X.n) != (p, n):
            raise ValueError("bases live in different spaces")
    N = p**n
    report = VerificationReport(expected_bases=N + 1, found_bases=len(bases))
    if len(bases) != N + 1:
        report.complete = False
        if require_complete:
            report.ok = False
            report.first_failure = {
                "kind": "incomplete",
                "detail": f"{len(bases)} bases, a complete set has {N + 1}",
            }

    tasks = [("basis", (X,), (i,)) for i, X in enumerate(bases)]
    tasks += [
        ("pair", (bases[i], bases[j]), (i, j))
        for i in range(len(bases))
        for j in range(i + 1, len(bases))
    ]
    if parallelism > 1 and not fail_fast and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * parallelism)))
            results = list(results)
    else:
        results = map(_run_task, tasks)

    for kind, (count, failure) in results:
        if kind == "basis":
            report.bases_checked += 1
        else:
            report.pairs_checked += 1
        report.inner_products_checked += count
        if failure is not None and report.ok:
            report.ok = False
            report.first_failure = failure
        elif failure is not None and report.first_failure is None:
            report.first_failure = failure
        if fail_fast and not report.ok:
            break
    return report
