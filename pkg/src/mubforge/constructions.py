"""Explicit mubent families: quadratic forms, spread sets, Z_4 hat-lifting."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .bent import FunctionTable, MubentSet
from .gf import GaloisField, GFElement, SelfDualBasis, find_self_dual_basis
from .zmod import Matrix, SymMatrix, VecZp, all_vectors, is_nonsingular, solve_mod_p


# -- odd characteristic ------------------------------------------------------

def quadratic_odd(m: Matrix) -> FunctionTable:
    """v -> v M v^T / 2 over Z_p, p odd (division is multiplication by 2^-1)."""
    p = m.modulus
    if p == 2 or p == 4:
        raise ValueError("quadratic_odd needs an odd prime modulus; 2 has no inverse mod 2")
    half = pow(2, -1, p)
    return FunctionTable.from_function(p, m.n, p, lambda v: m.bilinear(v, v) * half)


def _field_for(p: int, n: int, field: GaloisField | None) -> GaloisField:
    field = field or GaloisField(p, n)
    if (field.p, field.n) != (p, n):
        raise ValueError("field does not match (p, n)")
    return field


def trace_family_odd(p: int, n: int, field: GaloisField | None = None) -> MubentSet:
    """{x -> Tr(a x^2) : a in GF(p^n)}, x coordinatized by the polynomial basis.

    The vector (c_0, ..., c_{n-1}) stands for c_0 + c_1 t + ... + c_{n-1} t^{n-1}.
    """
    if p == 2:
        raise ValueError("trace_family_odd needs odd p")
    field = _field_for(p, n, field)
    xs = [field(v) for v in all_vectors(p, n)]
    squares = [x * x for x in xs]
    tr = field.trace_table
    return MubentSet(tuple(
        FunctionTable(p, n, p, tuple(tr[(a * s).coeffs] for s in squares))
        for a in field.elements()
    ))


def trace_spread_set_odd(p: int, n: int, field: GaloisField | None = None) -> "SpreadSet":
    """Symmetric spread set {M_a}: M_a[i][j] = 2 Tr(a t^i t^j), so v M_a v^T / 2 = Tr(a x^2)."""
    if p == 2:
        raise ValueError("trace_spread_set_odd needs odd p")
    field = _field_for(p, n, field)
    basis = [field(tuple(int(i == k) for k in range(n))) for i in range(n)]
    tr = field.trace_table
    mats = []
    for a in field.elements():
        rows = tuple(tuple(2 * tr[(a * bi * bj).coeffs] for bj in basis) for bi in basis)
        mats.append(SymMatrix(p, rows))
    return SpreadSet(tuple(mats))


def mubent_from_spread_odd(s: "SpreadSet") -> MubentSet:
    if not all(m.is_symmetric() for m in s.matrices):
        raise ValueError("mubent generation needs symmetric matrices")
    return MubentSet(tuple(quadratic_odd(m) for m in s.matrices))


# -- spread sets -----------------------------------------------------------------

@dataclass(frozen=True)
class SpreadSet:
    """Candidate spread set; membership is certified by ``verify_spread_set``."""

    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        ms = tuple(self.matrices)
        if not ms:
            raise ValueError("empty spread set")
        for m in ms:
            if (m.modulus, m.n) != (ms[0].modulus, ms[0].n):
                raise ValueError("spread set matrices must share p and n")
        object.__setattr__(self, "matrices", ms)

    @property
    def p(self) -> int:
        return self.matrices[0].modulus

    @property
    def n(self) -> int:
        return self.matrices[0].n

    def __len__(self):
        return len(self.matrices)


@dataclass
class SpreadReport:
    ok: bool
    size: int
    expected_size: int
    pairs_checked: int
    failing_pair: tuple[int, int] | None = None
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "size": self.size,
            "expected_size": self.expected_size,
            "pairs_checked": self.pairs_checked,
            "failing_pair": list(self.failing_pair) if self.failing_pair else None,
            "reason": self.reason,
        }


def verify_spread_set(s: SpreadSet | Sequence[Matrix]) -> SpreadReport:
    ms = list(s.matrices if isinstance(s, SpreadSet) else s)
    p, n = ms[0].modulus, ms[0].n
    if any((m.modulus, m.n) != (p, n) for m in ms):
        raise ValueError("spread set matrices must share p and n")
    report = SpreadReport(ok=True, size=len(ms), expected_size=p**n, pairs_checked=0)
    for i, j in combinations(range(len(ms)), 2):
        report.pairs_checked += 1
        if report.failing_pair is None and not is_nonsingular(ms[i] - ms[j]):
            report.ok = False
            report.failing_pair = (i, j)
            report.reason = f"difference of matrices {i} and {j} is singular"
    if len(ms) != p**n:
        report.ok = False
        report.reason = f"spread set has {len(ms)} matrices, expected {p**n}"
    return report


# -- characteristic 2 ------------------------------------------------------------

def hat_vector(v: VecZp | Sequence[int]) -> VecZp:
    """Read a Z_2 vector's 0/1 coordinates in Z_4."""
    coords = v.coords if isinstance(v, VecZp) else tuple(v)
    if isinstance(v, VecZp) and v.modulus != 2:
        raise ValueError("hat_vector lifts vectors over Z_2")
    if any(c not in (0, 1) for c in coords):
        raise ValueError("hat_vector expects 0/1 coordinates")
    return VecZp(4, coords)


@dataclass(frozen=True)
class LiftedMatrix:
    source: Matrix
    lifted: Matrix


def lift_matrix(r: Matrix) -> LiftedMatrix:
    """R over Z_2 -> R-hat over Z_4 with the same 0/1 entries."""
    if r.modulus != 2:
        raise ValueError("lift_matrix expects a matrix over Z_2")
    return LiftedMatrix(r, type(r)(4, r.entries))


def quadratic_z4(m: Matrix) -> FunctionTable:
    """B_M(v) = v-hat M v-hat^T mod 4 on Z_2^n."""
    if m.modulus != 4:
        raise ValueError("quadratic_z4 expects a matrix over Z_4")
    if not m.is_symmetric():
        raise ValueError("quadratic_z4 expects a symmetric matrix")
    return FunctionTable.from_function(2, m.n, 4, lambda v: m.bilinear(v, v))


def mubent_from_spread_z2(s: SpreadSet) -> MubentSet:
    """{B_R-hat : R in S - S_0}, where S_0 is the first matrix (so S_0 maps to zero)."""
    if s.p != 2:
        raise ValueError("mubent_from_spread_z2 expects matrices over Z_2")
    for k, m in enumerate(s.matrices):
        if not m.is_symmetric():
            raise ValueError(f"spread set member {k} is not symmetric")
    pivot = s.matrices[0]
    return MubentSet(tuple(quadratic_z4(lift_matrix(m - pivot).lifted) for m in s.matrices))


def mult_matrix_self_adjoint(c: GFElement, basis: SelfDualBasis) -> SymMatrix:
    """Matrix of x -> c x in ``basis`` (row convention: row i holds c*b_i).

    Coordinates are found by solving against the basis rather than read off
    through the trace, so a broken basis shows up as an asymmetric matrix.
    """
    if c.field != basis.field:
        raise ValueError("element and basis live in different fields")
    p = basis.field.p
    rows_b = [b.coeffs for b in basis.basis]
    rows = [tuple(solve_mod_p(rows_b, (c * b).coeffs, p)) for b in basis.basis]
    m = Matrix(p, tuple(rows))
    if not m.is_symmetric():
        raise ValueError("multiplication matrix is not symmetric; basis is not self-dual")
    return SymMatrix(p, m.entries)


def scalar_spread_set_z2(n: int, basis: SelfDualBasis | None = None, seed: int = 0) -> SpreadSet:
    """{x -> c x : c in GF(2^n)} as symmetric matrices in a self-dual basis (0 first)."""
    basis = basis or find_self_dual_basis(n, seed=seed)
    if basis.n != n:
        raise ValueError("basis degree does not match n")
    return SpreadSet(tuple(mult_matrix_self_adjoint(c, basis) for c in basis.field.elements()))
