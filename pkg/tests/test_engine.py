import itertools
import random

import numpy as np
import pytest

from mubforge.bent import FunctionTable, MubentSet
from mubforge.constructions import mubent_from_spread_z2, scalar_spread_set_z2, trace_family_odd
from mubforge.cyclotomic import GaussianInt, norm_sq
from mubforge.engine import (
    MubFamily,
    PhaseMatrix,
    build_basis,
    build_mub_family,
    build_real_mub_family,
    build_standard_basis,
    gram_block,
    inner_product,
    verify_complete_mub,
)
from mubforge.search import search_mubent


def float_verdict(family, tol=1e-9):
    """Orthonormality and |<u,v>|^2 == 1/N checked in floating point."""
    N = family.N
    mats = [b.to_complex() for b in family.bases]
    for M in mats:
        if np.abs(M @ M.conj().T - np.eye(N)).max() > tol:
            return False
    for A, B in itertools.combinations(mats, 2):
        if np.abs(np.abs(A @ B.conj().T) ** 2 - 1 / N).max() > tol:
            return False
    return True


SHIPPED = {
    "trace-3-1": lambda: trace_family_odd(3, 1),
    "trace-3-2": lambda: trace_family_odd(3, 2),
    "trace-5-1": lambda: trace_family_odd(5, 1),
    "trace-5-2": lambda: trace_family_odd(5, 2),
    "spread-z2-1": lambda: mubent_from_spread_z2(scalar_spread_set_z2(1)),
    "spread-z2-2": lambda: mubent_from_spread_z2(scalar_spread_set_z2(2)),
    "spread-z2-3": lambda: mubent_from_spread_z2(scalar_spread_set_z2(3)),
}


def test_build_basis_zero_is_character_matrix():
    m = build_basis(FunctionTable.zero(3, 2))
    assert m.exponents[4] == tuple((v[0] * 1 + v[1] * 1) % 3 for v in itertools.product(range(3), repeat=2))


def test_build_basis_square():
    m = build_basis(FunctionTable(3, 1, 3, (0, 1, 1)))
    assert m.exponents[0] == (0, 1, 1)


def test_build_basis_even():
    m = build_basis(FunctionTable(2, 1, 4, (0, 1)))
    assert [m.entry(0, v) for v in range(2)] == [1, GaussianInt(0, 1)]
    assert [m.entry(1, v) for v in range(2)] == [1, GaussianInt(0, -1)]


def test_build_basis_dimension_mismatch():
    with pytest.raises(ValueError):
        build_basis(FunctionTable.zero(3, 1), p=3, n=2)


def test_standard_basis():
    s = build_standard_basis(3, 2)
    assert s.standard_basis
    assert np.array_equal(s.to_complex(), np.eye(9))
    assert inner_product(s.row(1), s.row(2)) == 0
    assert inner_product(s.row(1), s.row(1)) == 1
    b = build_basis(trace_family_odd(3, 2)[4])
    for a, a2 in itertools.product(range(9), repeat=2):
        assert norm_sq(inner_product(s.row(a), b.row(a2))) == 1


def test_inner_product_identities():
    fam = trace_family_odd(3, 2)
    X, Y = build_basis(fam[1]), build_basis(fam[5])
    for a in range(9):
        assert inner_product(X.row(a), X.row(a)) == 9
        for a2 in range(9):
            if a != a2:
                assert inner_product(X.row(a), X.row(a2)) == 0
            assert norm_sq(inner_product(X.row(a), Y.row(a2))) == 9


@pytest.mark.parametrize("name", ["trace-3-2", "spread-z2-3"])
def test_gram_block_matches_inner_product(name):
    fam = build_mub_family(SHIPPED[name]())
    for X, Y in itertools.combinations(fam.bases, 2):
        block = gram_block(X, Y)
        for a, b in itertools.product(range(fam.N), repeat=2):
            assert block[a][b] == inner_product(X.row(a), Y.row(b))


def test_inner_product_matches_float():
    fam = build_mub_family(trace_family_odd(5, 1))
    X, Y = fam.bases[2], fam.bases[4]
    A, B = X.to_complex(normalized=False), Y.to_complex(normalized=False)
    for a, b in itertools.product(range(5), repeat=2):
        assert abs(complex(inner_product(X.row(a), Y.row(b))) - A[a] @ B[b].conj()) < 1e-9


@pytest.mark.parametrize("name", list(SHIPPED))
def test_shipped_families_verify(name):
    fam = build_mub_family(SHIPPED[name]())
    N = fam.N
    rep = verify_complete_mub(fam)
    assert rep.ok and rep.complete
    assert rep.bases_checked == N + 1
    assert rep.pairs_checked == (N + 1) * N // 2
    assert rep.inner_products_checked == (N + 1) * N * (N + 1) // 2 + (N + 1) * N // 2 * N * N
    assert float_verdict(fam)


def test_p3_n1_report():
    rep = verify_complete_mub(build_mub_family(trace_family_odd(3, 1)))
    assert (rep.ok, rep.bases_checked, rep.pairs_checked) == (True, 4, 6)


def test_corruption_is_located():
    fam = list(trace_family_odd(3, 2))
    vals = list(fam[3].values)
    vals[4] = (vals[4] + 1) % 3
    fam[3] = FunctionTable(3, 2, 3, tuple(vals))
    family = build_mub_family(MubentSet(tuple(fam)))
    rep = verify_complete_mub(family)
    assert not rep.ok
    assert rep.first_failure["kind"] == "unbiasedness"
    assert 4 in rep.first_failure["bases"]  # basis 0 is standard, table 3 is basis 4
    assert not float_verdict(family)
    # counters still reflect the full run
    assert rep.pairs_checked == 45


def test_fail_fast_stops_early():
    fam = list(trace_family_odd(3, 2))
    fam[1] = fam[2]
    family = build_mub_family(MubentSet(tuple(fam)))
    full = verify_complete_mub(family)
    quick = verify_complete_mub(family, fail_fast=True)
    assert not quick.ok and quick.first_failure == full.first_failure
    assert quick.inner_products_checked < full.inner_products_checked


def test_incomplete_family_reported():
    fam = build_mub_family(MubentSet(tuple(trace_family_odd(3, 2))[:4]))
    rep = verify_complete_mub(fam)
    assert not rep.ok and not rep.complete
    assert rep.first_failure["kind"] == "incomplete"
    assert verify_complete_mub(fam, require_complete=False).ok


def test_parallel_report_identical():
    fam = list(trace_family_odd(3, 2))
    fam[6] = FunctionTable(3, 2, 3, (1,) + fam[6].values[1:])
    family = build_mub_family(MubentSet(tuple(fam)))
    assert verify_complete_mub(family).to_dict() == verify_complete_mub(family, parallelism=3).to_dict()


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)])
def test_fourier_orthogonality(p, n):
    X = build_basis(FunctionTable.zero(p, n))
    block = gram_block(X, X)
    N = p**n
    for a, b in itertools.product(range(N), repeat=2):
        assert block[a][b] == (N if a == b else 0)


def _permute(m: PhaseMatrix, rows, cols):
    if m.standard_basis:
        return m
    return PhaseMatrix(m.p, m.n, m.encoding, tuple(tuple(m.exponents[r][c] for c in cols) for r in rows))


@pytest.mark.parametrize("name", ["trace-3-2", "spread-z2-3"])
def test_permutation_covariance(name):
    fam = build_mub_family(SHIPPED[name]())
    rng = random.Random(5)
    sigma = list(range(fam.N))
    rng.shuffle(sigma)
    relabeled = MubFamily(tuple(_permute(b, sigma, sigma) for b in fam.bases))
    assert verify_complete_mub(relabeled).to_dict() == verify_complete_mub(fam).to_dict()


def test_real_family_n2():
    best = search_mubent(2, 2, 2).families[0]
    assert len(best) == 2
    fam = build_real_mub_family(best)
    assert len(fam) == 3
    assert all(np.isrealobj(b.to_complex().real) for b in fam.bases)
    for b in fam.bases[1:]:
        assert np.allclose(b.to_complex().imag, 0)
    rep = verify_complete_mub(fam, require_complete=False)
    assert rep.ok and not rep.complete
    assert float_verdict(fam)


def test_real_family_empty_is_standard_only():
    fam = MubFamily((build_standard_basis(2, 2),))
    assert verify_complete_mub(fam, require_complete=False).ok


def test_real_family_cannot_be_extended():
    best = list(search_mubent(2, 2, 2).families[0])
    members = {f.values for f in best}
    for vals in itertools.product(range(2), repeat=4):
        if vals in members:
            continue
        fam = build_real_mub_family(best + [FunctionTable(2, 2, 2, vals)])
        assert not verify_complete_mub(fam, require_complete=False).ok


def test_real_family_rejects_z4():
    with pytest.raises(ValueError):
        build_real_mub_family([FunctionTable.zero(2, 2, 4)])
