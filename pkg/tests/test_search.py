import itertools

import pytest

from mubforge.bent import FunctionTable, check_pairwise_bent, is_bent_z2, verify_mubent
from mubforge.search import search_mubent


def brute_max_family(p, n, m):
    """Largest set containing 0 with pairwise-bent differences, by subset enumeration."""
    from mubforge.bent import is_bent

    size = p**n
    tables = [FunctionTable(p, n, m, v) for v in itertools.product(range(m), repeat=size)]
    bent = [f for f in tables if not f.is_zero() and is_bent(f)]
    best = 1
    for k in range(1, len(bent) + 1):
        found = any(
            all(is_bent(a - b) for a, b in itertools.combinations(combo, 2))
            for combo in itertools.combinations(bent, k)
        )
        if not found:
            break
        best = k + 1
    return best


def test_boolean_z2_squared_bound():
    r = search_mubent(2, 2, 2)
    assert r.exhaustive and not r.budget_exhausted
    assert r.max_family_size == 2 == 2 ** (2 - 1)
    assert r.max_family_size == brute_max_family(2, 2, 2)
    for fam in r.families:
        assert any(f.is_zero() for f in fam)
        assert all(is_bent_z2(f) for f in fam if not f.is_zero())


def test_z3_family_of_three():
    r = search_mubent(3, 1, 3)
    assert r.max_family_size == 3 == brute_max_family(3, 1, 3)
    found = {tuple(sorted(f.values for f in fam)) for fam in r.families}
    assert ((0, 0, 0), (0, 1, 1), (0, 2, 2)) in found
    for fam in r.families:
        if len(fam) == 3:
            assert verify_mubent(fam).ok


def test_z4_full_families_on_z2_squared():
    r = search_mubent(2, 2, 4)
    assert r.exhaustive
    assert r.max_family_size == 4
    full = [fam for fam in r.families if len(fam) == 4]
    assert full
    assert all(verify_mubent(fam).ok for fam in full)


def test_max_results_and_order():
    r = search_mubent(2, 2, 4, max_results=3)
    assert len(r.families) == 3
    assert [len(f) for f in r.families] == sorted((len(f) for f in r.families), reverse=True)


def test_budget_exhaustion_flags_partial():
    r = search_mubent(2, 2, 4, budget=100)
    assert r.budget_exhausted and not r.exhaustive
    assert r.candidates_examined == 100
    for fam in r.families:
        assert check_pairwise_bent(fam).ok


def test_random_mode_is_seeded():
    a = search_mubent(2, 2, 4, mode="random", budget=2000, seed=7)
    b = search_mubent(2, 2, 4, mode="random", budget=2000, seed=7)
    assert not a.exhaustive
    assert [[f.values for f in fam] for fam in a.families] == [[f.values for f in fam] for fam in b.families]
    assert all(check_pairwise_bent(fam).ok for fam in a.families)


def test_bad_arguments():
    with pytest.raises(ValueError):
        search_mubent(3, 1, 4)
    with pytest.raises(ValueError):
        search_mubent(2, 2, 2, mode="greedy")
