import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mubforge.bent import (
    FunctionTable,
    MubentSet,
    check_pairwise_bent,
    derivative_histogram,
    is_bent,
    is_bent_odd,
    is_bent_z2,
    is_bent_z4,
    verify_mubent,
    walsh_bent_oracle,
)
from mubforge.constructions import mubent_from_spread_z2, scalar_spread_set_z2, trace_family_odd
from mubforge.zmod import all_vectors, dot_table


def brute_histogram(f, u):
    counts = [0] * f.codomain
    for v in all_vectors(f.p, f.n):
        w = tuple((a + b) % f.p for a, b in zip(v, u))
        counts[(f[w] - f[v]) % f.codomain] += 1
    return counts


def table(p, n, codomain, fn):
    return FunctionTable.from_function(p, n, codomain, fn)


def test_table_validation():
    with pytest.raises(ValueError):
        FunctionTable(3, 1, 4, (0, 0, 0))
    with pytest.raises(ValueError):
        FunctionTable(3, 1, 3, (0, 0))
    assert FunctionTable(3, 1, 3, (4, 5, -1)).values == (1, 2, 2)


def test_histogram_examples():
    assert derivative_histogram(FunctionTable.zero(3, 1), (1,)).counts == (3, 0, 0)
    sq = table(3, 1, 3, lambda v: v[0] ** 2)
    assert derivative_histogram(sq, (1,)).counts == (1, 1, 1)
    lin = table(3, 1, 3, lambda v: v[0])
    assert derivative_histogram(lin, (1,)).counts == (0, 3, 0)


def test_histogram_rejects_zero_direction():
    with pytest.raises(ValueError):
        derivative_histogram(FunctionTable.zero(3, 2), (0, 0))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(3, 2, 3), (2, 3, 4), (5, 1, 5), (2, 2, 2)]), st.data())
def test_histogram_matches_enumeration(shape, data):
    p, n, m = shape
    vals = data.draw(st.lists(st.integers(0, m - 1), min_size=p**n, max_size=p**n))
    u = data.draw(st.sampled_from(all_vectors(p, n)[1:]))
    f = FunctionTable(p, n, m, tuple(vals))
    h = derivative_histogram(f, u)
    assert list(h.counts) == brute_histogram(f, u)
    assert sum(h.counts) == p**n


def test_bent_odd_examples():
    assert is_bent_odd(table(3, 1, 3, lambda v: v[0] ** 2))
    assert not is_bent_odd(FunctionTable.zero(3, 1))
    with pytest.raises(ValueError):
        is_bent_odd(FunctionTable.zero(2, 2, 4))


def test_trace_members_are_bent():
    fam = trace_family_odd(3, 2)
    assert fam[0].is_zero()
    assert all(is_bent_odd(f) for f in fam.functions[1:])


def test_bent_z4_examples():
    f = FunctionTable(2, 1, 4, (0, 1))
    assert derivative_histogram(f, (1,)).counts == (0, 1, 0, 1)
    assert is_bent_z4(f)
    assert derivative_histogram(FunctionTable.zero(2, 1, 4), (1,)).counts == (2, 0, 0, 0)
    assert not is_bent_z4(FunctionTable.zero(2, 1, 4))
    with pytest.raises(ValueError):
        is_bent_z4(FunctionTable.zero(3, 1))


def test_bent_z2():
    assert is_bent_z2(FunctionTable(2, 2, 2, (0, 0, 0, 1)))
    assert not is_bent_z2(FunctionTable(2, 2, 2, (0, 1, 0, 1)))


def test_verify_mubent_trace_family():
    rep = verify_mubent(trace_family_odd(3, 2))
    assert rep.ok and rep.pairs_checked == 36


def test_verify_mubent_duplicate_fails():
    fam = list(trace_family_odd(3, 1))
    fam[2] = fam[1]
    rep = verify_mubent(fam)
    assert not rep.ok
    assert rep.failing_pair == (1, 2)
    assert rep.failing_u == (1,)


def test_verify_mubent_wrong_size():
    fam = list(trace_family_odd(3, 1))[:2]
    rep = verify_mubent(fam)
    assert not rep.ok
    assert rep.pairs_checked == 1
    assert rep.failures[0].startswith("not a full mubent set")
    assert check_pairwise_bent(fam).ok


def test_verify_mubent_f4_spread():
    fam = mubent_from_spread_z2(scalar_spread_set_z2(2))
    assert verify_mubent(fam).ok


def test_walsh_examples():
    assert walsh_bent_oracle(table(3, 1, 3, lambda v: v[0] ** 2))
    assert not walsh_bent_oracle(FunctionTable.zero(3, 1))


def _float_walsh(f):
    import cmath
    z = cmath.exp(2j * cmath.pi / f.p)
    dots = dot_table(f.p, f.n)
    return all(
        abs(abs(sum(z ** ((f.values[v] + dots[u][v]) % f.p) for v in range(f.size))) ** 2 - f.size) < 1e-9
        for u in range(f.size)
    )


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2)])
def test_bent_tests_agree_exhaustively(p, n):
    for vals in itertools.product(range(p), repeat=p**n):
        f = FunctionTable(p, n, p, vals)
        assert is_bent_odd(f) == walsh_bent_oracle(f)


def test_bent_agrees_with_float_walsh_on_z3():
    for vals in itertools.product(range(3), repeat=3):
        f = FunctionTable(3, 1, 3, vals)
        assert is_bent_odd(f) == _float_walsh(f)


@pytest.mark.parametrize("p,n", [(7, 1), (5, 2)])
def test_bent_tests_agree_randomly(p, n):
    rng = random.Random(p * 10 + n)
    bent = 0
    for _ in range(10**4 if p**n <= 7 else 2000):
        f = FunctionTable(p, n, p, tuple(rng.randrange(p) for _ in range(p**n)))
        b = is_bent_odd(f)
        bent += b
        assert b == walsh_bent_oracle(f)
    # also hit bent inputs deliberately: quadratic forms
    for f in trace_family_odd(p, n).functions[1:]:
        assert is_bent_odd(f) and walsh_bent_oracle(f)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([(3, 2, 3), (2, 2, 4), (2, 3, 4), (5, 1, 5), (2, 2, 2)]), st.data())
def test_bent_translation_invariant(shape, data):
    p, n, m = shape
    vals = data.draw(st.lists(st.integers(0, m - 1), min_size=p**n, max_size=p**n))
    t = data.draw(st.sampled_from(all_vectors(p, n)))
    c = data.draw(st.integers(0, m - 1))
    f = FunctionTable(p, n, m, tuple(vals))
    assert is_bent(f) == is_bent(f.translate(t)) == is_bent(f.add_constant(c))


def test_translate():
    f = FunctionTable(3, 1, 3, (0, 1, 2))
    assert f.translate((1,)).values == (1, 2, 0)


@pytest.mark.parametrize("fam", [trace_family_odd(3, 2), mubent_from_spread_z2(scalar_spread_set_z2(3))],
                         ids=["trace-9", "spread-8"])
def test_subsets_stay_pairwise_bent(fam):
    rng = random.Random(1)
    for _ in range(20):
        sub = rng.sample(list(fam), rng.randint(1, len(fam)))
        assert check_pairwise_bent(sub).ok


def test_adding_linear_function_preserves_differences():
    fam = trace_family_odd(3, 2)
    for a in all_vectors(3, 2):
        lin = FunctionTable.from_function(3, 2, 3, lambda v: sum(x * y for x, y in zip(a, v)))
        shifted = MubentSet(tuple(f + lin for f in fam))
        for i, j in itertools.combinations(range(len(fam)), 2):
            assert shifted[i] - shifted[j] == fam[i] - fam[j]
        assert verify_mubent(shifted).ok


def test_mixed_domains_rejected():
    with pytest.raises(ValueError):
        MubentSet((FunctionTable.zero(3, 1), FunctionTable.zero(3, 2)))
