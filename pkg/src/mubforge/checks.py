"""Acceptance checks shared by ``mubforge selfcheck`` and the test suite.

Each check returns a ``CheckResult``; runtime limits are enforced but never
printed, so reports are byte-identical across runs.
"""

from __future__ import annotations

import io
import itertools
import random
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import gf
from .bent import FunctionTable, MubentSet, is_bent_odd, is_bent_z4, verify_mubent, walsh_bent_oracle
from .constructions import (
    mubent_from_spread_z2,
    quadratic_z4,
    scalar_spread_set_z2,
    trace_family_odd,
    verify_spread_set,
)
from .cyclotomic import norm_sq
from .engine import build_mub_family, build_real_mub_family, gram_block, verify_complete_mub
from .search import search_mubent
from .zmod import SymMatrix, all_vectors, is_nonsingular, reduce_mod2


@dataclass
class CheckResult:
    key: str
    title: str
    ok: bool
    detail: str
    limit_s: float | None = None

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  [{self.key}] {self.title}: {self.detail}"

    def to_dict(self) -> dict:
        return {"key": self.key, "title": self.title, "ok": self.ok, "detail": self.detail}


def _timed(key: str, title: str, limit: float | None, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported by name
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed > limit:
        ok = False
        detail += f"; exceeded the {limit:g} s runtime limit"
    return CheckResult(key, title, ok, detail, limit)


# -- field table --------------------------------------------------------------------

def check_field_table() -> tuple[bool, str]:
    """Field axioms on the small fields in use, and primitivity of every modulus."""
    table = gf.modulus_table()
    problems = []
    for (p, n), coeffs in sorted(table.items()):
        field = gf.GaloisField(p, n, coeffs)
        if n <= 3 or p == 2:
            for axiom in gf.field_axiom_failures(field, samples=2000):
                problems.append(f"GF({p}^{n}): {axiom}")
        elif not gf.is_primitive_polynomial(coeffs, p):
            problems.append(f"GF({p}^{n}): multiplicative group order {p**n - 1}")
    if problems:
        return False, "field axiom failed: " + "; ".join(problems)
    return True, f"{len(table)} modulus polynomials pass"


# -- criteria -----------------------------------------------------------------------

def _odd_family_check(p: int, n: int, parallelism: int) -> tuple[bool, str]:
    fam = trace_family_odd(p, n)
    N = p**n
    mubent = verify_mubent(fam)
    family = build_mub_family(fam)
    rep = verify_complete_mub(family, parallelism=parallelism)
    # every cross inner product between non-standard bases has norm^2 == N
    cross_ok = all(
        norm_sq(x) == N
        for X, Y in itertools.combinations(family.bases[1:], 2)
        for row in gram_block(X, Y)
        for x in row
    )
    want_pairs = (N + 1) * N // 2
    ok = (
        mubent.ok and rep.ok and cross_ok
        and len(family) == N + 1 and rep.pairs_checked == want_pairs
    )
    return ok, (
        f"p={p} n={n}: {len(family)} bases, {rep.pairs_checked} basis pairs, "
        f"{rep.inner_products_checked} inner products, mubent={mubent.ok}, "
        f"cross norm^2=={N}: {cross_ok}, verified={rep.ok}"
    )


def criterion_1(parallelism: int = 1) -> tuple[bool, str]:
    return _odd_family_check(3, 1, parallelism)


def criterion_2a(parallelism: int = 1) -> tuple[bool, str]:
    return _odd_family_check(3, 2, parallelism)


def criterion_2b(parallelism: int = 1) -> tuple[bool, str]:
    return _odd_family_check(5, 1, parallelism)


def criterion_3(parallelism: int = 1, seed: int = 0) -> tuple[bool, str]:
    parts, ok = [], True
    for n in (1, 2, 3):
        basis = gf.find_self_dual_basis(n, seed=seed)
        identity = [[int(i == j) for j in range(n)] for i in range(n)]
        gram_ok = gf.gram_matrix(basis.basis) == identity
        spread = scalar_spread_set_z2(n, basis)
        spread_ok = verify_spread_set(spread).ok
        fam = mubent_from_spread_z2(spread)
        mubent_ok = verify_mubent(fam).ok
        family = build_mub_family(fam)
        rep = verify_complete_mub(family, parallelism=parallelism)
        N = 2**n
        this = gram_ok and spread_ok and mubent_ok and rep.ok and len(family) == N + 1
        ok = ok and this
        parts.append(f"N={N}: {len(family)} bases {'ok' if this else 'FAILED'}")
    return ok, ", ".join(parts)


def _symmetric_matrices(modulus: int, n: int):
    upper = [(i, j) for i in range(n) for j in range(i, n)]
    for vals in itertools.product(range(modulus), repeat=len(upper)):
        e = [[0] * n for _ in range(n)]
        for (i, j), x in zip(upper, vals):
            e[i][j] = e[j][i] = x
        yield SymMatrix(modulus, tuple(map(tuple, e)))


def criterion_4() -> tuple[bool, str]:
    bent_checked = bent_fail = cocycle_checked = cocycle_fail = 0
    for n in (1, 2):
        vecs = all_vectors(2, n)
        for m in _symmetric_matrices(4, n):
            B = quadratic_z4(m)
            if is_nonsingular(reduce_mod2(m)):
                bent_checked += 1
                bent_fail += not is_bent_z4(B)
            for u, v in itertools.product(vecs, repeat=2):
                cocycle_checked += 1
                uv = tuple((a + b) % 2 for a, b in zip(u, v))
                if B[uv] != (B[u] + B[v] + 2 * m.bilinear(u, v)) % 4:
                    cocycle_fail += 1
    ok = bent_fail == 0 and cocycle_fail == 0
    return ok, (
        f"{bent_checked} matrices nonsingular mod 2, {bent_fail} not bent; "
        f"{cocycle_checked} cocycle instances, {cocycle_fail} violations"
    )


def criterion_5(seed: int = 0, samples: int = 10**4) -> tuple[bool, str]:
    disagree = 0
    exhaustive = [FunctionTable(3, 1, 3, v) for v in itertools.product(range(3), repeat=3)]
    rng = random.Random(seed)
    sampled = [FunctionTable(3, 2, 3, tuple(rng.randrange(3) for _ in range(9))) for _ in range(samples)]
    bent_count = 0
    for f in exhaustive + sampled:
        a, b = is_bent_odd(f), walsh_bent_oracle(f)
        bent_count += a
        disagree += a != b
    return disagree == 0, (
        f"{len(exhaustive)} functions on Z_3 + {len(sampled)} random on Z_3^2, "
        f"{bent_count} bent, {disagree} disagreements"
    )


def criterion_6(parallelism: int = 1) -> tuple[bool, str]:
    n = 2
    result = search_mubent(2, n, 2)
    bound = 2 ** (n - 1)
    best = result.families[0]
    family = build_real_mub_family(best)
    rep = verify_complete_mub(family, parallelism=parallelism, require_complete=False)
    members = {f.values for f in best}
    extensions = failed = 0
    for values in itertools.product(range(2), repeat=2**n):
        if values in members:
            continue
        extensions += 1
        ext = build_real_mub_family(list(best) + [FunctionTable(2, n, 2, values)])
        failed += not verify_complete_mub(ext, require_complete=False).ok
    ok = (
        result.exhaustive and result.max_family_size == bound
        and rep.ok and len(family) == bound + 1 and failed == extensions
    )
    return ok, (
        f"exhaustive={result.exhaustive}, max family size {result.max_family_size} (bound {bound}); "
        f"{len(family)} real MUBs verified={rep.ok}; {failed}/{extensions} extensions rejected"
    )


def criterion_7(parallelism: int = 1) -> tuple[bool, str]:
    fam = trace_family_odd(3, 1)
    trials = caught = controls_ok = controls = 0
    for t, f in enumerate(fam):
        for pos in range(f.size):
            for val in range(3):
                vals = list(f.values)
                vals[pos] = val
                mutated = list(fam.functions)
                mutated[t] = FunctionTable(3, 1, 3, tuple(vals))
                mset = MubentSet(tuple(mutated))
                passed = verify_mubent(mset).ok and verify_complete_mub(
                    build_mub_family(mset), parallelism=parallelism
                ).ok
                if val == f.values[pos]:
                    controls += 1
                    controls_ok += passed
                else:
                    trials += 1
                    caught += not passed
    ok = caught == trials and controls_ok == controls
    return ok, (
        f"{trials + controls} single-point edits: {caught}/{trials} real mutations rejected, "
        f"{controls_ok}/{controls} unchanged controls accepted"
    )


def criterion_8(seed: int = 0, workers: tuple[int, int] = (1, 4)) -> tuple[bool, str]:
    from .cli import RunConfig, run

    cases = [("trace-odd", 3, 2), ("spread-z2", 2, 3)]
    mismatches = []
    with tempfile.TemporaryDirectory() as tmp:
        snapshots = []
        for w in workers:
            files = {}
            for construction, p, n in cases:
                outdir = Path(tmp, f"w{w}", construction)
                gen_out, ver_out = io.StringIO(), io.StringIO()
                code = run(RunConfig("generate", p=p, n=n, construction=construction, output=str(outdir),
                                     seed=seed, parallelism=w, json=True), gen_out, io.StringIO())
                report = outdir / "report.json"
                vcode = run(RunConfig("verify", inputs=(str(outdir),), report=str(report),
                                      seed=seed, parallelism=w, json=True), ver_out, io.StringIO())
                if code or vcode:
                    mismatches.append(f"{construction} exit codes {code}/{vcode} at parallelism {w}")
                for f in sorted(outdir.iterdir()):
                    files[f"{construction}/{f.name}"] = f.read_bytes()
                files[f"{construction}/stdout-verify"] = ver_out.getvalue().encode()
            snapshots.append(files)
        a, b = snapshots
        if a.keys() != b.keys():
            mismatches.append("different file sets")
        mismatches += [k for k in sorted(a) if a.get(k) != b.get(k)]
        nfiles = len(a)
    ok = not mismatches
    return ok, (
        f"{nfiles} outputs byte-identical at parallelism {workers[0]} vs {workers[1]}"
        if ok else "mismatch: " + ", ".join(mismatches)
    )


CRITERIA = [
    ("0", "modulus table passes field axioms", None),
    ("1", "complete MUBs p=3 n=1 (N=3)", 1.0),
    ("2a", "complete MUBs p=3 n=2 (N=9)", 10.0),
    ("2b", "complete MUBs p=5 n=1 (N=5)", 10.0),
    ("3", "complete MUBs p=2 n=1..3 from the scalar spread set", 10.0),
    ("4", "Z_4 quadratic forms: bent and cocycle identity, n<=2", 5.0),
    ("5", "histogram bent test agrees with character-sum oracle", 30.0),
    ("6", "real families on Z_2^2: bound 2 and 3 non-extendable MUBs", 5.0),
    ("7", "single-point mutations of the p=3 n=1 family are caught", 10.0),
    ("8", "generate+verify byte-identical across parallelism", None),
]


def run_selfcheck(parallelism: int = 1, seed: int = 0) -> list[CheckResult]:
    fns = {
        "0": check_field_table,
        "1": lambda: criterion_1(parallelism),
        "2a": lambda: criterion_2a(parallelism),
        "2b": lambda: criterion_2b(parallelism),
        "3": lambda: criterion_3(parallelism, seed),
        "4": criterion_4,
        "5": lambda: criterion_5(seed),
        "6": lambda: criterion_6(parallelism),
        "7": lambda: criterion_7(parallelism),
        "8": lambda: criterion_8(seed),
    }
    return [_timed(key, title, limit, fns[key]) for key, title, limit in CRITERIA]
