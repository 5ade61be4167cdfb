"""Command-line interface: generate, verify, search, export, selfcheck."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from . import gf
from .bent import MubentSet, check_pairwise_bent, is_bent, verify_mubent
from .constructions import (
    SpreadSet,
    mubent_from_spread_odd,
    mubent_from_spread_z2,
    scalar_spread_set_z2,
    trace_family_odd,
    trace_spread_set_odd,
    verify_spread_set,
)
from .engine import MubFamily, build_mub_family, build_real_mub_family, verify_complete_mub
from .io import (
    SCHEMA,
    SchemaError,
    detect_kind,
    dumps,
    mubent_from_dict,
    mubent_to_dict,
    phase_from_dict,
    phase_to_csv,
    phase_to_dict,
    read_json,
    spread_from_dict,
    spread_to_dict,
    table_from_dict,
    write_json,
)
from .search import DEFAULT_BUDGET, search_mubent
from .zmod import is_prime

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3
EXIT_BUDGET = 4

COMMANDS = ("generate", "verify", "search", "export", "selfcheck")
CONSTRUCTIONS = ("trace-odd", "spread-sym-odd", "spread-z2", "real-z2", "from-file")


class ConfigError(ValueError):
    pass


class ConstructionError(RuntimeError):
    pass


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    n: int | None = None
    construction: str | None = None
    codomain: int | None = None
    inputs: tuple[str, ...] = ()
    output: str | None = None
    report: str | None = None
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    parallelism: int = 1
    fail_fast: bool = False
    mode: str = "exhaustive"
    max_results: int | None = None
    lossy: bool = False
    json: bool = False
    field_table: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.budget <= 0:
            raise ConfigError("budget must be positive")
        if self.parallelism < 1:
            raise ConfigError("parallelism must be at least 1")
        if self.p is not None and not is_prime(self.p):
            raise ConfigError(f"p must be prime, got {self.p}")
        if self.n is not None and self.n < 1:
            raise ConfigError("n must be at least 1")
        if self.command == "generate":
            if self.construction not in CONSTRUCTIONS:
                raise ConfigError(f"construction must be one of {', '.join(CONSTRUCTIONS)}")
            if self.construction == "from-file":
                if len(self.inputs) != 1:
                    raise ConfigError("from-file needs exactly one --input")
                return
            if self.p is None or self.n is None:
                raise ConfigError("generate needs --p and --n")
            odd = self.construction in ("trace-odd", "spread-sym-odd")
            if odd and self.p == 2:
                raise ConfigError(f"{self.construction} needs odd p")
            if not odd and self.p != 2:
                raise ConfigError(f"{self.construction} needs p = 2")
            if (self.p, self.n) not in gf.modulus_table() and self.construction != "real-z2":
                raise ConfigError(f"no field GF({self.p}^{self.n}) in the modulus table")
        elif self.command == "search":
            if self.p is None or self.n is None:
                raise ConfigError("search needs --p and --n")
            codomain = self.codomain or self.p
            if not (codomain == self.p or (self.p == 2 and codomain == 4)):
                raise ConfigError(f"codomain Z_{codomain} not allowed over Z_{self.p}^n")
            if self.mode not in ("exhaustive", "random"):
                raise ConfigError("mode must be exhaustive or random")
        elif self.command in ("verify", "export") and not self.inputs:
            raise ConfigError(f"{self.command} needs --input")


# -- generate --------------------------------------------------------------------

def _construct(cfg: RunConfig) -> tuple[MubentSet, SpreadSet | None, bool]:
    """Returns (function family, spread set if any, real flag)."""
    c = cfg.construction
    if c == "trace-odd":
        return trace_family_odd(cfg.p, cfg.n), None, False
    if c == "spread-sym-odd":
        spread = trace_spread_set_odd(cfg.p, cfg.n)
        _require_spread(spread)
        return mubent_from_spread_odd(spread), spread, False
    if c == "spread-z2":
        basis = gf.find_self_dual_basis(cfg.n, seed=cfg.seed, budget=cfg.budget)
        spread = scalar_spread_set_z2(cfg.n, basis)
        _require_spread(spread)
        return mubent_from_spread_z2(spread), spread, False
    if c == "real-z2":
        result = search_mubent(2, cfg.n, 2, max_results=1, budget=cfg.budget, seed=cfg.seed)
        if not result.families:
            raise ConstructionError("search found no family")
        return result.families[0], None, True
    return _construct_from_file(cfg)


def _construct_from_file(cfg: RunConfig):
    doc = read_json(cfg.inputs[0])
    kind = detect_kind(doc)
    if kind == "spread_set":
        spread = spread_from_dict(doc)
        _check_domain(cfg, spread.p, spread.n)
        _require_spread(spread)
        try:
            fam = mubent_from_spread_z2(spread) if spread.p == 2 else mubent_from_spread_odd(spread)
        except ValueError as exc:
            raise ConstructionError(str(exc)) from exc
        return fam, spread, False
    if kind == "mubent_set":
        fam = mubent_from_dict(doc)
        _check_domain(cfg, fam.p, fam.n)
        real = fam.codomain == 2 and fam.p == 2
        rep = check_pairwise_bent(fam) if real else verify_mubent(fam)
        if not rep.ok:
            raise ConstructionError("; ".join(rep.failures))
        return fam, None, real
    raise ConfigError(f"from-file expects a spread set or mubent set, got {kind}")


def _check_domain(cfg: RunConfig, p: int, n: int) -> None:
    if (cfg.p is not None and cfg.p != p) or (cfg.n is not None and cfg.n != n):
        raise ConfigError(f"input lives on Z_{p}^{n}, but --p/--n say Z_{cfg.p}^{cfg.n}")


def _require_spread(spread: SpreadSet) -> None:
    rep = verify_spread_set(spread)
    if not rep.ok:
        raise ConstructionError(f"not a spread set: {rep.reason}")


def cmd_generate(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    functions, spread, real = _construct(cfg)
    family = build_real_mub_family(functions) if real else build_mub_family(functions)
    outdir = Path(cfg.output or "mubforge-out")
    outdir.mkdir(parents=True, exist_ok=True)
    write_json(outdir / "mubent.json", mubent_to_dict(functions))
    if spread is not None:
        write_json(outdir / "spread.json", spread_to_dict(spread))
    width = len(str(len(family.bases) - 1))
    names = []
    for k, basis in enumerate(family.bases):
        name = f"basis_{k:0{max(2, width)}d}.json"
        write_json(outdir / name, phase_to_dict(basis))
        names.append(name)
    manifest = {
        "schema": SCHEMA,
        "kind": "mub_family",
        "p": family.p,
        "n": family.n,
        "N": family.N,
        "construction": cfg.construction,
        "real": real,
        "complete": len(family) == family.N + 1,
        "mubent": "mubent.json",
        "bases": names,
    }
    write_json(outdir / "family.json", manifest)
    summary = {"N": family.N, "bases": len(family), "output": str(outdir)}
    if cfg.json:
        out.write(dumps(summary))
    else:
        out.write(f"N={family.N}, bases={len(family)}\n")
    return EXIT_OK


# -- verify ----------------------------------------------------------------------

def _load_family_dir(path: Path) -> tuple[MubFamily, MubentSet | None, bool]:
    manifest_path = path / "family.json"
    if manifest_path.exists():
        return _load_manifest(manifest_path)
    files = sorted(path.glob("basis_*.json"))
    if not files:
        raise SchemaError(f"{path} holds no family.json or basis files")
    return MubFamily(tuple(phase_from_dict(read_json(f)) for f in files)), None, False


def _load_manifest(manifest_path: Path):
    doc = read_json(manifest_path)
    if detect_kind(doc) != "family":
        raise SchemaError(f"{manifest_path} is not a family manifest")
    base = manifest_path.parent
    try:
        bases = tuple(phase_from_dict(read_json(base / name)) for name in doc["bases"])
        functions = mubent_from_dict(read_json(base / doc["mubent"])) if doc.get("mubent") else None
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad family manifest: {exc}") from exc
    return MubFamily(bases, functions), functions, bool(doc.get("real"))


def _load_for_verify(inputs: tuple[str, ...]):
    """Returns (family or None, function family or None, real flag, extra report)."""
    if len(inputs) == 1:
        path = Path(inputs[0])
        if path.is_dir():
            return (*_load_family_dir(path), None)
        doc = read_json(path)
        kind = detect_kind(doc)
        if kind == "family":
            return (*_load_manifest(path), None)
        if kind == "mubent_set":
            functions = mubent_from_dict(doc)
            real = functions.p == 2 and functions.codomain == 2
            family = build_real_mub_family(functions) if real else build_mub_family(functions)
            return family, functions, real, None
        if kind == "spread_set":
            return None, None, False, {"spread_set": verify_spread_set(spread_from_dict(doc)).to_dict()}
        if kind == "function_table":
            f = table_from_dict(doc)
            return None, None, False, {"function_table": {"ok": is_bent(f), "bent": is_bent(f)}}
    bases = []
    for name in inputs:
        doc = read_json(name)
        if detect_kind(doc) != "phase_matrix":
            raise SchemaError(f"{name}: multiple inputs must all be phase matrices")
        bases.append(phase_from_dict(doc))
    return MubFamily(tuple(bases)), None, False, None


def cmd_verify(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    family, functions, real, extra = _load_for_verify(cfg.inputs)
    report: dict = {"schema": SCHEMA}
    ok = True
    if extra:
        report.update(extra)
        ok = all(v["ok"] for v in extra.values())
    if functions is not None:
        rep = check_pairwise_bent(functions) if real else verify_mubent(functions)
        report["mubent"] = rep.to_dict()
        ok = ok and rep.ok
    if family is not None:
        rep = verify_complete_mub(
            family,
            parallelism=cfg.parallelism,
            fail_fast=cfg.fail_fast,
            require_complete=not real,
        )
        report["mub"] = rep.to_dict()
        ok = ok and rep.ok
    report["ok"] = ok
    if cfg.report:
        write_json(cfg.report, report)
    if cfg.json:
        out.write(dumps(report))
    else:
        for key in ("mubent", "mub", "spread_set", "function_table"):
            if key in report:
                r = report[key]
                out.write(f"{key}: {'ok' if r['ok'] else 'FAILED'}\n")
                for msg in r.get("failures", []) or []:
                    out.write(f"  {msg}\n")
                if r.get("first_failure"):
                    out.write(f"  first failure: {json.dumps(r['first_failure'], sort_keys=True)}\n")
                if r.get("reason"):
                    out.write(f"  {r['reason']}\n")
        out.write("OK\n" if ok else "FAILED\n")
    return EXIT_OK if ok else EXIT_FAILED


# -- search / export / selfcheck ----------------------------------------------------

def cmd_search(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    codomain = cfg.codomain or cfg.p
    result = search_mubent(
        cfg.p, cfg.n, codomain,
        max_results=cfg.max_results, mode=cfg.mode, budget=cfg.budget, seed=cfg.seed,
    )
    lines = []
    for fam in result.families:
        lines.append(dumps({
            "schema": SCHEMA,
            "p": cfg.p,
            "n": cfg.n,
            "codomain": codomain,
            "size": len(fam),
            "exhaustive": result.exhaustive,
            "functions": [list(f.values) for f in fam],
        }))
    Path(cfg.output or "search.jsonl").write_text("".join(lines))
    summary = {
        "max_family_size": result.max_family_size,
        "families": len(result.families),
        "exhaustive": result.exhaustive,
        "budget_exhausted": result.budget_exhausted,
        "candidates_examined": result.candidates_examined,
        "bent_functions": result.bent_functions,
    }
    if cfg.json:
        out.write(dumps(summary))
    else:
        out.write(
            f"max family size {result.max_family_size}, {len(result.families)} families, "
            f"exhaustive={str(result.exhaustive).lower()}\n"
        )
    if result.budget_exhausted and cfg.mode == "exhaustive":
        return EXIT_BUDGET
    return EXIT_OK


def cmd_export(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    doc = read_json(cfg.inputs[0])
    if detect_kind(doc) != "phase_matrix":
        raise SchemaError("export expects a phase matrix")
    m = phase_from_dict(doc)
    text = phase_to_csv(m) if cfg.lossy else dumps(phase_to_dict(m))
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_selfcheck(cfg: RunConfig, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    from .checks import run_selfcheck

    results = run_selfcheck(parallelism=cfg.parallelism, seed=cfg.seed)
    if cfg.json:
        out.write(dumps({"ok": all(r.ok for r in results), "checks": [r.to_dict() for r in results]}))
    else:
        for r in results:
            out.write(r.line() + "\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILED


HANDLERS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "search": cmd_search,
    "export": cmd_export,
    "selfcheck": cmd_selfcheck,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--parallelism", type=int, default=1, help="worker processes")
    common.add_argument("--field-table", help=f"modulus polynomial file (overrides ${gf.FIELD_TABLE_ENV})")

    parser = argparse.ArgumentParser(prog="mubforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="build a complete MUB family")
    g.add_argument("--p", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--construction", required=True, choices=CONSTRUCTIONS)
    g.add_argument("--input", action="append", default=[], help="spread set or mubent JSON (from-file)")
    g.add_argument("--output", "-o", help="output directory (default mubforge-out)")
    g.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    v = sub.add_parser("verify", parents=[common], help="certify a family exactly")
    v.add_argument("inputs", nargs="*", help="family directory, manifest, mubent set, or phase matrices")
    v.add_argument("--input", action="append", default=[])
    v.add_argument("--report", help="write the report JSON here")
    v.add_argument("--fail-fast", action="store_true")

    s = sub.add_parser("search", parents=[common], help="search pairwise-bent families")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--codomain", type=int)
    s.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--max-results", type=int)
    s.add_argument("--output", "-o", help="JSON lines file (default search.jsonl)")

    e = sub.add_parser("export", parents=[common], help="re-emit or numerically export a phase matrix")
    e.add_argument("--input", action="append", default=[], required=True)
    e.add_argument("--output", "-o")
    e.add_argument("--lossy", action="store_true", help="CSV of floating-point entries")

    sub.add_parser("selfcheck", parents=[common], help="run the acceptance suite")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    inputs = tuple(getattr(ns, "inputs", []) or []) + tuple(getattr(ns, "input", []) or [])
    return RunConfig(
        command=ns.command,
        p=getattr(ns, "p", None),
        n=getattr(ns, "n", None),
        construction=getattr(ns, "construction", None),
        codomain=getattr(ns, "codomain", None),
        inputs=inputs,
        output=getattr(ns, "output", None),
        report=getattr(ns, "report", None),
        seed=ns.seed,
        budget=getattr(ns, "budget", DEFAULT_BUDGET),
        parallelism=ns.parallelism,
        fail_fast=getattr(ns, "fail_fast", False),
        mode=getattr(ns, "mode", "exhaustive"),
        max_results=getattr(ns, "max_results", None),
        lossy=getattr(ns, "lossy", False),
        json=ns.json,
        field_table=ns.field_table,
    )


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if cfg.field_table:
        gf.set_field_table(cfg.field_table)
    try:
        cfg.validate()
        return HANDLERS[cfg.command](cfg, out)
    except (ConfigError, SchemaError, gf.FieldError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (ConstructionError, gf.SearchBudgetExhausted) as exc:
        err.write(f"construction failed: {exc}\n")
        return EXIT_CONSTRUCTION
    finally:
        if cfg.field_table:
            gf.set_field_table(None)


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
