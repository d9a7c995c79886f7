"""Check Segal conditions, delta identities and bar-construction homology from the shell.

Exit codes: 0 when every verdict passes, 1 when a verdict fails, 2 on input or
validation errors (including refused oversized configurations).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import bar as bar_mod
from . import cat, delta, homology, sset

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
DEFAULT_SIZE_LIMIT = 2 ** 22


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    monoid: str | None = None
    category: str | None = None
    target: str | None = None
    fold: int = 1
    trunc: int | None = None
    max_m: int = 3
    max_k: int = 3
    max_degree: int | None = None
    max_rank: int = 10
    format: str = "human"
    size_limit: int = DEFAULT_SIZE_LIMIT
    inject_fault: bool = field(default=False, repr=False)

    def __post_init__(self):
        if self.max_degree is None:
            # deloop needs H_n and nothing above it
            self.max_degree = self.fold if self.subcommand == "deloop" else 3

    def validate(self) -> None:
        for name in ("fold", "max_m", "max_degree", "max_rank", "size_limit"):
            if getattr(self, name) < 1:
                raise InputError(f"--{name.replace('_', '-')} must be positive")
        if self.max_k < 0 or (self.trunc is not None and self.trunc < 1):
            raise InputError("--max-k must be nonnegative and --trunc positive")
        if self.format not in ("human", "json"):
            raise InputError(f"unknown format {self.format!r}")
        # names resolve before any computation
        if self.monoid is not None:
            load_monoid(self.monoid)
        if self.category is not None:
            load_category(self.category)
        if self.target is not None:
            load_category(self.target)


def _load_json(path: Path) -> dict:
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_monoid(name_or_path: str) -> cat.FiniteMonoid:
    path = Path(name_or_path)
    try:
        if path.is_file():
            return cat.monoid_from_dict(_load_json(path))
        return cat.builtin_monoid(name_or_path)
    except cat.CategoryError as exc:
        raise InputError(f"{name_or_path}: {exc}") from None


def load_category(name_or_path: str) -> cat.FiniteCategory:
    path = Path(name_or_path)
    try:
        if path.is_file():
            doc = _load_json(path)
            if doc.get("kind") == "monoid":
                return cat.monoid_as_category(cat.monoid_from_dict(doc))
            return cat.category_from_dict(doc)
        return cat.builtin_category(name_or_path)
    except cat.CategoryError as exc:
        raise InputError(f"{name_or_path}: {exc}") from None


def nerve_level_size(C: cat.FiniteCategory, k: int) -> int:
    """Number of composable k-strings, by powers of the hom-count matrix."""
    if k == 0:
        return len(C.objects)
    idx = {x: i for i, x in enumerate(C.objects)}
    n = len(C.objects)
    A = [[0] * n for _ in range(n)]
    for f in C.arrows:
        A[idx[C.source[f]]][idx[C.target[f]]] += 1
    v = [1] * n
    for _ in range(k):
        v = [sum(v[i] * A[i][j] for i in range(n)) for j in range(n)]
    return sum(v)


def _guard(estimate: int, what: str, cfg: RunConfig) -> None:
    if estimate > cfg.size_limit:
        raise InputError(
            f"refusing {what}: largest level has {estimate} simplices "
            f"(about 2^{math.log2(estimate):.1f}), above --size-limit {cfg.size_limit}"
        )


# -- subcommands -------------------------------------------------------------


def _check_dict(c: delta.IdentityCheck) -> dict:
    out = {"name": c.name, "passed": c.passed}
    if not c.passed:
        out["lhs"] = list(c.lhs.values)
        out["rhs"] = list(c.rhs.values)
    return out


def cmd_delta_suite(cfg: RunConfig) -> tuple[dict, bool]:
    extra = []
    if cfg.inject_fault:
        # a false equation, to exercise the failure path
        extra.append(delta.op_check("injected: d2_0 d3_0 = d2_1 d3_0",
                                     [delta.d(2, 0), delta.d(3, 0)], [delta.d(2, 1), delta.d(3, 0)]))
    checks = delta.run_identity_suite(cfg.max_rank, extra)
    nf_failures = delta.normal_form_failures(6)
    failed = [c for c in checks if not c.passed]
    result = {
        "identities": len(checks),
        "failed": [_check_dict(c) for c in failed],
        "normal_form_failures": nf_failures,
        "arrow_counts_checked": "m, n <= 6",
    }
    return result, not failed and not nf_failures


def cmd_segal(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.monoid is not None:
        M = load_monoid(cfg.monoid)
        top = cfg.trunc or max(cfg.max_m, cfg.max_k, 1)
        _guard(len(M) ** (cfg.max_m * max(cfg.max_k, 1) ** (cfg.fold - 1)), "segal check", cfg)
        W = bar_mod.bar(M, cfg.fold, (top,) * cfg.fold)
        report = sset.check_segal_multi(W, cfg.max_m, cfg.max_k)
        return {"construction": f"bar({M.name}, {cfg.fold})", **report.to_dict()}, report.all_bijective
    if cfg.category is not None:
        C = load_category(cfg.category)
        _guard(nerve_level_size(C, cfg.max_m), "segal check", cfg)
        report = sset.check_segal(cat.nerve(C, cfg.max_m), cfg.max_m)
        return {"construction": f"nerve({C.name})", **report.to_dict()}, report.all_bijective
    raise InputError("segal needs --monoid or --category")


def _homology_target(cfg: RunConfig, top: int):
    if cfg.monoid is not None:
        M = load_monoid(cfg.monoid)
        _guard(len(M) ** (top ** cfg.fold), "homology", cfg)
        return f"diag(bar({M.name}, {cfg.fold}))", sset.diag(bar_mod.bar(M, cfg.fold, top))
    if cfg.category is not None:
        C = load_category(cfg.category)
        _guard(nerve_level_size(C, top), "homology", cfg)
        return f"nerve({C.name})", cat.nerve(C, top)
    raise InputError("homology needs --monoid or --category")


def cmd_homology(cfg: RunConfig) -> tuple[dict, bool]:
    name, X = _homology_target(cfg, cfg.max_degree + 1)
    H = homology.compute_homology(X, cfg.max_degree)
    return {"construction": name, "homology": H.to_dict()["degrees"]}, True


def cmd_deloop(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.monoid is None:
        raise InputError("deloop needs --monoid")
    M = load_monoid(cfg.monoid)
    n = cfg.fold
    top = cfg.max_degree + 1
    _guard(len(M) ** (top ** n), "deloop", cfg)
    W = bar_mod.bar(M, n, top)
    H_space = bar_mod.hspace_structure(sset.slice_ones(W, n - 1, 1))
    if not bar_mod.is_grouplike(H_space):
        witness = next(a for a in H_space.carrier
                       if not any(H_space.mul(a, b) == H_space.unit == H_space.mul(b, a)
                                  for b in H_space.carrier))
        return {
            "construction": f"diag(bar({M.name}, {n}))",
            "hypothesis": "violated",
            "reason": f"not grouplike: {W.element_of(witness)!r} has no inverse",
        }, False
    H = homology.compute_homology(sset.diag(W), cfg.max_degree)
    verdicts = []
    h0 = H[0]
    verdicts.append({"claim": "H_0 = Z", "passed": (h0.betti, h0.torsion) == (1, ())})
    for k in range(1, min(n, cfg.max_degree + 1)):
        verdicts.append({"claim": f"H_{k} = 0", "passed": (H[k].betti, H[k].torsion) == (0, ())})
    if n <= cfg.max_degree and M.is_commutative:
        expected = tuple(t for t in cat.abelian_invariants(M))
        got = H[n]
        verdicts.append({"claim": f"H_{n} = " + (" + ".join(f"Z/{t}" for t in expected) or "0"),
                         "passed": (got.betti, got.torsion) == (0, expected)})
    return {
        "construction": f"diag(bar({M.name}, {n}))",
        "hypothesis": "grouplike",
        "homology": H.to_dict()["degrees"],
        "verdicts": verdicts,
    }, all(v["passed"] for v in verdicts)


def cmd_nat_check(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.category is None:
        raise InputError("nat-check needs --category")
    C = load_category(cfg.category)
    D = load_category(cfg.target) if cfg.target else C
    counts, failures = cat.nat_round_trip_failures(C, D, cfg.trunc or 3)
    return {"source": C.name, "target": D.name, **counts, "failures": failures[:20]}, not failures


COMMANDS = {
    "delta-suite": cmd_delta_suite,
    "segal": cmd_segal,
    "homology": cmd_homology,
    "deloop": cmd_deloop,
    "nat-check": cmd_nat_check,
}


# -- rendering ---------------------------------------------------------------


def render_human(report: dict) -> str:
    lines = [f"{report['subcommand']}: {'PASS' if report.get('passed') else 'FAIL'}"]
    if "error" in report:
        return f"error: {report['error']['message']}"
    result = report["result"]
    for key, value in result.items():
        if key == "homology":
            for h in value:
                groups = "?" if h["status"] != "computed" else " + ".join(
                    (["Z" if h["betti"] == 1 else f"Z^{h['betti']}"] if h["betti"] else [])
                    + [f"Z/{t}" for t in h["torsion"]]) or "0"
                lines.append(f"  H_{h['degree']} = {groups}")
        elif key == "verdicts" and value and "claim" in value[0]:
            for v in value:
                lines.append(f"  {'ok  ' if v['passed'] else 'FAIL'} {v['claim']}")
        elif key == "verdicts":
            for v in value:
                lines.append(f"  m={v['m']}: {v['status']}" + (f" witness={v['witness']}" if v["witness"] is not None else ""))
        elif key == "slices":
            for sl in value:
                bad = [v for v in sl["verdicts"] if v["status"] != "bijective"]
                status = "bijective" if not bad else f"{bad[0]['status']} at m={bad[0]['m']} witness={bad[0]['witness']}"
                lines.append(f"  l={sl['l']} k={sl['k']}: {status}")
        elif key == "failed":
            for c in value:
                lines.append(f"  FAIL {c['name']}: lhs={c['lhs']} rhs={c['rhs']}")
        else:
            lines.append(f"  {key}: {value}")
    return "\n".join(lines)


def run(cfg: RunConfig) -> tuple[dict, int]:
    report: dict = {"subcommand": cfg.subcommand}
    try:
        cfg.validate()
        result, passed = COMMANDS[cfg.subcommand](cfg)
    except (InputError, cat.CategoryError, bar_mod.NonCommutativeError, sset.TruncationError,
            delta.DeltaError) as exc:
        report["passed"] = False
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return report, EXIT_INPUT
    report["config"] = {k: v for k, v in asdict(cfg).items() if k not in ("subcommand", "inject_fault")}
    report["passed"] = passed
    report["result"] = result
    return report, EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multisegal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--monoid", help="built-in name (Z/n, Z/2xZ/2, idempotent2, leftzero3) or JSON path")
        p.add_argument("--category", help="built-in name (2, terminal, poset3, discrete2, or a monoid) or JSON path")
        p.add_argument("--target", help="target category for nat-check (defaults to --category)")
        p.add_argument("--fold", type=int, default=1)
        p.add_argument("--trunc", type=int)
        p.add_argument("--max-m", type=int, default=3)
        p.add_argument("--max-k", type=int, default=3)
        p.add_argument("--max-degree", type=int, help="default 3, or the fold for deloop")
        p.add_argument("--max-rank", type=int, default=10)
        p.add_argument("--format", choices=["human", "json"], default="human")
        p.add_argument("--size-limit", type=int, default=DEFAULT_SIZE_LIMIT)
        p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    report, code = run(cfg)
    if cfg.format == "json":
        print(json.dumps(report, indent=2))
        if "error" in report:
            print(f"error: {report['error']['message']}", file=sys.stderr)
    else:
        print(render_human(report), file=sys.stderr if "error" in report else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
