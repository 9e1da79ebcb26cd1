"""Command-line front end.

Exit status: 0 on success (including exact-match verifications), 1 when a
verification reports a mismatch, 2 on invalid input.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .charseries import CharacterError, qdims
from .formulas import (
    AdmissibilityError,
    VerificationReport,
    character,
    check_upper_bound,
    endring_character,
    verify_factorization,
    verify_multiplicities,
)
from .oracle.finite import OracleBoundError
from .oracle.weyl_module import (
    compare_enumeration_vs_formula,
    compare_oracle_vs_formula,
    format_gram,
    simple_quotient_dims,
)
from .rootdata import RootSystemError, build_root_system, is_dominant_integral
from .serialize import FORMAT_TAG, dumps_json, render_character, render_qseries

COMMANDS = ("char", "qdims", "verify", "oracle", "sweep", "rootdata")
FORMULAS = ("main", "generic", "weyl-module", "endring")
CHECKS = ("factorization", "multiplicities", "upper-bound", "oracle", "pbw")
FORMATS = ("table", "records", "csv")


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class JobSpec:
    command: str
    type_label: str
    rank: int
    lambda_bar: tuple[int, ...] = ()
    depth: int = 4
    height: int | None = None
    formula: str = "main"
    fmt: str = "table"
    output: str | None = None
    check: str = "factorization"
    emit_gram: str | None = None
    max_depth: int | None = None


def parse_lambda(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise InputError(f"cannot parse lambda {text!r}; expected comma-separated integers") from None


def _setup(job: JobSpec):
    rs = build_root_system(job.type_label, job.rank)
    lam_bar = job.lambda_bar or (0,) * rs.rank
    if len(lam_bar) != rs.rank:
        raise InputError(f"{rs.label} needs {rs.rank} lambda coordinates, got {len(lam_bar)}")
    if not is_dominant_integral(lam_bar):
        raise InputError(f"lambda_bar={lam_bar} is not dominant integral")
    if job.depth < 0:
        raise InputError("depth must be non-negative")
    return rs, rs.critical_weight(lam_bar)


def run_verification(job: JobSpec, rs, lam) -> VerificationReport:
    if job.check == "factorization":
        return verify_factorization(rs, lam, job.depth)
    if job.check == "multiplicities":
        return verify_multiplicities(rs, lam, job.depth)
    if job.check == "upper-bound":
        return check_upper_bound(rs, lam, job.depth, job.height)
    if job.check == "oracle":
        return compare_oracle_vs_formula(rs, lam, job.depth, max_depth=job.max_depth)
    if job.check == "pbw":
        return compare_enumeration_vs_formula(rs, lam, job.depth)
    raise InputError(f"unknown check {job.check!r}")


def _render_report(report: VerificationReport, fmt: str) -> str:
    if fmt == "records":
        return dumps_json({"format": FORMAT_TAG, "kind": "verification", **report.as_record()})
    return f"# {FORMAT_TAG} verification\n{report.summary()}\n"


def run(job: JobSpec) -> tuple[int, str]:
    """Execute a job; returns (exit status, rendered output). Raises InputError-like errors."""
    if job.fmt not in FORMATS:
        raise InputError(f"unknown format {job.fmt!r}")
    rs, lam = _setup(job)
    if job.command == "rootdata":
        return 0, rs.dump()
    if job.command == "char":
        if job.formula not in FORMULAS:
            raise InputError(f"unknown formula {job.formula!r}")
        c = character(job.formula, rs, lam, job.depth, job.height)
        return 0, render_character(rs, c, job.formula, job.fmt)
    if job.command == "qdims":
        if job.formula == "generic":
            raise InputError("the generic formula has no finite graded dimensions")
        if job.formula == "endring":
            s = endring_character(rs, lam, job.depth)
        elif job.formula in FORMULAS:
            s = qdims(character(job.formula, rs, lam, job.depth))
        else:
            raise InputError(f"unknown formula {job.formula!r}")
        meta = {"formula": job.formula, "type": rs.label,
                "lambda": "(" + ",".join(map(str, lam.finite)) + ")", "depth": job.depth}
        return 0, render_qseries(rs, s, meta, job.fmt)
    if job.command == "verify":
        report = run_verification(job, rs, lam)
        return (0 if report.ok else 1), _render_report(report, job.fmt)
    if job.command == "oracle":
        report = simple_quotient_dims(rs, lam, job.depth, max_depth=job.max_depth,
                                      keep_matrices=job.emit_gram is not None)
        if job.emit_gram:
            Path(job.emit_gram).write_text(format_gram(report))
        if job.fmt == "records":
            text = dumps_json({"format": FORMAT_TAG, "kind": "gram", **report.as_record()})
        else:
            lines = [f"# {FORMAT_TAG} gram type={rs.label} lambda=({','.join(map(str, report.lambda_bar))}) "
                     f"depth={report.N} complete={str(report.complete).lower()}",
                     "rank_qdims " + " ".join(map(str, report.qdims("rank"))),
                     "dim_qdims " + " ".join(map(str, report.qdims("dim")))]
            lines += [f"  {w.delta_degree} ({','.join(map(str, w.offset))}) dim {w.dim} rank {w.rank}"
                      for w in report.entries]
            text = "\n".join(lines) + "\n"
        return 0, text
    raise InputError(f"unknown command {job.command!r}")


INPUT_ERRORS = (InputError, RootSystemError, AdmissibilityError, CharacterError, OracleBoundError)


def _add_common(p: argparse.ArgumentParser, formula: bool = False) -> None:
    p.add_argument("--type", dest="type_label", required=True, help="simple type letter A-G")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default="", help="lambda_bar in fundamental-weight coordinates, e.g. 1,0")
    p.add_argument("--depth", type=int, default=4, help="delta-degree truncation N")
    p.add_argument("--height", type=int, default=None, help="height cap H (generic formula only)")
    p.add_argument("--format", dest="fmt", choices=FORMATS, default="table")
    p.add_argument("--output", default=None, help="write to this file instead of stdout")
    if formula:
        p.add_argument("--formula", choices=FORMULAS, default="main")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="critchar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("char", help="character table of one formula"), formula=True)
    _add_common(sub.add_parser("qdims", help="graded dimensions of one formula"), formula=True)
    v = sub.add_parser("verify", help="check one identity")
    v.add_argument("check", choices=CHECKS)
    _add_common(v)
    v.add_argument("--max-depth", type=int, default=None)
    o = sub.add_parser("oracle", help="Gram-rank dimensions of L(lambda)")
    _add_common(o)
    o.add_argument("--max-depth", type=int, default=None)
    o.add_argument("--emit-gram", default=None, metavar="PATH", help="dump Gram matrices as exact text")
    r = sub.add_parser("rootdata", help="plain-text root-system dump")
    r.add_argument("--type", dest="type_label", required=True)
    r.add_argument("--rank", type=int, required=True)
    s = sub.add_parser("sweep", help="run a sweep config")
    s.add_argument("config")
    s.add_argument("--report-dir", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "sweep":
        from .sweep import run_sweep

        return run_sweep(args.config, args.report_dir)
    try:
        job = JobSpec(
            command=args.command,
            type_label=args.type_label,
            rank=args.rank,
            lambda_bar=parse_lambda(getattr(args, "lam", "")),
            depth=getattr(args, "depth", 0),
            height=getattr(args, "height", None),
            formula=getattr(args, "formula", "main"),
            fmt=getattr(args, "fmt", "table"),
            output=getattr(args, "output", None),
            check=getattr(args, "check", "factorization"),
            emit_gram=getattr(args, "emit_gram", None),
            max_depth=getattr(args, "max_depth", None),
        )
        status, text = run(job)
    except INPUT_ERRORS as e:
        print(f"critchar: error: {e}", file=sys.stderr)
        return 2
    if job.output:
        Path(job.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
