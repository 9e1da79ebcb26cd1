"""Batch verification sweeps driven by a line-oriented config file.

One job per non-blank, non-comment line, as whitespace-separated ``key=value``
tokens::

    type=A rank=1 lambda=0 depth=8 checks=factorization,multiplicities,upper-bound
    type=A rank=1 lambda=0 depth=4 checks=oracle
    type=A rank=1 lambda=0 depth=2 checks=fixture expect=a1_main.json

``expect`` paths are resolved relative to the config file.  Worker count is
capped by the ``CRITCHAR_WORKERS`` environment variable (default 1).
"""
from __future__ import annotations

import os
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .charseries import AffineCharacter
from .cli import CHECKS, INPUT_ERRORS, InputError, JobSpec, parse_lambda, run_verification, _setup
from .formulas import EXACT, MISMATCH, VerificationReport, character, first_difference
from .serialize import FORMAT_TAG, dumps_json, load_character_records, records_to_slices

WORKERS_ENV = "CRITCHAR_WORKERS"
KEYS = {"type", "rank", "lambda", "depth", "height", "checks", "expect", "max-depth"}


@dataclass
class SweepJob:
    line_no: int
    job: JobSpec
    checks: tuple[str, ...]
    expect: Path | None = None

    @property
    def label(self) -> str:
        lam = ",".join(map(str, self.job.lambda_bar))
        return f"{self.job.type_label}{self.job.rank} lambda=({lam}) N={self.job.depth}"


@dataclass
class JobResult:
    reports: list[VerificationReport] = field(default_factory=list)
    error: str | None = None


def parse_config(path: str | Path) -> list[SweepJob]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise InputError(f"cannot read sweep config {path}: {e.strerror}") from None
    jobs = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = {}
        for tok in shlex.split(line):
            if "=" not in tok:
                raise InputError(f"{path}:{no}: expected key=value, got {tok!r}")
            k, v = tok.split("=", 1)
            if k not in KEYS:
                raise InputError(f"{path}:{no}: unknown key {k!r}")
            fields[k] = v
        try:
            checks = tuple(c for c in fields.get("checks", "factorization").split(",") if c)
            for c in checks:
                if c not in CHECKS and c != "fixture":
                    raise InputError(f"{path}:{no}: unknown check {c!r}")
            if "fixture" in checks and "expect" not in fields:
                raise InputError(f"{path}:{no}: fixture check needs expect=PATH")
            job = JobSpec(
                command="verify",
                type_label=fields["type"],
                rank=int(fields["rank"]),
                lambda_bar=parse_lambda(fields.get("lambda", "")),
                depth=int(fields.get("depth", 4)),
                height=int(fields["height"]) if "height" in fields else None,
                max_depth=int(fields["max-depth"]) if "max-depth" in fields else None,
            )
        except KeyError as e:
            raise InputError(f"{path}:{no}: missing key {e.args[0]!r}") from None
        except ValueError as e:
            if isinstance(e, InputError):
                raise
            raise InputError(f"{path}:{no}: {e}") from None
        expect = (path.parent / fields["expect"]) if "expect" in fields else None
        jobs.append(SweepJob(no, job, checks, expect))
    return jobs


def check_fixture(job: JobSpec, expect: Path) -> VerificationReport:
    """Recompute the character a records fixture describes and diff it."""
    try:
        doc = load_character_records(expect.read_text())
    except (OSError, ValueError) as e:
        raise InputError(f"bad fixture {expect}: {e}") from None
    rs, lam = _setup(job)
    formula = doc["formula"]
    depth = int(doc["depth"])
    expected = AffineCharacter(rs.label, lam, tuple(records_to_slices(doc)), doc.get("height_cap"))
    actual = character(formula, rs, lam, depth, doc.get("height_cap"))
    d = first_difference(expected, actual)
    return VerificationReport(f"fixture:{expect.name}", rs.label, tuple(lam.finite), depth,
                              EXACT if d is None else MISMATCH, d, {"formula": formula})


def run_job(sj: SweepJob) -> JobResult:
    result = JobResult()
    try:
        rs, lam = _setup(sj.job)
        for c in sj.checks:
            if c == "fixture":
                result.reports.append(check_fixture(sj.job, sj.expect))
            else:
                job = JobSpec(**{**sj.job.__dict__, "check": c})
                result.reports.append(run_verification(job, rs, lam))
    except INPUT_ERRORS as e:
        result.error = str(e)
    return result


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def run_sweep(config: str | Path, report_dir: str | Path | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        jobs = parse_config(config)
    except InputError as e:
        print(f"critchar: error: {e}", file=sys.stderr)
        return 2
    workers = min(worker_count(), max(1, len(jobs)))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_job, jobs))  # map keeps config order
    else:
        results = [run_job(j) for j in jobs]
    report_dir = Path(report_dir) if report_dir else Path(str(config) + ".reports")
    if jobs:
        report_dir.mkdir(parents=True, exist_ok=True)
    n_checks = n_failed = n_errors = 0
    for idx, (sj, res) in enumerate(zip(jobs, results)):
        if res.error:
            n_errors += 1
            print(f"ERROR line {sj.line_no} {sj.label}: {res.error}", file=out)
        for rep in res.reports:
            n_checks += 1
            n_failed += not rep.ok
            print(rep.summary(), file=out)
        doc = {"format": FORMAT_TAG, "kind": "sweep-job", "line": sj.line_no, "job": sj.label,
               "error": res.error, "reports": [r.as_record() for r in res.reports]}
        (report_dir / f"job{idx:03d}.json").write_text(dumps_json(doc))
    print(f"{len(jobs)} jobs, {n_checks} checks, {n_failed} failed, {n_errors} errors", file=out)
    if n_errors:
        return 2
    return 1 if n_failed else 0
