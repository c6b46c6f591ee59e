"""Command-line front-end.

Every command reads JSON inputs (``-i`` may be repeated; order matters) and
prints a report.  Exit status: 0 if every check passed, 1 if some check
failed, 2 on unreadable or inconsistent input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Callable

from . import __version__
from .core_algebra import classify_tensor, contract, is_leibniz
from .courant_fd import (
    bialgebroid_nijenhuis_conditions,
    check_courant_axioms,
    drinfeld_double,
    is_dirac,
    is_dirac_nijenhuis,
)
from .courant_tm import (
    TestFamily,
    check_lambda_omega,
    check_poisson_nijenhuis_weak,
    check_presymplectic_nijenhuis,
    check_trivial_bialgebroid_nijenhuis,
    courant_nijenhuis_test,
    verify_lemma2,
    verify_theorem2,
)
from .errors import DimensionError, InvariantError, NijenhuisError, ParseError, PreconditionError
from .reports import CheckReport, jsonable
from . import serialize as io

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Job:
    """One command with its parsed inputs."""

    def __init__(self, command: str, inputs: list[str], family_degree: int = 2):
        if command not in COMMANDS:
            raise ParseError(f"unknown command {command!r}")
        self.command = command
        self.inputs = list(inputs)
        self.family_degree = family_degree

    def to_json(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "family_degree": self.family_degree}


def _arity(docs, k, names):
    if len(docs) != k:
        raise ParseError(f"expected {k} input file(s) ({', '.join(names)}), got {len(docs)}")


def _cmd_check_leibniz(docs, d):
    _arity(docs, 1, ["algebra"])
    return [is_leibniz(io.read_op(docs[0]))], None


def _cmd_classify(docs, d):
    _arity(docs, 2, ["algebra", "tensor"])
    kind, rep = classify_tensor(io.read_op(docs[0]), io.read_tensor(docs[1]))
    return [rep], {"classification": kind}


def _cmd_contract(docs, d):
    _arity(docs, 2, ["algebra", "tensor"])
    op, n = io.read_op(docs[0]), io.read_tensor(docs[1])
    out = contract(op, n)
    kind, rep = classify_tensor(op, n)
    reports = [rep]
    if kind != "neither":
        # the contracted product must be Leibniz again
        reports.append(is_leibniz(out))
    return reports, out.to_json()


def _cmd_double(docs, d):
    _arity(docs, 1, ["bialgebra"])
    cs = drinfeld_double(io.read_bialgebra(docs[0]))
    return [check_courant_axioms(cs)], cs.to_json()


def _cmd_check_courant(docs, d):
    _arity(docs, 1, ["Courant structure or bialgebra"])
    return [check_courant_axioms(io.read_courant(docs[0]))], None


def _cmd_check_dirac(docs, d):
    _arity(docs, 2, ["Courant structure", "subspace"])
    return [is_dirac(io.read_courant(docs[0]), io.read_subspace(docs[1]))], None


def _cmd_check_dirac_nijenhuis(docs, d):
    _arity(docs, 3, ["Courant structure", "subspace", "tensor"])
    cs = io.read_courant(docs[0])
    return [is_dirac_nijenhuis(cs, io.read_subspace(docs[1]), io.read_tensor(docs[2]))], None


def _cmd_bialgebroid(docs, d):
    _arity(docs, 2, ["bialgebra", "block tensor"])
    return [bialgebroid_nijenhuis_conditions(io.read_bialgebra(docs[0]), io.read_block_tensor(docs[1]))], None


def _family_for(obj, d):
    return TestFamily(obj.n, d)


def _cmd_theorem2(docs, d):
    _arity(docs, 1, ["tangent tensor"])
    n0 = io.read_oneone(docs[0])
    return [verify_theorem2(n0, _family_for(n0, d))], None


def _cmd_theorem3(docs, d):
    _arity(docs, 1, ["tangent tensor"])
    n0 = io.read_oneone(docs[0])
    return [courant_nijenhuis_test(n0, _family_for(n0, d))], None


def _cmd_lemma2(docs, d):
    _arity(docs, 1, ["tangent tensor"])
    k = io.read_oneone(docs[0])
    return [verify_lemma2(k, _family_for(k, d))], None


def _same_n(*objs):
    ns = {o.n for o in objs}
    if len(ns) != 1:
        raise DimensionError(f"inputs live on different R^n: {sorted(ns)}")


def _cmd_pn(docs, d):
    _arity(docs, 2, ["bivector", "tangent tensor"])
    lam, n0 = io.read_bivector(docs[0]), io.read_oneone(docs[1])
    _same_n(lam, n0)
    return [check_poisson_nijenhuis_weak(lam, n0, _family_for(lam, d))], None


def _cmd_presymplectic(docs, d):
    _arity(docs, 2, ["2-form", "tangent tensor"])
    omega, n0 = io.read_form(docs[0]), io.read_oneone(docs[1])
    _same_n(omega, n0)
    if omega.degree != 2:
        raise DimensionError("the first input must be a 2-form")
    return [check_presymplectic_nijenhuis(omega, n0, _family_for(omega, d))], None


def _cmd_lambda_omega(docs, d):
    _arity(docs, 2, ["2-form", "bivector"])
    omega, lam = io.read_form(docs[0]), io.read_bivector(docs[1])
    _same_n(omega, lam)
    if omega.degree != 2:
        raise DimensionError("the first input must be a 2-form")
    return [check_lambda_omega(omega, lam, _family_for(omega, d))], None


def _cmd_trivial_bialgebroid(docs, d):
    _arity(docs, 1, ["Courant tensor"])
    N = io.read_courant_tensor(docs[0])
    return [check_trivial_bialgebroid_nijenhuis(N, _family_for(N, d))], None


COMMANDS: dict[str, Callable] = {
    "check-leibniz": _cmd_check_leibniz,
    "classify-tensor": _cmd_classify,
    "contract": _cmd_contract,
    "double": _cmd_double,
    "check-courant": _cmd_check_courant,
    "check-dirac": _cmd_check_dirac,
    "check-dirac-nijenhuis": _cmd_check_dirac_nijenhuis,
    "check-bialgebroid-nijenhuis": _cmd_bialgebroid,
    "check-theorem2": _cmd_theorem2,
    "check-theorem3": _cmd_theorem3,
    "check-lemma2": _cmd_lemma2,
    "check-pn": _cmd_pn,
    "check-presymplectic-n": _cmd_presymplectic,
    "check-lambda-omega": _cmd_lambda_omega,
    "check-trivial-bialgebroid": _cmd_trivial_bialgebroid,
}


def run(job: _Job) -> dict:
    """Run one job and return its report document (``status`` included)."""
    start = time.perf_counter()
    doc: dict = {"version": __version__, "job": job.to_json()}
    try:
        if job.family_degree < 0:
            raise ParseError("family degree must be non-negative")
        inputs = [io.load_json(p) for p in job.inputs]
        try:
            reports, result = COMMANDS[job.command](inputs, job.family_degree)
        except PreconditionError as exc:
            reports = [CheckReport.failed("precondition", str(exc), {"message": str(exc)})]
            result = None
        status = EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL
        doc["reports"] = [r.to_dict() for r in reports]
        if result is not None:
            doc["result"] = jsonable(result)
    except (ParseError, DimensionError, InvariantError, TypeError, ValueError, NijenhuisError) as exc:
        status = EXIT_INPUT
        doc["reports"] = []
        doc["error"] = f"{type(exc).__name__}: {exc}"
    doc["status"] = status
    doc["wall_time"] = round(time.perf_counter() - start, 6)
    return doc


def batch(manifest: str | Path, family_degree: int = 2) -> dict:
    """Run the jobs listed in a manifest, in manifest order.

    Manifest format: ``{"jobs": [{"command": ..., "inputs": [...], "family_degree": 2}]}``;
    input paths are relative to the manifest's directory.
    """
    start = time.perf_counter()
    out: dict = {"version": __version__, "manifest": str(manifest), "jobs": []}
    try:
        spec = io.load_json(manifest)
        if not isinstance(spec, dict) or not isinstance(spec.get("jobs", []), list):
            raise ParseError(f"{manifest}: expected an object with a 'jobs' list")
        base = Path(manifest).parent
        jobs = []
        for k, entry in enumerate(spec.get("jobs", [])):
            if not isinstance(entry, dict) or "command" not in entry:
                raise ParseError(f"{manifest}: job {k} needs a 'command'")
            paths = [str(base / p) for p in entry.get("inputs", [])]
            jobs.append(_Job(entry["command"], paths, entry.get("family_degree", family_degree)))
    except ParseError as exc:
        out.update(status=EXIT_INPUT, error=str(exc), wall_time=round(time.perf_counter() - start, 6))
        return out
    results = [run(j) for j in jobs]
    out["jobs"] = results
    statuses = [r["status"] for r in results]
    out["status"] = EXIT_INPUT if EXIT_INPUT in statuses else (EXIT_FAIL if EXIT_FAIL in statuses else EXIT_PASS)
    out["wall_time"] = round(time.perf_counter() - start, 6)
    return out


def _text(doc: dict) -> str:
    lines = []
    if "jobs" in doc and "job" not in doc:
        lines.append(f"batch {doc.get('manifest', '')}: {len(doc['jobs'])} job(s)")
        for sub in doc["jobs"]:
            lines.append(_text(sub))
        if "error" in doc:
            lines.append(f"error: {doc['error']}")
        lines.append(f"status {doc['status']}")
        return "\n".join(lines)
    job = doc["job"]
    lines.append(f"{job['command']} {' '.join(job['inputs'])}")
    if "error" in doc:
        lines.append(f"  input error: {doc['error']}")
    for r in doc.get("reports", []):
        lines.append(f"  [{r['verdict'].upper()}] {r['name']}: {r['certificate']}")
        if r["witness"] is not None:
            lines.append("    witness: " + json.dumps(r["witness"], sort_keys=True))
    if "result" in doc:
        lines.append("  result: " + json.dumps(doc["result"], sort_keys=True))
    lines.append(f"  status {doc['status']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nijenhuis", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=sorted(COMMANDS) + ["batch"])
    p.add_argument("-i", "--input", action="append", default=[], metavar="FILE",
                   help="input JSON file (repeatable; for batch, the manifest)")
    p.add_argument("--family-degree", type=int, default=2, metavar="D",
                   help="maximal monomial degree of the test family (default 2)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", metavar="FILE", help="write the report here instead of stdout")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "batch":
        if len(args.input) != 1:
            doc = {"version": __version__, "jobs": [], "status": EXIT_INPUT,
                   "error": "batch takes exactly one manifest (-i MANIFEST)", "wall_time": 0.0}
        else:
            doc = batch(args.input[0], args.family_degree)
    else:
        doc = run(_Job(args.command, args.input, args.family_degree))
    text = json.dumps(doc, sort_keys=True, indent=2) if args.format == "json" else _text(doc)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return doc["status"]


if __name__ == "__main__":
    sys.exit(main())
