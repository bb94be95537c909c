"""Batch front door: JSON job files in, deterministic JSON reports out.

Jobs are single JSON documents (schema 1).  Reports embed the tool version,
a hash of the job document, and every effective flag, and are byte-identical
across repeated runs.  Exit codes: 0 success, 2 validation error,
3 computation error, 4 size-cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .algebras import AlgebraPresentation, tangent_dimension, validate_point
from .characters import configure_table_cache, tensor_decomposition
from .cohomology import OracleLimits, cross_check
from .errors import (
    BoundExceededError,
    CurrentExtError,
    DimensionCapError,
    JobValidationError,
)
from .ext import ext1_dimension, ext_quiver, linking_chain, same_block
from .modules import SupportFunction
from .polyring import PolynomialSyntaxError
from .roots import build_root_system, parse_type

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COMPUTATION = 3
EXIT_CAP = 4

COMMANDS = ("ext1", "block", "chain", "quiver", "oracle", "tangent", "tensor")


def job_hash(doc) -> str:
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def _require(doc, key, kind=None):
    if key not in doc:
        raise JobValidationError(f"missing field {key!r}")
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise JobValidationError(f"field {key!r} has wrong type")
    return val


def _load_algebra(doc) -> AlgebraPresentation:
    alg = _require(doc, "algebra", dict)
    gens = alg.get("generators", [])
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise JobValidationError("algebra.generators must be a list of names")
    try:
        return AlgebraPresentation.from_json(alg)
    except PolynomialSyntaxError as exc:
        raise JobValidationError(str(exc)) from exc


def _load_module(doc, key, stype, algebra) -> SupportFunction:
    raw = _require(doc, key, list)
    try:
        return SupportFunction.from_json(stype, algebra, raw)
    except (KeyError, TypeError) as exc:
        raise JobValidationError(f"malformed module entry in {key!r}") from exc


def _weight(doc, key):
    raw = _require(doc, key, list)
    if not all(isinstance(c, int) for c in raw):
        raise JobValidationError(f"{key!r} must be a list of integers")
    return tuple(raw)


class JobFlags:
    def __init__(self, doc, args):
        self.assume_connected = bool(
            doc.get("assume_connected", False) or (args and args.assume_connected)
        )
        self.truncation = int(doc.get("truncation_order", 2))
        if args and args.truncation is not None:
            self.truncation = args.truncation
        max_l = doc.get("max_lie_dim", 24)
        max_m = doc.get("max_module_dim", 64)
        rank_seconds = doc.get("rank_seconds", 10.0)
        if args:
            if args.max_L is not None:
                max_l = args.max_L
            if args.max_M is not None:
                max_m = args.max_M
        self.limits = OracleLimits(
            max_lie_dim=int(max_l),
            max_module_dim=int(max_m),
            rank_seconds=float(rank_seconds),
        )

    def to_json(self):
        return {
            "assume_connected": self.assume_connected,
            "truncation_order": self.truncation,
            "max_lie_dim": self.limits.max_lie_dim,
            "max_module_dim": self.limits.max_module_dim,
            "rank_seconds": self.limits.rank_seconds,
        }


def run_job(doc, args=None) -> tuple[dict, str]:
    """Execute one validated job document; returns (report, summary line)."""
    if not isinstance(doc, dict):
        raise JobValidationError("job document must be a JSON object")
    if doc.get("schema") != 1:
        raise JobValidationError("unsupported or missing schema version")
    command = _require(doc, "command", str)
    if command not in COMMANDS:
        raise JobValidationError(f"unknown command {command!r}")
    flags = JobFlags(doc, args)

    if command == "tangent":
        algebra = _load_algebra(doc)
        point = _require(doc, "point", list)
        if not validate_point(algebra, point):
            raise JobValidationError("point does not satisfy the relations")
        dim = tangent_dimension(algebra, point)
        return {"tangent": dim}, f"tangent dimension {dim}"

    stype = parse_type(_require(doc, "lie_type", str))

    if command == "tensor":
        rd = build_root_system(stype)
        lam = _weight(doc, "weight")
        mu = _weight(doc, "weight2")
        dec = tensor_decomposition(rd, lam, mu)
        if "weight3" in doc:
            nu = _weight(doc, "weight3")
            mult = dec.multiplicity(nu)
            return (
                {"multiplicity": mult, "decomposition": dec.to_json()},
                f"multiplicity {mult}",
            )
        return {"decomposition": dec.to_json()}, f"{len(dec.terms)} summands"

    if command == "chain":
        lam = _weight(doc, "weight")
        mu = _weight(doc, "weight2")
        bound = doc.get("bound")
        chain = linking_chain(stype, lam, mu, bound)
        return (
            {"chain": chain.to_json(), "length": len(chain) - 1},
            f"chain of {len(chain) - 1} steps",
        )

    algebra = _load_algebra(doc)

    if command == "ext1":
        sf = _load_module(doc, "module", stype, algebra)
        sf2 = _load_module(doc, "module2", stype, algebra)
        report = ext1_dimension(sf, sf2)
        return report.to_json(), f"dim Ext^1 = {report.total_dimension}"

    if command == "block":
        sf = _load_module(doc, "module", stype, algebra)
        sf2 = _load_module(doc, "module2", stype, algebra)
        result = same_block(sf, sf2, assume_connected=flags.assume_connected)
        return {"same_block": result}, f"same block: {result}"

    if command == "oracle":
        sf = _load_module(doc, "module", stype, algebra)
        sf2 = _load_module(doc, "module2", stype, algebra)
        report = cross_check(sf, sf2, flags.truncation, flags.limits)
        summary = "agree" if report.agree else "DISAGREE"
        return report.to_json(), f"cross-check: {summary} (formula {report.formula})"

    if command == "quiver":
        raw = _require(doc, "modules", list)
        family = [
            SupportFunction.from_json(stype, algebra, item) for item in raw
        ]
        quiver = ext_quiver(family)
        return quiver.to_json(), f"{len(quiver.nodes)} nodes, {len(quiver.edges)} edges"

    raise JobValidationError(f"unhandled command {command!r}")


def _emit(report_doc, args, summary: str) -> None:
    text = json.dumps(report_doc, sort_keys=True, indent=2) + "\n"
    if args.json_path == "-":
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
        return
    print(summary)
    if args.json_path:
        Path(args.json_path).write_text(text)
    else:
        sys.stdout.write(text)


def _wrap(doc, args, payload, flags_json) -> dict:
    return {
        "schema": 1,
        "version": __version__,
        "job_hash": job_hash(doc),
        "command": doc.get("command"),
        "flags": flags_json,
        "result": payload,
    }


def _classify(exc: Exception) -> int:
    if isinstance(exc, (JobValidationError, PolynomialSyntaxError)):
        return EXIT_VALIDATION
    if isinstance(exc, DimensionCapError):
        return EXIT_CAP
    return EXIT_COMPUTATION


def cmd_job(args) -> int:
    try:
        doc = json.loads(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read job file: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        payload, summary = run_job(doc, args)
    except CurrentExtError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _classify(exc)
    flags = JobFlags(doc, args)
    report = _wrap(doc, args, payload, flags.to_json())
    if args.emit_dot and doc.get("command") == "quiver":
        from .ext import ext_quiver  # payload carries JSON; rebuild for DOT

        stype = parse_type(doc["lie_type"])
        algebra = _load_algebra(doc)
        family = [
            SupportFunction.from_json(stype, algebra, item)
            for item in doc["modules"]
        ]
        Path(args.emit_dot).write_text(ext_quiver(family).to_dot() + "\n")
    _emit(report, args, summary)
    return EXIT_OK


def cmd_suite(args) -> int:
    root = Path(args.directory)
    if not root.is_dir():
        print(f"error: {root} is not a directory", file=sys.stderr)
        return EXIT_VALIDATION
    files = sorted(root.glob("*.json"))
    entries = []
    agree_flags = []
    codes = []
    for path in files:
        entry = {"file": path.name}
        try:
            doc = json.loads(path.read_text())
            payload, summary = run_job(doc, args)
            entry["status"] = "ok"
            entry["job_hash"] = job_hash(doc)
            entry["result"] = payload
            entry["summary"] = summary
            if doc.get("command") == "oracle":
                agree_flags.append(bool(payload.get("agree")))
            codes.append(EXIT_OK)
        except (OSError, json.JSONDecodeError) as exc:
            entry["status"] = "invalid"
            entry["error"] = str(exc)
            codes.append(EXIT_VALIDATION)
        except CurrentExtError as exc:
            code = _classify(exc)
            entry["status"] = {
                EXIT_VALIDATION: "invalid",
                EXIT_CAP: "cap-exceeded",
            }.get(code, "failed")
            entry["error"] = str(exc)
            codes.append(code)
        entries.append(entry)
    aggregate = {
        "schema": 1,
        "version": __version__,
        "jobs": entries,
        "summary": {
            "total": len(entries),
            "ok": sum(1 for c in codes if c == EXIT_OK),
            "validation_errors": sum(1 for c in codes if c == EXIT_VALIDATION),
            "computation_errors": sum(1 for c in codes if c == EXIT_COMPUTATION),
            "cap_errors": sum(1 for c in codes if c == EXIT_CAP),
            "oracle_all_agree": all(agree_flags) if agree_flags else None,
        },
    }
    _emit(aggregate, args, f"{aggregate['summary']['ok']}/{len(entries)} jobs ok")
    if EXIT_VALIDATION in codes:
        return EXIT_VALIDATION
    if EXIT_COMPUTATION in codes:
        return EXIT_COMPUTATION
    if EXIT_CAP in codes:
        return EXIT_CAP
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="currentext",
        description="Exact Ext^1 calculator for current Lie algebra modules",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="mode", required=True)

    def common(p):
        p.add_argument("--json", dest="json_path", metavar="PATH",
                       help="write the JSON report here ('-' for stdout)")
        p.add_argument("--assume-connected", action="store_true",
                       help="assert that Spec A is connected (block commands)")
        p.add_argument("--truncation", type=int, default=None, metavar="K",
                       help="jet truncation order for the oracle")
        p.add_argument("--max-L", type=int, default=None, metavar="N",
                       help="cap on the truncated Lie algebra dimension")
        p.add_argument("--max-M", type=int, default=None, metavar="N",
                       help="cap on the coefficient module dimension")
        p.add_argument("--emit-dot", metavar="PATH",
                       help="write a DOT rendering (quiver command)")
        p.add_argument("--cache-size", type=int, default=None, metavar="N",
                       help="LRU bound for weight multiplicity tables")

    pj = sub.add_parser("job", help="run a single job file")
    pj.add_argument("file")
    common(pj)
    pj.set_defaults(func=cmd_job)

    ps = sub.add_parser("suite", help="run every *.json job in a directory")
    ps.add_argument("directory")
    common(ps)
    ps.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cache_size is not None:
        configure_table_cache(args.cache_size)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
