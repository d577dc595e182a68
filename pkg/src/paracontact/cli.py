"""Command-line interface: classify, decompose, example, selftest, dims.

Exit codes: 0 success, 1 validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .classifier import classify, dimension_audit
from .documents import dumps, parse_input, serialize_report, tensor_document
from .errors import ParacontactError
from .projectors import decompose
from .samples import EXAMPLE_LETTERS, example, parse_params
from .scalars import DEFAULT_TOL
from .selftest import run_selftest


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paracontact", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify one input document")
    c.add_argument("--input", required=True, type=Path)
    c.add_argument("--tol", type=float, default=None, help="zero threshold for float inputs")
    c.add_argument("--admit", action="store_true", help="project inadmissible tensors instead of rejecting")
    c.add_argument("--report", choices=("json", "text"), default="json")

    d = sub.add_parser("decompose", help="write the eleven components as input documents")
    d.add_argument("--input", required=True, type=Path)
    d.add_argument("--output", required=True, type=Path)
    d.add_argument("--admit", action="store_true")

    e = sub.add_parser("example", help="classify a parametric example family")
    e.add_argument("--name", required=True, choices=sorted(EXAMPLE_LETTERS))
    e.add_argument("--params", required=True, help="comma separated k=v, e.g. a=1,b=-2/3")
    e.add_argument("--report", choices=("json", "text"), default="json")

    s = sub.add_parser("selftest", help="run the property suites")
    s.add_argument("--n", required=True, type=int)
    s.add_argument("--trials", required=True, type=int)
    s.add_argument("--seed", type=int, default=0)

    m = sub.add_parser("dims", help="print the class dimensions from the rank audit")
    m.add_argument("--n", required=True, type=int)
    return parser


def _load(path: Path, tol, admit):
    data = path.read_bytes()
    return parse_input(data, tol=DEFAULT_TOL if tol is None else tol, admit=True if admit else None)


def _classify(args, out) -> int:
    parsed = _load(args.input, args.tol, args.admit)
    report = classify(parsed.tensor, args.tol)
    out.write(serialize_report(report, args.report, projection_distance=parsed.projection_distance))
    return 0


def _decompose(args, out) -> int:
    parsed = _load(args.input, None, args.admit)
    D = decompose(parsed.tensor)
    args.output.mkdir(parents=True, exist_ok=True)
    for i, c in enumerate(D.components, start=1):
        (args.output / f"F_{i}.json").write_bytes(dumps(tensor_document(c)).encode("utf-8"))
    out.write(f"wrote F_1.json..F_11.json to {args.output}\n".encode("utf-8"))
    return 0


def _example(args, out) -> int:
    try:
        params = parse_params(args.name, args.params)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParacontactError(str(exc)) from exc
    _, _, F = example(params)
    out.write(serialize_report(classify(F), args.report))
    return 0


def _selftest(args, out) -> int:
    lines = []
    ok = run_selftest(args.n, args.trials, args.seed, out=lines.append)
    lines.append("all suites passed" if ok else "some suites failed")
    out.write(("\n".join(lines) + "\n").encode("utf-8"))
    return 0 if ok else 1


def _dims(args, out) -> int:
    audit = dimension_audit(args.n)
    lines = [f"n={audit.n}"]
    lines += [f"d{i + 1}={r}" for i, r in enumerate(audit.ranks)]
    lines += [f"total={audit.total}", f"nullspace_dim={audit.nullspace_dim}",
              f"projection_rank={audit.projection_rank}"]
    out.write(("\n".join(lines) + "\n").encode("utf-8"))
    return 0


COMMANDS = {"classify": _classify, "decompose": _decompose, "example": _example,
            "selftest": _selftest, "dims": _dims}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, stdout)
    except (ParacontactError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1


def main() -> None:
    sys.exit(run())
