"""Command-line interface.

Exit codes: 0 SAT or success, 1 UNSAT, 2 usage or input error,
3 oracle search bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .formula import ParseError, OperatorSet, operator_set_of, parse, render
from .fragments import classify_operator_set, fragment_dispatch
from .oracle import FRAME3, K, LE1, LE2, SERIAL, Kind, Status, brute_force_sat
from .procedures import POORMAN, TABLEAUX, NotPoorMans, SatVerdict, sat, sat_kd_tableau
from .reductions import (Graph, QBFInstance, ReductionError, normalize_qbf, reduce_3col,
                         reduce_constants_to_vars, reduce_eliminate_true, reduce_kd_to_k,
                         reduce_onevar_to_zerovar, reduce_qbf)

EXIT_SAT, EXIT_UNSAT, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3

FRAMES = {"k": K, "kd": SERIAL, "le1": LE1, "le2": LE2, "frame3": FRAME3}
REDUCTIONS = ["3col", "qbf", "kd2k", "const2var", "elimtrue", "onevar2zerovar"]
TARGET_FRAME = {"3col": "frame3", "qbf": "le2", "kd2k": "k", "const2var": "k",
                "elimtrue": "k", "onevar2zerovar": "k"}


class InputError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modalsat", description="Modal satisfiability toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide satisfiability over a frame class")
    s.add_argument("--frame", required=True, choices=list(FRAMES))
    s.add_argument("--algo", default="auto", choices=["auto", "tableau", "poorman", "oracle"])
    s.add_argument("--max-worlds", type=int, default=8)
    s.add_argument("--model-out", metavar="FILE")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("formula", nargs="?", metavar="FORMULA", help="formula text, or - for stdin")
    src.add_argument("--in", dest="infile", metavar="FILE")

    c = sub.add_parser("classify", help="complexity of an operator set")
    c.add_argument("opset", metavar="OPSET", help="comma list, e.g. atneg,and,box,dia")

    f = sub.add_parser("fragment", help="smallest operator set containing a formula")
    f.add_argument("formula", metavar="FORMULA")

    r = sub.add_parser("reduce", help="apply a reduction")
    r.add_argument("name", choices=REDUCTIONS)
    r.add_argument("--in", dest="infile", required=True, metavar="FILE")
    r.add_argument("--solve", action="store_true", help="also decide the output on the target frame")

    o = sub.add_parser("oracle", help="brute-force model search")
    o.add_argument("--frame", required=True, choices=list(FRAMES))
    o.add_argument("--max-worlds", type=int, required=True)
    o.add_argument("formula", metavar="FORMULA")
    return p


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _formula(text: str):
    try:
        return parse(text)
    except ParseError as e:
        raise InputError(f"parse error: {e}") from None


def _verdict_code(ok: bool) -> int:
    return EXIT_SAT if ok else EXIT_UNSAT


def _solve(args, stdin, out) -> int:
    text = _read(args.infile, stdin) if args.infile else (
        stdin.read() if args.formula == "-" else args.formula)
    f = _formula(text)
    fc = FRAMES[args.frame]
    if args.max_worlds < 1:
        raise InputError("--max-worlds must be at least 1")
    if args.algo == "oracle":
        res = brute_force_sat(f, fc, args.max_worlds)
        if res.status is Status.BOUND_EXCEEDED:
            raise _BoundExceeded(res.bound)
        verdict = SatVerdict.of(res.sat, res.model)
    elif args.algo == "tableau":
        verdict = sat(f, fc) if fc.kind is Kind.FIXED else TABLEAUX[fc.kind](f)
    elif args.algo == "poorman":
        proc = POORMAN.get(fc.kind)
        if proc is None:
            raise InputError(f"no poor man's procedure for frame {args.frame}")
        try:
            verdict = proc(f)
        except NotPoorMans as e:
            raise InputError(str(e)) from None
    else:
        verdict = fragment_dispatch(f, fc)
    print(verdict.decision.value, file=out)
    if args.model_out and verdict.sat:
        model = verdict.witness
        if model is None:  # decision-only procedure; rebuild a model
            model = sat_kd_tableau(f).witness
        with open(args.model_out, "w") as fh:
            json.dump(model.to_json(), fh)
            fh.write("\n")
    return _verdict_code(verdict.sat)


class _BoundExceeded(Exception):
    pass


def _reduce(args, stdin, out, err) -> int:
    text = _read(args.infile, stdin)
    name = args.name
    try:
        if name == "3col":
            g = reduce_3col(Graph.from_json(json.loads(text)))
        elif name == "qbf":
            data = json.loads(text)
            try:
                q = QBFInstance.from_json(data)
            except ReductionError:
                prefix = data.get("prefix") or "EA" * (int(data["n"]) // 2)
                q = normalize_qbf(prefix, data["clauses"])
                print(f"note: instance normalized to {q.n} variables", file=err)
            g = reduce_qbf(q)
        else:
            f = _formula(text)
            g = {"kd2k": reduce_kd_to_k, "const2var": reduce_constants_to_vars,
                 "elimtrue": reduce_eliminate_true,
                 "onevar2zerovar": reduce_onevar_to_zerovar}[name](f)
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, json.JSONDecodeError):
            raise InputError(f"invalid JSON: {e}") from None
        raise InputError(f"invalid {name} input: {e}") from None
    target = TARGET_FRAME[name]
    code = EXIT_SAT
    if args.solve:
        verdict = sat(g, FRAMES[target])
        print(verdict.decision.value, file=out)
        code = _verdict_code(verdict.sat)
    print(render(g), file=out)
    print(f"target: {target}", file=out)
    return code


def run(argv: Sequence[str] | None = None, stdin: TextIO = sys.stdin, stdout: TextIO = sys.stdout,
        stderr: TextIO = sys.stderr) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_SAT
    try:
        if args.command == "solve":
            return _solve(args, stdin, stdout)
        if args.command == "classify":
            try:
                ops = OperatorSet.from_text(args.opset)
            except ValueError as e:
                raise InputError(str(e)) from None
            print(classify_operator_set(ops), file=stdout)
            return EXIT_SAT
        if args.command == "fragment":
            ops = operator_set_of(_formula(args.formula))
            print(ops.to_text(), file=stdout)
            print(f"{ops.symbols()} {classify_operator_set(ops)}", file=stdout)
            return EXIT_SAT
        if args.command == "reduce":
            return _reduce(args, stdin, stdout, stderr)
        if args.command == "oracle":
            if args.max_worlds < 1:
                raise InputError("--max-worlds must be at least 1")
            res = brute_force_sat(_formula(args.formula), FRAMES[args.frame], args.max_worlds)
            print(res.status.value, file=stdout)
            if res.model is not None:
                print(res.model.dumps(), file=stdout)
            if res.status is Status.BOUND_EXCEEDED:
                print(f"completeness bound {res.bound} exceeds --max-worlds {args.max_worlds}",
                      file=stderr)
                return EXIT_BOUND
            return _verdict_code(res.sat)
    except InputError as e:
        print(f"modalsat: {e}", file=stderr)
        return EXIT_USAGE
    except _BoundExceeded as e:
        print(f"modalsat: completeness bound {e.args[0]} exceeds --max-worlds", file=stderr)
        return EXIT_BOUND
    raise AssertionError(args.command)


def main() -> None:
    sys.exit(run())
