"""Command-line front end.

Exit codes: 0 for an affirmative verdict or plain success, 1 for a negative
verdict (invalid, not entailed, countermodel found, rejected proof, failed
synonymy), 2 for usage, parse, or semantic errors.  Results go to stdout,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import consequence, interop, proofs, synthesis
from .formulas import FormulaError, parse
from .logics import LOGIC_NAMES, LogicError, get_logic


class _CliError(Exception):
    pass


def _logic(name: str):
    return get_logic(name)


def _formula(text: str):
    return parse(text)


def _premises(text: str | None):
    if not text or not text.strip():
        return []
    return [parse(part) for part in text.split(";") if part.strip()]


def _cmd_table(args) -> int:
    table = consequence.truth_table(_logic(args.logic), _formula(args.formula))
    print(table.to_text())
    return 0


def _cmd_valid(args) -> int:
    ok = consequence.valid(_logic(args.logic), _formula(args.formula))
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def _cmd_entails(args) -> int:
    sequent = consequence.Sequent.of(_premises(args.premises), _formula(args.conclusion))
    ok = consequence.entails(_logic(args.logic), sequent)
    print("entails" if ok else "does not entail")
    return 0 if ok else 1


def _cmd_countermodel(args) -> int:
    sequent = consequence.Sequent.of(_premises(args.premises), _formula(args.conclusion))
    witness = consequence.countermodel(_logic(args.logic), sequent)
    if witness is None:
        print("none")
        return 0
    print(" ".join(f"{atom}={value.letter}" for atom, value in witness.items()))
    return 1


def _cmd_equiv(args) -> int:
    ok = consequence.equivalent(_logic(args.logic), _formula(args.first),
                                _formula(args.second))
    print("equivalent" if ok else "not equivalent")
    return 0 if ok else 1


def _cmd_expand(args) -> int:
    print(interop.expand(_formula(args.formula)))
    return 0


def _cmd_constants(args) -> int:
    values = interop.constant_check(_logic(args.logic))
    print(" ".join(f"{name}={value.letter}" for name, value in values.items()))
    return 0


def _cmd_translate(args) -> int:
    scheme = interop.BUILTIN_SCHEMES.get(args.scheme)
    if scheme is None:
        raise _CliError(f"unknown scheme {args.scheme!r}; choose from "
                        f"{', '.join(interop.BUILTIN_SCHEMES)}")
    print(interop.translate(_formula(args.formula), scheme))
    return 0


def _cmd_synonymy(args) -> int:
    report = interop.check_synonymy(args.pair, args.bound)
    print(report.to_text())
    return 0 if report.passed else 1


def _cmd_synthesize(args) -> int:
    text = Path(args.table).read_text()
    tf = synthesis.TruthFunction.from_text(text)
    print(synthesis.synthesize(tf))
    return 0


def _cmd_check(args) -> int:
    proof = proofs.parse_proof(Path(args.proof).read_text())
    report = proofs.check_proof(proof)
    print(report.to_text())
    return 0 if report.accepted else 1


def _cmd_audit(args) -> int:
    proof = proofs.parse_proof(Path(args.proof).read_text())
    check = proofs.check_proof(proof)
    if not check.accepted:
        print(check.to_text())
        return 1
    report = proofs.soundness_audit(proof)
    entry = report.diagnostics[0]
    print(f"audit: {'pass' if report.accepted else 'fail'} ({entry.message})")
    return 0 if report.accepted else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdekit",
        description="Many-valued logic kernel for the FDE family.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def with_logic(p):
        p.add_argument("-l", "--logic", required=True, metavar="LOGIC",
                       help=f"one of: {', '.join(LOGIC_NAMES)}")
        return p

    p = with_logic(sub.add_parser("table", help="print a full truth table"))
    p.add_argument("formula")
    p.set_defaults(fn=_cmd_table)

    p = with_logic(sub.add_parser("valid", help="is the formula designated everywhere?"))
    p.add_argument("formula")
    p.set_defaults(fn=_cmd_valid)

    p = with_logic(sub.add_parser("entails", help="designation-preserving consequence"))
    p.add_argument("--premises", default="", help="formulas separated by ';'")
    p.add_argument("conclusion")
    p.set_defaults(fn=_cmd_entails)

    p = with_logic(sub.add_parser("countermodel",
                                  help="first valuation refuting the sequent, or 'none'"))
    p.add_argument("--premises", default="", help="formulas separated by ';'")
    p.add_argument("conclusion")
    p.set_defaults(fn=_cmd_countermodel)

    p = with_logic(sub.add_parser("equiv", help="value identity on every valuation"))
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(fn=_cmd_equiv)

    p = sub.add_parser("expand", help="unfold defined connectives and constants")
    p.add_argument("formula")
    p.set_defaults(fn=_cmd_expand)

    p = with_logic(sub.add_parser("constants",
                                  help="evaluate the quantified constant definientia"))
    p.set_defaults(fn=_cmd_constants)

    p = sub.add_parser("translate", help="apply a built-in translation scheme")
    p.add_argument("--scheme", required=True,
                   help=f"one of: {', '.join(interop.BUILTIN_SCHEMES)}")
    p.add_argument("formula")
    p.set_defaults(fn=_cmd_translate)

    p = sub.add_parser("synonymy", help="check translational equivalence")
    p.add_argument("--pair", required=True,
                   help=f"one of: {', '.join(interop.SYNONYMY_PAIRS)}")
    p.add_argument("--bound", type=int, default=7)
    p.set_defaults(fn=_cmd_synonymy)

    p = sub.add_parser("synthesize",
                       help="build a formula realizing a 4-valued truth function")
    p.add_argument("--table", required=True, help="truth function text file")
    p.set_defaults(fn=_cmd_synthesize)

    p = sub.add_parser("check", help="check a Fitch-style proof file")
    p.add_argument("proof")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("audit", help="check a proof, then audit its soundness")
    p.add_argument("proof")
    p.set_defaults(fn=_cmd_audit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (FormulaError, LogicError, proofs.ProofSyntaxError, _CliError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
