"""Command-line interface.

Every subcommand prints one report (JSON by default, ``--format text`` for a
summary) and exits with 0 when the property holds or the computation
succeeded, 1 when a checked property is violated, and 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

from . import choice, core, lexico, optimize, verify
from .core import NEG_INF, SetFunction, Subset
from .errors import OrdConcaveError
from .io import dump_document, load, number, to_document

EXIT_OK, EXIT_VIOLATED, EXIT_ERROR = 0, 1, 2


@dataclass
class Report:
    command: list[str]
    name: str
    holds: bool | None = None
    result: Any = None
    witness: dict | None = None
    counters: dict = field(default_factory=dict)
    exit_status: int = EXIT_OK

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls(**json.loads(text))

    def to_text(self) -> str:
        lines = [f"{self.name}"]
        if self.holds is not None:
            lines.append(f"  holds: {'yes' if self.holds else 'no'}")
        if self.result is not None:
            lines.append(f"  result: {json.dumps(self.result, ensure_ascii=False)}")
        if self.witness:
            for key, value in self.witness.items():
                if value not in (None, ""):
                    lines.append(f"  witness.{key}: {json.dumps(value, ensure_ascii=False)}")
        for key, value in self.counters.items():
            lines.append(f"  {key}: {value}")
        return "\n".join(lines) + "\n"


def _labels(X: Subset | None) -> list[str] | None:
    return None if X is None else list(X.labels)


def _value(v) -> int | float | str:
    return "-inf" if v is NEG_INF else number(v)


def _witness(w: verify.Witness | None) -> dict | None:
    if w is None:
        return None
    return {
        "kind": w.kind.value,
        "X": _labels(w.X),
        "Xprime": _labels(w.Xprime),
        "x": w.x,
        "detail": w.detail,
        "ordering": None if w.ordering is None else list(w.ordering),
    }


def _property(argv, report: verify.PropertyReport) -> Report:
    return Report(
        list(argv),
        report.property,
        report.holds,
        None,
        _witness(report.witness),
        {"pairs_checked": report.pairs_checked},
        EXIT_OK if report.holds else EXIT_VIOLATED,
    )


def _set_entry(u: SetFunction, X: Subset) -> dict:
    return {"set": list(X.labels), "value": _value(u(X))}


CHECKS: dict[str, Callable[[SetFunction, argparse.Namespace], verify.PropertyReport]] = {
    "ordinal-concavity": lambda u, a: verify.check_ordinal_concavity(u, tol=a.tol),
    "ordinal-w-concavity": lambda u, a: verify.check_ordinal_wconcavity(u, tol=a.tol),
    "um": lambda u, a: verify.check_unique_maximizer(u),
    "mnat-family": lambda u, a: verify.check_mnat_convex_family(
        verify.SubsetFamily(u.ground, frozenset(u.effective_domain()))
    ),
    "mn-characterization": lambda u, a: verify.check_MN_characterization(u),
    "path-independence": lambda u, a: choice.check_path_independence(u, "both"),
    "path-independence-union": lambda u, a: choice.check_path_independence(u, "union"),
    "path-independence-disjoint": lambda u, a: choice.check_path_independence(u, "disjoint"),
    "path-independence-both": lambda u, a: choice.check_path_independence(u, "both"),
    "substitutability-1": lambda u, a: choice.check_substitutability(u, "I"),
    "substitutability-2": lambda u, a: choice.check_substitutability(u, "II"),
    "dual-substitutability": lambda u, a: choice.check_dual_substitutability(u),
    "sen-alpha": lambda u, a: choice.check_sen_alpha(u),
}


def cmd_check(args, argv) -> Report:
    u = load(args.file)
    return _property(argv, CHECKS[args.property](u, args))


def cmd_maximize(args, argv) -> Report:
    u = load(args.file)
    if args.algorithm == "contract":
        W, calls = optimize.maximize_contractive(u)
        return Report(list(argv), "maximize-contract", None, _set_entry(u, W), None, {"evaluations": calls})
    start = u.ground.parse(args.start or "")
    Y, trace = optimize.hill_climb(u, start, args.mode)
    steps = [{"from": _labels(a), "to": _labels(b), "value": _value(v)} for a, b, v in trace.steps]
    result = {**_set_entry(u, Y), "trace": steps}
    return Report(list(argv), f"maximize-hill-{args.mode}", None, result, None, {"evaluations": trace.evaluations, "updates": trace.updates})


def cmd_path(args, argv) -> Report:
    u = load(args.file)
    path = optimize.improving_path(u, u.ground.parse(args.start))
    result = {
        "anchor": _labels(path.anchor),
        "sets": [_labels(s) for s in path.sets],
        "values": [_value(u(s)) for s in path.sets],
        "moves": [[y, x] for y, x in path.moves],
    }
    return Report(list(argv), "improving-path", None, result, None, {"length": len(path)})


def cmd_chain(args, argv) -> Report:
    u = load(args.file)
    Z = u.ground.parse(args.maximizer)
    report = _property(argv, optimize.prefix_chain(u, Z, args.quantifier))
    if report.holds and args.quantifier == "exists":
        report.result = {"ordering": list(optimize.increasing_ordering(u, Z))}
    return report


def _family(F: verify.SubsetFamily) -> list[list[str]]:
    return [list(X.labels) for X in F]


def cmd_choice(args, argv) -> Report:
    u = load(args.file)
    X = u.ground.parse(args.menu)
    result = {
        "correspondence": _family(choice.choice_correspondence(u, X)),
        "choice": _set_entry(u, choice.canonical_choice(u, X)),
    }
    return Report(list(argv), "choice", None, result)


def cmd_interval(args, argv) -> Report:
    u = load(args.file)
    fam = choice.interval_maximizers(u, u.ground.parse(args.lower), u.ground.parse(args.upper))
    return Report(list(argv), "interval-maximizers", None, {"maximizers": _family(fam)})


def cmd_preimage(args, argv) -> Report:
    u = load(args.file)
    fam = choice.preimage(u, u.ground.parse(args.choice_set))
    return Report(list(argv), "preimage", None, {"menus": _family(fam)}, None, {"size": len(fam)})


def cmd_enclosure(args, argv) -> Report:
    u = load(args.file)
    res = choice.enclosure(u, u.ground.parse(args.choice_set))
    return Report(list(argv), "enclosure", None, {"lower": _labels(res.lower), "upper": _labels(res.upper)})


def cmd_proper(args, argv) -> Report:
    u = load(args.file)
    holds = choice.is_proper_set(u, u.ground.parse(args.set))
    witness = None
    if not holds:
        X = u.ground.parse(args.set)
        C = choice.canonical_choice(u, X)
        grow = next(x for x in u.ground.labels if x not in X and choice.canonical_choice(u, X.add(x)) == C)
        witness = {"kind": verify.Violation.GENERIC.value, "X": _labels(X), "Xprime": _labels(X.add(grow)), "x": grow,
                   "detail": f"adding {grow} keeps the choice {C!r}", "ordering": None}
    return Report(list(argv), "proper-set", holds, None, witness, {}, EXIT_OK if holds else EXIT_VIOLATED)


def cmd_dual(args, argv) -> Report:
    u = load(args.file)
    v = core.dual_convex(u) if args.convex else core.dual(u)
    return Report(list(argv), "dual-convex" if args.convex else "dual", None, to_document(v))


def cmd_minor(args, argv) -> Report:
    u = load(args.file)
    v = core.minor(u, u.ground.parse(args.contract), u.ground.parse(args.reduce_to))
    return Report(list(argv), "minor", None, to_document(v))


def _lex_entry(f: lexico.LexSetFunction, X: Subset) -> dict:
    value = f(X)
    return {"set": list(X.labels), "value": [number(value.first), number(value.second)], "split": _labels(f.split(X))}


def cmd_compose(args, argv) -> Report:
    u1, u2 = load(args.u1), load(args.u2)
    f = lexico.lex_compose(u1, u2)
    table = [_lex_entry(f, X) for X in f.ground.all_subsets()]
    if args.out:
        doc = {"ground": list(f.ground.labels), "values": table}
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    if args.query is not None:
        entry = _lex_entry(f, f.ground.parse(args.query))
        result = {"value": entry["value"], "split": entry["split"]}
    else:
        result = table
    report = Report(list(argv), "compose", None, result)
    if args.check:
        check = lexico.check_lex_wconcavity(f)
        report.holds = check.holds
        report.witness = _witness(check.witness)
        report.counters = {"pairs_checked": check.pairs_checked}
        report.exit_status = EXIT_OK if check.holds else EXIT_VIOLATED
    return report


def cmd_generate(args, argv) -> Report:
    u = verify.generate(args.kind, args.n, args.seed)
    if args.out:
        Path(args.out).write_text(dump_document(u))
    return Report(list(argv), f"generate-{args.kind}", None, to_document(u))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json", help="report format (default: json)")

    parser = argparse.ArgumentParser(prog="ordconcave", description="Analyze and maximize set functions on 2^E.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check a structural property")
    p.add_argument("property", choices=sorted(CHECKS))
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=0.0, help="absolute tolerance for equalities (concavity checks)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("maximize", parents=[common], help="maximize a function")
    p.add_argument("file")
    p.add_argument("--algorithm", choices=["hill", "contract"], default="contract")
    p.add_argument("--start", default=None, help="start set for hill climbing, e.g. 'a,c' (default: empty set)")
    p.add_argument("--mode", choices=["first", "steepest"], default="first")
    p.set_defaults(func=cmd_maximize)

    p = sub.add_parser("path", parents=[common], help="improving exchange path to a maximizer")
    p.add_argument("file")
    p.add_argument("--start", required=True)
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("chain", parents=[common], help="increasing prefix orderings of a maximizer")
    p.add_argument("file")
    p.add_argument("--maximizer", required=True)
    p.add_argument("--quantifier", choices=["exists", "forall"], default="exists")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("choice", parents=[common], help="choice correspondence of a menu")
    p.add_argument("file")
    p.add_argument("--menu", required=True)
    p.set_defaults(func=cmd_choice)

    p = sub.add_parser("interval", parents=[common], help="maximizers over an interval")
    p.add_argument("file")
    p.add_argument("--lower", required=True)
    p.add_argument("--upper", required=True)
    p.set_defaults(func=cmd_interval)

    for name, func, text in (("preimage", cmd_preimage, "menus selecting a set"), ("enclosure", cmd_enclosure, "enclosure interval of a choice set")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file")
        p.add_argument("--choice-set", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("proper", parents=[common], help="is a set proper")
    p.add_argument("file")
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_proper)

    p = sub.add_parser("dual", parents=[common], help="dual (or dual-convex) function")
    p.add_argument("file")
    p.add_argument("--convex", action="store_true")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("minor", parents=[common], help="reduce to a set, then contract by a subset of it")
    p.add_argument("file")
    p.add_argument("--reduce-to", required=True)
    p.add_argument("--contract", required=True)
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("compose", parents=[common], help="lexicographic composition")
    p.add_argument("u1")
    p.add_argument("u2")
    p.add_argument("--query", default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--check", action="store_true", help="also check w-concavity of the composition")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("generate", parents=[common], help="generate a test function")
    p.add_argument("--kind", required=True, choices=[k.value for k in verify.FunctionKind])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_generate)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        report = args.func(args, argv)
    except (OrdConcaveError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_ERROR
    stdout.write(report.to_text() if args.format == "text" else report.to_json())
    return report.exit_status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
