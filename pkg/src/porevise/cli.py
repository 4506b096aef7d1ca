"""Command-line front end.

Exit codes: 0 success, 1 a check (or a both-methods belief comparison)
failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .bridge import (
    DEFAULT_MAX_FORMULAS,
    GuardExceeded,
    beliefs_syn,
    check_belief_equivalence,
    check_commutation,
    consistent_subsets,
    infers,
    subset_order,
    we_map,
)
from .experiments import run_checks
from .logic import (
    DEFAULT_MAX_ATOMS,
    Formula,
    LogicError,
    UnknownAtomError,
    format_formula,
    formula_of_models,
    is_tautology,
    literals,
    model_mask,
    parse_formula,
)
from .preorder import Mode, PartialPreorder, sort_key
from .semantic import EpistemicState, Operator, beliefs_sem, revise_sem
from .syntactic import BaseFormatError, BeliefBase, format_base, load_base, revise_syn

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Session:
    """A loaded base plus the revisions applied to it so far."""

    base: BeliefBase
    mode: Mode = Mode.WEAK
    log: list = field(default_factory=list)
    _state: Optional[EpistemicState] = None

    @property
    def state(self) -> EpistemicState:
        if self._state is None:
            self._state = we_map(self.base, self.mode)
        return self._state

    def revise_syntactic(self, operator: Operator, mu: Formula, text: str):
        self.base = revise_syn(self.base, mu, operator)
        self._state = None
        self.log.append((operator.value, text))

    def revise_semantic(self, operator: Operator, mu: Formula, text: str):
        self._state = revise_sem(self.state, mu, operator)
        self.log.append((operator.value, text))


def parse_steps(steps: list[str], default_op: str, vocab) -> list[tuple[Operator, Formula, str]]:
    out = []
    for raw in steps or []:
        op_text, sep, ftext = raw.partition(":")
        if sep:
            try:
                op = Operator.parse(op_text.strip())
            except ValueError as e:
                raise UsageError(f"step {raw!r}: {e}") from None
        else:
            op, ftext = Operator.parse(default_op), raw
        try:
            mu = parse_formula(ftext, vocab)
        except UnknownAtomError as e:
            raise UsageError(f"vocabulary mismatch in step {raw!r}: {e}") from None
        except LogicError as e:
            raise UsageError(f"step {raw!r}: {e}") from None
        out.append((op, mu, ftext.strip()))
    return out


def _warn_degenerate(mu: Formula, text: str, vocab):
    mask = model_mask(mu, vocab)
    if mask == 0:
        print(f"warning: {text!r} has no models; revision leaves the order unchanged",
              file=sys.stderr)
    elif is_tautology(mu, vocab):
        print(f"warning: {text!r} is a tautology; revision leaves the order unchanged",
              file=sys.stderr)


def _session(args) -> Session:
    base = load_base(args.base, max_atoms=args.max_atoms)
    return Session(base, Mode.parse(args.mode))


def _apply(session: Session, args, level: str):
    steps = parse_steps(args.step, args.op, session.base.vocab)
    for op, mu, text in steps:
        if level == "sem":
            _warn_degenerate(mu, text, session.base.vocab)
            session.revise_semantic(op, mu, text)
        else:
            session.revise_syntactic(op, mu, text)
    return steps


# --------------------------------------------------------------------------
# rendering helpers

def omega(w: int) -> str:
    return f"ω{w}"


def render_models(ws, vocab) -> list[str]:
    return [f"{omega(w)} {{{', '.join(literals(w, vocab))}}}" for w in sorted(ws)]


def order_json(order: PartialPreorder, label=str) -> dict:
    return {
        "classes": [[label(x) for x in sorted(c, key=sort_key)] for c in order.classes],
        "edges": [[i, j] for i, j in order.covering_pairs()],
    }


def render_order(order: PartialPreorder, label=str) -> list[str]:
    lines = []
    for i, c in enumerate(order.classes):
        lines.append(f"  [{i}] " + " = ".join(label(x) for x in sorted(c, key=sort_key)))
    for i, j in order.covering_pairs():
        lines.append(f"  [{i}] < [{j}]")
    return lines


def base_json(base: BeliefBase) -> dict:
    d = {"atoms": list(base.vocab.atoms),
         "entries": [{"label": l, "formula": format_formula(f)} for l, f in base.entries]}
    d.update(order_json(base.order))
    return d


def render_base(base: BeliefBase) -> str:
    lines = [f"atoms: {' '.join(base.vocab.atoms)}", f"{len(base)} entries"]
    for l, f in base.entries:
        lines.append(f"  {l}: {format_formula(f)}")
    order = base.order
    strict = order.covering_pairs()
    lines.append(f"order: {len(order.classes)} classes, {len(strict)} strict edges")
    for c in order.classes:
        if len(c) > 1:
            lines.append("  " + " = ".join(sorted(c, key=sort_key)))
    for i, j in strict:
        for x in sorted(order.classes[i], key=sort_key)[:1]:
            for y in sorted(order.classes[j], key=sort_key)[:1]:
                lines.append(f"  {x} < {y}")
    return "\n".join(lines) + "\n"


def render_state(state: EpistemicState) -> str:
    lines = [f"atoms: {' '.join(state.vocab.atoms)}",
             f"{len(state.order.classes)} classes, {len(state.order.covering_pairs())} edges"]
    lines.extend(render_order(state.order, omega))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# commands

def cmd_show(args) -> int:
    base = load_base(args.base, max_atoms=args.max_atoms)
    if args.format == "json":
        _emit(json.dumps(base_json(base), indent=2) + "\n", args.out)
    elif args.format == "dot":
        _emit(base.order.to_dot(_entry_labeler(base), name="base"), args.out)
    else:
        _emit(render_base(base), args.out)
    return EXIT_OK


def cmd_revise(args) -> int:
    session = _session(args)
    _apply(session, args, args.level)
    if args.level == "syn":
        base = session.base
        if args.format == "json":
            _emit(json.dumps(base_json(base), indent=2) + "\n", args.out)
        elif args.format == "dot":
            _emit(base.order.to_dot(_entry_labeler(base), name="base"), args.out)
        else:
            _emit(format_base(base), args.out)
    else:
        state = session.state
        if args.format == "json":
            _emit(json.dumps(order_json(state.order, int), indent=2) + "\n", args.out)
        elif args.format == "dot":
            _emit(state.order.to_dot(omega, name="state"), args.out)
        else:
            _emit(render_state(state), args.out)
    return EXIT_OK


def _beliefs(session: Session, args, method: str):
    steps = parse_steps(args.step, args.op, session.base.vocab)
    vocab = session.base.vocab
    results = {}
    if method in ("syn", "both"):
        base = session.base
        for op, mu, _ in steps:
            base = revise_syn(base, mu, op)
        phi, ws = beliefs_syn(base, session.mode, args.max_formulas)
        results["syntactic"] = {"formula": format_formula(phi), "models": sorted(ws)}
    if method in ("sem", "both"):
        state = session.state
        for op, mu, text in steps:
            _warn_degenerate(mu, text, vocab)
            state = revise_sem(state, mu, op)
        ws = beliefs_sem(state)
        results["semantic"] = {"formula": format_formula(formula_of_models(ws, vocab)),
                               "models": sorted(ws)}
    return results


def cmd_beliefs(args) -> int:
    session = _session(args)
    results = _beliefs(session, args, args.method)
    verdict = None
    if args.method == "both":
        verdict = results["syntactic"]["models"] == results["semantic"]["models"]
    if args.format == "json":
        payload = dict(results)
        if verdict is not None:
            payload["verdict"] = "agree" if verdict else "disagree"
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        vocab = session.base.vocab
        for name, r in results.items():
            print(f"{name}: {len(r['models'])} models")
            for line in render_models(r["models"], vocab):
                print("  " + line)
            print(f"  formula: {r['formula']}")
        if verdict is not None:
            print("verdict: " + ("agree" if verdict else "disagree"))
    return EXIT_OK if verdict in (None, True) else EXIT_FAIL


def cmd_infer(args) -> int:
    session = _session(args)
    base = session.base
    for op, mu, _ in parse_steps(args.step, args.op, base.vocab):
        base = revise_syn(base, mu, op)
    try:
        phi = parse_formula(args.formula, base.vocab)
    except UnknownAtomError as e:
        raise UsageError(f"vocabulary mismatch: {e}") from None
    result = infers(base, phi, session.mode, args.max_formulas)
    if args.format == "json":
        print(json.dumps({"formula": format_formula(phi), "inferred": result}))
    else:
        print("true" if result else "false")
    return EXIT_OK


def cmd_check(args) -> int:
    reports = []
    if args.base:
        session = _session(args)
        base = session.base
        mu_text = args.mu or (base.vocab.atoms[-1] if base.vocab.atoms else "true")
        mu = parse_formula(mu_text, base.vocab)
        for theorem in _theorems_in(args.scope):
            fn = check_commutation if theorem == "theorem1" else check_belief_equivalence
            for op in Operator:
                rep = fn(base, mu, op, session.mode)
                d = rep.to_dict()
                d["check"] = f"{theorem}/fixture/{op.value}/{session.mode.value}"
                reports.append(d)
    summaries = run_checks(args.scope, args.trials, args.seed, args.max_atoms_random, 4)
    reports.extend(s.to_dict() for s in summaries)
    ok = all(r["verdict"] == "pass" for r in reports)

    if args.report_dir:
        out = Path(args.report_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(json.dumps(
            {"scope": args.scope, "trials": args.trials, "seed": args.seed,
             "verdict": "pass" if ok else "fail", "checks": reports}, indent=2) + "\n")
        from .plotting import plot_check_summary
        plot_check_summary(summaries, out / "summary.png", title=f"{args.scope}, seed {args.seed}")

    if args.format == "json":
        print(json.dumps({"verdict": "pass" if ok else "fail", "checks": _strip_timing(reports)},
                         indent=2))
    else:
        for r in reports:
            trials = f" trials={r['trials']} failures={r['failures']}" if "trials" in r else ""
            print(f"{r['verdict'].upper():4} {r['check']}{trials}")
            if r["verdict"] != "pass":
                print("     witness: " + json.dumps(r.get("first_failure") or r.get("witness")))
        print("verdict: " + ("pass" if ok else "fail"))
    return EXIT_OK if ok else EXIT_FAIL


def _strip_timing(reports):
    # wall-clock times would break run-to-run identical output
    return [{k: v for k, v in r.items() if k != "seconds"} for r in reports]


def _theorems_in(scope: str) -> list[str]:
    return {"theorem1": ["theorem1"], "theorem2": ["theorem2"],
            "all": ["theorem1", "theorem2"]}.get(scope, [])


def _entry_labeler(base: BeliefBase):
    table = base.mapping()
    return lambda l: f"{l}: {format_formula(table[l])}"


def cmd_export(args) -> int:
    session = _session(args)
    target = args.target
    if target == "state-order":
        _apply(session, args, args.level)
        order, labeler, name = session.state.order, omega, "state"
    elif target == "base-order":
        if args.level != "syn":
            raise UsageError("base-order export needs --level syn")
        _apply(session, args, "syn")
        order, labeler, name = session.base.order, _entry_labeler(session.base), "base"
    else:
        if args.level != "syn":
            raise UsageError("subset-order export needs --level syn")
        _apply(session, args, "syn")
        records = consistent_subsets(session.base, args.max_formulas)
        order = subset_order(session.base, session.mode, records)
        labeler = lambda i: "{" + ",".join(sorted(records[i].subset, key=sort_key)) + "}"
        name = "subsets"
    if args.format == "json":
        _emit(json.dumps(order_json(order, labeler), indent=2) + "\n", args.out)
    elif args.format == "text":
        _emit("\n".join(render_order(order, labeler)) + "\n", args.out)
    else:
        _emit(order.to_dot(labeler, name=name), args.out)
    if args.figure:
        from .plotting import draw_order
        draw_order(order, args.figure, labeler, title=f"{target} ({session.mode.value})")
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-atoms", type=int, default=DEFAULT_MAX_ATOMS,
                        help="vocabulary size limit (default %(default)s)")
    common.add_argument("--max-formulas", type=int, default=DEFAULT_MAX_FORMULAS,
                        help="subset-enumeration limit (default %(default)s)")
    common.add_argument("--mode", choices=["weak", "strong"], default="weak")

    stepped = argparse.ArgumentParser(add_help=False)
    stepped.add_argument("-s", "--step", action="append", default=[], metavar="[OP:]FORMULA",
                         help="revision step, repeatable; OP is history or poss")
    stepped.add_argument("--op", choices=["history", "poss", "possibilistic"], default="history",
                         help="operator for steps without an OP: prefix")

    parser = argparse.ArgumentParser(prog="porevise",
                                     description="Revision of partially ordered epistemic states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("show", parents=[common], help="print a base and its order")
    p.add_argument("base")
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("revise", parents=[common, stepped], help="apply revision steps")
    p.add_argument("base")
    p.add_argument("--level", choices=["syn", "sem"], default="syn")
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_revise)

    p = sub.add_parser("beliefs", parents=[common, stepped], help="belief set after revision")
    p.add_argument("base")
    p.add_argument("--method", choices=["syn", "sem", "both"], default="both")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_beliefs)

    p = sub.add_parser("infer", parents=[common, stepped], help="does the base infer FORMULA")
    p.add_argument("base")
    p.add_argument("formula")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_infer)

    p = sub.add_parser("check", parents=[common], help="fixture and randomized theorem checks")
    p.add_argument("base", nargs="?")
    p.add_argument("--scope", choices=["theorem1", "theorem2", "properties", "all"],
                   default="all")
    p.add_argument("--mu", help="revision input for the fixture check (default: last atom)")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-atoms-random", type=int, default=3,
                   help="atoms in randomly generated instances")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--report-dir", help="write report.json and summary.png here")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("export", parents=[common, stepped], help="export an order as DOT")
    p.add_argument("base")
    p.add_argument("--target", choices=["base-order", "state-order", "subset-order"],
                   default="state-order")
    p.add_argument("--level", choices=["syn", "sem"], default="syn")
    p.add_argument("--format", choices=["dot", "json", "text"], default="dot")
    p.add_argument("-o", "--out")
    p.add_argument("--figure", help="also render a PNG Hasse diagram to this path")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BaseFormatError, UsageError, LogicError, GuardExceeded, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
