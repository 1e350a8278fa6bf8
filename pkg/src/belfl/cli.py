"""Command-line front end.

Exit status: 0 on success, 1 on bad input (parse errors, caps, solver budget),
2 when a checked expectation does not hold.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter
from fractions import Fraction
from typing import Optional, Sequence

from .belief import (
    MassFunction,
    ModelClass,
    NotABeliefFunction,
    belief_table,
    bel,
    mobius,
    pl,
    random_mass,
)
from .comparative import NotATotalPreorder, check_bw, compare_query, representable
from .entail import EntailmentVerdict, Theory, entails
from .formats import (
    FormatError,
    Query,
    Session,
    fmt_rational,
    load_mass,
    mass_to_records,
    parse_relation,
    parse_theory,
)
from .lpcore import SolverBudgetExceeded
from .mel import mel_consequence, mel_valid
from .pformula import axiom_suite, p_eval
from .propcore import DEFAULT_MAX_VARS, Frame, Vocabulary, VocabularyError
from .syntax import ParseError, parse_mel, parse_p, parse_prop, variables_in

INPUT_ERRORS = (
    FormatError,
    ParseError,
    VocabularyError,
    NotABeliefFunction,
    NotATotalPreorder,
    SolverBudgetExceeded,
    OSError,
    ValueError,
)


def set_text(frame: Frame, E: int) -> str:
    return "{" + "; ".join(frame.world_label(w) for w in frame.worlds_of(E)) + "}"


def mass_lines(m: MassFunction, indent: str = "  ") -> list[str]:
    return [f"{indent}m{set_text(m.frame, E)} = {fmt_rational(v)}" for E, v in m.items()]


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _vocab_for(args, texts: Sequence[str], layer: str) -> Vocabulary:
    if args.vars:
        return Vocabulary(args.vars.replace(",", " ").split(), args.max_vars)
    names: list[str] = []
    for text in texts:
        names += [v for v in variables_in(text, layer) if v not in names]
    return Vocabulary(names or ["p"], args.max_vars)


def _solver_options(args) -> dict:
    return {"node_budget": args.node_budget, "max_vars": args.max_vars}


def _class_override(args) -> Optional[ModelClass]:
    return ModelClass.parse(args.model_class) if args.model_class else None


# -- run --------------------------------------------------------------------


def _verdict_record(verdict: EntailmentVerdict, degree: Optional[Fraction]) -> dict:
    model = verdict.countermodel
    return {
        "verdict": verdict.label,
        "degree": None if degree is None else fmt_rational(degree),
        "countermodel": None if model is None else mass_to_records(model),
    }


def run_query(session: Session, theory: Theory, q: Query, options: dict) -> dict:
    if q.kind == "compare":
        verdict = compare_query(theory, q.left, q.right, q.factor, **options)
    else:
        verdict = entails(theory, q.formula, **options)
    degree = None if verdict.inconsistent else verdict.truth_degree
    record = {"query": f"{q.kind} {q.text}", "kind": q.kind, **_verdict_record(verdict, degree)}
    if q.kind == "degree" and verdict.witness is not None:
        record["witness"] = mass_to_records(verdict.witness)
    if q.expect is not None:
        got = record["degree"] if q.kind == "degree" else record["verdict"]
        record["expect"] = q.expect
        record["ok"] = got == q.expect
    record["_verdict"] = verdict
    return record


def cmd_run(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        session = parse_theory(fh.read(), args.max_vars)
    model_class = _class_override(args) or session.model_class
    theory = Theory(session.vocab, session.assertions, model_class)
    records = [run_query(session, theory, q, _solver_options(args)) for q in session.queries]
    mismatches = sum(1 for r in records if r.get("ok") is False)

    lines = [f"vars {' '.join(session.vocab.names)}; class {model_class.value}; "
             f"{len(session.assertions)} assertions"]
    for r in records:
        verdict = r.pop("_verdict")
        lines.append(f"query {r['query']}")
        if r["kind"] == "degree":
            lines.append(f"  degree = {r['degree']}" if r["degree"] else "  theory is inconsistent")
            if verdict.witness is not None:
                lines.append("  witness:")
                lines += mass_lines(verdict.witness, "    ")
        else:
            lines.append(f"  {r['verdict'].upper()}"
                         + (f" (degree = {r['degree']})" if r["degree"] else ""))
            if verdict.countermodel is not None:
                lines.append("  countermodel:")
                lines += mass_lines(verdict.countermodel, "    ")
        if "expect" in r:
            lines.append(f"  expect {r['expect']}: {'ok' if r['ok'] else 'MISMATCH'}")
    lines.append(f"queries: {len(records)}, expectation mismatches: {mismatches}")
    payload = {
        "file": args.file,
        "vars": list(session.vocab.names),
        "class": model_class.value,
        "queries": records,
        "ok": mismatches == 0,
    }
    _emit(args, payload, lines)
    return 2 if mismatches else 0


# -- belief-level subcommands -----------------------------------------------


def cmd_eval(args) -> int:
    m = load_mass(args.mass, args.max_vars)
    value = p_eval(m, parse_p(args.formula, m.frame))
    _emit(args, {"formula": args.formula, "value": fmt_rational(value)},
          [f"{args.formula} = {fmt_rational(value)}"])
    return 0


def cmd_bel_pl(args) -> int:
    m = load_mass(args.mass, args.max_vars)
    fn = bel if args.command == "bel" else pl
    value = fn(m, parse_prop(args.formula, m.frame))
    _emit(args, {"formula": args.formula, args.command: fmt_rational(value)},
          [f"{args.command}({args.formula}) = {fmt_rational(value)}"])
    return 0


def cmd_mobius(args) -> int:
    m = load_mass(args.mass, args.max_vars)
    table = belief_table(m)
    recovered = mobius(table)
    ok = recovered == m
    frame = m.frame
    lines = ["belief table:"]
    lines += [f"  Bel{set_text(frame, A)} = {fmt_rational(table[A])}" for A in range(len(table.values))]
    lines += ["recovered mass:", *mass_lines(recovered)]
    lines.append(f"round trip: {'exact' if ok else 'MISMATCH'}")
    payload = {
        "vars": list(frame.names),
        "belief": [{"worlds": [frame.assignment(w) for w in frame.worlds_of(A)],
                    "bel": fmt_rational(table[A])} for A in range(len(table.values))],
        "recovered": mass_to_records(recovered),
        "round_trip": ok,
    }
    _emit(args, payload, lines)
    return 0 if ok else 2


# -- MEL --------------------------------------------------------------------


def cmd_melvalid(args) -> int:
    vocab = _vocab_for(args, [args.formula], "mel")
    formula = parse_mel(args.formula, vocab)
    valid = mel_valid(formula, vocab)
    _emit(args, {"formula": args.formula, "valid": valid}, ["VALID" if valid else "INVALID"])
    return 0


def cmd_melcons(args) -> int:
    *premise_texts, conclusion_text = args.formulas
    vocab = _vocab_for(args, args.formulas, "mel")
    premises = [parse_mel(t, vocab) for t in premise_texts]
    result = mel_consequence(premises, parse_mel(conclusion_text, vocab), vocab)
    lines = ["ENTAILED" if result.holds else "NOT ENTAILED"]
    counter = None
    if result.countermodel is not None:
        counter = [vocab.assignment(w) for w in vocab.worlds_of(result.countermodel)]
        lines.append(f"  countermodel: {set_text(vocab, result.countermodel)}")
    _emit(args, {"holds": result.holds, "countermodel": counter}, lines)
    return 0


# -- entailment -------------------------------------------------------------


def _theory_from_args(args, extra_texts: Sequence[str], layer_extra: str) -> tuple[Theory, Vocabulary]:
    assertions_text = list(args.assertion or [])
    session = None
    if args.theory:
        with open(args.theory, encoding="utf-8") as fh:
            session = parse_theory(fh.read(), args.max_vars)
        vocab = session.vocab
    else:
        names: list[str] = []
        for t in assertions_text:
            names += [v for v in variables_in(t, "p") if v not in names]
        for t in extra_texts:
            names += [v for v in variables_in(t, layer_extra) if v not in names]
        vocab = (Vocabulary(args.vars.replace(",", " ").split(), args.max_vars) if args.vars
                 else Vocabulary(names or ["p"], args.max_vars))
    formulas = list(session.assertions) if session else []
    formulas += [parse_p(t, vocab) for t in assertions_text]
    model_class = _class_override(args) or (session.model_class if session else ModelClass.GENERAL)
    return Theory(vocab, formulas, model_class), vocab


def _report_verdict(args, verdict: EntailmentVerdict, show_degree: bool) -> int:
    degree = None if verdict.inconsistent else verdict.truth_degree
    payload = _verdict_record(verdict, degree)
    if show_degree:
        lines = [f"degree = {payload['degree']}" if degree is not None else "theory is inconsistent"]
        if verdict.witness is not None:
            payload["witness"] = mass_to_records(verdict.witness)
            lines += ["witness:", *mass_lines(verdict.witness)]
    else:
        lines = [verdict.label.upper() + (f" (degree = {payload['degree']})" if degree is not None else "")]
        if verdict.countermodel is not None:
            lines += ["countermodel:", *mass_lines(verdict.countermodel)]
    _emit(args, payload, lines)
    return 0


def cmd_entail(args) -> int:
    theory, vocab = _theory_from_args(args, [args.query], "p")
    verdict = entails(theory, parse_p(args.query, vocab), **_solver_options(args))
    return _report_verdict(args, verdict, args.command == "degree")


def cmd_compare(args) -> int:
    theory, vocab = _theory_from_args(args, [args.phi, args.psi], "prop")
    verdict = compare_query(theory, parse_prop(args.phi, vocab), parse_prop(args.psi, vocab),
                            args.factor, **_solver_options(args))
    return _report_verdict(args, verdict, False)


# -- comparative representation ---------------------------------------------


def cmd_represent(args) -> int:
    with open(args.relation, encoding="utf-8") as fh:
        rel = parse_relation(fh.read())
    report = check_bw(rel)
    witness = representable(rel)
    frame = rel.frame
    lines = []
    if witness is not None:
        lines += ["REPRESENTABLE", "witness:", *mass_lines(witness)]
    else:
        lines.append("NOT-REPRESENTABLE")
    for name, found in report.violations.items():
        for tup in found:
            tag, *sets = tup
            shown = ", ".join(set_text(frame, A) for A in sets)
            lines.append(f"  {name} {tag}" + (f": {shown}" if shown else ""))
    records = None
    if witness is not None:
        records = [{"elements": [frame.world_label(w) for w in frame.worlds_of(E)], "mass": fmt_rational(v)}
                   for E, v in witness.items()]
    payload = {
        "representable": witness is not None,
        "witness": records,
        "violations": {k: [[t[0], *[set_text(frame, A) for A in t[1:]]] for t in v]
                       for k, v in report.violations.items()},
    }
    _emit(args, payload, lines)
    return 0


# -- axioms -----------------------------------------------------------------


def cmd_axioms(args) -> int:
    vocab = Vocabulary((args.vars or "p q").replace(",", " ").split(), args.max_vars)
    rng = random.Random(args.seed)
    checked: Counter = Counter()
    failures = []
    for _ in range(args.samples):
        m = random_mass(vocab, rng)
        report = axiom_suite(m, rng, args.count)
        checked.update(scheme for scheme, _, _ in report.values)
        failures += [(scheme, text, value, m) for scheme, text, value in report.failures]
    lines = [f"{scheme}: {n} instances" for scheme, n in sorted(checked.items())]
    lines.append(f"{sum(checked.values())} instances, {len(failures)} failures")
    for scheme, text, value, m in failures[:10]:
        lines.append(f"  FAIL {scheme}: {text} = {fmt_rational(value)}")
    payload = {
        "seed": args.seed,
        "instances": dict(sorted(checked.items())),
        "failures": [{"scheme": s, "formula": t, "value": fmt_rational(v), "mass": mass_to_records(m)}
                     for s, t, v, m in failures],
    }
    _emit(args, payload, lines)
    return 2 if failures else 0


# -- entry point ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON object instead of text")
    common.add_argument("--class", dest="model_class", choices=[c.value for c in ModelClass],
                        help="restrict models to a class (overrides the theory file)")
    common.add_argument("--max-vars", type=int, default=DEFAULT_MAX_VARS)
    common.add_argument("--node-budget", type=int, default=10**6)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--vars", help="vocabulary, e.g. 'p q' (inferred when omitted)")

    parser = argparse.ArgumentParser(prog="belfl", description="Reasoning with graded belief formulas.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    add("run", cmd_run, "run the queries of a theory file").add_argument("file")
    p = add("eval", cmd_eval, "evaluate a graded formula under a mass file")
    p.add_argument("mass")
    p.add_argument("formula")
    for name in ("bel", "pl"):
        p = add(name, cmd_bel_pl, f"{name} of a classical formula under a mass file")
        p.add_argument("mass")
        p.add_argument("formula")
    add("mobius", cmd_mobius, "belief table and Möbius round trip").add_argument("mass")
    add("melvalid", cmd_melvalid, "validity of an epistemic formula").add_argument("formula")
    add("melcons", cmd_melcons, "premises... conclusion: epistemic consequence").add_argument(
        "formulas", nargs="+")
    for name in ("entail", "degree"):
        p = add(name, cmd_entail, "validity of a query" if name == "entail" else "truth degree of a query")
        p.add_argument("query")
        p.add_argument("--theory", help="theory file whose assertions are used")
        p.add_argument("--assert", dest="assertion", action="append", help="extra assertion")
    p = add("compare", cmd_compare, "is PHI at least as believed as PSI in every model")
    p.add_argument("phi")
    p.add_argument("psi")
    p.add_argument("--factor", type=int, default=1, help="compare against FACTOR times bel(PSI)")
    p.add_argument("--theory")
    p.add_argument("--assert", dest="assertion", action="append")
    add("represent", cmd_represent, "belief representability of a ranked relation").add_argument("relation")
    p = add("axioms", cmd_axioms, "evaluate sampled axiom instances under random masses")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--count", type=int, default=4, help="instances per scheme per mass")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
