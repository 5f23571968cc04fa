"""Command-line front end.

Exit codes: 0 success / all valid, 1 something falsified or violated,
2 undecided within budget, 64 usage, model-spec or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import lattice
from .catalog import AXIOM, DERIVED, LATTICE, Property, catalog
from .hilbert import HilbertModelSpec, as_model as hilbert_model
from .ideals import NotAnIdeal, all_ideals, is_ideal, kernel, is_homomorphism, quotient
from .lattice import LatticeError
from .models import FiniteModel, Model, tabulate
from .suite import classify, run_structural, run_suite
from .terms import ParseError, parse_prop, parse_qlp

EX_OK, EX_FAIL, EX_UNDECIDED, EX_USAGE = 0, 1, 2, 64

_TIER_ALIASES = {
    "axioms": (AXIOM,), "axiom": (AXIOM,), "derived": (DERIVED,),
    "lattice": (LATTICE,), "lattice-lemmas": (LATTICE,), "lattice-lemma": (LATTICE,),
    "all": (AXIOM, DERIVED, LATTICE),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def load_model(spec: str) -> Model:
    try:
        if spec.strip().lower().startswith("hilbert"):
            return hilbert_model(HilbertModelSpec.parse(spec))
        return lattice.build(spec).as_model()
    except (LatticeError, ValueError, OSError) as e:
        raise UsageError(f"bad model spec {spec!r}: {e}") from None


def load_entries(props: list[str], sources: list[str]) -> list[Property]:
    entries = []
    for i, text in enumerate(props, start=1):
        try:
            p = parse_prop(text)
        except ParseError as e:
            raise UsageError(f"--prop {text!r}: {e}") from None
        entries.append(Property(text.strip() if len(props) == 1 else f"prop{i}", "inline",
                                prop=p, statement=str(p)))
    cat = catalog()
    for src in sources:
        key = src.strip()
        if key.lower() in _TIER_ALIASES:
            entries.extend(cat.tier(*_TIER_ALIASES[key.lower()]))
            continue
        group = [e for e in cat if e.name == key or e.group == key]
        if group:
            entries.extend(group)
            continue
        path = Path(key)
        if path.is_file():
            try:
                parsed = parse_qlp(path.read_text(encoding="utf-8"))
            except ParseError as e:
                raise UsageError(f"{path}: {e}") from None
            entries.extend(Property(name, "file", prop=p, statement=str(p)) for name, p in parsed)
            continue
        raise UsageError(f"--props {src!r}: not a tier, catalog name or .qlp file")
    if not entries:
        raise UsageError("no propositions given (use --prop or --props)")
    return entries


def _exit_for(statuses) -> int:
    statuses = list(statuses)
    if "falsified" in statuses:
        return EX_FAIL
    if "undecided" in statuses:
        return EX_UNDECIDED
    return EX_OK


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        print(text)


def _report(args, m, entries, budget, seed) -> int:
    rep = run_suite(m, budget=budget, seed=seed, jobs=args.jobs, entries=entries)
    _emit(args, rep.to_text(m, timing=False), rep.to_json(m))
    return _exit_for(r.status for r in rep.results)


def cmd_check(args) -> int:
    m = load_model(args.model)
    if not isinstance(m, FiniteModel):
        raise UsageError(f"check needs a finite model; use falsify for {args.model}")
    entries = load_entries(args.prop, args.props)
    return _report(args, m, entries, args.budget, None)


def cmd_falsify(args) -> int:
    if args.seed is None:
        raise UsageError("falsify needs --seed (runs must be replayable)")
    m = load_model(args.model)
    entries = [e for e in load_entries(args.prop, args.props) if e.prop is not None]
    budget = args.budget or 10_000
    rep = run_suite(m, budget=budget, seed=args.seed, entries=entries, jobs=args.jobs)
    _emit(args, rep.to_text(m, timing=False), rep.to_json(m))
    return _exit_for(r.status for r in rep.results)


def cmd_suite(args) -> int:
    m = load_model(args.model)
    tiers = []
    for t in args.tiers.split(","):
        if t.strip().lower() not in _TIER_ALIASES:
            raise UsageError(f"unknown tier {t!r}")
        tiers.extend(x for x in _TIER_ALIASES[t.strip().lower()] if x not in tiers)
    sampled = not isinstance(m, FiniteModel)
    if sampled and args.seed is None:
        raise UsageError(f"{args.model} is not finite: --seed is required")
    if sampled:
        tiers = [t for t in tiers if t != LATTICE]
    rep = run_suite(m, tiers=tiers, budget=args.budget, seed=args.seed if sampled else None,
                    jobs=args.jobs)
    _emit(args, rep.to_text(m), rep.to_json(m))
    return _exit_for(r.status for r in rep.results)


def _finite(args) -> FiniteModel:
    m = load_model(args.model)
    if not isinstance(m, FiniteModel):
        raise UsageError(f"{args.cmd} needs a finite model")
    return m


def cmd_structural(args) -> int:
    m = _finite(args)
    rep = run_structural(m)
    _emit(args, rep.to_text(), rep.to_json())
    return EX_OK if rep.ok else EX_FAIL


def cmd_classify(args) -> int:
    m = _finite(args)
    flags = classify(m)
    lines = []
    for k in ("commutative", "associative", "monotone", "boolean"):
        v = getattr(flags, k)
        lines.append(f"{k}\t{str(v).lower()}" + ("" if v else f"\t{flags.witnesses[k]}"))
    _emit(args, "\n".join(lines), {"model": m.name, **flags.as_dict()})
    return EX_OK


def _table_lines(t) -> list[str]:
    width = max(len(s) for s in t.names)
    pad = lambda s: s.rjust(width)
    lines = [" " * width + " | " + " ".join(pad(s) for s in t.names) + "    (row * column)"]
    lines.append("-" * len(lines[0]))
    for a in t.elements():
        lines.append(pad(t.names[a]) + " | " + " ".join(pad(t.names[t.star(a, b)]) for b in t.elements()))
    lines.append("")
    lines.append("neg: " + ", ".join(f"{t.names[a]} -> {t.names[t.neg(a)]}" for a in t.elements()))
    return lines


def _table_json(t) -> dict:
    return {"elements": list(t.names),
            "star": [[t.names[t.star(a, b)] for b in t.elements()] for a in t.elements()],
            "neg": [t.names[t.neg(a)] for a in t.elements()]}


def cmd_star_table(args) -> int:
    t = tabulate(_finite(args))
    _emit(args, "\n".join(_table_lines(t)), {"model": t.name, **_table_json(t)})
    return EX_OK


def cmd_ideals(args) -> int:
    m = _finite(args)
    try:
        found = all_ideals(m)
    except ValueError as e:
        raise UsageError(str(e)) from None
    order = {e: i for i, e in enumerate(m.elements())}
    rendered = ["{" + ",".join(m.render(x) for x in sorted(I, key=order.__getitem__)) + "}"
                for I in found]
    _emit(args, "\n".join(rendered) + f"\n# {len(found)} ideals", {"model": m.name, "ideals": rendered})
    return EX_OK


def cmd_quotient(args) -> int:
    m = _finite(args)
    try:
        I = frozenset(m.lookup(s) for s in args.ideal.split(",") if s.strip())
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None
    v = is_ideal(m, I)
    if v is not None:
        msg = f"not an ideal: {v}"
        _emit(args, msg, {"model": m.name, "ideal": False, "violation": str(v)})
        return EX_FAIL
    try:
        Q, h = quotient(m, I)
    except NotAnIdeal as e:  # pragma: no cover - guarded above
        raise UsageError(str(e)) from None
    hom = is_homomorphism(h)
    ker = kernel(h)
    lines = ["ideal\tok", "congruence\tok", f"homomorphism\t{'ok' if hom is None else hom}",
             f"kernel = I\t{'ok' if ker == I else 'MISMATCH'}", "", "classes:"]
    lines += [f"  {Q.names[i]}" for i in Q.elements()]
    lines += ["", "quotient star table:"] + _table_lines(Q)
    data = {"model": m.name, "ideal": True, "classes": list(Q.names),
            "homomorphism": hom is None, "kernel_is_ideal_set": ker == I, **_table_json(Q)}
    _emit(args, "\n".join(lines), data)
    return EX_OK if hom is None and ker == I else EX_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quantic", description="Model checking for quantic propositions.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--model", required=True,
                        help="boolean:K | mo:K | o6 | file:PATH | hilbert:N[:c=C]")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    def props(sp):
        sp.add_argument("--prop", action="append", default=[], help="inline proposition (repeatable)")
        sp.add_argument("--props", action="append", default=[],
                        help="tier (axioms, derived, lattice, all), catalog name, or .qlp file")
        sp.add_argument("--budget", type=int)
        sp.add_argument("--jobs", type=int, default=1)

    sp = common(sub.add_parser("check", help="exhaustive validity on a finite model"))
    props(sp)
    sp.set_defaults(func=cmd_check)

    sp = common(sub.add_parser("falsify", help="seeded counterexample search"))
    props(sp)
    sp.add_argument("--seed", type=int)
    sp.set_defaults(func=cmd_falsify)

    sp = common(sub.add_parser("suite", help="run the property catalog"))
    sp.add_argument("--tiers", default="all", help="comma list of axioms, derived, lattice, all")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_suite)

    for name, func, text in (("structural", cmd_structural, "order and glb/lub checks"),
                             ("classify", cmd_classify, "commutative/associative/monotone/boolean"),
                             ("star-table", cmd_star_table, "Cayley table of *"),
                             ("ideals", cmd_ideals, "list all ideals of a small model")):
        common(sub.add_parser(name, help=text)).set_defaults(func=func)

    sp = common(sub.add_parser("quotient", help="quotient by an ideal"))
    sp.add_argument("--ideal", required=True, help="comma-separated element names")
    sp.set_defaults(func=cmd_quotient)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"quantic {args.cmd}: {e}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
