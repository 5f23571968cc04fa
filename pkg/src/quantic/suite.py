"""Running the catalog against models, order-structure checks and classification."""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .catalog import AXIOM, DERIVED, LATTICE, TIER_LABELS, Property, catalog
from .lattice import LatticeModel
from .models import CheckResult, FiniteModel, Model, check, tabulate


@dataclass
class SuiteReport:
    model: str
    results: list[CheckResult]
    tiers: list[str]  # parallel to results
    sampled: bool = False
    seconds: float = 0.0

    def statuses(self) -> dict[str, str]:
        return {r.name: r.status for r in self.results}

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == "falsified"]

    def summary(self) -> list[str]:
        lines = []
        for tier in (AXIOM, DERIVED, LATTICE):
            groups: dict[str, bool] = {}
            skipped = True
            for r, t in zip(self.results, self.tiers):
                if t != tier:
                    continue
                skipped = skipped and r.status == "skipped"
                g = r.name.split(".", 1)[0]
                ok = r.status in ("valid", "not-found")
                groups[g] = groups.get(g, True) and ok
            if not groups or skipped:
                continue
            word = "not falsified" if self.sampled else "valid"
            lines.append(f"{TIER_LABELS[tier]}: {sum(groups.values())}/{len(groups)} {word}")
        return lines

    def to_text(self, m: Model, timing=True) -> str:
        out = [r.to_line(m) for r in self.results]
        out += self.summary()
        if timing:
            out.append(f"# {self.model}: {len(self.results)} entries in {self.seconds:.2f}s")
        return "\n".join(out)

    def to_json(self, m: Model) -> dict:
        # no timings: identical runs must produce identical JSON
        results = []
        for r, t in zip(self.results, self.tiers):
            d = r.to_json(m)
            d["tier"] = t
            results.append(d)
        return {"model": self.model, "results": results, "summary": self.summary()}


def run_property(entry: Property, m: Model, budget=None, seed=None) -> CheckResult:
    t0 = time.perf_counter()
    if entry.tier == LATTICE:
        if not isinstance(m, LatticeModel):
            return CheckResult(entry.name, "skipped", detail="lattice lemmas need a lattice model")
        v = entry.lattice_check(m.lattice)
        res = (CheckResult(entry.name, "valid") if v is None
               else CheckResult(entry.name, "falsified", detail=v.render(m.lattice)))
    else:
        res = check(entry.name, entry.prop, m, budget=budget, seed=seed)
    res.seconds = time.perf_counter() - t0
    return res


def _run_one(args):
    return run_property(*args)


def run_suite(m: Model, tiers=(AXIOM, DERIVED, LATTICE), budget=None, seed=None,
              jobs: int = 1, entries=None) -> SuiteReport:
    """Exhaustive on finite models; seeded falsification on samplable ones
    (or on finite ones when ``seed`` is given)."""
    entries = list(entries if entries is not None else catalog().tier(*tiers))
    sampled = not isinstance(m, FiniteModel) or seed is not None
    if sampled and seed is None:
        raise ValueError(f"model {m.name} is not finite: a seed is required")
    t0 = time.perf_counter()
    work = [(e, m, budget, seed) for e in entries]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, work))
    else:
        results = [_run_one(w) for w in work]
    return SuiteReport(m.name, results, [e.tier for e in entries], sampled,
                       time.perf_counter() - t0)


# -- structural checks ---------------------------------------------------------

@dataclass
class StructuralCheck:
    name: str
    ok: bool
    witness: str = ""


@dataclass
class StructuralReport:
    model: str
    checks: list[StructuralCheck] = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def to_text(self):
        return "\n".join(f"{c.name}\t{'ok' if c.ok else 'violated'}" + (f"\t{c.witness}" if c.witness else "")
                         for c in self.checks)

    def to_json(self):
        return {"model": self.model,
                "checks": [{"name": c.name, "ok": c.ok, "witness": c.witness} for c in self.checks]}


def order_matrix(m: FiniteModel):
    """``le[a][b]`` iff ``a * b = a`` (element indices of ``tabulate(m)``)."""
    t = tabulate(m)
    s = t.star_table
    return [[s[a][b] == a for b in t.elements()] for a in t.elements()]


def run_structural(m: FiniteModel) -> StructuralReport:
    t = tabulate(m)
    s, ng, names = t.star_table, t.neg_table, t.names
    R = range(len(names))
    le = order_matrix(t)
    rep = StructuralReport(m.name)

    def first(name, witnesses, fmt):
        w = next(witnesses, None)
        rep.checks.append(StructuralCheck(name, w is None, "" if w is None else fmt(*w)))

    first("reflexive", ((a,) for a in R if not le[a][a]),
          lambda a: f"not {names[a]} <= {names[a]}")
    first("antisymmetric", ((a, b) for a, b in itertools.product(R, R)
                            if a != b and le[a][b] and le[b][a]),
          lambda a, b: f"{names[a]} <= {names[b]} <= {names[a]}")
    first("transitive", ((a, b, c) for a, b, c in itertools.product(R, R, R)
                         if le[a][b] and le[b][c] and not le[a][c]),
          lambda a, b, c: f"{names[a]} <= {names[b]} <= {names[c]}")

    def is_glb(g, a, b):
        return le[g][a] and le[g][b] and all(le[c][g] for c in R if le[c][a] and le[c][b])

    def is_lub(u, a, b):
        return le[a][u] and le[b][u] and all(le[u][c] for c in R if le[a][c] and le[b][c])

    commuting = [(a, b) for a, b in itertools.product(R, R) if s[a][b] == s[b][a]]
    first("commuting-glb", ((a, b) for a, b in commuting if not is_glb(s[a][b], a, b)),
          lambda a, b: f"{names[a]} * {names[b]} is not the glb of {names[a]}, {names[b]}")
    first("commuting-lub", ((a, b) for a, b in commuting if not is_lub(ng[s[ng[a]][ng[b]]], a, b)),
          lambda a, b: f"!(!{names[a]} * !{names[b]}) is not the lub of {names[a]}, {names[b]}")
    first("orthomodular-lub", ((a, b) for a, b in itertools.product(R, R)
                               if le[a][b] and not is_lub(b, a, s[ng[a]][b])),
          lambda a, b: f"{names[a]} <= {names[b]} but {names[b]} is not the lub of "
                       f"{names[a]} and !{names[a]} * {names[b]}")
    return rep


# -- classification ------------------------------------------------------------

@dataclass
class ClassificationFlags:
    commutative: bool
    associative: bool
    monotone: bool
    boolean: bool
    witnesses: dict = field(default_factory=dict)  # flag -> rendered witness

    @property
    def agree(self) -> bool:
        return self.commutative == self.associative == self.monotone == self.boolean

    def as_dict(self):
        return {"commutative": self.commutative, "associative": self.associative,
                "monotone": self.monotone, "boolean": self.boolean,
                "witnesses": dict(self.witnesses)}


def classify(m: FiniteModel) -> ClassificationFlags:
    t = tabulate(m)
    s, ng, names = t.star_table, t.neg_table, t.names
    R = range(len(names))
    w = {}

    comm = next(((a, b) for a, b in itertools.product(R, R) if s[a][b] != s[b][a]), None)
    if comm:
        a, b = comm
        w["commutative"] = (f"x={names[a]}, y={names[b]}: x * y = {names[s[a][b]]}, "
                            f"y * x = {names[s[b][a]]}")
    assoc = next(((a, b, c) for a, b, c in itertools.product(R, R, R)
                  if s[s[a][b]][c] != s[a][s[b][c]]), None)
    if assoc:
        a, b, c = assoc
        w["associative"] = (f"x={names[a]}, y={names[b]}, z={names[c]}: (x * y) * z = "
                            f"{names[s[s[a][b]][c]]}, x * (y * z) = {names[s[a][s[b][c]]]}")
    mono = next(((a, b) for a, b in itertools.product(R, R) if s[s[a][b]][a] != s[a][b]), None)
    if mono:
        a, b = mono
        w["monotone"] = f"x={names[a]}, y={names[b]}: x * y = {names[s[a][b]]} is not <= x"
    # Robbins equation in the form !(!x * y) * !(!x * !y) = x
    robbins = next(((a, b) for a, b in itertools.product(R, R)
                    if s[ng[s[ng[a]][b]]][ng[s[ng[a]][ng[b]]]] != a), None)
    boolean = comm is None and assoc is None and robbins is None
    if not boolean:
        if comm or assoc:
            w["boolean"] = "not " + ("commutative" if comm else "associative")
        else:
            a, b = robbins
            w["boolean"] = f"Robbins equation fails at x={names[a]}, y={names[b]}"
    return ClassificationFlags(comm is None, assoc is None, mono is None, boolean, w)
