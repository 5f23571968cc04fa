"""Acceptance criteria, one check per criterion.

Each check prints a single ``PASS``/``FAIL`` line.  Run either through pytest
(``pytest tests/test_acceptance.py -v -s``) or directly
(``python3 tests/test_acceptance.py``).

Pinned limits: criterion 1 under 10 s, criterion 2 under 30 s, criterion 7
under 300 s.  Every other comparison is exact.
"""

import itertools
import random
import sys
import time

import pytest

from quantic import lattice
from quantic.catalog import AXIOM, DERIVED, catalog
from quantic.hilbert import as_model as hilbert, is_pfamily, pfamily_closure
from quantic.ideals import (
    all_homomorphisms, all_ideals, congruence_from_ideal, is_congruence, is_homomorphism,
    is_ideal, kernel, quotient,
)
from quantic.lattice import check_orthomodular
from quantic.models import eval_term, falsify, satisfies, valid_in_model
from quantic.subspace import RationalSubspace, intersect, project, projection_oracle, random_subspace
from quantic.suite import classify, run_structural, run_suite
from quantic.terms import (
    Atom, ConditionalProposition, Equation, Neg, One, Star, Zero, parse_prop, parse_term,
    print_prop, print_term,
)

FIVE = ["boolean:1", "boolean:2", "boolean:3", "mo:2", "mo:3"]
LIMIT_1, LIMIT_2, LIMIT_7 = 10.0, 30.0, 300.0
HILBERT_BUDGET = 10_000
HILBERT_SEEDS = (1, 2, 3, 4, 5)


def models(specs=FIVE):
    return [lattice.build(s).as_model() for s in specs]


def report(n, ok, detail, seconds):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}  [{seconds:.1f}s]"
    print(line, flush=True)
    return line


# -- criteria --------------------------------------------------------------------

def crit1():
    entries = catalog().tier(AXIOM)
    t0 = time.perf_counter()
    bad = [(m.name, e.name) for m in models() for e in entries
           if valid_in_model(e.prop, m) is not True]
    dt = time.perf_counter() - t0
    groups = len({e.group for e in entries})
    ok = not bad and dt < LIMIT_1 and groups == 11 and "F4" in {e.group for e in entries}
    return ok, f"{len(entries)} axiom-tier entries ({groups} groups) on 5 models, failures={bad}, limit {LIMIT_1:.0f}s"


def crit2():
    entries = catalog().tier(DERIVED)
    t0 = time.perf_counter()
    bad = [(m.name, e.name) for m in models() for e in entries
           if valid_in_model(e.prop, m) is not True]
    dt = time.perf_counter() - t0
    ok = not bad and dt < LIMIT_2
    return ok, f"{len(entries)} derived entries on 5 models, failures={bad}, limit {LIMIT_2:.0f}s"


def crit3():
    bad = []
    for m in models():
        rep = run_structural(m)
        bad += [(m.name, c.name, c.witness) for c in rep.checks if not c.ok]
    return not bad, f"partial order, commuting glb/lub, orthomodular lub on 5 models, violations={bad}"


def crit4():
    L = lattice.o6()
    m = L.as_model()
    v = check_orthomodular(L)
    failed = []
    for e in catalog().tier(AXIOM):
        cex = valid_in_model(e.prop, m)
        if cex is not True and not satisfies(cex.prop, cex.assignment, m):  # replay
            failed.append((e.name, cex.render(m)))
    clean = all(not run_suite(x).failures() for x in models())
    ok = v is not None and bool(failed) and clean
    witness = v.render(L) if v else "none"
    first = f"{failed[0][0]}: {failed[0][1]}" if failed else "none"
    return ok, (f"O6 {witness}; {len(failed)} axiom-tier failures, e.g. {first}; "
                f"boolean/MO clean={clean}")


def _generated_models():
    """Finite models built elsewhere in the tests: quotients and closed P-families."""
    out = []
    for spec in ["boolean:2", "boolean:3", "mo:2"]:
        m = lattice.build(spec).as_model()
        out += [quotient(m, I)[0] for I in all_ideals(m)]
    S = RationalSubspace
    for seeds in ([S(2, [(1, 0)])], [S(2, [(1, 0)]), S(2, [(3, 4)])],
                  [S(3, [(1, 0, 0)]), S(3, [(1, 1, 1)])]):
        out.append(pfamily_closure(seeds).as_model())
    return out


def crit5():
    candidates = models(FIVE + ["boolean:0", "boolean:4", "mo:1", "mo:4", "o6"]) + _generated_models()
    axioms = catalog().tier(AXIOM)
    checked, disagree = 0, []
    for m in candidates:
        if any(valid_in_model(e.prop, m) is not True for e in axioms):
            continue
        checked += 1
        f = classify(m)
        if not f.agree:
            disagree.append(m.name)
    mo2 = classify(lattice.mo(2).as_model())
    mo2_ok = (not any([mo2.commutative, mo2.associative, mo2.monotone, mo2.boolean])
              and set(mo2.witnesses) == {"commutative", "associative", "monotone", "boolean"})
    bool_ok = all(all([f.commutative, f.associative, f.monotone, f.boolean])
                  for f in (classify(lattice.boolean(k).as_model()) for k in range(5)))
    ok = not disagree and mo2_ok and bool_ok and checked >= 10
    return ok, (f"{checked} axiom-valid models, disagreements={disagree}; MO2 all-false with "
                f"witnesses={mo2_ok}; boolean:0..4 all-true={bool_ok}")


def crit6():
    p = parse_prop("x * y = y * x")
    valid = valid_in_model(p, lattice.boolean(3).as_model()) is True
    m = hilbert(2)
    missed = [s for s in range(10) if falsify(p, m, 100, s) is None]
    return valid and not missed, f"valid on boolean:3={valid}; hilbert:2 seeds 0..9 not falsified={missed}"


def crit7():
    entries = list(catalog().tier(AXIOM, DERIVED))
    t0 = time.perf_counter()
    falsified = []
    for n in (2, 3, 4):
        m = hilbert(n)
        for e in entries:
            for seed in HILBERT_SEEDS:
                cex = falsify(e.prop, m, HILBERT_BUDGET, seed)
                if cex is not None:
                    falsified.append((n, e.name, seed, cex.render(m)))
    dt = time.perf_counter() - t0
    ok = not falsified and dt < LIMIT_7
    return ok, (f"{len(entries)} entries x dims 2-4 x seeds {HILBERT_SEEDS} x budget {HILBERT_BUDGET}, "
                f"falsified={falsified}, limit {LIMIT_7:.0f}s")


def crit8():
    bad = 0
    for n in (2, 3, 4):
        rng = random.Random(8000 + n)
        full, zero = RationalSubspace.full(n), RationalSubspace.zero(n)
        for _ in range(1000):
            A, B = random_subspace(rng, n), random_subspace(rng, n)
            bad += project(A, B) != projection_oracle(A, B)
            bad += project(A, full) != A or projection_oracle(A, full) != A
            bad += project(A, zero) != zero or projection_oracle(A, zero) != zero
            sub = intersect(A, B)
            bad += project(sub, B) != sub or projection_oracle(sub, B) != sub
    return bad == 0, f"3000 random pairs in dims 2-4 plus full/zero/contained cases, mismatches={bad}"


def crit9():
    axioms = catalog().tier(AXIOM)
    problems, count = [], 0
    for spec in ["boolean:2", "boolean:3", "mo:2"]:
        m = lattice.build(spec).as_model()
        for I in all_ideals(m):
            count += 1
            R = congruence_from_ideal(m, I)
            if is_congruence(m, R) is not None:
                problems.append((spec, "congruence"))
            Q, h = quotient(m, I)  # raises if operations are not well defined
            if is_homomorphism(h) is not None:
                problems.append((spec, "homomorphism"))
            if kernel(h) != I:
                problems.append((spec, "kernel"))
            if any(valid_in_model(e.prop, Q) is not True for e in axioms):
                problems.append((spec, "axioms"))
    b2 = lattice.boolean(2).as_model()
    size = len(quotient(b2, {b2.lookup("0"), b2.lookup("a")})[0])
    ok = not problems and size == 2
    return ok, f"{count} ideals across boolean:2, boolean:3, mo:2, problems={problems}; |boolean:2/{{0,a}}|={size}"


def crit10():
    homs = []
    for spec in ["boolean:2", "boolean:3", "mo:2"]:
        m = lattice.build(spec).as_model()
        homs += [quotient(m, I)[1] for I in all_ideals(m)]
    for s, t in [("boolean:1", "boolean:1"), ("boolean:2", "boolean:1"), ("boolean:2", "boolean:2"),
                 ("boolean:3", "boolean:2"), ("boolean:1", "mo:2"), ("mo:2", "mo:2")]:
        homs += all_homomorphisms(lattice.build(s).as_model(), lattice.build(t).as_model())
    bad = [h for h in homs if is_ideal(h.source, kernel(h)) is not None]
    return not bad and len(homs) > 20, f"{len(homs)} homomorphisms, kernels that are not ideals={len(bad)}"


def random_term(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.1:
            return One()
        if r < 0.2:
            return Zero()
        return Atom(rng.choice(["x", "y", "z", "w", "v1", "long_atom"]))
    if rng.random() < 0.35:
        return Neg(random_term(rng, depth - 1))
    return Star(random_term(rng, depth - 1), random_term(rng, depth - 1))


def _depth(t):
    if isinstance(t, Neg):
        return 1 + _depth(t.inner)
    if isinstance(t, Star):
        return 1 + max(_depth(t.left), _depth(t.right))
    return 0


def crit11():
    rng = random.Random(11)
    terms = [random_term(rng, 8) for _ in range(1000)]
    props = [ConditionalProposition(
        tuple(Equation(random_term(rng, 4), random_term(rng, 4)) for _ in range(rng.randrange(4))),
        Equation(random_term(rng, 5), random_term(rng, 5))) for _ in range(200)]
    bad_t = sum(parse_term(print_term(t)) != t for t in terms)
    bad_p = sum(parse_prop(print_prop(p)) != p for p in props)
    deep = max(_depth(t) for t in terms)
    consts = all(eval_term(parse_term("0"), {}, m) == eval_term(parse_term("!1"), {}, m)
                 for m in models())
    ok = bad_t == 0 and bad_p == 0 and deep <= 8 and consts
    return ok, (f"1000 terms (max depth {deep}) mismatches={bad_t}; 200 propositions mismatches={bad_p}; "
                f"0 = !1 on 5 models={consts}")


def crit12():
    S = RationalSubspace
    fam = pfamily_closure([S(2, [(1, 0)])])
    expected = {S.zero(2), S.full(2), S(2, [(1, 0)]), S(2, [(0, 1)])}
    recheck = (S.full(2) in fam.members
               and all(S(2, [v for v in A.basis]) in fam.members for A in fam.members)
               and is_pfamily(fam.members)
               and all(projection_oracle(A, B) in fam.members
                       for A, B in itertools.product(fam.members, repeat=2)))
    empty = pfamily_closure([], dim=2)
    ok = (fam.closed and set(fam.members) == expected and recheck
          and empty.closed and set(empty.members) == {S.full(2), S.zero(2)})
    return ok, (f"span{{(1,0)}} closes to {len(fam)} members, re-check={recheck}; "
                f"empty seeds give {len(empty)} members")


CRITERIA = [crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9, crit10, crit11, crit12]


@pytest.mark.parametrize("n", range(1, 13))
def test_acceptance(n, capsys):
    t0 = time.perf_counter()
    ok, detail = CRITERIA[n - 1]()
    with capsys.disabled():
        print()
        report(n, ok, detail, time.perf_counter() - t0)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, f in enumerate(CRITERIA, start=1):
        t0 = time.perf_counter()
        ok, detail = f()
        report(i, ok, detail, time.perf_counter() - t0)
        results.append(ok)
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
