"""Models of the quantic language, term evaluation, satisfaction and validity.

A model supplies ``zero``, ``one``, ``neg``, ``star`` and ``equal``.  Finite
models also enumerate their carrier; every model can draw a random element
from an explicit :class:`random.Random`, which is what :func:`falsify` uses.
"""

from __future__ import annotations

import itertools
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .terms import (
    Atom, ConditionalProposition, Equation, Neg, One, Star, Term, Zero,
    atoms_of, parse_prop, print_term,
)

DEFAULT_BUDGET = 10**8


class Model(ABC):
    name = "model"

    @abstractmethod
    def zero(self): ...

    @abstractmethod
    def one(self): ...

    @abstractmethod
    def neg(self, a): ...

    @abstractmethod
    def star(self, a, b): ...

    def equal(self, a, b) -> bool:
        return a == b

    def render(self, a) -> str:
        return str(a)

    @abstractmethod
    def sample(self, rng: random.Random): ...

    def lookup(self, name: str):
        """Parse an element from its rendered name."""
        raise KeyError(name)


class FiniteModel(Model):
    @abstractmethod
    def elements(self) -> Sequence: ...

    def sample(self, rng):
        els = self.elements()
        return els[rng.randrange(len(els))]

    def __len__(self):
        return len(self.elements())


class TableModel(FiniteModel):
    """Finite model given by Cayley tables over elements ``0..n-1``."""

    def __init__(self, names, zero: int, one: int, neg, star, name="table", aliases=None):
        n = len(names)
        self.names = tuple(names)
        self._zero = zero
        self._one = one
        self.neg_table = tuple(neg)
        self.star_table = tuple(tuple(row) for row in star)
        self.name = name
        self._elements = tuple(range(n))
        if len(self.neg_table) != n or len(self.star_table) != n or any(len(r) != n for r in self.star_table):
            raise ValueError("table shapes do not match the carrier")
        self._index = {s: i for i, s in enumerate(self.names)}
        for k, v in (aliases or {}).items():
            self._index.setdefault(k, v)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def neg(self, a):
        return self.neg_table[a]

    def star(self, a, b):
        return self.star_table[a][b]

    def elements(self):
        return self._elements

    def render(self, a):
        return self.names[a]

    def lookup(self, name):
        name = name.strip()
        if name in self._index:
            return self._index[name]
        if name == "0":
            return self._zero
        if name == "1":
            return self._one
        if name.endswith("'"):
            return self.neg(self.lookup(name[:-1]))
        raise KeyError(f"no element named {name!r} in {self.name}")

    def __repr__(self):
        return f"<TableModel {self.name} |M|={len(self.names)}>"


def tabulate(m: FiniteModel, name=None) -> TableModel:
    """Materialize any finite model as a :class:`TableModel` (same element order)."""
    if isinstance(m, TableModel):
        return m
    els = list(m.elements())
    idx = {e: i for i, e in enumerate(els)}
    neg = [idx[m.neg(a)] for a in els]
    star = [[idx[m.star(a, b)] for b in els] for a in els]
    return TableModel([m.render(a) for a in els], idx[m.zero()], idx[m.one()], neg, star,
                      name=name or m.name)


def restrict(m: FiniteModel, members, name=None) -> TableModel:
    """Sub-structure on ``members`` (must be closed under the operations)."""
    els = [e for e in m.elements() if e in set(members)]
    idx = {e: i for i, e in enumerate(els)}
    try:
        neg = [idx[m.neg(a)] for a in els]
        star = [[idx[m.star(a, b)] for b in els] for a in els]
        zero, one = idx[m.zero()], idx[m.one()]
    except KeyError as e:
        raise ValueError(f"subset is not closed under the operations: {e}") from None
    return TableModel([m.render(a) for a in els], zero, one, neg, star,
                      name=name or f"{m.name}|sub{len(els)}")


# -- evaluation --------------------------------------------------------------

class UnboundAtom(KeyError):
    def __init__(self, atom: str):
        super().__init__(atom)
        self.atom = atom

    def __str__(self):
        return f"atom {self.atom!r} is not bound by the assignment"


def eval_term(t: Term, a: Mapping[str, Any], m: Model):
    if isinstance(t, Atom):
        try:
            return a[t.name]
        except KeyError:
            raise UnboundAtom(t.name) from None
    if isinstance(t, One):
        return m.one()
    if isinstance(t, Zero):
        return m.zero()
    if isinstance(t, Neg):
        return m.neg(eval_term(t.inner, a, m))
    if isinstance(t, Star):
        return m.star(eval_term(t.left, a, m), eval_term(t.right, a, m))
    raise TypeError(f"not a term: {t!r}")


_ZERO, _ONE, _NEG, _STAR = range(4)


class Compiled:
    """A proposition flattened to straight-line code with shared subterms.

    Slots ``0..k-1`` hold the atoms (in ``atoms_of`` order).  Each equation owns
    the instructions it needs beyond those of earlier equations, so a failed
    antecedent stops evaluation early.
    """

    def __init__(self, prop: ConditionalProposition):
        self.prop = prop
        self.atoms = atoms_of(prop)
        slots: dict[Term, int] = {Atom(n): i for i, n in enumerate(self.atoms)}
        code: list[tuple[int, int, int]] = []

        def emit(t: Term) -> int:
            if t in slots:
                return slots[t]
            if isinstance(t, One):
                ins = (_ONE, 0, 0)
            elif isinstance(t, Zero):
                ins = (_ZERO, 0, 0)
            elif isinstance(t, Neg):
                ins = (_NEG, emit(t.inner), 0)
            else:
                ins = (_STAR, emit(t.left), emit(t.right))
            code.append(ins)
            slots[t] = len(self.atoms) + len(code) - 1
            return slots[t]

        self.stages = []
        for eq in (*prop.antecedents, prop.conclusion):
            start = len(code)
            lhs, rhs = emit(eq.lhs), emit(eq.rhs)
            self.stages.append((start, len(code), lhs, rhs))
        self.code = tuple(code)
        self.nslots = len(self.atoms) + len(code)

    def run(self, m: Model, values: Sequence):
        """Evaluate under atom ``values``.

        Returns ``None`` when the proposition is satisfied, else ``(lhs, rhs)``
        of the failed conclusion.
        """
        regs = list(values)
        regs.extend([None] * len(self.code))
        base = len(self.atoms)
        code = self.code
        star, neg, equal = m.star, m.neg, m.equal
        last = len(self.stages) - 1
        for k, (start, end, lhs, rhs) in enumerate(self.stages):
            for pc in range(start, end):
                op, a, b = code[pc]
                if op == _STAR:
                    regs[base + pc] = star(regs[a], regs[b])
                elif op == _NEG:
                    regs[base + pc] = neg(regs[a])
                elif op == _ONE:
                    regs[base + pc] = m.one()
                else:
                    regs[base + pc] = m.zero()
            holds = equal(regs[lhs], regs[rhs])
            if k < last:
                if not holds:
                    return None
            elif holds:
                return None
            else:
                return regs[lhs], regs[rhs]


def _compile(p) -> Compiled:
    if isinstance(p, Compiled):
        return p
    if isinstance(p, str):
        p = parse_prop(p)
    return Compiled(p)


def satisfies(p, a: Mapping[str, Any], m: Model) -> bool:
    c = _compile(p)
    try:
        values = [a[name] for name in c.atoms]
    except KeyError as e:
        raise UnboundAtom(e.args[0]) from None
    return c.run(m, values) is None


# -- validity ------------------------------------------------------------------

@dataclass
class Counterexample:
    """An assignment satisfying every antecedent but not the conclusion.

    Falsy, so ``valid_in_model(...)`` reads naturally in a boolean context.
    """

    prop: ConditionalProposition
    assignment: dict
    failed_conclusion: Equation
    lhs_value: Any
    rhs_value: Any

    def __bool__(self):
        return False

    def render(self, m: Model) -> str:
        asg = ", ".join(f"{k}={m.render(v)}" for k, v in self.assignment.items())
        eq = self.failed_conclusion
        return (f"{asg or '(no atoms)'}; {print_term(eq.lhs)} -> {m.render(self.lhs_value)}"
                f" but {print_term(eq.rhs)} -> {m.render(self.rhs_value)}")

    def to_json(self, m: Model) -> dict:
        return {
            "assignment": {k: m.render(v) for k, v in self.assignment.items()},
            "lhs": m.render(self.lhs_value),
            "rhs": m.render(self.rhs_value),
        }


class BudgetExceeded(RuntimeError):
    """Exhaustive validity would need more assignments than the budget allows."""

    def __init__(self, needed: int, budget: int):
        super().__init__(f"undecided: budget ({needed} assignments needed, budget {budget})")
        self.needed = needed
        self.budget = budget


def _search(c: Compiled, m: Model, assignments):
    for values in assignments:
        bad = c.run(m, values)
        if bad is not None:
            return Counterexample(c.prop, dict(zip(c.atoms, values)), c.prop.conclusion, *bad)
    return None


def valid_in_model(p, m: FiniteModel, budget: int = DEFAULT_BUDGET):
    """``True`` if ``p`` holds under every assignment into ``m``, else the first
    :class:`Counterexample` in odometer order (first atom most significant).

    Raises :class:`BudgetExceeded` instead of enumerating more than ``budget``
    assignments.
    """
    c = _compile(p)
    els = m.elements()
    needed = len(els) ** len(c.atoms)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    cex = _search(c, m, itertools.product(els, repeat=len(c.atoms)))
    return True if cex is None else cex


def falsify(p, m: Model, budget: int, seed) -> Counterexample | None:
    """Seeded random search for a counterexample; ``None`` is not a validity claim."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    c = _compile(p)
    rng = random.Random(seed)
    k = len(c.atoms)
    sample = m.sample

    def draws():
        for _ in range(budget):
            yield [sample(rng) for _ in range(k)]

    return _search(c, m, draws())


# -- reporting -----------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    status: str  # valid | falsified | undecided | not-found | skipped
    counterexample: Counterexample | None = None
    detail: str = ""
    seconds: float = field(default=0.0, compare=False)

    def to_line(self, m: Model) -> str:
        parts = [self.name, self.status]
        if self.status == "not-found" and self.detail:
            parts[1] = f"not-found ({self.detail})"
        elif self.counterexample is not None:
            parts.append(self.counterexample.render(m))
        elif self.detail:
            parts.append(self.detail)
        return "\t".join(parts)

    def to_json(self, m: Model) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.counterexample is not None:
            out.update(self.counterexample.to_json(m))
        if self.detail:
            out["detail"] = self.detail
        return out


def check(name: str, p, m: Model, budget: int | None = None, seed=None) -> CheckResult:
    """Exhaustive check on finite models; seeded falsification otherwise."""
    if isinstance(m, FiniteModel) and seed is None:
        try:
            res = valid_in_model(p, m, DEFAULT_BUDGET if budget is None else budget)
        except BudgetExceeded as e:
            return CheckResult(name, "undecided", detail=str(e))
        if res is True:
            return CheckResult(name, "valid")
        return CheckResult(name, "falsified", res)
    if seed is None:
        raise ValueError(f"model {m.name} is not finite: a seed is required")
    budget = 10_000 if budget is None else budget
    cex = falsify(p, m, budget, seed)
    if cex is None:
        return CheckResult(name, "not-found", detail=f"budget {budget}, seed {seed}")
    return CheckResult(name, "falsified", cex)
