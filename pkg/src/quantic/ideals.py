"""Ideals, the relations <=_I and ~_I, congruences, quotients and homomorphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .models import FiniteModel, Model, TableModel, tabulate

MAX_ENUMERATION = 16


class NotAnIdeal(ValueError):
    def __init__(self, violation: "IdealViolation"):
        super().__init__(str(violation))
        self.violation = violation


class InconsistentQuotient(AssertionError):
    """The quotient construction contradicted itself; indicates a bug or a non-NCNAB base."""


@dataclass(frozen=True)
class IdealViolation:
    condition: int
    witness: tuple  # element names
    message: str

    def __str__(self):
        return f"condition {self.condition} fails at ({', '.join(self.witness)}): {self.message}"


def _indexed(m: FiniteModel):
    t = tabulate(m)
    els = list(m.elements())
    idx = {e: i for i, e in enumerate(els)}
    return t, els, idx


def _member_mask(idx, I):
    mask = [False] * len(idx)
    for e in I:
        if e not in idx:
            raise ValueError(f"{e!r} is not an element of the model")
        mask[idx[e]] = True
    return mask


def is_ideal(m: FiniteModel, I) -> IdealViolation | None:
    """Check the six ideal conditions exhaustively; report the first failure."""
    t, els, idx = _indexed(m)
    inI = _member_mask(idx, I)
    s, ng, nm = t.star_table, t.neg_table, t.names
    R = range(len(els))

    def le(a, b):
        return inI[s[a][ng[b]]]

    def sim(a, b):
        return le(a, b) and le(b, a)

    if not inI[t.zero()]:
        return IdealViolation(1, (nm[t.zero()],), "0 is not in I")
    for x in R:
        if inI[x]:
            for y in R:
                if not inI[s[x][y]]:
                    return IdealViolation(2, (nm[x], nm[y]), "x in I but x * y not in I")
                if not inI[s[y][x]]:
                    return IdealViolation(2, (nm[x], nm[y]), "x in I but y * x not in I")
    for x, y, z in itertools.product(R, R, R):
        if inI[s[x][y]] and inI[s[z][ng[y]]] and not inI[s[x][z]]:
            return IdealViolation(3, (nm[x], nm[y], nm[z]),
                                  "x * y and z * !y in I but x * z not in I")
    for x, y in itertools.product(R, R):
        xy, yx = s[x][y], s[y][x]
        if le(xy, x) and not sim(xy, yx):
            return IdealViolation(4, (nm[x], nm[y]), "x * y <=_I x but not x * y ~_I y * x")
    for x, y in itertools.product(R, R):
        if sim(s[x][y], s[y][x]):
            for z in R:
                if not sim(s[s[z][x]][y], s[z][s[x][y]]):
                    return IdealViolation(5, (nm[x], nm[y], nm[z]),
                                          "x * y ~_I y * x but not (z * x) * y ~_I z * (x * y)")
    for x, y, z in itertools.product(R, R, R):
        zxy, zyx = s[s[z][x]][y], s[s[z][y]][x]
        if le(zxy, x) and le(zyx, y) and not sim(zxy, zyx):
            return IdealViolation(6, (nm[x], nm[y], nm[z]),
                                  "(z * x) * y <=_I x and (z * y) * x <=_I y but they are not ~_I")
    return None


def leq_I(m: Model, I, a, b) -> bool:
    """a <=_I b iff a * !b is in I."""
    return m.star(a, m.neg(b)) in I


def sim_I(m: Model, I, a, b) -> bool:
    return leq_I(m, I, a, b) and leq_I(m, I, b, a)


def all_ideals(m: FiniteModel) -> list[frozenset]:
    """Every ideal of a small model, by filtering subsets that contain 0."""
    els = list(m.elements())
    if len(els) > MAX_ENUMERATION:
        raise ValueError(f"ideal enumeration is limited to {MAX_ENUMERATION} elements")
    zero = m.zero()
    rest = [e for e in els if e != zero]
    found = []
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            I = frozenset((zero, *combo))
            if is_ideal(m, I) is None:
                found.append(I)
    return found


# -- relations -------------------------------------------------------------------

@dataclass(frozen=True)
class BinaryRelation:
    model: FiniteModel
    matrix: tuple  # matrix[i][j] over element indices

    @classmethod
    def from_predicate(cls, m: FiniteModel, pred):
        els = list(m.elements())
        return cls(m, tuple(tuple(bool(pred(a, b)) for b in els) for a in els))

    @classmethod
    def identity(cls, m):
        return cls.from_predicate(m, lambda a, b: m.equal(a, b))

    @classmethod
    def total(cls, m):
        return cls.from_predicate(m, lambda a, b: True)

    def holds(self, a, b) -> bool:
        els = list(self.model.elements())
        return self.matrix[els.index(a)][els.index(b)]

    def classes(self) -> list[frozenset]:
        """Blocks in order of their first element (meaningful for equivalences)."""
        els = list(self.model.elements())
        seen, out = set(), []
        for i, a in enumerate(els):
            if i in seen:
                continue
            block = [j for j in range(len(els)) if self.matrix[i][j]]
            seen.update(block)
            out.append(frozenset(els[j] for j in block))
        return out


@dataclass(frozen=True)
class CongruenceViolation:
    law: str
    witness: tuple
    message: str

    def __str__(self):
        return f"{self.law} fails at ({', '.join(self.witness)}): {self.message}"


def is_congruence(m: FiniteModel, R: BinaryRelation) -> CongruenceViolation | None:
    t, els, _ = _indexed(m)
    s, ng, nm = t.star_table, t.neg_table, t.names
    M = R.matrix
    N = range(len(els))
    for a in N:
        if not M[a][a]:
            return CongruenceViolation("reflexive", (nm[a],), "a ~ a fails")
    for a, b in itertools.product(N, N):
        if M[a][b] and not M[b][a]:
            return CongruenceViolation("symmetric", (nm[a], nm[b]), "a ~ b but not b ~ a")
    for a, b, c in itertools.product(N, N, N):
        if M[a][b] and M[b][c] and not M[a][c]:
            return CongruenceViolation("transitive", (nm[a], nm[b], nm[c]), "a ~ b ~ c but not a ~ c")
    for a, b in itertools.product(N, N):
        if M[a][b] and not M[ng[a]][ng[b]]:
            return CongruenceViolation("negation", (nm[a], nm[b]), "a ~ b but not !a ~ !b")
    pairs = [(a, b) for a, b in itertools.product(N, N) if M[a][b]]
    for (x1, x2), (y1, y2) in itertools.product(pairs, pairs):
        if not M[s[x1][y1]][s[x2][y2]]:
            return CongruenceViolation("star", (nm[x1], nm[x2], nm[y1], nm[y2]),
                                       "x1 ~ x2 and y1 ~ y2 but not x1 * y1 ~ x2 * y2")
    return None


def congruence_from_ideal(m: FiniteModel, I) -> BinaryRelation:
    I = frozenset(I)
    v = is_ideal(m, I)
    if v is not None:
        raise NotAnIdeal(v)
    R = BinaryRelation.from_predicate(m, lambda a, b: sim_I(m, I, a, b))
    bad = is_congruence(m, R)
    if bad is not None:
        raise InconsistentQuotient(f"~_I is not a congruence: {bad}")
    zero_class = next(c for c in R.classes() if m.zero() in c)
    if zero_class != I:
        raise InconsistentQuotient("the class of 0 under ~_I differs from I")
    return R


# -- homomorphisms -------------------------------------------------------------

@dataclass(frozen=True)
class Homomorphism:
    source: FiniteModel
    target: Model
    mapping: dict

    def __call__(self, x):
        return self.mapping[x]


def is_homomorphism(h: Homomorphism) -> str | None:
    """``None`` when all four preservation clauses hold, else a description."""
    S, T, f = h.source, h.target, h.mapping
    r = S.render
    missing = [x for x in S.elements() if x not in f]
    if missing:
        return f"map is not total: no image for {r(missing[0])}"
    if not T.equal(f[S.zero()], T.zero()):
        return "f(0) != 0"
    if not T.equal(f[S.one()], T.one()):
        return "f(1) != 1"
    for x in S.elements():
        if not T.equal(f[S.neg(x)], T.neg(f[x])):
            return f"f(!x) != !f(x) at x={r(x)}"
    for x, y in itertools.product(S.elements(), repeat=2):
        if not T.equal(f[S.star(x, y)], T.star(f[x], f[y])):
            return f"f(x * y) != f(x) * f(y) at x={r(x)}, y={r(y)}"
    return None


def kernel(h: Homomorphism) -> frozenset:
    T = h.target
    return frozenset(x for x in h.source.elements() if T.equal(h.mapping[x], T.zero()))


def identity(m: FiniteModel) -> Homomorphism:
    return Homomorphism(m, m, {x: x for x in m.elements()})


def all_homomorphisms(S: FiniteModel, T: FiniteModel) -> list[Homomorphism]:
    """Brute force over all maps; only for tiny models."""
    src, tgt = list(S.elements()), list(T.elements())
    if len(tgt) ** len(src) > 10**6:
        raise ValueError("too many maps to enumerate")
    out = []
    for images in itertools.product(tgt, repeat=len(src)):
        h = Homomorphism(S, T, dict(zip(src, images)))
        if is_homomorphism(h) is None:
            out.append(h)
    return out


# -- quotients -------------------------------------------------------------------

class QuotientModel(TableModel):
    def __init__(self, base: FiniteModel, ideal: frozenset, classes, *table_args, **kw):
        super().__init__(*table_args, **kw)
        self.base = base
        self.ideal = ideal
        self.classes = tuple(classes)


def quotient(m: FiniteModel, I) -> tuple[QuotientModel, Homomorphism]:
    """Quotient by ~_I and the canonical surjection x -> class(x).

    Operations use each class's first member; every other member is checked
    to give the same class.
    """
    I = frozenset(I)
    R = congruence_from_ideal(m, I)
    classes = R.classes()
    cls_of = {x: i for i, c in enumerate(classes) for x in c}
    els = list(m.elements())
    order = {e: i for i, e in enumerate(els)}
    members = [sorted(c, key=order.__getitem__) for c in classes]
    reps = [c[0] for c in members]

    neg = []
    for i, c in enumerate(members):
        target = cls_of[m.neg(reps[i])]
        for x in c:
            if cls_of[m.neg(x)] != target:
                raise InconsistentQuotient(f"negation is not well defined on class {i}")
        neg.append(target)
    star = []
    for i, ci in enumerate(members):
        row = []
        for j, cj in enumerate(members):
            target = cls_of[m.star(reps[i], reps[j])]
            for x in ci:
                for y in cj:
                    if cls_of[m.star(x, y)] != target:
                        raise InconsistentQuotient(f"star is not well defined on classes ({i}, {j})")
            row.append(target)
        star.append(row)
    names = ["{" + ",".join(m.render(x) for x in c) + "}" for c in members]
    Q = QuotientModel(m, I, classes, names, cls_of[m.zero()], cls_of[m.one()], neg, star,
                      name=f"{m.name}/I")
    h = Homomorphism(m, Q, {x: cls_of[x] for x in els})
    problem = is_homomorphism(h)
    if problem is not None:
        raise InconsistentQuotient(f"quotient map is not a homomorphism: {problem}")
    if kernel(h) != I:
        raise InconsistentQuotient("kernel of the quotient map differs from I")
    return Q, h
