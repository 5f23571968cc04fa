"""Finite ortholattices with Finch's star ``a * b = (a v b') ^ b``."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path

from .models import FiniteModel, TableModel


class LatticeError(ValueError):
    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple  # element indices
    message: str

    def render(self, L: "FiniteOrtholattice") -> str:
        names = ", ".join(L.names[i] for i in self.witness)
        return f"{self.law} fails at ({names}): {self.message}"


class FiniteOrtholattice:
    """Explicit finite lattice with an orthocomplement.

    ``leq[i][j]`` is ``i <= j``; ``ortho`` is a permutation.  The constructor
    checks the partial order, existence of unique meets/joins and that
    ``ortho`` is an involution.  Complement laws are :func:`check_ortholattice`'s
    job; :func:`build` and :func:`from_json` run it and reject failures.
    """

    def __init__(self, names, leq, ortho, name="lattice", aliases=None):
        n = len(names)
        if n == 0:
            raise LatticeError("nonempty", "a lattice needs at least one element")
        if len(set(names)) != n:
            raise LatticeError("names", "element names must be distinct")
        self.n = n
        self.names = tuple(str(s) for s in names)
        self.name = name
        self.aliases = dict(aliases or {})
        self.leq = tuple(tuple(bool(x) for x in row) for row in leq)
        self.ortho = tuple(int(i) for i in ortho)
        if len(self.leq) != n or any(len(r) != n for r in self.leq):
            raise LatticeError("shape", f"leq must be {n}x{n}")
        if len(self.ortho) != n or sorted(self.ortho) != list(range(n)):
            raise LatticeError("ortho-permutation", "ortho must be a permutation of the element indices")
        le = self.leq
        R = range(n)
        for a in R:
            if not le[a][a]:
                raise LatticeError("reflexive", f"{self.names[a]} <= {self.names[a]} is missing")
        for a, b in itertools.product(R, R):
            if a != b and le[a][b] and le[b][a]:
                raise LatticeError("antisymmetric", f"{self.names[a]} and {self.names[b]} are mutually below each other")
        for a, b, c in itertools.product(R, R, R):
            if le[a][b] and le[b][c] and not le[a][c]:
                raise LatticeError("transitive", f"{self.names[a]} <= {self.names[b]} <= {self.names[c]} but not {self.names[a]} <= {self.names[c]}")
        self.meet_table = self._bounds(lambda x, y: le[x][y], "meet")
        self.join_table = self._bounds(lambda x, y: le[y][x], "join")
        self.bottom = next(a for a in R if all(le[a][b] for b in R))
        self.top = next(a for a in R if all(le[b][a] for b in R))
        for a in R:
            if self.ortho[self.ortho[a]] != a:
                raise LatticeError("ortho-involution", f"{self.names[a]}'' != {self.names[a]}")
        self.star_table = tuple(
            tuple(self.meet_table[self.join_table[a][self.ortho[b]]][b] for b in R) for a in R
        )

    def _bounds(self, below, what):
        # greatest common lower bound (meet) or least common upper bound (join)
        n = self.n
        table = []
        for a in range(n):
            row = []
            for b in range(n):
                common = [c for c in range(n) if below(c, a) and below(c, b)]
                best = [c for c in common if all(below(d, c) for d in common)]
                if len(best) != 1:
                    raise LatticeError("lattice", f"{self.names[a]} and {self.names[b]} have no unique {what}")
                row.append(best[0])
            table.append(tuple(row))
        return tuple(table)

    def meet(self, a, b):
        return self.meet_table[a][b]

    def join(self, a, b):
        return self.join_table[a][b]

    def index(self, name: str) -> int:
        return self.as_model().lookup(name)

    def as_model(self) -> "LatticeModel":
        return LatticeModel(self)

    def __repr__(self):
        return f"<FiniteOrtholattice {self.name} n={self.n}>"


class LatticeModel(TableModel):
    """A lattice viewed as a model: 0 = bottom, 1 = top, neg = ', star = Finch."""

    def __init__(self, L: FiniteOrtholattice):
        super().__init__(L.names, L.bottom, L.top, L.ortho, L.star_table, name=L.name,
                         aliases=L.aliases)
        self.lattice = L

    def __reduce__(self):
        return (LatticeModel, (self.lattice,))


def finch_star(L: FiniteOrtholattice, a: int, b: int) -> int:
    return L.meet(L.join(a, L.ortho[b]), b)


# -- structural checks -------------------------------------------------------

def check_ortholattice(L: FiniteOrtholattice) -> Violation | None:
    R = range(L.n)
    o = L.ortho
    for a in R:
        if o[o[a]] != a:
            return Violation("involution", (a,), "a'' != a")
        if L.meet(a, o[a]) != L.bottom:
            return Violation("complement-meet", (a,), "a ^ a' != 0")
        if L.join(a, o[a]) != L.top:
            return Violation("complement-join", (a,), "a v a' != 1")
    for a, b in itertools.product(R, R):
        if L.leq[a][b] and not L.leq[o[b]][o[a]]:
            return Violation("order-reversing", (a, b), "a <= b but not b' <= a'")
    return None


def check_orthomodular(L: FiniteOrtholattice) -> Violation | None:
    """a <= b implies b = a v (a' ^ b)."""
    for a, b in itertools.product(range(L.n), repeat=2):
        if L.leq[a][b] and L.join(a, L.meet(L.ortho[a], b)) != b:
            return Violation("orthomodular", (a, b), "a <= b but a v (a' ^ b) != b")
    return None


def check_modular(L: FiniteOrtholattice) -> Violation | None:
    """a <= b implies a v (c ^ b) = (a v c) ^ b."""
    for a, b, c in itertools.product(range(L.n), repeat=3):
        if L.leq[a][b] and L.join(a, L.meet(c, b)) != L.meet(L.join(a, c), b):
            return Violation("modular", (a, b, c), "a <= b but a v (c ^ b) != (a v c) ^ b")
    return None


def _validated(L: FiniteOrtholattice) -> FiniteOrtholattice:
    v = check_ortholattice(L)
    if v is not None:
        raise LatticeError(v.law, v.render(L))
    return L


# -- builders ----------------------------------------------------------------

def boolean(k: int) -> FiniteOrtholattice:
    """Subsets of {1..k}; element ``i`` is the subset with bitmask ``i``.

    Names are bitstrings with atom 1 first (``"10"`` is {1} when k = 2).
    Letters ``a, b, ...`` alias the atoms.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    n = 1 << k
    if k == 0:
        names = ["0"]
    else:
        names = ["".join("1" if i >> j & 1 else "0" for j in range(k)) for i in range(n)]
    leq = [[(i & j) == i for j in range(n)] for i in range(n)]
    ortho = [(n - 1) ^ i for i in range(n)]
    aliases = {chr(ord("a") + j): 1 << j for j in range(min(k, 26))}
    return _validated(FiniteOrtholattice(names, leq, ortho, name=f"boolean:{k}", aliases=aliases))


def mo(k: int) -> FiniteOrtholattice:
    """The horizontal sum of k four-element Boolean blocks: 0 < a_i, a_i' < 1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    letters = [chr(ord("a") + j) if k <= 26 else f"a{j + 1}" for j in range(k)]
    names = ["0"]
    for s in letters:
        names += [s, s + "'"]
    names.append("1")
    n = len(names)
    top = n - 1
    leq = [[i == j or i == 0 or j == top for j in range(n)] for i in range(n)]
    ortho = [top] + [i + 1 if i % 2 else i - 1 for i in range(1, top)] + [0]
    return _validated(FiniteOrtholattice(names, leq, ortho, name=f"mo:{k}"))


def o6() -> FiniteOrtholattice:
    """Benzene ring: 0 < x < y' < 1 and 0 < y < x' < 1.  Not orthomodular."""
    names = ["0", "x", "y", "x'", "y'", "1"]
    below = {("x", "y'"), ("y", "x'")}
    leq = [[a == b or a == "0" or b == "1" or (a, b) in below for b in names] for a in names]
    ortho = [5, 3, 4, 1, 2, 0]
    return _validated(FiniteOrtholattice(names, leq, ortho, name="o6"))


def from_json(source, name=None) -> FiniteOrtholattice:
    """Load ``{"names": [...], "leq": [[0/1, ...], ...], "ortho": [...]}``.

    ``source`` is a path or an already-decoded dict.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise LatticeError("json", str(e)) from None
        name = name or f"file:{path}"
    else:
        data = source
    if not isinstance(data, dict) or not {"names", "leq", "ortho"} <= data.keys():
        raise LatticeError("json", 'expected an object with "names", "leq" and "ortho"')
    names, leq, ortho = data["names"], data["leq"], data["ortho"]
    if not isinstance(names, list) or not isinstance(leq, list) or not isinstance(ortho, list):
        raise LatticeError("json", '"names", "leq" and "ortho" must be arrays')
    if any(not isinstance(row, list) or any(x not in (0, 1, True, False) for x in row) for row in leq):
        raise LatticeError("json", '"leq" rows must be arrays of 0/1')
    if any(not isinstance(i, int) or not 0 <= i < len(names) for i in ortho):
        raise LatticeError("ortho-permutation", '"ortho" entries must be element indices')
    return _validated(FiniteOrtholattice(names, leq, ortho, name=name or "custom"))


def to_json(L: FiniteOrtholattice) -> dict:
    return {"names": list(L.names), "leq": [[int(x) for x in row] for row in L.leq],
            "ortho": list(L.ortho)}


def build(spec: str) -> FiniteOrtholattice:
    """``boolean:K``, ``mo:K``, ``o6`` or ``file:PATH``."""
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "o6" and not arg:
        return o6()
    if kind == "file" and arg:
        return from_json(arg)
    if kind in ("boolean", "mo"):
        try:
            k = int(arg)
        except ValueError:
            raise ValueError(f"bad lattice spec {spec!r}: {kind}:K needs an integer K") from None
        return boolean(k) if kind == "boolean" else mo(k)
    raise ValueError(f"unknown lattice spec {spec!r}")


# -- subalgebras ---------------------------------------------------------------

def generated_subalgebra(m: FiniteModel, X) -> frozenset:
    """Least superset of X and {0, 1} closed under neg and star."""
    members = set(X) | {m.zero(), m.one()}
    frontier = list(members)
    while frontier:
        new = set()
        for a in frontier:
            new.add(m.neg(a))
        snapshot = list(members)
        for a in frontier:
            for b in snapshot:
                new.add(m.star(a, b))
                new.add(m.star(b, a))
        frontier = [e for e in new if e not in members]
        members.update(frontier)
    return frozenset(members)
