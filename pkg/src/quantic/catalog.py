"""The named property catalog.

Axiom and derived tiers are ``.qlp`` sources shipped in ``quantic/data``.
The lattice-lemma tier mentions meets and joins, which the quantic language
lacks, so those entries are Python checks over a :class:`FiniteOrtholattice`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache
from importlib import resources
from typing import Callable

from .lattice import FiniteOrtholattice, Violation
from .terms import ConditionalProposition, parse_qlp

AXIOM, DERIVED, LATTICE = "axiom", "derived", "lattice-lemma"
TIERS = (AXIOM, DERIVED, LATTICE)
TIER_LABELS = {AXIOM: "axioms", DERIVED: "derived", LATTICE: "lattice-lemmas"}


@dataclass(frozen=True)
class Property:
    name: str
    tier: str
    prop: ConditionalProposition | None = None
    lattice_check: Callable[[FiniteOrtholattice], Violation | None] | None = None
    statement: str = ""

    @property
    def group(self) -> str:
        """``Z.left`` and ``Z.right`` both belong to group ``Z``."""
        return self.name.split(".", 1)[0]


class PropertyCatalog(tuple):
    def __new__(cls, entries):
        entries = tuple(entries)
        names = [e.name for e in entries]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise ValueError(f"duplicate catalog names: {sorted(dup)}")
        return super().__new__(cls, entries)

    def __getitem__(self, key):
        if isinstance(key, str):
            for e in self:
                if e.name == key:
                    return e
            raise KeyError(key)
        return super().__getitem__(key)

    def tier(self, *tiers) -> "PropertyCatalog":
        return PropertyCatalog(e for e in self if e.tier in tiers)

    def names(self):
        return [e.name for e in self]


def load_qlp_resource(filename: str):
    text = resources.files("quantic").joinpath("data", filename).read_text(encoding="utf-8")
    return parse_qlp(text)


# -- lattice lemmas ------------------------------------------------------------

def _triples(L):
    return itertools.product(range(L.n), repeat=3)


def leq_coincidence(L: FiniteOrtholattice):
    for a, b in itertools.product(range(L.n), repeat=2):
        if L.leq[a][b] != (L.star_table[a][b] == a):
            return Violation("LEQ", (a, b), "lattice order and a * b = a disagree")
    return None


def orth_thesis2(L):
    s, le = L.star_table, L.leq
    for z, x, y in _triples(L):
        zx = s[z][x]
        if le[zx][y] and not le[zx][s[z][L.meet(x, y)]]:
            return Violation("OT2", (z, x, y), "z*x <= y but not z*x <= z*(x ^ y)")
    return None


def orth_thesis3(L):
    s, le = L.star_table, L.leq
    for z, x, y in _triples(L):
        if le[x][y] and s[z][x] != s[s[z][y]][x]:
            return Violation("OT3", (z, x, y), "x <= y but z*x != (z*y)*x")
    return None


def orth_thesis4(L):
    s, le = L.star_table, L.leq
    for z, x, y in _triples(L):
        zxy = s[s[z][x]][y]
        if le[zxy][x] and zxy != s[z][L.meet(x, y)]:
            return Violation("OT4", (z, x, y), "(z*x)*y <= x but (z*x)*y != z*(x ^ y)")
    return None


def orth_thesis5(L):
    s, le, o = L.star_table, L.leq, L.ortho
    for x, y, z in _triples(L):
        if le[o[z]][x] and le[o[z]][y]:
            if L.meet(L.join(x, y), z) != L.join(L.meet(x, z), L.meet(y, z)):
                return Violation("OT5", (x, y, z), "z' <= x, y but (x v y) ^ z is not distributive")
            if s[L.join(x, y)][z] != L.join(s[x][z], s[y][z]):
                return Violation("OT5", (x, y, z), "z' <= x, y but (x v y)*z != (x*z) v (y*z)")
    return None


def orth_thesis6(L):
    o = L.ortho
    for x, y in itertools.product(range(L.n), repeat=2):
        lhs = L.meet(L.join(x, y), L.join(x, o[y]))
        rhs = L.join(x, L.meet(L.join(x, o[y]), y))
        if lhs != rhs:
            return Violation("OT6", (x, y), "(x v y) ^ (x v y') != x v ((x v y') ^ y)")
    return None


_LATTICE_LEMMAS = [
    ("LEQ", leq_coincidence, "x <= y in the lattice iff x * y = x"),
    ("OT2", orth_thesis2, "if z * x <= y then z * x <= z * (x ^ y)"),
    ("OT3", orth_thesis3, "if x <= y then z * x = (z * y) * x"),
    ("OT4", orth_thesis4, "if (z * x) * y <= x then (z * x) * y = z * (x ^ y)"),
    ("OT5", orth_thesis5, "if z' <= x and z' <= y then (x v y) * z = (x * z) v (y * z)"),
    ("OT6", orth_thesis6, "(x v y) ^ (x v y') = x v ((x v y') ^ y)"),
]


@cache
def catalog() -> PropertyCatalog:
    entries = []
    for tier, filename in ((AXIOM, "axioms.qlp"), (DERIVED, "derived.qlp")):
        for name, prop in load_qlp_resource(filename):
            entries.append(Property(name, tier, prop=prop, statement=str(prop)))
    for name, fn, text in _LATTICE_LEMMAS:
        entries.append(Property(name, LATTICE, lattice_check=fn, statement=text))
    return PropertyCatalog(entries)
