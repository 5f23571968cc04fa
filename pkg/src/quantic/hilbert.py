"""Hilbert-space semantics over Q^n: 1 is the whole space, neg is the
orthogonal complement and ``x * y`` projects x onto y."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .models import Model, TableModel
from .subspace import RationalSubspace, complement, parse_span, project, random_subspace


@dataclass(frozen=True)
class HilbertModelSpec:
    dim: int
    bound: int = 5

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("Hilbert model dimension must be >= 1")
        if self.bound < 1:
            raise ValueError("coordinate bound must be >= 1")

    @classmethod
    def parse(cls, text: str) -> "HilbertModelSpec":
        m = re.fullmatch(r"\s*hilbert:(\d+)(?::c=(\d+))?\s*", text)
        if not m:
            raise ValueError(f"bad Hilbert model spec {text!r} (expected hilbert:N[:c=C])")
        return cls(int(m.group(1)), int(m.group(2) or 5))

    def __str__(self):
        return f"hilbert:{self.dim}" + ("" if self.bound == 5 else f":c={self.bound}")


class HilbertModel(Model):
    """All subspaces of Q^n.  Infinite carrier: only samplable."""

    def __init__(self, spec: HilbertModelSpec):
        self.spec = spec
        self.n = spec.dim
        self.name = str(spec)
        self._zero = RationalSubspace.zero(self.n)
        self._one = RationalSubspace.full(self.n)

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def neg(self, a):
        return complement(a)

    def star(self, a, b):
        return project(a, b)

    def sample(self, rng):
        return random_subspace(rng, self.n, self.spec.bound)

    def lookup(self, name):
        return parse_span(name, self.n)

    def __reduce__(self):
        return (HilbertModel, (self.spec,))


def as_model(spec) -> HilbertModel:
    if isinstance(spec, str):
        spec = HilbertModelSpec.parse(spec)
    elif isinstance(spec, int):
        spec = HilbertModelSpec(spec)
    return HilbertModel(spec)


@dataclass(frozen=True)
class PFamily:
    members: tuple  # sorted by (dimension, canonical rows)
    closed: bool
    dim: int

    def __len__(self):
        return len(self.members)

    def __contains__(self, A):
        return A in self.members

    def as_model(self, name=None) -> TableModel:
        if not self.closed:
            raise ValueError("family is not closed under complement and projection")
        idx = {A: i for i, A in enumerate(self.members)}
        els = self.members
        neg = [idx[complement(A)] for A in els]
        star = [[idx[project(A, B)] for B in els] for A in els]
        return TableModel([str(A) for A in els], idx[RationalSubspace.zero(self.dim)],
                          idx[RationalSubspace.full(self.dim)], neg, star,
                          name=name or f"pfamily:{self.dim}:{len(els)}")


def pfamily_closure(seeds, budget: int = 256, dim: int | None = None) -> PFamily:
    """Close ``seeds`` plus the whole space under complement and pairwise projection.

    Stops with ``closed=False`` as soon as the family would exceed ``budget``
    members.
    """
    seeds = list(seeds)
    dims = {A.n for A in seeds}
    if dim is not None:
        dims.add(dim)
    if len(dims) != 1:
        raise ValueError("seeds must share one ambient dimension (pass dim= for an empty seed set)")
    n = dims.pop()
    members = set(seeds) | {RationalSubspace.full(n)}
    frontier = list(members)
    closed = True
    while frontier and closed:
        new = set()
        snapshot = list(members)
        for A in frontier:
            new.add(complement(A))
            for B in snapshot:
                new.add(project(A, B))
                new.add(project(B, A))
        frontier = [A for A in new if A not in members]
        if len(members) + len(frontier) > budget:
            closed = False
            frontier = sorted(frontier)[: max(0, budget - len(members))]
        members.update(frontier)
    return PFamily(tuple(sorted(members)), closed, n)


def is_pfamily(family) -> bool:
    """Direct re-check of the three closure conditions."""
    members = set(family)
    if not members:
        return False
    n = next(iter(members)).n
    if RationalSubspace.full(n) not in members:
        return False
    if any(complement(A) not in members for A in members):
        return False
    return all(project(A, B) in members for A, B in itertools.product(members, repeat=2))
