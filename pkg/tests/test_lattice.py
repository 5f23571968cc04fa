import itertools
import json
import pickle

import pytest

from quantic import lattice
from quantic.catalog import catalog
from quantic.lattice import (
    FiniteOrtholattice, LatticeError, check_modular, check_ortholattice, check_orthomodular,
    finch_star, generated_subalgebra,
)
from quantic.models import valid_in_model
from quantic.terms import parse_prop

FIVE = ["boolean:1", "boolean:2", "boolean:3", "mo:2", "mo:3"]


def brute_star(L, a, b):
    """(a v b') ^ b straight from the order relation."""
    R = range(L.n)
    le = L.leq
    bo = L.ortho[b]
    ub = [c for c in R if le[a][c] and le[bo][c]]
    j = next(c for c in ub if all(le[c][d] for d in ub))
    lb = [c for c in R if le[c][j] and le[c][b]]
    return next(c for c in lb if all(le[d][c] for d in lb))


@pytest.mark.parametrize("spec", FIVE + ["o6", "boolean:0", "mo:1"])
def test_star_table_matches_brute_force(spec):
    L = lattice.build(spec) if spec != "boolean:0" else lattice.boolean(0)
    for a, b in itertools.product(range(L.n), repeat=2):
        assert finch_star(L, a, b) == brute_star(L, a, b) == L.star_table[a][b]


def test_mo2_star_values():
    L = lattice.mo(2)
    i = L.index
    assert L.star_table[i("a")][i("b")] == i("b")
    assert L.star_table[i("a")][i("a'")] == i("0")
    assert L.star_table[i("a")][i("1")] == i("a")
    assert L.star_table[i("1")][i("a")] == i("a")


def test_sizes_and_names():
    assert lattice.boolean(3).n == 8
    assert lattice.mo(3).n == 8
    assert lattice.mo(2).names == ("0", "a", "a'", "b", "b'", "1")
    assert lattice.boolean(2).names == ("00", "10", "01", "11")
    assert lattice.o6().n == 6


@pytest.mark.parametrize("spec", FIVE)
def test_shipped_models_are_orthomodular(spec):
    L = lattice.build(spec)
    assert check_ortholattice(L) is None
    assert check_orthomodular(L) is None


def test_mo_lattices_are_modular():
    # MO(k) is modular for every k; boolean algebras are distributive
    assert check_modular(lattice.mo(2)) is None
    assert check_modular(lattice.mo(3)) is None


def test_o6_orthomodular_witness():
    L = lattice.o6()
    assert check_ortholattice(L) is None
    v = check_orthomodular(L)
    assert v is not None
    assert tuple(L.names[i] for i in v.witness) == ("x", "y'")
    a, b = v.witness
    assert L.leq[a][b] and L.join(a, L.meet(L.ortho[a], b)) != b
    assert "x, y'" in v.render(L)
    assert check_modular(L) is not None


def test_lattice_errors():
    with pytest.raises(LatticeError) as e:
        FiniteOrtholattice(["0", "1"], [[1, 1], [1, 1]], [1, 0])
    assert e.value.invariant == "antisymmetric"
    with pytest.raises(LatticeError) as e:
        FiniteOrtholattice(["0", "1"], [[1, 1], [0, 1]], [0, 0])
    assert e.value.invariant == "ortho-permutation"
    # two incomparable maximal elements: no join
    with pytest.raises(LatticeError) as e:
        FiniteOrtholattice(["0", "a", "b"], [[1, 1, 1], [0, 1, 0], [0, 0, 1]], [0, 2, 1])
    assert e.value.invariant == "lattice"


def test_non_ortho_complement_rejected_by_from_json():
    # chain 0 < m < 1 with m' = m
    data = {"names": ["0", "m", "1"], "leq": [[1, 1, 1], [0, 1, 1], [0, 0, 1]], "ortho": [2, 1, 0]}
    with pytest.raises(LatticeError) as e:
        lattice.from_json(data)
    assert e.value.invariant == "complement-meet"


def test_json_round_trip(tmp_path):
    L = lattice.mo(2)
    path = tmp_path / "mo2.json"
    path.write_text(json.dumps(lattice.to_json(L)))
    L2 = lattice.build(f"file:{path}")
    assert L2.names == L.names and L2.star_table == L.star_table


@pytest.mark.parametrize("data", [
    [], {"names": ["0"]}, {"names": "0", "leq": [[1]], "ortho": [0]},
    {"names": ["0"], "leq": [[2]], "ortho": [0]}, {"names": ["0"], "leq": [[1]], "ortho": [5]},
])
def test_json_shape_errors(data):
    with pytest.raises(LatticeError):
        lattice.from_json(data)


def test_bad_json_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(LatticeError):
        lattice.from_json(p)


@pytest.mark.parametrize("spec", ["boolean", "boolean:x", "mo:-1", "hexagon", "file:"])
def test_bad_specs(spec):
    with pytest.raises(ValueError):
        lattice.build(spec)


def test_model_pickles():
    m = lattice.mo(2).as_model()
    m2 = pickle.loads(pickle.dumps(m))
    assert m2.star_table == m.star_table and m2.lattice.names == m.lattice.names


@pytest.mark.parametrize("spec", FIVE)
def test_order_coincides_with_star(spec):
    L = lattice.build(spec)
    for a, b in itertools.product(range(L.n), repeat=2):
        assert L.leq[a][b] == (L.star_table[a][b] == a)


@pytest.mark.parametrize("spec", FIVE)
def test_lattice_lemmas_hold(spec):
    L = lattice.build(spec)
    for e in catalog().tier("lattice-lemma"):
        assert e.lattice_check(L) is None, e.name


def test_o6_fails_some_lattice_lemma():
    L = lattice.o6()
    failed = [e.name for e in catalog().tier("lattice-lemma") if e.lattice_check(L) is not None]
    assert "LEQ" in failed


def test_generated_subalgebra_of_commuting_pair_is_boolean():
    # a and a' commute in MO2; they generate {0, a, a', 1}
    m = lattice.mo(2).as_model()
    S = generated_subalgebra(m, [m.lookup("a"), m.lookup("a'")])
    assert {m.render(x) for x in S} == {"0", "a", "a'", "1"}
    # a and b do not commute; they generate all of MO2
    assert len(generated_subalgebra(m, [m.lookup("a"), m.lookup("b")])) == 6


@pytest.mark.parametrize("spec", FIVE)
def test_pairwise_commuting_generators_give_commutative_subalgebra(spec):
    from quantic.models import restrict
    m = lattice.build(spec).as_model()
    els = list(m.elements())
    comm = parse_prop("x * y = y * x")
    for X in itertools.combinations(els, 2):
        if all(m.star(a, b) == m.star(b, a) for a, b in itertools.product(X, X)):
            sub = restrict(m, generated_subalgebra(m, X))
            assert valid_in_model(comm, sub) is True
