import itertools
import json
import os
from math import factorial

import pytest

from diagstrat import DiagstratError, cache
from diagstrat.algebra import (
    IdealBasis, bar_algebra, category_algebra, endomorphism_algebra, gram_matrix,
    hecke_basis, ideal_basis, quotient_algebra, radical, through_class, verify_hecke_relations,
)
from diagstrat.diagram import compose_diagrams, identity
from diagstrat.params import make_config
from diagstrat.stratification import compute_triangular_data

from conftest import cb


def _full_associativity(A):
    return A.associativity_failures() == []


@pytest.mark.parametrize("a", [0, 1, 2, 3])
def test_endomorphism_associativity(cb_m1, a):
    assert _full_associativity(endomorphism_algebra(a, cb_m1))


def test_associativity_m2(cb_m2):
    assert _full_associativity(endomorphism_algebra(2, cb_m2))
    A = endomorphism_algebra(3, cb_m2)
    assert A.dim == 120
    assert A.associativity_failures(samples=3000, seed=1) == []


def test_category_algebra_associativity(cb_m1, ob_m2):
    assert _full_associativity(category_algebra(cb_m1, 3))
    A = category_algebra(ob_m2.replace(N=2), 2)
    assert A.associativity_failures(samples=3000, seed=2) == []


@pytest.mark.parametrize("name", ["cb1", "cb2", "ob2"])
def test_sigma_anti_involution(name, cb_m1, cb_m2, ob_m2):
    cfg = {"cb1": cb_m1, "cb2": cb_m2, "ob2": ob_m2.replace(N=2)}[name]
    A = category_algebra(cfg, 2)
    for i, j in itertools.product(range(A.dim), repeat=2):
        assert A.sigma(A.mult_basis(i, j)) == A.mul(A.sigma({j: 1}), A.sigma({i: 1}))
    for i in range(A.dim):
        assert A.sigma(A.sigma({i: 1})) == {i: 1}
    assert A.sigma(A.one()) == A.one()


def test_radical_examples():
    one_dim = endomorphism_algebra(0, cb(["1/3"]))
    assert one_dim.dim == 1 and radical(one_dim) == []
    zero = make_config({"flavor": "CB", "m": 1, "bubbles": ["0"], "N": 2})
    A = endomorphism_algebra(2, zero)
    rad = radical(A)
    e = A.index[next(d for d in A.basis if through_class(d) == 0)]
    assert rad == [{e: 1}]
    five = make_config({"flavor": "CB", "m": 1, "bubbles": ["5"], "N": 2})
    assert radical(endomorphism_algebra(2, five)) == []


def test_radical_needs_characteristic_zero():
    cfg = make_config({"flavor": "CB", "m": 1, "u": ["1"], "char_p": 5, "N": 2})
    with pytest.raises(DiagstratError) as e:
        radical(endomorphism_algebra(2, cfg))
    assert e.value.code == "UNSUPPORTED_FIELD"


@pytest.mark.parametrize("u", ["1/3", "1/2", "-1/2", "0"])
def test_layer_radicals_match_category_radical(u):
    cfg = cb([u], N=3)
    layers = sum(len(radical(endomorphism_algebra(a, cfg))) for a in range(4))
    whole = len(radical(category_algebra(cfg, 3)))
    assert (layers == 0) == (whole == 0)


def test_category_radical_at_four_objects():
    cfg = cb(["1/2"], N=4)
    layers = [len(radical(endomorphism_algebra(a, cfg))) for a in range(5)]
    assert layers == [0, 0, 0, 0, 47]
    assert len(radical(category_algebra(cfg, 4))) > 0


@pytest.mark.parametrize("fx", [(["1/3"], None), (["1/5", "3/10"], ["1", "0"])])
def test_hecke_quotient(fx):
    cfg = cb(*fx)
    for a in range(4):
        B = bar_algebra(a, cfg)
        assert B.dim == cfg.m ** a * factorial(a) == len(hecke_basis(a, cfg))
        assert verify_hecke_relations(a, cfg)["pass"]


def test_quotient_by_smaller_objects_is_the_bar_algebra(cb_m2):
    T = compute_triangular_data(cb_m2, 3)
    A = endomorphism_algebra(3, cb_m2)
    J = ideal_basis(A, {1}, T)
    Q = quotient_algebra(A, J)
    assert Q.dim == bar_algebra(3, cb_m2).dim == 48
    assert Q.associativity_failures(samples=500, seed=0) == []


def test_ideal_basis_requires_upper_set(cb_m1):
    T = compute_triangular_data(cb_m1, 2)
    A = endomorphism_algebra(2, cb_m1)
    with pytest.raises(DiagstratError) as e:
        ideal_basis(A, {2}, T)
    assert e.value.code == "NOT_UPPER_SET"
    assert ideal_basis(A, {0}, T, check="full").dim == 1
    assert ideal_basis(A, {0, 2}, T, check="full").dim == A.dim


def test_h_products_stay_in_h_modulo_smaller_objects(cb_m2):
    a = 3
    A = endomorphism_algebra(a, cb_m2)
    H = hecke_basis(a, cb_m2)
    capped = [{i: 1} for i, d in enumerate(A.basis) if through_class(d) < a]
    J = IdealBasis({1}, capped, A)
    hidx = {A.index[h] for h in H}
    for h1, h2 in itertools.islice(itertools.product(H, H), 0, None, 7):
        prod = compose_diagrams(h1, h2, cb_m2)
        rest = {A.index[d]: c for d, c in prod.items() if A.index[d] not in hidx}
        assert not rest or J.contains(rest)


def test_gram_matrix_shapes():
    assert gram_matrix(1, [[1]]) == [[1]]
    assert gram_matrix(2, lambda i, j: i + j) == [[0, 1], [1, 2]]
    with pytest.raises(DiagstratError) as e:
        gram_matrix(2, [[1]])
    assert e.value.code == "SHAPE_MISMATCH"


def test_structure_constant_dump(cb_m1):
    A = endomorphism_algebra(2, cb_m1)
    dump = A.to_json()
    assert set(dump) == {"basis", "mult"}
    assert len(dump["basis"]) == 3 and len(dump["mult"]) == 3
    e = next(i for i, d in enumerate(A.basis) if through_class(d) == 0)
    assert dump["mult"][e][e] == [[e, "5/3"]]
    json.dumps(dump)


def test_cache_roundtrip_and_tamper(tmp_path, monkeypatch):
    monkeypatch.setenv("DIAGSTRAT_CACHE", str(tmp_path))
    cfg = cb(["2/7"], N=3)
    first = category_algebra(cfg, 3)
    first.table()
    before = dict(cache.stats)
    second = category_algebra(cfg, 3)
    second.table()
    assert cache.stats["hits"] == before["hits"] + 1
    assert second._table == first._table
    files = [os.path.join(r, f) for r, _, fs in os.walk(tmp_path) for f in fs]
    assert len(files) == 1
    with open(files[0]) as fh:
        doc = json.load(fh)
    doc["payload"][0][0] = [[0, "99"]]
    with open(files[0], "w") as fh:
        json.dump(doc, fh)
    third = category_algebra(cfg, 3)
    third.table()
    assert third._table == first._table
    # a different parameter is a different key
    assert category_algebra(cb(["2/9"], N=3), 3).key != first.key


def test_identity_is_unit(cb_m2):
    A = endomorphism_algebra(2, cb_m2)
    one = A.one()
    assert one == {A.index[identity(2)]: 1}
    for i in range(A.dim):
        assert A.mul(one, {i: 1}) == {i: 1} == A.mul({i: 1}, one)
