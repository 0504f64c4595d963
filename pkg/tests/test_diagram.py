import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diagstrat import DiagstratError
from diagstrat.acceptance import dot_confluence, random_triples
from diagstrat.diagram import (
    LinearCombination, cap, compose, count_law, crossing, cup, diagram_from_json,
    diagram_to_json, dot, e_gen, enumerate_basis, identity, involution_sigma, lc_from_json,
    lc_to_json, normal_form, size,
)

from conftest import cb


def _double_factorial(k):
    return 1 if k <= 1 else k * _double_factorial(k - 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(1, 3))
def test_counting_law(a, b, m):
    if a + b > 8:
        a, b = a % 5, b % 4
    u = ["1/5", "3/10", "1/7"][:m]
    cfg = cb(u, None if m == 1 else ["1", "0", "2"][:m], N=8)
    want = m ** ((a + b) // 2) * _double_factorial(a + b - 1) if (a + b) % 2 == 0 else 0
    assert len(enumerate_basis(a, b, cfg)) == want == count_law(a, b, m)


def test_small_bases(cb_m1):
    assert len(enumerate_basis(2, 2, cb_m1)) == 3
    assert len(enumerate_basis(0, 0, cb_m1)) == 1
    assert enumerate_basis(1, 2, cb_m1) == []


def test_oriented_basis_counts(ob_m2):
    # oriented matchings pair each point with one of the opposite kind
    assert len(enumerate_basis("ud", "ud", ob_m2)) == 2 * 2 ** 2
    assert len(enumerate_basis("uu", "uu", ob_m2)) == 2 * 2 ** 2
    assert len(enumerate_basis("", "ud", ob_m2)) == 2


def test_truncation(cb_m1):
    with pytest.raises(DiagstratError) as e:
        enumerate_basis(5, 1, cb_m1)
    assert e.value.code == "TRUNCATION_EXCEEDED"


def test_type_mismatch(cb_m1):
    with pytest.raises(DiagstratError) as e:
        compose(identity(2), identity(3), cb_m1)
    assert e.value.code == "TYPE_MISMATCH"


def test_loop_values(cb_m2):
    # a closed loop is the bubble with no dots; the cup then cap gives omega_0
    loop = compose(cap(2, 1), cup(2, 1), cb_m2)
    assert loop == Fraction(1) * LinearCombination.of(identity(0))
    e = e_gen(2, 1, cb_m2)
    assert compose(e, e, cb_m2) == cb_m2.bubbles[0] * e


def test_level_one_loop(cb_m1):
    e = e_gen(2, 1, cb_m1)
    assert compose(e, e, cb_m1) == Fraction(5, 3) * e


def test_cyclotomic_relation(cb_m2):
    # (x - 1/5)(x - 3/10) = 0 on a single strand
    x = dot(1, 1, cb_m2)
    x2 = compose(x, x, cb_m2)
    one = LinearCombination.of(identity(1))
    assert x2 == Fraction(1, 2) * x - Fraction(3, 50) * one


@pytest.mark.parametrize("u,b", [(["1/5", "3/10"], ["1", "0"]),
                                 (["1/5", "3/10", "1/7"], ["1", "0", "2"])])
def test_dot_slide(u, b):
    cfg = cb(u, b)
    x1, x2 = dot(2, 1, cfg), dot(2, 2, cfg)
    s = LinearCombination.of(crossing(2, 1))
    e = e_gen(2, 1, cfg)
    one = LinearCombination.of(identity(2))
    # dot on the upper left end minus dot on the lower right end
    assert compose(x1, s, cfg) - compose(s, x2, cfg) == e - one


def _no_overfull_or_loops(lc, cfg):
    for d, _ in lc.items():
        assert all(k < cfg.m for k in d.strand_dots())
        assert len(d.pairs()) * 2 == d.n + d.p


@pytest.mark.parametrize("name", ["cb1", "cb2", "ob2"])
def test_associativity_and_output_shape(name, cb_m1, cb_m2, ob_m2):
    cfg = {"cb1": cb_m1, "cb2": cb_m2, "ob2": ob_m2}[name]
    objs = list(range(5)) if name != "ob2" else ["", "u", "d", "ud", "du", "uu", "udu", "uud"]
    cfg = cfg.replace(N=6)
    for f, g, h in random_triples(cfg, objs, 60, seed=7):
        left = compose(h, compose(g, f, cfg), cfg)
        assert left == compose(compose(h, g, cfg), f, cfg)
        _no_overfull_or_loops(left, cfg)


@pytest.mark.parametrize("name", ["cb2", "ob2"])
def test_dot_confluence(name, cb_m2, ob_m2):
    cfg = {"cb2": cb_m2, "ob2": ob_m2}[name].replace(N=6)
    objs = list(range(5)) if name == "cb2" else ["u", "d", "ud", "du", "uud"]
    for f, g, h in random_triples(cfg, objs, 40, seed=3):
        assert dot_confluence(g, cfg) == 0


@pytest.mark.parametrize("name", ["cb1", "cb2", "ob2"])
def test_sigma(name, cb_m1, cb_m2, ob_m2):
    cfg = {"cb1": cb_m1, "cb2": cb_m2, "ob2": ob_m2}[name].replace(N=6)
    objs = list(range(5)) if name != "ob2" else ["", "u", "d", "ud", "du", "uud"]
    for f, g, _ in random_triples(cfg, objs, 40, seed=11):
        assert involution_sigma(involution_sigma(f, cfg), cfg) == LinearCombination.of(f)
        lhs = involution_sigma(compose(g, f, cfg), cfg)
        rhs = compose(involution_sigma(f, cfg), involution_sigma(g, cfg), cfg)
        assert lhs == rhs


def test_serialization_roundtrip(cb_m2, ob_m2):
    rnd = random.Random(5)
    for cfg, pairs in ((cb_m2, [(2, 2), (1, 3), (0, 4)]), (ob_m2, [("ud", "ud"), ("", "du")])):
        for a, b in pairs:
            basis = enumerate_basis(a, b, cfg)
            for d in basis:
                blob = json.dumps(diagram_to_json(d), sort_keys=True)
                back = diagram_from_json(json.loads(blob), cfg)
                assert back == d
                assert json.dumps(diagram_to_json(back), sort_keys=True) == blob
            lc = LinearCombination(basis[0].bottom, basis[0].top,
                                   {d: Fraction(rnd.randint(-5, 5), rnd.randint(1, 4))
                                    for d in rnd.sample(basis, min(3, len(basis)))})
            blob = json.dumps(lc_to_json(lc, cfg.field), sort_keys=True)
            back = lc_from_json(json.loads(blob), cfg.field, cfg=cfg)
            assert json.dumps(lc_to_json(back, cfg.field), sort_keys=True) == blob


def test_invalid_diagram_json(cb_m1):
    with pytest.raises(DiagstratError) as e:
        diagram_from_json({"bottom": 2, "top": 0, "pairs": [[1, 1]]}, cb_m1)
    assert e.value.code == "INVALID_DIAGRAM"
    with pytest.raises(DiagstratError):
        diagram_from_json({"bottom": 2, "top": 2, "pairs": [[1, 2]]}, cb_m1)


def test_normal_form_moves_dots(cb_m2):
    # a dot at the upper end of a straight strand is the same basis diagram
    d = identity(1)
    nf = normal_form(1, 1, d.partner, [0, 1], cb_m2)
    assert nf == dot(1, 1, cb_m2)
    assert size("udu") == 3
