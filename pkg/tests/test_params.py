from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from diagstrat import DiagstratError
from diagstrat.params import (
    GF, Content, Field, content_eq, make_config, morita_predicate, semisimple_predicate, sharp,
)

from conftest import cb

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
primes = st.sampled_from([3, 5, 7, 11, 13])


@given(fractions, fractions, fractions)
def test_rational_field_axioms(a, b, c):
    F = Field(0)
    a, b, c = F(a), F(b), F(c)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert a * (1 / a) == 1


@given(primes, st.integers(), st.integers(), st.integers())
def test_gf_field_axioms(p, x, y, z):
    F = Field(p)
    a, b, c = F(x), F(y), F(z)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a != 0:
        assert a * (F.one / a) == 1


@given(primes, fractions)
def test_gf_reduces_fractions(p, q):
    assume(q.denominator % p)
    g = GF(q, p)
    assert g * q.denominator == q.numerator


def test_field_formatting_roundtrip():
    F = Field(0)
    for s in ["0", "3", "-7/2", "5/3"]:
        assert F.fmt(F.parse(s)) == s
    assert Field(7).fmt(Field(7).parse("1/2")) == "4"


def test_invalid_characteristic():
    with pytest.raises(DiagstratError) as e:
        make_config({"flavor": "CB", "m": 1, "u": ["1/3"], "char_p": 4})
    assert e.value.code == "INVALID_CHAR"
    with pytest.raises(DiagstratError) as e:
        make_config({"flavor": "CB", "m": 1, "u": ["1"], "char_p": 2})
    assert e.value.code == "INVALID_CHAR"


def test_length_mismatch():
    with pytest.raises(DiagstratError) as e:
        make_config({"flavor": "CB", "m": 2, "u": ["1/3"], "bubbles": ["1", "0"]})
    assert e.value.code == "LENGTH_MISMATCH"


def test_level_one_loop_value():
    assert cb(["1/3"]).bubbles == (Fraction(5, 3),)
    derived = make_config({"flavor": "CB", "m": 1, "bubbles": ["0"]})
    assert derived.u == (Fraction(-1, 2),)
    with pytest.raises(DiagstratError) as e:
        cb(["1/3"], ["1"])
    assert e.value.code == "INADMISSIBLE"


def test_orbits_from_integer_differences():
    cfg = cb(["1/3", "4/3"], ["10/3", "35/9"])
    assert cfg.orbits == ((1, 2),)
    assert cfg.content(2, 0) == cfg.content(1, 1)
    with pytest.raises(DiagstratError) as e:
        make_config({"flavor": "CB", "m": 2, "u": ["1/3", "4/3"], "bubbles": ["10/3", "35/9"],
                     "orbits": [[1], [2]]})
    assert e.value.code == "INCONSISTENT_ORBITS"


def test_digest_tracks_parameters():
    a = cb(["1/5", "3/10"], ["1", "0"])
    assert a.digest() == cb(["1/5", "3/10"], ["1", "0"]).digest()
    assert a.digest() != cb(["1/5", "3/7"], ["1", "0"]).digest()
    assert make_config(a.to_raw()) == a


def test_content_labels():
    c = Content(1, -2)
    assert c.label() == "1:-2"
    assert Content.from_label("1:-2") == c
    assert Content.from_label(Content(2, 0, True).label()) == Content(2, 0, True)


u_vectors = st.lists(fractions, min_size=1, max_size=3)


@settings(max_examples=60, deadline=None)
@given(u_vectors)
def test_semisimple_implies_morita(u):
    m = len(u)
    cfg = make_config({"flavor": "CB", "m": m, "u": [str(x) for x in u],
                       "bubbles": [str(1 + 2 * u[0])] + ["0"] * (m - 1)})
    if semisimple_predicate(cfg):
        assert morita_predicate(cfg)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(["1/3", "4/3", "-1/3", "1/2", "2/5", "-2/5", "0"]),
                min_size=1, max_size=3),
       st.integers(1, 3), st.integers(-3, 3))
def test_sharp_is_an_involution(u, j, z):
    cfg = make_config({"flavor": "CB", "m": len(u), "u": u,
                       "bubbles": [str(1 + 2 * Fraction(u[0]))] + ["0"] * (len(u) - 1)})
    j = min(j, cfg.m)
    c = cfg.content(j, z)
    s = sharp(c, cfg)
    assert cfg.content_value(s) == -cfg.content_value(c)
    if not s.outside:
        assert sharp(s, cfg) == c


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 2), st.integers(-3, 3)), min_size=3, max_size=3))
def test_content_eq_is_an_equivalence(triple):
    cfg = cb(["1/3", "4/3"], ["10/3", "35/9"])
    a, b, c = (Content(j, z) for j, z in triple)
    assert content_eq(a, a, cfg)
    assert content_eq(a, b, cfg) == content_eq(b, a, cfg)
    if content_eq(a, b, cfg) and content_eq(b, c, cfg):
        assert content_eq(a, c, cfg)
    assert content_eq(a, b, cfg) == (cfg.content_value(a) == cfg.content_value(b))


def test_predicates_on_fixtures():
    assert semisimple_predicate(cb(["1/3"]))
    assert not semisimple_predicate(cb(["1/2"]))
    assert not semisimple_predicate(cb(["-1/2"]))
    assert not semisimple_predicate(cb(["1/4", "3/4"], ["2", "1"]))
    assert morita_predicate(cb(["1/3", "4/3"], ["10/3", "35/9"]))
    assert not semisimple_predicate(cb(["1/3", "4/3"], ["10/3", "35/9"]))


def test_quantum_predicates():
    # u*u = 4q^2 leaves q^(2Z), while u = q puts u*u = q^2 inside it
    assert semisimple_predicate(make_config({"flavor": "CK", "m": 1, "u": ["2*q"], "e": "inf"}))
    assert not semisimple_predicate(make_config({"flavor": "CK", "m": 1, "u": ["q"], "e": "inf"}))
    assert not semisimple_predicate(make_config({"flavor": "CK", "m": 1, "u": ["q"], "e": 3}))
