from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from diagstrat import DiagstratError
from diagstrat.algebra import endomorphism_algebra, radical
from diagstrat.cellular import (
    cell_link_blocks, cell_module, decomposition_table, hecke_cell_datum, hecke_decomposition,
    higher, solve_bgg_system, weakly_cellular_basis,
)
from diagstrat.combinatorics import Multipartition, character_standard
from diagstrat.linalg import rank
from diagstrat.stratification import compute_triangular_data

from conftest import cb

MP = Multipartition

FIXTURES = {
    "generic1": (["1/3"], None),
    "generic2": (["1/5", "3/10"], ["1", "0"]),
    "morita2": (["1/3", "4/3"], ["10/3", "35/9"]),
    "half": (["1/2"], None),
    "zero": (["-1/2"], None),
    "nonss2": (["1/4", "3/4"], ["2", "1"]),
}


@pytest.mark.parametrize("name", ["generic1", "generic2", "morita2"])
def test_murphy_basis_axioms(name):
    cfg = cb(*FIXTURES[name], N=3)
    for k in range(4):
        r = hecke_cell_datum(k, cfg).verify_axioms()
        assert r["pass"], r
        assert r["sum_of_squares"] == r["dim"] == cfg.m ** k * [1, 1, 2, 6][k]


@pytest.mark.parametrize("name,a", [("generic1", 3), ("half", 4), ("zero", 2), ("nonss2", 2),
                                    ("morita2", 2)])
def test_weakly_cellular_basis(name, a):
    cfg = cb(*FIXTURES[name], N=a)
    T = compute_triangular_data(cfg, a)
    r = weakly_cellular_basis(a, T).verify()
    assert r["pass"], r
    assert r["sum_of_squares"] == endomorphism_algebra(a, cfg).dim


def test_unknown_cell_label(cb_m1):
    T = compute_triangular_data(cb_m1, 2)
    datum = weakly_cellular_basis(2, T)
    with pytest.raises(DiagstratError) as e:
        cell_module(2, [[3]], datum)
    assert e.value.code == "UNKNOWN_LABEL"


def _head_dim(rad_elems, act, dim):
    """dim S - dim(rad A . S): the radical-series oracle for the simple head."""
    vecs = []
    for r in rad_elems:
        M = act(r)
        for s in range(dim):
            vecs.append([M[i][s] for i in range(dim)])
    return dim - (rank(vecs) if vecs else 0)


@pytest.mark.parametrize("name", ["morita2", "generic2"])
def test_hecke_gram_rank_matches_radical_oracle(name):
    cfg = cb(*FIXTURES[name], N=3)
    for k in range(4):
        d = hecke_cell_datum(k, cfg)
        rad = radical(d.B)
        for lam in d.labels:
            S = d.cell_module(lam)
            G = S.gram()
            if rank(G):
                assert rank(G) == _head_dim(rad, S.rho, S.dim)


@pytest.mark.parametrize("name,a", [("zero", 2), ("half", 3), ("nonss2", 2), ("morita2", 2)])
def test_weak_cell_gram_rank_matches_radical_oracle(name, a):
    cfg = cb(*FIXTURES[name], N=a)
    T = compute_triangular_data(cfg, a)
    datum = weakly_cellular_basis(a, T)
    rad = radical(datum.A)
    for lam in datum.labels:
        S = datum.cell_module(lam)
        G = S.gram()
        if rank(G):
            assert rank(G) == _head_dim(rad, S.act, S.dim)


def test_hecke_tables_morita_fixture():
    cfg = cb(*FIXTURES["morita2"], N=3)
    T = hecke_decomposition(2, cfg)
    assert T.is_unitriangular()
    off = {(str(mu), str(lam)) for mu in T.labels for lam in T.simples
           if mu != lam and T.get(mu, lam)}
    assert off == {("((2), -)", "((1), (1))"), ("((1), (1))", "(-, (1,1))")}
    assert [str(l) for l in T.simples if l not in T.labels] == []


@pytest.mark.parametrize("name", ["morita2", "generic2"])
def test_hecke_heads_fill_the_semisimple_quotient(name):
    # Wedderburn: the squares of the simple dimensions add up to dim B - dim rad B
    cfg = cb(*FIXTURES[name], N=3)
    for k in range(4):
        T = hecke_decomposition(k, cfg)
        B = hecke_cell_datum(k, cfg).B
        heads = [T.head_dims[l] for l in T.simples]
        assert all(heads)
        assert sum(h * h for h in heads) == B.dim - len(radical(B))


@pytest.mark.parametrize("name", ["half", "zero"])
def test_layer_tables_unitriangular(name):
    cfg = cb(*FIXTURES[name], N=4)
    for a in range(5):
        T = decomposition_table(a, cfg)
        assert T.is_unitriangular()
        for lam in T.labels:
            if T.head_dims[lam]:
                assert T.get(lam, lam) == 1


def _bgg(name, N):
    cfg = cb(*FIXTURES[name], N=N)
    tables = {a: decomposition_table(a, cfg) for a in range(N + 1)}
    return solve_bgg_system(tables, N, cfg)


def test_bgg_half():
    bgg = _bgg("half", 4)
    assert bgg[MP([[2, 2]])] == {MP([[2, 2]]): 1, MP([[2]]): 1}
    assert bgg[MP([[2, 1, 1]])] == {MP([[2, 1, 1]]): 1, MP([[1, 1]]): 1}
    others = {l: r for l, r in bgg.items() if l not in (MP([[2, 2]]), MP([[2, 1, 1]]))}
    assert all(r == {l: 1} for l, r in others.items())


def test_bgg_loop_value_zero():
    bgg = _bgg("zero", 4)
    assert bgg[MP([[2]])] == {MP([[2]]): 1, MP([[]]): 1}
    assert bgg[MP([[3, 1]])] == {MP([[3, 1]]): 1, MP([[2]]): 1}


def test_bgg_needs_every_layer(cb_m1):
    tables = {a: decomposition_table(a, cb_m1) for a in range(2)}
    with pytest.raises(DiagstratError) as e:
        solve_bgg_system(tables, 3, cb_m1)
    assert e.value.code == "INSUFFICIENT_TRUNCATION"


def test_decomposition_needs_characteristic_zero():
    cfg = cb(["1"], N=2, char_p=5)
    with pytest.raises(DiagstratError) as e:
        decomposition_table(2, cfg)
    assert e.value.code == "UNSUPPORTED_FIELD"


def test_higher_order():
    assert higher(MP([[]]), MP([[2]]))
    assert higher(MP([[2]]), MP([[1, 1]]))
    assert not higher(MP([[1, 1]]), MP([[2]]))
    assert not higher(MP([[2]]), MP([[2]]))


def _share_a_path(lam, mu, n, cfg):
    a = character_standard(lam, n, cfg)
    b = character_standard(mu, n, cfg)
    return bool(set(a) & set(b))


@pytest.mark.parametrize("name,N", [("half", 4), ("zero", 4), ("nonss2", 3), ("morita2", 3)])
def test_linked_labels_share_a_content_path(name, N):
    cfg = cb(*FIXTURES[name], N=N)
    for a in range(N + 1):
        T = decomposition_table(a, cfg)
        for mu in T.labels:
            for lam in T.simples:
                if T.get(mu, lam):
                    assert _share_a_path(mu, lam, a, cfg)


@pytest.mark.parametrize("name,N", [("half", 4), ("zero", 4), ("nonss2", 3), ("morita2", 3)])
def test_blocks_refine_weight_fibers(name, N):
    blocks = cell_link_blocks(cb(*FIXTURES[name], N=N), N)
    assert all(b["single_fiber"] for b in blocks)
    labels = [l for b in blocks for l in b["component"]]
    assert len(labels) == len({str(l) for l in labels})


@settings(max_examples=8, deadline=None)
@given(st.fractions(min_value=-3, max_value=3, max_denominator=4))
def test_blocks_refine_weight_fibers_level_one(u):
    cfg = cb([str(u)], N=3)
    assert all(b["single_fiber"] for b in cell_link_blocks(cfg, 3))


def test_morita_blocks_stay_in_one_layer():
    blocks = cell_link_blocks(cb(*FIXTURES["morita2"], N=3), 3)
    for b in blocks:
        assert len({sum(map(sum, c)) for c in b["component"]}) == 1


def rui_semisimple(n, delta):
    """Semisimplicity of the Brauer algebra B_n(delta) over Q, by Rui's criterion."""
    if n <= 1:
        return True
    if delta == 0:
        return n in (1, 3, 5)
    if Fraction(delta).denominator != 1:
        return True
    d = int(delta)
    bad = {i for i in range(4 - 2 * n, n - 1)} - {i for i in range(4 - 2 * n + 1, 4 - n) if i % 2}
    return d not in bad


@pytest.mark.parametrize("delta", ["-2", "-1", "0", "1", "2", "3", "5/3"])
def test_level_one_radicals_follow_rui(delta):
    u = (Fraction(delta) - 1) / 2
    cfg = cb([str(u)], N=3)
    for n in range(4):
        ss = not radical(endomorphism_algebra(n, cfg))
        assert ss == rui_semisimple(n, Fraction(delta)), (n, delta)


@pytest.mark.parametrize("delta,expected", [("2", 47), ("0", 36)])
def test_first_radical_at_four_strands(delta, expected):
    u = (Fraction(delta) - 1) / 2
    cfg = cb([str(u)], N=4)
    assert not rui_semisimple(4, Fraction(delta))
    assert len(radical(endomorphism_algebra(4, cfg))) == expected
