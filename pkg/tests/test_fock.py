import pytest

from diagstrat import DiagstratError
from diagstrat.cellular import hecke_decomposition
from diagstrat.combinatorics import Multipartition, multipartitions
from diagstrat.fock import (
    FockVector, e_act, e_tilde_act, f_act, generate_highest_weight, phi_sharp,
    resolve_content, restriction_in_standards, touching_contents, verify_cartan,
    verify_intertwining, verify_ses_character,
)
from diagstrat.params import sharp

from conftest import cb

MP = Multipartition
MORITA = (["1/3", "4/3"], ["10/3", "35/9"])


@pytest.mark.parametrize("fx", [(["1/3"], None), (["1/2"], None), (["1/5", "3/10"], ["1", "0"]),
                                MORITA])
def test_cartan_relations(fx):
    r = verify_cartan(cb(*fx), max_size=3)
    assert r["pass"] and r["checked"] > 0, r["failures"]


def test_coideal_generator_example():
    cfg = cb(["1/2"])
    v = e_tilde_act("1/2", FockVector.basis([[1]], 1), cfg)
    assert v == FockVector({MP([[]]): 1, MP([[1, 1]]): 1})


def test_content_outside_index_set():
    cfg = cb(["1/2"])
    with pytest.raises(DiagstratError) as e:
        resolve_content("1/7", cfg)
    assert e.value.code == "CONTENT_OUTSIDE_I"
    assert resolve_content("-3/2", cfg) == cfg.content(1, -2)


def test_highest_weight_dims_generic():
    # with no orbit links the submodule generated by v_empty is the whole Fock space
    for fx in [(["1/3"], None), (["1/5", "3/10"], ["1", "0"])]:
        cfg = cb(*fx)
        dims = [r["dim"] for r in generate_highest_weight(cfg, 4)]
        assert dims == [len(multipartitions(d, cfg.m)) for d in range(5)]


def test_highest_weight_dims_count_hecke_simples():
    cfg = cb(*MORITA, N=3)
    dims = [r["dim"] for r in generate_highest_weight(cfg, 3)]
    assert dims == [len(hecke_decomposition(k, cfg).simples) for k in range(4)] == [1, 2, 4, 8]


@pytest.mark.parametrize("fx", [(["1/3"], None), (["1/2"], None), (["-1/2"], None),
                                (["1/5", "3/10"], ["1", "0"]), (["1/4", "3/4"], ["2", "1"])])
def test_ses_characters(fx):
    cfg = cb(*fx, N=4 if len(fx[0]) == 1 else 3)
    for k in range(3):
        for lam in multipartitions(k, cfg.m):
            for i in touching_contents(lam, cfg):
                r = verify_ses_character(lam, i, cfg)
                assert r["pass"], r


def test_ses_paths_source_agrees(cb_m1):
    for lam in ([[]], [[1]], [[2]]):
        for i in touching_contents(MP(lam), cb_m1):
            assert verify_ses_character(lam, i, cb_m1, source="paths")["pass"]


def test_ses_needs_room_above():
    cfg = cb(["1/3"], N=2)
    with pytest.raises(DiagstratError) as e:
        verify_ses_character([[2]], "1/3", cfg)
    assert e.value.code == "INSUFFICIENT_TRUNCATION"


def test_morita_splits_the_coideal_generator():
    cfg = cb(*MORITA)
    for k in range(4):
        for lam in multipartitions(k, 2):
            v = FockVector.basis(lam)
            for i in touching_contents(lam, cfg):
                parts = [e_act(i, v, cfg), f_act(sharp(i, cfg), v, cfg)]
                assert sum(1 for p in parts if p) <= 1


def test_restriction_expansion_level_one():
    cfg = cb(["1/2"], N=4)
    got = restriction_in_standards([[1]], "1/2", cfg)
    assert got == FockVector({MP([[]]): 1, MP([[1, 1]]): 1})


def test_phi_sharp_needs_a_table(cb_m1):
    tables = {0: hecke_decomposition(0, cb_m1)}
    with pytest.raises(DiagstratError) as e:
        phi_sharp([[1]], tables)
    assert e.value.code == "MISSING_TABLE"


def test_intertwining_level_one():
    cfg = cb(["1/3"], N=4)
    tables = {k: hecke_decomposition(k, cfg) for k in range(4)}
    for k in range(3):
        for lam in multipartitions(k, 1):
            for i in touching_contents(lam, cfg):
                assert verify_intertwining(lam, i, cfg, tables)["pass"]
