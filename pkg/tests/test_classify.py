import pytest

from conftest import corpus_dg, corpus_doc
from dgfrob.classify import classify, classify_graded
from dgfrob.errors import CutoffTooSmall
from dgfrob.ncalg import GeneratorSet, NcPoly, Presentation

# (koszul, smooth, gorenstein, calabi_yau)
ROWS = {
    "example1": (False, True, True, True),
    "ex3": (True, True, False, False),
    "ex2": (True, True, True, True),
    "ex5": (True, True, True, True),
    "prop71": (False, True, True, False),
    "prop72": (False, True, True, True),
}


@pytest.mark.parametrize("name", sorted(ROWS))
def test_rows(name):
    v = classify(corpus_dg(name), 8)
    assert v.row() == ROWS[name]
    assert v.gorenstein or not v.calabi_yau
    assert not v.conditional
    if v.calabi_yau:
        assert v.candidate_cy_shift == v.frobenius.shift
    else:
        assert v.candidate_cy_shift is None


@pytest.mark.parametrize("name", ["poly_z", "ground_field"])
def test_degenerate_inputs(name):
    v = classify(corpus_doc(name).dg_algebra(), 8)
    assert v.row() == (True, True, True, True)


def test_deterministic():
    a = classify(corpus_dg("prop71"), 8, seed=3)
    b = classify(corpus_dg("prop71"), 8, seed=3)
    assert a.row() == b.row()
    assert a.ext.algebra.table == b.ext.algebra.table
    assert a.frobenius.witness_functional == b.frobenius.witness_functional


def test_non_smooth_raises():
    # k<x>/(x^2), |x| = 1: the resolution of k never stops
    pres = Presentation(GeneratorSet(("x",), (1,)), [NcPoly.word((0, 0))])
    with pytest.raises(CutoffTooSmall) as info:
        classify_graded(pres, 6)
    assert info.value.partial is not None


def test_caveats_mention_cutoff():
    v = classify(corpus_dg("ex3"), 8)
    assert any("cutoff 8" in c for c in v.caveats)
    assert v.ext_summary()["dim"] == 4
