from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DG_ENTRIES, corpus_dg, corpus_doc
from dgfrob.dg import DGAlgebra, cohomology, cohomology_algebra, cohomology_dim, verify_presentation
from dgfrob.errors import HomogeneityError, IllDefinedDifferential, MismatchAt
from dgfrob.frobenius import validate
from dgfrob.ncalg import GeneratorSet, NcPoly, Presentation, free_algebra
from helpers import leibniz_holds, square_zero_holds
from oracles import free_cohomology_dims

FREE_ENTRIES = ["example1", "ex3", "ex2", "ex5"]

# dims of H^0..H^4 from the dense oracle, frozen
FROZEN_DIMS = {
    "example1": [1, 0, 1, 0, 1],
    "ex3": [1, 2, 3, 4, 5],
    "ex2": [1, 1, 1, 1, 1],
    "ex5": [1, 2, 3, 4, 5],
}


def words_of(ngens, max_len=5):
    return st.lists(st.integers(0, ngens - 1), max_size=max_len).map(tuple)


@pytest.mark.parametrize("name", FREE_ENTRIES)
def test_dims_against_dense_oracle(name):
    doc = corpus_doc(name)
    names = doc.generator_names
    diff = [doc.differential.get(n, NcPoly.zero()).terms for n in names]
    want = free_cohomology_dims(diff, len(names), 4)
    assert want == FROZEN_DIMS[name]
    dg = corpus_dg(name)
    assert [cohomology_dim(dg, n) for n in range(5)] == want


@pytest.mark.parametrize("name", DG_ENTRIES)
@given(data=st.data())
@settings(max_examples=50)
def test_leibniz_and_square_zero(name, data):
    dg = corpus_dg(name)
    ng = len(dg.names)
    a = NcPoly.word(data.draw(words_of(ng)), data.draw(st.integers(-3, 3).filter(bool)))
    b = NcPoly.word(data.draw(words_of(ng)))
    assert square_zero_holds(dg, a)
    assert leibniz_holds(dg, a, b)


@pytest.mark.parametrize("name", DG_ENTRIES)
def test_representatives_are_independent_cocycles(name):
    dg = corpus_dg(name)
    for n in range(6):
        h = cohomology(dg, n)
        for i, z in enumerate(h.representatives):
            assert not dg.diff(z)
            coords = h.coordinates(dg, z)
            assert coords == [Fraction(int(i == j)) for j in range(h.dim)]


def test_coboundary_has_zero_class():
    dg = corpus_dg("ex3")
    z = dg.diff(NcPoly.word((0, 1, 2)))
    assert cohomology(dg, 4).coordinates(dg, z) == [0] * 5


def test_nonclosed_differential_rejected():
    pres = free_algebra(["x", "y"])
    with pytest.raises(IllDefinedDifferential):
        DGAlgebra(pres, [NcPoly.word((1, 1)), NcPoly.word((0, 1))])


def test_differential_must_preserve_ideal():
    gens = GeneratorSet(("x", "y"), (1, 1))
    pres = Presentation(gens, [NcPoly.word((0, 1))])
    with pytest.raises(IllDefinedDifferential):
        DGAlgebra(pres, [NcPoly.word((1, 1)), NcPoly.zero()])


def test_differential_degree_checked():
    pres = free_algebra(["x"])
    with pytest.raises(HomogeneityError):
        DGAlgebra(pres, [NcPoly.word((0,))])


def test_ex2_cohomology_algebra():
    dg = corpus_dg("ex2")
    H = cohomology_algebra(dg, 6)
    validate(H)
    assert H.dims_by_degree() == {n: 1 for n in range(7)}
    u, w = 1, 2
    assert not H.product(u, u)
    assert H.product(u, w) == H.product(w, u) != {}
    assert H.product(w, w)
    assert (u, 6) in H.out_of_window


def test_wrong_candidate_fails_in_degree_four():
    dg = corpus_dg("example1")
    cand = Presentation(GeneratorSet(("w",), (2,)), [NcPoly.word((0, 0))])
    rep = verify_presentation(dg, cand, [NcPoly.word((1, 2))], 8)
    assert not rep.ok
    assert rep.failures[0].degree == 4
    with pytest.raises(MismatchAt):
        rep.raise_for_failure()


def test_noncocycle_image_rejected():
    dg = corpus_dg("example1")
    cand = Presentation(GeneratorSet(("w",), (2,)), [])
    rep = verify_presentation(dg, cand, [NcPoly.word((1, 1))], 4)
    assert not rep.ok and rep.failures[0].degree == 2
