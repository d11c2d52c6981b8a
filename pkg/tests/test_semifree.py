from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DG_ENTRIES, corpus_dg, corpus_doc, corpus_resolution
from dgfrob.dg import DGAlgebra
from dgfrob.errors import (
    CutoffTooSmall,
    DegreeMismatch,
    DifferentialNotSquareZero,
    NotMinimal,
    NotTriangular,
    WindowExceeded,
)
from dgfrob.frobenius import validate
from dgfrob.ncalg import GeneratorSet, NcPoly, Presentation
from dgfrob.semifree import (
    HomComplex,
    check_resolution,
    check_semifree,
    comparison_map,
    constant_part,
    ext_algebra,
    hom_cohomology,
    hom_differential,
    is_koszul,
    resolution_dims,
    resolve_trivial,
    smoothness_report,
    trivial_module,
)
from helpers import perturbed_table, random_coboundary, seeded

x = lambda i: NcPoly.word((i,))  # noqa: E731


def ex3_module(rows):
    F = corpus_doc("ex3").resolution.copy()
    F.diff = rows
    return F


@pytest.mark.parametrize("name", [n for n in DG_ENTRIES if corpus_doc(n).resolution is not None])
def test_bundled_modules_are_resolutions(name):
    dg = corpus_dg(name)
    F = corpus_doc(name).resolution
    check_semifree(dg, F)
    assert check_resolution(dg, F, 8)


def test_resolved_modules(dg_entry):
    name, dg = dg_entry
    F = corpus_resolution(name)
    check_semifree(dg, F)
    assert resolution_dims(dg, F, 8) == [1] + [0] * 8
    assert F.names[0] == "e0" and all(n.startswith("g") for n in F.names[1:])


def test_ex3_resolution_frozen():
    dg = corpus_dg("ex3")
    F = corpus_resolution("ex3")
    rows = [F.format_row(j, dg.names) for j in range(F.rank)]
    assert rows == ["0", "x2*e0", "x3*e0", "x1*e0 + x2*g1_1"]


def test_missing_term_breaks_square_zero():
    # d(Sr) = x2*Sx3 alone: d^2(Sr) = -x2*x3*e0
    F = ex3_module([{}, {0: x(1)}, {0: x(2)}, {2: x(1)}])
    with pytest.raises(DifferentialNotSquareZero):
        check_semifree(corpus_dg("ex3"), F)


def test_constant_coefficient_is_not_minimal():
    F = ex3_module([{}, {0: x(1)}, {0: x(2)}, {0: x(0), 2: x(1), 1: NcPoly.one()}])
    with pytest.raises((NotMinimal, DegreeMismatch)):
        check_semifree(corpus_dg("ex3"), F)
    G = trivial_module()
    G.names.append("s")
    G.degrees.append(-1)
    G.diff.append({0: NcPoly.one()})
    with pytest.raises(NotMinimal):
        check_semifree(corpus_dg("ex3"), G)
    check_semifree(corpus_dg("ex3"), G, minimal=False)


def test_order_and_degree_violations():
    dg = corpus_dg("ex3")
    with pytest.raises(NotTriangular):
        check_semifree(dg, ex3_module([{}, {2: x(1)}, {0: x(2)}, {}]))
    with pytest.raises(DegreeMismatch):
        check_semifree(dg, ex3_module([{}, {0: x(1) * x(1)}, {0: x(2)}, {}]))


def test_algebra_itself_is_not_a_resolution():
    dg = corpus_dg("ex3")
    F = trivial_module()
    check_semifree(dg, F)
    assert not check_resolution(dg, F, 4)


def test_ground_field_and_polynomial():
    dg = corpus_doc("ground_field").dg_algebra()
    F = resolve_trivial(dg, 8)
    assert F.rank == 1
    dg = corpus_doc("poly_z").dg_algebra()
    F = resolve_trivial(dg, 8)
    assert F.degrees == [0, 0]


def exterior_square_zero():
    pres = Presentation(GeneratorSet(("x",), (1,)), [NcPoly.word((0, 0))])
    return DGAlgebra(pres, [NcPoly.zero()])


def test_infinite_resolution_reports_cutoff():
    dg = exterior_square_zero()
    with pytest.raises(CutoffTooSmall) as info:
        resolve_trivial(dg, 6)
    assert info.value.partial.rank >= 6
    rep = smoothness_report(dg, 6)
    assert not rep.finite_basis_found and not rep.complete


@pytest.mark.parametrize("name", DG_ENTRIES)
def test_smooth_and_koszul(name):
    dg = corpus_dg(name)
    rep = smoothness_report(dg, 8, corpus_resolution(name))
    assert rep.finite_basis_found and rep.complete
    assert is_koszul(corpus_resolution(name)) == (name in ("ex3", "ex2", "ex5"))


def test_hom_dims():
    dg, F = corpus_dg("prop72"), corpus_resolution("prop72")
    assert hom_cohomology(dg, F, -1, 8).dim == 3
    assert hom_cohomology(dg, F, 0, 8).dim == 3
    assert hom_cohomology(corpus_dg("ex3"), corpus_resolution("ex3"), 0, 8).dim == 4


def test_hom_window():
    hc = HomComplex(corpus_dg("prop72"), corpus_resolution("prop72"), cutoff=2)
    with pytest.raises(WindowExceeded):
        hc.basis(3)


@pytest.mark.parametrize("name", ["prop71", "prop72", "example1", "ex3"])
@given(seed=st.integers(0, 2**32), k=st.integers(-2, 2))
@settings(max_examples=15)
def test_hom_differential_squares_to_zero(name, seed, k):
    dg, F = corpus_dg(name), corpus_resolution(name)
    hc = HomComplex(dg, F)
    rng = seeded(seed)
    vec = {t: Fraction(rng.randint(-2, 2)) for t in range(hc.dim(k))}
    M = hc.from_vector(vec, k)
    dd = hom_differential(dg, F, hom_differential(dg, F, M, k), k + 1)
    assert not hc.to_vector(dd, k + 2)


@pytest.mark.parametrize("name", DG_ENTRIES)
def test_ext_is_associative_with_koszul_grading(name):
    dg, F = corpus_dg(name), corpus_resolution(name)
    E = ext_algebra(dg, F, 8).algebra
    validate(E)
    assert E.dim == F.rank
    if is_koszul(F):
        assert set(E.degrees) == {0}


@pytest.mark.parametrize("name", DG_ENTRIES)
@given(seed=st.integers(0, 2**32))
@settings(max_examples=10)
def test_ext_independent_of_representatives(name, seed):
    dg, F = corpus_dg(name), corpus_resolution(name)
    ext = ext_algebra(dg, F, 8)
    assert perturbed_table(dg, F, ext, seeded(seed), 8) == ext.algebra.table


def test_perturbations_are_nontrivial():
    dg, F = corpus_dg("prop71"), corpus_resolution("prop71")
    hc = HomComplex(dg, F)
    rng = seeded(0)
    assert any(hc.to_vector(random_coboundary(hc, 0, rng), 0) for _ in range(5))


@pytest.mark.parametrize("name", ["prop71", "prop72", "ex3", "example1"])
def test_comparison_map_transports_ext(name):
    dg = corpus_dg(name)
    F, G = corpus_doc(name).resolution, corpus_resolution(name)
    EF, EG = ext_algebra(dg, F, 8).algebra, ext_algebra(dg, G, 8).algebra
    C = constant_part(F, G, comparison_map(dg, F, G, 8))
    p = [[C[a][i] for a in range(F.rank)] for i in range(G.rank)]
    assert EF.change_basis(p).table == EG.table


def test_prop72_table_frozen():
    # the bundled table with e4 negated
    E = ext_algebra(corpus_dg("prop72"), corpus_resolution("prop72"), 8).algebra
    n = E.names
    got = {
        (n[a], n[b]): {n[k]: int(c) for k, c in row.items()}
        for (a, b), row in E.table.items()
        if E.unit not in (a, b)
    }
    g1, g2, g3, g4, g5 = (f"g{i}_0*" for i in range(1, 6))
    assert E.degrees == [0, 0, 0, -1, -1, -1]
    assert got == {
        (g1, g1): {g2: 1},
        (g1, g3): {g4: -1},
        (g3, g1): {g4: -1},
        (g1, g4): {g5: -1},
        (g4, g1): {g5: -1},
        (g2, g3): {g5: 1},
        (g3, g2): {g5: 1},
    }
