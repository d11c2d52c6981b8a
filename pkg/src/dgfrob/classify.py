"""Koszul / smooth / Gorenstein / Calabi-Yau verdicts from the Ext-algebra.

For a homologically smooth connected cochain DG algebra, Gorenstein is
equivalent to the Ext-algebra being graded Frobenius, and Calabi-Yau to it
being graded symmetric Frobenius.  Smoothness itself is only certified up
to the degree window.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .dg import DGAlgebra
from .errors import CutoffTooSmall, InternalInvariantError
from .frobenius import DET_BOUND, FrobeniusReport, analyze
from .ncalg import NcPoly, Presentation
from .semifree import (
    ExtAlgebra,
    SemiFreeModule,
    SmoothnessReport,
    check_resolution,
    ext_algebra,
    is_koszul,
    smoothness_report,
)

EQUIVALENT_FORMS = {
    "gorenstein": [
        "the Ext-algebra is a graded Frobenius algebra",
        "the compact derived category of the Ext-algebra has Auslander-Reiten triangles",
    ],
    "calabi_yau": [
        "the Ext-algebra is a symmetric graded Frobenius algebra",
    ],
}


@dataclass
class ClassificationVerdict:
    koszul: bool
    smooth: SmoothnessReport
    gorenstein: bool
    calabi_yau: bool
    conditional: bool
    ext: ExtAlgebra
    frobenius: FrobeniusReport
    resolution: SemiFreeModule
    candidate_cy_shift: int | None = None
    caveats: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def row(self):
        """(koszul, smooth, gorenstein, calabi_yau) as booleans."""
        return (self.koszul, self.smooth.finite_basis_found, self.gorenstein, self.calabi_yau)

    def ext_summary(self):
        A = self.ext.algebra
        return {
            "dim": A.dim,
            "dims_by_degree": A.dims_by_degree(),
            "basis": list(A.names),
            "degrees": list(A.degrees),
        }


def classify(dg: DGAlgebra, cutoff: int = 8, seed: int = 0, det_bound: int = DET_BOUND) -> ClassificationVerdict:
    smooth = smoothness_report(dg, cutoff)
    F = smooth.resolution
    if not smooth.complete:
        raise CutoffTooSmall(f"no finite semi-basis found within weight {cutoff}", partial=F)
    if not check_resolution(dg, F, cutoff):
        raise InternalInvariantError("computed module is not a resolution inside the window")
    koszul = is_koszul(F)
    ext = ext_algebra(dg, F, cutoff)
    rep = analyze(ext.algebra, seed=seed, bound=det_bound)
    gorenstein = rep.is_frobenius
    cy = gorenstein and rep.is_graded_symmetric
    if cy and not gorenstein:
        raise InternalInvariantError("Calabi-Yau verdict without Gorenstein")
    caveats = [f"smoothness verified up to cutoff {cutoff} (finite semi-basis of size {F.rank})"]
    conditional = not smooth.finite_basis_found
    if conditional:
        caveats.append(
            "generators appeared near the top of the window; Gorenstein and Calabi-Yau "
            "verdicts are conditional on smoothness"
        )
    if rep.method != "symbolic":
        caveats.append("Frobenius determinant decided by randomized evaluation")
    shift = rep.shift if rep.is_frobenius else None
    if cy:
        caveats.append(
            f"candidate Calabi-Yau shift {shift} is the Frobenius shift of the Ext-algebra; "
            "it is not asserted to equal the Calabi-Yau dimension"
        )
    notes = []
    if gorenstein:
        notes += [f"equivalently, {s}" for s in EQUIVALENT_FORMS["gorenstein"]]
    if cy:
        notes += [f"equivalently, {s}" for s in EQUIVALENT_FORMS["calabi_yau"]]
    return ClassificationVerdict(
        koszul=koszul,
        smooth=smooth,
        gorenstein=gorenstein,
        calabi_yau=cy,
        conditional=conditional,
        ext=ext,
        frobenius=rep,
        resolution=F,
        candidate_cy_shift=shift if cy else None,
        caveats=caveats,
        notes=notes,
    )


def classify_graded(p: Presentation, cutoff: int = 8, seed: int = 0) -> ClassificationVerdict:
    """Classify the graded algebra ``p`` viewed as a DG algebra with zero differential."""
    dg = DGAlgebra(p, [NcPoly.zero()] * len(p.generators))
    return classify(dg, cutoff, seed)
