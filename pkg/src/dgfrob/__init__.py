"""Exact Ext-algebras of connected cochain DG algebras and Frobenius tests.

Pipeline: presented DG algebra -> minimal semi-free resolution of k ->
Hom complex -> Ext-algebra -> graded Frobenius / symmetric tests ->
Koszul, smooth, Gorenstein and Calabi-Yau verdicts.
"""

__version__ = "0.1.0"

from .classify import ClassificationVerdict, classify, classify_graded
from .config import RunConfig
from .dg import DGAlgebra, cohomology, cohomology_algebra, cohomology_dim, verify_presentation
from .frobenius import FiniteGradedAlgebra, FrobeniusReport, analyze, frobenius_test, nakayama, symmetric_test
from .io import load_corpus, parse_input, serialize
from .ncalg import GeneratorSet, NcPoly, Presentation
from .semifree import (
    SemiFreeModule,
    check_resolution,
    check_semifree,
    ext_algebra,
    hom_cohomology,
    is_koszul,
    resolve_trivial,
    smoothness_report,
)
