"""DG algebras, their cohomology, and presentation checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    HomogeneityError,
    IllDefinedDifferential,
    InternalInvariantError,
    MismatchAt,
)
from .linalg import SparseEchelon, canonical_basis
from .ncalg import NcPoly, Presentation


class DGAlgebra:
    """A presented algebra with a degree +1 differential given on generators.

    ``differential[i]`` is the image of generator ``i``.  The sign rule is
    ``d(ab) = d(a) b + (-1)^|a| a d(b)``.
    """

    def __init__(self, presentation: Presentation, differential, check=True):
        self.presentation = presentation
        self.differential = [presentation.reduce(p) for p in differential]
        if len(self.differential) != len(presentation.generators):
            raise HomogeneityError("one differential image per generator is needed")
        for i, p in enumerate(self.differential):
            if not p:
                continue
            d = presentation.poly_degree(p)
            if d != presentation.degrees[i] + 1:
                raise HomogeneityError(
                    f"d({presentation.names[i]}) has degree {d}, "
                    f"expected {presentation.degrees[i] + 1}"
                )
        self._dmat: dict[int, list] = {}
        self._images: dict[int, SparseEchelon] = {}
        self._coh: dict[int, "CohomologyResult"] = {}
        if check:
            check_well_defined(self)

    @property
    def names(self):
        return self.presentation.names

    def is_formal_zero(self):
        """True when the differential vanishes on every generator."""
        return not any(self.differential)

    def diff_free(self, p) -> NcPoly:
        """Leibniz extension in the free algebra, no reduction."""
        degs = self.presentation.degrees
        dx = self.differential
        out = {}
        for w, c in p.terms.items():
            pre = 0
            for j, g in enumerate(w):
                img = dx[g]
                if img:
                    sgn = -c if pre % 2 else c
                    head = w[:j]
                    tail = w[j + 1:]
                    for v, a in img.terms.items():
                        key = head + v + tail
                        s = out.get(key, 0) + sgn * a
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
                pre += degs[g]
        return NcPoly._raw(out)

    def diff(self, p) -> NcPoly:
        return self.presentation.reduce(self.diff_free(p))

    def diff_columns(self, n) -> list:
        """Sparse columns of d: A^n -> A^{n+1}, one per normal word of degree n."""
        got = self._dmat.get(n)
        if got is not None:
            return got
        pres = self.presentation
        src = pres.degree_basis(n)
        tgt = pres.degree_basis(n + 1)
        cols = []
        for w in src.normal:
            img = self.diff_free(NcPoly._raw({w: Fraction(1)}))
            if not img:
                cols.append({})
                continue
            if tgt.ideal is None:
                cols.append({tgt.normal_index[v]: c for v, c in img.terms.items()})
            else:
                red = tgt.ideal.reduce({tgt.word_index[v]: c for v, c in img.terms.items()})
                cols.append({tgt.normal_index[tgt.words[k]]: c for k, c in red.items()})
        self._dmat[n] = cols
        return cols

    def boundaries(self, n) -> SparseEchelon:
        """Echelon of B^n = d(A^{n-1}) in normal coordinates of degree n."""
        got = self._images.get(n)
        if got is not None:
            return got
        e = SparseEchelon()
        if n >= 1:
            for col in self.diff_columns(n - 1):
                if col:
                    e.add(col)
        self._images[n] = e
        return e

    def rank_d(self, n) -> int:
        """Rank of d: A^n -> A^{n+1}."""
        return self.boundaries(n + 1).rank if n >= 0 else 0


def check_well_defined(dg: DGAlgebra):
    """Raise unless d preserves the ideal and squares to zero on generators."""
    pres = dg.presentation
    for r in pres.relations:
        if not pres.ideal_contains(dg.diff_free(r)):
            raise IllDefinedDifferential(
                f"d({r.format(pres.names)}) is not in the ideal", relation=r
            )
    for i in range(len(pres.generators)):
        dd = dg.diff(dg.differential[i])
        if dd:
            raise IllDefinedDifferential(
                f"d^2({pres.names[i]}) = {dd.format(pres.names)} is nonzero"
            )


@dataclass
class CohomologyResult:
    degree: int
    dim: int
    representatives: list = field(default_factory=list)
    pivots: list = field(default_factory=list)

    def coordinates(self, dg, z):
        """Coordinates of the class of cocycle ``z`` over the representatives."""
        pres = dg.presentation
        vec = pres.to_vector(z, self.degree) if z else {}
        rem = dg.boundaries(self.degree).reduce(vec)
        coords = [rem.get(p, Fraction(0)) for p in self.pivots]
        # the remainder must be exactly the combination read off at the pivots
        check = dict(rem)
        for c, rep in zip(coords, self.representatives):
            for k, x in pres.to_vector(rep, self.degree).items():
                nv = check.get(k, 0) - c * x
                if nv:
                    check[k] = nv
                else:
                    check.pop(k, None)
        if check:
            raise InternalInvariantError("element is not a cocycle or basis is wrong")
        return coords


def cohomology_dim(dg: DGAlgebra, n: int) -> int:
    dim = dg.presentation.dim(n)
    return dim - dg.rank_d(n) - dg.rank_d(n - 1)


def cohomology(dg: DGAlgebra, n: int, representatives=True) -> CohomologyResult:
    """H^n with canonical representatives.

    Representatives are cocycles supported off the lead columns of B^n,
    brought to reduced echelon form; this basis only depends on Z^n and B^n.
    """
    if n < 0:
        return CohomologyResult(n, 0)
    if not representatives:
        return CohomologyResult(n, cohomology_dim(dg, n))
    got = dg._coh.get(n)
    if got is not None:
        return got
    pres = dg.presentation
    leads = dg.boundaries(n).rows
    cols = dg.diff_columns(n)
    e = SparseEchelon(track=True)
    for c, col in enumerate(cols):
        if c in leads:
            continue
        e.add(col, tag=c)
    kernel = e.dependencies
    basis = canonical_basis(kernel)
    dim = cohomology_dim(dg, n)
    if len(basis) != dim:
        raise InternalInvariantError(
            f"H^{n}: found {len(basis)} representatives, rank count says {dim}"
        )
    reps = [pres.from_vector(v, n) for _, v in basis]
    res = CohomologyResult(n, dim, reps, [p for p, _ in basis])
    dg._coh[n] = res
    return res


def cohomology_algebra(dg: DGAlgebra, cutoff: int):
    """Truncated cohomology algebra on degrees 0..cutoff.

    Products landing above ``cutoff`` are not computed; their index pairs
    are listed in ``out_of_window`` of the result.
    """
    from .frobenius import FiniteGradedAlgebra

    names, degrees, reps, where = [], [], [], []
    results = {}
    for n in range(cutoff + 1):
        h = cohomology(dg, n)
        results[n] = h
        for i, r in enumerate(h.representatives):
            names.append(f"h{n}_{i}")
            degrees.append(n)
            reps.append(r)
            where.append((n, i))
    size = len(names)
    offsets = {}
    for k, (n, i) in enumerate(where):
        offsets.setdefault(n, k)
    table = {}
    missing = set()
    pres = dg.presentation
    for a in range(size):
        for b in range(size):
            d = degrees[a] + degrees[b]
            if d > cutoff:
                missing.add((a, b))
                continue
            prod = pres.multiply(reps[a], reps[b])
            coords = results[d].coordinates(dg, prod)
            row = {offsets[d] + k: c for k, c in enumerate(coords) if c}
            if row:
                table[(a, b)] = row
    # normalise the unit: h0_0 is a multiple of 1
    unit_rep = reps[0]
    scale = unit_rep.constant()
    if scale != 1:
        raise InternalInvariantError("degree-0 representative is not the unit")
    return FiniteGradedAlgebra(
        names=names,
        degrees=degrees,
        table=table,
        unit=0,
        out_of_window=frozenset(missing),
        representatives=reps,
    )


@dataclass
class PresentationReport:
    ok: bool
    dims: list  # (degree, candidate dim, cohomology dim)
    failures: list  # MismatchAt instances

    def raise_for_failure(self):
        if self.failures:
            raise self.failures[0]


def _image_of_word(pres, word, images, cache):
    got = cache.get(word)
    if got is not None:
        return got
    if not word:
        val = NcPoly.one()
    else:
        val = pres.multiply(_image_of_word(pres, word[:-1], images, cache), images[word[-1]])
    cache[word] = val
    return val


def verify_presentation(dg: DGAlgebra, candidate: Presentation, images, cutoff: int):
    """Check that ``candidate`` presents H(dg) through degree ``cutoff``.

    ``images[i]`` is the cocycle representing candidate generator ``i``.
    Checks: the images are cocycles of the right degree, relations map to
    coboundaries, dimensions agree, and the induced map is onto.
    """
    pres = dg.presentation
    images = [pres.reduce(p) for p in images]
    failures = []
    for i, img in enumerate(images):
        deg = candidate.degrees[i]
        if img and pres.poly_degree(img) != deg:
            failures.append(MismatchAt(deg, f"image of {candidate.names[i]} has wrong degree"))
        elif dg.diff(img):
            failures.append(MismatchAt(deg, f"image of {candidate.names[i]} is not a cocycle"))
    if failures:
        return PresentationReport(False, [], failures)

    cache = {}

    def evaluate(p):
        out = NcPoly.zero()
        for w, c in p.terms.items():
            out = out + _image_of_word(pres, w, images, cache).scale(c)
        return out

    for r in candidate.relations:
        d = candidate.poly_degree(r)
        if d > cutoff:
            continue
        val = evaluate(r)
        if dg.boundaries(d).reduce(pres.to_vector(val, d) if val else {}):
            failures.append(MismatchAt(d, "relation image is not a coboundary"))
    dims = []
    for n in range(cutoff + 1):
        cdim = candidate.dim(n)
        hdim = cohomology_dim(dg, n)
        dims.append((n, cdim, hdim))
        if cdim != hdim:
            failures.append(MismatchAt(n, f"dimension {cdim} vs {hdim}"))
            continue
        span = SparseEchelon()
        bnd = dg.boundaries(n)
        for w in candidate.degree_basis(n).normal:
            val = _image_of_word(pres, w, images, cache)
            span.add(bnd.reduce(pres.to_vector(val, n) if val else {}))
        if span.rank != hdim:
            failures.append(MismatchAt(n, "map to cohomology is not onto"))
    failures.sort(key=lambda e: e.degree)
    return PresentationReport(not failures, dims, failures)
