"""Semi-free DG modules, minimal resolutions of k, the Hom complex and Ext.

Module elements are dicts ``{generator index: NcPoly coefficient}``.  A map
of degree k between free modules is a square matrix ``M`` of NcPoly with
``f(e_j) = sum_i M[j][i] e_i`` and ``deg M[j][i] = d_j + k - d_i``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dg import DGAlgebra
from .errors import (
    CutoffTooSmall,
    DegreeMismatch,
    DifferentialNotSquareZero,
    InternalInvariantError,
    NotMinimal,
    NotTriangular,
    SchemaError,
    WindowExceeded,
)
from .frobenius import FiniteGradedAlgebra
from .linalg import SparseEchelon, canonical_basis, inverse
from .ncalg import NcPoly

MAX_GENERATORS = 256


@dataclass
class SemiFreeModule:
    names: list
    degrees: list
    diff: list  # diff[j] = {i: NcPoly}, i < j
    augmentation: int = 0
    weights: list | None = None

    def __post_init__(self):
        if not (len(self.names) == len(self.degrees) == len(self.diff)):
            raise SchemaError("names, degrees and differential rows differ in length", "resolution")

    @property
    def rank(self):
        return len(self.names)

    def coefficient(self, j, i) -> NcPoly:
        return self.diff[j].get(i, NcPoly.zero())

    def copy(self):
        return SemiFreeModule(
            list(self.names),
            list(self.degrees),
            [dict(r) for r in self.diff],
            self.augmentation,
            list(self.weights) if self.weights is not None else None,
        )

    def format_row(self, j, algebra_names) -> str:
        """d(e_j) as one expression over algebra and module generator names."""
        shift = len(algebra_names)
        flat = NcPoly.zero()
        for i, c in self.diff[j].items():
            flat = flat + c * NcPoly.word((shift + i,))
        return flat.format(list(algebra_names) + list(self.names))


def trivial_module() -> SemiFreeModule:
    return SemiFreeModule(["e0"], [0], [{}], 0, [0])


# ------------------------------------------------------------ elements


def _add_into(out, key, poly):
    if not poly:
        return
    cur = out.get(key)
    val = poly if cur is None else cur + poly
    if val:
        out[key] = val
    else:
        out.pop(key, None)


def module_diff(dg: DGAlgebra, F: SemiFreeModule, elem: dict) -> dict:
    """d(sum a_j e_j) = sum d(a_j) e_j + (-1)^|a_j| a_j d(e_j)."""
    pres = dg.presentation
    out = {}
    for j, a in elem.items():
        for d, comp in pres.components(a).items():
            _add_into(out, j, dg.diff(comp))
            sgn = -1 if d % 2 else 1
            for i, c in F.diff[j].items():
                _add_into(out, i, pres.multiply(comp, c).scale(sgn))
    return out


def module_signature(F):
    rows = tuple(
        tuple(sorted((i, frozenset(c.terms.items())) for i, c in row.items())) for row in F.diff
    )
    return (tuple(F.degrees), rows, F.augmentation)


def module_complex(dg, F):
    """Shared ModuleComplex for (dg, F); identical modules reuse their ranks."""
    cache = dg.__dict__.setdefault("_module_complexes", {})
    key = module_signature(F)
    mc = cache.get(key)
    if mc is None:
        mc = cache[key] = ModuleComplex(dg, F)
    return mc


class ModuleComplex:
    """Total-degree components of F with the matrix of d_F, cached."""

    def __init__(self, dg: DGAlgebra, F: SemiFreeModule):
        self.dg = dg
        self.F = F
        self._layout = {}
        self._cols = {}
        self._bnd = {}
        self._coh = {}

    def layout(self, n):
        """Blocks ``(j, offset, DegreeBasis)`` of F^n and its dimension."""
        got = self._layout.get(n)
        if got is not None:
            return got
        blocks = []
        off = 0
        pres = self.dg.presentation
        for j, d in enumerate(self.F.degrees):
            m = n - d
            if m < 0:
                continue
            b = pres.degree_basis(m)
            if b.dim:
                blocks.append((j, off, b))
                off += b.dim
        got = (blocks, off)
        self._layout[n] = got
        return got

    def dim(self, n):
        return self.layout(n)[1]

    def to_vector(self, elem, n) -> dict:
        blocks, _ = self.layout(n)
        pres = self.dg.presentation
        where = {j: (off, b) for j, off, b in blocks}
        out = {}
        for j, a in elem.items():
            a = pres.reduce(a)
            if not a:
                continue
            if j not in where:
                raise InternalInvariantError(f"component on {self.F.names[j]} has no room in degree {n}")
            off, b = where[j]
            for w, c in a.terms.items():
                out[off + b.normal_index[w]] = c
        return out

    def from_vector(self, vec, n) -> dict:
        blocks, _ = self.layout(n)
        out = {}
        for j, off, b in blocks:
            terms = {}
            for k in range(b.dim):
                c = vec.get(off + k)
                if c:
                    terms[b.normal[k]] = Fraction(c)
            if terms:
                out[j] = NcPoly._raw(terms)
        return out

    def columns(self, n):
        """Sparse columns of d_F: F^n -> F^{n+1}."""
        got = self._cols.get(n)
        if got is not None:
            return got
        dg = self.dg
        pres = dg.presentation
        blocks, _ = self.layout(n)
        tblocks, _ = self.layout(n + 1)
        toff = {j: (off, b) for j, off, b in tblocks}
        cols = []
        for j, off, b in blocks:
            m = b.degree
            dcols = dg.diff_columns(m)
            sgn = -1 if m % 2 else 1
            row = self.F.diff[j]
            for k, w in enumerate(b.normal):
                col = {}
                if dcols[k] and j in toff:
                    o2, _ = toff[j]
                    for idx, c in dcols[k].items():
                        col[o2 + idx] = c
                for i, coef in row.items():
                    prod = pres.multiply(NcPoly._raw({w: Fraction(1)}), coef)
                    if not prod:
                        continue
                    o2, b2 = toff[i]
                    for v, c in prod.terms.items():
                        key = o2 + b2.normal_index[v]
                        s = col.get(key, 0) + sgn * c
                        if s:
                            col[key] = s
                        else:
                            col.pop(key, None)
                cols.append(col)
        self._cols[n] = cols
        return cols

    def boundaries(self, n) -> SparseEchelon:
        got = self._bnd.get(n)
        if got is not None:
            return got
        e = SparseEchelon()
        for col in self.columns(n - 1):
            if col:
                e.add(col)
        self._bnd[n] = e
        return e

    def rank_d(self, n):
        return self.boundaries(n + 1).rank if self.dim(n) else 0

    def cohomology_dim(self, n):
        return self.dim(n) - self.rank_d(n) - self.rank_d(n - 1)

    def cohomology_reps(self, n):
        """Canonical cocycles spanning H^n(F), as module elements."""
        got = self._coh.get(n)
        if got is not None:
            return got
        leads = self.boundaries(n).rows
        e = SparseEchelon(track=True)
        for c, col in enumerate(self.columns(n)):
            if c not in leads:
                e.add(col, tag=c)
        basis = canonical_basis(e.dependencies)
        if len(basis) != self.cohomology_dim(n):
            raise InternalInvariantError(f"H^{n}(F): representative count disagrees with ranks")
        reps = [self.from_vector(v, n) for _, v in basis]
        self._coh[n] = reps
        return reps


# ------------------------------------------------------------ validation


def check_semifree(dg: DGAlgebra, F: SemiFreeModule, minimal=True):
    """Raise a witness-carrying error unless F is (minimal) semi-free."""
    pres = dg.presentation
    if not 0 <= F.augmentation < F.rank:
        raise DegreeMismatch("augmentation index out of range")
    if F.degrees[F.augmentation] != 0 or F.diff[F.augmentation]:
        raise DegreeMismatch("augmentation generator must have degree 0 and zero differential")
    for j, row in enumerate(F.diff):
        for i, c in row.items():
            if not 0 <= i < j:
                raise NotTriangular(f"d({F.names[j]}) involves {F.names[i] if 0 <= i < F.rank else i}")
            want = F.degrees[j] + 1 - F.degrees[i]
            for d in pres.components(c):
                if d != want:
                    raise DegreeMismatch(
                        f"coefficient of {F.names[i]} in d({F.names[j]}) has degree {d}, expected {want}"
                    )
            if minimal and pres.reduce(c).constant():
                raise NotMinimal(f"coefficient of {F.names[i]} in d({F.names[j]}) has a constant term")
    for j in range(F.rank):
        dd = module_diff(dg, F, F.diff[j])
        if dd:
            i = min(dd)
            raise DifferentialNotSquareZero(
                f"d^2({F.names[j]}) has coefficient {dd[i].format(pres.names)} on {F.names[i]}"
            )
    return True


def resolution_dims(dg, F, cutoff):
    mc = module_complex(dg, F)
    return [mc.cohomology_dim(n) for n in range(cutoff + 1)]


def check_resolution(dg: DGAlgebra, F: SemiFreeModule, cutoff: int) -> bool:
    """H^0(F) = k spanned by the augmentation generator, H^n(F) = 0 for 1 <= n <= cutoff."""
    mc = module_complex(dg, F)
    if mc.cohomology_dim(0) != 1:
        return False
    # the augmentation generator must carry the surviving class
    reps = mc.cohomology_reps(0)
    if F.augmentation not in reps[0]:
        return False
    return all(mc.cohomology_dim(n) == 0 for n in range(1, cutoff + 1))


# ------------------------------------------------------------ resolution


def _weight(dg, F, z):
    pres = dg.presentation
    w = 0
    for i, a in z.items():
        d = pres.poly_degree(a)
        w = max(w, d + F.weights[i])
    return w


def resolve_trivial(dg: DGAlgebra, cutoff: int, max_generators=MAX_GENERATORS) -> SemiFreeModule:
    """Minimal semi-free resolution of k by killing cocycles, lowest degree first.

    The weight of a generator is the largest ``deg(a_i) + weight(e_i)`` over
    the terms of its differential; a generator heavier than ``cutoff`` means
    the window is too small to certify anything, and CutoffTooSmall carries
    the partial module.
    """
    F = trivial_module()
    stage = 0
    while True:
        mc = module_complex(dg, F)
        target = None
        for n in range(1, cutoff + 1):
            if mc.cohomology_dim(n):
                target = n
                break
        if target is None:
            return F
        stage += 1
        reps = mc.cohomology_reps(target)
        new = F.copy()
        for idx, z in enumerate(reps):
            w = _weight(dg, F, z)
            new.names.append(f"g{stage}_{idx}")
            new.degrees.append(target - 1)
            new.diff.append(dict(z))
            new.weights.append(w)
            if w > cutoff or new.rank > max_generators:
                raise CutoffTooSmall(
                    f"generator g{stage}_{idx} has weight {w} beyond cutoff {cutoff}", partial=new
                )
        F = new


def is_koszul(F: SemiFreeModule) -> bool:
    return all(d == 0 for d in F.degrees)


@dataclass
class SmoothnessReport:
    finite_basis_found: bool
    basis_size: int
    certified_to: int
    margin: int
    complete: bool = True
    resolution: SemiFreeModule | None = field(default=None, repr=False)


def stability_margin(dg: DGAlgebra) -> int:
    return dg.presentation.max_relation_degree() + 1


def smoothness_report(dg: DGAlgebra, cutoff: int, F: SemiFreeModule | None = None) -> SmoothnessReport:
    """Bounded certificate: a finite semi-basis that stopped growing before the window's top.

    A generator of degree d kills cohomology in total degree d + 1; the
    basis counts as found when that never happens in the top ``margin``
    degrees of the window.  Weights only guard termination.
    """
    margin = stability_margin(dg)
    try:
        if F is None:
            F = resolve_trivial(dg, cutoff)
    except CutoffTooSmall as exc:
        return SmoothnessReport(False, exc.partial.rank, cutoff, margin, False, exc.partial)
    late = [
        j for j, d in enumerate(F.degrees)
        if j != F.augmentation and cutoff - margin < d + 1 <= cutoff
    ]
    return SmoothnessReport(not late, F.rank, cutoff, margin, True, F)


# ------------------------------------------------------------ Hom complex


class HomComplex:
    """Hom_A(F, F) in degree k: entries (j, i, normal word of degree d_j + k - d_i)."""

    def __init__(self, dg: DGAlgebra, F: SemiFreeModule, cutoff: int | None = None):
        self.dg = dg
        self.F = F
        self.cutoff = cutoff
        self._basis = {}
        self._echelons = {}

    def basis(self, k):
        got = self._basis.get(k)
        if got is not None:
            return got
        pres = self.dg.presentation
        F = self.F
        out = []
        for j, dj in enumerate(F.degrees):
            for i, di in enumerate(F.degrees):
                m = dj + k - di
                if m < 0:
                    continue
                if self.cutoff is not None and m > self.cutoff:
                    raise WindowExceeded(f"Hom^{k} needs algebra degree {m} beyond cutoff {self.cutoff}")
                for w in pres.degree_basis(m).normal:
                    out.append((j, i, w))
        index = {b: t for t, b in enumerate(out)}
        self._basis[k] = (out, index)
        return out, index

    def dim(self, k):
        return len(self.basis(k)[0])

    def zero_map(self):
        n = self.F.rank
        return [[NcPoly.zero() for _ in range(n)] for _ in range(n)]

    def to_vector(self, M, k):
        _, index = self.basis(k)
        pres = self.dg.presentation
        out = {}
        for j, row in enumerate(M):
            for i, a in enumerate(row):
                a = pres.reduce(a)
                for w, c in a.terms.items():
                    key = (j, i, w)
                    if key not in index:
                        raise InternalInvariantError(f"entry ({j},{i}) has the wrong degree for Hom^{k}")
                    out[index[key]] = c
        return out

    def from_vector(self, vec, k):
        basis, _ = self.basis(k)
        M = self.zero_map()
        for t, c in vec.items():
            if c:
                j, i, w = basis[t]
                M[j][i] = M[j][i] + NcPoly._raw({w: Fraction(c)})
        return M

    def d(self, M, k):
        """d_Hom(f) = d_F f - (-1)^k f d_F."""
        return hom_differential(self.dg, self.F, M, k)

    def columns(self, k):
        basis, _ = self.basis(k)
        cols = []
        for j, i, w in basis:
            M = self.zero_map()
            M[j][i] = NcPoly._raw({w: Fraction(1)})
            cols.append(self.to_vector(self.d(M, k), k + 1))
        return cols

    def boundaries(self, k):
        got = self._echelons.get(k)
        if got is None:
            got = SparseEchelon()
            for col in self.columns(k - 1):
                if col:
                    got.add(col)
            self._echelons[k] = got
        return got


def hom_differential(dg, F, M, k):
    pres = dg.presentation
    n = F.rank
    degs = F.degrees
    out = [[NcPoly.zero() for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for i in range(n):
            a = M[j][i]
            if not a:
                continue
            # d_F o f
            out[j][i] = out[j][i] + dg.diff(a)
            sgn = -1 if (degs[j] + k - degs[i]) % 2 else 1
            for l, c in F.diff[i].items():
                out[j][l] = out[j][l] + pres.multiply(a, c).scale(sgn)
    fsign = -1 if k % 2 else 1
    for jp in range(n):
        for m, c in F.diff[jp].items():
            # f o d_F: d(e_jp) = sum c e_m, f(c e_m) = (-1)^{k|c|} c f(e_m)
            dc = degs[jp] + 1 - degs[m]
            sgn = -1 if (k * dc) % 2 else 1
            for l in range(n):
                b = M[m][l]
                if b:
                    out[jp][l] = out[jp][l] - pres.multiply(c, b).scale(sgn * fsign)
    return out


def compose(dg, F, Mf, kf, Mg, kg):
    """Matrix of g o f (apply f first).  kf, kg are the map degrees."""
    pres = dg.presentation
    n = F.rank
    degs = F.degrees
    out = [[NcPoly.zero() for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for i in range(n):
            a = Mf[j][i]
            if not a:
                continue
            sgn = -1 if (kg * (degs[j] + kf - degs[i])) % 2 else 1
            for l in range(n):
                b = Mg[i][l]
                if b:
                    out[j][l] = out[j][l] + pres.multiply(a, b).scale(sgn)
    return out


@dataclass
class HomCohomology:
    degree: int
    dim: int
    representatives: list  # matrices
    pivots: list


def hom_cohomology(dg, F, k, cutoff=None, complex_=None) -> HomCohomology:
    hc = complex_ or HomComplex(dg, F, cutoff)
    leads = hc.boundaries(k).rows
    e = SparseEchelon(track=True)
    for c, col in enumerate(hc.columns(k)):
        if c not in leads:
            e.add(col, tag=c)
    basis = canonical_basis(e.dependencies)
    reps = [hc.from_vector(v, k) for _, v in basis]
    return HomCohomology(k, len(reps), reps, [p for p, _ in basis])


def augmentation_vector(dg, F, M, k):
    """epsilon o f on the generators of degree -k: constant terms of column ``augmentation``."""
    a = F.augmentation
    gens = [j for j, d in enumerate(F.degrees) if d == -k]
    return {j: dg.presentation.reduce(M[j][a]).constant() for j in gens}


@dataclass
class ExtAlgebra:
    algebra: FiniteGradedAlgebra
    cocycle_maps: list
    map_degrees: list


def identity_map(F):
    n = F.rank
    return [[NcPoly.one() if i == j else NcPoly.zero() for i in range(n)] for j in range(n)]


def ext_algebra(dg: DGAlgebra, F: SemiFreeModule, cutoff: int | None = None) -> ExtAlgebra:
    """Ext = H(Hom_A(F, F)) in the basis dual to the generators of F.

    The class dual to generator j has degree -d_j.  The product of classes
    a and b is the class of b o a (a is applied first).  Coordinates of a
    product are read off through the augmentation and cross-checked by
    projecting modulo Hom coboundaries.
    """
    check_semifree(dg, F, minimal=True)
    hc = HomComplex(dg, F, cutoff)
    n = F.rank
    top = max(F.degrees)
    maps = [None] * n
    proj = {}
    for k in range(-top, 1):
        gens = [j for j in range(n) if F.degrees[j] == -k]
        h = hom_cohomology(dg, F, k, complex_=hc)
        if h.dim != len(gens):
            raise InternalInvariantError(
                f"Ext^{k} has dimension {h.dim} but F has {len(gens)} generators of degree {-k}"
            )
        if not gens:
            continue
        R = [[augmentation_vector(dg, F, rep, k)[j] for j in gens] for rep in h.representatives]
        Rinv = inverse(R)
        for a, j in enumerate(gens):
            M = hc.zero_map()
            for r, rep in enumerate(h.representatives):
                c = Rinv[a][r]
                if c:
                    for x in range(n):
                        for y in range(n):
                            if rep[x][y]:
                                M[x][y] = M[x][y] + rep[x][y].scale(c)
            maps[j] = M
        proj[k] = (h, R, gens)
    degrees = [-d for d in F.degrees]
    table = {}
    for a in range(n):
        for b in range(n):
            k = degrees[a] + degrees[b]
            if k not in proj:
                continue
            prod = compose(dg, F, maps[a], degrees[a], maps[b], degrees[b])
            eps = augmentation_vector(dg, F, prod, k)
            # projection route: remainder modulo coboundaries, then coordinates
            h, R, gens = proj[k]
            vec = hc.to_vector(prod, k)
            if hc.to_vector(hom_differential(dg, F, prod, k), k + 1):
                raise InternalInvariantError("composite of cocycles is not a cocycle")
            rem = hc.boundaries(k).reduce(vec)
            coords = [rem.get(p, Fraction(0)) for p in h.pivots]
            via_proj = {}
            for r, c in enumerate(coords):
                for t, j in enumerate(gens):
                    if c and R[r][t]:
                        via_proj[j] = via_proj.get(j, 0) + c * R[r][t]
            via_eps = {j: c for j, c in eps.items() if c}
            if {j: c for j, c in via_proj.items() if c} != via_eps:
                raise InternalInvariantError(f"Ext product ({a},{b}) disagrees between routes")
            if via_eps:
                table[(a, b)] = via_eps
    names = [f"{x}*" for x in F.names]
    alg = FiniteGradedAlgebra(names, degrees, table, unit=F.augmentation)
    return ExtAlgebra(alg, maps, degrees)


def comparison_map(dg: DGAlgebra, F: SemiFreeModule, G: SemiFreeModule, cutoff: int):
    """Chain map phi: F -> G over the identity of k, as a matrix over A.

    ``phi(e_j) = sum_i Phi[j][i] g_i``; built generator by generator by
    solving d_G(y) = phi(d_F e_j).
    """
    pres = dg.presentation
    mg = module_complex(dg, G)
    Phi = [dict() for _ in range(F.rank)]
    for j in range(F.rank):
        if j == F.augmentation:
            Phi[j] = {G.augmentation: NcPoly.one()}
            continue
        t = {}
        for i, c in F.diff[j].items():
            for l, b in Phi[i].items():
                _add_into(t, l, pres.multiply(c, b))
        n = F.degrees[j]
        if n + 1 > cutoff + 1:
            raise WindowExceeded("comparison map needs degrees beyond the window")
        target = mg.to_vector(t, n + 1)
        e = SparseEchelon(track=True)
        for c, col in enumerate(mg.columns(n)):
            e.add(col, tag=c)
        sol = e.express(target)
        if sol is None:
            raise InternalInvariantError(f"cannot lift {F.names[j]} along G")
        y = mg.from_vector(sol, n)
        if n == 0:
            y.pop(G.augmentation, None)
        Phi[j] = y
    return Phi


def constant_part(F, G, Phi):
    """Matrix C[j][i] = constant term of Phi[j][i] (nonzero only when d_j = d'_i)."""
    return [[Phi[j].get(i, NcPoly.zero()).constant() for i in range(G.rank)] for j in range(F.rank)]
