"""Finite-dimensional graded algebras: Frobenius and symmetric tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DimensionExceeded,
    GradingViolation,
    NotAssociative,
    NotAutomorphism,
    UnitViolation,
    WindowExceeded,
)
from .linalg import (
    MultiPoly,
    ZERO,
    as_fraction,
    det,
    evaluate_matrix,
    inverse,
    kernel_basis,
    matmul,
    probably_nonzero_det,
    small_points,
    symbolic_det,
    transpose,
)

DET_BOUND = 16


@dataclass
class FiniteGradedAlgebra:
    """Structure constants ``e_i e_j = sum_k table[(i, j)][k] e_k``.

    The table is sparse: missing pairs multiply to zero.  Pairs listed in
    ``out_of_window`` were never computed (truncated algebras only).
    """

    names: list
    degrees: list
    table: dict
    unit: int = 0
    out_of_window: frozenset = frozenset()
    representatives: list | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.names = list(self.names)
        self.degrees = [int(d) for d in self.degrees]
        clean = {}
        for key, row in self.table.items():
            row = {int(k): as_fraction(c) for k, c in row.items() if c}
            if row:
                clean[tuple(key)] = row
        self.table = clean

    @property
    def dim(self):
        return len(self.names)

    def c(self, i, j, k) -> Fraction:
        return self.table.get((i, j), {}).get(k, ZERO)

    def product(self, i, j) -> dict:
        if (i, j) in self.out_of_window:
            raise WindowExceeded(f"product {self.names[i]}*{self.names[j]} lies outside the window")
        return self.table.get((i, j), {})

    def multiply(self, a: dict, b: dict) -> dict:
        out = {}
        for i, x in a.items():
            if not x:
                continue
            for j, y in b.items():
                if not y:
                    continue
                for k, z in self.product(i, j).items():
                    s = out.get(k, 0) + x * y * z
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def dims_by_degree(self) -> dict:
        out = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def indices_of_degree(self, d):
        return [i for i, e in enumerate(self.degrees) if e == d]

    def ungraded(self):
        return FiniteGradedAlgebra(self.names, [0] * self.dim, self.table, self.unit)

    def change_basis(self, p):
        """Algebra in the basis ``f_i = sum_a p[i][a] e_a`` (p invertible)."""
        n = self.dim
        q = inverse(p)
        table = {}
        for i in range(n):
            for j in range(n):
                a = {k: x for k, x in enumerate(p[i]) if x}
                b = {k: x for k, x in enumerate(p[j]) if x}
                prod = self.multiply(a, b)
                row = {}
                for k, x in prod.items():
                    for l, y in enumerate(q[k]):
                        if y:
                            row[l] = row.get(l, 0) + x * y
                row = {l: x for l, x in row.items() if x}
                if row:
                    table[(i, j)] = row
        unit_vec = [ZERO] * n
        unit_vec[self.unit] = Fraction(1)
        # express the unit in the new basis
        coords = [sum((unit_vec[k] * q[k][l] for k in range(n)), ZERO) for l in range(n)]
        nz = [l for l, x in enumerate(coords) if x]
        if len(nz) != 1 or coords[nz[0]] != 1:
            raise UnitViolation("basis change must keep the unit as a basis vector")
        return FiniteGradedAlgebra(self.names, self.degrees, table, nz[0])


def validate(E: FiniteGradedAlgebra):
    n = E.dim
    if not 0 <= E.unit < n:
        raise UnitViolation(f"unit index {E.unit} out of range")
    for (i, j), row in E.table.items():
        for k in row:
            if not (0 <= k < n and 0 <= i < n and 0 <= j < n):
                raise GradingViolation(f"index out of range in product ({i}, {j}) -> {k}")
            if E.degrees[k] != E.degrees[i] + E.degrees[j]:
                raise GradingViolation(
                    f"{E.names[i]}*{E.names[j]} has a component on {E.names[k]} "
                    f"of the wrong degree ({i}, {j}, {k})"
                )
    if E.degrees[E.unit] != 0:
        raise UnitViolation("the unit must have degree 0")
    u = E.unit
    for i in range(n):
        if E.table.get((u, i), {}) != {i: 1} or E.table.get((i, u), {}) != {i: 1}:
            raise UnitViolation(f"unit does not act as identity on {E.names[i]} ({i})")
    for i in range(n):
        for j in range(n):
            if (i, j) in E.out_of_window:
                continue
            left_ij = E.table.get((i, j), {})
            for k in range(n):
                if (j, k) in E.out_of_window:
                    continue
                try:
                    lhs = E.multiply(left_ij, {k: Fraction(1)})
                    rhs = E.multiply({i: Fraction(1)}, E.table.get((j, k), {}))
                except WindowExceeded:
                    continue
                if lhs != rhs:
                    raise NotAssociative((i, j, k))
    return True


@dataclass
class FrobeniusReport:
    is_frobenius: bool
    shift: int | None = None
    socle_degree: int | None = None
    witness_functional: list | None = None
    gram: list | None = None
    method: str = "symbolic"
    is_graded_symmetric: bool = False
    symmetric_witness: list | None = None
    nakayama: list | None = None
    graded: bool = True


def _sign(E, i, j, graded):
    if not graded:
        return 1
    return -1 if (E.degrees[i] * E.degrees[j]) % 2 else 1


def _gram_from_params(E, support, basis_vectors):
    """Gram matrix of MultiPoly entries for lambda = sum_m t_m V_m on ``support``."""
    nv = len(basis_vectors)
    n = E.dim
    gram = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = E.table.get((i, j), {})
            coeffs = []
            for v in basis_vectors:
                coeffs.append(sum((prod.get(k, ZERO) * x for k, x in zip(support, v)), ZERO))
            row.append(MultiPoly.linear(coeffs) if nv else MultiPoly(0))
        gram.append(row)
    return gram


def _nonvanishing(gram, nvars, seed, bound):
    """(is det(gram) not identically zero, method)."""
    try:
        d = symbolic_det(gram, nvars, bound)
        return (not d.is_zero()), "symbolic"
    except DimensionExceeded:
        return probably_nonzero_det(gram, nvars, seed=seed) is not None, "probabilistic"


def _first_witness(gram, nvars):
    for pt in small_points(nvars):
        if det(evaluate_matrix(gram, pt)) != 0:
            return list(pt)
    raise AssertionError("unreachable: determinant is not identically zero")


def _dimension_symmetric(E, s, degrees):
    dims = {}
    for d in degrees:
        dims[d] = dims.get(d, 0) + 1
    return all(dims.get(s - d, 0) == m for d, m in dims.items())


def _full_functional(E, support, values):
    lam = [ZERO] * E.dim
    for k, x in zip(support, values):
        lam[k] = Fraction(x)
    return lam


def gram_matrix(E, lam):
    """G[i][j] = lambda(e_i e_j)."""
    n = E.dim
    return [
        [sum((c * lam[k] for k, c in E.table.get((i, j), {}).items()), ZERO) for j in range(n)]
        for i in range(n)
    ]


def _socle_candidates(E, graded):
    degrees = E.degrees if graded else [0] * E.dim
    for s in sorted(set(degrees)):
        if _dimension_symmetric(E, s, degrees):
            yield s, [i for i, d in enumerate(degrees) if d == s]


def frobenius_test(E: FiniteGradedAlgebra, graded=True, seed=0, bound=DET_BOUND) -> FrobeniusReport:
    """Graded Frobenius test on the degrees present in E.

    With ``graded=False`` every basis element is treated as degree 0.
    """
    if E.out_of_window:
        raise WindowExceeded("algebra is truncated; the Frobenius test needs all products")
    for s, support in _socle_candidates(E, graded):
        ident = [[Fraction(int(a == b)) for b in range(len(support))] for a in range(len(support))]
        gram = _gram_from_params(E, support, ident)
        ok, method = _nonvanishing(gram, len(support), seed, bound)
        if not ok:
            continue
        point = _first_witness(gram, len(support))
        lam = _full_functional(E, support, point)
        return FrobeniusReport(
            is_frobenius=True,
            shift=-s,
            socle_degree=s,
            witness_functional=lam,
            gram=gram_matrix(E, lam),
            method=method,
            graded=graded,
        )
    return FrobeniusReport(is_frobenius=False, graded=graded)


def symmetric_test(E: FiniteGradedAlgebra, graded=True, seed=0, bound=DET_BOUND):
    """Is there a (graded-)symmetric nondegenerate associative form?

    Returns ``(verdict, witness_or_None)``.
    """
    if E.out_of_window:
        raise WindowExceeded("algebra is truncated; the symmetric test needs all products")
    n = E.dim
    for s, support in _socle_candidates(E, graded):
        constraints = []
        for i in range(n):
            for j in range(i, n):
                sg = _sign(E, i, j, graded)
                a = E.table.get((i, j), {})
                b = E.table.get((j, i), {})
                row = [a.get(k, ZERO) - sg * b.get(k, ZERO) for k in support]
                if any(row):
                    constraints.append(row)
        if constraints:
            params = kernel_basis(constraints)
        else:
            params = [[Fraction(int(a == b)) for b in range(len(support))] for a in range(len(support))]
        if not params:
            continue
        gram = _gram_from_params(E, support, params)
        ok, _ = _nonvanishing(gram, len(params), seed, bound)
        if not ok:
            continue
        t = _first_witness(gram, len(params))
        values = [sum((tm * v[k] for tm, v in zip(t, params)), ZERO) for k in range(len(support))]
        return True, _full_functional(E, support, values)
    return False, None


def nakayama(E: FiniteGradedAlgebra, lam, graded=True) -> list:
    """mu with <mu(e_i), e_j> = (-1)^{|e_i||e_j|} <e_j, e_i>.  Row i is mu(e_i).

    Without grading the sign is dropped and mu = G^T G^{-1}.
    """
    g = gram_matrix(E, lam)
    try:
        gi = inverse(g)
    except ZeroDivisionError:
        raise NotAutomorphism("functional is degenerate") from None
    n = E.dim
    gt = transpose(g)
    if graded:
        gt = [[gt[i][j] * _sign(E, i, j, True) for j in range(n)] for i in range(n)]
    mu = matmul(gt, gi)

    def apply(vec):
        out = {}
        for i, x in vec.items():
            for k, y in enumerate(mu[i]):
                if y:
                    out[k] = out.get(k, 0) + x * y
        return {k: x for k, x in out.items() if x}

    if apply({E.unit: Fraction(1)}) != {E.unit: Fraction(1)}:
        raise NotAutomorphism("mu does not fix the unit")
    for i in range(n):
        for j in range(n):
            if apply(E.table.get((i, j), {})) != E.multiply(apply({i: Fraction(1)}), apply({j: Fraction(1)})):
                raise NotAutomorphism(f"mu is not multiplicative on ({i}, {j})")
    for i in range(n if graded else 0):
        for k, y in enumerate(mu[i]):
            if y and E.degrees[k] != E.degrees[i]:
                raise NotAutomorphism("mu does not preserve degrees")
    return mu


def analyze(E: FiniteGradedAlgebra, graded=True, seed=0, bound=DET_BOUND) -> FrobeniusReport:
    """Frobenius test, symmetric test and Nakayama automorphism together."""
    validate(E)
    rep = frobenius_test(E, graded=graded, seed=seed, bound=bound)
    if rep.is_frobenius:
        sym, wit = symmetric_test(E, graded=graded, seed=seed, bound=bound)
        rep.is_graded_symmetric = sym
        rep.symmetric_witness = wit
        rep.nakayama = nakayama(E, rep.witness_functional, graded=graded)
    return rep
