"""Random generators shared by the property tests and the acceptance runner."""
import random
from fractions import Fraction

from dgfrob.linalg import det
from dgfrob.ncalg import NcPoly
from dgfrob.semifree import HomComplex, augmentation_vector, compose, hom_differential


def random_word(rng, ngens, max_len=5):
    return tuple(rng.randrange(ngens) for _ in range(rng.randint(0, max_len)))


def random_monomial(rng, ngens, max_len=5):
    return NcPoly.word(random_word(rng, ngens, max_len), Fraction(rng.choice([1, -1, 2, -3])))


def leibniz_holds(dg, a, b):
    pres = dg.presentation
    lhs = dg.diff(pres.multiply(a, b))
    sign = -1 if pres.poly_degree(a) % 2 else 1
    rhs = pres.multiply(dg.diff(a), b) + pres.multiply(a, dg.diff(b)).scale(sign)
    return not pres.reduce(lhs - rhs)


def square_zero_holds(dg, a):
    return not dg.diff(dg.diff(a))


def random_coboundary(hc: HomComplex, k, rng, density=0.5):
    """d_Hom of a random element of Hom^{k-1}."""
    n = hc.dim(k - 1)
    vec = {t: Fraction(rng.randint(-3, 3)) for t in range(n) if rng.random() < density}
    return hom_differential(hc.dg, hc.F, hc.from_vector(vec, k - 1), k - 1)


def add_maps(M, N):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(M, N)]


def ext_table_from_maps(dg, F, maps, degrees):
    """Product table read off through the augmentation: (a, b) -> eps(b o a)."""
    top = max(F.degrees)
    table = {}
    for a in range(F.rank):
        for b in range(F.rank):
            k = degrees[a] + degrees[b]
            if not -top <= k <= 0:
                continue
            prod = compose(dg, F, maps[a], degrees[a], maps[b], degrees[b])
            row = {j: c for j, c in augmentation_vector(dg, F, prod, k).items() if c}
            if row:
                table[(a, b)] = row
    return table


def perturbed_table(dg, F, ext, rng, cutoff=None):
    hc = HomComplex(dg, F, cutoff)
    maps = []
    for M, k in zip(ext.cocycle_maps, ext.map_degrees):
        maps.append(add_maps(M, random_coboundary(hc, k, rng)))
    return ext_table_from_maps(dg, F, maps, ext.map_degrees)


def random_basis_change(E, rng, spread=3):
    """Degree-preserving invertible p with f_unit = e_unit."""
    n = E.dim
    p = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for d in sorted(set(E.degrees)):
        block = [i for i in E.indices_of_degree(d) if i != E.unit]
        if not block:
            continue
        while True:
            m = [[rng.randint(-spread, spread) for _ in block] for _ in block]
            if det(m) != 0:
                break
        for r, i in enumerate(block):
            p[i] = [Fraction(0)] * n
            for c, j in enumerate(block):
                p[i][j] = Fraction(m[r][c])
            if d == E.degrees[E.unit]:
                p[i][E.unit] = Fraction(rng.randint(-spread, spread))
    return p


def seeded(seed):
    return random.Random(seed)
