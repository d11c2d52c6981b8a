"""Exact linear algebra over Q.

Dense helpers work on lists of lists of ``Fraction``.  The sparse echelon is
what the per-degree computations use: vectors are ``{column: value}`` dicts
and elimination runs fraction-free on primitive integer rows.
"""
from __future__ import annotations

import heapq
import itertools
import random
from fractions import Fraction
from math import gcd, lcm

from .errors import DimensionExceeded

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not exact, pass int, str or Fraction")
    return Fraction(x)


def as_matrix(rows) -> list[list[Fraction]]:
    return [[as_fraction(x) for x in row] for row in rows]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def matmul(a, b):
    if not a:
        return []
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def rref(m):
    """Reduced row echelon form.  Returns ``(R, pivots)``; zero rows are dropped."""
    rows = [list(r) for r in as_matrix(m)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m) -> int:
    return len(rref(m)[1])


def kernel_basis(m, ncols=None):
    """Basis of ``{x : m x = 0}``, one vector per free column of the RREF."""
    if not m:
        n = ncols or 0
        return identity(n)
    r, piv = rref(m)
    n = len(m[0])
    free = [c for c in range(n) if c not in set(piv)]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, p in zip(r, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def det(m) -> Fraction:
    a = [list(r) for r in as_matrix(m)]
    n = len(a)
    d = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def inverse(m):
    n = len(m)
    aug = [list(r) + e for r, e in zip(as_matrix(m), identity(n))]
    r, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(r) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def solve(m, b):
    """One solution of ``m x = b`` or ``None``."""
    n = len(m[0]) if m else 0
    aug = [list(r) + [as_fraction(y)] for r, y in zip(as_matrix(m), b)]
    r, piv = rref(aug)
    if piv and piv[-1] == n:
        return None
    x = [ZERO] * n
    for row, p in zip(r, piv):
        x[p] = row[n]
    return x


# ---------------------------------------------------------------- sparse


def _integerize(vec):
    """Scale a rational sparse vector to integers.  Returns (int dict, scale)."""
    den = 1
    for x in vec.values():
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    out = {}
    for k, x in vec.items():
        if x:
            out[k] = int(x * den)
    return out, den


class SparseEchelon:
    """Echelon form of a growing span of sparse vectors.

    Each stored row has a lead column (its smallest column) that no other
    row touches at the lead position.  Remainders modulo the span are
    therefore unique: they vanish on every lead column.

    With ``track=True`` every row also records which input tags produced
    it, so dependencies among the inputs can be read off (kernel vectors).
    """

    def __init__(self, track=False):
        self.rows: dict[int, dict[int, int]] = {}
        self.track = track
        self.combos: dict[int, dict] = {}
        self.dependencies: list[dict] = []

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def leads(self):
        return set(self.rows)

    def _eliminate(self, v, combo=None, used=None):
        """Reduce integer dict ``v`` in place.  Returns the accumulated scale."""
        rows = self.rows
        heap = [c for c in v if c in rows]
        heapq.heapify(heap)
        scale = 1
        while heap:
            c = heapq.heappop(heap)
            a = v.get(c)
            if not a:
                continue
            r = rows.get(c)
            if r is None:
                continue
            p = r[c]
            g = gcd(p, a)
            sc = p // g
            t = a // g
            if sc < 0:
                sc, t = -sc, -t
            if sc != 1:
                for k in v:
                    v[k] *= sc
                scale *= sc
                if combo is not None:
                    for k in combo:
                        combo[k] *= sc
                if used is not None:
                    for k in used:
                        used[k] *= sc
            for k, x in r.items():
                nv = v.get(k, 0) - t * x
                if nv:
                    if k not in v and k in rows:
                        heapq.heappush(heap, k)
                    v[k] = nv
                else:
                    v.pop(k, None)
            if combo is not None:
                for k, x in self.combos[c].items():
                    nv = combo.get(k, 0) - t * x
                    if nv:
                        combo[k] = nv
                    else:
                        combo.pop(k, None)
            if used is not None:
                used[c] = used.get(c, 0) + t
        return scale

    def add(self, vec, tag=None) -> bool:
        """Insert a vector.  Returns True when the rank grows."""
        v, den = _integerize(vec)
        combo = None
        if self.track:
            combo = {tag: Fraction(den)}
        self._eliminate(v, combo)
        if not v:
            if combo:
                self.dependencies.append(combo)
            return False
        lead = min(v)
        g = 0
        for x in v.values():
            g = gcd(g, x)
        if v[lead] < 0:
            g = -g
        self.rows[lead] = {k: x // g for k, x in v.items()}
        if combo is not None:
            self.combos[lead] = {k: x / g for k, x in combo.items()}
        return True

    def reduce(self, vec) -> dict:
        """Exact remainder of ``vec`` modulo the span (Fraction values)."""
        v, den = _integerize(vec)
        if not v:
            return {}
        scale = self._eliminate(v)
        m = den * scale
        return {k: Fraction(x, m) for k, x in v.items()}

    def contains(self, vec) -> bool:
        v, _ = _integerize(vec)
        self._eliminate(v)
        return not v

    def express(self, vec):
        """Coefficients over input tags with ``sum c_t * input_t == vec``, or None.

        Only available when tracking.
        """
        if not self.track:
            raise ValueError("express needs a tracking echelon")
        v, den = _integerize(vec)
        used = {}
        scale = self._eliminate(v, used=used)
        if v:
            return None
        m = den * scale
        out = {}
        for lead, coef in used.items():
            if not coef:
                continue
            for tag, x in self.combos[lead].items():
                out[tag] = out.get(tag, 0) + Fraction(coef) * x / m
        return {t: x for t, x in out.items() if x}


def sparse_rank(vectors) -> int:
    e = SparseEchelon()
    for v in vectors:
        e.add(v)
    return e.rank


def canonical_basis(vectors):
    """RREF of a family of sparse vectors as ``[(pivot, row), ...]``."""
    e = SparseEchelon()
    for v in vectors:
        e.add(v)
    done = {}
    # back-substitute from the last pivot down
    for lead in sorted(e.rows, reverse=True):
        row = e.rows[lead]
        piv = row[lead]
        v = {k: Fraction(x, piv) for k, x in row.items()}
        for c, w in done.items():
            a = v.get(c)
            if a:
                for k, x in w.items():
                    nv = v.get(k, 0) - a * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        done[lead] = v
    return [(lead, done[lead]) for lead in sorted(done)]


# ---------------------------------------------------------- polynomials


class MultiPoly:
    """Commutative polynomial over Q in ``nvars`` indeterminates."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = as_fraction(c)
                if c:
                    self.terms[tuple(e)] = c

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs):
        n = len(coeffs)
        p = cls(n)
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                p.terms[tuple(e)] = as_fraction(c)
        return p

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        out = MultiPoly(self.nvars)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly(self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    t.pop(e, None)
        out = MultiPoly(self.nvars)
        out.terms = t
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(self.nvars, other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def evaluate(self, point):
        total = ZERO
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= as_fraction(x) ** k
            total += term
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"l{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def berkowitz_det(m, zero, one):
    """Division-free determinant (Berkowitz) over any commutative ring.

    Ring elements need ``+``, ``-`` and ``*``.
    """
    n = len(m)
    if n == 0:
        return one
    # char poly coefficients of the leading 1x1 block: [1, -a11]
    p = [one, zero - m[0][0]]
    for r in range(1, n):
        a_rr = m[r][r]
        row = [m[r][c] for c in range(r)]
        col = [m[c][r] for c in range(r)]
        # first column of the Toeplitz matrix: 1, -a_rr, -R S, -R A S, ...
        t = [one, zero - a_rr]
        vec = col
        for k in range(r):
            s = zero
            for x, y in zip(row, vec):
                s = s + x * y
            t.append(zero - s)
            if k + 1 < r:
                vec = [
                    _dot(m[i][:r], vec, zero) for i in range(r)
                ]
        # new coefficients: lower-triangular Toeplitz (r+2) x (r+1) times p
        q = []
        for i in range(r + 2):
            s = zero
            for j in range(min(i, r) + 1):
                s = s + t[i - j] * p[j]
            q.append(s)
        p = q
    return p[n] if n % 2 == 0 else zero - p[n]


def _dot(a, b, zero):
    s = zero
    for x, y in zip(a, b):
        s = s + x * y
    return s


def symbolic_det(m, nvars, bound=16):
    """Determinant of a square matrix of MultiPoly entries."""
    n = len(m)
    if n > bound:
        raise DimensionExceeded(f"symbolic determinant of size {n} exceeds {bound}")
    return berkowitz_det(m, MultiPoly(nvars), MultiPoly.const(nvars, 1))


def evaluate_matrix(m, point):
    return [[x.evaluate(point) for x in row] for row in m]


def probably_nonzero_det(m, nvars, trials=20, seed=0):
    """Schwartz-Zippel test: is det(m) not identically zero?

    Returns a point where the determinant is nonzero, or None after
    ``trials`` failures.
    """
    rng = random.Random(seed)
    for _ in range(trials):
        point = [Fraction(rng.getrandbits(64)) for _ in range(nvars)]
        if det(evaluate_matrix(m, point)) != 0:
            return point
    return None


def small_points(nvars):
    """All integer points ordered by height, then lexicographically.

    The value order at each coordinate is 0, 1, -1, 2, -2, ...
    """
    if nvars == 0:
        yield ()
        return

    def rank_of(v):
        return 2 * abs(v) - (1 if v > 0 else 0)

    h = 0
    while True:
        vals = sorted(range(-h, h + 1), key=rank_of)
        for pt in itertools.product(vals, repeat=nvars):
            if max((abs(x) for x in pt), default=0) == h:
                yield tuple(Fraction(x) for x in pt)
        h += 1
