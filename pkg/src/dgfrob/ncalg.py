"""Graded noncommutative polynomials and presented algebras.

A word is a tuple of generator indices.  Words of a fixed degree are
ordered lexicographically on indices (generators in their listed order),
and a quotient ``k<x>/(R)`` is handled one degree at a time: the ideal's
degree-n part is put in echelon form and the words that are not lead
columns are the normal words.  Reduction of any element is its remainder
modulo that echelon, so the normal form is unique.
"""
from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HomogeneityError, SchemaError
from .linalg import SparseEchelon, as_fraction

Word = tuple


class NcPoly:
    """Finite Q-linear combination of words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = as_fraction(c)
                if c:
                    self.terms[tuple(w)] = c

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def one(cls):
        return cls._raw({(): Fraction(1)})

    @classmethod
    def word(cls, w, c=1):
        return cls({tuple(w): c})

    @classmethod
    def scalar(cls, c):
        return cls({(): c})

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NcPoly.scalar(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.scalar(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w, 0) + c
            if s:
                t[w] = s
            else:
                t.pop(w, None)
        return NcPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return NcPoly.scalar(other) - self

    def scale(self, c):
        c = as_fraction(c)
        if not c:
            return NcPoly.zero()
        return NcPoly._raw({w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        """Concatenation product in the free algebra."""
        if not isinstance(other, NcPoly):
            return self.scale(other)
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = t.get(w, 0) + c1 * c2
                if s:
                    t[w] = s
                else:
                    t.pop(w, None)
        return NcPoly._raw(t)

    def __rmul__(self, other):
        return self.scale(other)

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def format(self, names) -> str:
        if not self.terms:
            return "0"
        out = []
        for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "*".join(names[i] for i in w)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"NcPoly({self.format([f'x{i + 1}' for i in range(64)])})"


@dataclass(frozen=True)
class GeneratorSet:
    names: tuple
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.names) != len(self.degrees):
            raise SchemaError("names and degrees differ in length", "generators")
        if len(set(self.names)) != len(self.names):
            raise SchemaError("duplicate generator name", "generators")
        for d in self.degrees:
            if d < 1:
                raise SchemaError("generator degrees must be >= 1", "generators")

    def __len__(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)


@dataclass
class DegreeBasis:
    """Normal words of one degree together with the ideal's echelon there."""

    degree: int
    words: list  # every word of this degree, deglex
    normal: list  # the normal words, deglex
    ideal: SparseEchelon | None  # over indices into ``words``
    word_index: dict = field(repr=False, default_factory=dict)
    normal_index: dict = field(repr=False, default_factory=dict)

    @property
    def dim(self):
        return len(self.normal)

    def projection(self):
        """Matrix (rows = words, columns = normal words) of the reduction map."""
        rows = []
        for w in self.words:
            red = self.reduce_vector({self.word_index[w]: Fraction(1)})
            row = [Fraction(0)] * len(self.normal)
            for k, c in red.items():
                row[self.normal_index[self.words[k]]] = c
            rows.append(row)
        return rows

    def reduce_vector(self, vec):
        if self.ideal is None or not vec:
            return dict(vec)
        return self.ideal.reduce(vec)


class Presentation:
    """``k<generators>/(relations)`` with homogeneous relations."""

    def __init__(self, generators: GeneratorSet, relations=()):
        self.generators = generators
        self.relations = [r for r in relations if r]
        self.degrees = generators.degrees
        self._rel_by_degree: dict[int, list] = {}
        for r in self.relations:
            d = self.poly_degree(r)
            if d < 2:
                raise HomogeneityError("relations must have degree >= 2")
            self._rel_by_degree.setdefault(d, []).append(r)
        self._words: dict[int, list] = {}
        self._bases: dict[int, DegreeBasis] = {}
        self._lock = threading.Lock()

    @property
    def is_free(self):
        return not self.relations

    @property
    def names(self):
        return self.generators.names

    def word_degree(self, w) -> int:
        d = self.degrees
        return sum(d[i] for i in w)

    def poly_degree(self, p) -> int:
        """Degree of a homogeneous element (``-1`` for zero)."""
        degs = {self.word_degree(w) for w in p.terms}
        if len(degs) > 1:
            raise HomogeneityError(f"inhomogeneous element {p.format(self.names)}")
        return degs.pop() if degs else -1

    def components(self, p) -> dict:
        out: dict[int, dict] = {}
        for w, c in p.terms.items():
            out.setdefault(self.word_degree(w), {})[w] = c
        return {d: NcPoly._raw(t) for d, t in out.items()}

    def max_relation_degree(self):
        return max(self._rel_by_degree, default=0)

    def words(self, n) -> list:
        if n < 0:
            return []
        got = self._words.get(n)
        if got is not None:
            return got
        if n == 0:
            out = [()]
        else:
            out = []
            for i, d in enumerate(self.degrees):
                if d <= n:
                    out.extend((i,) + w for w in self.words(n - d))
            out.sort()
        self._words[n] = out
        return out

    def degree_basis(self, n) -> DegreeBasis:
        got = self._bases.get(n)
        if got is not None:
            return got
        with self._lock:
            return self._degree_basis_locked(n)

    def _degree_basis_locked(self, n):
        got = self._bases.get(n)
        if got is not None:
            return got
        # build lower degrees first so the ideal can be propagated upward
        for m in range(0, n):
            if m not in self._bases:
                self._degree_basis_locked(m)
        words = self.words(n)
        windex = {w: i for i, w in enumerate(words)}
        ideal = None
        if not self.is_free and n >= 2:
            ideal = SparseEchelon()
            for r in self._rel_by_degree.get(n, []):
                ideal.add({windex[w]: c for w, c in r.terms.items()})
            for i, d in enumerate(self.degrees):
                lower = self._bases.get(n - d)
                if lower is None or lower.ideal is None:
                    continue
                lw = lower.words
                for row in lower.ideal.rows.values():
                    ideal.add({windex[(i,) + lw[k]]: c for k, c in row.items()})
                    ideal.add({windex[lw[k] + (i,)]: c for k, c in row.items()})
            if not ideal.rows:
                ideal = None
        if ideal is None:
            normal = list(words)
        else:
            leads = ideal.rows
            normal = [w for i, w in enumerate(words) if i not in leads]
        basis = DegreeBasis(
            degree=n,
            words=words,
            normal=normal,
            ideal=ideal,
            word_index=windex,
            normal_index={w: i for i, w in enumerate(normal)},
        )
        self._bases[n] = basis
        return basis

    def dim(self, n) -> int:
        return self.degree_basis(n).dim if n >= 0 else 0

    # -- normal forms

    def reduce(self, p) -> NcPoly:
        """Normal form: a combination of normal words."""
        if self.is_free or not p:
            return p
        out = {}
        for d, comp in self.components(p).items():
            b = self.degree_basis(d)
            if b.ideal is None:
                out.update(comp.terms)
                continue
            red = b.ideal.reduce({b.word_index[w]: c for w, c in comp.terms.items()})
            for k, c in red.items():
                out[b.words[k]] = c
        return NcPoly._raw(out)

    def multiply(self, a, b) -> NcPoly:
        return self.reduce(a * b)

    def ideal_contains(self, p) -> bool:
        return not self.reduce(p)

    def to_vector(self, p, n=None) -> dict:
        """Coordinates of a normal-form element over the normal words of degree n."""
        p = self.reduce(p)
        if n is None:
            n = self.poly_degree(p)
        idx = self.degree_basis(n).normal_index
        return {idx[w]: c for w, c in p.terms.items()}

    def from_vector(self, vec, n) -> NcPoly:
        normal = self.degree_basis(n).normal
        return NcPoly._raw({normal[k]: Fraction(c) for k, c in vec.items() if c})

    def generator(self, i) -> NcPoly:
        return NcPoly.word((i,))


def free_algebra(names, degrees=None) -> Presentation:
    degrees = degrees if degrees is not None else [1] * len(names)
    return Presentation(GeneratorSet(tuple(names), tuple(degrees)))


def all_words_upto(pres, n):
    return list(itertools.chain.from_iterable(pres.words(k) for k in range(n + 1)))
