"""JSON input documents and the expression syntax for noncommutative polynomials.

Expressions: ``*`` multiplies, ``+``/``-`` add, coefficients are integers or
``p/q``, ``1`` is the unit word, ``x^3`` is shorthand for ``x*x*x`` and
parentheses group.  Example: ``x1*x3 + x3*x1 - 3/2*x2^2``.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from dataclasses import field as _field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .dg import DGAlgebra
from .errors import HomogeneityError, ParseError, SchemaError
from .frobenius import FiniteGradedAlgebra
from .ncalg import GeneratorSet, NcPoly, Presentation
from .semifree import SemiFreeModule

KINDS = ("dg-algebra", "graded-algebra", "structure-constants")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, sym = m.groups()
        col = m.start(m.lastindex) + 1
        if num is not None:
            out.append(("num", int(num), col))
        elif name is not None:
            out.append(("name", name, col))
        elif sym is not None and sym.strip():
            if sym not in "+-*/^()":
                raise ParseError(f"unexpected character {sym!r} in {text!r}", 1, col)
            out.append((sym, sym, col))
        pos = m.end()
    out.append(("end", None, len(text) + 1))
    return out


class _Parser:
    def __init__(self, text, symbols):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.symbols = symbols

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        t = self.toks[self.i]
        if kind is not None and t[0] != kind:
            raise ParseError(f"expected {kind!r} in {self.text!r}", 1, t[2])
        self.i += 1
        return t

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError(f"empty expression {self.text!r}", 1, 1)
        val = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected {t[1]!r} in {self.text!r}", 1, t[2])
        return val

    def expr(self):
        val = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            val = val + t if op == "+" else val - t
        return val

    def term(self):
        val = self.factor()
        while self.peek()[0] == "*":
            self.take()
            val = val * self.factor()
        return val

    def factor(self):
        t = self.peek()
        if t[0] in ("+", "-"):
            self.take()
            val = self.factor()
            return -val if t[0] == "-" else val
        if t[0] == "num":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                d = self.take("num")
                if d[1] == 0:
                    raise ParseError(f"zero denominator in {self.text!r}", 1, d[2])
                base = NcPoly.scalar(Fraction(t[1], d[1]))
            else:
                base = NcPoly.scalar(t[1])
        elif t[0] == "name":
            self.take()
            if t[1] not in self.symbols:
                raise SchemaError(f"unknown generator {t[1]!r} in {self.text!r}")
            base = self.symbols[t[1]]
        elif t[0] == "(":
            self.take()
            base = self.expr()
            self.take(")")
        else:
            raise ParseError(f"unexpected {t[1]!r} in {self.text!r}", 1, t[2])
        if self.peek()[0] == "^":
            self.take()
            e = self.take("num")[1]
            out = NcPoly.one()
            for _ in range(e):
                out = out * base
            base = out
        return base


def parse_expression(text, names) -> NcPoly:
    """Parse ``text`` over generators ``names`` (index i <-> names[i])."""
    if not isinstance(text, str):
        raise SchemaError(f"expression must be a string, got {type(text).__name__}")
    symbols = {n: NcPoly.word((i,)) for i, n in enumerate(names)}
    return _Parser(text, symbols).parse()


def format_fraction(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(x, fieldname="value") -> Fraction:
    if isinstance(x, bool):
        raise SchemaError("booleans are not numbers", fieldname)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise SchemaError(f"not an exact rational: {x!r}", fieldname)


# ------------------------------------------------------------ documents


@dataclass
class CohomologyPresentation:
    """A candidate presentation of H(A) with cocycle images of its generators."""

    generators: list  # (name, degree)
    relations: list  # NcPoly over the candidate generators
    images: list  # NcPoly over the algebra generators, one per candidate generator

    def presentation(self) -> Presentation:
        names = tuple(n for n, _ in self.generators)
        degs = tuple(d for _, d in self.generators)
        return Presentation(GeneratorSet(names, degs), self.relations)


@dataclass
class InputDocument:
    kind: str
    field: str = "Q"
    name: str = ""
    description: str = ""
    generators: list = _field(default_factory=list)  # (name, degree)
    relations: list = _field(default_factory=list)
    differential: dict = _field(default_factory=dict)  # name -> NcPoly
    resolution: SemiFreeModule | None = None
    cohomology_presentation: CohomologyPresentation | None = None
    basis: list = _field(default_factory=list)
    degrees: list = _field(default_factory=list)
    unit: str = ""
    table: dict = _field(default_factory=dict)  # (i, j) -> {k: Fraction}

    @property
    def generator_names(self):
        return [n for n, _ in self.generators]

    def presentation(self) -> Presentation:
        names = tuple(self.generator_names)
        degs = tuple(d for _, d in self.generators)
        return Presentation(GeneratorSet(names, degs), self.relations)

    def dg_algebra(self, check=True) -> DGAlgebra:
        if self.kind == "structure-constants":
            raise SchemaError("structure constants do not describe a DG algebra", "kind")
        pres = self.presentation()
        diff = [self.differential.get(n, NcPoly.zero()) for n in self.generator_names]
        return DGAlgebra(pres, diff, check=check)

    def algebra(self) -> FiniteGradedAlgebra:
        if self.kind != "structure-constants":
            raise SchemaError("not a structure-constants document", "kind")
        return FiniteGradedAlgebra(
            list(self.basis), list(self.degrees), dict(self.table), self.basis.index(self.unit)
        )


def _require(obj, key, typ, where=""):
    path = f"{where}.{key}" if where else key
    if key not in obj:
        raise SchemaError("missing field", path)
    val = obj[key]
    if not isinstance(val, typ) or isinstance(val, bool) and typ is not bool:
        raise SchemaError(f"expected {getattr(typ, '__name__', typ)}", path)
    return val


def _check_keys(obj, allowed, where):
    for k in obj:
        if k not in allowed:
            raise SchemaError("unknown field", f"{where}.{k}" if where else k)


def _parse_in_field(text, names, path):
    try:
        return parse_expression(text, names)
    except SchemaError as exc:
        raise SchemaError(str(exc), path) from None
    except ParseError as exc:
        raise ParseError(f"{path}: {exc.message}", exc.line, exc.column) from None


def _parse_generators(raw, path):
    if not isinstance(raw, list):
        raise SchemaError("expected a list", path)
    out = []
    for t, g in enumerate(raw):
        where = f"{path}[{t}]"
        if not isinstance(g, dict):
            raise SchemaError("expected an object", where)
        _check_keys(g, ("name", "degree"), where)
        name = _require(g, "name", str, where)
        deg = _require(g, "degree", int, where)
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", name):
            raise SchemaError(f"bad generator name {name!r}", f"{where}.name")
        out.append((name, deg))
    names = [n for n, _ in out]
    if len(set(names)) != len(names):
        raise SchemaError("duplicate generator name", path)
    return out


def _homogeneous_degree(p, degs, what):
    ds = {sum(degs[i] for i in w) for w in p.terms}
    if len(ds) > 1:
        raise HomogeneityError(f"{what} is not homogeneous")
    return ds.pop() if ds else None


def _parse_resolution(raw, names, degs):
    where = "resolution"
    if not isinstance(raw, dict):
        raise SchemaError("expected an object", where)
    _check_keys(raw, ("generators", "augmentation"), where)
    gens = _require(raw, "generators", list, where)
    mnames, mdegs, rows = [], [], []
    for t, g in enumerate(gens):
        w = f"{where}.generators[{t}]"
        if not isinstance(g, dict):
            raise SchemaError("expected an object", w)
        _check_keys(g, ("name", "degree", "differential"), w)
        mnames.append(_require(g, "name", str, w))
        mdegs.append(_require(g, "degree", int, w))
        rows.append(g.get("differential", "0"))
    clash = set(mnames) & set(names)
    if clash:
        raise SchemaError(f"module generator names clash with algebra generators: {sorted(clash)}", where)
    alphabet = list(names) + mnames
    nalg = len(names)
    diff = []
    for t, text in enumerate(rows):
        path = f"{where}.generators[{t}].differential"
        p = _parse_in_field(text, alphabet, path)
        row = {}
        for word, c in p.terms.items():
            if not word or word[-1] < nalg or any(x >= nalg for x in word[:-1]):
                raise SchemaError("each term must be (algebra word)*(one module generator)", path)
            i = word[-1] - nalg
            row[i] = row.get(i, NcPoly.zero()) + NcPoly.word(word[:-1], c)
        diff.append({i: c for i, c in row.items() if c})
    aug = raw.get("augmentation", mnames[0] if mnames else None)
    if aug not in mnames:
        raise SchemaError("augmentation must name a module generator", f"{where}.augmentation")
    return SemiFreeModule(mnames, mdegs, diff, mnames.index(aug))


def _parse_cohomology_presentation(raw, names):
    where = "cohomology_presentation"
    if not isinstance(raw, dict):
        raise SchemaError("expected an object", where)
    _check_keys(raw, ("generators", "relations", "images"), where)
    gens = _parse_generators(_require(raw, "generators", list, where), f"{where}.generators")
    cnames = [n for n, _ in gens]
    rels = [
        _parse_in_field(r, cnames, f"{where}.relations[{t}]")
        for t, r in enumerate(raw.get("relations", []))
    ]
    imgs_raw = _require(raw, "images", dict, where)
    images = []
    for n in cnames:
        if n not in imgs_raw:
            raise SchemaError("missing image", f"{where}.images.{n}")
        images.append(_parse_in_field(imgs_raw[n], names, f"{where}.images.{n}"))
    for k in imgs_raw:
        if k not in cnames:
            raise SchemaError("image for an unknown generator", f"{where}.images.{k}")
    return CohomologyPresentation(gens, rels, images)


def document_from_json(obj) -> InputDocument:
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object")
    kind = _require(obj, "kind", str)
    if kind not in KINDS:
        raise SchemaError(f"unknown kind {kind!r}", "kind")
    fld = _require(obj, "field", str)
    if fld != "Q":
        raise SchemaError("only the field Q is supported", "field")
    name = obj.get("name", "")
    desc = obj.get("description", "")
    if not isinstance(name, str):
        raise SchemaError("expected a string", "name")
    if not isinstance(desc, str):
        raise SchemaError("expected a string", "description")
    if kind == "structure-constants":
        _check_keys(obj, ("kind", "field", "name", "description", "basis", "degrees", "unit", "table"), "")
        return _structure_constants(obj, name, desc)
    _check_keys(
        obj,
        ("kind", "field", "name", "description", "generators", "relations", "differential",
         "resolution", "cohomology_presentation"),
        "",
    )
    gens = _parse_generators(_require(obj, "generators", list), "generators")
    names = [n for n, _ in gens]
    degs = [d for _, d in gens]
    for t, d in enumerate(degs):
        if d < 1:
            raise SchemaError("generator degrees must be >= 1", f"generators[{t}].degree")
    rels_raw = obj.get("relations", [])
    if not isinstance(rels_raw, list):
        raise SchemaError("expected a list", "relations")
    rels = []
    for t, r in enumerate(rels_raw):
        p = _parse_in_field(r, names, f"relations[{t}]")
        deg = _homogeneous_degree(p, degs, f"relation {r!r}")
        if deg is not None and deg < 2:
            raise HomogeneityError(f"relation {r!r} must have degree >= 2")
        rels.append(p)
    diff_raw = obj.get("differential", {})
    if not isinstance(diff_raw, dict):
        raise SchemaError("expected an object", "differential")
    if kind == "graded-algebra" and any(
        _parse_in_field(v, names, f"differential.{k}") for k, v in diff_raw.items() if k in names
    ):
        raise SchemaError("graded-algebra documents have zero differential", "differential")
    diff = {}
    for k, v in diff_raw.items():
        if k not in names:
            raise SchemaError("differential of an unknown generator", f"differential.{k}")
        p = _parse_in_field(v, names, f"differential.{k}")
        deg = _homogeneous_degree(p, degs, f"differential {k} -> {v!r}")
        if deg is not None and deg != degs[names.index(k)] + 1:
            raise HomogeneityError(f"differential {k} -> {v!r} must have degree {degs[names.index(k)] + 1}")
        if p:
            diff[k] = p
    resolution = None
    if "resolution" in obj:
        resolution = _parse_resolution(obj["resolution"], names, degs)
    coh = None
    if "cohomology_presentation" in obj:
        coh = _parse_cohomology_presentation(obj["cohomology_presentation"], names)
    return InputDocument(
        kind=kind, field=fld, name=name, description=desc, generators=gens, relations=rels,
        differential=diff, resolution=resolution, cohomology_presentation=coh,
    )


def _structure_constants(obj, name, desc):
    basis = _require(obj, "basis", list)
    if not basis or not all(isinstance(b, str) for b in basis):
        raise SchemaError("expected a nonempty list of names", "basis")
    if len(set(basis)) != len(basis):
        raise SchemaError("duplicate basis name", "basis")
    degrees = _require(obj, "degrees", list)
    if len(degrees) != len(basis) or not all(isinstance(d, int) and not isinstance(d, bool) for d in degrees):
        raise SchemaError("one integer degree per basis element", "degrees")
    unit = _require(obj, "unit", str)
    if unit not in basis:
        raise SchemaError("unit is not a basis element", "unit")
    raw = _require(obj, "table", list)
    u = basis.index(unit)
    table = {}
    for t, entry in enumerate(raw):
        where = f"table[{t}]"
        if not isinstance(entry, dict):
            raise SchemaError("expected an object", where)
        _check_keys(entry, ("left", "right", "product"), where)
        left = _require(entry, "left", str, where)
        right = _require(entry, "right", str, where)
        for side, v in (("left", left), ("right", right)):
            if v not in basis:
                raise SchemaError(f"unknown basis element {v!r}", f"{where}.{side}")
        p = _parse_in_field(_require(entry, "product", str, where), basis, f"{where}.product")
        row = {}
        for w, c in p.terms.items():
            if len(w) != 1:
                raise SchemaError("products must be linear in the basis", f"{where}.product")
            row[w[0]] = c
        key = (basis.index(left), basis.index(right))
        if key in table:
            raise SchemaError("duplicate table entry", where)
        table[key] = row
    # unit products may be left implicit
    for i in range(len(basis)):
        table.setdefault((u, i), {i: Fraction(1)})
        table.setdefault((i, u), {i: Fraction(1)})
    table = {k: v for k, v in table.items() if v}
    return InputDocument(
        kind="structure-constants", name=name, description=desc, basis=list(basis),
        degrees=list(degrees), unit=unit, table=table,
    )


def parse_input(text) -> InputDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return document_from_json(obj)


def document_to_json(doc: InputDocument) -> dict:
    out = {"kind": doc.kind, "field": doc.field}
    if doc.name:
        out["name"] = doc.name
    if doc.description:
        out["description"] = doc.description
    if doc.kind == "structure-constants":
        out["basis"] = list(doc.basis)
        out["degrees"] = list(doc.degrees)
        out["unit"] = doc.unit
        u = doc.basis.index(doc.unit)
        entries = []
        for (i, j), row in sorted(doc.table.items()):
            if u in (i, j) and row == {j if i == u else i: 1}:
                continue
            prod = NcPoly({(k,): c for k, c in row.items()}).format(doc.basis)
            entries.append({"left": doc.basis[i], "right": doc.basis[j], "product": prod})
        out["table"] = entries
        return out
    names = doc.generator_names
    out["generators"] = [{"name": n, "degree": d} for n, d in doc.generators]
    out["relations"] = [r.format(names) for r in doc.relations]
    out["differential"] = {n: doc.differential[n].format(names) for n in names if n in doc.differential}
    if doc.resolution is not None:
        F = doc.resolution
        gens = []
        for j in range(F.rank):
            gens.append({"name": F.names[j], "degree": F.degrees[j], "differential": F.format_row(j, names)})
        out["resolution"] = {"generators": gens, "augmentation": F.names[F.augmentation]}
    if doc.cohomology_presentation is not None:
        cp = doc.cohomology_presentation
        cnames = [n for n, _ in cp.generators]
        out["cohomology_presentation"] = {
            "generators": [{"name": n, "degree": d} for n, d in cp.generators],
            "relations": [r.format(cnames) for r in cp.relations],
            "images": {n: img.format(names) for n, img in zip(cnames, cp.images)},
        }
    return out


def serialize(doc: InputDocument) -> str:
    return json.dumps(document_to_json(doc), indent=2, ensure_ascii=False) + "\n"


def digest(doc: InputDocument) -> str:
    canon = json.dumps(document_to_json(doc), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


# ------------------------------------------------------------ corpus


def corpus_names():
    root = resources.files("dgfrob") / "corpus"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def corpus_text(name) -> str:
    return (resources.files("dgfrob") / "corpus" / f"{name}.json").read_text(encoding="utf-8")


def load_corpus(name) -> InputDocument:
    return parse_input(corpus_text(name))


def read_input(path_or_name) -> InputDocument:
    """Load a document from a path; a missing path whose stem names a corpus entry loads that entry."""
    p = Path(path_or_name)
    if p.exists():
        try:
            text = p.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}") from None
        return parse_input(text)
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    if stem in corpus_names():
        return load_corpus(stem)
    raise SchemaError(f"no such file or corpus entry: {path_or_name}", "input")
