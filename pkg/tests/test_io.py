import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgfrob.errors import HomogeneityError, IllDefinedDifferential, ParseError, SchemaError
from dgfrob.io import (
    corpus_names,
    digest,
    document_from_json,
    load_corpus,
    parse_expression,
    parse_input,
    read_input,
    serialize,
)
from dgfrob.ncalg import NcPoly

GENS = [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}]


def dg_doc(**extra):
    doc = {"kind": "dg-algebra", "field": "Q", "generators": GENS}
    doc.update(extra)
    return doc


def test_expressions():
    names = ["x", "y"]
    p = parse_expression("x*y - 3/2*y^2 + (x + y)*x", names)
    want = {(0, 1): 1, (1, 1): Fraction(-3, 2), (0, 0): 1, (1, 0): 1}
    assert p == NcPoly(want)
    assert parse_expression("1", names) == NcPoly.one()
    assert parse_expression("0", names) == NcPoly.zero()
    assert parse_expression("-(x)", names) == NcPoly.word((0,), -1)


@pytest.mark.parametrize("text", ["x**y", "x + ", "x $ y", "(x", "x/2", ""])
def test_bad_expressions(text):
    with pytest.raises(ParseError):
        parse_expression(text, ["x", "y"])


def test_unknown_generator():
    with pytest.raises(SchemaError):
        parse_expression("x*z", ["x", "y"])
    assert parse_expression("x + -y", ["x", "y"]) == parse_expression("x - y", ["x", "y"])


def test_json_error_position():
    with pytest.raises(ParseError) as info:
        parse_input('{\n  "kind": "dg-algebra",\n  "field" "Q"\n}')
    assert (info.value.line, info.value.column) == (3, 11)


def test_schema_errors_name_the_field():
    with pytest.raises(SchemaError) as info:
        document_from_json(dg_doc(field="F2"))
    assert info.value.field == "field"
    with pytest.raises(SchemaError) as info:
        document_from_json(dg_doc(differential={"z": "x*x"}))
    assert info.value.field == "differential.z"
    with pytest.raises(SchemaError) as info:
        document_from_json(dg_doc(extra=1))
    with pytest.raises(SchemaError) as info:
        document_from_json({"kind": "dg-algebra", "field": "Q", "generators": [{"name": "x", "degree": 0}]})
    assert info.value.field == "generators[0].degree"


def test_inhomogeneous_input():
    with pytest.raises(HomogeneityError):
        document_from_json(dg_doc(relations=["x*y - y"]))
    with pytest.raises(HomogeneityError):
        document_from_json(dg_doc(differential={"x": "y"}))


def test_ill_defined_differential():
    doc = document_from_json(dg_doc(differential={"x": "y*y", "y": "x*y"}))
    with pytest.raises(IllDefinedDifferential):
        doc.dg_algebra()


def test_trivial_document():
    doc = parse_input('{"kind": "dg-algebra", "field": "Q", "generators": []}')
    dg = doc.dg_algebra()
    assert dg.presentation.dim(0) == 1 and dg.presentation.dim(3) == 0


def test_structure_constants_unit_is_implicit():
    doc = document_from_json({
        "kind": "structure-constants", "field": "Q", "basis": ["1", "x"], "degrees": [0, -1],
        "unit": "1", "table": [],
    })
    E = doc.algebra()
    assert E.product(0, 1) == {1: 1}
    with pytest.raises(SchemaError):
        document_from_json({
            "kind": "structure-constants", "field": "Q", "basis": ["1", "x"], "degrees": [0, -1],
            "unit": "1", "table": [{"left": "x", "right": "x", "product": "x*x"}],
        })


def test_resolution_terms_must_end_in_a_module_generator():
    bad = dg_doc(resolution={"generators": [
        {"name": "e0", "degree": 0, "differential": "0"},
        {"name": "s", "degree": 0, "differential": "e0*x"},
    ]})
    with pytest.raises(SchemaError):
        document_from_json(bad)


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_round_trip(name):
    doc = load_corpus(name)
    again = parse_input(serialize(doc))
    assert serialize(again) == serialize(doc)
    assert digest(again) == digest(doc)


def test_read_input_falls_back_to_corpus(tmp_path):
    assert read_input("examples/prop71_ext.json").name == "prop71_ext"
    path = tmp_path / "mine.json"
    path.write_text(json.dumps(dg_doc(name="mine")))
    assert read_input(str(path)).name == "mine"
    with pytest.raises(SchemaError):
        read_input(str(tmp_path / "nope.json"))


coeff = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def quadratic_documents(draw):
    """Graded algebras on x, y (degree 1) with random quadratic relations."""
    words = ["x*x", "x*y", "y*x", "y*y"]
    rels = []
    for _ in range(draw(st.integers(0, 2))):
        cs = draw(st.lists(coeff, min_size=4, max_size=4))
        if not any(cs):
            continue
        rels.append(" + ".join(f"{c}*{w}" for c, w in zip(cs, words) if c))
    return {"kind": "graded-algebra", "field": "Q", "name": "q", "generators": GENS, "relations": rels}


@given(quadratic_documents())
@settings(max_examples=50)
def test_generated_round_trip(obj):
    doc = document_from_json(obj)
    text = serialize(doc)
    again = parse_input(text)
    assert serialize(again) == text
    assert [r for r in again.relations] == [r for r in doc.relations]
    assert again.presentation().dim(3) == doc.presentation().dim(3)
