from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest

from ainfty.core import table_signature
from ainfty.examples import a3, kappa, library
from ainfty.io import (InputError, canonical, category_from_json, category_to_json,
                       jsonable, load_category, load_functors)
from ainfty.linear import GF, QQ

CATS = Path(__file__).parent / "golden" / "categories"


@pytest.mark.parametrize("name", ["K", "min2", "retract-A", "D2", "A3-F3"])
def test_roundtrip(name):
    A = library()[name]
    B = category_from_json(json.loads(canonical(category_to_json(A))))
    assert table_signature(B) == table_signature(category_from_json(category_to_json(B)))
    assert len(B.ops.get(3, {})) == len(A.ops.get(3, {}))


def test_field_override():
    doc = category_to_json(a3(QQ))
    assert doc["field"] == "Q"
    A = category_from_json(doc, GF(3))
    assert A.field is GF(3) and A.ops[2][("a2", "b")] == {"e": 2}


def test_corpus_files_load():
    for p in sorted(CATS.glob("*.json")):
        A = load_category(p)
        for Fn in load_functors(p, A):
            assert Fn.source is A


def doc_with(**change):
    doc = category_to_json(kappa())
    doc.update(change)
    return doc


@pytest.mark.parametrize("change,locus", [
    ({"schema": "other"}, "schema"),
    ({"field": "F4"}, "field"),
    ({"objects": ["x", "x"]}, "objects"),
    ({"homs": [{"source": "y", "target": "x", "basis": {"0": ["1x"]}}]}, "homs[0].source"),
    ({"ops": [{"arity": 2, "inputs": ["g"], "output": {}}]}, "ops[0]"),
    ({"ops": [{"arity": 1, "inputs": ["h"], "output": {}}]}, "ops[0].inputs[0]"),
    ({"ops": [{"arity": 1, "inputs": ["g"], "output": {"1x": 1.5}}]}, "ops[0].output"),
    ({"units": {"x": "g"}}, "ops"),
])
def test_errors_name_the_locus(change, locus):
    with pytest.raises(InputError) as e:
        category_from_json(doc_with(**change))
    assert locus in str(e.value)


def test_json_syntax_error(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"objects": [\n', encoding="utf-8")
    with pytest.raises(InputError) as e:
        load_category(p)
    assert "line" in str(e.value)
    with pytest.raises(InputError):
        load_category(tmp_path / "missing.json")


def test_canonical_is_sorted():
    text = canonical({"b": 1, "a": {(1, 2): Fraction(1, 2)}, "c": {3, 1}})
    assert text.index('"a"') < text.index('"b"')
    assert '"(1,2)": "1/2"' in text
    assert jsonable({2, 1}) == [1, 2]
