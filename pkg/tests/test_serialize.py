import json

import pytest

from divalg.builtins import cross7_triple, octonion_algebra
from divalg.dissident import cross_product_map, random_quadruple
from divalg.exact import Matrix
from divalg.lifting import Lifting, solve_lifting
from divalg.serialize import (
    ParseError,
    algebra_to_json,
    canonical_json,
    lifting_to_json,
    loads_typed,
    map_to_json,
    plain_matrix_to_json,
    quadruple_to_json,
    triple_to_json,
)


def roundtrip(doc):
    return loads_typed(json.dumps(doc))


def test_map_roundtrip():
    eta = cross_product_map(7)
    assert roundtrip(map_to_json(eta)) == eta


def test_triple_roundtrip():
    t = cross7_triple()
    assert roundtrip(triple_to_json(t)) == t


def test_quadruple_roundtrip():
    q = random_quadruple(3)
    back = roundtrip(quadruple_to_json(q))
    assert (back.a, back.b, back.c, back.d) == (q.a, q.b, q.c, q.d)


def test_algebra_roundtrip():
    alg = octonion_algebra()
    assert roundtrip(algebra_to_json(alg)) == alg


def test_lifting_roundtrip():
    phi = solve_lifting(cross_product_map(3), samples=8, seed=0)
    back = roundtrip(lifting_to_json(phi))
    assert back == phi


def test_matrix_roundtrip():
    m = Matrix([[1, "1/2"], ["-3/4", 0]])
    assert roundtrip(plain_matrix_to_json(m)) == m


def test_scalars_are_strings_not_floats():
    doc = quadruple_to_json(random_quadruple(1))
    text = json.dumps(doc)
    assert "e-" not in text and "0.2" not in text

    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
        else:
            assert not isinstance(x, float)

    walk(doc)


def test_canonical_json_is_stable():
    doc = {"b": 1, "a": [2, {"z": "3", "y": "4"}]}
    assert canonical_json(doc) == canonical_json(json.loads(json.dumps(doc)))
    assert canonical_json(doc).endswith("\n")


def test_parse_errors():
    with pytest.raises(ParseError):
        loads_typed("not json")
    with pytest.raises(ParseError):
        loads_typed(json.dumps({"no": "kind"}))
    with pytest.raises(ParseError):
        loads_typed(json.dumps({"kind": "wat"}))
    with pytest.raises(ParseError):
        loads_typed(json.dumps({"kind": "dissident_map", "n": 7, "tensor": []}))
    with pytest.raises(ParseError):
        loads_typed(json.dumps({"kind": "matrix", "entries": [["1/0"]]}))
    bad = map_to_json(cross_product_map(3))
    bad["tensor"][0][1][2] = "5"  # breaks antisymmetry
    with pytest.raises(ParseError):
        roundtrip(bad)
