import json

import numpy as np
import pytest

from avnorm.cones import ConeSpec, same_cone
from avnorm.errors import BoundednessViolation, NormalizationError, ParseError
from avnorm.specio import (
    cone_from_dict,
    cone_to_dict,
    load_cone,
    load_operator,
    norm_from_dict,
    norm_to_dict,
    operator_from_dict,
    operator_to_dict,
    parse_point,
    read_json,
)
from avnorm.verification import check_proper

from conftest import SPECS


@pytest.mark.parametrize("obj", [
    {"kind": "simplicial", "dim": 2, "columns": [[1.0, 0.0], [1.0, 1.0]]},
    {"kind": "generators", "dim": 3, "columns": [[-1, 1, 1], [-1, 1, -1], [-1, -1, 1], [-1, -1, -1]]},
    {"kind": "halfspaces", "dim": 2, "rows": [[1.0, 0.0], [0.0, 1.0]]},
    {"kind": "ray", "dim": 2, "columns": [[0.0, 1.0]], "label": "up"},
    {"kind": "negated", "dim": 2, "cone": {"kind": "simplicial", "dim": 2, "columns": [[1, 0], [0, 1]]}},
])
def test_cone_round_trip(obj):
    k = cone_from_dict(obj)
    again = cone_from_dict(json.loads(json.dumps(cone_to_dict(k))))
    assert cone_to_dict(again) == cone_to_dict(k)
    assert k.kind == obj["kind"]


@pytest.mark.parametrize("obj,fragment", [
    ({"dim": 2, "columns": [[1, 0], [0, 1]]}, "kind"),
    ({"kind": "cylinder", "dim": 2}, "unknown kind"),
    ({"kind": "simplicial", "dim": 2, "columns": [[1, 0]]}, "needs 2 columns"),
    ({"kind": "simplicial", "dim": 3, "columns": [[1, 0], [0, 1]]}, "length"),
    ({"kind": "simplicial", "dim": 2, "columns": [[0, 0], [0, 1]]}, "zero vector"),
    ({"kind": "simplicial", "dim": 2, "columns": "nope.json"}, ""),
    ({"kind": "simplicial", "dim": 2, "columns": [["a", 0], [0, 1]]}, ""),
    ({"kind": "ray", "dim": 2, "columns": [[1, 0], [0, 1]]}, "exactly one"),
    ({"kind": "simplicial", "dim": -1, "columns": []}, ""),
    ([1, 2], ""),
])
def test_cone_parse_errors(obj, fragment):
    with pytest.raises(ParseError, match=fragment or None):
        cone_from_dict(obj)


def test_norm_round_trip():
    for obj in ({"kind": "max-positive-part", "dim": 3},
                {"kind": "gauge", "facets": [[1.0], [-1.0]]},
                {"kind": "suspension", "inner": {"kind": "gauge", "facets": [[1.0], [-1.0]]}},
                {"kind": "lattice-norm", "cone": {"kind": "simplicial", "dim": 2, "columns": [[1, 0], [0, 1]]}}):
        q = norm_from_dict(obj)
        assert norm_from_dict(norm_to_dict(q)).dim == q.dim
        assert norm_to_dict(norm_from_dict(norm_to_dict(q))) == norm_to_dict(q)


def test_norm_errors():
    with pytest.raises(ParseError):
        norm_from_dict({"kind": "l7"})
    with pytest.raises(BoundednessViolation):
        norm_from_dict({"kind": "gauge", "facets": [[1.0, 0.0], [0.0, 1.0]]})


def test_file_references_resolve_relative_to_referencing_file():
    spec = load_operator(SPECS / "operators" / "exx3.json")
    assert spec.verify == ("isotone",)
    np.testing.assert_array_equal(spec.operator([2.0, -1.0, 0.0]), [2.0, 2.0, 2.0])
    assert load_cone(SPECS / "cones" / "obtuse.json").kind == "simplicial"


def test_missing_file_and_bad_json(tmp_path):
    with pytest.raises(ParseError):
        read_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        load_cone(bad)
    ref = tmp_path / "ref.json"
    ref.write_text(json.dumps({"construction": "lattice", "cone": "nowhere.json"}))
    with pytest.raises(ParseError):
        load_operator(ref)


def test_unnormalized_range_one():
    with pytest.raises(NormalizationError):
        load_operator(SPECS / "operators" / "exx3_unnormalized.json")


@pytest.mark.parametrize("name", ["cube", "exx3", "mix_obtuse", "projection_complement_obtuse",
                                  "projection_complement_orthant", "suspension_abs"])
def test_operator_round_trip_is_self_contained(name):
    spec = load_operator(SPECS / "operators" / f"{name}.json")
    d = operator_to_dict(spec.operator, spec.verify)
    text = json.dumps(d)
    assert ".json" not in text
    again = operator_from_dict(json.loads(text))
    assert operator_to_dict(again.operator, again.verify) == d
    Y = np.random.default_rng(0).normal(size=(50, spec.operator.dim))
    np.testing.assert_array_equal(again.operator.map(Y), spec.operator.map(Y))


def test_from_cone_keeps_direction():
    obj = {"construction": "from-cone", "cone": str(SPECS / "cones" / "cube.json"), "u": [-1.0, 0.0, 0.0]}
    spec = operator_from_dict(obj)
    assert operator_to_dict(spec.operator)["u"] == [-1.0, 0.0, 0.0]
    assert check_proper(spec.operator).passed


def test_operator_errors():
    with pytest.raises(ParseError, match="unknown construction"):
        operator_from_dict({"construction": "magic"})
    with pytest.raises(ParseError, match="verify"):
        operator_from_dict({"construction": "lattice", "cone": {"kind": "simplicial", "dim": 1, "columns": [[1]]},
                            "verify": ["fast"]})
    with pytest.raises(ParseError):
        operator_from_dict({"construction": "mix", "weights": [1.0], "operators": []})


def test_parse_point():
    np.testing.assert_array_equal(parse_point("1,-1"), [1.0, -1.0])
    np.testing.assert_array_equal(parse_point(" 1.5 , 2e-3 "), [1.5, 0.002])
    with pytest.raises(ParseError):
        parse_point("1,x")
    with pytest.raises(ParseError):
        parse_point("1,nan")
    with pytest.raises(ParseError):
        parse_point("1,2,3", 2)


def test_same_cone_after_round_trip():
    k = ConeSpec.halfspaces([[1.0, 0.0], [1.0, 1.0]])
    assert same_cone(k, cone_from_dict(cone_to_dict(k)))
