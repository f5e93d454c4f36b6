import json
from fractions import Fraction

import pytest

from conelab import serialize
from conelab.core import (
    BlockPartition,
    VCollection,
    cone_element,
    group_element,
    ldl_decompose,
    verify_v_conditions,
)
from conelab.degrees import DimTable, rank3_table, sigma_from_dims
from conelab.errors import SerializationError
from conelab.rank3 import classify_degrees
from conelab.sampling import RationalSampler


@pytest.fixture(scope="module")
def omega2():
    return VCollection(BlockPartition((2, 1)), {(2, 1): [[[1, 0]], [[0, 1]]]})


def test_parse_rational_values():
    assert serialize.parse_rational(5) == 5
    assert serialize.parse_rational("-3") == -3
    assert serialize.parse_rational("3/4") == Fraction(3, 4)
    assert serialize.parse_rational("4/6") == Fraction(2, 3)
    assert serialize.parse_rational("6/3") == 2
    assert isinstance(serialize.parse_rational("6/3"), int)


@pytest.mark.parametrize(
    "bad", [1.5, True, None, "1.5", "1/0", "3/-2", "/2", "a", "", [1]]
)
def test_parse_rational_rejects(bad):
    with pytest.raises(SerializationError):
        serialize.parse_rational(bad)


def test_rational_to_str():
    assert serialize.rational_to_str(5) == "5"
    assert serialize.rational_to_str(Fraction(-1, 3)) == "-1/3"
    assert serialize.rational_to_str(Fraction(4, 2)) == "2"


def test_realization_round_trip(omega2):
    d = serialize.realization_to_dict(omega2)
    assert d["partition"] == [2, 1]
    assert d["spaces"][0]["basis"] == [["1", "0"], ["0", "1"]]
    assert serialize.realization_from_dict(d) == omega2


def test_realization_from_dict_errors():
    with pytest.raises(SerializationError, match="missing key"):
        serialize.realization_from_dict({"partition": [2, 1]})
    with pytest.raises(SerializationError, match="duplicate"):
        serialize.realization_from_dict(
            {
                "partition": [2, 1],
                "spaces": [
                    {"k": 2, "j": 1, "basis": [["1", "0"]]},
                    {"k": 2, "j": 1, "basis": [["0", "1"]]},
                ],
            }
        )
    with pytest.raises(SerializationError, match="expected 2"):
        serialize.realization_from_dict(
            {"partition": [2, 1], "spaces": [{"k": 2, "j": 1, "basis": [["1"]]}]}
        )
    with pytest.raises(SerializationError, match="bad space index"):
        serialize.realization_from_dict(
            {"partition": [2, 1], "spaces": [{"k": 1, "j": 2, "basis": []}]}
        )
    with pytest.raises(SerializationError, match="unknown key"):
        serialize.realization_from_dict(
            {"partition": [1], "spaces": [], "extra": 1}
        )


def test_element_round_trip(omega2):
    x = cone_element(omega2, (Fraction(1, 2), 3), {(2, 1): (1, Fraction(-2, 5))})
    d = serialize.element_to_dict(x)
    assert d["diag"] == ["1/2", "3"]
    assert serialize.element_from_dict(d, omega2) == x
    # zero blocks are dropped from the wire form
    y = cone_element(omega2, (1, 1))
    assert serialize.element_to_dict(y)["off"] == []
    assert serialize.element_from_dict({"diag": [1, 1]}, omega2) == y


def test_group_round_trip(omega2):
    h = group_element(omega2, (2, Fraction(-1, 3)), {(2, 1): (0, 7)})
    d = serialize.group_to_dict(h)
    assert serialize.group_from_dict(d, omega2) == h


def test_family_round_trip(fixture_family):
    d = serialize.family_to_dict(fixture_family)
    assert d["r"] == 3 and d["s"] == 5 and d["n"] == 7
    assert serialize.family_from_dict(d) == fixture_family


def test_point_round_trips(fixture_family):
    sampler = RationalSampler(seed=50)
    X = sampler.rank3_element(fixture_family)
    d = serialize.point_to_dict(X)
    assert serialize.point_from_dict(d, fixture_family) == X
    Xi = sampler.dual_rank3_element(fixture_family)
    dd = serialize.dual_point_to_dict(Xi)
    assert serialize.dual_point_from_dict(dd, fixture_family) == Xi
    # absent coordinate vectors mean zero
    X0 = serialize.point_from_dict(
        {"x11": 1, "x22": 2, "x33": 3}, fixture_family
    )
    assert X0.y == (0,) * 5 and X0.z == (0,) * 7


def test_dims_round_trip():
    t = rank3_table(2, 4, 2)
    d = serialize.dims_to_dict(t)
    assert d == {"r": 3, "dims": {"d21": 2, "d31": 4, "d32": 2}}
    assert serialize.dims_from_dict(d) == t


def test_dims_wide_rank_keys():
    dims = {(k, j): 1 for k in range(2, 12) for j in range(1, k)}
    t = DimTable(11, dims)
    d = serialize.dims_to_dict(t)
    assert "d10_9" in d["dims"] and "d11_10" in d["dims"]
    assert "d21" in d["dims"]
    assert serialize.dims_from_dict(d) == t


def test_dims_from_dict_errors():
    with pytest.raises(SerializationError, match="bad dimension key"):
        serialize.dims_from_dict({"r": 2, "dims": {"q21": 1}})
    with pytest.raises(SerializationError, match="nonnegative"):
        serialize.dims_from_dict({"r": 2, "dims": {"d21": -1}})
    with pytest.raises(SerializationError, match="partial"):
        serialize.dims_from_dict({"r": 3, "dims": {"d21": 1}})
    with pytest.raises(SerializationError):
        serialize.dims_from_dict({"r": 2, "dims": {"d21": "2"}})


def test_sigma_to_dict_structure():
    s = sigma_from_dims(rank3_table(2, 4, 2))
    d = serialize.sigma_to_dict(s)
    assert d["sigma"] == [[1, 0, 0], [1, 1, 0], [2, 1, 1]]
    assert d["degrees"] == [1, 2, 4]
    steps = d["trace"]["steps"]
    assert steps[0]["i"] == 1
    assert steps[0]["epsilon"] == [1, 1]
    assert all("k" in st and "l" in st for st in steps[0]["stages"])


def test_verification_report_to_dict(omega2):
    d = serialize.verification_report_to_dict(verify_v_conditions(omega2))
    assert d["passed"] and d["orthonormal"]
    assert d["v1"] == {"passed": True}
    assert d["dims"] == {"d21": 2}


def test_ldl_to_dict(omega2):
    res = ldl_decompose(cone_element(omega2, (2, 1), {(2, 1): (1, 0)}), omega2)
    d = serialize.ldl_to_dict(res)
    assert d["member"] is True
    assert d["pivots"] == ["2", "1/2"]
    assert "pivots_approx" not in d
    d = serialize.ldl_to_dict(res, approx=True)
    assert d["pivots_approx"] == [2.0, 0.5]


def test_classification_to_dict():
    d = serialize.classification_to_dict(classify_degrees(3, 5, 7))
    assert d["case"] == 3
    assert d["primal_degrees"] == [1, 2, 4]
    assert d["dual_degrees"] == [4, 2, 1]


def test_dumps_canonical_stable():
    obj = {"b": [Fraction(1, 2)], "a": 1}
    with pytest.raises(TypeError):
        json.dumps(obj)  # Fractions never leak to json directly
    text = serialize.dumps_canonical({"b": ["1/2"], "a": 1})
    assert text == '{\n  "a": 1,\n  "b": [\n    "1/2"\n  ]\n}\n'
    assert text == serialize.dumps_canonical(json.loads(text))


def test_bundled_fixture_file_is_canonical():
    from importlib import resources

    raw = resources.files("conelab").joinpath("data/family_3_5_7.json").read_text()
    assert raw == serialize.dumps_canonical(json.loads(raw))


def test_load_file_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(SerializationError, match="line 1"):
        serialize.load_file(str(bad))
    with pytest.raises(SerializationError):
        serialize.load_file(str(tmp_path / "missing.json"))
