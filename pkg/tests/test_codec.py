"""JSON encoding of exact values and domain objects."""

from fractions import Fraction

import pytest

from tropex.core.codec import (
    complex1_from_json,
    complex1_to_json,
    decode_int,
    decode_rational,
    encode_int,
    fan_from_json,
    fan_to_json,
    load_json,
    polynomial_from_json,
    shadow_from_json,
)
from tropex.core.errors import InputError
from tropex.tropical.graphs import EmbeddedOneComplex, WeightedOneComplex


def test_big_integers_become_strings():
    assert encode_int(5) == 5
    assert encode_int(2 ** 70) == str(2 ** 70)
    assert decode_int(str(2 ** 70)) == 2 ** 70
    with pytest.raises(InputError):
        decode_int(True)
    with pytest.raises(InputError):
        decode_int("1/2")


def test_rationals():
    assert decode_rational("-3/6") == Fraction(-1, 2)
    assert decode_rational(4) == Fraction(4)
    with pytest.raises(InputError):
        decode_rational("abc")


def test_fan_json(p2):
    data = fan_to_json(p2)
    assert data["ambient_dim"] == 2
    assert len(data["cones"]) == 3
    assert data["ray_names"]["D0"] == [-1, -1]
    assert fan_from_json(data).canonical() == p2.canonical()


def test_malformed_fan():
    with pytest.raises(InputError):
        fan_from_json({"cones": []})
    with pytest.raises(InputError):
        fan_from_json({"ambient_dim": 2, "cones": [{"rays": 7}]})


def test_weights_default_to_one(line_half):
    data = complex1_to_json(line_half)
    assert data["vertices"][0]["pos"] == ["1/2", "1/2"]
    assert isinstance(complex1_from_json(data), EmbeddedOneComplex)

    data["rays"][0]["weight"] = 3
    decoded = complex1_from_json(data)
    assert isinstance(decoded, WeightedOneComplex)
    assert decoded.ray_weights == (3, 1, 1)
    assert decoded.edge_weights == (1,)
    assert decoded.base == line_half


def test_malformed_complex():
    with pytest.raises(InputError):
        complex1_from_json({"edges": []})
    with pytest.raises(InputError):
        complex1_from_json({"vertices": [{"cone": 0, "pos": [0, 0]}],
                            "edges": [{"ends": [0], "cone": 0, "dir": [1, 0]}]})


def test_polynomial_and_shadow():
    p = polynomial_from_json({"dim": 2, "terms": [{"exp": [1, 0], "val": "1/2"}, {"exp": [0, 0], "val": 0}]})
    assert p.terms == (((0, 0), Fraction(0)), ((1, 0), Fraction(1, 2)))
    shadow = shadow_from_json({"tube": {"0": True, "1": False},
                               "contact": [{"edge": 0, "component": 1, "length": 2}]})
    assert shadow.is_tube == {0: True, 1: False}
    assert shadow.contact_lengths == {(0, 1): 2}


def test_load_json_errors(tmp_path):
    with pytest.raises(InputError):
        load_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        load_json(bad)
