from fractions import Fraction

import numpy as np

from skewhowe.serialize import csv_text, dumps_json, frac_to_str, jsonable, metadata, read_csv, str_to_frac


def test_fraction_roundtrip():
    for x in (Fraction(3, 7), Fraction(-2), Fraction(0)):
        assert str_to_frac(frac_to_str(x)) == x
    assert str_to_frac("5") == 5


def test_jsonable_numpy_and_exact():
    obj = {"a": np.float64(1.5), "b": (1, 2), "c": Fraction(1, 3), "d": np.arange(2), "e": 1 + 2j}
    assert jsonable(obj) == {"a": 1.5, "b": [1, 2], "c": "1/3", "d": [0, 1], "e": {"re": 1.0, "im": 2.0}}


def test_csv_roundtrip_plain_floats():
    meta = metadata("x", ["x", "--out", "f.csv", "--seed", "1"], 1, {"n": 2})
    assert meta["argv"] == ["x", "--seed", "1"]
    text = csv_text(meta, ["a", "b"], [[np.float64(0.1), Fraction(1, 2)], [np.int64(3), 4]])
    assert "np." not in text
    m, rows = read_csv(text)
    assert m["params"] == {"n": 2}
    assert rows == [{"a": "0.1", "b": "1/2"}, {"a": "3", "b": "4"}]
    assert dumps_json({"z": Fraction(1, 2)}).strip() == '{\n  "z": "1/2"\n}'
