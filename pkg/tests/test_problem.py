import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linvar.errors import ShapeError
from linvar.problem import ProblemFileError, dumps_json, format_number, parse_problems, result_document
from linvar.samples import axis_lines, random_variety_pair
from linvar.varieties import best_pair, classify

AXIS = """\
ambient_dim: 3
first:
  offset: [0, 0, 1]
  directions: [[1, 0, 0]]
second:
  offset: [0, 0, 0]
  directions: [[0, 1, 0]]
  sign: minus
"""


def test_parse_axis_lines():
    (p,) = parse_problems(AXIS)
    v1, v2 = axis_lines()
    np.testing.assert_array_equal(p.first.offset, v1.offset)
    np.testing.assert_array_equal(p.first.directions, v1.directions)
    assert p.first.sign == "plus" and p.second.sign == "minus"
    assert p.method is None and p.tolerance is None and not p.batch


def test_directions_are_columns():
    (p,) = parse_problems(
        "ambient_dim: 2\nfirst: {offset: [0, 0], directions: [[1, 2], [3, 4]]}\nsecond: {offset: [0, 0]}\n"
    )
    np.testing.assert_array_equal(p.first.directions, [[1, 3], [2, 4]])
    assert p.second.n_params == 0


def test_solver_section_and_numeric_string_tolerance():
    (p,) = parse_problems(AXIS + "solver:\n  method: partitioned\n  tolerance: 1e-6\n")
    assert p.method == "partitioned" and p.tolerance == 1e-6


def test_batch():
    text = "problems:\n" + "".join(
        f"  - name: p{i}\n" + "".join("    " + ln + "\n" for ln in AXIS.splitlines()) for i in range(2)
    )
    probs = parse_problems(text)
    assert [p.name for p in probs] == ["p0", "p1"] and all(p.batch for p in probs)


@pytest.mark.parametrize(
    "text, field, line",
    [
        (AXIS.replace("[0, 0, 1]", "[0, x, 1]"), "first.offset[1]", 3),
        (AXIS.replace("sign: minus", "sign: down"), "second.sign", 8),
        (AXIS + "colour: red\n", "colour", 9),
        (AXIS.replace("ambient_dim: 3", "ambient_dim: -3"), "ambient_dim", 1),
        (AXIS + "solver: {method: greville}\n", "solver.method", 9),
        (AXIS + "solver: {tolerance: 0}\n", "solver.tolerance", 9),
        (AXIS.replace("[0, 0, 1]", "[0, true, 1]"), "first.offset[1]", 3),
    ],
)
def test_errors_name_field_and_line(text, field, line):
    with pytest.raises(ProblemFileError) as info:
        parse_problems(text)
    assert info.value.field == field and info.value.line == line
    assert f"line {line}" in str(info.value) and field in str(info.value)


def test_missing_key():
    with pytest.raises(ProblemFileError, match="second"):
        parse_problems(AXIS.split("second:")[0])


def test_yaml_syntax_error_has_line():
    with pytest.raises(ProblemFileError) as info:
        parse_problems("ambient_dim: 3\nfirst: [\n")
    assert info.value.line is not None


@pytest.mark.parametrize("bad", [".nan", ".inf", "-.inf", "nan", "1e999"])
def test_non_finite_rejected(bad):
    with pytest.raises(ProblemFileError, match="non-finite"):
        parse_problems(AXIS.replace("[0, 0, 1]", f"[0, {bad}, 1]"))


def test_wrong_length_is_a_shape_error():
    with pytest.raises(ShapeError, match="second.directions"):
        parse_problems(AXIS.replace("[[0, 1, 0]]", "[[0, 1]]"))


# --- output -------------------------------------------------------------------


@given(st.floats(allow_nan=False, allow_infinity=False))
@settings(max_examples=300)
def test_format_number_round_trips(x):
    assert float(format_number(x)) == x


def test_format_number_always_reads_as_float():
    assert format_number(1) == "1.0" and format_number(0.1) == "0.10000000000000001"


def test_result_document_round_trips_through_json(rng):
    v1, v2 = random_variety_pair(rng)
    bp = best_pair(v1, v2, "partitioned")
    doc = result_document(bp, classify(v1, v2))
    back = json.loads(dumps_json(doc))
    assert list(back) == list(doc)
    assert back["distance"] == bp.distance
    assert back["point_on_first"] == list(bp.point_on_first)
    assert back["penrose_residuals"] == list(bp.penrose_residuals)
    assert back["params_second"] == list(bp.params_second)


def test_json_batch_is_a_list():
    bp = best_pair(*axis_lines())
    doc = result_document(bp, classify(*axis_lines()))
    back = json.loads(dumps_json([doc, doc]))
    assert isinstance(back, list) and len(back) == 2 and back[0]["classification"] == "skew"
