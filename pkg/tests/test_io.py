import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptkrein.io import (
    MatrixFileError,
    dumps_matrix,
    format_float,
    parse_matrix_file,
    parse_vector_file,
    write_matrix_file,
    write_vector_file,
)

finite = st.floats(allow_nan=False, allow_infinity=False)


def test_format_float_examples():
    assert format_float(1.0) == "1.0"
    assert format_float(-0.0) == "-0.0"
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(1e300) == "1.0000000000000001e+300"


def test_dumps_layout():
    text = dumps_matrix([[1, 2j], [0, -1]])
    assert json.loads(text) == {"n": 2, "entries": [[1.0, 0.0], [0.0, 2.0], [0.0, 0.0], [-1.0, 0.0]]}


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.tuples(finite, finite), min_size=n * n, max_size=n * n)))
def test_matrix_round_trip_is_bit_exact(tmp_path_factory, pairs):
    n = int(round(len(pairs) ** 0.5))
    M = np.array([complex(a, b) for a, b in pairs]).reshape(n, n)
    path = tmp_path_factory.mktemp("m") / "m.json"
    write_matrix_file(path, M)
    back = parse_matrix_file(path)
    assert back.view(np.uint64).tobytes() == M.view(np.uint64).tobytes()


def test_vector_round_trip(tmp_path):
    x = np.array([0.1 - 0.0j, -0.0 + 3e-310j, 1e308])
    write_vector_file(tmp_path / "x.json", x)
    back = parse_vector_file(tmp_path / "x.json")
    assert back.view(np.uint64).tobytes() == x.view(np.uint64).tobytes()


def test_parse_accepts_integers(tmp_path):
    f = tmp_path / "h.json"
    f.write_text('{"n": 2, "entries": [[3, 0], [1, 0], [0, 0], [3, 0]]}')
    np.testing.assert_array_equal(parse_matrix_file(f), [[3, 1], [0, 3]])


@pytest.mark.parametrize("text,needle", [
    ('{"n": 2, "entries": [[1, 0], [0, 0], [1, 0]]}', "expected 4"),
    ('{"n": 0, "entries": []}', "positive integer"),
    ('{"n": 1}', "missing field 'entries'"),
    ('{"n": 1, "entries": [[1]]}', "entries[0]"),
    ('{"n": 1, "entries": [["a", 0]]}', "entries[0]"),
    ('{"n": 1, "entries": [[1e999, 0]]}', "not finite"),
    ('{"n": 1, "entries": [[1, 0]]', "line 1"),
    ('[1, 2]', "top level"),
])
def test_parse_errors(tmp_path, text, needle):
    f = tmp_path / "bad.json"
    f.write_text(text)
    with pytest.raises(MatrixFileError) as info:
        parse_matrix_file(f)
    assert needle in str(info.value)


def test_missing_file(tmp_path):
    with pytest.raises(MatrixFileError):
        parse_matrix_file(tmp_path / "nope.json")


def test_write_rejects_bad_input(tmp_path):
    with pytest.raises(MatrixFileError):
        write_matrix_file(tmp_path / "a.json", np.zeros((2, 3)))
    with pytest.raises(MatrixFileError):
        write_matrix_file(tmp_path / "a.json", np.array([[np.nan]]))
