import pytest
from hypothesis import given
from hypothesis import strategies as st

from assignbench import new_cost_matrix, parse_matrix, serialize_matrix
from assignbench.errors import MatrixSyntaxError, NegativeCostError, NonIntegerCostError, NonSquareError
from assignbench.matrixfile import input_digest

from conftest import EXAMPLE_ROWS


def test_parse_example():
    assert parse_matrix(b"3\n9 8 7\n6 5 4\n3 2 1\n") == new_cost_matrix(EXAMPLE_ROWS)


def test_parse_single_zero():
    assert parse_matrix(b"1\n0\n").rows == ((0,),)


def test_short_row_is_syntax_error_at_line_3():
    with pytest.raises(MatrixSyntaxError) as e:
        parse_matrix(b"2\n1 2\n3\n")
    assert e.value.line == 3
    assert isinstance(e.value, NonSquareError)


def test_comments_crlf_and_blank_lines():
    text = b"# header comment\r\n3\r\n\r\n9 8 7\r\n  # inline comment line\r\n6\t5 4\r\n3 2 1"
    assert parse_matrix(text) == new_cost_matrix(EXAMPLE_ROWS)


def test_empty_matrix():
    assert parse_matrix(b"0\n").size == 0


@pytest.mark.parametrize("text,line", [
    (b"", 1),
    (b"x\n", 1),
    (b"2\n1 2\n", 3),
    (b"2\n1 2\n3 4\n5 6\n", 4),
    (b"2\n1 a\n3 4\n", 2),
    (b"2\n1 2\n3 4 5\n", 3),
    (b"\xff\n", 1),
])
def test_syntax_errors(text, line):
    with pytest.raises(MatrixSyntaxError) as e:
        parse_matrix(text)
    assert e.value.line == line


def test_negative_rejected():
    with pytest.raises(NegativeCostError):
        parse_matrix(b"2\n1 -2\n3 4\n")


@pytest.mark.parametrize("token", ["1.5", "2.0", "1e3", ".5"])
def test_decimals_rejected(token):
    with pytest.raises(NonIntegerCostError):
        parse_matrix(f"2\n1 {token}\n3 4\n".encode())


def test_serialize_format():
    assert serialize_matrix(new_cost_matrix(EXAMPLE_ROWS)) == "3\n9 8 7\n6 5 4\n3 2 1\n"


@given(st.integers(0, 6).flatmap(
    lambda k: st.lists(st.lists(st.integers(0, 2**63 - 1), min_size=k, max_size=k), min_size=k, max_size=k)))
def test_round_trip(rows):
    m = new_cost_matrix(rows)
    assert parse_matrix(serialize_matrix(m).encode()) == m


def test_digest_stable():
    a = input_digest(new_cost_matrix(EXAMPLE_ROWS))
    assert a == input_digest(parse_matrix(b"# c\n3\n9 8 7\n6 5 4\n3 2 1\n"))
    assert a.startswith("sha256:") and len(a) == 7 + 64
