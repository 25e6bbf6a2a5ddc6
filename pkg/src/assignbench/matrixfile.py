"""Plain-text matrix files.

Format (UTF-8, LF or CRLF)::

    # comment lines start with '#'; blank lines are ignored
    3
    9 8 7
    6 5 4
    3 2 1

The first content line is K, followed by exactly K rows of K whitespace
separated non-negative integers.
"""

from __future__ import annotations

import hashlib
import re

from .errors import (
    MatrixSyntaxError,
    NegativeCostError,
    NonIntegerCostError,
    NonSquareError,
)
from .model import CostMatrix

_INT = re.compile(r"[+-]?\d+\Z")
_DECIMAL = re.compile(r"[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?\Z")


class RowLengthError(MatrixSyntaxError, NonSquareError):
    pass


def _content_lines(text: str):
    for lineno, line in enumerate(text.split("\n"), 1):
        line = line.rstrip("\r")
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, stripped


def _parse_entry(token: str, lineno: int) -> int:
    if _INT.match(token):
        value = int(token)
        if value < 0:
            raise NegativeCostError(f"line {lineno}: negative cost {token}")
        return value
    if _DECIMAL.match(token):
        raise NonIntegerCostError(f"line {lineno}: non-integer cost {token}; scale costs to integers")
    raise MatrixSyntaxError(lineno, f"not an integer: {token!r}")


def parse_matrix(data) -> CostMatrix:
    if isinstance(data, (bytes, bytearray)):
        try:
            data = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MatrixSyntaxError(data[: exc.start].count(b"\n") + 1, "invalid UTF-8") from None
    lines = list(_content_lines(data))
    if not lines:
        raise MatrixSyntaxError(1, "missing size header")
    head_no, head = lines[0]
    if not _INT.match(head) or int(head) < 0:
        raise MatrixSyntaxError(head_no, f"expected the matrix size K, found {head!r}")
    k = int(head)
    body = lines[1:]
    if len(body) < k:
        last = body[-1][0] if body else head_no
        raise MatrixSyntaxError(last + 1, f"expected {k} rows, file ends after {len(body)}")
    if len(body) > k:
        raise MatrixSyntaxError(body[k][0], f"unexpected content after {k} rows")
    rows = []
    for lineno, line in body:
        tokens = line.split()
        if len(tokens) != k:
            raise RowLengthError(lineno, f"expected {k} entries, found {len(tokens)}")
        rows.append([_parse_entry(t, lineno) for t in tokens])
    return CostMatrix(rows)


def serialize_matrix(m: CostMatrix) -> str:
    lines = [str(m.size)] + [" ".join(str(x) for x in row) for row in m.rows]
    return "\n".join(lines) + "\n"


def input_digest(m: CostMatrix) -> str:
    return "sha256:" + hashlib.sha256(serialize_matrix(m).encode("ascii")).hexdigest()
