"""Plain-text tableau files for user-supplied schemes.

Grammar (one assignment per line, '#' starts a comment):

    name = my-method            # optional label
    c = 0,0.5,1                 # nodes; defines the stage count
    a[2][1] = scale:0.5 phi:1 w:0.5
    a[3][2] = scale:0.5 phi:2 w:2 + scale:1 phi:2 w:2
    b[1] = scale:1 phi:1 w:1 + scale:1 phi:2 w:-3 + scale:1 phi:3 w:4

Every phi term is a (scale, phi order, weight) triple; terms are joined
with '+'. Stages missing a b entry default to zero.
"""

from __future__ import annotations

import re

from .errors import ParameterError
from .tableaus import PhiCombo, PhiTerm, Tableau


class TableauParseError(ParameterError):
    def __init__(self, line_no, column, message):
        self.line_no = line_no
        self.column = column
        super().__init__(f"line {line_no}, column {column}: {message}")


_TERM_RE = re.compile(r"^scale:(?P<scale>\S+)\s+phi:(?P<phi>\S+)\s+w:(?P<w>\S+)$")
_A_RE = re.compile(r"^a\[(\d+)\]\[(\d+)\]$")
_B_RE = re.compile(r"^b\[(\d+)\]$")


def _parse_combo(rhs: str, line_no: int, offset: int) -> PhiCombo:
    terms = []
    pos = offset
    for chunk in rhs.split("+"):
        text = chunk.strip()
        m = _TERM_RE.match(text)
        if not m:
            raise TableauParseError(
                line_no, pos + chunk.index(text[0]) + 1 if text else pos + 1,
                f"expected 'scale:<c> phi:<k> w:<weight>', got {text!r}")
        try:
            scale = float(m.group("scale"))
            order = int(m.group("phi"))
            weight = float(m.group("w"))
        except ValueError as exc:
            raise TableauParseError(line_no, pos + 1, str(exc)) from exc
        terms.append(PhiTerm(scale=scale, order=order, weight=weight))
        pos += len(chunk) + 1
    return PhiCombo(terms=tuple(terms))


def parse_tableau(text: str, name: str = "custom") -> Tableau:
    c = None
    a = {}
    b = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise TableauParseError(line_no, 1, "expected '<target> = <value>'")
        lhs, rhs = (part.strip() for part in line.split("=", 1))
        rhs_col = raw.index("=") + 2
        if lhs == "name":
            name = rhs
        elif lhs == "c":
            try:
                c = tuple(float(v) for v in rhs.split(","))
            except ValueError as exc:
                raise TableauParseError(line_no, rhs_col, f"bad node list: {exc}") from exc
        elif _A_RE.match(lhs):
            i, j = (int(g) for g in _A_RE.match(lhs).groups())
            a[(i, j)] = _parse_combo(rhs, line_no, rhs_col)
        elif _B_RE.match(lhs):
            i = int(_B_RE.match(lhs).group(1))
            b[i] = _parse_combo(rhs, line_no, rhs_col)
        else:
            raise TableauParseError(line_no, 1, f"unknown target {lhs!r}")
    if c is None:
        raise TableauParseError(0, 0, "missing node line 'c = ...'")
    s = len(c)
    for i in b:
        if not 1 <= i <= s:
            raise TableauParseError(0, 0, f"b[{i}] outside stage range 1..{s}")
    empty = PhiCombo(terms=())
    return Tableau(
        name=name, c=c, a=a,
        b=tuple(b.get(i, empty) for i in range(1, s + 1)),
    )


def load_tableau(path) -> Tableau:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParameterError(f"cannot read tableau file {path}: {exc}") from exc
    return parse_tableau(text)
