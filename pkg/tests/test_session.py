from __future__ import annotations

import pytest

from qgor.session import SessionError, parse_session, parse_session_text

TWO_PLANES = """ring R = F32003[X,Y,Z,T] grevlex;
ideal I = X*Y, X*T, Z*Y, Z*T;
seq s = X+Y, Z+T;
"""


def test_two_planes_session():
    s = parse_session_text(TWO_PLANES)
    assert list(s.rings) == ["R"] and list(s.ideals) == ["I"] and list(s.seqs) == ["s"]
    R = s.ring()
    assert R.n == 4 and R.d == 2
    _, elems = s.seq("s")
    assert [str(f) for f in elems] == ["X + Y", "Z + T"]


def test_empty_session():
    s = parse_session_text("")
    assert s.names() == []
    with pytest.raises(SessionError):
        s.ring()


def test_comments_and_multiline_declarations():
    s = parse_session_text("ring R = Q[x,y]; # a ring\nideal I = x^2, // first\n  y^2;\n")
    assert [str(g) for g in s.ideals["I"].gens] == ["x^2", "y^2"]


def test_first_ideal_defines_the_ring_and_later_ideals_are_lifted():
    s = parse_session_text("ring R = Q[x,y];\nideal I = x^2;\nideal J = y;\n")
    R, J = s.ideal("J")
    assert R.I.gens[0].degree() == 2
    assert J.contains(R.S.parse("x^2")) and J.contains(R.S.parse("y"))
    assert s.default_ideal("R") == "I"


def test_empty_defining_ideal():
    s = parse_session_text("ring R = Q[x,y];\nideal I = ;\n")
    assert s.ring().I.is_zero()


def test_duplicate_name_reports_both_sites():
    with pytest.raises(SessionError) as err:
        parse_session_text("ring R = Q[x];\nideal I = x;\nseq I = x;\n")
    msg = str(err.value)
    assert "line 2:1" in msg and "line 3:1" in msg and err.value.line == 3


@pytest.mark.parametrize("text,line,col", [
    ("ring R = Q[x,y];\nideal I = x + y^2;", 2, 11),
    ("ideal I = x;", 1, 1),
    ("ring R = Q[x,y];\nideal I = x*+y;", 2, 13),
    ("ring R = Q[x]", 1, 1),
    ("ring R = Q[x] foo;", 1, 15),
    ("ring R = Q[x];\nseq s = x, , x;", 2, 11),
    ("ring R = Q[x];\nideal I = x + w;", 2, 15),
    ("ring R = R[x];", 1, 10),
    ("module M = x;", 1, 1),
])
def test_errors_carry_positions(text, line, col):
    with pytest.raises(SessionError) as err:
        parse_session_text(text)
    assert (err.value.line, err.value.column) == (line, col)


def test_undefined_names():
    s = parse_session_text(TWO_PLANES)
    for call in (lambda: s.ring("S"), lambda: s.ideal("J"), lambda: s.seq("t")):
        with pytest.raises(SessionError):
            call()


def test_parse_session_file(tmp_path):
    p = tmp_path / "a.qg"
    p.write_text(TWO_PLANES, encoding="utf-8")
    assert parse_session(p).path == str(p)
    with pytest.raises(SessionError):
        parse_session(tmp_path / "missing.qg")
