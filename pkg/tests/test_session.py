from __future__ import annotations

import json

import pytest

from deltaindex.session import SessionError, load_session, resolve_session, session_from_dict


def base():
    return {"schema": 1, "name": "t", "field": {"prime": 1048583}, "variables": ["x", "y"],
            "defining_ideal": ["y^2-x^3"], "local": True, "ideals": {"I": ["x^2", "y"]},
            "elements": {"I": "y"}, "assertions": {"gorenstein_punctured": True}}


def test_round_trip_from_file(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps(base()))
    s = load_session(p)
    assert s.ring.dim == 1
    assert set(s.ideals) == {"I", "m"}
    assert s.assertions["gorenstein_punctured"]


def test_literal_ideal():
    s = session_from_dict(base())
    name, I = s.ideal("(x, y^2)")
    assert I == s.ring.ideal(["x", "y^2"])


def test_unknown_ideal():
    s = session_from_dict(base())
    with pytest.raises(SessionError, match="unknown ideal"):
        s.ideal("J")


def test_bad_polynomial_is_reported():
    data = base()
    data["ideals"]["J"] = ["x+*y"]
    with pytest.raises(SessionError, match="ideal 'J'"):
        session_from_dict(data)


def test_undeclared_variable():
    data = base()
    data["defining_ideal"] = ["z^2"]
    with pytest.raises(SessionError):
        session_from_dict(data)


def test_bad_json_is_positioned(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"variables": ["x",]}')
    with pytest.raises(SessionError, match="line 1 column"):
        load_session(p)


def test_bad_field_and_schema():
    data = base()
    data["field"] = {"prime": 10}
    with pytest.raises(SessionError, match="field"):
        session_from_dict(data)
    data = base()
    data["schema"] = 2
    with pytest.raises(SessionError, match="schema"):
        session_from_dict(data)


def test_rationals_field():
    data = base()
    data["field"] = {"rationals": True}
    assert session_from_dict(data).ring.field.spec == {"rationals": True}


def test_suite_names_resolve():
    for name in ("regular", "cusp", "x4.json", "y2x5"):
        assert resolve_session(name).ring.nvars == 2
