from __future__ import annotations

import pytest

from deltaindex.ulrich import (
    corollary_audit,
    is_ulrich,
    minimal_reduction,
    order,
    powers_free_audit,
    reduction_number,
)


def test_minimal_reduction_examples(regular, cusp, y2x5):
    red = minimal_reduction(cusp.ring.maximal_ideal)
    assert red.reduction_number == 1 and red.Q.min_gens() == 1
    red = minimal_reduction(y2x5.ideals["I"])
    assert red.reduction_number == 1 and red.Q == y2x5.ring.ideal(["x^2"])
    red = minimal_reduction(regular.ring.maximal_ideal)
    assert red.reduction_number == 0 and red.Q == regular.ring.maximal_ideal


def test_generic_reduction_is_seeded(cusp):
    a = minimal_reduction(cusp.ideals["I"], seed=4)
    b = minimal_reduction(cusp.ideals["I"], seed=4)
    assert str(a.Q) == str(b.Q) and a.reduction_number == b.reduction_number


def test_reduction_number_of_x4_maximal(x4):
    R = x4.ring
    assert reduction_number(R.maximal_ideal, R.ideal(["y"])) == 3


def test_ulrich_examples(regular, cusp, x4):
    cert = is_ulrich(cusp.ring.maximal_ideal)
    assert cert.is_ulrich and not cert.parameter and cert.routes_agree
    cert = is_ulrich(x4.ideals["I"])
    assert cert.is_ulrich and cert.reduction.Q == x4.ring.ideal(["y"])
    cert = is_ulrich(regular.ring.maximal_ideal)
    assert cert.is_ulrich and cert.parameter


def test_not_ulrich(cusp, x4):
    assert not is_ulrich(cusp.ideals["I"]).is_ulrich
    cert = is_ulrich(x4.ring.maximal_ideal)
    assert not cert.is_ulrich and cert.reduction.reduction_number == 3 and cert.routes_agree


def test_ulrich_needs_primary_ideal(regular):
    with pytest.raises(ValueError):
        is_ulrich(regular.ring.ideal(["x"]))


def test_powers_free_examples(cusp, x4, y2x5):
    audit = powers_free_audit(cusp.ring.maximal_ideal, 4)
    assert audit["all_free"] and [lv["rank"] for lv in audit["levels"]] == [2, 2, 2, 2]
    audit = powers_free_audit(x4.ideals["I"], 3)
    assert audit["all_free"] and [lv["rank"] for lv in audit["levels"]] == [2, 2, 2]
    assert all(lv["length_matches"] for lv in audit["levels"])
    assert powers_free_audit(y2x5.ideals["I"], 3)["all_free"]


def test_powers_free_stops_at_first_failure(cusp):
    audit = powers_free_audit(cusp.ideals["I"], 4)
    assert not audit["all_free"] and len(audit["levels"]) == 1


def test_order(cusp, x4):
    assert order(cusp.ring.maximal_ideal) == 1
    assert order(x4.ideals["I"]) == 1
    assert order(cusp.ring.ideal(["x^2", "x*y"])) == 2


def test_corollary_audit(cusp, x4, y2x5):
    res = corollary_audit(x4.ring, x4.ideals["I"], True)
    assert res["verdict"] == "pass" and (res["order"], res["index_of_ring"]) == (1, 4)
    res = corollary_audit(cusp.ring, cusp.ring.maximal_ideal, True)
    assert (res["order"], res["index_of_ring"]) == (1, 2)
    assert corollary_audit(cusp.ring, cusp.ring.maximal_ideal, False)["verdict"] == "skipped"
    assert corollary_audit(cusp.ring, cusp.ideals["x"], True)["verdict"] == "skipped"
    assert corollary_audit(y2x5.ring, y2x5.ideals["I"], True)["verdict"] == "pass"
