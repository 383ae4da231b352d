from __future__ import annotations

import pytest

from deltaindex.graded import (
    HilbertSeries,
    a_invariant,
    assoc_graded,
    hilbert_series,
    is_cohen_macaulay,
    linear_hsop,
    ord_and_initial_form,
    reg_via_membership,
    regularity,
    series_of_monomial_ideal,
)
from deltaindex.rings import PresentedRing


def gr_m(session):
    R = session.ring
    return assoc_graded(R, R.maximal_ideal)


def test_gr_of_regular_ring_is_polynomial(regular):
    G = gr_m(regular)
    assert hilbert_series(G) == HilbertSeries((1,), 2)
    assert regularity(G) == 0 and a_invariant(G) == -2


def test_gr_of_cusp(cusp):
    G = gr_m(cusp)
    assert hilbert_series(G) == HilbertSeries((1, 1), 1)
    assert str(G.hilbert_series) == "(1 + t)/(1-t)"
    assert G.hilbert_series.expand(5) == [1, 2, 2, 2, 2]
    assert is_cohen_macaulay(G)
    assert regularity(G) == 1 and a_invariant(G) == 0


def test_gr_of_x4(x4):
    G = gr_m(x4)
    assert hilbert_series(G) == HilbertSeries((1, 1, 1, 1), 1)
    assert is_cohen_macaulay(G) and regularity(G) == 3


def test_hilbert_function_matches_direct_lengths(regular, cusp, x4, y2x5):
    for s in (regular, cusp, x4, y2x5):
        for name, I in s.ideals.items():
            if I.is_m_primary():
                assert assoc_graded(s.ring, I).cross_validate(6), (s.name, name)


def test_series_of_polynomial_ring():
    assert series_of_monomial_ideal([], 0, 1) == HilbertSeries((1,), 1)


def test_hsop_is_recorded_and_reproducible(cusp):
    G = gr_m(cusp)
    a = linear_hsop(G, seed=3)
    b = linear_hsop(assoc_graded(cusp.ring, cusp.ring.maximal_ideal), seed=3)
    assert a.coeffs == b.coeffs and a.regular


def test_reg_via_membership_examples(regular, cusp, x4):
    R = cusp.ring
    assert reg_via_membership(R, R.maximal_ideal, [R.poly("x")]) == 1
    R = x4.ring
    assert reg_via_membership(R, R.maximal_ideal, [R.poly("y")]) == 3
    R = regular.ring
    assert reg_via_membership(R, R.maximal_ideal, [R.poly("x"), R.poly("y")]) == 0


def test_regularity_agrees_with_membership(regular, cusp, x4, y2x5):
    for s in (regular, cusp, x4, y2x5):
        for I in s.ideals.values():
            if not I.is_m_primary():
                continue
            G = assoc_graded(s.ring, I)
            if is_cohen_macaulay(G):
                assert regularity(G) == reg_via_membership(s.ring, I, G.lift(linear_hsop(G)))


def test_initial_forms(cusp, x4):
    G = gr_m(cusp)
    n, form = ord_and_initial_form(cusp.ring.poly("x"), G)
    assert n == 1 and str(form) == "T1"
    n, form = ord_and_initial_form(cusp.ring.poly("y^2"), G)
    assert n == 3 and str(form) == "T1^3"
    G = assoc_graded(x4.ring, x4.ideals["I"])
    n, form = ord_and_initial_form(x4.ring.poly("x^2"), G)
    assert n == 1 and str(form) == "T1"


def test_non_primary_ideal_rejected(regular):
    with pytest.raises(ValueError):
        assoc_graded(regular.ring, regular.ring.ideal(["x"]))


def test_non_cm_graded_ring_has_no_regularity():
    # k[[t^4, t^5, t^11]]: Hilbert function 1, 3, 3, 4, 4, ...
    R = PresentedRing(["x", "y", "z"], ["y^3-x*z", "x^4-y*z", "z^2-x^3*y^2"])
    G = assoc_graded(R, R.maximal_ideal)
    assert G.hilbert_series.expand(5) == [1, 3, 3, 4, 4]
    assert not is_cohen_macaulay(G)
    with pytest.raises(ValueError):
        regularity(G)
