from __future__ import annotations

import pytest

from deltaindex.approximation import (
    canonical_module,
    cosyzygy,
    cosyzygy_contract,
    delta,
    delta_n,
    dual_module,
    free_rank,
    free_rank_by_splitting,
    index_of_ideal,
    is_parameter_ideal,
    mcm_approximation,
    trace_ideal,
)
from deltaindex.rings import (
    PresentedModule,
    PresentedRing,
    direct_sum,
    ideal_module,
    is_mcm,
    prune,
    syzygy_module,
)


def test_dual_of_maximal_ideal_on_cusp(cusp):
    R = cusp.ring
    D, funcs = dual_module(ideal_module(R.maximal_ideal))
    assert D.mu() == 2 and is_mcm(D)


def test_canonical_modules_are_cyclic(regular, cusp, x4, y2x5):
    for s in (regular, cusp, x4, y2x5):
        w = canonical_module(s.ring)
        assert w.mu() == 1 and is_mcm(w)
        assert trace_ideal(w).is_unit()


def test_trace_of_maximal_ideal(cusp):
    R = cusp.ring
    assert trace_ideal(ideal_module(R.maximal_ideal)) == R.maximal_ideal


def test_cosyzygy_of_free_is_zero(cusp):
    C, _ = cosyzygy(cusp.ring.free(1))
    assert C.is_zero()


def test_cosyzygy_contracts(cusp):
    R = cusp.ring
    assert cosyzygy_contract(ideal_module(R.maximal_ideal))["holds"]
    Om, _ = syzygy_module(R.cyclic(R.maximal_ideal ** 2), 1)
    assert cosyzygy_contract(Om)["holds"]


def test_cosyzygy_needs_mcm(cusp):
    R = cusp.ring
    with pytest.raises(ValueError):
        cosyzygy(R.cyclic(R.maximal_ideal))


def test_approximation_of_mcm_module(cusp):
    R = cusp.ring
    M = ideal_module(R.maximal_ideal)
    cert = mcm_approximation(M)
    assert cert.certified
    assert cert.X.mu() == 2 and cert.Y.is_zero()


def test_approximation_of_quotient_by_nonzerodivisor(cusp):
    R = cusp.ring
    cert = mcm_approximation(R.cyclic(R.ideal(["x"])))
    assert cert.certified
    assert cert.X.mu() == 1 and cert.Y.mu() == 1 and cert.delta == 1


def test_residue_field_of_cusp_has_no_free_part(cusp):
    R = cusp.ring
    cert = mcm_approximation(R.cyclic(R.maximal_ideal))
    assert cert.certified and free_rank(cert.X) == 0


def test_certificates_on_suite(regular, cusp, x4, y2x5):
    for s in (regular, cusp, x4, y2x5):
        R = s.ring
        for I in s.ideals.values():
            for l in (1, 2):
                cert = mcm_approximation(R.cyclic(I ** l))
                assert cert.certified, (s.name, str(I), l)


def test_free_rank_matches_splitting(cusp, x4):
    for s in (cusp, x4):
        R = s.ring
        m = ideal_module(R.maximal_ideal)
        for X in (R.free(2), m, direct_sum(m, R.free(1)), direct_sum(R.free(1), m, R.free(1))):
            assert free_rank(X) == free_rank_by_splitting(X)


def test_direct_sum_with_free_adds_to_delta(cusp):
    R = cusp.ring
    k = R.cyclic(R.maximal_ideal)
    assert delta(direct_sum(k, R.free(1))) == delta(k) + 1


def test_parameter_ideal_examples(regular, cusp):
    assert is_parameter_ideal(cusp.ring.ideal(["x"]))
    assert not is_parameter_ideal(cusp.ring.maximal_ideal)
    assert is_parameter_ideal(regular.ring.maximal_ideal)
    assert not is_parameter_ideal(regular.ring.ideal(["x"]))


def test_index_examples(regular, cusp, y2x5):
    rep = index_of_ideal(regular.ring, regular.ring.maximal_ideal, "both")
    assert rep.index_delta == rep.index_regularity == 1
    rep = index_of_ideal(cusp.ring, cusp.ring.maximal_ideal, "both")
    assert rep.index_delta == rep.index_regularity == 2 and rep.equality
    rep = index_of_ideal(y2x5.ring, y2x5.ideals["I"], "both")
    assert rep.index_delta == rep.index_regularity == 2


def test_index_methods_alone(cusp):
    R = cusp.ring
    assert index_of_ideal(R, R.maximal_ideal, "delta_search").index_delta == 2
    assert index_of_ideal(R, R.maximal_ideal, "regularity").index_regularity == 2
    with pytest.raises(ValueError):
        index_of_ideal(R, R.maximal_ideal, "guess")


def test_delta_of_syzygies(cusp):
    R = cusp.ring
    # Omega(R/m) = m is MCM without free summand; Omega^2 is again m
    assert delta_n(R.cyclic(R.maximal_ideal), 1) == 0
    assert delta_n(R.cyclic(R.ideal(["x"])), 1) == 1


def test_delta_is_monotone_along_surjections(regular, cusp, x4, y2x5):
    # J inside J' gives R/J onto R/J', hence delta(R/J) >= delta(R/J')
    for s in (regular, cusp, x4, y2x5):
        R = s.ring
        ideals = list(s.ideals.values())
        ideals += [I * I for I in ideals]
        for J in ideals:
            for Jp in ideals:
                if J.issubset(Jp):
                    assert delta(R.cyclic(J)) >= delta(R.cyclic(Jp))


def test_length_equation_is_not_sufficient(cusp):
    # m satisfies len(m/xm) = len(R/xR) like a free module of rank one, yet has no free summand
    R = cusp.ring
    x = R.poly("x")
    m = ideal_module(R.maximal_ideal)
    xm = PresentedModule(R, 2, list(m.relations) + [(x, R.S.zero), (R.S.zero, x)])
    assert xm.length() == R.cyclic(R.ideal(["x"])).length() == 2
    assert free_rank(m) == 0 and free_rank_by_splitting(m) == 0


def test_non_gorenstein_rejected():
    R = PresentedRing(["x", "y", "z"], ["y^3-x*z", "x^4-y*z", "z^2-x^3*y^2"])
    assert not R.is_gorenstein
    with pytest.raises(ValueError):
        mcm_approximation(R.cyclic(R.maximal_ideal))


def test_delta_of_cyclic_modules_is_zero_or_one(regular, cusp, x4, y2x5):
    for s in (regular, cusp, x4, y2x5):
        for I in s.ideals.values():
            for l in (1, 2, 3):
                assert delta(s.ring.cyclic(I ** l)) in (0, 1)


def test_ulrich_non_parameter_ideals_have_index_two(cusp, x4, y2x5):
    from deltaindex.ulrich import is_ulrich

    for s in (cusp, x4, y2x5):
        for I in s.ideals.values():
            if I.is_m_primary() and not is_parameter_ideal(I) and is_ulrich(I).is_ulrich:
                assert delta(s.ring.cyclic(I)) == 0
                assert index_of_ideal(s.ring, I, "delta_search").index_delta == 2


def test_search_bound_follows_regularity(x4):
    rep = index_of_ideal(x4.ring, x4.ring.maximal_ideal, "both", bound=2)
    assert rep.bound == 6 and rep.index_delta == 4
