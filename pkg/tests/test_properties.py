from __future__ import annotations

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from deltaindex.bases import IdealHandle, intersect, spair_certificate
from deltaindex.bases import module_order, module_standard_basis, poly_to_vec
from deltaindex.poly import (
    Ordering,
    PolyRing,
    PrimeField,
    TermOrder,
    compare_monomials,
    mono_divides,
    mono_mul,
    parse_polynomial,
)
from deltaindex.rings import PresentedRing, minimal_resolution

F = PrimeField()
SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

monomials = st.tuples(st.integers(0, 4), st.integers(0, 4))
orders = st.sampled_from([
    TermOrder("lex", 2), TermOrder("degrevlex", 2), TermOrder("negdegrevlex", 2),
    TermOrder("product", 2, block=1), TermOrder("weighted", 2, weights=(2, 1)),
    TermOrder("lex", 2, priority=(1, 0)),
])
coeffs = st.integers(-50, 50)
polys = st.dictionaries(monomials, coeffs, max_size=5)
elements = st.integers(0, F.p - 1)


def poly(R, terms):
    f = R.zero
    for m, c in terms.items():
        f = f + R.monomial(m, c)
    return f


@SETTINGS
@given(orders, monomials, monomials)
def test_order_is_total_and_antisymmetric(o, a, b):
    ab, ba = compare_monomials(a, b, o), compare_monomials(b, a, o)
    assert ab == -ba
    assert (ab == Ordering.EQ) == (a == b)


@SETTINGS
@given(orders, monomials, monomials, monomials)
def test_order_is_multiplicative_and_transitive(o, a, b, c):
    assert compare_monomials(mono_mul(a, c), mono_mul(b, c), o) == compare_monomials(a, b, o)
    if compare_monomials(a, b, o) >= 0 and compare_monomials(b, c, o) >= 0:
        assert compare_monomials(a, c, o) >= 0


@SETTINGS
@given(orders, monomials)
def test_global_orders_put_one_last_and_local_first(o, a):
    if a == (0, 0):
        return
    expected = Ordering.GT if o.is_local else Ordering.LT
    assert compare_monomials((0, 0), a, o) == expected


@SETTINGS
@given(polys)
def test_parse_print_round_trip(terms):
    R = PolyRing(F, ["x", "y"])
    f = poly(R, terms)
    assert parse_polynomial(str(f), R) == f


@SETTINGS
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    R = PolyRing(F, ["x", "y"])
    f, g, h = poly(R, a), poly(R, b), poly(R, c)
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert (f - f).is_zero()


@SETTINGS
@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    assert F.norm(a * (b + c)) == F.norm(a * b + a * c)
    if F.norm(a):
        assert F.norm(a * F.inv(a)) == 1


@SETTINGS
@given(st.lists(monomials, min_size=1, max_size=4), monomials, st.booleans())
def test_monomial_membership_is_divisibility(gens, m, local):
    R = PolyRing(F, ["x", "y"], "negdegrevlex" if local else "degrevlex")
    I = IdealHandle(R, [R.monomial(g) for g in gens])
    assert I.contains(R.monomial(m)) == any(mono_divides(g, m) for g in gens)


@SETTINGS
@given(st.lists(polys, min_size=1, max_size=3), orders)
def test_standard_bases_pass_certificate(gens, o):
    R = PolyRing(F, ["x", "y"], o)
    fs = [poly(R, t) for t in gens]
    fs = [f for f in fs if not f.is_zero()]
    if not fs:
        return
    basis, _ = module_standard_basis([poly_to_vec(f) for f in fs], o, F, rank_one=True)
    assert spair_certificate(basis, module_order(o), F)
    I = IdealHandle(R, fs)
    assert all(I.contains(f) for f in fs)


@SETTINGS
@given(st.lists(monomials, min_size=1, max_size=3), st.lists(monomials, min_size=1, max_size=3))
def test_intersection_containments(a, b):
    R = PolyRing(F, ["x", "y"])
    A = IdealHandle(R, [R.monomial(m) for m in a])
    B = IdealHandle(R, [R.monomial(m) for m in b])
    C = intersect(A, B)
    assert A.contains_ideal(C) and B.contains_ideal(C)
    assert C.contains_ideal(IdealHandle(R, [f * g for f in A.gens for g in B.gens]))


cusp = PresentedRing(["x", "y"], ["y^2-x^3"], name="cusp")
cusp_ideals = st.lists(st.sampled_from(["x", "y", "x^2", "x*y", "y+x^2", "x^3"]), min_size=1, max_size=2)


@SETTINGS
@given(cusp_ideals, st.integers(1, 3), st.integers(1, 3))
def test_power_additivity(gens, a, b):
    I = cusp.ideal(gens)
    assert (I ** a) * (I ** b) == I ** (a + b)


@SETTINGS
@given(cusp_ideals, st.integers(1, 3))
def test_power_filtration_is_decreasing(gens, l):
    I = cusp.ideal(gens)
    lower, upper = I ** (l + 1), I ** l
    assert lower.issubset(upper)
    if I.is_m_primary():
        assert cusp.cyclic(lower).length() > cusp.cyclic(upper).length()


@SETTINGS
@given(cusp_ideals)
def test_resolutions_are_exact_minimal_complexes(gens):
    res = minimal_resolution(cusp.cyclic(cusp.ideal(gens)), 3)
    assert res.is_minimal() and res.is_complex()
    assert all(res.is_exact_at(k) for k in range(1, len(res.differentials)))
