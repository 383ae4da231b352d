"""Associated graded rings ``gr_I(R)``, Hilbert series, linear systems of
parameters, Cohen-Macaulay tests, a-invariant and regularity.

``G = gr_I(R)`` is presented as ``k[x, T_1..T_s] / J`` where ``T_j`` stands
for the initial form of the j-th generator of I.  ``J`` is the Rees kernel
(found by eliminating an auxiliary variable) plus ``I`` and ``L``.  All
counting uses a term order that compares T-degree first.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property

from .bases import IdealHandle, eliminate, syzygies
from .poly import PolyRing, Polynomial, TermOrder
from .rings import Ideal, PresentedRing, staircase_size

# ---------------------------------------------------------------- integer polynomials


def _padd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
        if not out[k]:
            del out[k]
    return out


def _pshift(a: dict, s) -> dict:
    return {(k[0] + s[0], k[1] + s[1]): v for k, v in a.items()}


def _minimal_monomials(mons):
    mons = sorted(set(mons), key=lambda m: (sum(m), m))
    out = []
    for m in mons:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def _numerator(mons, degree, memo):
    """K-polynomial numerator of ``k[vars]/(mons)`` in the bigrading ``degree``."""
    mons = _minimal_monomials(mons)
    key = tuple(mons)
    if key in memo:
        return memo[key]
    if not mons:
        res = {(0, 0): 1}
    elif all(not (set(i for i, e in enumerate(a) if e) & set(i for i, e in enumerate(b) if e))
             for k, a in enumerate(mons) for b in mons[k + 1:]):
        res = {(0, 0): 1}
        for m in mons:
            res = _padd(res, _pshift(res, degree(m)), -1)
    else:
        # pivot on the generator of largest degree
        m = max(mons, key=lambda u: (sum(u), u))
        rest = [u for u in mons if u != m]
        colon = [tuple(max(a - b, 0) for a, b in zip(u, m)) for u in rest]
        res = _padd(_numerator(rest, degree, memo),
                    _pshift(_numerator(colon, degree, memo), degree(m)), -1)
    memo[key] = res
    return res


@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / (1 - t)^dim`` with ``numerator(1) != 0`` unless ``dim == 0``."""

    numerator: tuple
    dim: int

    def coefficient(self, n: int) -> int:
        if n < 0:
            return 0
        d = self.dim
        if d == 0:
            return self.numerator[n] if n < len(self.numerator) else 0
        return sum(h * math.comb(n - i + d - 1, d - 1) for i, h in enumerate(self.numerator) if i <= n)

    def expand(self, count: int) -> list:
        return [self.coefficient(n) for n in range(count)]

    @property
    def degree(self) -> int:
        return len(self.numerator) - 1

    def __str__(self):
        terms = []
        for i, c in enumerate(self.numerator):
            if not c:
                continue
            mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono == "1":
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        num = " + ".join(terms).replace("+ -", "- ") or "0"
        if self.dim == 0:
            return num
        den = "(1-t)" if self.dim == 1 else f"(1-t)^{self.dim}"
        return f"({num})/{den}"


def series_of_monomial_ideal(lms, nx: int, nt: int) -> HilbertSeries:
    """Hilbert series in T-degree of ``k[x, T]/(lms)`` assuming finite graded pieces."""
    degree = lambda m: (sum(m[:nx]), sum(m[nx:]))
    num = _numerator(lms, degree, {})
    # divide by (1 - z)^nx exactly, then set z = 1
    for _ in range(nx):
        by_t = {}
        for (a, b), c in num.items():
            by_t.setdefault(b, {})[a] = c
        new = {}
        for b, coeffs in by_t.items():
            top = max(coeffs)
            if sum(coeffs.values()):
                raise ValueError("graded pieces are not of finite length")
            run = 0
            for a in range(top):
                run += coeffs.get(a, 0)
                if run:
                    new[(a, b)] = run
        num = new
    poly = {}
    for (a, b), c in num.items():
        poly[b] = poly.get(b, 0) + c
    top = max([b for b, c in poly.items() if c], default=0)
    coeffs = [poly.get(i, 0) for i in range(top + 1)]
    dim = nt
    while dim > 0 and sum(coeffs) == 0:
        # divide by (1 - t)
        q = []
        run = 0
        for c in coeffs[:-1]:
            run += c
            q.append(run)
        coeffs = q or [0]
        dim -= 1
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return HilbertSeries(tuple(coeffs), dim)


# ---------------------------------------------------------------- the presentation


@dataclass
class HsopCertificate:
    """Degree-one elements ``theta_i = sum_j coeffs[i][j] * T_j`` with ``G/(theta)`` Artinian."""

    coeffs: list
    elements: list
    seed: int
    attempts: int
    regular: bool | None = None

    def to_dict(self, G: "GradedAlgebraPresentation") -> dict:
        return {
            "theta": [str(e) for e in self.elements],
            "seed": self.seed,
            "attempts": self.attempts,
            "regular_sequence": self.regular,
            "lifts": [str(x) for x in G.lift(self)],
        }


class GradedAlgebraPresentation:
    """``gr_I(R) = k[x, T]/J`` for an ideal I primary to the maximal ideal."""

    def __init__(self, R: PresentedRing, I: Ideal, check: bool = True):
        if I.is_unit():
            raise ValueError("associated graded ring of the unit ideal")
        self.R = R
        self.I = I.minimalized()
        gens = self.I.gens
        if not gens:
            raise ValueError("the zero ideal is not primary to the maximal ideal")
        self.gens = gens
        s = len(gens)
        n = R.nvars
        tnames = [f"T{j + 1}" for j in range(s)]
        while set(tnames) & set(R.names):
            tnames = ["_" + t for t in tnames]
        self.tnames = tnames
        weights = (0,) * n + (1,) * s
        self.order = TermOrder("weighted", n + s, weights=weights)
        self.ring = PolyRing(R.field, R.names + tuple(tnames), self.order)
        if check:
            glob = IdealHandle(R.S.with_order("degrevlex"), self.I.gens + R.L)
            colength = self.I.colength()
            if colength == math.inf or staircase_size(glob.leading_monomials(), n) != colength:
                raise ValueError("ideal must be primary to the origin (globally)")
        self._cache = {}

    # -- presentation
    @cached_property
    def relations(self) -> list:
        R = self.R
        n, s = R.nvars, len(self.gens)
        big = R.S.extend(self.tnames + ["t_"], "degrevlex")
        t = big.gens()[-1]
        xpos = list(range(n))
        rels = [big.embed(l, xpos) for l in R.L]
        T = big.gens()[n:n + s]
        rels += [T[j] - t * big.embed(g, xpos) for j, g in enumerate(self.gens)]
        K = eliminate(IdealHandle(big, rels), [n + s])
        out = [Polynomial(self.ring, {m[:-1]: c for m, c in g.terms.items()}) for g in K.gens]
        out += [self.ring.embed(g, xpos) for g in self.gens]
        out += [self.ring.embed(l, xpos) for l in R.L]
        return out

    @cached_property
    def handle(self) -> IdealHandle:
        return IdealHandle(self.ring, self.relations)

    def leading_monomials(self, extra=()):
        if not extra:
            return self.handle.leading_monomials()
        return IdealHandle(self.ring, list(self.relations) + list(extra)).leading_monomials()

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.handle.reduce(self.ring.coerce(f))

    @property
    def degree_map(self) -> dict:
        return {t: str(g) for t, g in zip(self.tnames, self.gens)}

    # -- counting
    def series(self, extra=()) -> HilbertSeries:
        lms = self.leading_monomials(extra)
        return series_of_monomial_ideal(lms, self.R.nvars, len(self.gens))

    @cached_property
    def hilbert_series(self) -> HilbertSeries:
        return self.series()

    @property
    def dim(self) -> int:
        return self.hilbert_series.dim

    def hilbert_function(self, n: int) -> int:
        return self.hilbert_series.coefficient(n)

    def lengths_directly(self, count: int) -> list:
        """``len(I^n / I^{n+1})`` for n < count, via local colengths."""
        out = []
        prev = 0
        power = self.R.unit_ideal()
        for k in range(count):
            power = power * self.I if k else self.I
            cur = power.colength()
            out.append(cur - prev)
            prev = cur
        return out

    def cross_validate(self, count: int = 5) -> bool:
        return self.hilbert_series.expand(count) == self.lengths_directly(count)

    # -- systems of parameters
    def theta(self, coeffs) -> Polynomial:
        n = self.R.nvars
        T = self.ring.gens()[n:]
        out = self.ring.zero
        for c, t in zip(coeffs, T):
            if c:
                out = out + t * c
        return out

    def lift(self, cert: HsopCertificate) -> list:
        """Elements ``x_i = sum_j c_ij g_j`` of R whose initial forms are the theta_i."""
        out = []
        for row in cert.coeffs:
            x = self.R.S.zero
            for c, g in zip(row, self.gens):
                if c:
                    x = x + g * c
            out.append(x)
        return out

    def __str__(self):
        return f"k[{', '.join(self.ring.names)}]/({', '.join(map(str, self.relations))})"


def assoc_graded(R: PresentedRing, I: Ideal) -> GradedAlgebraPresentation:
    return GradedAlgebraPresentation(R, I)


def hilbert_series(G: GradedAlgebraPresentation) -> HilbertSeries:
    return G.hilbert_series


def linear_hsop(G: GradedAlgebraPresentation, seed: int = 0, max_attempts: int = 32) -> HsopCertificate:
    """Random degree-one elements ``theta_1..theta_d`` with ``G/(theta)`` Artinian."""
    key = ("hsop", seed)
    if key in G._cache:
        return G._cache[key]
    rng = random.Random(seed)
    d = G.dim
    s = len(G.gens)
    field = G.R.field
    for attempt in range(1, max_attempts + 1):
        coeffs = [[field.random_element(rng, nonzero=False) for _ in range(s)] for _ in range(d)]
        elems = [G.theta(row) for row in coeffs]
        if d and any(e.is_zero() for e in elems):
            continue
        try:
            quot = G.series(elems)
        except ValueError:
            continue
        if quot.dim == 0:
            cert = HsopCertificate(coeffs, elems, seed, attempt)
            cert.regular = quot.numerator == G.hilbert_series.numerator
            G._cache[key] = cert
            return cert
    raise RuntimeError("no linear system of parameters found; field too small?")


def artinian_reduction(G: GradedAlgebraPresentation, seed: int = 0) -> HilbertSeries:
    cert = linear_hsop(G, seed)
    return G.series(cert.elements)


def is_cohen_macaulay(G: GradedAlgebraPresentation, seed: int = 0) -> bool:
    """A linear hsop is a regular sequence iff ``HS(G)(1-t)^d = HS(G/theta G)``."""
    return bool(linear_hsop(G, seed).regular)


def a_invariant(G: GradedAlgebraPresentation, seed: int = 0) -> int:
    if not is_cohen_macaulay(G, seed):
        raise ValueError("a-invariant via the Hilbert series needs a Cohen-Macaulay ring")
    return G.hilbert_series.degree - G.dim


def regularity(G: GradedAlgebraPresentation, seed: int = 0) -> int:
    """Top nonvanishing degree of ``G/theta G`` for a linear regular hsop."""
    if not is_cohen_macaulay(G, seed):
        raise ValueError("regularity is only computed for Cohen-Macaulay graded rings")
    return artinian_reduction(G, seed).degree


def reg_via_membership(R: PresentedRing, I: Ideal, xs, bound: int = 32) -> int:
    """``max{p : I^p not contained in (x_1..x_d)}`` by ascending membership tests."""
    Q = Ideal(R, [R._coerce(x) for x in xs])
    if Q.is_unit():
        raise ValueError("elements generate the unit ideal")
    power = R.unit_ideal()
    for p in range(bound + 1):
        if p:
            power = power * I
        if power.issubset(Q):
            return p - 1
    raise RuntimeError("membership bound exceeded")


# ---------------------------------------------------------------- orders and initial forms


def _monomial_exponents(s: int, n: int):
    if s == 1:
        yield (n,)
        return
    for a in range(n, -1, -1):
        for rest in _monomial_exponents(s - 1, n - a):
            yield (a,) + rest


def _unit_inverse_mod(u: Polynomial, R: PresentedRing, I: Ideal) -> Polynomial:
    """An inverse of the unit ``u`` modulo I (I primary to the maximal ideal)."""
    u0 = u.constant_term()
    if not u0:
        raise ValueError("not a unit")
    N = I.maximal_power_exponent()
    inv0 = R.field.inv(u0)
    w = R.S.one - u * inv0
    total = R.S.one
    p = R.S.one
    for _ in range(1, N):
        p = p * w
        total = total + p
    return total * inv0


def ord_and_initial_form(x, G: GradedAlgebraPresentation, bound: int = 16):
    """``(n, x*)`` with ``n = max{m : x in I^m}`` and ``x*`` the class in ``I^n/I^{n+1}``."""
    R, I = G.R, G.I
    x = R.reduce(R._coerce(x))
    if x.is_zero():
        raise ValueError("the zero element has no order")
    n = 0
    power = I
    while power.contains(x):
        n += 1
        if n >= bound:
            raise RuntimeError("order exceeds the configured bound")
        power = power * I
    ring = G.ring
    xpos = list(range(R.nvars))
    if n == 0:
        form = G.reduce(ring.embed(x, xpos))
    else:
        s = len(G.gens)
        alphas = list(_monomial_exponents(s, n))
        prods = []
        for a in alphas:
            p = R.S.one
            for g, e in zip(G.gens, a):
                if e:
                    p = p * g ** e
            prods.append(p)
        syz = syzygies([x] + prods + list(R.L), R.S)
        col = next(c for c in syz if c[0].constant_term())
        uinv = _unit_inverse_mod(col[0], R, I)
        T = ring.gens()[R.nvars:]
        form = ring.zero
        for k, a in enumerate(alphas):
            c = col[1 + k]
            if c.is_zero():
                continue
            mono = ring.one
            for t, e in zip(T, a):
                if e:
                    mono = mono * t ** e
            form = form - ring.embed(uinv * c, xpos) * mono
        form = G.reduce(form)
    if form.is_zero():
        raise AssertionError("initial form vanished")
    return n, form

