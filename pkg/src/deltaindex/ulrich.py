"""Minimal reductions, Ulrich ideals, freeness of power quotients and the
order bound for Ulrich ideals."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .approximation import index_of_ideal, is_parameter_ideal
from .graded import a_invariant, assoc_graded, is_cohen_macaulay
from .rings import Ideal, PresentedRing, is_free_over_quotient, quotient_module


def reduction_number(I: Ideal, Q: Ideal, bound: int = 8):
    """Least n <= bound with ``I^{n+1} = Q I^n`` (None if not found)."""
    R = I.ring
    power = R.unit_ideal()  # I^n
    for n in range(bound + 1):
        nxt = power * I if n else I
        if nxt.issubset(Q * power if n else Q):
            return n
        power = nxt
    return None


def _combination(I: Ideal, coeffs):
    out = I.ring.S.zero
    for c, g in zip(coeffs, I.gens):
        if c:
            out = out + g * c
    return out


@dataclass
class Reduction:
    Q: Ideal
    reduction_number: int | None
    seed: int
    attempts: int
    coefficients: list

    def to_dict(self) -> dict:
        return {"Q": str(self.Q), "reduction_number": self.reduction_number,
                "seed": self.seed, "attempts": self.attempts}


def minimal_reduction(I: Ideal, seed: int = 0, bound: int = 8, attempts: int = 8) -> Reduction:
    """``Q`` spanned by d generic combinations of I's generators and its reduction number.

    When a choice of d of the given generators attains the generic reduction
    number it is reported instead, since it reads better.
    """
    R = I.ring
    d = R.dim
    gens = I.minimalized().gens
    I = Ideal(R, gens)
    rng = random.Random(seed)
    best = None
    for attempt in range(1, attempts + 1):
        coeffs = [[R.field.random_element(rng, nonzero=True) for _ in gens] for _ in range(d)]
        Q = Ideal(R, [_combination(I, row) for row in coeffs])
        r = reduction_number(I, Q, bound)
        if r is not None:
            best = Reduction(Q, r, seed, attempt, coeffs)
            break
    if best is None:
        return Reduction(Ideal(R, []), None, seed, attempts, [])
    for subset in itertools.combinations(range(len(gens)), d):
        Q = Ideal(R, [gens[k] for k in subset])
        r = reduction_number(I, Q, best.reduction_number)
        if r is not None and r <= best.reduction_number:
            coeffs = [[1 if k == s else 0 for k in range(len(gens))] for s in subset]
            return Reduction(Q, r, seed, best.attempts, coeffs)
    return best


@dataclass
class UlrichCertificate:
    ideal: str
    reduction: Reduction
    square_is_QI: bool
    quotient_free: bool
    quotient_rank: int
    gr_cohen_macaulay: bool | None
    a_invariant: int | None
    graded_route: bool | None
    routes_agree: bool | None
    parameter: bool
    notes: list = field(default_factory=list)

    @property
    def is_ulrich(self) -> bool:
        return self.square_is_QI and self.quotient_free

    def to_dict(self) -> dict:
        return {
            "ideal": self.ideal,
            "ulrich": self.is_ulrich,
            "minimal_reduction": self.reduction.to_dict(),
            "square_equals_QI": self.square_is_QI,
            "I_mod_I2_free": self.quotient_free,
            "I_mod_I2_rank": self.quotient_rank,
            "gr_cohen_macaulay": self.gr_cohen_macaulay,
            "a_invariant": self.a_invariant,
            "graded_route": self.graded_route,
            "routes_agree": self.routes_agree,
            "parameter_ideal": self.parameter,
            "notes": list(self.notes),
        }


def is_ulrich(I: Ideal, seed: int = 0, bound: int = 8) -> UlrichCertificate:
    R = I.ring
    d = R.dim
    if not I.is_m_primary():
        raise ValueError("Ulrich test needs an ideal primary to the maximal ideal")
    red = minimal_reduction(I, seed, bound)
    square = red.reduction_number is not None and red.reduction_number <= 1
    free, rank = is_free_over_quotient(quotient_module(I, I * I), I)
    notes = []
    try:
        G = assoc_graded(R, I)
        cm = is_cohen_macaulay(G, seed)
        a = a_invariant(G, seed) if cm else None
        graded = cm and a <= 1 - d
        agree = graded == square
    except ValueError as exc:
        cm = a = graded = agree = None
        notes.append(f"graded route skipped: {exc}")
    return UlrichCertificate(str(I), red, square, free, rank, cm, a, graded, agree,
                             is_parameter_ideal(I), notes)


def powers_free_audit(I: Ideal, top: int = 4) -> dict:
    """Freeness of ``I^l / I^{l+1}`` over ``R/I`` for ``1 <= l <= top``."""
    records = []
    power = I
    colength = I.colength()
    ok = True
    for l in range(1, top + 1):
        nxt = power * I
        M = quotient_module(power, nxt)
        free, rank = is_free_over_quotient(M, I)
        length = M.length()
        records.append({"l": l, "free": free, "rank": rank, "length": length,
                        "length_matches": length == rank * colength})
        if not free:
            ok = False
            break
        power = nxt
    return {"ideal": str(I), "all_free": ok, "levels": records}


def order(I: Ideal, cap: int = 32) -> int:
    """``max{n : I contained in m^n}``."""
    return I.order(cap)


def corollary_audit(R: PresentedRing, I: Ideal, gorenstein_punctured_asserted: bool,
                    seed: int = 0, bound: int = 8) -> dict:
    """Order bound ``order(I) < index(R)`` for a non-parameter Ulrich ideal."""
    if not gorenstein_punctured_asserted:
        return {"verdict": "skipped", "reason": "Gorenstein on the punctured spectrum not asserted"}
    if not I.is_m_primary():
        return {"verdict": "skipped", "reason": "ideal is not primary to the maximal ideal"}
    cert = is_ulrich(I, seed, bound)
    if not cert.is_ulrich:
        return {"verdict": "skipped", "reason": "ideal is not Ulrich"}
    if cert.parameter:
        return {"verdict": "skipped", "reason": "ideal is a parameter ideal"}
    rep = index_of_ideal(R, R.maximal_ideal, "both", bound, seed)
    index = rep.index_delta if rep.index_delta is not None else rep.index_regularity
    if index is None:
        return {"verdict": "skipped", "reason": "index of the ring not found within the bound"}
    o = order(I, index + 2)
    return {"verdict": "pass" if o < index else "fail", "order": o, "index_of_ring": index,
            "index_methods_agree": rep.equality}
