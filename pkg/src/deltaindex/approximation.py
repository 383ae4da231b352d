"""Cohen-Macaulay approximations over Gorenstein local rings and the
invariants built on them: duals, trace ideals, cosyzygies, free rank, the
delta invariant and the index of an ideal.

The approximation ``0 -> Y -> X -> M -> 0`` is built recursively from a
free cover ``F -> M``: approximate ``Omega M`` by ``X' -> Omega M``, embed
``X'`` into a free module ``G`` with MCM cokernel (the cosyzygy), and take
``X = (F + G) / {(p'(x), -j(x))}``.  Common free summands of ``X`` and ``Y``
are then split off, which leaves the minimal approximation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .bases import column_to_vec, submodule_contains, submodule_entries
from .graded import (
    assoc_graded,
    is_cohen_macaulay,
    linear_hsop,
    reg_via_membership,
    regularity,
)
from .rings import (
    Ideal,
    ModuleMap,
    PresentedModule,
    PresentedRing,
    compose,
    dual_generators,
    fitting_ideal,
    identity_map,
    is_free_over_quotient,
    is_mcm,
    kernel,
    pairing_matrix,
    projective_dimension,
    prune,
    quotient_module,
    rank_over_k,
    subquotient,
    syzygy_module,
    truncated_lengths,
)


def _require_gorenstein(R: PresentedRing):
    if not R.is_gorenstein:
        raise ValueError("the delta invariant is only computed over Gorenstein rings")


# ---------------------------------------------------------------- duals and traces


def dual_module(M: PresentedModule):
    """``Hom(M, R)`` presented on a minimal set of functionals; returns (module, functionals)."""
    funcs = dual_generators(M)
    D = subquotient(M.ring, funcs, [], M.ngens)
    return D, funcs


def trace_ideal(M: PresentedModule) -> Ideal:
    """Ideal generated by all ``f(x)`` with f in Hom(M, R) and x in M."""
    funcs = dual_generators(M, minimal=False)
    return Ideal(M.ring, [a for f in funcs for a in f]).minimalized()


def canonical_module(R: PresentedRing) -> PresentedModule:
    return R.canonical


def free_rank(X: PresentedModule) -> int:
    """Rank of a maximal free summand: the k-rank of the evaluation pairing
    ``Hom(X, R) x X -> R -> k``."""
    if X.ngens == 0:
        return 0
    funcs = dual_generators(X)
    if not funcs:
        return 0
    return rank_over_k(pairing_matrix(funcs, [X.unit_column(i) for i in range(X.ngens)], X.ring.field),
                       X.ring.field)


def free_rank_by_splitting(X: PresentedModule) -> int:
    """Split off copies of R one at a time while the trace ideal is the unit ideal."""
    count = 0
    while X.ngens and not X.is_zero():
        funcs = dual_generators(X)
        hit = None
        for f in funcs:
            for k in range(X.ngens):
                if f[k].constant_term():
                    hit = f
                    break
            if hit:
                break
        if hit is None:
            break
        F = ModuleMap(X, X.ring.free(1), [(a,) for a in hit])
        X, _ = kernel(F)
        X, _ = prune(X)
        count += 1
    return count


# ---------------------------------------------------------------- cosyzygies


def cosyzygy(N: PresentedModule):
    """``Omega^{-1} N = (Omega(N*))*`` realized as the cokernel of
    ``N -> R^s, x -> (f_1(x), ..., f_s(x))`` for minimal generators f_i of N*.

    Returns (cosyzygy module, embedding ``N -> R^s``).
    """
    R = N.ring
    _require_gorenstein(R)
    if N.is_zero():
        Z = PresentedModule(R, 0, ())
        return Z, ModuleMap(N, Z, [() for _ in range(N.ngens)])
    if not is_mcm(N):
        raise ValueError("cosyzygy needs a maximal Cohen-Macaulay module")
    funcs = dual_generators(N)
    s = len(funcs)
    G = R.free(s)
    images = [tuple(f[k] for f in funcs) for k in range(N.ngens)]
    j = ModuleMap(N, G, images)
    C = PresentedModule(R, s, images)
    return C, j


def cosyzygy_contract(N: PresentedModule, C: PresentedModule | None = None) -> dict:
    """Check ``Omega(Omega^{-1} N) = N + free`` through isomorphism invariants."""
    if C is None:
        C, _ = cosyzygy(N)
    Om, _ = syzygy_module(C, 1)
    Np, _ = prune(N)
    Omp, _ = prune(Om)
    a = Omp.ngens - Np.ngens
    R = N.ring
    ok = a >= 0 and free_rank(Omp) - free_rank(Np) == a
    lengths_ok = False
    fitting_ok = False
    if ok:
        free_lens = truncated_lengths(R.free(1), 3)
        lens_n = truncated_lengths(Np, 3)
        lens_o = truncated_lengths(Omp, 3)
        lengths_ok = all(lo == ln + a * lf for lo, ln, lf in zip(lens_o, lens_n, free_lens))
        fitting_ok = all(fitting_ideal(Omp, j) == (fitting_ideal(Np, j - a) if j >= a else Ideal(R, []))
                         for j in range(Omp.ngens + 1))
    return {"free_shift": a, "mu_and_free_rank": ok, "truncated_lengths": lengths_ok,
            "fitting_ideals": fitting_ok, "holds": ok and lengths_ok and fitting_ok}


# ---------------------------------------------------------------- approximation


@dataclass
class ApproximationCertificate:
    """``0 -> Y -i-> X -p-> M -> 0`` with machine-checked flags."""

    M: PresentedModule
    X: PresentedModule
    Y: PresentedModule
    p: ModuleMap
    i: ModuleMap
    seed: int = 0
    exact: bool = False
    x_is_mcm: bool = False
    y_finite_pd: bool = False
    minimal: bool = False
    delta: int = 0
    trace: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.exact and self.x_is_mcm and self.y_finite_pd and self.minimal

    def summary(self) -> dict:
        return {
            "mu_X": self.X.mu(),
            "mu_Y": self.Y.mu(),
            "delta": self.delta,
            "exact": self.exact,
            "X_is_MCM": self.x_is_mcm,
            "Y_finite_pd": self.y_finite_pd,
            "minimal": self.minimal,
            "seed": self.seed,
        }


def _in_span(N: PresentedModule, gens, v) -> bool:
    """Whether ``v`` lies in ``span(gens)`` inside N (locally)."""
    R = N.ring
    vecs = [column_to_vec(g) for g in list(gens) + list(N.relations)]
    entries = submodule_entries(vecs, N.ngens, R.S, R.L, R.S.order)
    return submodule_contains(entries, column_to_vec(v), R.field)


def _zero_module(R):
    return PresentedModule(R, 0, ())


def _raw_approximation(M: PresentedModule, depth_left: int, trace: list):
    """Possibly non-minimal approximation: returns (X, Y, p: X -> M, i: Y -> X)."""
    R = M.ring
    if M.is_zero() or is_mcm(M):
        Z = _zero_module(R)
        trace.append(f"MCM base: mu={M.mu()}")
        return M, Z, identity_map(M), ModuleMap(Z, M, [])
    if depth_left < 0:
        raise RuntimeError("approximation recursion exceeded the dimension bound")
    P, iso = prune(M)
    n = P.ngens
    F = R.free(n)
    cover = compose(iso, ModuleMap(F, P, [P.unit_column(k) for k in range(n)]))
    Om, incl = syzygy_module(P, 1)
    Xp, Yp, pp, ip = _raw_approximation(Om, depth_left - 1, trace)
    C, j = cosyzygy(Xp) if Xp.ngens else (_zero_module(R), ModuleMap(Xp, _zero_module(R), []))
    g = j.target.ngens
    zero = R.S.zero
    iota_p = compose(incl, pp)  # X' -> F
    # X = (F + G) / {(iota p'(x), -j(x))}
    xrels = [tuple(a) + tuple(-b for b in jb) for a, jb in zip(iota_p.images, j.images)]
    X = PresentedModule(R, n + g, xrels)
    p = ModuleMap(X, M, list(cover.images) + [tuple(zero for _ in range(M.ngens))] * g)
    # Y = (Omega M + G) / {(p'(x), -j(x))}
    m = Om.ngens
    yrels = [tuple(c) + (zero,) * g for c in Om.relations]
    yrels += [tuple(a) + tuple(-b for b in jb) for a, jb in zip(pp.images, j.images)]
    Y = PresentedModule(R, m + g, yrels)
    i_images = [tuple(c) + (zero,) * g for c in incl.images]
    i_images += [X.unit_column(n + k) for k in range(g)]
    i = ModuleMap(Y, X, i_images)
    trace.append(f"pushout step: mu(F)={n}, mu(G)={g}, mu(Omega)={m}")
    return X, Y, p, i


def _randomize(M: PresentedModule, seed: int):
    """Change the generators of M by a random invertible constant matrix."""
    if seed == 0 or M.ngens == 0:
        return M, identity_map(M)
    rng = random.Random(seed)
    R = M.ring
    n = M.ngens
    while True:
        g = [[R.field.random_element(rng, nonzero=False) for _ in range(n)] for _ in range(n)]
        if rank_over_k(g, R.field) == n:
            break
    cols = [tuple(R.S.constant(g[r][c]) for r in range(n)) for c in range(n)]
    Mp = subquotient(R, cols, M.relations, n)
    return Mp, ModuleMap(Mp, M, cols)


def _split_common_free(X, Y, p, i, trace):
    """Split off common free summands of X and Y; returns the minimal pieces."""
    R = X.ring
    funcs = dual_generators(X)
    if not funcs or Y.ngens == 0:
        return X, Y, p, i, 0
    pair = pairing_matrix(funcs, i.images, R.field)
    t = rank_over_k(pair, R.field)
    if t == 0:
        return X, Y, p, i, 0
    # pick t functionals whose pairing rows are independent
    rows = []
    chosen = []
    for a, row in enumerate(pair):
        if rank_over_k(rows + [row], R.field) > len(rows):
            rows.append(row)
            chosen.append(funcs[a])
        if len(rows) == t:
            break
    Fmap = ModuleMap(X, R.free(t), [tuple(f[k] for f in chosen) for k in range(X.ngens)])
    Xmin, incl = kernel(Fmap)
    pmin = compose(p, incl)
    Ymin, iy = kernel(pmin)
    trace.append(f"split {t} common free summand(s)")
    return Xmin, Ymin, pmin, iy, t


def certify(cert: ApproximationCertificate) -> ApproximationCertificate:
    X, Y, M, p, i = cert.X, cert.Y, cert.M, cert.p, cert.i
    R = M.ring
    surj = all(_in_span(M, p.images, M.unit_column(k)) for k in range(M.ngens))
    comp_zero = all(M.is_zero_element(p.apply(img)) for img in i.images)
    K, kincl = kernel(p)
    ker_in_im = all(_in_span(X, i.images, v) for v in kincl.images)
    Ki, _ = kernel(i)
    inj = Ki.is_zero()
    cert.exact = surj and comp_zero and ker_in_im and inj
    cert.x_is_mcm = X.is_zero() or is_mcm(X)
    cert.y_finite_pd = projective_dimension(Y, R.dim + 1) <= R.dim
    funcs = dual_generators(X)
    cert.minimal = not funcs or not i.images or rank_over_k(
        pairing_matrix(funcs, i.images, R.field), R.field) == 0
    return cert


def mcm_approximation(M: PresentedModule, seed: int = 0, check: bool = True) -> ApproximationCertificate:
    """Minimal Cohen-Macaulay approximation of M (R Gorenstein)."""
    key = ("approx", seed)
    if key in M._cache:
        return M._cache[key]
    R = M.ring
    _require_gorenstein(R)
    trace = []
    Mr, to_m = _randomize(M, seed)
    X, Y, p, i = _raw_approximation(Mr, R.dim, trace)
    p = compose(to_m, p)
    rank_x_before = free_rank(X)
    X, Y, p, i, t = _split_common_free(X, Y, p, i, trace)
    Xp, xiso = prune(X)
    p = compose(p, xiso)
    # re-express i through the pruned generators of X
    if Y.ngens:
        Yk, iy = kernel(p)
        Y, i = Yk, iy
    delta = free_rank(Xp)
    trace.append(f"free rank before splitting {rank_x_before}, after {delta}")
    cert = ApproximationCertificate(M, Xp, Y, p, i, seed=seed, delta=delta, trace=trace)
    if check:
        certify(cert)
    M._cache[key] = cert
    return cert


def delta(M: PresentedModule, seed: int = 0) -> int:
    """Rank of a maximal free summand of the minimal approximation's X."""
    return mcm_approximation(M, seed).delta


def delta_n(M: PresentedModule, n: int, seed: int = 0) -> int:
    """``delta(Omega^n M)``."""
    Om, _ = syzygy_module(M, n)
    return delta(Om, seed)


def is_parameter_ideal(I: Ideal) -> bool:
    R = I.ring
    if I.is_unit():
        return False
    return I.min_gens() == R.dim and I.colength() != math.inf


# ---------------------------------------------------------------- index of an ideal


@dataclass
class DeltaIndexReport:
    """Index of an ideal by delta search and by regularity, with certificates."""

    ideal: str
    method: str
    bound: int
    seed: int
    delta_values: dict = field(default_factory=dict)
    index_delta: int | None = None
    regularity: int | None = None
    index_regularity: int | None = None
    reg_via_membership: int | None = None
    certificates: dict = field(default_factory=dict)
    equality: bool | None = None
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ideal": self.ideal,
            "method": self.method,
            "bound": self.bound,
            "seed": self.seed,
            "delta_values": {str(k): v for k, v in sorted(self.delta_values.items())},
            "index_delta": self.index_delta if self.index_delta is not None else f"> {self.bound}",
            "regularity": self.regularity,
            "index_regularity": self.index_regularity,
            "reg_via_membership": self.reg_via_membership,
            "certificates": self.certificates,
            "equality": self.equality,
            "notes": list(self.notes),
        }


def index_by_delta(R: PresentedRing, I: Ideal, bound: int = 8, seed: int = 0):
    """``min{l <= bound : delta(R/I^l) = 1}`` with the delta values found."""
    values = {}
    power = None
    for l in range(1, bound + 1):
        power = I if power is None else power * I
        v = delta(R.cyclic(power), seed)
        values[l] = v
        if v == 1:
            return l, values
    return None, values


def index_of_ideal(R: PresentedRing, I: Ideal, method: str = "both", bound: int = 8,
                   seed: int = 0) -> DeltaIndexReport:
    if method not in ("delta_search", "regularity", "both"):
        raise ValueError(f"unknown method {method!r}")
    rep = DeltaIndexReport(str(I), method, bound, seed)
    if method in ("regularity", "both"):
        G = assoc_graded(R, I)
        cm = is_cohen_macaulay(G, seed)
        rep.certificates["gr_cohen_macaulay"] = cm
        if cm:
            reg = regularity(G, seed)
            rep.regularity = reg
            cert = linear_hsop(G, seed)
            rep.reg_via_membership = reg_via_membership(R, I, G.lift(cert))
            frees = {}
            power = I
            for l in range(1, reg + 2):
                nxt = power * I
                ok, rank = is_free_over_quotient(quotient_module(power, nxt), I)
                frees[str(l)] = {"free": ok, "rank": rank}
                power = nxt
            rep.certificates["powers_free"] = frees
            trace_ok = None
            if R.is_cm:
                trace_ok = I.issubset(trace_ideal(R.canonical))
            rep.certificates["inside_trace_of_canonical"] = trace_ok
            if all(v["free"] for v in frees.values()):
                rep.index_regularity = reg + 1
                if not trace_ok:
                    rep.notes.append("trace condition not certified: only index >= reg + 1 is claimed")
            else:
                rep.notes.append("power quotients not all free: regularity bound not applicable")
        else:
            rep.notes.append("associated graded ring is not Cohen-Macaulay")
    if method in ("delta_search", "both"):
        if rep.regularity is not None and rep.regularity + 3 > bound:
            # never stop the search short of the regularity prediction plus two
            bound = rep.bound = rep.regularity + 3
            rep.notes.append(f"search bound raised to {bound}")
        idx, values = index_by_delta(R, I, bound, seed)
        rep.delta_values = values
        rep.index_delta = idx
    if method == "both" and rep.index_regularity is not None:
        rep.equality = rep.index_delta == rep.index_regularity
    return rep
