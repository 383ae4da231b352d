"""Standard bases for ideals and submodules of free modules.

Buchberger's algorithm handles global orders; for local orders the same
pair loop runs with Mora's ecart-driven normal form, so membership tests
answer questions in the localization at the origin.

Internally a module element of ``S^n`` is a dict ``{(component, exps): c}``;
an ideal is the rank-one case with every component equal to 0.
"""

from __future__ import annotations

import threading
from typing import Sequence

from .poly import (
    PolyRing,
    Polynomial,
    TermOrder,
    mono_divides,
    mono_lcm,
)

# ---------------------------------------------------------------- orders on S^n


class ModuleOrder:
    """A monomial order on ``S^n``; position-over-term makes component 0 largest."""

    def __init__(self, mono: TermOrder, pot: bool = True):
        self.mono = mono
        self.pot = pot
        self.local = mono.is_local
        self._cache = {}

    def key(self, t):
        k = self._cache.get(t)
        if k is None:
            c, m = t
            mk = self.mono.key(m)
            k = (-c, mk) if self.pot else (mk, -c)
            self._cache[t] = k
        return k

    def __eq__(self, other):
        return isinstance(other, ModuleOrder) and (self.mono, self.pot) == (other.mono, other.pot)

    def __hash__(self):
        return hash((self.mono, self.pot))


_ORDER_POOL: dict = {}


def module_order(mono: TermOrder, pot: bool = True) -> ModuleOrder:
    # shared instances keep the key caches warm across calls
    key = (mono, pot)
    o = _ORDER_POOL.get(key)
    if o is None:
        o = _ORDER_POOL[key] = ModuleOrder(mono, pot)
    return o


# ---------------------------------------------------------------- vector helpers


def lead(v, order: ModuleOrder):
    return max(v, key=order.key)


def _deg(v):
    return max(sum(m) for _, m in v)


def _sub_scaled(h, c, shift, g, norm):
    """h -= c * x^shift * g, in place."""
    for (comp, m), a in g.items():
        key = (comp, tuple(x + y for x, y in zip(m, shift)))
        v = norm(h.get(key, 0) - c * a)
        if v:
            h[key] = v
        else:
            h.pop(key, None)


def _monic(v, field, order):
    lt = lead(v, order)
    c = field.inv(v[lt])
    if c == 1:
        return v
    norm = field.norm
    return {k: norm(a * c) for k, a in v.items()}


class _Entry:
    __slots__ = ("vec", "comp", "lm", "lc", "ecart")

    def __init__(self, vec, order):
        self.vec = vec
        self.comp, self.lm = lead(vec, order)
        self.lc = vec[(self.comp, self.lm)]
        self.ecart = _deg(vec) - sum(self.lm) if order.local else 0


def _spoly(a: _Entry, b: _Entry, field):
    L = mono_lcm(a.lm, b.lm)
    norm = field.norm
    s = {}
    ca = field.inv(a.lc)
    sa = tuple(x - y for x, y in zip(L, a.lm))
    for (comp, m), v in a.vec.items():
        s[(comp, tuple(x + y for x, y in zip(m, sa)))] = norm(v * ca)
    cb = field.inv(b.lc)
    sb = tuple(x - y for x, y in zip(L, b.lm))
    _sub_scaled(s, cb, sb, b.vec, norm)
    return s


def _find_reducer(entries, comp, m):
    for e in entries:
        if e.comp == comp and mono_divides(e.lm, m):
            return e
    return None


def nf_global(f, entries, order: ModuleOrder, field):
    """Full reduction: no term of the result is divisible by a leading term."""
    h = dict(f)
    r = {}
    norm = field.norm
    while h:
        lt = lead(h, order)
        comp, m = lt
        e = _find_reducer(entries, comp, m)
        if e is None:
            r[lt] = h.pop(lt)
            continue
        c = norm(h[lt] * field.inv(e.lc))
        _sub_scaled(h, c, tuple(x - y for x, y in zip(m, e.lm)), e.vec, norm)
    return r


def nf_mora(f, entries, order: ModuleOrder, field):
    """Mora's weak normal form for local orders.

    Returns ``h`` with ``u*f = sum(a_i g_i) + h`` for a unit ``u``; the leading
    term of ``h`` is divisible by no leading term of ``entries``, and ``h == 0``
    exactly when ``f`` lies in the localized submodule.
    """
    h = dict(f)
    T = list(entries)
    norm = field.norm
    while h:
        comp, m = lt = lead(h, order)
        best = None
        for e in T:
            if e.comp == comp and mono_divides(e.lm, m):
                if best is None or e.ecart < best.ecart:
                    best = e
                    if e.ecart == 0:
                        break
        if best is None:
            return h
        ecart_h = _deg(h) - sum(m)
        if best.ecart > ecart_h:
            T.append(_Entry(dict(h), order))
        c = norm(h[lt] * field.inv(best.lc))
        _sub_scaled(h, c, tuple(x - y for x, y in zip(m, best.lm)), best.vec, norm)
    return h


def normal_form_vec(f, entries, order, field):
    if order.local:
        return nf_mora(f, entries, order, field)
    return nf_global(f, entries, order, field)


# ---------------------------------------------------------------- the pair loop


def _pair_key(a: _Entry, b: _Entry, i, j):
    L = mono_lcm(a.lm, b.lm)
    # normal strategy: least lcm degree first, ties broken deterministically
    return (sum(L), a.comp, L, i, j)


def compute_standard_basis(gens, order: ModuleOrder, field, rank_one: bool = False):
    """Buchberger (global order) or Mora (local order) standard basis.

    Pairs are managed with the Gebauer-Moeller criteria; the product criterion
    is used only in the rank-one (ideal) case.  Returns a list of monic
    vectors: the reduced basis for global orders, a minimal one for local.
    """
    polys: list[_Entry] = []
    active: list[int] = []
    pairs: dict = {}

    def add(vec):
        idx = len(polys)
        h = _Entry(vec, order)
        polys.append(h)
        C = [k for k in active if polys[k].comp == h.comp]
        lcms = {k: mono_lcm(polys[k].lm, h.lm) for k in C}

        def coprime(k):
            return rank_one and all(not (x and y) for x, y in zip(polys[k].lm, h.lm))

        D = []
        for pos, k in enumerate(C):
            Lk = lcms[k]
            if coprime(k):
                D.append(k)
                continue
            rest = C[pos + 1:] + D
            if not any(mono_divides(lcms[k2], Lk) for k2 in rest):
                D.append(k)
        # drop old pairs made redundant by h
        for (i, j) in list(pairs):
            a, b = polys[i], polys[j]
            if a.comp != h.comp:
                continue
            Lij = mono_lcm(a.lm, b.lm)
            if (mono_divides(h.lm, Lij) and mono_lcm(a.lm, h.lm) != Lij
                    and mono_lcm(b.lm, h.lm) != Lij):
                del pairs[(i, j)]
        for k in D:
            if not coprime(k):
                pairs[(k, idx)] = _pair_key(polys[k], h, k, idx)
        for k in list(active):
            if polys[k].comp == h.comp and mono_divides(h.lm, polys[k].lm):
                active.remove(k)
        active.append(idx)

    start = [v for v in gens if v]
    start = [_monic(dict(v), field, order) for v in start]
    # feed small leading terms first so later generators can be skipped
    start.sort(key=lambda v: order.key(lead(v, order)))
    for v in start:
        h = normal_form_vec(v, [polys[k] for k in active], order, field)
        if h:
            add(_monic(h, field, order))

    while pairs:
        (i, j) = min(pairs, key=pairs.get)
        del pairs[(i, j)]
        s = _spoly(polys[i], polys[j], field)
        if not s:
            continue
        h = normal_form_vec(s, [polys[k] for k in active], order, field)
        if h:
            add(_monic(h, field, order))

    basis = [polys[k] for k in active]
    # minimalize: drop entries whose leading term is divisible by another's
    basis.sort(key=lambda e: order.key((e.comp, e.lm)))
    minimal = []
    for e in basis:
        if not any(o.comp == e.comp and mono_divides(o.lm, e.lm) for o in minimal):
            minimal.append(e)
    if not order.local:
        reduced = []
        for idx, e in enumerate(minimal):
            others = minimal[:idx] + minimal[idx + 1:]
            tail = dict(e.vec)
            lt = (e.comp, e.lm)
            lc = tail.pop(lt)
            r = nf_global(tail, others, order, field)
            r[lt] = lc
            reduced.append(_monic(r, field, order))
        out = reduced
    else:
        out = [e.vec for e in minimal]
    out.sort(key=lambda v: order.key(lead(v, order)), reverse=True)
    return out


def entries_of(basis, order):
    return [_Entry(v, order) for v in basis]


def spair_certificate(basis, order: ModuleOrder, field) -> bool:
    """Every S-pair of ``basis`` reduces to zero (Buchberger's criterion)."""
    es = entries_of(basis, order)
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            if es[i].comp != es[j].comp:
                continue
            s = _spoly(es[i], es[j], field)
            if s and normal_form_vec(s, es, order, field):
                return False
    return True


# ---------------------------------------------------------------- conversions


def poly_to_vec(f: Polynomial, comp: int = 0):
    return {(comp, m): c for m, c in f.terms.items()}


def column_to_vec(col: Sequence[Polynomial], offset: int = 0):
    v = {}
    for i, f in enumerate(col):
        for m, c in f.terms.items():
            v[(i + offset, m)] = c
    return v


def vec_to_column(v, ring: PolyRing, n: int, offset: int = 0):
    parts = [dict() for _ in range(n)]
    for (comp, m), c in v.items():
        k = comp - offset
        if 0 <= k < n:
            parts[k][m] = c
    return tuple(Polynomial(ring, p) for p in parts)


def vec_to_poly(v, ring: PolyRing):
    return Polynomial(ring, {m: c for (_, m), c in v.items()})


# ---------------------------------------------------------------- basis cache

_REGISTRY_LOCK = threading.Lock()
_REGISTRY: dict = {}


def registered_bases():
    """Every standard basis computed and cached so far: (basis vectors, order, field)."""
    with _REGISTRY_LOCK:
        return list(_REGISTRY.values())


def clear_caches():
    with _REGISTRY_LOCK:
        _REGISTRY.clear()


def _cached_basis(vecs_key, vecs, order: ModuleOrder, field, rank_one):
    key = (vecs_key, order.mono, order.pot, field, rank_one)
    with _REGISTRY_LOCK:
        hit = _REGISTRY.get(key)
    if hit is not None:
        return hit[0]
    basis = compute_standard_basis(vecs, order, field, rank_one)
    # deterministic engine: a concurrent double computation stores the same value
    with _REGISTRY_LOCK:
        _REGISTRY.setdefault(key, (basis, order, field))
    return basis


def _freeze(vecs):
    return tuple(frozenset(v.items()) for v in vecs)


def module_standard_basis(vecs, mono_order: TermOrder, field, pot=True, rank_one=False):
    order = module_order(mono_order, pot)
    vecs = [v for v in vecs if v]
    return _cached_basis(_freeze(vecs), vecs, order, field, rank_one), order


# ---------------------------------------------------------------- ideals


class IdealHandle:
    """An ideal of an ambient polynomial ring given by generators.

    Standard bases are cached per term order.  Membership and equality use
    the ring's active order, so a ring carrying ``negdegrevlex`` answers in
    the localization at the origin.
    """

    def __init__(self, ring: PolyRing, gens: Sequence[Polynomial]):
        self.ring = ring
        self.gens = tuple(ring.coerce(g) for g in gens if not g.is_zero())
        self._bases = {}

    def basis(self, order: TermOrder | None = None) -> list:
        order = order or self.ring.order
        b = self._bases.get(order)
        if b is None:
            vecs, _ = module_standard_basis([poly_to_vec(g) for g in self.gens], order,
                                            self.ring.field, rank_one=True)
            b = self._bases[order] = [vec_to_poly(v, self.ring) for v in vecs]
        return b

    def _entries(self, order):
        o = module_order(order)
        return entries_of([poly_to_vec(g) for g in self.basis(order)], o), o

    def reduce(self, f: Polynomial, order: TermOrder | None = None) -> Polynomial:
        order = order or self.ring.order
        es, o = self._entries(order)
        return vec_to_poly(normal_form_vec(poly_to_vec(f), es, o, self.ring.field), self.ring)

    def contains(self, f: Polynomial, order=None) -> bool:
        if f.is_zero():
            return True
        return self.reduce(f, order).is_zero()

    def contains_ideal(self, other: "IdealHandle", order=None) -> bool:
        return all(self.contains(g, order) for g in other.gens)

    def equals(self, other: "IdealHandle", order=None) -> bool:
        return self.contains_ideal(other, order) and other.contains_ideal(self, order)

    def leading_monomials(self, order=None) -> list:
        order = order or self.ring.order
        return [g.leading_monomial(order) for g in self.basis(order)]

    def is_unit_ideal(self, order=None) -> bool:
        return any(g.is_constant() for g in self.basis(order))

    def __repr__(self):
        return f"IdealHandle({[str(g) for g in self.gens]})"


def standard_basis(I: IdealHandle, order: TermOrder | None = None) -> list:
    return I.basis(order)


def normal_form(f: Polynomial, I: IdealHandle, order: TermOrder | None = None) -> Polynomial:
    return I.reduce(f, order)


# ---------------------------------------------------------------- syzygies


def _global_order(ring: PolyRing) -> TermOrder:
    return TermOrder("degrevlex", ring.nvars)


def syzygy_vectors(vecs, n: int, ring: PolyRing, modulus: Sequence[Polynomial] = ()):
    """Generators (as engine vectors over components 0..m-1) of the relations among
    ``vecs`` in ``(S/modulus)^n``.

    Standard elimination trick: a standard basis of the rows ``(v_j, e_j)`` plus
    ``modulus * e_i`` under a position-over-term order; elements with no
    support on the first ``n`` components are the syzygies.  The computation is
    global; kernels commute with localization.
    """
    ext = []
    for j, v in enumerate(vecs):
        w = dict(v)
        w[(n + j, (0,) * ring.nvars)] = 1
        ext.append(w)
    for i in range(n):
        for l in modulus:
            if not l.is_zero():
                ext.append(poly_to_vec(l, i))
    basis, _ = module_standard_basis(ext, _global_order(ring), ring.field, pot=True)
    out = []
    for b in basis:
        if all(c >= n for c, _ in b):
            out.append({(c - n, mm): a for (c, mm), a in b.items()})
    out.sort(key=lambda v: sorted(v.items()))
    return out


def syzygies(rows, ring: PolyRing, modulus: Sequence[Polynomial] = ()):
    """Relations among module elements over ``S/modulus``.

    ``rows`` holds polynomials (ideal elements) or equal-length tuples of
    polynomials (elements of a free module).  Returns a list of columns, each a
    tuple with one coefficient per row.
    """
    rows = list(rows)
    if not rows:
        return []
    if isinstance(rows[0], Polynomial):
        vecs = [poly_to_vec(f) for f in rows]
        n = 1
    else:
        n = len(rows[0])
        vecs = [column_to_vec(r) for r in rows]
    return [vec_to_column(v, ring, len(rows)) for v in syzygy_vectors(vecs, n, ring, modulus)]


# ---------------------------------------------------------------- elimination & ideal ops


def eliminate(I: IdealHandle, drop_vars: Sequence) -> IdealHandle:
    """``I`` intersected with the subring generated by the variables not in ``drop_vars``."""
    ring = I.ring
    drop = [ring.names.index(v) if isinstance(v, str) else v for v in drop_vars]
    keep = [i for i in range(ring.nvars) if i not in drop]
    order = TermOrder("product", ring.nvars, priority=tuple(drop + keep), block=len(drop))
    basis = I.basis(order)
    kept = [g for g in basis if not (g.support_vars() & set(drop))]
    return IdealHandle(ring, kept)


def _with_t(ring: PolyRing):
    name = "t_"
    while name in ring.names:
        name += "_"
    return ring.extend([name], "degrevlex")


def ideal_sum(A: IdealHandle, B: IdealHandle) -> IdealHandle:
    return IdealHandle(A.ring, A.gens + B.gens)


def ideal_product(A: IdealHandle, B: IdealHandle) -> IdealHandle:
    return IdealHandle(A.ring, [a * b for a in A.gens for b in B.gens])


def ideal_power(A: IdealHandle, n: int) -> IdealHandle:
    if n == 0:
        return IdealHandle(A.ring, [A.ring.one])
    gens = list(A.gens)
    current = {g for g in gens}
    for _ in range(n - 1):
        current = {a * g for a in current for g in gens}
    return IdealHandle(A.ring, sorted(current, key=str))


def intersect(A: IdealHandle, B: IdealHandle) -> IdealHandle:
    """``A`` meet ``B`` via ``eliminate(t*A + (1-t)*B, {t})``."""
    ring = A.ring
    big = _with_t(ring)
    pos = list(range(ring.nvars))
    t = big.gens()[-1]
    gens = [t * big.embed(a, pos) for a in A.gens]
    gens += [(big.one - t) * big.embed(b, pos) for b in B.gens]
    E = eliminate(IdealHandle(big, gens), [ring.nvars])
    back = [Polynomial(ring, {m[:-1]: c for m, c in g.terms.items()}) for g in E.gens]
    return IdealHandle(ring, back)


def quotient(A: IdealHandle, B: IdealHandle) -> IdealHandle:
    """``A : B``, the intersection over generators b of B of ``A : b``.

    Each ``A : b`` is the first-coordinate projection of the syzygies of
    ``(b, a_1, ..., a_r)``.
    """
    ring = A.ring
    result = None
    for b in B.gens:
        syz = syzygies([b] + list(A.gens), ring)
        colon = IdealHandle(ring, [c[0] for c in syz if not c[0].is_zero()])
        result = colon if result is None else intersect(result, colon)
    return result if result is not None else IdealHandle(ring, [ring.one])


def ideal_op(kind: str, *args, order: TermOrder | None = None):
    """Dispatcher over sum, product, power, intersection, quotient, equality, membership."""
    if kind in ("sum", "product", "intersection", "quotient", "equality"):
        A, B = args
        if not A.ring.same_as(B.ring):
            raise ValueError("ideals live in different rings")
    if kind == "sum":
        return ideal_sum(*args)
    if kind == "product":
        return ideal_product(*args)
    if kind == "power":
        return ideal_power(*args)
    if kind == "intersection":
        return intersect(*args)
    if kind == "quotient":
        return quotient(*args)
    if kind == "equality":
        return args[0].equals(args[1], order)
    if kind == "membership":
        f, A = args
        return A.contains(f, order)
    raise ValueError(f"unknown ideal operation {kind!r}")


# ---------------------------------------------------------------- submodules


def submodule_entries(vecs, n, ring: PolyRing, modulus=(), order: TermOrder | None = None):
    """Standard-basis entries for the submodule of ``S^n`` spanned by ``vecs`` plus ``modulus*S^n``."""
    order = order or ring.order
    gens = [v for v in vecs if v]
    for i in range(n):
        for l in modulus:
            if not l.is_zero():
                gens.append(poly_to_vec(l, i))
    basis, o = module_standard_basis(gens, order, ring.field, pot=True, rank_one=(n == 1))
    return entries_of(basis, o), o


def submodule_contains(entries_order, v, field) -> bool:
    entries, o = entries_order
    if not v:
        return True
    return not normal_form_vec(v, entries, o, field)
