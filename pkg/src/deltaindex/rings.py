"""Presented rings ``R = S/L`` and finitely presented ``R``-modules.

Every module computation runs over the ambient polynomial ring ``S`` with the
multiples of ``L`` adjoined; kernels and syzygies are computed globally (they
commute with localization) while every question that depends on the local
ring at the origin (minimal generators, units, lengths, membership) is
answered locally.  A module is a cokernel: ``ngens`` generators and a list of
relation columns.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .bases import (
    IdealHandle,
    column_to_vec,
    intersect,
    quotient as _ideal_quotient,
    submodule_contains,
    submodule_entries,
    syzygy_vectors,
    vec_to_column,
)
from .poly import PolyRing, Polynomial, PrimeField, parse_polynomial

# ---------------------------------------------------------------- linear algebra over k


def _rref_pivots(vectors, length, field):
    """Pivot positions of the row-reduced span of ``vectors`` (lists over k).

    Pivots are taken from the last coordinate backwards so that early
    coordinates survive as non-pivots.
    """
    rows = [list(v) for v in vectors if any(v)]
    pivots = []
    norm = field.norm
    r = 0
    for col in reversed(range(length)):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][col])
        rows[r] = [norm(a * inv) for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [norm(a - c * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank_over_k(matrix, field) -> int:
    """Rank of a matrix of field elements given as a list of rows."""
    if not matrix:
        return 0
    return len(_rref_pivots(matrix, len(matrix[0]), field))


# ---------------------------------------------------------------- rings


class PresentedRing:
    """``R = k[vars]/L``, localized at the origin when ``local`` is true."""

    def __init__(self, variables: Sequence[str], defining: Sequence = (), field=None,
                 local: bool = True, name: str | None = None, max_steps: int | None = None):
        field = field or PrimeField()
        if not variables:
            raise ValueError("empty variable list")
        order = "negdegrevlex" if local else "degrevlex"
        self.S = PolyRing(field, variables, order)
        self.local = local
        self.name = name or "R"
        self.L = tuple(f for f in (self._coerce(g) for g in defining) if not f.is_zero())
        if self.L_handle.is_unit_ideal():
            raise ValueError("defining ideal is the unit ideal")
        if not local and any(f.constant_term() for f in self.L):
            pass
        if any(f.constant_term() for f in self.L) and local:
            raise ValueError("defining ideal is the unit ideal in the local ring")
        self.max_steps = max_steps

    def _coerce(self, g) -> Polynomial:
        if isinstance(g, str):
            return parse_polynomial(g, self.S)
        return self.S.coerce(g)

    # -- basic data
    @property
    def field(self):
        return self.S.field

    @property
    def nvars(self) -> int:
        return self.S.nvars

    @property
    def names(self):
        return self.S.names

    def gens(self):
        return self.S.gens()

    def poly(self, text) -> Polynomial:
        return self._coerce(text)

    @cached_property
    def L_handle(self) -> IdealHandle:
        return IdealHandle(self.S, self.L)

    @cached_property
    def _L_global(self) -> IdealHandle:
        return IdealHandle(self.S.with_order("degrevlex"), self.L)

    def reduce(self, f: Polynomial) -> Polynomial:
        """Canonical representative of ``f`` modulo ``L`` (global reduced normal form)."""
        if not self.L or f.is_zero():
            return f
        g = self._L_global.reduce(self._L_global.ring.coerce(f))
        return self.S.coerce(g)

    def same_as(self, other: "PresentedRing") -> bool:
        return (self is other or (self.S == other.S and
                                  IdealHandle(self.S, self.L).equals(IdealHandle(other.S, other.L))))

    def quotient_ring(self, extra: Sequence, name: str | None = None) -> "PresentedRing":
        extra = [self._coerce(e) for e in extra]
        return PresentedRing(self.names, list(self.L) + extra, self.field, self.local,
                             name or f"{self.name}/({','.join(map(str, extra))})")

    def ambient(self) -> "PresentedRing":
        """The ambient polynomial ring S (localized alike) as a PresentedRing."""
        return PresentedRing(self.names, (), self.field, self.local, "S")

    # -- ideals and modules
    def ideal(self, gens) -> "Ideal":
        return Ideal(self, [self._coerce(g) for g in gens])

    @cached_property
    def maximal_ideal(self) -> "Ideal":
        return Ideal(self, self.gens())

    def unit_ideal(self) -> "Ideal":
        return Ideal(self, [self.S.one])

    def free(self, n: int) -> "PresentedModule":
        return PresentedModule(self, n, ())

    def cyclic(self, J: "Ideal") -> "PresentedModule":
        """``R/J``."""
        return PresentedModule(self, 1, [(g,) for g in J.gens])

    # -- invariants
    @cached_property
    def dim(self) -> int:
        if not self.L:
            return self.nvars
        lms = self.L_handle.leading_monomials()
        return monomial_ideal_dimension(lms, self.nvars)

    @property
    def codim(self) -> int:
        return self.nvars - self.dim

    @cached_property
    def embedding_dim(self) -> int:
        return self.maximal_ideal.min_gens()

    @property
    def is_regular(self) -> bool:
        return self.embedding_dim == self.dim

    @cached_property
    def is_cm(self) -> bool:
        return depth(self.free(1)) == self.dim

    @cached_property
    def canonical(self) -> "PresentedModule":
        if not self.is_cm:
            raise ValueError("canonical module requested for a non-Cohen-Macaulay ring")
        w = ext_ambient(self.free(1), self.codim)
        return PresentedModule(self, w.ngens, w.relations)

    @cached_property
    def is_gorenstein(self) -> bool:
        return self.is_cm and self.canonical.mu() == 1

    def info(self) -> dict:
        return {
            "variables": list(self.names),
            "defining_ideal": [str(f) for f in self.L],
            "field": self.field.spec,
            "local": self.local,
            "dim": self.dim,
            "codim": self.codim,
            "embedding_dim": self.embedding_dim,
            "regular": self.is_regular,
            "cohen_macaulay": self.is_cm,
            "gorenstein": self.is_gorenstein,
        }

    def __repr__(self):
        return f"PresentedRing({self.name}: k[{','.join(self.names)}]/({', '.join(map(str, self.L))}))"


def define_ring(field, variables, L_gens, local: bool = True, name=None) -> PresentedRing:
    return PresentedRing(variables, L_gens, field, local, name)


def monomial_ideal_dimension(monomials, nvars: int) -> int:
    """Krull dimension of ``k[x]/(monomials)``: the largest set of variables
    containing the support of no generator."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in monomials]
    if any(not s for s in supports):
        return -1
    for size in range(nvars, -1, -1):
        for U in itertools.combinations(range(nvars), size):
            U = set(U)
            if not any(s <= U for s in supports):
                return size
    return 0


# ---------------------------------------------------------------- ideals of R


class Ideal:
    """An ideal of a PresentedRing given by generators (lifted to S)."""

    def __init__(self, ring: PresentedRing, gens: Sequence[Polynomial]):
        self.ring = ring
        red = [ring.reduce(ring.S.coerce(g)) for g in gens]
        seen = []
        for g in red:
            if not g.is_zero() and g not in seen:
                seen.append(g)
        self.gens = tuple(seen)

    @cached_property
    def handle(self) -> IdealHandle:
        """Preimage ``J + L`` in S."""
        return IdealHandle(self.ring.S, self.gens + self.ring.L)

    def _same(self, other):
        if other.ring is not self.ring and not self.ring.same_as(other.ring):
            raise ValueError("ideals of different rings")

    def __add__(self, other: "Ideal") -> "Ideal":
        self._same(other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other) -> "Ideal":
        if isinstance(other, Polynomial):
            return Ideal(self.ring, [g * other for g in self.gens])
        self._same(other)
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens]).minimalized()

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Ideal":
        if n == 0:
            return self.ring.unit_ideal()
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def intersect(self, other: "Ideal") -> "Ideal":
        self._same(other)
        J = intersect(self.handle, other.handle)
        return Ideal(self.ring, J.gens).minimalized()

    def quotient(self, other: "Ideal") -> "Ideal":
        """``self : other``."""
        self._same(other)
        J = _ideal_quotient(self.handle, IdealHandle(self.ring.S, other.gens or (self.ring.S.zero,)))
        return Ideal(self.ring, J.gens).minimalized()

    def contains(self, f) -> bool:
        f = self.ring._coerce(f)
        return self.handle.contains(f)

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.issubset(other) and other.issubset(self)

    def __hash__(self):
        return id(self)

    def is_unit(self) -> bool:
        return any(g.constant_term() for g in self.gens) or self.handle.is_unit_ideal()

    def is_zero(self) -> bool:
        return all(self.ring.L_handle.contains(g) for g in self.gens)

    def min_gens(self) -> int:
        """mu(I): minimal number of generators of I in the local ring."""
        return len(minimal_generator_indices(self.ring, [(g,) for g in self.gens], 1))

    def minimalized(self) -> "Ideal":
        keep = minimal_generator_indices(self.ring, [(g,) for g in self.gens], 1)
        return Ideal(self.ring, [self.gens[i] for i in keep])

    def colength(self):
        """Length of R/I (``math.inf`` when not m-primary)."""
        return module_length(self.ring, [(g,) for g in self.gens], 1)

    def is_m_primary(self) -> bool:
        return not self.is_unit() and self.colength() != math.inf

    def maximal_power_exponent(self, cap: int = 64) -> int:
        """Least N with m^N contained in I (I primary to the maximal ideal)."""
        m = self.ring.maximal_ideal
        power = m
        for N in range(1, cap + 1):
            if power.issubset(self):
                return N
            power = power * m
        raise RuntimeError("ideal is not primary to the maximal ideal within the cap")

    def order(self, cap: int = 32) -> int:
        """max{n : I is contained in m^n}."""
        m = self.ring.maximal_ideal
        n = 0
        power = self.ring.unit_ideal()
        while n < cap:
            power = power * m if n else m
            if not self.issubset(power):
                return n
            n += 1
        return n

    def __str__(self):
        return "(" + ", ".join(map(str, self.gens)) + ")"

    def __repr__(self):
        return f"Ideal{self}"


# ---------------------------------------------------------------- modules


def _cols_to_vecs(cols):
    return [column_to_vec(c) for c in cols]


def _reduce_column(ring: PresentedRing, col):
    return tuple(ring.reduce(f) for f in col)


def _is_zero_column(col):
    return all(f.is_zero() for f in col)


def syz_columns(ring: PresentedRing, cols, n: int):
    """Relations (over R) among the columns ``cols`` of ``R^n``."""
    if not cols:
        return []
    vecs = _cols_to_vecs(cols)
    out = []
    for v in syzygy_vectors(vecs, n, ring.S, ring.L):
        col = _reduce_column(ring, vec_to_column(v, ring.S, len(cols)))
        if not _is_zero_column(col):
            out.append(col)
    return out


def constant_matrix(cols, n, field):
    """Rows = columns of ``cols`` evaluated at the origin."""
    return [[f.constant_term() for f in col] for col in cols]


def minimal_generator_indices(ring: PresentedRing, cols, n: int):
    """Indices of a minimal generating subset of the submodule spanned by ``cols``.

    Constant parts of the relations among the columns span the kernel of
    k^m -> N/mN; its pivot coordinates are redundant generators (Nakayama).
    """
    cols = list(cols)
    nonzero = [i for i, c in enumerate(cols) if not _is_zero_column(_reduce_column(ring, c))]
    sub = [cols[i] for i in nonzero]
    if not sub:
        return []
    syz = syz_columns(ring, sub, n)
    consts = constant_matrix(syz, len(sub), ring.field)
    drop = set(_rref_pivots(consts, len(sub), ring.field))
    return [nonzero[i] for i in range(len(sub)) if i not in drop]


def module_length(ring: PresentedRing, cols, n: int):
    """Length of ``R^n / span(cols)`` via the staircase of a local standard basis."""
    if n == 0:
        return 0
    entries, _ = submodule_entries(_cols_to_vecs(cols), n, ring.S, ring.L, ring.S.order)
    total = 0
    for comp in range(n):
        lms = [e.lm for e in entries if e.comp == comp]
        c = staircase_size(lms, ring.nvars)
        if c == math.inf:
            return math.inf
        total += c
    return total


def staircase_size(lms, nvars: int):
    """Number of monomials outside the monomial ideal generated by ``lms``."""
    if any(not any(m) for m in lms):
        return 0
    bounds = []
    for i in range(nvars):
        pure = [m[i] for m in lms if m[i] and all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            return math.inf
        bounds.append(min(pure))
    count = 0
    for e in itertools.product(*(range(b) for b in bounds)):
        if not any(all(a <= b for a, b in zip(m, e)) for m in lms):
            count += 1
    return count


def staircase(lms, nvars: int):
    bounds = []
    for i in range(nvars):
        pure = [m[i] for m in lms if m[i] and all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            raise ValueError("infinite staircase")
        bounds.append(min(pure))
    return [e for e in itertools.product(*(range(b) for b in bounds))
            if not any(all(a <= b for a, b in zip(m, e)) for m in lms)]


class PresentedModule:
    """``coker(R^r -> R^n)`` with the given relation columns (entries lifted to S)."""

    def __init__(self, ring: PresentedRing, ngens: int, relations: Sequence = ()):
        self.ring = ring
        self.ngens = ngens
        rels = []
        for col in relations:
            col = tuple(ring._coerce(f) for f in col)
            if len(col) != ngens:
                raise ValueError("relation column has the wrong length")
            col = _reduce_column(ring, col)
            if not _is_zero_column(col) and col not in rels:
                rels.append(col)
        self.relations = tuple(rels)
        self._cache = {}

    # -- structure
    @property
    def nrels(self) -> int:
        return len(self.relations)

    def zero_column(self):
        return tuple(self.ring.S.zero for _ in range(self.ngens))

    def unit_column(self, i):
        z = list(self.zero_column())
        z[i] = self.ring.S.one
        return tuple(z)

    def _entries(self):
        if "entries" not in self._cache:
            self._cache["entries"] = submodule_entries(
                _cols_to_vecs(self.relations), self.ngens, self.ring.S, self.ring.L, self.ring.S.order)
        return self._cache["entries"]

    def is_zero_element(self, col) -> bool:
        """Whether the element with coordinates ``col`` vanishes in M (locally)."""
        if self.ngens == 0:
            return True
        return submodule_contains(self._entries(), column_to_vec(col), self.ring.field)

    def mu(self) -> int:
        """Minimal number of generators: n - rank of the relation matrix at the origin."""
        if self.ngens == 0:
            return 0
        consts = constant_matrix(self.relations, self.ngens, self.ring.field)
        return self.ngens - rank_over_k(consts, self.ring.field)

    def is_zero(self) -> bool:
        return self.mu() == 0

    def length(self):
        if "length" not in self._cache:
            self._cache["length"] = module_length(self.ring, self.relations, self.ngens)
        return self._cache["length"]

    def is_minimal(self) -> bool:
        """All relation entries lie in the maximal ideal."""
        return all(not f.constant_term() for col in self.relations for f in col)

    def over(self, ring: PresentedRing) -> "PresentedModule":
        """Same presentation over another quotient of the same ambient ring (e.g. ``M/xM``)."""
        return PresentedModule(ring, self.ngens, self.relations)

    def matrix_strings(self):
        return [[str(self.relations[j][i]) for j in range(self.nrels)] for i in range(self.ngens)]

    def __repr__(self):
        return f"PresentedModule(ngens={self.ngens}, relations={self.matrix_strings()})"


@dataclass
class ModuleMap:
    """A homomorphism given by the images of the source generators (target coordinates)."""

    source: PresentedModule
    target: PresentedModule
    images: tuple

    def __post_init__(self):
        self.images = tuple(tuple(self.target.ring._coerce(f) for f in col) for col in self.images)
        if len(self.images) != self.source.ngens:
            raise ValueError("map needs one image per source generator")
        for col in self.images:
            if len(col) != self.target.ngens:
                raise ValueError("image has the wrong length")

    def apply(self, col):
        S = self.target.ring.S
        out = [S.zero] * self.target.ngens
        for a, img in zip(col, self.images):
            if a.is_zero():
                continue
            for i, f in enumerate(img):
                if not f.is_zero():
                    out[i] = out[i] + a * f
        return tuple(self.target.ring.reduce(f) for f in out)

    def is_well_defined(self) -> bool:
        return all(self.target.is_zero_element(self.apply(r)) for r in self.source.relations)

    def evaluated_at_origin(self):
        return [[f.constant_term() for f in img] for img in self.images]


def identity_map(M: PresentedModule) -> ModuleMap:
    return ModuleMap(M, M, [M.unit_column(i) for i in range(M.ngens)])


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """``g o f``."""
    return ModuleMap(f.source, g.target, [g.apply(img) for img in f.images])


# ---------------------------------------------------------------- constructions


def subquotient(ring: PresentedRing, gens, rels, n: int) -> PresentedModule:
    """The module span(gens) / (span(gens) meet span(rels)) with ``gens`` as generators.

    Equivalently ``(span(gens) + span(rels)) / span(rels)``; relations among
    the generators come from projecting the syzygies of ``gens + rels``.
    """
    gens = list(gens)
    rels = list(rels)
    k = len(gens)
    if k == 0:
        return PresentedModule(ring, 0, ())
    syz = syz_columns(ring, gens + rels, n)
    proj = [col[:k] for col in syz]
    return PresentedModule(ring, k, proj)


def prune(M: PresentedModule):
    """Minimal presentation of M with an isomorphism ``M' -> M``.

    Generators are a minimal subset of M's generators (unit-pivot elimination
    on the constant part of the relation matrix); relations are then a
    minimal generating subset of the relation module.
    """
    if "pruned" in M._cache:
        return M._cache["pruned"]
    ring = M.ring
    n = M.ngens
    consts = constant_matrix(M.relations, n, ring.field)
    drop = set(_rref_pivots(consts, n, ring.field))
    keep = [i for i in range(n) if i not in drop]
    if drop:
        units = [M.unit_column(i) for i in keep]
        N = subquotient(ring, units, M.relations, n)
    else:
        N = M
    idx = minimal_generator_indices(ring, N.relations, N.ngens)
    P = PresentedModule(ring, N.ngens, [N.relations[i] for i in idx])
    iso = ModuleMap(P, M, [M.unit_column(i) for i in keep])
    M._cache["pruned"] = (P, iso)
    return P, iso


def direct_sum(*mods: PresentedModule) -> PresentedModule:
    ring = mods[0].ring
    n = sum(M.ngens for M in mods)
    zero = ring.S.zero
    rels = []
    off = 0
    for M in mods:
        for col in M.relations:
            full = [zero] * n
            full[off:off + M.ngens] = col
            rels.append(tuple(full))
        off += M.ngens
    return PresentedModule(ring, n, rels)


def cokernel(f: ModuleMap):
    N = f.target
    C = PresentedModule(N.ring, N.ngens, list(N.relations) + list(f.images))
    return C, ModuleMap(N, C, [N.unit_column(i) for i in range(N.ngens)])


def image(f: ModuleMap):
    N = f.target
    Im = subquotient(N.ring, f.images, N.relations, N.ngens)
    return Im, ModuleMap(Im, N, f.images)


def kernel(f: ModuleMap, minimal: bool = True):
    """Kernel of f with its inclusion into the source."""
    M, N = f.source, f.target
    ring = M.ring
    m = M.ngens
    if m == 0:
        K = PresentedModule(ring, 0, ())
        return K, ModuleMap(K, M, [])
    syz = syz_columns(ring, list(f.images) + list(N.relations), N.ngens)
    gens = [col[:m] for col in syz if not _is_zero_column(col[:m])]
    # elements of the kernel that already vanish in M are irrelevant
    gens = [g for g in gens if not M.is_zero_element(g)]
    if minimal and gens:
        gens = _minimal_in_quotient(ring, gens, M.relations, m)
    K = subquotient(ring, gens, M.relations, m)
    return K, ModuleMap(K, M, gens)


def _minimal_in_quotient(ring, gens, rels, n):
    """A subset of ``gens`` minimally generating their image modulo ``rels``."""
    Q = subquotient(ring, gens, rels, n)
    consts = constant_matrix(Q.relations, Q.ngens, ring.field)
    drop = set(_rref_pivots(consts, Q.ngens, ring.field))
    return [g for i, g in enumerate(gens) if i not in drop]


def pushout(f: ModuleMap, g: ModuleMap):
    """Pushout of ``A <-f- C -g-> B`` with the structure maps ``A -> P`` and ``B -> P``."""
    A, B = f.target, g.target
    ring = A.ring
    zero = ring.S.zero
    na, nb = A.ngens, B.ngens
    rels = [tuple(col) + (zero,) * nb for col in A.relations]
    rels += [(zero,) * na + tuple(col) for col in B.relations]
    for fa, gb in zip(f.images, g.images):
        rels.append(tuple(fa) + tuple(-x for x in gb))
    P = PresentedModule(ring, na + nb, rels)
    ia = ModuleMap(A, P, [P.unit_column(i) for i in range(na)])
    ib = ModuleMap(B, P, [P.unit_column(na + i) for i in range(nb)])
    return P, ia, ib


def map_ops(kind: str, *maps):
    if kind == "kernel":
        return kernel(*maps)
    if kind == "cokernel":
        return cokernel(*maps)
    if kind == "image":
        return image(*maps)
    if kind == "pushout":
        return pushout(*maps)
    if kind == "composite":
        return compose(*maps)
    raise ValueError(f"unknown map operation {kind!r}")


def quotient_module(A: Ideal, B: Ideal) -> PresentedModule:
    """``A / B`` for ideals with ``B`` contained in ``A`` (generators: those of A)."""
    return subquotient(A.ring, [(g,) for g in A.gens], [(g,) for g in B.gens], 1)


def ideal_module(I: Ideal) -> PresentedModule:
    return subquotient(I.ring, [(g,) for g in I.gens], [], 1)


# ---------------------------------------------------------------- resolutions


@dataclass
class ResolutionSlice:
    """``F_n -> ... -> F_0`` as relation matrices ``d_1..d_n`` (lists of columns)."""

    ring: PresentedRing
    module: PresentedModule
    ranks: list
    differentials: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return len([d for d in self.differentials if d])

    def is_minimal(self) -> bool:
        return all(not f.constant_term() for d in self.differentials for col in d for f in col)

    def is_complex(self) -> bool:
        ring = self.ring
        for k in range(1, len(self.differentials)):
            prev = PresentedModule(ring, self.ranks[k - 1], ())
            dmap = ModuleMap(PresentedModule(ring, self.ranks[k], ()), prev, self.differentials[k - 1])
            for col in self.differentials[k]:
                if not prev.is_zero_element(dmap.apply(col)):
                    return False
        return True

    def is_exact_at(self, k: int) -> bool:
        """ker d_k equals im d_{k+1} (checked by recomputing the kernel)."""
        ring = self.ring
        if k >= len(self.differentials):
            return True
        dk = self.differentials[k - 1]
        src = self.ranks[k]
        ker = syz_columns(ring, dk, self.ranks[k - 1])
        nxt = self.differentials[k] if k < len(self.differentials) else []
        F = PresentedModule(ring, src, nxt)
        return all(F.is_zero_element(col) for col in ker)


def minimal_resolution(M: PresentedModule, steps: int) -> ResolutionSlice:
    """Minimal free resolution of M up to ``F_steps``."""
    P, _ = prune(M)
    ring = M.ring
    res = ResolutionSlice(ring, P, [P.ngens], [])
    current = list(P.relations)
    for k in range(1, steps + 1):
        res.differentials.append(current)
        res.ranks.append(len(current))
        if not current:
            break
        if k == steps:
            break
        syz = syz_columns(ring, current, res.ranks[k - 1])
        idx = minimal_generator_indices(ring, syz, len(current))
        current = [syz[i] for i in idx]
    return res


def syzygy_module(M: PresentedModule, n: int):
    """``Omega^n M`` (minimal) with its inclusion into ``F_{n-1}`` (for n >= 1)."""
    if n == 0:
        return M, None
    res = minimal_resolution(M, n + 1)
    ring = M.ring
    if len(res.differentials) < n or not res.differentials[n - 1]:
        Z = PresentedModule(ring, 0, ())
        return Z, ModuleMap(Z, PresentedModule(ring, res.ranks[n - 1] if n - 1 < len(res.ranks) else 0, ()), [])
    dn = res.differentials[n - 1]
    nxt = res.differentials[n] if len(res.differentials) > n else syz_columns(ring, dn, res.ranks[n - 1])
    Om = PresentedModule(ring, len(dn), nxt)
    F = PresentedModule(ring, res.ranks[n - 1], ())
    return Om, ModuleMap(Om, F, dn)


def syzygy(M: PresentedModule, n: int) -> PresentedModule:
    return syzygy_module(M, n)[0]


def over_ambient(M: PresentedModule) -> PresentedModule:
    """M viewed as a module over the ambient ring S (the relations L*e_i made explicit)."""
    ring = M.ring
    S = ring.ambient()
    rels = list(M.relations)
    zero = ring.S.zero
    for i in range(M.ngens):
        for l in ring.L:
            col = [zero] * M.ngens
            col[i] = l
            rels.append(tuple(col))
    return PresentedModule(S, M.ngens, rels)


def projective_dimension(M: PresentedModule, bound: int | None = None) -> float:
    """pd over R from a minimal resolution (``math.inf`` past ``bound`` steps)."""
    bound = bound if bound is not None else (M.ring.max_steps or M.ring.dim + 2)
    if M.is_zero():
        return -1
    res = minimal_resolution(M, bound + 1)
    for k, d in enumerate(res.differentials, start=1):
        if not d:
            return k - 1
    return math.inf


def ext_ambient(M: PresentedModule, i: int) -> PresentedModule:
    """``Ext^i_S(M, S)`` for the R-module M viewed over the ambient ring S."""
    ring = M.ring
    n = ring.nvars
    if not 0 <= i <= n:
        raise ValueError("Ext index out of range")
    MS = over_ambient(M)
    S = MS.ring
    res = minimal_resolution(MS, i + 1)
    ranks = res.ranks + [0] * (i + 2 - len(res.ranks))
    diffs = res.differentials + [[]] * (i + 1 - len(res.differentials))
    rank_i = ranks[i]
    if rank_i == 0:
        return PresentedModule(ring, 0, ())
    d_next = diffs[i]  # F_{i+1} -> F_i
    if d_next:
        rows = [tuple(col[r] for col in d_next) for r in range(rank_i)]
        ker = syz_columns(S, rows, len(d_next))
    else:
        ker = [PresentedModule(S, rank_i).unit_column(r) for r in range(rank_i)]
    if i == 0:
        im = []
    else:
        d_i = diffs[i - 1]  # F_i -> F_{i-1}
        im = [tuple(d_i[c][r] for c in range(rank_i)) for r in range(ranks[i - 1])]
    E = subquotient(S, ker, im, rank_i)
    return PresentedModule(ring, E.ngens, E.relations)


def depth(M: PresentedModule) -> float:
    """``#vars - max{i : Ext^i_S(M, S) != 0}``; ``math.inf`` for the zero module.

    The top nonvanishing Ext index equals the length of the minimal S-resolution.
    """
    if M.is_zero():
        return math.inf
    pd = projective_dimension(over_ambient(M), M.ring.nvars + 1)
    return M.ring.nvars - pd


def depth_via_ext(M: PresentedModule) -> float:
    if M.is_zero():
        return math.inf
    top = max(i for i in range(M.ring.nvars + 1) if not ext_ambient(M, i).is_zero())
    return M.ring.nvars - top


def is_mcm(M: PresentedModule) -> bool:
    if M.is_zero():
        return False
    return depth(M) == M.ring.dim


# ---------------------------------------------------------------- duals, freeness, invariants


def dual_generators(M: PresentedModule, minimal: bool = True):
    """Generators of Hom(M, R) as functionals (one value per generator of M)."""
    ring = M.ring
    n = M.ngens
    if n == 0:
        return []
    if M.relations:
        rows = [tuple(col[i] for col in M.relations) for i in range(n)]
        funcs = syz_columns(ring, rows, len(M.relations))
    else:
        funcs = [M.unit_column(i) for i in range(n)]
    if minimal and funcs:
        idx = minimal_generator_indices(ring, funcs, n)
        funcs = [funcs[i] for i in idx]
    return funcs


def pairing_matrix(funcs, cols, field):
    """Matrix ``[f(c)]`` evaluated at the origin (rows: functionals, cols: elements)."""
    out = []
    for f in funcs:
        row = []
        for c in cols:
            v = 0
            for a, b in zip(f, c):
                v += a.constant_term() * b.constant_term()
            row.append(field.norm(v))
        out.append(row)
    return out


def is_free_over_quotient(M: PresentedModule, I: Ideal):
    """Whether M (annihilated by I) is a free R/I-module; returns (verdict, rank)."""
    ring = M.ring
    for j in range(M.ngens):
        for g in I.gens:
            col = list(M.zero_column())
            col[j] = g
            if not M.is_zero_element(tuple(col)):
                raise ValueError("I*M != 0: M is not an R/I-module")
    if M.is_zero():
        return True, 0
    Rq = ring.quotient_ring(I.gens)
    Mq = M.over(Rq)
    P, _ = prune(Mq)
    zero_rel = all(Rq.L_handle.contains(f) for col in P.relations for f in col)
    return zero_rel, P.ngens


def fitting_ideal(M: PresentedModule, j: int) -> Ideal:
    """Ideal of (n - j)-minors of a presentation matrix of M."""
    ring = M.ring
    P, _ = prune(M)
    n = P.ngens
    size = n - j
    if size <= 0:
        return ring.unit_ideal()
    cols = P.relations
    if size > len(cols):
        return Ideal(ring, [])
    minors = []
    for rows in itertools.combinations(range(n), size):
        for cs in itertools.combinations(range(len(cols)), size):
            mat = [[cols[c][r] for c in cs] for r in rows]
            d = determinant(mat, ring.S)
            d = ring.reduce(d)
            if not d.is_zero():
                minors.append(d)
    return Ideal(ring, minors)


def determinant(mat, S: PolyRing) -> Polynomial:
    n = len(mat)
    if n == 0:
        return S.one
    if n == 1:
        return mat[0][0]
    total = S.zero
    for j in range(n):
        a = mat[0][j]
        if a.is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = a * determinant(minor, S)
        total = total + term if j % 2 == 0 else total - term
    return total


def truncated_lengths(M: PresentedModule, k: int):
    """len(M / m^t M) for t = 1..k."""
    ring = M.ring
    out = []
    m = ring.maximal_ideal
    for t in range(1, k + 1):
        mt = m ** t
        extra = []
        for i in range(M.ngens):
            for g in mt.gens:
                col = list(M.zero_column())
                col[i] = g
                extra.append(tuple(col))
        out.append(module_length(ring, list(M.relations) + extra, M.ngens))
    return out


def iso_invariants(M: PresentedModule, fitting: bool = True) -> dict:
    """Isomorphism invariants: length, mu, Fitting ideals (as Ideal objects)."""
    P, _ = prune(M)
    inv = {"length": P.length(), "mu": P.ngens}
    if fitting:
        inv["fitting"] = [fitting_ideal(P, j) for j in range(P.ngens)]
    return inv


def same_invariants(a: dict, b: dict) -> bool:
    if a["length"] != b["length"] or a["mu"] != b["mu"]:
        return False
    if "fitting" in a and "fitting" in b:
        return all(x == y for x, y in zip(a["fitting"], b["fitting"]))
    return True
