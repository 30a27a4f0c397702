"""Strict monoidal structures, lax monoidal functors and monoidal transformations.

Only strict monoidal categories are representable, so the associativity and
unit laws below are plain equalities of morphisms. ``SETSKEL`` plays the role
of a monoidal structure on itself and can be used wherever a
:class:`MonoidalStructure` target is expected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Sequence, Union

from .errors import LawError, ReportBuilder, StructureError, ValidationReport
from .fincat import (
    FinCategory,
    FunctorData,
    NatTransData,
    compose_functors,
    discrete_from_monoid,
    identity_functor,
    product_category,
    validate_category,
    validate_functor,
    validate_nat_trans,
    vertical_compose,
)
from .monoids import FiniteMonoid
from .setskel import SETSKEL, SetMap, SetSkel, inverse, symmetry, tensor


@dataclass(frozen=True)
class MonoidalStructure:
    base: FinCategory
    unit: int
    obj_table: tuple[tuple[int, ...], ...]
    mor_table: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def tensor_obj(self, a: int, b: int) -> int:
        return self.obj_table[a][b]

    def tensor_mor(self, f: int, g: int) -> int:
        return self.mor_table[f][g]

    def source(self, m):
        return self.base.src[m]

    def target(self, m):
        return self.base.tgt[m]

    def id(self, a):
        return self.base.identity[a]

    def compose(self, f, g):
        return self.base.compose(f, g)

    def is_object(self, x) -> bool:
        return self.base.is_object(x)

    def is_morphism(self, x) -> bool:
        return self.base.is_morphism(x)

    def label(self) -> str:
        return self.name or self.base.label()


MonoidalTarget = Union[MonoidalStructure, SetSkel]


def validate_monoidal(m: MonoidalStructure) -> ValidationReport:
    """Bifunctoriality of the tensor plus strict associativity and unitality."""
    c = m.base
    rb = ReportBuilder(f"monoidal {m.label()}")
    rb.extend(validate_category(c), "base:")
    n, nm = c.n_objects, c.n_morphisms
    if not 0 <= m.unit < n:
        raise StructureError(f"unit object {m.unit} out of range")
    if len(m.obj_table) != n or any(len(r) != n for r in m.obj_table):
        raise StructureError("object tensor table has wrong shape")
    if len(m.mor_table) != nm or any(len(r) != nm for r in m.mor_table):
        raise StructureError("morphism tensor table has wrong shape")
    for row in m.obj_table:
        for v in row:
            if not 0 <= v < n:
                raise StructureError(f"tensor of objects {v} out of range")
    for row in m.mor_table:
        for v in row:
            if not 0 <= v < nm:
                raise StructureError(f"tensor of morphisms {v} out of range")
    T, M = m.obj_table, m.mor_table
    for f in range(nm):
        for g in range(nm):
            h = M[f][g]
            if c.src[h] != T[c.src[f]][c.src[g]] or c.tgt[h] != T[c.tgt[f]][c.tgt[g]]:
                rb.add("tensor-endpoints", (f, g))
    if not rb.build().ok:
        return rb.build()
    for a in range(n):
        for b in range(n):
            if M[c.identity[a]][c.identity[b]] != c.identity[T[a][b]]:
                rb.add("tensor-identity", (a, b))
    for f in range(nm):
        for f2 in c.out[c.tgt[f]]:
            ff = c.compose(f, f2)
            for g in range(nm):
                for g2 in c.out[c.tgt[g]]:
                    if M[ff][c.compose(g, g2)] != c.compose(M[f][g], M[f2][g2]):
                        rb.add("interchange", (f, f2, g, g2))
    u, idu = m.unit, c.identity[m.unit]
    for a in range(n):
        if T[a][u] != a:
            rb.add("right-unit-object", (a,))
        if T[u][a] != a:
            rb.add("left-unit-object", (a,))
    for a, b, x in itertools.product(range(n), repeat=3):
        if T[T[a][b]][x] != T[a][T[b][x]]:
            rb.add("associativity-object", (a, b, x))
    for f in range(nm):
        if M[f][idu] != f:
            rb.add("right-unit-morphism", (f,))
        if M[idu][f] != f:
            rb.add("left-unit-morphism", (f,))
    for f, g, h in itertools.product(range(nm), repeat=3):
        if M[M[f][g]][h] != M[f][M[g][h]]:
            rb.add("associativity-morphism", (f, g, h))
    return rb.build()


def discrete_monoidal(m: FiniteMonoid) -> MonoidalStructure:
    """A monoid as a discrete strict monoidal category: tensor = multiplication."""
    c = discrete_from_monoid(m)
    return MonoidalStructure(c, m.unit, m.mult, m.mult, name=m.label())


def thin_monoidal(cat: FinCategory, obj_table: Sequence[Sequence[int]], unit: int,
                  name: str = "") -> MonoidalStructure:
    """Monoidal structure on a thin category; morphism tensors are forced."""
    T = tuple(tuple(r) for r in obj_table)
    mor = []
    for f in range(cat.n_morphisms):
        row = []
        for g in range(cat.n_morphisms):
            hs = cat.hom(T[cat.src[f]][cat.src[g]], T[cat.tgt[f]][cat.tgt[g]])
            if len(hs) != 1:
                raise StructureError(f"tensor of morphisms {f}, {g} has no target in a "
                                     "thin category")
            row.append(hs[0])
        mor.append(tuple(row))
    return MonoidalStructure(cat, unit, T, tuple(mor), name=name or cat.name)


def product_monoidal(a: MonoidalStructure, b: MonoidalStructure) -> MonoidalStructure:
    c = product_category(a.base, b.base)
    nb, mb = b.base.n_objects, b.base.n_morphisms
    na, ma = a.base.n_objects, a.base.n_morphisms
    objs = tuple(
        tuple(a.obj_table[i // nb][j // nb] * nb + b.obj_table[i % nb][j % nb]
              for j in range(na * nb))
        for i in range(na * nb)
    )
    mors = tuple(
        tuple(a.mor_table[i // mb][j // mb] * mb + b.mor_table[i % mb][j % mb]
              for j in range(ma * mb))
        for i in range(ma * mb)
    )
    return MonoidalStructure(c, a.unit * nb + b.unit, objs, mors,
                             name=f"{a.label()}x{b.label()}")


def tensor_functor(m: MonoidalStructure) -> FunctorData:
    """The tensor ``C x C -> C`` as a functor on the product category."""
    c = m.base
    return FunctorData(
        product_category(c, c), c,
        tuple(v for row in m.obj_table for v in row),
        tuple(v for row in m.mor_table for v in row),
        name="tensor",
    )


@dataclass(frozen=True)
class LaxMonoidalFunctor:
    """``functor`` with unit ``eta: I -> F(I)`` and ``mu[a][b]: Fa (x) Fb -> F(a (x) b)``."""

    source: MonoidalStructure
    target: MonoidalTarget
    functor: FunctorData
    eta: Hashable
    mu: tuple[tuple, ...]
    name: str = field(default="", compare=False)

    def mu_at(self, a: int, b: int):
        return self.mu[a][b]


def validate_lax_monoidal(f: LaxMonoidalFunctor) -> ValidationReport:
    """Functoriality, naturality of mu, associativity and both unit laws."""
    src, d, F = f.source, f.target, f.functor
    c = src.base
    if F.source != c:
        raise StructureError("lax functor: underlying functor does not start at the "
                             "source monoidal category")
    if F.target is not d.base and F.target != d.base:
        raise StructureError("lax functor: underlying functor does not land in the "
                             "target monoidal category")
    rb = ReportBuilder(f"lax monoidal functor {f.name}".strip())
    rb.extend(validate_functor(F), "functor:")
    if not rb.build().ok:
        return rb.build()
    n = c.n_objects
    if len(f.mu) != n or any(len(r) != n for r in f.mu):
        raise StructureError("mu family has wrong shape")
    Fo, Fm = F.object_map, F.morphism_map
    T = src.obj_table
    if not d.is_morphism(f.eta) or d.source(f.eta) != d.unit \
            or d.target(f.eta) != Fo[src.unit]:
        rb.add("eta-endpoints", ())
    for a in range(n):
        for b in range(n):
            m = f.mu[a][b]
            if not d.is_morphism(m) or d.source(m) != d.tensor_obj(Fo[a], Fo[b]) \
                    or d.target(m) != Fo[T[a][b]]:
                rb.add("mu-endpoints", (a, b))
    if not rb.build().ok:
        return rb.build()
    for p in range(c.n_morphisms):
        a, a2 = c.src[p], c.tgt[p]
        for q in range(c.n_morphisms):
            b, b2 = c.src[q], c.tgt[q]
            lhs = d.compose(d.tensor_mor(Fm[p], Fm[q]), f.mu[a2][b2])
            rhs = d.compose(f.mu[a][b], Fm[src.tensor_mor(p, q)])
            if lhs != rhs:
                rb.add("mu-naturality", (p, q))
    for a, b, x in itertools.product(range(n), repeat=3):
        ida, idx = d.id(Fo[a]), d.id(Fo[x])
        lhs = d.compose(d.tensor_mor(f.mu[a][b], idx), f.mu[T[a][b]][x])
        rhs = d.compose(d.tensor_mor(ida, f.mu[b][x]), f.mu[a][T[b][x]])
        if lhs != rhs:
            rb.add("associativity", (a, b, x))
    u = src.unit
    for a in range(n):
        ida = d.id(Fo[a])
        if d.compose(d.tensor_mor(ida, f.eta), f.mu[a][u]) != ida:
            rb.add("right-unit", (a,))
        if d.compose(d.tensor_mor(f.eta, ida), f.mu[u][a]) != ida:
            rb.add("left-unit", (a,))
    return rb.build()


@dataclass(frozen=True)
class StrongInverses:
    eta_inv: Hashable
    mu_inv: tuple[tuple, ...]


def _invert(d: MonoidalTarget, m):
    if d is SETSKEL:
        return inverse(m)
    base = d.base
    for k in base.hom(base.tgt[m], base.src[m]):
        if base.compose(m, k) == base.identity[base.src[m]] and \
                base.compose(k, m) == base.identity[base.tgt[m]]:
            return k
    return None


def strong_inverses(f: LaxMonoidalFunctor) -> StrongInverses | None:
    """Inverses of eta and every mu component, or ``None`` if one is missing."""
    d = f.target
    eta_inv = _invert(d, f.eta)
    if eta_inv is None:
        return None
    rows = []
    for row in f.mu:
        inv_row = []
        for m in row:
            k = _invert(d, m)
            if k is None:
                return None
            inv_row.append(k)
        rows.append(tuple(inv_row))
    return StrongInverses(eta_inv, tuple(rows))


def is_strong(f: LaxMonoidalFunctor) -> bool:
    return strong_inverses(f) is not None


def identity_lax(m: MonoidalStructure) -> LaxMonoidalFunctor:
    c = m.base
    mu = tuple(tuple(c.identity[m.obj_table[a][b]] for b in range(c.n_objects))
               for a in range(c.n_objects))
    return LaxMonoidalFunctor(m, m, identity_functor(c), c.identity[m.unit], mu, name="Id")


def compose_lax(g: LaxMonoidalFunctor, l: LaxMonoidalFunctor) -> LaxMonoidalFunctor:
    """``l . g`` with ``eta = L(eta_G) . eta_L`` and ``mu = L(mu_G) . mu_L``."""
    if g.target != l.source:
        raise StructureError("compose_lax: target of the first is not the source "
                             "of the second")
    d = l.target
    Lm = l.functor.morphism_map
    Go = g.functor.object_map
    n = g.source.base.n_objects
    eta = d.compose(l.eta, Lm[g.eta])
    mu = tuple(
        tuple(d.compose(l.mu[Go[a]][Go[b]], Lm[g.mu[a][b]]) for b in range(n))
        for a in range(n)
    )
    return LaxMonoidalFunctor(g.source, d, compose_functors(g.functor, l.functor), eta, mu)


def _tensor_plain(f: FunctorData, g: FunctorData, d: MonoidalTarget) -> FunctorData:
    c = product_category(f.source, g.source)
    return FunctorData(
        c, d.base,
        tuple(d.tensor_obj(x, y) for x in f.object_map for y in g.object_map),
        tuple(d.tensor_mor(p, q) for p in f.morphism_map for q in g.morphism_map),
        name=f"({f.name}(x){g.name})" if f.name and g.name else "",
    )


def tensor_of_functors(f, g, target: MonoidalTarget = SETSKEL):
    """``f (x) g := (x) . (f x g)`` on the product of the source categories.

    For two lax monoidal functors into ``SETSKEL`` the result is lax monoidal,
    its multiplication swapping the middle factors with the cartesian symmetry.
    Plain functors may land in any monoidal ``target``.
    """
    if isinstance(f, FunctorData) and isinstance(g, FunctorData):
        return _tensor_plain(f, g, target)
    if not (isinstance(f, LaxMonoidalFunctor) and isinstance(g, LaxMonoidalFunctor)):
        raise StructureError("tensor_of_functors needs two functors of the same kind")
    if f.target is not SETSKEL or g.target is not SETSKEL:
        raise StructureError("lax tensor of functors needs a symmetric target; only "
                             "SETSKEL is supported")
    src = product_monoidal(f.source, g.source)
    F = _tensor_plain(f.functor, g.functor, SETSKEL)
    nf, ng = f.source.base.n_objects, g.source.base.n_objects
    Fo, Go = f.functor.object_map, g.functor.object_map
    mu = []
    for i in range(nf * ng):
        a, b = divmod(i, ng)
        row = []
        for j in range(nf * ng):
            a2, b2 = divmod(j, ng)
            swap = tensor(tensor(SETSKEL.id(Fo[a]), symmetry(Go[b], Fo[a2])),
                          SETSKEL.id(Go[b2]))
            row.append(swap.then(tensor(f.mu[a][a2], g.mu[b][b2])))
        mu.append(tuple(row))
    return LaxMonoidalFunctor(src, SETSKEL, F, tensor(f.eta, g.eta), tuple(mu))


def tensor_of_nat_trans(s: NatTransData, t: NatTransData | None = None,
                        target: MonoidalTarget = SETSKEL) -> NatTransData:
    """``s (x) t`` with components ``(s (x) t)_(a,b) = s_a (x) t_b``."""
    t = s if t is None else t
    return NatTransData(
        _tensor_plain(s.source, t.source, target),
        _tensor_plain(s.target, t.target, target),
        tuple(target.tensor_mor(p, q) for p in s.components for q in t.components),
    )


@dataclass(frozen=True)
class MonoidalNatTrans:
    underlying: NatTransData
    source: LaxMonoidalFunctor
    target: LaxMonoidalFunctor


def validate_monoidal_nat_trans(t: MonoidalNatTrans) -> ValidationReport:
    """Naturality, unit compatibility and multiplication compatibility."""
    S, T, u = t.source, t.target, t.underlying
    if u.source != S.functor or u.target != T.functor:
        raise StructureError("monoidal transformation: frame mismatch")
    if S.source != T.source or (S.target is not T.target and S.target != T.target):
        raise StructureError("monoidal transformation between differently framed functors")
    d = S.target
    rb = ReportBuilder("monoidal transformation")
    rb.extend(validate_nat_trans(u))
    if not rb.build().ok:
        return rb.build()
    src = S.source
    k = u.components
    if d.compose(S.eta, k[src.unit]) != T.eta:
        rb.add("unit-compatibility", ())
    n = src.base.n_objects
    for a in range(n):
        for b in range(n):
            lhs = d.compose(S.mu[a][b], k[src.tensor_obj(a, b)])
            rhs = d.compose(d.tensor_mor(k[a], k[b]), T.mu[a][b])
            if lhs != rhs:
                rb.add("multiplication-compatibility", (a, b))
    return rb.build()


def identity_monoidal_nat_trans(f: LaxMonoidalFunctor) -> MonoidalNatTrans:
    d = f.target
    comps = tuple(d.id(x) for x in f.functor.object_map)
    return MonoidalNatTrans(NatTransData(f.functor, f.functor, comps), f, f)


def vertical_compose_monoidal(s: MonoidalNatTrans, t: MonoidalNatTrans) -> MonoidalNatTrans:
    return MonoidalNatTrans(vertical_compose(s.underlying, t.underlying), s.source, t.target)


def require_lax(f: LaxMonoidalFunctor) -> None:
    validate_lax_monoidal(f).raise_if_failed(LawError)


def set_lax_functor(source: MonoidalStructure, sizes: Sequence[int],
                    maps: Sequence[Sequence[int]] | None, eta: int,
                    mu: Sequence[Sequence[Sequence[int]]], name: str = "") -> LaxMonoidalFunctor:
    """Convenience constructor for a lax functor into finite sets.

    ``maps[m]`` is the table of the image of morphism ``m`` (identities may be
    given as ``None`` or omitted entirely for discrete sources), ``eta`` the
    chosen unit element and ``mu[a][b]`` the flattened multiplication table.
    """
    c = source.base
    mor = []
    for m in range(c.n_morphisms):
        a, b = c.src[m], c.tgt[m]
        table = None if maps is None else maps[m]
        if table is None:
            if a != b:
                raise StructureError(f"missing table for non-identity morphism {m}")
            mor.append(SETSKEL.id(sizes[a]))
        else:
            mor.append(SetMap(sizes[a], sizes[b], tuple(table)))
    F = FunctorData(c, SETSKEL, tuple(sizes), tuple(mor), name=name)
    T = source.obj_table
    mu_maps = tuple(
        tuple(SetMap(sizes[a] * sizes[b], sizes[T[a][b]], tuple(mu[a][b]))
              for b in range(c.n_objects))
        for a in range(c.n_objects)
    )
    return LaxMonoidalFunctor(source, SETSKEL, F, SetMap(1, sizes[source.unit], (eta,)),
                              mu_maps, name=name)
