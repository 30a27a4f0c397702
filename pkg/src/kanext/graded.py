"""Monoid-graded monoids in finite sets and monoid-graded rings.

An ``M``-graded monoid has a finite set ``A_m`` for each grade, a unit element
in ``A_1`` and multiplications ``A_m x A_n -> A_mn``; equivalently a lax
monoidal functor from ``M`` (a discrete monoidal category) to finite sets.
Regrading along ``h: M -> M'`` puts ``L_m' = disjoint union of A_m over h(m) = m'``.

Graded rings are collapsed to ungraded rings by taking the direct sum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from .errors import (
    EngineError,
    LawError,
    PreconditionError,
    ReportBuilder,
    SizeGuardError,
    StructureError,
    ValidationReport,
)
from .fincat import FunctorData
from .monoidal import (
    LaxMonoidalFunctor,
    MonoidalStructure,
    discrete_monoidal,
    set_lax_functor,
)
from .monoids import FiniteMonoid, MonoidHom, validate_hom, validate_monoid
from .setskel import SETSKEL, SetMap, inverse

MAX_RING_SIZE = 4096


@dataclass(frozen=True)
class GradedMonoid:
    grading: FiniteMonoid
    sizes: tuple[int, ...]
    unit_elem: int
    mult: tuple[tuple[SetMap, ...], ...]
    name: str = field(default="", compare=False)

    def product(self, m: int, a: int, n: int, b: int) -> int:
        """``a * b`` for ``a`` in ``A_m`` and ``b`` in ``A_n``; lands in ``A_mn``."""
        return self.mult[m][n].table[a * self.sizes[n] + b]

    @classmethod
    def from_tables(cls, grading: FiniteMonoid, sizes: Sequence[int], unit_elem: int,
                    tables: Sequence[Sequence[Sequence[int]]], name: str = "") -> GradedMonoid:
        k = grading.order
        if len(sizes) != k or len(tables) != k or any(len(r) != k for r in tables):
            raise StructureError("graded monoid tables do not match the grading")
        mult = tuple(
            tuple(SetMap(sizes[m] * sizes[n], sizes[grading.mult[m][n]], tuple(tables[m][n]))
                  for n in range(k))
            for m in range(k)
        )
        return cls(grading, tuple(sizes), unit_elem, mult, name)

    def tables(self) -> list[list[list[int]]]:
        return [[list(t.table) for t in row] for row in self.mult]


def validate_graded_monoid(gm: GradedMonoid) -> ValidationReport:
    M = gm.grading
    rb = ReportBuilder(f"graded monoid {gm.name}".strip())
    rb.extend(validate_monoid(M), "grading:")
    k, s = M.order, gm.sizes
    if len(s) != k or len(gm.mult) != k or any(len(r) != k for r in gm.mult):
        raise StructureError("graded monoid tables do not match the grading")
    for m in range(k):
        for n in range(k):
            t = gm.mult[m][n]
            if t.dom != s[m] * s[n] or t.cod != s[M.mult[m][n]]:
                raise StructureError(f"multiplication table for grades ({m}, {n}) "
                                     "has the wrong shape")
    u = M.unit
    if not 0 <= gm.unit_elem < s[u]:
        raise StructureError("unit element is not in the unit component")
    if not rb.build().ok:
        return rb.build()
    e = gm.unit_elem
    for n in range(k):
        for b in range(s[n]):
            if gm.product(u, e, n, b) != b:
                rb.add("left-unit", (n, b))
            if gm.product(n, b, u, e) != b:
                rb.add("right-unit", (n, b))
    for m, n, p in itertools.product(range(k), repeat=3):
        mn, np_ = M.mult[m][n], M.mult[n][p]
        for a in range(s[m]):
            for b in range(s[n]):
                ab = gm.product(m, a, n, b)
                for c in range(s[p]):
                    if gm.product(mn, ab, p, c) != gm.product(m, a, np_, gm.product(n, b, p, c)):
                        rb.add("associativity", (m, a, n, b, p, c))
    return rb.build()


def graded_to_lax_functor(gm: GradedMonoid) -> LaxMonoidalFunctor:
    src = discrete_monoidal(gm.grading)
    return set_lax_functor(src, gm.sizes, None, gm.unit_elem,
                           [[t.table for t in row] for row in gm.mult], name=gm.name)


def monoid_of(m: MonoidalStructure) -> FiniteMonoid:
    """The monoid of objects of a discrete strict monoidal category."""
    if not m.base.is_discrete:
        raise PreconditionError("not a discrete monoidal category")
    return FiniteMonoid(m.base.objects, m.unit, m.obj_table, name=m.name)


def lax_functor_to_graded(f: LaxMonoidalFunctor) -> GradedMonoid:
    if f.target is not SETSKEL:
        raise PreconditionError("graded monoids live in finite sets")
    M = monoid_of(f.source)
    return GradedMonoid(M, tuple(f.functor.object_map), f.eta.table[0], f.mu, name=f.name)


def hom_to_strong_functor(h: MonoidHom) -> LaxMonoidalFunctor:
    """A monoid homomorphism as a strict monoidal functor of discrete categories."""
    validate_hom(h).raise_if_failed(LawError)
    s, t = discrete_monoidal(h.source), discrete_monoidal(h.target)
    F = FunctorData(s.base, t.base, h.table, h.table, name=h.label())
    n = h.source.order
    mu = tuple(tuple(h.table[h.source.mult[a][b]] for b in range(n)) for a in range(n))
    return LaxMonoidalFunctor(s, t, F, t.base.identity[h.target.unit], mu, name=h.label())


def fiber_offsets(gm: GradedMonoid, h: MonoidHom) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Offset of ``A_m`` inside ``L_h(m)`` for every ``m``, and the sizes of ``L``."""
    sizes = [0] * h.target.order
    offsets = []
    for m in range(gm.grading.order):
        offsets.append(sizes[h.table[m]])
        sizes[h.table[m]] += gm.sizes[m]
    return tuple(offsets), tuple(sizes)


def regrade_direct(gm: GradedMonoid, h: MonoidHom) -> GradedMonoid:
    """Change of grading by coproducting fibres, in grade-index order."""
    if h.source != gm.grading:
        raise PreconditionError("homomorphism does not start at the grading monoid")
    validate_hom(h).raise_if_failed(LawError)
    M, N = gm.grading, h.target
    offsets, sizes = fiber_offsets(gm, h)
    owner: list[list[tuple[int, int]]] = [[] for _ in range(N.order)]
    for m in range(M.order):
        owner[h.table[m]].extend((m, a) for a in range(gm.sizes[m]))
    tables = []
    for x in range(N.order):
        row = []
        for y in range(N.order):
            t = []
            for m, a in owner[x]:
                for n, b in owner[y]:
                    mn = M.mult[m][n]
                    t.append(offsets[mn] + gm.product(m, a, n, b))
            row.append(t)
        tables.append(row)
    unit = offsets[M.unit] + gm.unit_elem
    return GradedMonoid.from_tables(N, sizes, unit, tables,
                                    name=f"{gm.name}@{h.label()}" if gm.name else "")


def check_graded_iso(a: GradedMonoid, b: GradedMonoid,
                     maps: Sequence[SetMap]) -> ValidationReport:
    """Whether ``maps[m]: A_m -> B_m`` is an isomorphism of graded monoids."""
    rb = ReportBuilder("graded isomorphism")
    if a.grading != b.grading:
        rb.add("grading-mismatch")
        return rb.build()
    M = a.grading
    for m, f in enumerate(maps):
        if f.dom != a.sizes[m] or f.cod != b.sizes[m] or inverse(f) is None:
            rb.add("not-bijective", (m,))
    if not rb.build().ok:
        return rb.build()
    if maps[M.unit](a.unit_elem) != b.unit_elem:
        rb.add("unit")
    for m in range(M.order):
        for n in range(M.order):
            mn = M.mult[m][n]
            for x in range(a.sizes[m]):
                for y in range(a.sizes[n]):
                    if maps[mn](a.product(m, x, n, y)) != b.product(m, maps[m](x), n, maps[n](y)):
                        rb.add("multiplication", (m, x, n, y))
    return rb.build()


@dataclass(frozen=True)
class RegradeReport:
    direct: GradedMonoid
    extension: object  # MonoidalKanResult
    bijections: tuple[SetMap, ...]
    iso: ValidationReport
    theorem: ValidationReport

    @property
    def ok(self) -> bool:
        return self.iso.ok and self.theorem.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "sizes": list(self.direct.sizes),
            "bijections": [list(b.table) for b in self.bijections],
            "iso": self.iso.to_dict(),
            "theorem": self.theorem.to_dict(),
        }


def regrade_oracle_check(gm: GradedMonoid, h: MonoidHom, **kwargs) -> RegradeReport:
    """Regrade directly and through the Kan extension engine, then exhibit a
    grade-wise bijection between the two and check it is an isomorphism.

    The bijection at ``m'`` sends the copy of ``a`` in ``A_m`` to ``lambda_m(a)``.
    Keyword arguments go to :func:`kanext.montheorem.extend_lax_monoidal`.
    """
    from .montheorem import extend_lax_monoidal, theorem_report

    rep = validate_graded_monoid(gm)
    if not rep.ok:
        raise LawError(str(rep), rep)
    direct = regrade_direct(gm, h)
    mk = extend_lax_monoidal(graded_to_lax_functor(gm), hom_to_strong_functor(h), **kwargs)
    engine = lax_functor_to_graded(mk.L_lax)
    offsets, sizes = fiber_offsets(gm, h)
    tables: list[list[int]] = [[-1] * s for s in sizes]
    lam = mk.kan.lam.components
    for m in range(gm.grading.order):
        x = h.table[m]
        for a in range(gm.sizes[m]):
            tables[x][offsets[m] + a] = lam[m](a)
    if tuple(engine.sizes) != sizes:
        raise EngineError(f"engine fibre sizes {engine.sizes} differ from direct {sizes}")
    bij = tuple(SetMap(sizes[x], sizes[x], tuple(t)) for x, t in enumerate(tables))
    iso = check_graded_iso(direct, engine, bij)
    return RegradeReport(direct, mk, bij, iso, theorem_report(mk))


def regrade_composite_maps(gm: GradedMonoid, h1: MonoidHom, h2: MonoidHom) -> tuple[SetMap, ...]:
    """Canonical bijections ``regrade(regrade(gm, h1), h2) -> regrade(gm, h1;h2)``."""
    once = regrade_direct(gm, h1)
    off1, _ = fiber_offsets(gm, h1)
    off2, _ = fiber_offsets(once, h2)
    h12 = h1.then(h2)
    off12, sizes12 = fiber_offsets(gm, h12)
    twice_off, twice_sizes = fiber_offsets(once, h2)
    tables = [[-1] * s for s in twice_sizes]
    for m in range(gm.grading.order):
        x = h1.table[m]
        z = h2.table[x]
        for a in range(gm.sizes[m]):
            tables[z][off2[x] + off1[m] + a] = off12[m] + a
    return tuple(SetMap(twice_sizes[z], sizes12[z], tuple(t)) for z, t in enumerate(tables))


# -- graded rings ---------------------------------------------------------


@dataclass(frozen=True)
class AbelianGroup:
    """``Z/d1 x ... x Z/dk``; elements are residue tuples, indexed in
    lexicographic order with the first coordinate most significant."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if any(d < 1 for d in self.orders):
            raise StructureError("cyclic orders must be positive")

    @property
    def size(self) -> int:
        return prod(self.orders)

    def element(self, i: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.orders):
            i, r = divmod(i, d)
            out.append(r)
        return tuple(reversed(out))

    def index(self, x: Sequence[int]) -> int:
        i = 0
        for d, r in zip(self.orders, x):
            i = i * d + r % d
        return i

    def add(self, i: int, j: int) -> int:
        x, y = self.element(i), self.element(j)
        return self.index(tuple(a + b for a, b in zip(x, y)))

    def neg(self, i: int) -> int:
        return self.index(tuple(-a for a in self.element(i)))

    zero = 0


@dataclass(frozen=True)
class GradedRing:
    grading: FiniteMonoid
    groups: tuple[AbelianGroup, ...]
    unit: int
    mult: tuple[tuple[tuple[int, ...], ...], ...]
    name: str = field(default="", compare=False)

    def product(self, m: int, a: int, n: int, b: int) -> int:
        return self.mult[m][n][a * self.groups[n].size + b]


def validate_graded_ring(gr: GradedRing) -> ValidationReport:
    M = gr.grading
    k = M.order
    rb = ReportBuilder(f"graded ring {gr.name}".strip())
    rb.extend(validate_monoid(M), "grading:")
    if len(gr.groups) != k or len(gr.mult) != k or any(len(r) != k for r in gr.mult):
        raise StructureError("graded ring tables do not match the grading")
    R = gr.groups
    for m in range(k):
        for n in range(k):
            t = gr.mult[m][n]
            mn = M.mult[m][n]
            if len(t) != R[m].size * R[n].size or any(not 0 <= v < R[mn].size for v in t):
                raise StructureError(f"multiplication table for grades ({m}, {n}) is malformed")
    if not 0 <= gr.unit < R[M.unit].size:
        raise StructureError("unit is not an element of the unit component")
    for m in range(k):
        for n in range(k):
            G = R[M.mult[m][n]]
            for a, a2 in itertools.product(range(R[m].size), repeat=2):
                for b in range(R[n].size):
                    lhs = gr.product(m, R[m].add(a, a2), n, b)
                    if lhs != G.add(gr.product(m, a, n, b), gr.product(m, a2, n, b)):
                        rb.add("left-additivity", (m, a, a2, n, b))
            for a in range(R[m].size):
                for b, b2 in itertools.product(range(R[n].size), repeat=2):
                    lhs = gr.product(m, a, n, R[n].add(b, b2))
                    if lhs != G.add(gr.product(m, a, n, b), gr.product(m, a, n, b2)):
                        rb.add("right-additivity", (m, a, n, b, b2))
    u = M.unit
    for n in range(k):
        for b in range(R[n].size):
            if gr.product(u, gr.unit, n, b) != b:
                rb.add("left-unit", (n, b))
            if gr.product(n, b, u, gr.unit) != b:
                rb.add("right-unit", (n, b))
    for m, n, p in itertools.product(range(k), repeat=3):
        mn, np_ = M.mult[m][n], M.mult[n][p]
        for a in range(R[m].size):
            for b in range(R[n].size):
                ab = gr.product(m, a, n, b)
                for c in range(R[p].size):
                    if gr.product(mn, ab, p, c) != gr.product(m, a, np_, gr.product(n, b, p, c)):
                        rb.add("associativity", (m, a, n, b, p, c))
    return rb.build()


@dataclass(frozen=True)
class FiniteRing:
    """A ring on ``0..size-1`` given by addition and multiplication tables."""

    size: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int
    one: int
    elements: tuple = field(default=(), compare=False)


def validate_ring(r: FiniteRing) -> ValidationReport:
    """Exhaustive check of every ring axiom."""
    rb = ReportBuilder("ring")
    n, A, P = r.size, r.add, r.mul
    for x in range(n):
        if A[x][r.zero] != x or A[r.zero][x] != x:
            rb.add("additive-identity", (x,))
        if not any(A[x][y] == r.zero for y in range(n)):
            rb.add("additive-inverse", (x,))
        if P[x][r.one] != x or P[r.one][x] != x:
            rb.add("multiplicative-identity", (x,))
        for y in range(n):
            if A[x][y] != A[y][x]:
                rb.add("additive-commutativity", (x, y))
    for x, y, z in itertools.product(range(n), repeat=3):
        if A[A[x][y]][z] != A[x][A[y][z]]:
            rb.add("additive-associativity", (x, y, z))
        if P[P[x][y]][z] != P[x][P[y][z]]:
            rb.add("multiplicative-associativity", (x, y, z))
        if P[x][A[y][z]] != A[P[x][y]][P[x][z]]:
            rb.add("left-distributivity", (x, y, z))
        if P[A[x][y]][z] != A[P[x][z]][P[y][z]]:
            rb.add("right-distributivity", (x, y, z))
    return rb.build()


@dataclass(frozen=True)
class CollapsedRing:
    ring: FiniteRing
    injections: tuple[tuple[int, ...], ...]

    def inject(self, m: int, a: int) -> int:
        return self.injections[m][a]


def collapse_graded_ring(gr: GradedRing, max_size: int = MAX_RING_SIZE) -> CollapsedRing:
    """The direct sum of the components with the biadditively extended product."""
    rep = validate_graded_ring(gr)
    if not rep.ok:
        raise LawError(str(rep), rep)
    M, R = gr.grading, gr.groups
    k = M.order
    sizes = [g.size for g in R]
    n = prod(sizes)
    if n > max_size:
        raise SizeGuardError(f"direct sum has {n} elements, cap is {max_size}")
    carrier = list(itertools.product(*(range(s) for s in sizes)))
    index = {x: i for i, x in enumerate(carrier)}

    def add(x, y):
        return tuple(R[m].add(a, b) for m, (a, b) in enumerate(zip(x, y)))

    def mul(x, y):
        acc = [0] * k
        for m in range(k):
            for q in range(k):
                mq = M.mult[m][q]
                acc[mq] = R[mq].add(acc[mq], gr.product(m, x[m], q, y[q]))
        return tuple(acc)

    add_t = tuple(tuple(index[add(x, y)] for y in carrier) for x in carrier)
    mul_t = tuple(tuple(index[mul(x, y)] for y in carrier) for x in carrier)
    one = [0] * k
    one[M.unit] = gr.unit
    injections = []
    for m in range(k):
        row = []
        for a in range(sizes[m]):
            x = [0] * k
            x[m] = a
            row.append(index[tuple(x)])
        injections.append(tuple(row))
    elements = tuple(tuple(R[m].element(a) for m, a in enumerate(x)) for x in carrier)
    ring = FiniteRing(n, add_t, mul_t, index[(0,) * k], index[tuple(one)], elements)
    return CollapsedRing(ring, tuple(injections))


def check_injections(gr: GradedRing, cr: CollapsedRing) -> ValidationReport:
    """Each component embeds additively and ``i(a) * i(b) = i(a b)``."""
    rb = ReportBuilder("component injections")
    M, R, P, A = gr.grading, gr.groups, cr.ring.mul, cr.ring.add
    for m in range(M.order):
        inj = cr.injections[m]
        if len(set(inj)) != len(inj):
            rb.add("not-injective", (m,))
        for a in range(R[m].size):
            for a2 in range(R[m].size):
                if A[inj[a]][inj[a2]] != inj[R[m].add(a, a2)]:
                    rb.add("additive", (m, a, a2))
        for n in range(M.order):
            for a in range(R[m].size):
                for b in range(R[n].size):
                    mn = M.mult[m][n]
                    if P[inj[a]][cr.injections[n][b]] != cr.injections[mn][gr.product(m, a, n, b)]:
                        rb.add("multiplicative", (m, a, n, b))
    return rb.build()


def group_algebra_f2(m: FiniteMonoid) -> GradedRing:
    """The monoid algebra of ``m`` over the two-element field, graded by ``m``."""
    f2 = AbelianGroup((2,))
    k = m.order
    mult = tuple(tuple((0, 0, 0, 1) for _ in range(k)) for _ in range(k))
    return GradedRing(m, (f2,) * k, 1, mult, name=f"F2[{m.label()}]")
