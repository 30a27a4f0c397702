"""Finite categories, functors and natural transformations as explicit tables.

Objects and morphisms are dense integer indices. Composition is stored
diagrammatically: ``compose(f, g)`` is "f then g" (``g . f``) and is defined
exactly when ``target(f) == source(g)``. Internally ``comp[f]`` is a row aligned
with ``out[target(f)]``, the morphisms leaving ``target(f)`` in index order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Mapping, Sequence

from .errors import (
    LawError,
    ReportBuilder,
    SizeGuardError,
    StructureError,
    ValidationReport,
)
from .monoids import FiniteMonoid, validate_monoid
from .setskel import SETSKEL, SetSkel

MAX_COMMA_OBJECTS = 10_000


@dataclass(frozen=True)
class FinCategory:
    objects: tuple[Hashable, ...]
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    identity: tuple[int, ...]
    comp: tuple[tuple[int, ...], ...]
    morphism_labels: tuple[Hashable, ...] = field(default=(), compare=False)
    name: str = field(default="", compare=False)

    @classmethod
    def make(cls, objects: Sequence[Hashable], arrows: Sequence[tuple[int, int]],
             identity: Sequence[int], compose: Callable[[int, int], int],
             labels: Sequence[Hashable] = (), name: str = "") -> FinCategory:
        src = tuple(a for a, _ in arrows)
        tgt = tuple(b for _, b in arrows)
        out: list[list[int]] = [[] for _ in objects]
        for m, s in enumerate(src):
            out[s].append(m)
        comp = tuple(tuple(compose(f, g) for g in out[tgt[f]]) for f in range(len(src)))
        return cls(tuple(objects), src, tgt, tuple(identity), comp,
                   tuple(labels), name)

    @classmethod
    def from_composites(cls, objects: Sequence[Hashable],
                        arrows: Sequence[tuple[int, int]], identity: Sequence[int],
                        composites: Mapping[tuple[int, int], int],
                        labels: Sequence[Hashable] = (), name: str = "") -> FinCategory:
        """Build from an explicit ``{(f, g): f-then-g}`` table.

        Composites with an identity may be omitted; they are filled in.
        """
        ids = set(identity)

        def compose(f, g):
            if (f, g) in composites:
                return composites[(f, g)]
            if f in ids:
                return g
            if g in ids:
                return f
            raise StructureError(f"no composite given for composable pair ({f}, {g})")

        return cls.make(objects, arrows, identity, compose, labels, name)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    @cached_property
    def out(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.objects]
        for m, s in enumerate(self.src):
            if 0 <= s < len(out):
                out[s].append(m)
        return tuple(tuple(o) for o in out)

    @cached_property
    def _pos(self) -> tuple[int, ...]:
        pos = [0] * self.n_morphisms
        for row in self.out:
            for k, m in enumerate(row):
                pos[m] = k
        return tuple(pos)

    @cached_property
    def _homs(self) -> dict[tuple[int, int], tuple[int, ...]]:
        homs: dict[tuple[int, int], list[int]] = {}
        for m in range(self.n_morphisms):
            homs.setdefault((self.src[m], self.tgt[m]), []).append(m)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self._homs.get((a, b), ())

    def source(self, m: int) -> int:
        return self.src[m]

    def target(self, m: int) -> int:
        return self.tgt[m]

    def id(self, a: int) -> int:
        return self.identity[a]

    def compose(self, f: int, g: int) -> int:
        """``f`` then ``g``."""
        if self.tgt[f] != self.src[g]:
            raise StructureError(f"morphisms {f} and {g} are not composable")
        return self.comp[f][self._pos[g]]

    def compose_path(self, *ms: int) -> int:
        out = ms[0]
        for m in ms[1:]:
            out = self.compose(out, m)
        return out

    def is_object(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.n_objects

    def is_morphism(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.n_morphisms

    @cached_property
    def is_discrete(self) -> bool:
        return self.n_morphisms == self.n_objects and set(self.identity) == set(
            range(self.n_morphisms))

    def label(self) -> str:
        return self.name or f"Cat({self.n_objects} obj, {self.n_morphisms} mor)"

    def object_label(self, a: int) -> Hashable:
        return self.objects[a]

    def morphism_label(self, m: int) -> Hashable:
        return self.morphism_labels[m] if self.morphism_labels else m


def _check_structure(cat: FinCategory) -> None:
    n, nm = cat.n_objects, cat.n_morphisms
    if len(cat.tgt) != nm:
        raise StructureError("source and target tables differ in length")
    if len(cat.identity) != n:
        raise StructureError(f"identity table has {len(cat.identity)} entries, expected {n}")
    if len(cat.comp) != nm:
        raise StructureError(f"composition table has {len(cat.comp)} rows, expected {nm}")
    for m in range(nm):
        if not (0 <= cat.src[m] < n and 0 <= cat.tgt[m] < n):
            raise StructureError(f"morphism {m} has an endpoint outside 0..{n - 1}")
    for a, i in enumerate(cat.identity):
        if not 0 <= i < nm:
            raise StructureError(f"identity of object {a} is not a morphism index")
    for f in range(nm):
        row = cat.comp[f]
        if len(row) != len(cat.out[cat.tgt[f]]):
            raise StructureError(f"composition row of morphism {f} has wrong length")
        for h in row:
            if not 0 <= h < nm:
                raise StructureError(f"composite {h} in row {f} is not a morphism index")


def validate_category(cat: FinCategory) -> ValidationReport:
    """Every violated identity or associativity instance.

    Raises :class:`StructureError` for malformed tables.
    """
    _check_structure(cat)
    rb = ReportBuilder(f"category {cat.label()}")
    for a, i in enumerate(cat.identity):
        if cat.src[i] != a or cat.tgt[i] != a:
            rb.add("identity-endpoints", (a,))
    for f in range(cat.n_morphisms):
        for g in cat.out[cat.tgt[f]]:
            h = cat.compose(f, g)
            if cat.src[h] != cat.src[f] or cat.tgt[h] != cat.tgt[g]:
                rb.add("composite-endpoints", (f, g))
    if not rb.build().ok:
        return rb.build()
    for f in range(cat.n_morphisms):
        a, b = cat.src[f], cat.tgt[f]
        if cat.compose(cat.identity[a], f) != f:
            rb.add("left-identity", (f,))
        if cat.compose(f, cat.identity[b]) != f:
            rb.add("right-identity", (f,))
    for f in range(cat.n_morphisms):
        for g in cat.out[cat.tgt[f]]:
            fg = cat.compose(f, g)
            for h in cat.out[cat.tgt[g]]:
                if cat.compose(fg, h) != cat.compose(f, cat.compose(g, h)):
                    rb.add("associativity", (f, g, h))
    return rb.build()


def discrete(objects: int | Sequence[Hashable], name: str = "") -> FinCategory:
    labels = tuple(range(objects)) if isinstance(objects, int) else tuple(objects)
    n = len(labels)
    return FinCategory.make(labels, [(a, a) for a in range(n)], range(n),
                            lambda f, g: f, name=name)


def terminal() -> FinCategory:
    return discrete(("*",), name="1")


def discrete_from_monoid(m: FiniteMonoid) -> FinCategory:
    """The elements of ``m`` as a discrete category (identities only).

    The monoid multiplication becomes a strict tensor via
    :func:`kanext.monoidal.discrete_monoidal`.
    """
    validate_monoid(m).raise_if_failed(LawError)
    return discrete(m.elements, name=m.label())


def from_poset(n: int, leq: Sequence[tuple[int, int]], labels: Sequence[Hashable] = (),
               name: str = "") -> FinCategory:
    """Thin category on ``0..n-1`` generated by the relation ``leq``."""
    rel = {(a, a) for a in range(n)} | set(leq)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    arrows = sorted(rel)
    if any((b, a) in rel for a, b in arrows if a != b):
        raise StructureError("relation is not antisymmetric")
    index = {p: i for i, p in enumerate(arrows)}
    return FinCategory.make(
        tuple(labels) if labels else tuple(range(n)), arrows,
        [index[(a, a)] for a in range(n)],
        lambda f, g: index[(arrows[f][0], arrows[g][1])],
        labels=[f"{a}<={b}" for a, b in arrows], name=name,
    )


def product_category(a: FinCategory, b: FinCategory) -> FinCategory:
    """Objects ``(x, y)`` at index ``x*|ob B| + y``; morphisms likewise."""
    nb, mb = b.n_objects, b.n_morphisms
    objects = tuple((x, y) for x in a.objects for y in b.objects)
    src = tuple(a.src[f] * nb + b.src[g] for f in range(a.n_morphisms) for g in range(mb))
    tgt = tuple(a.tgt[f] * nb + b.tgt[g] for f in range(a.n_morphisms) for g in range(mb))
    identity = tuple(a.identity[x] * mb + b.identity[y]
                     for x in range(a.n_objects) for y in range(nb))
    comp = tuple(
        tuple(c1 * mb + c2 for c1 in a.comp[f] for c2 in b.comp[g])
        for f in range(a.n_morphisms) for g in range(mb)
    )
    labels = ()
    if a.morphism_labels or b.morphism_labels:
        labels = tuple((a.morphism_label(f), b.morphism_label(g))
                       for f in range(a.n_morphisms) for g in range(mb))
    name = f"{a.label()}x{b.label()}" if (a.name and b.name) else ""
    return FinCategory(objects, src, tgt, identity, comp, labels, name)


@dataclass(frozen=True)
class FunctorData:
    source: FinCategory
    target: FinCategory | SetSkel
    object_map: tuple
    morphism_map: tuple
    name: str = field(default="", compare=False)

    def obj(self, a: int):
        return self.object_map[a]

    def mor(self, m: int):
        return self.morphism_map[m]


def _target_kind(f: FunctorData) -> str:
    return "set" if f.target is SETSKEL else "cat"


def validate_functor(f: FunctorData) -> ValidationReport:
    """Preservation of endpoints, identities and composition, exhaustively."""
    c, d = f.source, f.target
    if len(f.object_map) != c.n_objects:
        raise StructureError("object map has wrong length")
    if len(f.morphism_map) != c.n_morphisms:
        raise StructureError("morphism map has wrong length")
    for x in f.object_map:
        if not d.is_object(x):
            raise StructureError(f"object image {x!r} is not an object of the target")
    for m in f.morphism_map:
        if not d.is_morphism(m):
            raise StructureError(f"morphism image {m!r} is not a morphism of the target")
    rb = ReportBuilder(f"functor {f.name or ''}".strip())
    for m in range(c.n_morphisms):
        fm = f.morphism_map[m]
        if d.source(fm) != f.object_map[c.src[m]] or d.target(fm) != f.object_map[c.tgt[m]]:
            rb.add("endpoints", (m,))
    if not rb.build().ok:
        return rb.build()
    for a in range(c.n_objects):
        if f.morphism_map[c.identity[a]] != d.id(f.object_map[a]):
            rb.add("identity", (a,))
    for m in range(c.n_morphisms):
        for n in c.out[c.tgt[m]]:
            lhs = f.morphism_map[c.compose(m, n)]
            rhs = d.compose(f.morphism_map[m], f.morphism_map[n])
            if lhs != rhs:
                rb.add("composition", (m, n))
    return rb.build()


def identity_functor(c: FinCategory) -> FunctorData:
    return FunctorData(c, c, tuple(range(c.n_objects)), tuple(range(c.n_morphisms)),
                       name="Id")


def constant_set_functor(c: FinCategory, n: int) -> FunctorData:
    idn = SETSKEL.id(n)
    return FunctorData(c, SETSKEL, (n,) * c.n_objects, (idn,) * c.n_morphisms,
                       name=f"const{n}")


def compose_functors(f: FunctorData, g: FunctorData) -> FunctorData:
    """``g . f``: apply ``f`` first."""
    if f.target is not g.source and f.target != g.source:
        raise StructureError("compose_functors: target of the first is not the "
                             "source of the second")
    return FunctorData(
        f.source, g.target,
        tuple(g.object_map[x] for x in f.object_map),
        tuple(g.morphism_map[m] for m in f.morphism_map),
        name=f"{g.name}.{f.name}" if f.name and g.name else "",
    )


def product_functor(f: FunctorData, g: FunctorData) -> FunctorData:
    """``f x g`` between product categories (finite targets only)."""
    if f.target is SETSKEL or g.target is SETSKEL:
        raise StructureError("product_functor needs finite target categories")
    s = product_category(f.source, g.source)
    t = product_category(f.target, g.target)
    nb, mb = g.target.n_objects, g.target.n_morphisms
    return FunctorData(
        s, t,
        tuple(x * nb + y for x in f.object_map for y in g.object_map),
        tuple(p * mb + q for p in f.morphism_map for q in g.morphism_map),
    )


@dataclass(frozen=True)
class NatTransData:
    source: FunctorData
    target: FunctorData
    components: tuple
    name: str = field(default="", compare=False)

    def __getitem__(self, a: int):
        return self.components[a]


def _same_frame(s: FunctorData, t: FunctorData) -> bool:
    return s.source == t.source and (s.target is t.target or s.target == t.target)


def validate_nat_trans(t: NatTransData) -> ValidationReport:
    if not _same_frame(t.source, t.target):
        raise StructureError("natural transformation between functors with different frames")
    c, d = t.source.source, t.source.target
    F, G = t.source, t.target
    if len(t.components) != c.n_objects:
        raise StructureError("component table has wrong length")
    rb = ReportBuilder(f"natural transformation {t.name}".strip())
    for a in range(c.n_objects):
        k = t.components[a]
        if not d.is_morphism(k) or d.source(k) != F.object_map[a] or d.target(k) != G.object_map[a]:
            rb.add("component-endpoints", (a,))
    if not rb.build().ok:
        return rb.build()
    for m in range(c.n_morphisms):
        a, b = c.src[m], c.tgt[m]
        lhs = d.compose(F.morphism_map[m], t.components[b])
        rhs = d.compose(t.components[a], G.morphism_map[m])
        if lhs != rhs:
            rb.add("naturality", (m,))
    return rb.build()


def identity_nat_trans(f: FunctorData) -> NatTransData:
    d = f.target
    return NatTransData(f, f, tuple(d.id(x) for x in f.object_map), name="id")


def vertical_compose(s: NatTransData, t: NatTransData) -> NatTransData:
    """``t . s`` for ``s: F => G`` and ``t: G => H``."""
    if s.target != t.source:
        raise StructureError("vertical_compose: frames do not match")
    d = s.source.target
    return NatTransData(s.source, t.target,
                        tuple(d.compose(x, y) for x, y in zip(s.components, t.components)))


def whisker(t: NatTransData, pre: FunctorData | None = None,
            post: FunctorData | None = None) -> NatTransData:
    """``post . t . pre``; either side may be omitted."""
    src, tgt, comps = t.source, t.target, t.components
    if pre is not None:
        if pre.target != src.source:
            raise StructureError("whisker: pre-functor does not land in the source category")
        comps = tuple(comps[x] for x in pre.object_map)
        src, tgt = compose_functors(pre, src), compose_functors(pre, tgt)
    if post is not None:
        if post.source != src.target:
            raise StructureError("whisker: post-functor does not start at the target category")
        comps = tuple(post.morphism_map[k] for k in comps)
        src, tgt = compose_functors(src, post), compose_functors(tgt, post)
    return NatTransData(src, tgt, comps)


def product_nat_trans(s: NatTransData, t: NatTransData) -> NatTransData:
    src = product_functor(s.source, t.source)
    tgt = product_functor(s.target, t.target)
    mb = t.source.target.n_morphisms
    return NatTransData(src, tgt, tuple(p * mb + q for p in s.components for q in t.components))


@dataclass(frozen=True)
class CommaCategory:
    """``(G | c')``: objects are pairs ``(c, g: G c -> c')``."""

    category: FinCategory
    projection: FunctorData
    pairs: tuple[tuple[int, int], ...]
    index: Mapping[tuple[int, int], int] = field(compare=False, repr=False)


def comma_category(g: FunctorData, c_prime: int,
                   max_objects: int = MAX_COMMA_OBJECTS) -> CommaCategory:
    c, cp = g.source, g.target
    pairs = [(x, h) for x in range(c.n_objects) for h in cp.hom(g.object_map[x], c_prime)]
    if len(pairs) > max_objects:
        raise SizeGuardError(f"comma category over object {c_prime} has {len(pairs)} "
                             f"objects, cap is {max_objects}")
    index = {p: i for i, p in enumerate(pairs)}
    arrows, under = [], []
    for i, (x, gx) in enumerate(pairs):
        for j, (y, gy) in enumerate(pairs):
            for phi in c.hom(x, y):
                if cp.compose(g.morphism_map[phi], gy) == gx:
                    arrows.append((i, j))
                    under.append(phi)
    key = {(i, j, phi): k for k, ((i, j), phi) in enumerate(zip(arrows, under))}
    identity = [key[(i, i, c.identity[x])] for i, (x, _) in enumerate(pairs)]

    def compose(f, h):
        return key[(arrows[f][0], arrows[h][1], c.compose(under[f], under[h]))]

    cat = FinCategory.make(tuple(pairs), arrows, identity, compose,
                           labels=tuple(under), name=f"G/{c_prime}")
    proj = FunctorData(cat, c, tuple(x for x, _ in pairs), tuple(under), name="proj")
    return CommaCategory(cat, proj, tuple(pairs), index)
