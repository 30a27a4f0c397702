"""Skeletal finite sets ``n = {0, ..., n-1}`` and their colimits.

The cartesian product is made strictly associative and unital by pairing
indices lexicographically: ``(i, j)`` in ``n x m`` is the integer ``i*m + j``.
Under this encoding ``(a x b) x c`` and ``a x (b x c)`` are the same set and
``n x 1 = n = 1 x n``, so no associators or unitors are ever needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import ReportBuilder, SizeGuardError, StructureError, ValidationReport

MAX_SET_SIZE = 10**6

SetObj = int


@dataclass(frozen=True)
class SetMap:
    dom: int
    cod: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.dom < 0 or self.cod < 0:
            raise StructureError(f"negative set size in map {self.dom}->{self.cod}")
        if len(self.table) != self.dom:
            raise StructureError(
                f"map table has length {len(self.table)}, expected {self.dom}")
        for v in self.table:
            if not 0 <= v < self.cod:
                raise StructureError(f"map value {v} outside codomain {self.cod}")

    def __call__(self, i: int) -> int:
        return self.table[i]

    def then(self, other: SetMap) -> SetMap:
        """``other`` after ``self``."""
        if self.cod != other.dom:
            raise StructureError(f"cannot compose {self.dom}->{self.cod} with "
                                 f"{other.dom}->{other.cod}")
        t = other.table
        return SetMap(self.dom, other.cod, tuple(t[v] for v in self.table))

    def image(self) -> set[int]:
        return set(self.table)

    def __repr__(self) -> str:
        return f"SetMap({self.dom}->{self.cod}, {list(self.table)})"


def identity(n: int) -> SetMap:
    return SetMap(n, n, tuple(range(n)))


def constant(dom: int, cod: int, value: int) -> SetMap:
    return SetMap(dom, cod, (value,) * dom)


def _guard(n: int, limit: int | None = None) -> int:
    limit = MAX_SET_SIZE if limit is None else limit
    if n > limit:
        raise SizeGuardError(f"set of size {n} exceeds the cap of {limit}")
    return n


def tensor(x: Union[int, SetMap], y: Union[int, SetMap]) -> Union[int, SetMap]:
    """Cartesian product of two objects or two maps."""
    if isinstance(x, SetMap) and isinstance(y, SetMap):
        m, m2 = y.dom, y.cod
        yt = y.table
        table = tuple(fx * m2 + gy for fx in x.table for gy in yt)
        return SetMap(_guard(x.dom * m), x.cod * m2, table)
    if isinstance(x, SetMap) or isinstance(y, SetMap):
        raise StructureError("tensor needs two objects or two maps")
    return _guard(x * y)


def tensor_all(items: Sequence) -> Union[int, SetMap]:
    if not items:
        return 1
    out = items[0]
    for it in items[1:]:
        out = tensor(out, it)
    return out


class SetSkel:
    """The (infinite) skeletal category of finite sets, as a strict monoidal
    category under cartesian product. Use the module-level ``SETSKEL``."""

    unit = 1

    def __repr__(self) -> str:
        return "SETSKEL"

    @property
    def base(self) -> SetSkel:
        return self

    def is_object(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and x >= 0

    def is_morphism(self, f) -> bool:
        return isinstance(f, SetMap)

    def source(self, f: SetMap) -> int:
        return f.dom

    def target(self, f: SetMap) -> int:
        return f.cod

    def id(self, n: int) -> SetMap:
        return identity(n)

    def compose(self, f: SetMap, g: SetMap) -> SetMap:
        return f.then(g)

    def tensor_obj(self, a: int, b: int) -> int:
        return tensor(a, b)

    def tensor_mor(self, f: SetMap, g: SetMap) -> SetMap:
        return tensor(f, g)

    def hom_size(self, a: int, b: int) -> int:
        return b**a

    def homs(self, a: int, b: int) -> Iterable[SetMap]:
        for t in itertools.product(range(b), repeat=a):
            yield SetMap(a, b, t)


SETSKEL = SetSkel()


def inverse(m: SetMap) -> SetMap | None:
    """The inverse map if ``m`` is a bijection, else ``None``."""
    if m.dom != m.cod:
        return None
    inv = [-1] * m.cod
    for i, v in enumerate(m.table):
        if inv[v] != -1:
            return None
        inv[v] = i
    return SetMap(m.cod, m.dom, tuple(inv))


def is_bijective(m: SetMap) -> tuple[bool, SetMap | None]:
    inv = inverse(m)
    return inv is not None, inv


def symmetry(a: int, b: int) -> SetMap:
    """The swap ``a x b -> b x a``."""
    return SetMap(a * b, a * b, tuple(j * a + i for i in range(a) for j in range(b)))


class UnionFind:
    """Disjoint sets over ``0..n-1``; every class is rooted at its least element."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx < ry:
            self.parent[ry] = rx
        elif ry < rx:
            self.parent[rx] = ry


@dataclass(frozen=True)
class ColimitWitness:
    """Apex of a colimit, one injection per diagram object, and for each apex
    element the least ``(object, element)`` pair mapping onto it."""

    apex: int
    injections: tuple[SetMap, ...]
    representative: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Arrow:
    """A morphism of a diagram of finite sets: ``map`` goes from the set at
    object ``src`` to the set at object ``tgt``."""

    src: int
    tgt: int
    map: SetMap


def _offsets(sizes: Sequence[int]) -> list[int]:
    out, acc = [], 0
    for s in sizes:
        out.append(acc)
        acc += s
    return out


def colimit(sizes: Sequence[int], arrows: Iterable[Arrow],
            max_size: int | None = None) -> ColimitWitness:
    """Colimit of a diagram given as object sizes and arrows.

    The disjoint union of all sets is glued along ``x ~ f(x)`` for every arrow.
    Apex elements are numbered by the least coproduct index in their class.
    """
    sizes = list(sizes)
    offsets = _offsets(sizes)
    total = _guard(sum(sizes), max_size)
    uf = UnionFind(total)
    for a in arrows:
        if a.map.dom != sizes[a.src] or a.map.cod != sizes[a.tgt]:
            raise StructureError(f"arrow {a.src}->{a.tgt} has mismatched map")
        os, ot = offsets[a.src], offsets[a.tgt]
        for x, y in enumerate(a.map.table):
            uf.union(os + x, ot + y)
    owner = []
    for obj, s in enumerate(sizes):
        owner.extend((obj, e) for e in range(s))
    class_of: dict[int, int] = {}
    reps: list[tuple[int, int]] = []
    flat = [0] * total
    for i in range(total):
        r = uf.find(i)
        if r not in class_of:
            class_of[r] = len(reps)
            reps.append(owner[i])
        flat[i] = class_of[r]
    apex = len(reps)
    injections = tuple(
        SetMap(s, apex, tuple(flat[offsets[o]:offsets[o] + s]))
        for o, s in enumerate(sizes)
    )
    return ColimitWitness(apex, injections, tuple(reps))


def coproduct(parts: Sequence[int]) -> ColimitWitness:
    return colimit(parts, ())


def coequalizer(f: SetMap, g: SetMap) -> ColimitWitness:
    """Quotient of the common codomain; diagram objects are 0 = domain, 1 = codomain."""
    if f.dom != g.dom or f.cod != g.cod:
        raise StructureError("coequalizer needs a parallel pair")
    return colimit((f.dom, f.cod), (Arrow(0, 1, f), Arrow(0, 1, g)))


def diagram_arrows(diagram) -> list[Arrow]:
    """Non-identity arrows of a set-valued functor, in morphism order."""
    cat = diagram.source
    out = []
    for m in range(cat.n_morphisms):
        if cat.identity[cat.src[m]] == m:
            continue
        out.append(Arrow(cat.src[m], cat.tgt[m], diagram.morphism_map[m]))
    return out


def colimit_of_diagram(diagram, max_size: int | None = None) -> ColimitWitness:
    """Colimit of a functor from a finite category into ``SETSKEL``."""
    if diagram.target is not SETSKEL:
        raise StructureError("colimit_of_diagram needs a set-valued functor")
    return colimit(diagram.object_map, diagram_arrows(diagram), max_size)


def partition_oracle(sizes: Sequence[int], arrows: Sequence[Arrow]) -> list[int]:
    """Class label (least member) of every coproduct element under the
    equivalence generated by the arrows. Plain fixpoint label propagation,
    kept deliberately unrelated to :class:`UnionFind`."""
    offsets = _offsets(sizes)
    label = list(range(sum(sizes)))
    edges = [
        (offsets[a.src] + x, offsets[a.tgt] + y)
        for a in arrows for x, y in enumerate(a.map.table)
    ]
    changed = True
    while changed:
        changed = False
        for u, v in edges:
            lo = min(label[u], label[v])
            if label[u] != lo or label[v] != lo:
                label[u] = label[v] = lo
                changed = True
    return label


def verify_colimit(sizes: Sequence[int], arrows: Sequence[Arrow],
                   witness: ColimitWitness, bound: int = 0,
                   max_enumeration: int = 20000) -> ValidationReport:
    """Check that ``witness`` is a colimit of the diagram.

    Always checks the cocone equations, the representative section, and that
    the injections identify exactly the pairs the oracle partition glues.
    With ``bound > 0`` it also enumerates every cocone into each target of
    size at most ``bound`` and counts mediating maps (expecting exactly one),
    skipping targets whose enumeration exceeds ``max_enumeration``.
    """
    sizes = list(sizes)
    arrows = list(arrows)
    rb = ReportBuilder("colimit witness")
    inj = witness.injections
    if len(inj) != len(sizes):
        rb.add("injection-count", (len(inj), len(sizes)))
        return rb.build()
    for o, (m, s) in enumerate(zip(inj, sizes)):
        if m.dom != s or m.cod != witness.apex:
            rb.add("injection-shape", (o,))
    if not rb._items:
        for k, a in enumerate(arrows):
            if a.map.then(inj[a.tgt]) != inj[a.src]:
                rb.add("cocone", (k, a.src, a.tgt))
    if len(witness.representative) != witness.apex:
        rb.add("representative-length", (len(witness.representative),))
    else:
        for p, (o, e) in enumerate(witness.representative):
            if not (0 <= o < len(sizes) and 0 <= e < sizes[o]) or inj[o](e) != p:
                rb.add("representative", (p,))
    if not rb.build().ok:
        return rb.build()

    labels = partition_oracle(sizes, arrows)
    flat = [v for m in inj for v in m.table]
    apex_of_class: dict[int, int] = {}
    class_of_apex: dict[int, int] = {}
    for i, lab in enumerate(labels):
        p = flat[i]
        if apex_of_class.setdefault(lab, p) != p:
            rb.add("not-cocone-on-class", (i,))
        if class_of_apex.setdefault(p, lab) != lab:
            rb.add("over-identified", (p,), "apex element hit by two oracle classes")
    if len(class_of_apex) != witness.apex:
        rb.add("jointly-surjective", (), f"{len(class_of_apex)} of {witness.apex} hit")

    if bound > 0 and rb.build().ok:
        n = len(flat)
        for k in range(1, bound + 1):
            if k**n + k**witness.apex > max_enumeration:
                continue
            for cocone in itertools.product(range(k), repeat=n):
                if any(cocone[i] != cocone[labels[i]] for i in range(n)):
                    continue
                mediating = sum(
                    1 for m in itertools.product(range(k), repeat=witness.apex)
                    if all(m[flat[i]] == cocone[i] for i in range(n))
                )
                if mediating != 1:
                    rb.add("universality", (k, cocone), f"{mediating} mediating maps")
                    break
    return rb.build()


def tensor_diagram(sizes: Sequence[int], arrows: Sequence[Arrow], k: int,
                   side: str = "right") -> tuple[list[int], list[Arrow]]:
    """The diagram ``D x k`` (``side='right'``) or ``k x D``."""
    idk = identity(k)
    new_sizes = [s * k for s in sizes]
    if side == "right":
        new_arrows = [Arrow(a.src, a.tgt, tensor(a.map, idk)) for a in arrows]
    else:
        new_arrows = [Arrow(a.src, a.tgt, tensor(idk, a.map)) for a in arrows]
    return new_sizes, new_arrows


def tensor_witness(w: ColimitWitness, k: int, side: str = "right") -> ColimitWitness:
    """Tensor every injection of ``w`` with ``id_k`` on the given side."""
    idk = identity(k)
    if side == "right":
        injections = tuple(tensor(m, idk) for m in w.injections)
        reps = tuple((o, e * k + j) for (o, e) in w.representative for j in range(k))
    else:
        injections = tuple(tensor(idk, m) for m in w.injections)
        sizes = [m.dom for m in w.injections]
        reps = tuple((o, j * sizes[o] + e)
                     for j in range(k) for (o, e) in w.representative)
    return ColimitWitness(w.apex * k, injections, reps)
