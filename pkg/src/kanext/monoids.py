"""Finite monoids as multiplication tables, plus a small catalogue."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterator, Sequence

from .errors import LawError, ReportBuilder, StructureError, ValidationReport


@dataclass(frozen=True)
class FiniteMonoid:
    """Elements ``0..n-1`` with ``mult[a][b] = a*b`` and a two-sided unit."""

    elements: tuple[Hashable, ...]
    unit: int
    mult: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.elements)
        if n == 0:
            raise StructureError("a monoid needs at least one element")
        if not 0 <= self.unit < n:
            raise StructureError(f"unit index {self.unit} out of range")
        if len(self.mult) != n or any(len(row) != n for row in self.mult):
            raise StructureError(f"multiplication table must be {n}x{n}")
        for row in self.mult:
            for v in row:
                if not (isinstance(v, int) and 0 <= v < n):
                    raise StructureError(f"product {v!r} out of range")

    def __len__(self) -> int:
        return len(self.elements)

    def __call__(self, a: int, b: int) -> int:
        return self.mult[a][b]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def is_commutative(self) -> bool:
        n = self.order
        return all(self.mult[a][b] == self.mult[b][a] for a in range(n) for b in range(n))

    def label(self) -> str:
        return self.name or f"M{self.order}"


def validate_monoid(m: FiniteMonoid) -> ValidationReport:
    rb = ReportBuilder(f"monoid {m.label()}")
    n = m.order
    for a in range(n):
        if m.mult[m.unit][a] != a:
            rb.add("left-unit", (a,))
        if m.mult[a][m.unit] != a:
            rb.add("right-unit", (a,))
    for a, b, c in itertools.product(range(n), repeat=3):
        if m.mult[m.mult[a][b]][c] != m.mult[a][m.mult[b][c]]:
            rb.add("associativity", (a, b, c))
    return rb.build()


def cyclic(n: int) -> FiniteMonoid:
    return FiniteMonoid(
        tuple(range(n)), 0,
        tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
        name="trivial" if n == 1 else f"Z{n}",
    )


def trivial() -> FiniteMonoid:
    return cyclic(1)


def klein() -> FiniteMonoid:
    # Z2 x Z2 with (a, b) encoded as 2a + b
    els = ((0, 0), (0, 1), (1, 0), (1, 1))
    mult = tuple(
        tuple(2 * ((x[0] + y[0]) % 2) + (x[1] + y[1]) % 2 for y in els) for x in els
    )
    return FiniteMonoid(els, 0, mult, name="Z2xZ2")


def idempotent2() -> FiniteMonoid:
    """``{1, e}`` with ``e*e = e``."""
    return FiniteMonoid(("1", "e"), 0, ((0, 1), (1, 1)), name="idem2")


def product_monoid(a: FiniteMonoid, b: FiniteMonoid) -> FiniteMonoid:
    nb = b.order
    els = tuple((x, y) for x in a.elements for y in b.elements)
    mult = tuple(
        tuple(
            a.mult[i // nb][j // nb] * nb + b.mult[i % nb][j % nb]
            for j in range(len(els))
        )
        for i in range(len(els))
    )
    return FiniteMonoid(els, a.unit * nb + b.unit, mult, name=f"{a.label()}x{b.label()}")


def catalogue() -> dict[str, FiniteMonoid]:
    """The curated monoids used by the corpus, keyed by name."""
    ms = [trivial(), cyclic(2), cyclic(3), cyclic(4), klein(), idempotent2()]
    return {m.name: m for m in ms}


def monoid_from_name(name: str) -> FiniteMonoid:
    cat = catalogue()
    if name not in cat:
        raise KeyError(name)
    return cat[name]


def all_monoids(order: int) -> list[FiniteMonoid]:
    """Every labelled monoid structure on ``0..order-1`` with unit 0."""
    if order == 1:
        return [trivial()]
    free = [(a, b) for a in range(1, order) for b in range(1, order)]
    out = []
    for values in itertools.product(range(order), repeat=len(free)):
        table = [[0] * order for _ in range(order)]
        for a in range(order):
            table[0][a] = a
            table[a][0] = a
        for (a, b), v in zip(free, values):
            table[a][b] = v
        m = FiniteMonoid(tuple(range(order)), 0, tuple(map(tuple, table)),
                         name=f"M{order}_{len(out)}")
        if validate_monoid(m).ok:
            out.append(m)
    return out


@dataclass(frozen=True)
class MonoidHom:
    source: FiniteMonoid
    target: FiniteMonoid
    table: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.table) != self.source.order:
            raise StructureError("homomorphism table has wrong length")
        if any(not 0 <= v < self.target.order for v in self.table):
            raise StructureError("homomorphism value out of range")

    def __call__(self, a: int) -> int:
        return self.table[a]

    def then(self, other: MonoidHom) -> MonoidHom:
        if other.source != self.target:
            raise StructureError("cannot compose homomorphisms with mismatched ends")
        return MonoidHom(self.source, other.target,
                         tuple(other.table[v] for v in self.table))

    def label(self) -> str:
        if self.name:
            return self.name
        return f"{self.source.label()}->{self.target.label()}:{''.join(map(str, self.table))}"


def validate_hom(h: MonoidHom) -> ValidationReport:
    rb = ReportBuilder(f"homomorphism {h.label()}")
    s, t = h.source, h.target
    if h.table[s.unit] != t.unit:
        rb.add("unit", (s.unit,), f"sends unit to {h.table[s.unit]}")
    for a in range(s.order):
        for b in range(s.order):
            if h.table[s.mult[a][b]] != t.mult[h.table[a]][h.table[b]]:
                rb.add("multiplicativity", (a, b))
    return rb.build()


def homomorphisms(source: FiniteMonoid, target: FiniteMonoid) -> Iterator[MonoidHom]:
    """All monoid homomorphisms, by brute force over ``|target|**|source|`` maps."""
    for table in itertools.product(range(target.order), repeat=source.order):
        h = MonoidHom(source, target, table)
        if validate_hom(h).ok:
            yield h


def identity_hom(m: FiniteMonoid) -> MonoidHom:
    return MonoidHom(m, m, tuple(range(m.order)))


def require_monoid(m: FiniteMonoid) -> None:
    validate_monoid(m).raise_if_failed(LawError)


def monoid_from_table(table: Sequence[Sequence[int]], unit: int = 0,
                      elements: Sequence[Hashable] | None = None,
                      name: str = "") -> FiniteMonoid:
    n = len(table)
    els = tuple(elements) if elements is not None else tuple(range(n))
    return FiniteMonoid(els, unit, tuple(tuple(r) for r in table), name=name)
