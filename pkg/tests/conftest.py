import itertools
import random

import pytest

from kanext.fincat import (FinCategory, FunctorData, NatTransData, from_poset,
                           validate_functor, validate_nat_trans)
from kanext.graded import GradedMonoid
from kanext.monoids import FiniteMonoid, catalogue
from kanext.monoidal import (LaxMonoidalFunctor, MonoidalNatTrans, compose_lax,
                             validate_lax_monoidal, validate_monoidal_nat_trans)
from kanext.setskel import SETSKEL, SetMap, identity


def monoid_category(m: FiniteMonoid) -> FinCategory:
    """One-object category whose endomorphisms compose like ``m``."""
    return FinCategory.make(["*"], [(0, 0)] * m.order, [m.unit],
                            lambda f, g: m.mult[f][g], name=f"B{m.label()}")


def brute_category_ok(objects, src, tgt, identity, compose) -> bool:
    """Independent law oracle over an explicit composite function."""
    n = len(src)
    if any(src[identity[a]] != a or tgt[identity[a]] != a for a in range(len(objects))):
        return False
    pairs = [(f, g) for f in range(n) for g in range(n) if tgt[f] == src[g]]
    for f, g in pairs:
        h = compose(f, g)
        if src[h] != src[f] or tgt[h] != tgt[g]:
            return False
    for f in range(n):
        if compose(identity[src[f]], f) != f or compose(f, identity[tgt[f]]) != f:
            return False
    for f, g in pairs:
        for h in range(n):
            if tgt[g] == src[h] and compose(compose(f, g), h) != compose(f, compose(g, h)):
                return False
    return True


def set_functor(cat, sizes, tables):
    return FunctorData(cat, SETSKEL, tuple(sizes),
                       tuple(SetMap(sizes[cat.src[m]], sizes[cat.tgt[m]], tuple(t))
                             for m, t in enumerate(tables)))


def all_set_functors(cat, bound):
    """Every functor ``cat -> FinSet`` with sets of size at most ``bound``."""
    for sizes in itertools.product(range(bound + 1), repeat=cat.n_objects):
        choices = []
        for m in range(cat.n_morphisms):
            a, b = cat.src[m], cat.tgt[m]
            if cat.identity[a] == m:
                choices.append([identity(sizes[a]).table])
            else:
                choices.append(list(itertools.product(range(sizes[b]), repeat=sizes[a])))
        for tables in itertools.product(*choices):
            f = set_functor(cat, sizes, tables)
            if validate_functor(f).ok:
                yield f


def all_nat_trans(f, g):
    per = [list(itertools.product(range(g.object_map[a]), repeat=f.object_map[a]))
           for a in range(f.source.n_objects)]
    for comps in itertools.product(*per):
        t = NatTransData(f, g, tuple(SetMap(f.object_map[a], g.object_map[a], c)
                                     for a, c in enumerate(comps)))
        if validate_nat_trans(t).ok:
            yield t


def brute_uniqueness(mk):
    """Count (eta, mu) on L making lambda monoidal, by plain enumeration."""
    L, g = mk.kan.L, mk.G
    cp = g.target
    n = cp.base.n_objects
    T = cp.obj_table
    Lo = L.object_map
    cells = [(x, y) for x in range(n) for y in range(n)]
    spaces = [list(itertools.product(range(Lo[T[x][y]]), repeat=Lo[x] * Lo[y]))
              for x, y in cells]
    count = 0
    for e in range(Lo[cp.unit]):
        for tables in itertools.product(*spaces):
            mu = [[None] * n for _ in range(n)]
            for (x, y), t in zip(cells, tables):
                mu[x][y] = SetMap(Lo[x] * Lo[y], Lo[T[x][y]], t)
            cand = LaxMonoidalFunctor(cp, SETSKEL, L, SetMap(1, Lo[cp.unit], (e,)),
                                      tuple(map(tuple, mu)))
            if cp.base.n_objects > 1 and not cp.base.is_discrete:
                # mu must be natural for a lax structure
                rep = validate_lax_monoidal(cand)
                if "mu-naturality" in rep.laws():
                    continue
            lam = MonoidalNatTrans(mk.kan.lam, mk.F, compose_lax(g, cand))
            if validate_monoidal_nat_trans(lam).ok:
                count += 1
    return count


def random_poset(rng: random.Random, n: int) -> FinCategory:
    leq = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.4]
    return from_poset(n, leq)


def z2_parity_graded() -> GradedMonoid:
    """Components {e} and {x} over Z2 with x.x = e."""
    return GradedMonoid.from_tables(catalogue()["Z2"], [1, 1], 0,
                                    [[[0], [0]], [[0], [0]]], name="e|x")


def z2_three_element() -> GradedMonoid:
    """A_0 = {e, a} with a.a = a, A_1 = {x}; a.x = x.a = x and x.x = a."""
    return GradedMonoid.from_tables(catalogue()["Z2"], [2, 1], 0,
                                    [[[0, 1, 1, 1], [0, 0]], [[0, 0], [1]]], name="ea|x")


def z2_broken_odd() -> GradedMonoid:
    """A_0 = {e}, A_1 = {b, c} with all odd products e: not associative,
    since (b.b).c = c but b.(b.c) = b."""
    return GradedMonoid.from_tables(catalogue()["Z2"], [1, 2], 0,
                                    [[[0], [0, 1]], [[0, 1], [0, 0, 0, 0]]], name="e|bc")


def ungraded(m: FiniteMonoid) -> GradedMonoid:
    return GradedMonoid.from_tables(catalogue()["trivial"], [m.order], m.unit,
                                    [[[m.mult[a][b] for a in range(m.order)
                                       for b in range(m.order)]]], name=m.label())


@pytest.fixture
def rng():
    return random.Random(1234)


def all_tables(n: int, k: int):
    return itertools.product(range(k), repeat=n)
