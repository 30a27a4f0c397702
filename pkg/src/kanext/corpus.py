"""Fixture corpus: graded monoids paired with every homomorphism out of their grading."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graded import GradedMonoid, validate_graded_monoid
from .monoids import FiniteMonoid, MonoidHom, all_monoids, catalogue, homomorphisms


@dataclass(frozen=True)
class RegradeFixture:
    name: str
    graded: GradedMonoid
    hom: MonoidHom


def _relabel(gm: GradedMonoid, perms: Sequence[Sequence[int]]) -> tuple:
    """Tables of ``gm`` after renaming element ``a`` of ``A_m`` to ``perms[m][a]``."""
    M = gm.grading
    k = M.order
    inv = [sorted(range(len(p)), key=lambda i: p[i]) for p in perms]
    out = []
    for m in range(k):
        for n in range(k):
            mn = M.mult[m][n]
            sn = gm.sizes[n]
            out.append(tuple(
                perms[mn][gm.product(m, inv[m][x], n, inv[n][y])]
                for x in range(gm.sizes[m]) for y in range(sn)
            ))
    return (perms[M.unit][gm.unit_elem], tuple(out))


def canonical_key(gm: GradedMonoid) -> tuple:
    """Least relabelled form over all per-component permutations."""
    choices = [list(itertools.permutations(range(s))) for s in gm.sizes]
    return min(_relabel(gm, p) for p in itertools.product(*choices))


def enumerate_graded_monoids(M: FiniteMonoid, max_size: int,
                             up_to_iso: bool = True) -> list[GradedMonoid]:
    """All ``M``-graded monoids with every component of size at most ``max_size``.

    The unit element is fixed to 0; with ``up_to_iso`` one representative is
    kept per relabelling class.
    """
    k, u = M.order, M.unit
    found: dict[tuple, GradedMonoid] = {}
    for sizes in itertools.product(range(max_size + 1), repeat=k):
        if sizes[u] == 0:
            continue
        slots = []
        for m in range(k):
            for n in range(k):
                r = sizes[M.mult[m][n]]
                free = [(a, b) for a in range(sizes[m]) for b in range(sizes[n])
                        if not (m == u and a == 0) and not (n == u and b == 0)]
                slots.append((m, n, free, r))
        options = [itertools.product(range(r), repeat=len(free)) for (_, _, free, r) in slots]
        for values in itertools.product(*[list(o) for o in options]):
            tables = [[None] * k for _ in range(k)]
            for (m, n, free, r), vals in zip(slots, values):
                sn = sizes[n]
                t = [0] * (sizes[m] * sn)
                for a in range(sizes[m]):
                    for b in range(sn):
                        if m == u and a == 0:
                            t[a * sn + b] = b
                        elif n == u and b == 0:
                            t[a * sn + b] = a
                for (a, b), v in zip(free, vals):
                    t[a * sn + b] = v
                tables[m][n] = t
            gm = GradedMonoid.from_tables(M, sizes, 0, tables)
            if not validate_graded_monoid(gm).ok:
                continue
            key = canonical_key(gm) + (sizes,) if up_to_iso else (len(found),)
            found.setdefault(key, gm)
    out = []
    for i, gm in enumerate(found.values()):
        out.append(GradedMonoid(gm.grading, gm.sizes, gm.unit_elem, gm.mult,
                                name=f"{M.label()}-all{max_size}-{i}"))
    return out


def submonoids(M: FiniteMonoid) -> list[frozenset[int]]:
    out = []
    for bits in itertools.product((0, 1), repeat=M.order):
        s = {m for m in range(M.order) if bits[m]}
        if M.unit in s and all(M.mult[a][b] in s for a in s for b in s):
            out.append(frozenset(s))
    return out


def lifted(M: FiniteMonoid, P: FiniteMonoid, support: frozenset[int] | None = None,
           zeros: bool = False, name: str = "") -> GradedMonoid:
    """``A_m = P`` on a submonoid ``support`` (empty elsewhere), multiplying in ``P``.

    With ``zeros`` every component also gets an absorbing element ``z_m``
    (index ``|P|`` when ``m`` is in the support, else 0).
    """
    support = frozenset(range(M.order)) if support is None else support
    k, p = M.order, P.order
    base = [p if m in support else 0 for m in range(k)]
    sizes = [b + (1 if zeros else 0) for b in base]
    tables = []
    for m in range(k):
        row = []
        for n in range(k):
            mn = M.mult[m][n]
            t = []
            for a in range(sizes[m]):
                for b in range(sizes[n]):
                    if a < base[m] and b < base[n]:
                        t.append(P.mult[a][b])
                    else:
                        t.append(base[mn])
            row.append(t)
        tables.append(row)
    return GradedMonoid.from_tables(M, sizes, P.unit, tables, name=name)


def structured_graded_monoids(M: FiniteMonoid) -> list[GradedMonoid]:
    """Lifts of the small catalogue monoids over every submonoid of ``M``."""
    cat = catalogue()
    smalls = [cat["trivial"], cat["Z2"], cat["idem2"]]
    out = []
    for si, S in enumerate(submonoids(M)):
        for P in smalls:
            for zeros in (False, True):
                if zeros and P.order > 1:
                    continue
                out.append(lifted(M, P, S, zeros,
                                  name=f"{M.label()}-lift{si}-{P.label()}{'-z' if zeros else ''}"))
    return out


def _random_graded(rng: random.Random, M: FiniteMonoid, max_size: int,
                   pool: Sequence[FiniteMonoid]) -> GradedMonoid:
    """Fibres of a random homomorphism ``N -> M``, optionally with zeros adjoined."""
    for _ in range(200):
        N = rng.choice(pool)
        homs = list(homomorphisms(N, M))
        if not homs:
            continue
        pi = rng.choice(homs)
        fibres = [[x for x in range(N.order) if pi.table[x] == m] for m in range(M.order)]
        zeros = rng.random() < 0.5
        sizes = [len(f) + (1 if zeros else 0) for f in fibres]
        if max(sizes) > max_size:
            continue
        pos = {x: (m, i) for m, f in enumerate(fibres) for i, x in enumerate(f)}
        tables = []
        for m in range(M.order):
            row = []
            for n in range(M.order):
                mn = M.mult[m][n]
                t = []
                for a in range(sizes[m]):
                    for b in range(sizes[n]):
                        if a < len(fibres[m]) and b < len(fibres[n]):
                            t.append(pos[N.mult[fibres[m][a]][fibres[n][b]]][1])
                        else:
                            t.append(len(fibres[mn]))
                row.append(t)
            tables.append(row)
        gm = GradedMonoid.from_tables(M, sizes, pos[N.unit][1], tables)
        if validate_graded_monoid(gm).ok:
            return gm
    raise RuntimeError("could not draw a random graded monoid")


def random_fixtures(count: int = 50, seed: int = 20240817,
                    max_size: int = 3) -> list[RegradeFixture]:
    rng = random.Random(seed)
    cat = list(catalogue().values())
    pool = list(cat) + all_monoids(2) + all_monoids(3)
    gradings = [m for m in pool if m.order <= 3] + [m for m in cat if m.order == 4]
    out = []
    for i in range(count):
        M = rng.choice(gradings)
        gm = _random_graded(rng, M, max_size, pool)
        targets = [T for T in cat if list(homomorphisms(M, T))]
        T = rng.choice(targets)
        h = rng.choice(list(homomorphisms(M, T)))
        name = f"random-{i:02d}"
        out.append(RegradeFixture(name, GradedMonoid(gm.grading, gm.sizes, gm.unit_elem,
                                                     gm.mult, name=name), h))
    return out


def graded_corpus(max_size: int = 2) -> list[GradedMonoid]:
    """Exhaustive graded monoids over the gradings of order at most 2, plus
    structured ones over the larger catalogue monoids."""
    out = []
    for M in catalogue().values():
        if M.order <= 2:
            out.extend(enumerate_graded_monoids(M, max_size))
        else:
            out.extend(structured_graded_monoids(M))
    return out


def regrade_fixtures(graded: Sequence[GradedMonoid] | None = None) -> Iterator[RegradeFixture]:
    """Each graded monoid with every homomorphism into every catalogue monoid."""
    graded = graded_corpus() if graded is None else graded
    targets = list(catalogue().values())
    for gm in graded:
        for T in targets:
            for h in homomorphisms(gm.grading, T):
                yield RegradeFixture(f"{gm.name}|{h.label()}", gm, h)


def full_corpus(random_count: int = 50, seed: int = 20240817) -> list[RegradeFixture]:
    return list(regrade_fixtures()) + random_fixtures(random_count, seed)
