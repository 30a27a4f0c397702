"""Exhaustive enumeration of small lax monoidal functors and transformations."""

from __future__ import annotations

import itertools
from typing import Iterator

from .errors import SizeGuardError
from .fincat import FunctorData, NatTransData, validate_functor
from .monoidal import (
    LaxMonoidalFunctor,
    MonoidalNatTrans,
    MonoidalStructure,
    validate_lax_monoidal,
)
from .setskel import SETSKEL, SetMap

MAX_ENUMERATION = 10**6


class _Budget:
    def __init__(self, cap: int, what: str):
        self.cap, self.used, self.what = cap, 0, what

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.cap:
            raise SizeGuardError(f"enumerating {self.what} exceeded {self.cap} candidates")


def _unit_ok(table, a, b, sa, sb, u, eta) -> bool:
    if b == u:
        if any(table[p * sb + eta] != p for p in range(sa)):
            return False
    if a == u:
        if any(table[eta * sb + q] != q for q in range(sb)):
            return False
    return True


def enumerate_lax_functors(m: MonoidalStructure, bound: int,
                           max_enumeration: int = MAX_ENUMERATION
                           ) -> Iterator[LaxMonoidalFunctor]:
    """Every lax monoidal functor ``m -> SETSKEL`` whose sets have size ``<= bound``."""
    c = m.base
    n, u, T = c.n_objects, m.unit, m.obj_table
    ids = set(c.identity)
    non_id = [f for f in range(c.n_morphisms) if f not in ids]
    budget = _Budget(max_enumeration, "lax functors")
    for sizes in itertools.product(range(bound + 1), repeat=n):
        if sizes[u] == 0:
            continue
        map_choices = [
            [SetMap(sizes[c.src[f]], sizes[c.tgt[f]], t)
             for t in itertools.product(range(sizes[c.tgt[f]]), repeat=sizes[c.src[f]])]
            for f in non_id
        ]
        for maps in itertools.product(*map_choices):
            budget.spend()
            mor = [SETSKEL.id(sizes[c.src[f]]) for f in range(c.n_morphisms)]
            for f, mp in zip(non_id, maps):
                mor[f] = mp
            F = FunctorData(c, SETSKEL, sizes, tuple(mor))
            if not validate_functor(F).ok:
                continue
            for eta in range(sizes[u]):
                comps = []
                for a in range(n):
                    for b in range(n):
                        sa, sb, r = sizes[a], sizes[b], sizes[T[a][b]]
                        budget.spend(r ** (sa * sb))
                        comps.append([
                            SetMap(sa * sb, r, t)
                            for t in itertools.product(range(r), repeat=sa * sb)
                            if _unit_ok(t, a, b, sa, sb, u, eta)
                        ])
                for choice in itertools.product(*comps):
                    budget.spend()
                    mu = tuple(tuple(choice[a * n:(a + 1) * n]) for a in range(n))
                    lax = LaxMonoidalFunctor(m, SETSKEL, F, SetMap(1, sizes[u], (eta,)), mu)
                    if validate_lax_monoidal(lax).ok:
                        yield lax


def enumerate_monoidal_transformations(s: LaxMonoidalFunctor, t: LaxMonoidalFunctor,
                                       max_enumeration: int = MAX_ENUMERATION
                                       ) -> Iterator[MonoidalNatTrans]:
    """Every monoidal natural transformation ``s => t`` between set-valued lax functors.

    Backtracks over objects in index order, checking each naturality, unit and
    multiplication equation as soon as all components it mentions are chosen.
    """
    if s.source != t.source or s.target is not SETSKEL or t.target is not SETSKEL:
        raise ValueError("need two set-valued lax functors on the same source")
    m = s.source
    c = m.base
    n, u, T = c.n_objects, m.unit, m.obj_table
    S_o, T_o = s.functor.object_map, t.functor.object_map
    S_m = [f.table for f in s.functor.morphism_map]
    T_m = [f.table for f in t.functor.morphism_map]
    s_eta, t_eta = s.eta.table[0], t.eta.table[0]
    muS = [[mm.table for mm in row] for row in s.mu]
    muT = [[mm.table for mm in row] for row in t.mu]

    ready: list[list] = [[] for _ in range(n)]
    ids = set(c.identity)
    for f in range(c.n_morphisms):
        if f not in ids:
            ready[max(c.src[f], c.tgt[f])].append(("nat", f))
    ready[u].append(("unit",))
    for a in range(n):
        for b in range(n):
            ready[max(a, b, T[a][b])].append(("mult", a, b))

    def holds(check, comp) -> bool:
        if check[0] == "unit":
            return comp[u][s_eta] == t_eta
        if check[0] == "nat":
            f = check[1]
            a, b = c.src[f], c.tgt[f]
            ca, cb, tf, sf = comp[a], comp[b], T_m[f], S_m[f]
            return all(tf[ca[x]] == cb[sf[x]] for x in range(S_o[a]))
        _, a, b = check
        ab = T[a][b]
        ca, cb, cab = comp[a], comp[b], comp[ab]
        ms, mt = muS[a][b], muT[a][b]
        sb, tb = S_o[b], T_o[b]
        return all(cab[ms[p * sb + q]] == mt[ca[p] * tb + cb[q]]
                   for p in range(S_o[a]) for q in range(sb))

    budget = _Budget(max_enumeration, "monoidal transformations")
    comp: list = [None] * n

    def rec(k: int):
        if k == n:
            yield tuple(comp)
            return
        for table in itertools.product(range(T_o[k]), repeat=S_o[k]):
            budget.spend()
            comp[k] = table
            if all(holds(ch, comp) for ch in ready[k]):
                yield from rec(k + 1)
        comp[k] = None

    for tables in rec(0):
        comps = tuple(SetMap(S_o[a], T_o[a], tables[a]) for a in range(n))
        yield MonoidalNatTrans(NatTransData(s.functor, t.functor, comps), s, t)
