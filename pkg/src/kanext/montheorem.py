"""Lax monoidal structure on a left Kan extension.

Given a lax monoidal ``F: C -> Set``, a strong monoidal ``G: C -> C'`` and the
pointwise extension ``(L, lambda)``, the unit of ``L`` is

    eta_L = L(eta_G^-1) . lambda_I . eta_F

and the multiplication is the unique ``mu_L: L(x)L => L(- (x) -)`` with

    mu_L . (lambda (x) lambda) = L(mu_G^-1) . lambda_(-(x)-) . mu_F,

obtained by factoring the right-hand side through the extension of ``F(x)F``
along ``GxG`` and precomposing with the inverse of the comparison map. Every
conclusion is re-checked after construction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import prod

import numpy as np

from .errors import (
    AssumptionError,
    EngineError,
    PreconditionError,
    ReportBuilder,
    ValidationReport,
)
from .fincat import MAX_COMMA_OBJECTS, NatTransData, compose_functors
from .kan import (
    MAX_ENUMERATION,
    Comparison,
    KanResult,
    factor_through_kan,
    lambda_tensor_covers,
    left_kan_extension,
    pair_comparison,
    paste,
    triple_comparison,
    verify_kan,
)
from .monoidal import (
    LaxMonoidalFunctor,
    MonoidalNatTrans,
    compose_lax,
    strong_inverses,
    tensor_functor,
    validate_lax_monoidal,
    validate_monoidal,
    validate_monoidal_nat_trans,
)
from .search import enumerate_lax_functors, enumerate_monoidal_transformations
from .setskel import SETSKEL, SetMap, tensor

log = logging.getLogger(__name__)


def construct_unit(kan: KanResult, f: LaxMonoidalFunctor, g: LaxMonoidalFunctor) -> SetMap:
    inv = strong_inverses(g)
    if inv is None:
        raise AssumptionError(2, "G is not strong monoidal")
    unit_c = f.source.unit
    return f.eta.then(kan.lam.components[unit_c]).then(kan.L.morphism_map[inv.eta_inv])


def _cylinder(kan: KanResult, f: LaxMonoidalFunctor, g: LaxMonoidalFunctor,
              mu_g_inv) -> list[SetMap]:
    """``L(mu_G^-1) . lambda_(c(x)d) . mu_F`` for every pair ``(c, d)``, flattened."""
    n = f.source.base.n_objects
    T = f.source.obj_table
    Lm, lam = kan.L.morphism_map, kan.lam.components
    return [
        f.mu[c][d].then(lam[T[c][d]]).then(Lm[mu_g_inv[c][d]])
        for c in range(n) for d in range(n)
    ]


def construct_multiplication(kan: KanResult, f: LaxMonoidalFunctor, g: LaxMonoidalFunctor,
                             pair: Comparison | None = None) -> tuple[tuple[SetMap, ...], ...]:
    inv = strong_inverses(g)
    if inv is None:
        raise AssumptionError(2, "G is not strong monoidal")
    if pair is None:
        pair = pair_comparison(kan)
    if not pair.bijective:
        raise AssumptionError(4, "lambda(x)lambda is not a left Kan extension")
    cp = g.target
    n2 = cp.base.n_objects
    x2 = compose_functors(tensor_functor(cp), kan.L)
    phi = _cylinder(kan, f, g, inv.mu_inv)
    chi = NatTransData(pair.kan.F, compose_functors(pair.kan.G, x2), tuple(phi))
    u = factor_through_kan(pair.kan, x2, chi)
    mu = tuple(
        tuple(pair.kappa_inv[x * n2 + y].then(u.components[x * n2 + y]) for y in range(n2))
        for x in range(n2)
    )
    n = f.source.base.n_objects
    Go, lam = g.functor.object_map, kan.lam.components
    for c in range(n):
        for d in range(n):
            lhs = tensor(lam[c], lam[d]).then(mu[Go[c]][Go[d]])
            if lhs != phi[c * n + d]:
                raise EngineError(f"multiplication does not restrict correctly at ({c}, {d})")
    return mu


@dataclass(frozen=True)
class UniquenessCertificate:
    unit_candidates: int
    unit_solutions: int
    mult_candidates: int
    mult_solutions: int | None
    exhaustive: bool

    @property
    def solutions(self) -> int | None:
        if not self.exhaustive or self.mult_solutions is None:
            return None
        return self.unit_solutions * self.mult_solutions

    def to_dict(self) -> dict:
        return {
            "unit_candidates": self.unit_candidates,
            "unit_solutions": self.unit_solutions,
            "mult_candidates": self.mult_candidates,
            "mult_solutions": self.mult_solutions,
            "exhaustive": self.exhaustive,
            "solutions": self.solutions,
        }


def _mult_blocks(kan: KanResult, cp) -> list[list[tuple[int, int]]]:
    n = cp.base.n_objects
    pairs = [(x, y) for x in range(n) for y in range(n)]
    if cp.base.is_discrete:
        return [[p] for p in pairs]
    return [pairs]


def uniqueness_certificate(kan: KanResult, f: LaxMonoidalFunctor, g: LaxMonoidalFunctor,
                           max_enumeration: int = MAX_ENUMERATION) -> UniquenessCertificate:
    """Count all ``(eta, mu)`` making lambda monoidal, by exhaustive enumeration.

    Candidate ``mu`` families are enumerated over every table entry (and, for a
    non-discrete ``C'``, filtered by naturality). When ``C'`` is discrete the
    components are independent and are enumerated one block at a time; the
    solution count is the product over blocks. A block with more than
    ``max_enumeration`` candidates makes the certificate non-exhaustive.
    """
    cp = g.target
    base = cp.base
    T = cp.obj_table
    Lo, Lm = kan.L.object_map, [m.table for m in kan.L.morphism_map]
    lam = kan.lam.components
    c_unit = f.source.unit

    target_unit = f.eta.then(lam[c_unit])
    L_eta_g = kan.L.morphism_map[g.eta]
    unit_candidates = Lo[cp.unit]
    unit_solutions = sum(
        1 for e in range(unit_candidates)
        if SetMap(1, Lo[cp.unit], (e,)).then(L_eta_g) == target_unit
    )

    # entry ids: (x, y, p, q) -> column
    n = f.source.base.n_objects
    Go = g.functor.object_map
    Tc = f.source.obj_table
    mult_candidates = 0
    mult_solutions: int | None = 1
    exhaustive = True
    for block in _mult_blocks(kan, cp):
        cols: dict[tuple[int, int, int], int] = {}
        ranges: list[int] = []
        for x, y in block:
            for e in range(Lo[x] * Lo[y]):
                cols[(x, y, e)] = len(ranges)
                ranges.append(Lo[T[x][y]])
        total = prod(ranges)
        mult_candidates += total
        if total > max_enumeration:
            exhaustive = False
            mult_solutions = None
            log.info("uniqueness block %s has %d candidates; skipped", block, total)
            continue
        if total == 0:
            mult_solutions = 0 if mult_solutions is not None else None
            continue
        idx = np.arange(total, dtype=np.int64)
        cand = np.empty((total, len(ranges)), dtype=np.int64)
        stride = 1
        for j in reversed(range(len(ranges))):
            cand[:, j] = (idx // stride) % ranges[j]
            stride *= ranges[j]
        mask = np.ones(total, dtype=bool)
        in_block = set(block)
        for c in range(n):
            for d in range(n):
                x, y = Go[c], Go[d]
                if (x, y) not in in_block:
                    continue
                rhs = f.mu[c][d].then(lam[Tc[c][d]])
                Lmu = np.asarray(Lm[g.mu[c][d]], dtype=np.int64)
                lc, ld = lam[c].table, lam[d].table
                fd = f.functor.object_map[d]
                for a in range(f.functor.object_map[c]):
                    for b in range(fd):
                        col = cols[(x, y, lc[a] * Lo[y] + ld[b])]
                        mask &= Lmu[cand[:, col]] == rhs.table[a * fd + b]
        if len(block) > 1:
            for psi in range(base.n_morphisms):
                for om in range(base.n_morphisms):
                    x, x2 = base.src[psi], base.tgt[psi]
                    y, y2 = base.src[om], base.tgt[om]
                    if (x, y) not in in_block or (x2, y2) not in in_block:
                        continue
                    Lpo = np.asarray(Lm[cp.tensor_mor(psi, om)], dtype=np.int64)
                    for p in range(Lo[x]):
                        for q in range(Lo[y]):
                            c1 = cols[(x, y, p * Lo[y] + q)]
                            c2 = cols[(x2, y2, Lm[psi][p] * Lo[y2] + Lm[om][q])]
                            mask &= cand[:, c2] == Lpo[cand[:, c1]]
        if mult_solutions is not None:
            mult_solutions *= int(mask.sum())
    return UniquenessCertificate(unit_candidates, unit_solutions, mult_candidates,
                                 mult_solutions, exhaustive)


@dataclass(frozen=True)
class MonoidalKanResult:
    kan: KanResult
    F: LaxMonoidalFunctor
    G: LaxMonoidalFunctor
    L_lax: LaxMonoidalFunctor
    lambda_monoidal: MonoidalNatTrans
    pair: Comparison
    triple: Comparison
    reports: tuple[ValidationReport, ...]
    uniqueness: UniquenessCertificate | None = None

    @property
    def eta_L(self) -> SetMap:
        return self.L_lax.eta

    @property
    def mu_L(self) -> tuple[tuple[SetMap, ...], ...]:
        return self.L_lax.mu

    @property
    def clean(self) -> bool:
        u = self.uniqueness
        return (all(r.ok for r in self.reports) and self.pair.bijective
                and self.triple.bijective
                and (u is None or u.solutions in (None, 1)))

    def certificates(self) -> dict:
        return {
            "pair_comparison_bijective": self.pair.bijective,
            "triple_comparison_bijective": self.triple.bijective,
            "reports": {r.subject: r.ok for r in self.reports},
            "uniqueness": None if self.uniqueness is None else self.uniqueness.to_dict(),
        }


def check_assumptions(f: LaxMonoidalFunctor, g: LaxMonoidalFunctor) -> None:
    """Hypotheses (1) and (2); (3) and (4) need the extension itself."""
    if f.target is not SETSKEL:
        raise PreconditionError("F must be a lax monoidal functor into SETSKEL")
    if f.source != g.source:
        raise AssumptionError(1, "F and G must share their source monoidal category")
    for m in (f.source, g.target):
        rep = validate_monoidal(m)
        if not rep.ok:
            raise AssumptionError(1, str(rep), rep)
    for lax, what in ((f, "F"), (g, "G")):
        rep = validate_lax_monoidal(lax)
        if not rep.ok:
            raise AssumptionError(2, f"{what} is not lax monoidal: {rep}", rep)
    if strong_inverses(g) is None:
        raise AssumptionError(2, "G is not strong monoidal")


def extend_lax_monoidal(f: LaxMonoidalFunctor, g: LaxMonoidalFunctor, *,
                        max_comma_objects: int = MAX_COMMA_OBJECTS,
                        max_enumeration: int = MAX_ENUMERATION,
                        uniqueness: bool = True) -> MonoidalKanResult:
    check_assumptions(f, g)
    kan = left_kan_extension(f.functor, g.functor, max_comma_objects)
    rep = verify_kan(kan)
    if not rep.ok:
        raise AssumptionError(3, str(rep), rep)
    pair = pair_comparison(kan, max_comma_objects)
    if not pair.bijective:
        raise AssumptionError(4, "lambda(x)lambda is not a left Kan extension")
    triple = triple_comparison(kan, max_comma_objects)
    if not triple.bijective:
        raise AssumptionError(4, "lambda(x)lambda(x)lambda is not a left Kan extension")

    eta = construct_unit(kan, f, g)
    mu = construct_multiplication(kan, f, g, pair)
    L_lax = LaxMonoidalFunctor(g.target, SETSKEL, kan.L, eta, mu, name="L")
    lam = MonoidalNatTrans(kan.lam, f, compose_lax(g, L_lax))
    reports = (
        validate_lax_monoidal(L_lax),
        validate_monoidal_nat_trans(lam),
        lambda_tensor_covers(kan),
    )
    cert = uniqueness_certificate(kan, f, g, max_enumeration) if uniqueness else None
    return MonoidalKanResult(kan, f, g, L_lax, lam, pair, triple, reports, cert)


def induce_monoidal_transformation(mk: MonoidalKanResult, x: LaxMonoidalFunctor,
                                   chi: MonoidalNatTrans) -> MonoidalNatTrans:
    """The factorization ``u: L => X`` of a monoidal ``chi: F => XG``, verified monoidal."""
    if chi.source != mk.F or chi.target != compose_lax(mk.G, x):
        raise PreconditionError("chi must be a monoidal transformation F => X.G")
    rep = validate_monoidal_nat_trans(chi)
    if not rep.ok:
        raise PreconditionError(f"chi is not monoidal: {rep}")
    u = factor_through_kan(mk.kan, x.functor, chi.underlying)
    um = MonoidalNatTrans(u, mk.L_lax, x)
    rep = validate_monoidal_nat_trans(um)
    if not rep.ok:
        raise EngineError(f"induced transformation is not monoidal: {rep}")
    return um


@dataclass(frozen=True)
class MonCatEntry:
    x: LaxMonoidalFunctor
    from_L: int
    from_F: int
    bijective: bool

    def to_dict(self) -> dict:
        return {
            "sizes": list(self.x.functor.object_map),
            "eta": list(self.x.eta.table),
            "mu": [[list(m.table) for m in row] for row in self.x.mu],
            "from_L": self.from_L,
            "from_F": self.from_F,
            "bijective": self.bijective,
        }


@dataclass(frozen=True)
class MonCatReport:
    bound: int
    entries: tuple[MonCatEntry, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(e.bijective for e in self.entries)

    def to_dict(self) -> dict:
        return {"bound": self.bound, "ok": self.ok, "functors": len(self.entries),
                "entries": [e.to_dict() for e in self.entries]}


def verify_moncat_universal(mk: MonoidalKanResult, bound: int,
                            max_enumeration: int = MAX_ENUMERATION) -> MonCatReport:
    """Check ``MonCat(L, X) -> MonCat(F, XG)``, ``u |-> uG . lambda``, is a bijection
    for every lax monoidal ``X`` with sets of size ``<= bound``."""
    entries = []
    for x in enumerate_lax_functors(mk.G.target, bound, max_enumeration):
        xg = compose_lax(mk.G, x)
        chis = {c.underlying.components: c
                for c in enumerate_monoidal_transformations(mk.F, xg, max_enumeration)}
        us = [u.underlying for u in
              enumerate_monoidal_transformations(mk.L_lax, x, max_enumeration)]
        images = [paste(mk.kan, u).components for u in us]
        bijective = len(set(images)) == len(images) and set(images) == set(chis)
        u_set = {u.components for u in us}
        for comps, chi in chis.items():
            u = induce_monoidal_transformation(mk, x, chi)
            if u.underlying.components not in u_set or \
                    paste(mk.kan, u.underlying).components != comps:
                bijective = False
        entries.append(MonCatEntry(x, len(us), len(chis), bijective))
    return MonCatReport(bound, tuple(entries))


def theorem_report(mk: MonoidalKanResult) -> ValidationReport:
    """All embedded checks flattened into one report."""
    rb = ReportBuilder("monoidal extension")
    for r in mk.reports:
        rb.extend(r, r.subject + ":")
    if not mk.pair.bijective:
        rb.add("assumption-4-pair")
    if not mk.triple.bijective:
        rb.add("assumption-4-triple")
    u = mk.uniqueness
    if u is not None and u.solutions not in (None, 1):
        rb.add("uniqueness", (), f"{u.solutions} solutions")
    return rb.build()
