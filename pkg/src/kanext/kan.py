"""Pointwise left Kan extensions of set-valued functors.

For ``F: C -> Set`` and ``G: C -> C'`` the extension at ``c'`` is the colimit
of ``F . proj`` over the comma category ``(G | c')``. An element of ``L c'``
is a class ``[(c, g: Gc -> c', a)]`` with ``a`` in ``F c``; ``L psi`` sends it
to ``[(c, g;psi, a)]`` and ``lambda_c(a) = [(c, id_Gc, a)]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

from .errors import (
    FactorizationError,
    PreconditionError,
    ReportBuilder,
    SizeGuardError,
    StructureError,
    ValidationReport,
)
from .fincat import (
    MAX_COMMA_OBJECTS,
    CommaCategory,
    FunctorData,
    NatTransData,
    comma_category,
    compose_functors,
    product_functor,
    validate_functor,
    validate_nat_trans,
    vertical_compose,
    whisker,
)
from .monoidal import tensor_of_functors, tensor_of_nat_trans
from .setskel import (
    SETSKEL,
    ColimitWitness,
    SetMap,
    colimit_of_diagram,
    diagram_arrows,
    inverse,
    tensor,
    verify_colimit,
)

MAX_ENUMERATION = 10**6


@dataclass(frozen=True)
class KanResult:
    F: FunctorData
    G: FunctorData
    L: FunctorData
    lam: NatTransData
    commas: tuple[CommaCategory, ...]
    witnesses: tuple[ColimitWitness, ...]

    def diagram(self, c_prime: int) -> FunctorData:
        return compose_functors(self.commas[c_prime].projection, self.F)

    def element(self, c_prime: int, p: int) -> tuple[int, int, int]:
        """Least representative ``(c, g, a)`` of element ``p`` of ``L c'``."""
        i, a = self.witnesses[c_prime].representative[p]
        c, g = self.commas[c_prime].pairs[i]
        return c, g, a


def left_kan_extension(f: FunctorData, g: FunctorData,
                       max_comma_objects: int = MAX_COMMA_OBJECTS) -> KanResult:
    if f.target is not SETSKEL:
        raise PreconditionError("left_kan_extension only supports set-valued functors")
    if g.target is SETSKEL:
        raise PreconditionError("cannot extend along a set-valued functor")
    if f.source != g.source:
        raise StructureError("F and G must share their source category")
    cp = g.target
    commas, witnesses = [], []
    for x in range(cp.n_objects):
        comma = comma_category(g, x, max_comma_objects)
        commas.append(comma)
        witnesses.append(colimit_of_diagram(compose_functors(comma.projection, f)))
    sizes = tuple(w.apex for w in witnesses)
    mor = []
    for psi in range(cp.n_morphisms):
        x, y = cp.src[psi], cp.tgt[psi]
        src_comma, dst_comma, dst_w = commas[x], commas[y], witnesses[y]
        table = []
        for i, a in witnesses[x].representative:
            c, h = src_comma.pairs[i]
            j = dst_comma.index[(c, cp.compose(h, psi))]
            table.append(dst_w.injections[j](a))
        mor.append(SetMap(sizes[x], sizes[y], tuple(table)))
    L = FunctorData(cp, SETSKEL, sizes, tuple(mor), name="L")
    c = f.source
    comps = []
    for z in range(c.n_objects):
        gz = g.object_map[z]
        i = commas[gz].index[(z, cp.identity[gz])]
        comps.append(witnesses[gz].injections[i])
    lam = NatTransData(f, compose_functors(g, L), tuple(comps), name="lambda")
    return KanResult(f, g, L, lam, tuple(commas), tuple(witnesses))


def verify_kan(k: KanResult, bound: int = 0) -> ValidationReport:
    """Post-hoc checks: L is a functor, lambda is natural, every witness is a
    colimit, and lambda_c is the injection at ``(c, id)``."""
    rb = ReportBuilder("kan extension")
    rb.extend(validate_functor(k.L), "L:")
    rb.extend(validate_nat_trans(k.lam), "lambda:")
    for x, w in enumerate(k.witnesses):
        d = k.diagram(x)
        rep = verify_colimit(d.object_map, diagram_arrows(d), w, bound=bound)
        for v in rep.violations:
            rb.add("witness:" + v.law, (x,) + v.where, v.detail)
    cp = k.G.target
    for z in range(k.F.source.n_objects):
        gz = k.G.object_map[z]
        i = k.commas[gz].index[(z, cp.identity[gz])]
        if k.lam.components[z] != k.witnesses[gz].injections[i]:
            rb.add("lambda-injection", (z,))
    return rb.build()


def paste(k: KanResult, u: NatTransData) -> NatTransData:
    """``uG . lambda``: the transformation ``F => X G`` induced by ``u: L => X``."""
    return vertical_compose(k.lam, whisker(u, pre=k.G))


def _check_chi(k: KanResult, x: FunctorData, chi: NatTransData) -> None:
    if x.source != k.G.target or x.target is not SETSKEL:
        raise PreconditionError("X must be a set-valued functor on the codomain of G")
    if chi.source != k.F or chi.target != compose_functors(k.G, x):
        raise PreconditionError("chi must go from F to X.G")
    rep = validate_nat_trans(chi)
    if not rep.ok:
        raise PreconditionError(f"chi is not natural: {rep}")


def factor_through_kan(k: KanResult, x: FunctorData, chi: NatTransData) -> NatTransData:
    """The unique ``u: L => X`` with ``uG . lambda = chi``.

    ``u_{c'}[(c, g, a)] = X(g)(chi_c(a))``, checked on every member of every
    class rather than only on representatives.
    """
    _check_chi(k, x, chi)
    cp = k.G.target
    comps = []
    for y in range(cp.n_objects):
        w, comma = k.witnesses[y], k.commas[y]
        table: list[int | None] = [None] * w.apex
        for i, (c, g) in enumerate(comma.pairs):
            xg = x.morphism_map[g]
            inj = w.injections[i]
            for a, v in enumerate(chi.components[c].table):
                val = xg(v)
                p = inj(a)
                if table[p] is None:
                    table[p] = val
                elif table[p] != val:
                    raise FactorizationError(
                        f"factorization ill-defined at object {y}, class {p}: "
                        f"{table[p]} vs {val} from ({c}, {g}, {a})")
        comps.append(SetMap(w.apex, x.object_map[y], tuple(table)))
    return NatTransData(k.L, x, tuple(comps), name="u")


def enumerate_factorizations(k: KanResult, x: FunctorData, chi: NatTransData,
                             cap: int = MAX_ENUMERATION) -> int:
    """Brute-force count of natural ``u: L => X`` with ``uG . lambda = chi``."""
    _check_chi(k, x, chi)
    cp = k.G.target
    Lsz, Xsz = k.L.object_map, x.object_map
    total = prod(Xsz[y] ** Lsz[y] for y in range(cp.n_objects))
    if total > cap:
        raise SizeGuardError(f"{total} candidate transformations exceed the cap of {cap}")
    per_obj = [
        [SetMap(Lsz[y], Xsz[y], t) for t in itertools.product(range(Xsz[y]), repeat=Lsz[y])]
        for y in range(cp.n_objects)
    ]
    count = 0
    for comps in itertools.product(*per_obj):
        u = NatTransData(k.L, x, comps)
        if validate_nat_trans(u).ok and paste(k, u).components == chi.components:
            count += 1
    return count


@dataclass(frozen=True)
class Comparison:
    """The canonical map ``kappa: K => candidate`` out of a fresh extension ``K``."""

    kan: KanResult
    kappa: NatTransData
    bijective: bool
    kappa_inv: tuple[SetMap, ...] | None


def comparison_map(f2: FunctorData, g2: FunctorData, candidate: FunctorData,
                   cocone: NatTransData,
                   max_comma_objects: int = MAX_COMMA_OBJECTS) -> Comparison:
    """Factor ``cocone: f2 => candidate . g2`` through ``Lan_{g2} f2``.

    ``(candidate, cocone)`` is itself a left Kan extension exactly when every
    component of the factorization is a bijection.
    """
    K = left_kan_extension(f2, g2, max_comma_objects)
    kappa = factor_through_kan(K, candidate, cocone)
    invs = [inverse(m) for m in kappa.components]
    ok = all(i is not None for i in invs)
    return Comparison(K, kappa, ok, tuple(invs) if ok else None)


def pair_data(k: KanResult) -> tuple[FunctorData, FunctorData, FunctorData, NatTransData]:
    """``(F(x)F, GxG, L(x)L, lambda(x)lambda)``."""
    f2 = tensor_of_functors(k.F, k.F)
    g2 = product_functor(k.G, k.G)
    cand = tensor_of_functors(k.L, k.L)
    cocone = tensor_of_nat_trans(k.lam, k.lam)
    return f2, g2, cand, cocone


def triple_data(k: KanResult) -> tuple[FunctorData, FunctorData, FunctorData, NatTransData]:
    """The threefold analogue of :func:`pair_data`, bracketed on the left."""
    f2, g2, cand, cocone = pair_data(k)
    return (tensor_of_functors(f2, k.F), product_functor(g2, k.G),
            tensor_of_functors(cand, k.L), tensor_of_nat_trans(cocone, k.lam))


def pair_comparison(k: KanResult, max_comma_objects: int = MAX_COMMA_OBJECTS) -> Comparison:
    return comparison_map(*pair_data(k), max_comma_objects=max_comma_objects)


def triple_comparison(k: KanResult, max_comma_objects: int = MAX_COMMA_OBJECTS) -> Comparison:
    return comparison_map(*triple_data(k), max_comma_objects=max_comma_objects)


def lambda_tensor_covers(k: KanResult) -> ValidationReport:
    """Joint surjectivity of the translates ``(L psi (x) L omega) . (lambda_c (x) lambda_d)``
    onto every ``L x' (x) L y'``."""
    cp, c = k.G.target, k.F.source
    Lo, Lm, Go = k.L.object_map, k.L.morphism_map, k.G.object_map
    rb = ReportBuilder("lambda (x) lambda joint surjectivity")
    for xp in range(cp.n_objects):
        for yp in range(cp.n_objects):
            hit: set[int] = set()
            for a in range(c.n_objects):
                for b in range(c.n_objects):
                    base = tensor(k.lam.components[a], k.lam.components[b])
                    for psi in cp.hom(Go[a], xp):
                        for om in cp.hom(Go[b], yp):
                            hit |= base.then(tensor(Lm[psi], Lm[om])).image()
            if len(hit) != Lo[xp] * Lo[yp]:
                rb.add("not-covered", (xp, yp), f"{len(hit)} of {Lo[xp] * Lo[yp]}")
    return rb.build()
