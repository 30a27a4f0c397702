import itertools

import networkx as nx
import pytest

from conftest import (all_nat_trans, all_set_functors, random_poset, set_functor,
                      z2_three_element)
from kanext.errors import FactorizationError, PreconditionError, SizeGuardError
from kanext.fincat import (FunctorData, NatTransData, compose_functors, discrete,
                           discrete_from_monoid, from_poset, identity_functor,
                           identity_nat_trans, terminal, validate_functor, validate_nat_trans)
from kanext.graded import graded_to_lax_functor
from kanext.kan import (KanResult, comparison_map, enumerate_factorizations,
                        factor_through_kan, lambda_tensor_covers, left_kan_extension,
                        pair_comparison, pair_data, paste, triple_comparison, verify_kan)
from kanext.monoids import catalogue
from kanext.setskel import SETSKEL, SetMap, identity, is_bijective

Z2 = catalogue()["Z2"]
D2 = discrete_from_monoid(Z2)


def discrete_functor(cat, sizes):
    return FunctorData(cat, SETSKEL, tuple(sizes), tuple(identity(s) for s in sizes))


def to_point(cat):
    return FunctorData(cat, terminal(), (0,) * cat.n_objects, (0,) * cat.n_morphisms)


def elements_oracle(f, g, y):
    """|L y| as connected components of the category of elements of the comma diagram."""
    c, cp = f.source, g.target
    graph = nx.Graph()
    for z in range(c.n_objects):
        for h in cp.hom(g.object_map[z], y):
            for a in range(f.object_map[z]):
                graph.add_node((z, h, a))
    for phi in range(c.n_morphisms):
        z, w = c.src[phi], c.tgt[phi]
        for h2 in cp.hom(g.object_map[w], y):
            h = cp.compose(g.morphism_map[phi], h2)
            for a in range(f.object_map[z]):
                graph.add_edge((z, h, a), (w, h2, f.morphism_map[phi](a)))
    return nx.number_connected_components(graph)


def test_kan_along_identity():
    c = from_poset(2, [(0, 1)])
    f = set_functor(c, (1, 2), [(0,), (1,), (0, 1)])
    k = left_kan_extension(f, identity_functor(c))
    assert k.L.object_map == f.object_map
    assert all(is_bijective(m)[0] for m in k.lam.components)
    assert verify_kan(k, bound=3).ok


def test_kan_discrete_to_point_is_coproduct():
    f = discrete_functor(D2, (1, 2))
    k = left_kan_extension(f, to_point(D2))
    assert k.L.object_map == (3,)
    assert k.lam.components[0].table == (0,) and k.lam.components[1].table == (1, 2)


@pytest.mark.parametrize("s", [0, 1, 2, 3])
def test_kan_point_to_z2_concentrates(s):
    g = FunctorData(terminal(), D2, (0,), (D2.identity[0],))
    k = left_kan_extension(discrete_functor(terminal(), (s,)), g)
    assert k.L.object_map == (s, 0)


def test_kan_rejects_non_set_target():
    with pytest.raises(PreconditionError):
        left_kan_extension(identity_functor(D2), identity_functor(D2))


def test_kan_size_guard():
    d = discrete(4)
    with pytest.raises(SizeGuardError):
        left_kan_extension(discrete_functor(d, (1,) * 4), to_point(d), max_comma_objects=3)


def test_kan_sizes_match_elements_oracle(rng):
    for _ in range(15):
        c = random_poset(rng, rng.randint(1, 3))
        cp = random_poset(rng, 2)
        gs = []
        for om in itertools.product(range(2), repeat=c.n_objects):
            if all(cp.hom(om[c.src[m]], om[c.tgt[m]]) for m in range(c.n_morphisms)):
                gs.append(FunctorData(c, cp, om, tuple(
                    cp.hom(om[c.src[m]], om[c.tgt[m]])[0] for m in range(c.n_morphisms))))
        fs = list(all_set_functors(c, 2))
        for g in gs[:3]:
            for f in rng.sample(fs, min(5, len(fs))):
                k = left_kan_extension(f, g)
                assert verify_kan(k).ok
                for y in range(cp.n_objects):
                    assert k.L.object_map[y] == elements_oracle(f, g, y)


def test_factor_lambda_is_identity():
    f = discrete_functor(D2, (1, 2))
    k = left_kan_extension(f, to_point(D2))
    u = factor_through_kan(k, k.L, k.lam)
    assert u.components == identity_nat_trans(k.L).components


def test_factor_into_constant_singleton():
    f = discrete_functor(D2, (1, 2))
    k = left_kan_extension(f, to_point(D2))
    x = discrete_functor(terminal(), (1,))
    chi = NatTransData(f, compose_functors(k.G, x), (SetMap(1, 1, (0,)), SetMap(2, 1, (0, 0))))
    u = factor_through_kan(k, x, chi)
    assert u.components[0].table == (0, 0, 0)


def test_factor_injective_per_grade_gives_bijection():
    f = discrete_functor(D2, (1, 2))
    k = left_kan_extension(f, to_point(D2))
    x = discrete_functor(terminal(), (3,))
    chi = NatTransData(f, compose_functors(k.G, x), (SetMap(1, 3, (2,)), SetMap(2, 3, (0, 1))))
    u = factor_through_kan(k, x, chi)
    assert u.components[0].table == (2, 0, 1)
    assert paste(k, u).components == chi.components


def test_factor_rejects_non_natural_chi():
    c = from_poset(2, [(0, 1)])
    f = set_functor(c, (1, 1), [(0,), (0,), (0,)])
    k = left_kan_extension(f, to_point(c))
    x = discrete_functor(terminal(), (2,))
    chi = NatTransData(f, compose_functors(k.G, x), (SetMap(1, 2, (0,)), SetMap(1, 2, (1,))))
    with pytest.raises(PreconditionError):
        factor_through_kan(k, x, chi)


def test_factor_detects_overglued_witness():
    f = discrete_functor(D2, (1, 1))
    k = left_kan_extension(f, to_point(D2))
    x = discrete_functor(terminal(), (2,))
    chi = NatTransData(f, compose_functors(k.G, x), (SetMap(1, 2, (0,)), SetMap(1, 2, (1,))))
    merged = type(k.witnesses[0])(1, (SetMap(1, 1, (0,)), SetMap(1, 1, (0,))), ((0, 0),))
    glued = KanResult(k.F, k.G, discrete_functor(terminal(), (1,)), k.lam, k.commas, (merged,))
    with pytest.raises(FactorizationError):
        factor_through_kan(glued, x, chi)


def test_enumerate_factorizations_three_into_two():
    f = discrete_functor(D2, (1, 2))
    k = left_kan_extension(f, to_point(D2))
    x = discrete_functor(terminal(), (2,))
    for chi in all_nat_trans(f, compose_functors(k.G, x)):
        assert enumerate_factorizations(k, x, chi) == 1


def test_enumerate_factorizations_rejects_non_natural():
    c = from_poset(2, [(0, 1)])
    f = set_functor(c, (1, 1), [(0,), (0,), (0,)])
    k = left_kan_extension(f, identity_functor(c))
    x = set_functor(c, (2, 2), [(0, 1), (0, 1), (0, 1)])
    chi = NatTransData(f, x, (SetMap(1, 2, (0,)), SetMap(1, 2, (1,))))
    with pytest.raises(PreconditionError):
        enumerate_factorizations(k, x, chi)


def test_enumerate_factorizations_identity_extension():
    c = from_poset(2, [(0, 1)])
    f = set_functor(c, (1, 2), [(0,), (1,), (0, 1)])
    k = left_kan_extension(f, identity_functor(c))
    assert enumerate_factorizations(k, f, identity_nat_trans(f)) == 1


def test_enumerate_factorizations_guard():
    f = discrete_functor(D2, (2, 2))
    k = left_kan_extension(f, to_point(D2))
    x = discrete_functor(terminal(), (3,))
    chi = next(all_nat_trans(f, compose_functors(k.G, x)))
    with pytest.raises(SizeGuardError):
        enumerate_factorizations(k, x, chi, cap=10)


def test_universal_property_brute_force_on_posets():
    c = from_poset(3, [(0, 1), (0, 2)])
    cp = from_poset(2, [(0, 1)])
    om = (0, 1, 1)
    g = FunctorData(c, cp, om, tuple(cp.hom(om[c.src[m]], om[c.tgt[m]])[0]
                                     for m in range(c.n_morphisms)))
    assert validate_functor(g).ok
    for f in list(all_set_functors(c, 1)) + [set_functor(
            c, (1, 2, 1), [(0,), (0,), (0,), (0, 1), (0,)])]:
        k = left_kan_extension(f, g)
        assert verify_kan(k, bound=2).ok
        for x in all_set_functors(cp, 2):
            for chi in all_nat_trans(f, compose_functors(g, x)):
                assert enumerate_factorizations(k, x, chi) == 1
                assert paste(k, factor_through_kan(k, x, chi)).components == chi.components


def test_L_functoriality():
    c = from_poset(3, [(0, 1), (1, 2)])
    f = set_functor(c, (1, 2, 2), [(0,), (1,), (0,), (0, 1), (1, 0), (0, 1)])
    assert validate_functor(f).ok
    cp = from_poset(2, [(0, 1)])
    om = (0, 1, 1)
    g = FunctorData(c, cp, om, tuple(cp.hom(om[c.src[m]], om[c.tgt[m]])[0]
                                     for m in range(c.n_morphisms)))
    k = left_kan_extension(f, g)
    assert validate_functor(k.L).ok and validate_nat_trans(k.lam).ok


def test_comparison_identity_bijective():
    c = from_poset(2, [(0, 1)])
    f = set_functor(c, (1, 2), [(0,), (1,), (0, 1)])
    k = left_kan_extension(f, identity_functor(c))
    assert pair_comparison(k).bijective and triple_comparison(k).bijective


def test_comparison_discrete_gradings(rng):
    for sizes in itertools.product(range(3), repeat=2):
        k = left_kan_extension(discrete_functor(D2, sizes), to_point(D2))
        pc = pair_comparison(k)
        assert pc.bijective
        for m, inv in zip(pc.kappa.components, pc.kappa_inv):
            assert m.then(inv) == identity(m.dom)
        assert triple_comparison(k).bijective
        assert lambda_tensor_covers(k).ok


def test_comparison_detects_non_extension():
    f = discrete_functor(D2, (1, 1))
    k = left_kan_extension(f, to_point(D2))
    f2, g2, cand, cocone = pair_data(k)
    # enlarge the candidate by one junk element: the factorization misses it
    n = cand.object_map[0]
    bigger = FunctorData(cand.source, SETSKEL, (n + 1,), (identity(n + 1),))
    coc = NatTransData(cocone.source, compose_functors(g2, bigger),
                       tuple(SetMap(m.dom, n + 1, m.table) for m in cocone.components))
    res = comparison_map(f2, g2, bigger, coc)
    assert not res.bijective and res.kappa_inv is None


def test_triple_on_three_element_fixture():
    f = graded_to_lax_functor(z2_three_element()).functor
    k = left_kan_extension(f, to_point(D2))
    t = triple_comparison(k)
    assert t.bijective and t.kan.L.object_map == (27,)
