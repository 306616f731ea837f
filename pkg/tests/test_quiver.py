import random

import pytest
from hypothesis import given, strategies as st

from monadquiver import em
from monadquiver.algebra import (
    generator_morphism,
    ground_field,
    identity_morphism,
    truncated_poly,
)
from monadquiver.catalog import (
    chain2,
    flat_quivers,
    free_cartesian,
    nonflat_quivers,
    random_element,
    random_quiver_module,
)
from monadquiver.linalg import GF, QQ, DimensionError, LinearMap, Subspace
from monadquiver.quiver import (
    CyclicQuiverError,
    MonadQuiver,
    Quiver,
    QuiverModule,
    QuiverMorphism,
    check_subobject_family,
    direct_sum_quiver,
    elements,
    enumerate_homs,
    generated_subobject,
    hom_space,
    identity_morphism_of,
    is_cartesian,
    pointwise_cokernel,
    pointwise_kernel,
    quotient_quiver_module,
    regenerate_check,
    sub_quiver_module,
    validate_quiver_and_monadquiver,
    validate_quiver_morphism,
    validate_umodule,
    zero_morphism,
    zero_quiver_module,
)
from oracles import closure_oracle

F2, F3 = GF(2), GF(3)
seeds = st.integers(0, 2**32 - 1)


def aug_chain(field=F2):
    a = truncated_poly(field, 2)
    return chain2(field, generator_morphism(a, ground_field(field), (0,)))


def a_k_id(field=F2, scale=1):
    u = aug_chain(field)
    return QuiverModule(u, {"x": em.regular_module(u.algebra("x")), "y": em.regular_module(u.algebra("y"))},
                        {"e": LinearMap.identity(field, 1).scale(scale)})


def all_quivers(field):
    return {**flat_quivers(field), **nonflat_quivers(field)}


# -- quivers and monad quivers


def test_chain_valid_and_flat():
    chk = validate_quiver_and_monadquiver(chain2(F2))
    assert chk and chk.payload["flat"] == {"e": True}


def test_single_vertex():
    a = truncated_poly(QQ, 2)
    u = MonadQuiver(Quiver(["x"], []), {"x": a}, {})
    assert validate_quiver_and_monadquiver(u)


def test_diamond_mismatch_has_witness():
    a = truncated_poly(F2, 2)
    aa = truncated_poly(F2, 4)
    q = Quiver(["x", "y1", "y2", "w"],
               [("a", "x", "y1"), ("b", "x", "y2"), ("c", "y1", "w"), ("d", "y2", "w")])
    u = MonadQuiver(q, {"x": a, "y1": a, "y2": a, "w": aa},
                    {"a": identity_morphism(a), "b": identity_morphism(a),
                     "c": generator_morphism(a, aa, (0, 0, 1, 0)),
                     "d": generator_morphism(a, aa, (0, 0, 1, 1))})
    chk = validate_quiver_and_monadquiver(u)
    assert not chk and chk.name == "path independence"
    assert chk.witness["source"] == "x" and chk.witness["target"] == "w"


def test_cyclic_quiver_reported():
    k = ground_field(F2)
    q = Quiver(["x", "y"], [("e", "x", "y"), ("f", "y", "x")])
    u = MonadQuiver(q, {"x": k, "y": k}, {"e": identity_morphism(k), "f": identity_morphism(k)})
    chk = validate_quiver_and_monadquiver(u)
    assert not chk and chk.name == "acyclic"
    with pytest.raises(CyclicQuiverError):
        q.topological_order()


@pytest.mark.parametrize("field", [F2, F3, QQ], ids=str)
def test_catalog_quivers_valid(field):
    for name, u in all_quivers(field).items():
        assert validate_quiver_and_monadquiver(u), name
        assert u.is_poset


def test_parallel_edges_use_free_paths():
    a = truncated_poly(F2, 2)
    q = Quiver(["x", "y"], [("e", "x", "y"), ("f", "x", "y")])
    u = MonadQuiver(q, {"x": a, "y": a}, {"e": identity_morphism(a),
                                          "f": generator_morphism(a, a, (0, 0))})
    assert not u.is_poset and q.has_parallel_edges
    m = QuiverModule(u, {"x": em.regular_module(a), "y": em.regular_module(a)},
                     {"e": LinearMap.identity(F2, 2), "f": LinearMap.zero(F2, 2, 2)})
    assert validate_umodule(m)  # no cocycle across distinct free paths


# -- quiver modules


def test_a_k_id_valid():
    assert validate_umodule(a_k_id())


def test_zero_module_valid():
    for u in all_quivers(F3).values():
        assert validate_umodule(zero_quiver_module(u))


def test_doubled_map_valid_but_distinct():
    assert validate_umodule(a_k_id(F3, 2))
    assert a_k_id(F3, 2) != a_k_id(F3, 1)


def test_wrong_shape_cites_extension_dimension():
    u = aug_chain()
    with pytest.raises(DimensionError, match="dimension 1"):
        QuiverModule(u, {"x": em.regular_module(u.algebra("x")), "y": em.regular_module(u.algebra("y"))},
                     {"e": LinearMap.from_rows(F2, [[1], [0]], 1)})


def test_non_equivariant_map_rejected():
    u = chain2(F2)
    m = QuiverModule(u, {"x": em.regular_module(u.algebra("x")), "y": em.regular_module(u.algebra("y"))},
                     {"e": LinearMap.from_rows(F2, [[1, 0], [0, 0]])})
    chk = validate_umodule(m)
    assert not chk and chk.witness == {"edge": "e"}


def test_cocycle_violation_has_witness():
    u = flat_quivers(F2)["diamond"]
    good = free_cartesian(u, 1)
    maps = dict(good.edge_map)
    maps["c"] = maps["c"].scale(0)
    bad = QuiverModule(u, good.vertex_module, maps)
    chk = validate_umodule(bad)
    assert not chk
    assert chk.name in ("cocycle", "equivariance")


@given(seeds)
def test_random_modules_valid(seed):
    rng = random.Random(seed)
    field = rng.choice([F2, F3, QQ])
    quivers = all_quivers(field)
    u = quivers[rng.choice(sorted(quivers))]
    m = random_quiver_module(u, rng, 3)
    assert validate_umodule(m)
    for e in u.quiver.edges:
        back = m.adjoint_form(e.name)
        assert back.shape == (m.module(e.target).dim, m.module(e.source).dim)


# -- kernels, cokernels, sums


def test_kernel_of_identity_and_cokernel_of_zero():
    m = a_k_id()
    assert pointwise_kernel(identity_morphism_of(m)).source.total_dim() == 0
    c = pointwise_cokernel(zero_morphism(zero_quiver_module(m.monad_quiver), m))
    assert c.target == m


def test_free_summand_inclusion():
    u = chain2(F2)
    f1, f2 = free_cartesian(u, 1), free_cartesian(u, 2)
    ds = direct_sum_quiver([f1, free_cartesian(u, 1)])
    inc = ds.injections[0]
    assert validate_quiver_morphism(inc)
    ker = pointwise_kernel(inc)
    cok = pointwise_cokernel(inc)
    assert ker.source.total_dim() == 0
    assert cok.target.dims() == {"x": 1, "y": 2}
    assert validate_umodule(cok.target)
    assert ds.module.dims() == f2.dims()
    # the projection onto the first summand has kernel the second summand
    k2 = pointwise_kernel(ds.projections[0])
    assert k2.source.dims() == {"x": 1, "y": 2} and validate_umodule(k2.source)


@given(seeds)
def test_pointwise_exactness(seed):
    rng = random.Random(seed)
    field = rng.choice([F2, F3])
    quivers = all_quivers(field)
    u = quivers[rng.choice(sorted(quivers))]
    m, n = random_quiver_module(u, rng, 3), random_quiver_module(u, rng, 3)
    homs = hom_space(m, n)
    comps = {v: LinearMap.zero(field, n.module(v).dim, m.module(v).dim) for v in u.quiver.vertices}
    for h in homs:
        c = rng.randrange(field.characteristic)
        comps = {v: comps[v] + h.components[v].scale(c) for v in comps}
    xi = QuiverMorphism(m, n, comps)
    assert validate_quiver_morphism(xi)
    ker, cok = pointwise_kernel(xi), pointwise_cokernel(xi)
    assert validate_umodule(ker.source) and validate_umodule(cok.target)
    for v in u.quiver.vertices:
        assert ker.components[v].image() == xi.components[v].kernel()
        assert xi.components[v].image() == cok.components[v].kernel()


@given(seeds)
def test_direct_sums_valid(seed):
    rng = random.Random(seed)
    quivers = flat_quivers(F3)
    u = quivers[rng.choice(sorted(quivers))]
    parts = [random_quiver_module(u, rng, 2) for _ in range(2)]
    ds = direct_sum_quiver(parts)
    assert validate_umodule(ds.module)
    for i, p in zip(ds.injections, ds.projections):
        assert validate_quiver_morphism(i) and validate_quiver_morphism(p)


def test_hom_space_matches_enumeration():
    rng = random.Random(21)
    for name, u in sorted(all_quivers(F2).items()):
        m, n = random_quiver_module(u, rng, 2), random_quiver_module(u, rng, 2)
        brute = list(enumerate_homs(m, n)) if sum(
            m.module(v).dim * n.module(v).dim for v in u.quiver.vertices) <= 12 else None
        if brute is not None:
            assert len(brute) == 2 ** len(hom_space(m, n)), name


# -- elements


def test_elements_examples():
    k = ground_field(F2)
    u = MonadQuiver(Quiver(["x"], []), {"x": k}, {})
    m = QuiverModule(u, {"x": em.free_module(k, 2)}, {})
    es = elements(m)
    assert es.exhaustive and len(es.elements) == 4 and all(v == "x" for v, _ in es.elements)
    z = zero_quiver_module(aug_chain())
    assert sorted(v for v, _ in elements(z).elements) == ["x", "y"]
    k3 = ground_field(F3)
    u2 = MonadQuiver(Quiver(["x", "y"], []), {"x": k3, "y": k3}, {})
    m2 = QuiverModule(u2, {"x": em.regular_module(k3), "y": em.regular_module(k3)}, {})
    assert len(elements(m2).elements) == 6


def test_elements_over_q_are_flagged():
    m = free_cartesian(chain2(QQ), 1)
    es = elements(m)
    assert not es.exhaustive and len(es.elements) == 1 + 1 + 1 + 2


# -- generated subobjects


def test_generated_examples():
    m = a_k_id()
    p = generated_subobject(m, "x", (0, 1))
    assert p["x"] == Subspace.span(F2, 2, [(0, 1)]) and p["y"].dim == 0
    p1 = generated_subobject(m, "x", (1, 0))
    assert p1.dims() == {"x": 2, "y": 1}
    assert generated_subobject(m, "x", (0, 0)).total_dim() == 0


def test_generated_unknown_vertex():
    with pytest.raises(KeyError):
        generated_subobject(a_k_id(), "nope", (1,))


@given(seeds)
def test_generated_subobject_properties(seed):
    rng = random.Random(seed)
    field = rng.choice([F2, F3])
    quivers = all_quivers(field)
    u = quivers[rng.choice(sorted(quivers))]
    m = random_quiver_module(u, rng, 3)
    x, zeta = random_element(m, rng)
    p = generated_subobject(m, x, zeta)
    assert p[x].contains(zeta)
    assert check_subobject_family(m, p)
    assert regenerate_check(m, x, zeta)
    oracle = closure_oracle(m, x, zeta)
    assert all(p[v] == oracle[v] for v in u.quiver.vertices)


def test_regenerate_zero():
    m = a_k_id()
    assert regenerate_check(m, "x", (0, 0))


def test_sub_and_quotient_inject_elements():
    rng = random.Random(31)
    for u in flat_quivers(F2).values():
        m = random_quiver_module(u, rng, 3)
        x, zeta = random_element(m, rng)
        inc = sub_quiver_module(m, generated_subobject(m, x, zeta))
        assert validate_umodule(inc.source)
        for v in u.quiver.vertices:
            sub_elems = {inc.components[v].apply(e) for e in Subspace.full(F2, inc.source.module(v).dim).elements()}
            assert len(sub_elems) == 2 ** inc.source.module(v).dim
        quo = quotient_quiver_module(m, generated_subobject(m, x, zeta))
        assert validate_umodule(quo.target)


# -- cartesian


def test_cartesian_examples():
    assert is_cartesian(a_k_id())
    u = aug_chain()
    n = QuiverModule(u, {"x": em.regular_module(u.algebra("x")), "y": em.zero_module(u.algebra("y"))},
                     {"e": LinearMap.zero(F2, 0, 1)})
    chk = is_cartesian(n)
    assert not chk and chk.witness == {"edges": ["e"]}
    assert chk.payload["ranks"]["e"] == {"rank": 0, "shape": [0, 1]}
    k = truncated_poly(F2, 3)
    single = QuiverModule(MonadQuiver(Quiver(["x"], []), {"x": k}, {}), {"x": em.regular_module(k)}, {})
    assert is_cartesian(single)
