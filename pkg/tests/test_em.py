import random

import pytest
from hypothesis import given, strategies as st

from monadquiver import em
from monadquiver.algebra import full_matrix, truncated_poly
from monadquiver.catalog import catalog_algebras, random_matrix, random_module, random_module_morphism
from monadquiver.em import ModuleMorphism, ModuleObject
from monadquiver.linalg import GF, QQ, DimensionError, LinearMap, Subspace, all_matrices, all_vectors
from oracles import all_homs

F2, F3 = GF(2), GF(3)
seeds = st.integers(0, 2**32 - 1)


def dual(field=F2):
    return truncated_poly(field, 2)


def simple(a, t_value=0):
    """``k`` with ``t`` acting by ``t_value``."""
    return ModuleObject.from_matrices(a, [LinearMap.identity(a.field, 1), LinearMap.from_rows(a.field, [[t_value]])])


def pick_algebra(field, rng):
    algs = catalog_algebras(field)
    return algs[rng.choice(sorted(algs))]


# -- validation


def test_regular_module_valid():
    for a in catalog_algebras(F3).values():
        assert em.validate_module(em.regular_module(a))


def test_trivial_module_valid():
    assert em.validate_module(simple(dual()))


def test_t_acting_by_one_invalid():
    chk = em.validate_module(simple(dual(), 1))
    assert not chk and chk.name == "associativity"


def test_action_shape_checked():
    with pytest.raises(DimensionError):
        ModuleObject(dual(), 2, LinearMap.identity(F2, 2))


# -- free modules


def test_free_examples():
    a = dual()
    assert em.free_module(a, 1) == em.regular_module(a)
    assert em.free_module(a, 1).dim == 2
    assert em.free_module(a, 0).dim == 0
    big = em.free_module(full_matrix(F3, 2), 2)
    assert big.dim == 8 and em.validate_module(big)


# -- free / forgetful adjunction


def test_transpose_to_right_multiplication():
    a = dual()
    n = em.regular_module(a)
    x = LinearMap.from_columns(F2, [(0, 1)], 2)  # 1 |-> t
    g = em.adjoint_transpose("to_module", a, 1, n, x)
    assert g.map == a.right_mult((0, 1))
    assert em.adjoint_transpose("to_linear", a, 1, n, g) == x


def test_transpose_of_zero():
    a = dual(QQ)
    n = em.free_module(a, 2)
    z = LinearMap.zero(QQ, n.dim, 3)
    g = em.adjoint_transpose("to_module", a, 3, n, z)
    assert g.map.is_zero()
    assert em.adjoint_transpose("to_linear", a, 3, n, g) == z


def test_to_linear_rejects_non_equivariant():
    a = dual()
    n = em.regular_module(a)
    with pytest.raises(ValueError):
        em.adjoint_transpose("to_linear", a, 1, n, LinearMap.from_rows(F2, [[0, 1], [0, 0]]))


@given(seeds)
def test_adjunction_roundtrips(seed):
    rng = random.Random(seed)
    field = rng.choice([F2, F3, QQ])
    a = pick_algebra(field, rng)
    n = random_module(a, rng)
    v = rng.randint(0, 3)
    x = random_matrix(field, n.dim, v, rng)
    g = em.adjoint_transpose("to_module", a, v, n, x)
    assert g.is_equivariant()
    assert em.adjoint_transpose("to_linear", a, v, n, g) == x
    h = random_module_morphism(em.free_module(a, v), n, rng)
    back = em.adjoint_transpose("to_module", a, v, n, em.adjoint_transpose("to_linear", a, v, n, h))
    assert back.map == h


# -- kernels, cokernels, sums


def test_kernel_of_augmentation():
    a = dual()
    k = simple(a)
    q = ModuleMorphism(em.regular_module(a), k, LinearMap.from_rows(F2, [[1, 0]]))
    assert q.is_equivariant()
    ker = em.ker_coker_sum("kernel", q)
    assert ker.source.dim == 1 and ker.map.image() == Subspace.span(F2, 2, [(0, 1)])
    assert em.ker_coker_sum("cokernel", q).target.dim == 0


def test_kernel_of_identity():
    m = em.regular_module(dual())
    assert em.kernel(m.identity()).source.dim == 0


def test_sum_of_regular_and_simple():
    a = dual()
    s = em.ker_coker_sum("sum", [em.regular_module(a), simple(a)])
    assert s.module.dim == 3 and em.validate_module(s.module)
    for i, p in zip(s.injections, s.projections):
        assert i.then(p).map == LinearMap.identity(F2, i.source.dim)


@given(seeds)
def test_kernel_image_cokernel_exactness(seed):
    rng = random.Random(seed)
    field = rng.choice([F2, F3, QQ])
    a = pick_algebra(field, rng)
    m, n = random_module(a, rng), random_module(a, rng)
    g = ModuleMorphism(m, n, random_module_morphism(m, n, rng))
    ker, coker = em.kernel(g), em.cokernel(g)
    for x in (ker.source, coker.target, em.image(g).source):
        assert em.validate_module(x)
    assert ker.is_equivariant() and coker.is_equivariant()
    assert (g.map @ ker.map).is_zero() and (coker.map @ g.map).is_zero()
    assert em.image(g).map.image() == coker.map.kernel()


# -- generated submodules


def test_generated_examples():
    a = dual()
    aa = em.free_module(a, 2)
    # (t, 0) in A (+) A: coordinates of b_i (x) e_j at i * 2 + j
    s = em.generated_submodule(aa, [(0, 0, 1, 0)])
    assert s == Subspace.span(F2, 4, [(0, 0, 1, 0)])
    assert em.generated_submodule(aa, []).dim == 0
    assert em.generated_submodule(em.regular_module(a), [(1, 0)]).dim == 2


@given(seeds)
def test_generated_is_smallest_closed(seed):
    rng = random.Random(seed)
    a = pick_algebra(F2, rng)
    m = random_module(a, rng)
    x = tuple(rng.randrange(2) for _ in range(m.dim))
    s = em.generated_submodule(m, [x])
    assert em.is_action_closed(m, s) and s.contains(x)
    # brute force: every closed subspace holding x contains s
    for t in {em.generated_submodule(m, [x, y]) for y in all_vectors(F2, m.dim)}:
        assert s <= t


# -- hom counting


def test_plain_hom_count():
    for d in range(4):
        assert em.hom_count(1, d, F2).cardinality == 2 ** d == len(list(all_vectors(F2, d)))


def test_free_forget_count():
    rng = random.Random(3)
    for a in catalog_algebras(F3).values():
        n = random_module(a, rng, 3)
        assert em.hom_count(em.regular_module(a), n).cardinality == 3 ** n.dim
        assert em.hom_count(em.regular_module(a), n).cardinality == em.elements_count(n).cardinality


def test_hom_count_from_zero():
    a = dual()
    assert em.hom_count(em.zero_module(a), em.regular_module(a)).cardinality == 1
    assert em.hom_count(em.zero_module(dual(QQ)), em.regular_module(dual(QQ))).cardinality == 1
    assert em.hom_count(em.regular_module(dual(QQ)), em.regular_module(dual(QQ))).infinite


def test_hom_space_against_enumeration():
    rng = random.Random(11)
    for _ in range(15):
        a = pick_algebra(F2, rng)
        m, n = random_module(a, rng, 2), random_module(a, rng, 2)
        brute = sum(1 for g in all_matrices(F2, n.dim, m.dim) if em.is_equivariant(m, n, g))
        assert brute == em.hom_count(m, n).cardinality == len(list(all_homs(m, n)))


def test_generator_is_epimorphism():
    rng = random.Random(5)
    for a in catalog_algebras(QQ).values():
        m = random_module(a, rng)
        ev = em.evaluation_epimorphism(m)
        assert ev.is_equivariant() and ev.map.rank() == m.dim


@given(seeds)
def test_monotone_hom_counts(seed):
    rng = random.Random(seed)
    field = rng.choice([F2, F3])
    a = pick_algebra(field, rng)
    m = random_module(a, rng)
    x = tuple(rng.randrange(field.characteristic) for _ in range(m.dim))
    s = em.generated_submodule(m, [x])
    sub = em.submodule(m, s).source
    quo = em.quotient(m, s).target
    g = em.regular_module(a)
    assert em.hom_count(g, sub).cardinality <= em.hom_count(g, m).cardinality
    assert em.hom_count(g, quo).cardinality <= em.hom_count(g, m).cardinality
