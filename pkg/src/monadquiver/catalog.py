"""A catalog of small algebras, morphisms and monad quivers, plus seeded random instances."""

from __future__ import annotations

import random
from fractions import Fraction

from . import em
from .algebra import (
    AlgebraMorphism,
    FDAlgebra,
    cyclic_group_algebra,
    diagonal_inclusion,
    full_matrix,
    generator_morphism,
    ground_field,
    identity_morphism,
    product,
    projection,
    truncated_poly,
    unit_inclusion,
)
from .change import extend_free_check
from .em import ModuleObject
from .linalg import FieldSpec, LinearMap
from .quiver import (
    MonadQuiver,
    Quiver,
    QuiverModule,
    direct_sum_quiver,
    generated_family,
    quotient_quiver_module,
)
from .vertex import ex


def catalog_algebras(field: FieldSpec) -> dict[str, FDAlgebra]:
    k = ground_field(field)
    out = {"k": k}
    for n in range(2, 5):
        out[f"k[t]/t^{n}"] = truncated_poly(field, n)
    for n in range(2, 5):
        out[f"k[C{n}]"] = cyclic_group_algebra(field, n)
    out["M2"] = full_matrix(field, 2)
    out["k x k"] = product(k, k)
    out["k[t]/t^2 x k"] = product(truncated_poly(field, 2), k)
    return out


def catalog_morphisms(field: FieldSpec) -> dict[str, AlgebraMorphism]:
    algs = catalog_algebras(field)
    k = algs["k"]
    a2, a3, a4 = algs["k[t]/t^2"], algs["k[t]/t^3"], algs["k[t]/t^4"]
    c2, c4 = algs["k[C2]"], algs["k[C4]"]
    out = {}
    for name, a in algs.items():
        if name != "k":
            out[f"unit:{name}"] = unit_inclusion(a)
        out[f"id:{name}"] = identity_morphism(a)
    out["aug:k[t]/t^2"] = generator_morphism(a2, k, (0,))
    out["t->t:k[t]/t^3->k[t]/t^2"] = generator_morphism(a3, a2, (0, 1))
    out["t->t^2:k[t]/t^2->k[t]/t^4"] = generator_morphism(a2, a4, (0, 0, 1, 0))
    out["aug:k[C2]"] = generator_morphism(c2, k, (1,))
    out["g->g^2:k[C2]->k[C4]"] = generator_morphism(c2, c4, (0, 0, 1, 0))
    kk = algs["k x k"]
    out["proj0:k x k"] = projection(kk, [k, k], 0)
    out["diag:k x k->M2"] = diagonal_inclusion(field, 2)
    out["proj0:k[t]/t^2 x k"] = projection(algs["k[t]/t^2 x k"], [a2, k], 0)
    return out


def random_scalar(field: FieldSpec, rng: random.Random):
    if field.is_finite:
        return rng.randrange(field.characteristic)
    return Fraction(rng.randint(-2, 2), rng.randint(1, 2))


def random_vector(field: FieldSpec, n: int, rng: random.Random) -> tuple:
    return tuple(field.reduce(random_scalar(field, rng)) for _ in range(n))


def random_matrix(field: FieldSpec, rows: int, cols: int, rng: random.Random) -> LinearMap:
    return LinearMap.from_rows(field, [random_vector(field, cols, rng) for _ in range(rows)], cols)


def _keep_zero(rng: random.Random) -> bool:
    # zero modules are a useful edge case but should not dominate a sample
    return rng.random() < 0.1


def random_module(a: FDAlgebra, rng: random.Random, max_dim: int = 4) -> ModuleObject:
    """A quotient or submodule of a small free module, of dimension at most ``max_dim``."""
    field = a.field
    for _ in range(200):
        n = rng.randint(1, 2)
        free = em.free_module(a, n)
        gens = [random_vector(field, free.dim, rng) for _ in range(rng.randint(0, 2))]
        s = em.generated_submodule(free, gens)
        candidates = []
        if free.dim - s.dim <= max_dim:
            candidates.append(lambda: em.quotient(free, s).target)
        if 0 < s.dim <= max_dim:
            candidates.append(lambda: em.submodule(free, s).source)
        if candidates:
            m = rng.choice(candidates)()
            if m.dim or _keep_zero(rng):
                return m
    return em.zero_module(a)


def random_module_morphism(m: ModuleObject, n: ModuleObject, rng: random.Random) -> LinearMap:
    basis = em.hom_space(m, n)
    out = LinearMap.zero(m.field, n.dim, m.dim)
    for b in basis:
        out = out + b.scale(random_scalar(m.field, rng))
    return out


# ---------------------------------------------------------------------------
# monad quivers


def chain2(field: FieldSpec, source: AlgebraMorphism | None = None) -> MonadQuiver:
    phi = source or unit_inclusion(truncated_poly(field, 2))
    q = Quiver(["x", "y"], [("e", "x", "y")])
    return MonadQuiver(q, {"x": phi.source, "y": phi.target}, {"e": phi})


def flat_quivers(field: FieldSpec) -> dict[str, MonadQuiver]:
    """Flat monad quivers on 2-4 vertex posets."""
    k = ground_field(field)
    a2, a4 = truncated_poly(field, 2), truncated_poly(field, 4)
    c2, c4 = cyclic_group_algebra(field, 2), cyclic_group_algebra(field, 4)
    m2 = full_matrix(field, 2)
    kk = product(k, k)
    out = {}
    out["chain k<A"] = chain2(field)
    out["chain k<M2"] = chain2(field, unit_inclusion(m2))
    out["chain kxk<M2"] = chain2(field, diagonal_inclusion(field, 2))
    s = generator_morphism(a2, a4, (0, 0, 1, 0))
    out["chain3 k<A2<A4"] = MonadQuiver(
        Quiver(["x", "y", "z"], [("e", "x", "y"), ("f", "y", "z")]),
        {"x": k, "y": a2, "z": a4},
        {"e": unit_inclusion(a2), "f": s},
    )
    out["chain3 k<C2<C4"] = MonadQuiver(
        Quiver(["x", "y", "z"], [("e", "x", "y"), ("f", "y", "z")]),
        {"x": k, "y": c2, "z": c4},
        {"e": unit_inclusion(c2), "f": generator_morphism(c2, c4, (0, 0, 1, 0))},
    )
    out["vee k,k<A"] = MonadQuiver(
        Quiver(["x", "y", "z"], [("e", "x", "z"), ("f", "y", "z")]),
        {"x": k, "y": k, "z": a2},
        {"e": unit_inclusion(a2), "f": unit_inclusion(a2)},
    )
    out["wedge k<A,kxk"] = MonadQuiver(
        Quiver(["x", "y", "z"], [("e", "x", "y"), ("f", "x", "z")]),
        {"x": k, "y": a2, "z": kk},
        {"e": unit_inclusion(a2), "f": unit_inclusion(kk)},
    )
    out["diamond"] = MonadQuiver(
        Quiver(["x", "y1", "y2", "w"],
               [("a", "x", "y1"), ("b", "x", "y2"), ("c", "y1", "w"), ("d", "y2", "w")]),
        {"x": k, "y1": a2, "y2": kk, "w": a2},
        {"a": unit_inclusion(a2), "b": unit_inclusion(kk),
         "c": identity_morphism(a2), "d": _first_factor_to(a2, field)},
    )
    return out


def _first_factor_to(a: FDAlgebra, field: FieldSpec) -> AlgebraMorphism:
    """``k x k -> A``, ``(s, t) |-> s . 1``."""
    kk = product(ground_field(field), ground_field(field))
    cols = [a.unit, tuple(field.zero for _ in range(a.dim))]
    return AlgebraMorphism(kk, a, LinearMap.from_columns(field, cols, a.dim))


def nonflat_quivers(field: FieldSpec) -> dict[str, MonadQuiver]:
    k = ground_field(field)
    a2 = truncated_poly(field, 2)
    a3 = truncated_poly(field, 3)
    out = {"chain A>k": chain2(field, generator_morphism(a2, k, (0,)))}
    out["chain3 k<A3>A2"] = MonadQuiver(
        Quiver(["x", "y", "z"], [("e", "x", "y"), ("f", "y", "z")]),
        {"x": k, "y": a3, "z": a2},
        {"e": unit_inclusion(a3), "f": generator_morphism(a3, a2, (0, 1))},
    )
    return out


def rooted(u: MonadQuiver) -> bool:
    q = u.quiver
    return all(q.minimum(c) is not None for c in q.components())


def random_element(m: QuiverModule, rng: random.Random):
    verts = [v for v in m.quiver.vertices if m.module(v).dim > 0] or list(m.quiver.vertices)
    v = rng.choice(verts)
    return v, random_vector(m.field, m.module(v).dim, rng)


def random_quiver_module(u: MonadQuiver, rng: random.Random, max_dim: int = 4) -> QuiverModule:
    """A quotient of a sum of ``ex_x`` of free modules, every vertex of dimension at most ``max_dim``."""
    verts = list(u.quiver.vertices)
    for _ in range(200):
        picks = rng.sample(verts, rng.randint(1, min(2, len(verts))))
        parts = [ex(u, x, random_module(u.algebra(x), rng, max_dim)) for x in picks]
        total = direct_sum_quiver(parts, u).module
        gens = {}
        for _ in range(rng.randint(0, 2)):
            v, vec = random_element(total, rng)
            gens.setdefault(v, []).append(vec)
        fam = generated_family(total, gens)
        quo = quotient_quiver_module(total, fam).target
        if all(d <= max_dim for d in quo.dims().values()) and (quo.total_dim() or _keep_zero(rng)):
            return quo
    return direct_sum_quiver([], u).module


def free_cartesian(u: MonadQuiver, n: int) -> QuiverModule:
    """``U_x G^(n)`` at every vertex with the canonical isos as structure maps."""
    mods = {v: em.free_module(u.algebra(v), n) for v in u.quiver.vertices}
    maps = {}
    for e in u.quiver.edges:
        iso = extend_free_check(u.edge_morphism[e.name], n)
        maps[e.name] = iso.morphism.map
    return QuiverModule(u, mods, maps)


def random_cartesian_module(u: MonadQuiver, rng: random.Random, max_dim: int = 4) -> QuiverModule:
    """A cartesian module: ``ex`` at the root for rooted posets, else a quotient of a free one."""
    from .cartesian import cartesian_hull

    for _ in range(200):
        if rooted(u) and rng.random() < 0.6:
            pieces = []
            for comp in u.quiver.components():
                r = u.quiver.minimum(comp)
                pieces.append(ex(u, r, random_module(u.algebra(r), rng, max_dim)))
            m = direct_sum_quiver(pieces, u).module
        else:
            m = free_cartesian(u, rng.randint(1, 2))
            if rng.random() < 0.7:
                v, vec = random_element(m, rng)
                hull = cartesian_hull(m, v, vec)
                m = quotient_quiver_module(m, hull.family).target
        if all(d <= max_dim for d in m.dims().values()) and (m.total_dim() or _keep_zero(rng)):
            return m
    return direct_sum_quiver([], u).module
