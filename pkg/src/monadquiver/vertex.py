"""Extension, evaluation and coextension at a vertex of a poset monad quiver."""

from __future__ import annotations

from dataclasses import dataclass

from . import em
from .change import adjoint_transpose_scalars, comparison, extend, extend_map, restrict
from .em import ModuleMorphism, ModuleObject
from .linalg import DimensionError, LinearMap, solve
from .quiver import (
    MonadQuiver,
    NotAPosetError,
    QuiverModule,
    QuiverMorphism,
    direct_sum_quiver,
    validate_quiver_morphism,
)
from .report import Check


def _require_poset(u: MonadQuiver):
    if not u.is_poset:
        raise NotAPosetError("vertex functors need a poset quiver")


def _require_vertex(u: MonadQuiver, x: str):
    if x not in u.quiver.vertices:
        raise KeyError(f"unknown vertex {x!r}")


def ex(u: MonadQuiver, x: str, m: ModuleObject) -> QuiverModule:
    """``ex_x(M)``: ``psi^* M`` above ``x``, zero elsewhere; edge maps are the canonical isos."""
    _require_poset(u)
    _require_vertex(u, x)
    if m.algebra != u.algebra(x):
        raise DimensionError("module is not over the algebra at the vertex")
    field = u.field
    q = u.quiver
    mods = {}
    for y in q.vertices:
        if y == x:
            mods[y] = m
        elif q.leq(x, y):
            mods[y] = extend(u.arrow(x, y).morphism, m).module
        else:
            mods[y] = em.zero_module(u.algebra(y))
    maps = {}
    for e in q.edges:
        phi = u.edge_morphism[e.name]
        src_dim = extend(phi, mods[e.source]).module.dim
        tgt_dim = mods[e.target].dim
        if not q.leq(x, e.source):
            maps[e.name] = LinearMap.zero(field, tgt_dim, src_dim)
        elif e.source == x:
            maps[e.name] = LinearMap.identity(field, tgt_dim)
        else:
            psi = u.arrow(x, e.source).morphism
            cmp_ = comparison(psi, phi, m)
            if not cmp_.certified:
                raise ValueError(f"comparison iso along {e.name!r} failed to certify")
            maps[e.name] = cmp_.inverse
    return QuiverModule(u, mods, maps)


def ev(x: str, m: QuiverModule) -> ModuleObject:
    return m.module(x)


def ev_morphism(x: str, xi: QuiverMorphism) -> ModuleMorphism:
    return ModuleMorphism(xi.source.module(x), xi.target.module(x), xi.components[x])


def ex_morphism(u: MonadQuiver, x: str, g: ModuleMorphism) -> QuiverMorphism:
    src, tgt = ex(u, x, g.source), ex(u, x, g.target)
    comps = {}
    for y in u.quiver.vertices:
        if y == x:
            comps[y] = g.map
        elif u.quiver.leq(x, y):
            comps[y] = extend_map(u.arrow(x, y).morphism, g.source, g.target, g.map)
        else:
            comps[y] = LinearMap.zero(u.field, 0, 0)
    return QuiverMorphism(src, tgt, comps)


def coe(u: MonadQuiver, x: str, m: ModuleObject) -> QuiverModule:
    """``coe_x(M)``: ``psi_* M`` below ``x``, zero elsewhere."""
    _require_poset(u)
    _require_vertex(u, x)
    if m.algebra != u.algebra(x):
        raise DimensionError("module is not over the algebra at the vertex")
    field = u.field
    q = u.quiver
    mods = {}
    for y in q.vertices:
        if y == x:
            mods[y] = m
        elif q.leq(y, x):
            mods[y] = restrict(u.arrow(y, x).morphism, m)
        else:
            mods[y] = em.zero_module(u.algebra(y))
    maps = {}
    for e in q.edges:
        phi = u.edge_morphism[e.name]
        src = mods[e.source]
        src_dim = extend(phi, src).module.dim
        if not q.leq(e.target, x):
            maps[e.name] = LinearMap.zero(field, mods[e.target].dim, src_dim)
            continue
        # identity in adjoint form, transposed to the extension side
        ident = LinearMap.identity(field, m.dim)
        maps[e.name] = adjoint_transpose_scalars("to_extension", phi, src, mods[e.target], ident)
    return QuiverModule(u, mods, maps)


def ex_ev_transpose(direction: str, u: MonadQuiver, x: str, m: ModuleObject, p: QuiverModule, f):
    """Transpose across ``Hom(ex_x M, P) = Hom_x(M, P_x)``.

    ``to_quiver`` takes ``f : M -> P_x`` to ``xi^f`` with components
    ``P^psi o psi^*(f)``; ``to_vertex`` takes ``xi`` to its component at ``x``.
    """
    if direction == "to_vertex":
        if not validate_quiver_morphism(f):
            raise ValueError("input is not a morphism of quiver modules")
        return f.components[x]
    if direction != "to_quiver":
        raise ValueError(f"unknown direction {direction!r}")
    if not em.is_equivariant(m, p.module(x), f):
        raise ValueError("input is not a module morphism at the vertex")
    source = ex(u, x, m)
    comps = {}
    for y in u.quiver.vertices:
        if y == x:
            comps[y] = f
        elif u.quiver.leq(x, y):
            arr = u.arrow(x, y)
            comps[y] = p.structure_map(arr) @ extend_map(arr.morphism, m, p.module(x), f)
        else:
            comps[y] = LinearMap.zero(u.field, p.module(y).dim, 0)
    return QuiverMorphism(source, p, comps)


def ev_coe_transpose(direction: str, u: MonadQuiver, x: str, p: QuiverModule, m: ModuleObject, g):
    """Transpose across ``Hom_x(P_x, M) = Hom(P, coe_x M)``.

    ``to_quiver`` takes ``g : P_x -> M`` to the morphism with components
    ``g o P_psi`` (the adjoint form of the structure map); ``to_vertex``
    takes a morphism to its component at ``x``.
    """
    if direction == "to_vertex":
        if not validate_quiver_morphism(g):
            raise ValueError("input is not a morphism of quiver modules")
        return g.components[x]
    if direction != "to_quiver":
        raise ValueError(f"unknown direction {direction!r}")
    if not em.is_equivariant(p.module(x), m, g):
        raise ValueError("input is not a module morphism at the vertex")
    target = coe(u, x, m)
    comps = {}
    for y in u.quiver.vertices:
        if y == x:
            comps[y] = g
        elif u.quiver.leq(y, x):
            arr = u.arrow(y, x)
            adjoint = p.structure_map(arr) @ extend(arr.morphism, p.module(y)).unit
            comps[y] = g @ adjoint
        else:
            comps[y] = LinearMap.zero(u.field, 0, p.module(y).dim)
    return QuiverMorphism(p, target, comps)


def adjunction_checks(kind: str, u: MonadQuiver, x: str, m: ModuleObject, p: QuiverModule,
                      vertex_maps=None, quiver_maps=None) -> Check:
    """Round-trip both transpositions and compare hom-space dimensions.

    ``kind`` is ``ex_ev`` (``m`` the source at ``x``, ``p`` the target) or
    ``ev_coe`` (``p`` the source, ``m`` the target at ``x``).
    """
    from .quiver import hom_space

    if kind == "ex_ev":
        vertex_side = em.hom_space(m, p.module(x))
        quiver_side = hom_space(ex(u, x, m), p)
        to_q = lambda f: ex_ev_transpose("to_quiver", u, x, m, p, f)
        to_v = lambda xi: ex_ev_transpose("to_vertex", u, x, m, p, xi)
    elif kind == "ev_coe":
        vertex_side = em.hom_space(p.module(x), m)
        quiver_side = hom_space(p, coe(u, x, m))
        to_q = lambda g: ev_coe_transpose("to_quiver", u, x, p, m, g)
        to_v = lambda xi: ev_coe_transpose("to_vertex", u, x, p, m, xi)
    else:
        raise ValueError(f"unknown adjunction {kind!r}")
    payload = {"vertex_hom_dim": len(vertex_side), "quiver_hom_dim": len(quiver_side)}
    for f in list(vertex_side) + list(vertex_maps or []):
        xi = to_q(f)
        if not validate_quiver_morphism(xi):
            return Check(False, kind, witness="transpose is not a morphism", payload=payload)
        if to_v(xi) != f:
            return Check(False, kind, witness="vertex round trip", payload=payload)
    for xi in list(quiver_side) + list(quiver_maps or []):
        if to_q(to_v(xi)).components != xi.components:
            return Check(False, kind, witness="quiver round trip", payload=payload)
    if len(vertex_side) != len(quiver_side):
        return Check(False, kind, witness="hom dimensions differ", payload=payload)
    return Check(True, kind, payload=payload)


@dataclass
class Cover:
    module: QuiverModule
    morphism: QuiverMorphism
    summands: list
    surjective: bool


def projective_cover(m: QuiverModule) -> Cover:
    """Epimorphism onto ``m`` from ``(+)_x ex_x(U_x G^(dim M_x))``."""
    u = m.monad_quiver
    _require_poset(u)
    summands, maps = [], []
    for x in u.quiver.vertices:
        n = m.module(x).dim
        if n == 0:
            continue
        a = u.algebra(x)
        free = em.free_module(a, n)
        f = em.evaluation_epimorphism(m.module(x)).map
        summands.append((x, n))
        maps.append(ex_ev_transpose("to_quiver", u, x, free, m, f))
    ds = direct_sum_quiver([xi.source for xi in maps], u)
    comps = {}
    for v in u.quiver.vertices:
        total = LinearMap.zero(u.field, m.module(v).dim, ds.module.module(v).dim)
        for xi, pr in zip(maps, ds.projections):
            total = total + xi.components[v] @ pr.components[v]
        comps[v] = total
    mor = QuiverMorphism(ds.module, m, comps)
    surjective = all(comps[v].rank() == m.module(v).dim for v in u.quiver.vertices)
    return Cover(ds.module, mor, summands, surjective)


def lifting_check(p: QuiverMorphism, f: QuiverMorphism, x: str, n: int) -> QuiverMorphism:
    """Lift ``f : ex_x(U_x G^(n)) -> M`` through the epimorphism ``p : N -> M``."""
    u = p.source.monad_quiver
    a = u.algebra(x)
    free = em.free_module(a, n)
    fx = ex_ev_transpose("to_vertex", u, x, free, f.target, f)
    v = em.adjoint_transpose("to_linear", a, n, f.target.module(x), fx)
    w = solve(p.components[x], v)
    if w is None:
        raise ValueError(f"no lift at vertex {x!r}: the map is not an epimorphism there")
    gx = em.adjoint_transpose("to_module", a, n, p.source.module(x), w).map
    g = ex_ev_transpose("to_quiver", u, x, free, p.source, gx)
    if g.then(p).components != f.components:
        raise ValueError("lift does not reproduce the morphism")
    return g
