"""Cartesian modules: hulls of elements and the coherator on rooted posets.

The hull of an element is grown by a round-robin fixpoint.  Each step takes
an edge ``phi : y -> z`` and enlarges ``S_y`` until ``M^phi(phi^* S_y)``
contains ``S_z``: every basis vector of ``S_z`` is lifted through the
extended free cover ``phi^*(U_y G^(n)) -> M_z`` and the free summands the
lift touches are added to ``S_y``.  ``S_z`` is then replaced by the image and
the family is closed up to a subobject again.  In finite dimension the
ascending chain stops, and the stable family is cartesian on every edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import em
from .algebra import is_flat_morphism
from .change import extend_free_check, extend_map
from .linalg import LinearMap, rref_solve
from .quiver import (
    QuiverModule,
    QuiverMorphism,
    SubobjectFamily,
    generated_family,
    generated_subobject,
    is_cartesian,
    sub_quiver_module,
    transported_image,
    validate_quiver_morphism,
)
from .report import Check
from .vertex import ex, ex_ev_transpose


class PreconditionError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedShape(ValueError):
    pass


def _check_edge(m: QuiverModule, name: str):
    phi = m.monad_quiver.edge_morphism[name]
    if not is_flat_morphism(phi):
        raise PreconditionError(f"edge {name!r} is not flat", {"edge": name, "flat": False})
    if not m.edge_map[name].is_invertible():
        raise PreconditionError(f"structure map on {name!r} is not invertible", {"edge": name, "cartesian": False})


def _cover_through_edge(m: QuiverModule, name: str) -> LinearMap:
    """``B (x) k^n -> M_z``: the extended free cover of ``M_y`` followed by ``M^phi``."""
    u = m.monad_quiver
    e = u.quiver.edge(name)
    phi = u.edge_morphism[name]
    my = m.module(e.source)
    n = my.dim
    cover = em.evaluation_epimorphism(my)
    iso = extend_free_check(phi, n)
    if not iso.certified:
        raise PreconditionError("extension of a free module failed to certify")
    moved = extend_map(phi, cover.source, my, cover.map)
    return m.edge_map[name] @ moved @ iso.inverse


def edge_enlarge(m: QuiverModule, name: str, s: SubobjectFamily) -> SubobjectFamily:
    _check_edge(m, name)
    u = m.monad_quiver
    e = u.quiver.edge(name)
    y, z = e.source, e.target
    my = m.module(y)
    n = my.dim
    big = _cover_through_edge(m, name)
    touched = set()
    for vec in s[z].basis:
        sol = rref_solve(big, vec).solution
        if sol is None:
            raise PreconditionError(f"cover through {name!r} is not surjective")
        # basis of B (x) k^n is left-major: index a * n + j lies in summand j
        touched.update(idx % n for idx, c in enumerate(sol) if c != 0)
    new_y = s[y]
    if touched:
        gens = [[1 if i == j else 0 for i in range(n)] for j in sorted(touched)]
        new_y = new_y + em.generated_submodule(my, gens)
    img = transported_image(m, u.edge_arrow(name), new_y)
    spaces = dict(s.spaces)
    spaces[y] = new_y
    spaces[z] = img + s[z]
    return generated_family(m, spaces)


@dataclass
class HullResult:
    family: SubobjectFamily
    inclusion: QuiverMorphism
    sweeps: int

    @property
    def module(self) -> QuiverModule:
        return self.inclusion.source


def _check_preconditions(m: QuiverModule):
    u = m.monad_quiver
    if not u.is_poset:
        raise PreconditionError("cartesian hulls need a poset quiver")
    for e in u.quiver.edges:
        _check_edge(m, e.name)


def sweep_to_fixpoint(m: QuiverModule, s: SubobjectFamily, max_sweeps: int | None = None):
    edges = [e.name for e in m.quiver.edges]
    bound = m.total_dim() + 1 if max_sweeps is None else max_sweeps
    sweeps = 0
    while True:
        sweeps += 1
        before = s
        for name in edges:
            s = edge_enlarge(m, name, s)
        if s == before:
            return s, sweeps
        if sweeps >= bound:
            raise RuntimeError("hull sweep exceeded its termination bound")


def cartesian_hull(m: QuiverModule, x: str, zeta: Sequence) -> HullResult:
    _check_preconditions(m)
    start = generated_subobject(m, x, zeta)
    fam, sweeps = sweep_to_fixpoint(m, start)
    return HullResult(fam, sub_quiver_module(m, fam), sweeps)


def hull_decomposition(m: QuiverModule, spanning: Sequence | None = None) -> list[HullResult]:
    """Hulls of a spanning set whose per-vertex sum is all of ``m``.

    By default the standard basis vectors are used in topological order of
    the vertices, skipping any already covered by earlier hulls.
    """
    _check_preconditions(m)
    if spanning is None:
        order = m.quiver.topological_order()
        spanning = []
        for v in order:
            d = m.module(v).dim
            spanning.extend((v, tuple(1 if i == j else 0 for i in range(d))) for j in range(d))
    hulls = []
    covered = SubobjectFamily.zero(m)
    for v, vec in spanning:
        if covered[v].contains(vec):
            continue
        h = cartesian_hull(m, v, vec)
        hulls.append(h)
        covered = covered + h.family
    return hulls


def hull_sum(m: QuiverModule, hulls: Sequence[HullResult]) -> SubobjectFamily:
    out = SubobjectFamily.zero(m)
    for h in hulls:
        out = out + h.family
    return out


# ---------------------------------------------------------------------------
# coherator


@dataclass
class CoheratorResult:
    module: QuiverModule
    counit: QuiverMorphism
    roots: dict


def component_roots(m: QuiverModule) -> dict:
    q = m.quiver
    roots = {}
    for comp in q.components():
        r = q.minimum(comp)
        if r is None:
            raise UnsupportedShape("unsupported: component without minimum")
        roots[r] = comp
    return roots


def coherator(m: QuiverModule) -> CoheratorResult:
    """Right adjoint to the inclusion of cartesian modules, on rooted posets.

    Each connected component with minimum ``r`` contributes ``ex_r(M_r)``;
    the counit is the transpose of the identity of ``M_r``.
    """
    u = m.monad_quiver
    if not u.is_poset:
        raise UnsupportedShape("unsupported: coherator needs a poset quiver")
    roots = component_roots(m)
    field = u.field
    mods, maps, counit = {}, {}, {}
    for r, comp in roots.items():
        piece = ex(u, r, m.module(r))
        eps = ex_ev_transpose("to_quiver", u, r, m.module(r), m,
                              LinearMap.identity(field, m.module(r).dim))
        for v in comp:
            mods[v] = piece.module(v)
            counit[v] = eps.components[v]
        for e in u.quiver.edges:
            if e.source in comp:
                maps[e.name] = piece.edge_map[e.name]
    q_mod = QuiverModule(u, mods, maps)
    return CoheratorResult(q_mod, QuiverMorphism(q_mod, m, counit), roots)


def coherator_universal_check(n: QuiverModule, f: QuiverMorphism, result: CoheratorResult) -> QuiverMorphism:
    """The unique ``g : N -> Q(M)`` with ``counit o g = f``, for cartesian ``N``."""
    if not is_cartesian(n):
        raise PreconditionError("source must be cartesian")
    u = n.monad_quiver
    qm = result.module
    comps = {}
    for r, comp in result.roots.items():
        fr = f.components[r]
        for v in comp:
            if v == r:
                comps[v] = fr
                continue
            arr = u.arrow(r, v)
            moved = extend_map(arr.morphism, n.module(r), qm.module(r), fr)
            comps[v] = qm.structure_map(arr) @ moved @ n.structure_map(arr).inverse()
    g = QuiverMorphism(n, qm, comps)
    if not validate_quiver_morphism(g):
        raise ValueError("factorization is not a morphism")
    if g.then(result.counit).components != f.components:
        raise ValueError("factorization does not reproduce the morphism")
    return g


def certify_iso(xi: QuiverMorphism) -> Check:
    bad = [v for v, c in xi.components.items() if not c.is_invertible()]
    if bad or not validate_quiver_morphism(xi):
        return Check(False, "iso", witness={"vertices": bad})
    return Check(True, "iso")
