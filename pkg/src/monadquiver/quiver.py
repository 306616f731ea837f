"""Monad quivers and their modules.

A quiver with no parallel edges is read as a poset: between two vertices
there is at most one morphism, and a module must give the same structure
map along every path (the cocycle condition).  A quiver with parallel edges
is read as the free category on it; paths are then distinct morphisms and
the cocycle condition is vacuous.

A module stores one matrix ``M^e : e^* M_x -> M_y`` per edge ``e : x -> y``,
written against the normative basis of :func:`monadquiver.change.extend`.
Structure maps along longer paths are composed on demand and cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian_product
from typing import Iterable, Mapping, Sequence

from . import em
from .algebra import AlgebraMorphism, FDAlgebra, identity_morphism, is_flat_morphism, validate_algebra, validate_morphism
from .change import comparison, extend, extend_map, extension_direct_sum_comparison
from .em import ModuleMorphism, ModuleObject, validate_module
from .linalg import DimensionError, LinearMap, Subspace, block_diag, solve, solve_right
from .report import Check


class CyclicQuiverError(ValueError):
    pass


class NotAPosetError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices: Iterable[str], edges: Iterable):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        es = []
        for e in edges:
            e = e if isinstance(e, Edge) else Edge(*e)
            if e.source not in self.vertices or e.target not in self.vertices:
                raise ValueError(f"edge {e.name!r} has an unknown endpoint")
            es.append(e)
        self.edges = tuple(es)
        if len({e.name for e in self.edges}) != len(self.edges):
            raise ValueError("duplicate edge names")
        self._by_name = {e.name: e for e in self.edges}
        self._paths: dict = {}

    def __repr__(self):
        return f"Quiver({list(self.vertices)}, {[(e.name, e.source, e.target) for e in self.edges]})"

    def edge(self, name: str) -> Edge:
        return self._by_name[name]

    def out_edges(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.source == v]

    def in_edges(self, v: str) -> list[Edge]:
        return [e for e in self.edges if e.target == v]

    def topological_order(self) -> list[str]:
        indeg = {v: 0 for v in self.vertices}
        for e in self.edges:
            indeg[e.target] += 1
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for e in self.out_edges(v):
                indeg[e.target] -= 1
                if indeg[e.target] == 0:
                    ready.append(e.target)
        if len(order) != len(self.vertices):
            raise CyclicQuiverError("quiver has a directed cycle")
        return order

    def find_cycle(self) -> list[str] | None:
        try:
            self.topological_order()
            return None
        except CyclicQuiverError:
            pass
        color = {v: 0 for v in self.vertices}
        stack: list[str] = []

        def visit(v):
            color[v] = 1
            stack.append(v)
            for e in self.out_edges(v):
                if color[e.target] == 1:
                    return stack[stack.index(e.target):] + [e.target]
                if color[e.target] == 0:
                    found = visit(e.target)
                    if found:
                        return found
            stack.pop()
            color[v] = 2
            return None

        for v in self.vertices:
            if color[v] == 0:
                found = visit(v)
                if found:
                    return found
        return None

    @property
    def is_acyclic(self) -> bool:
        return self.find_cycle() is None

    @property
    def has_parallel_edges(self) -> bool:
        pairs = [(e.source, e.target) for e in self.edges]
        return len(set(pairs)) != len(pairs)

    @property
    def is_poset(self) -> bool:
        return self.is_acyclic and not self.has_parallel_edges

    def paths(self, x: str, y: str) -> list[tuple[str, ...]]:
        """All directed paths from ``x`` to ``y``, shortest first, then by edge order."""
        key = (x, y)
        if key not in self._paths:
            self.topological_order()
            found = []

            def walk(v, path):
                if v == y:
                    found.append(tuple(path))
                    return
                for e in self.out_edges(v):
                    walk(e.target, path + [e.name])

            walk(x, [])
            index = {e.name: i for i, e in enumerate(self.edges)}
            found.sort(key=lambda p: (len(p), [index[n] for n in p]))
            self._paths[key] = found
        return self._paths[key]

    def leq(self, x: str, y: str) -> bool:
        return bool(self.paths(x, y))

    def comparable_pairs(self) -> list[tuple[str, str]]:
        return [(x, y) for x in self.vertices for y in self.vertices if x != y and self.leq(x, y)]

    def components(self) -> list[list[str]]:
        seen: set = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp, todo = [], [v]
            seen.add(v)
            while todo:
                w = todo.pop()
                comp.append(w)
                for e in self.edges:
                    for a, b in ((e.source, e.target), (e.target, e.source)):
                        if a == w and b not in seen:
                            seen.add(b)
                            todo.append(b)
            comps.append([u for u in self.vertices if u in set(comp)])
        return comps

    def minimum(self, component: Sequence[str]) -> str | None:
        for r in component:
            if all(self.leq(r, v) for v in component):
                return r
        return None


@dataclass(frozen=True)
class Arrow:
    """A morphism of the quiver category, given by a path of edge names."""

    source: str
    target: str
    path: tuple[str, ...]
    morphism: AlgebraMorphism

    @property
    def is_identity(self) -> bool:
        return not self.path


class MonadQuiver:
    def __init__(self, quiver: Quiver, vertex_algebra: Mapping[str, FDAlgebra],
                 edge_morphism: Mapping[str, AlgebraMorphism]):
        self.quiver = quiver
        self.vertex_algebra = dict(vertex_algebra)
        self.edge_morphism = dict(edge_morphism)
        missing = set(quiver.vertices) - set(self.vertex_algebra)
        if missing:
            raise ValueError(f"no algebra at vertices {sorted(missing)}")
        missing = {e.name for e in quiver.edges} - set(self.edge_morphism)
        if missing:
            raise ValueError(f"no morphism on edges {sorted(missing)}")
        fields = {a.field for a in self.vertex_algebra.values()}
        if len(fields) != 1:
            raise DimensionError("all vertex algebras must share one field")
        self.field = fields.pop()
        for e in quiver.edges:
            phi = self.edge_morphism[e.name]
            if phi.source != self.vertex_algebra[e.source] or phi.target != self.vertex_algebra[e.target]:
                raise DimensionError(f"morphism on edge {e.name!r} does not match the vertex algebras")

    @property
    def is_poset(self) -> bool:
        return self.quiver.is_poset

    def algebra(self, x: str) -> FDAlgebra:
        return self.vertex_algebra[x]

    def path_morphism(self, x: str, path: Sequence[str]) -> AlgebraMorphism:
        phi = identity_morphism(self.vertex_algebra[x])
        for name in path:
            phi = phi.then(self.edge_morphism[name])
        return phi

    def edge_arrow(self, name: str) -> Arrow:
        e = self.quiver.edge(name)
        return Arrow(e.source, e.target, (name,), self.edge_morphism[name])

    def arrows(self, x: str, y: str) -> list[Arrow]:
        """The morphisms ``x -> y``: at most one for posets, every path otherwise."""
        paths = self.quiver.paths(x, y)
        if self.is_poset:
            paths = paths[:1]
        return [Arrow(x, y, p, self.path_morphism(x, p)) for p in paths]

    def arrow(self, x: str, y: str) -> Arrow | None:
        if not self.is_poset:
            raise NotAPosetError("unique arrows exist only on poset quivers")
        arr = self.arrows(x, y)
        return arr[0] if arr else None


def validate_quiver_and_monadquiver(u: MonadQuiver) -> Check:
    q = u.quiver
    cycle = q.find_cycle()
    if cycle:
        return Check(False, "acyclic", witness={"cycle": cycle})
    for v in q.vertices:
        chk = validate_algebra(u.vertex_algebra[v])
        if not chk:
            return Check(False, "algebra", witness={"vertex": v, "failure": chk.name, "triple": chk.witness})
    flat = {}
    for e in q.edges:
        chk = validate_morphism(u.edge_morphism[e.name])
        if not chk:
            return Check(False, "morphism", witness={"edge": e.name, "failure": chk.name, "at": chk.witness})
        flat[e.name] = is_flat_morphism(u.edge_morphism[e.name])
    if u.is_poset:
        for x, y in q.comparable_pairs():
            paths = q.paths(x, y)
            ref = u.path_morphism(x, paths[0])
            for p in paths[1:]:
                if u.path_morphism(x, p).matrix != ref.matrix:
                    return Check(False, "path independence",
                                 witness={"source": x, "target": y, "paths": [list(paths[0]), list(p)]},
                                 payload={"flat": flat})
    return Check(True, "monad quiver", payload={"flat": flat, "poset": u.is_poset})


# ---------------------------------------------------------------------------
# modules


class QuiverModule:
    def __init__(self, monad_quiver: MonadQuiver, vertex_module: Mapping[str, ModuleObject],
                 edge_map: Mapping[str, LinearMap]):
        self.monad_quiver = monad_quiver
        self.vertex_module = dict(vertex_module)
        self.edge_map = dict(edge_map)
        q = monad_quiver.quiver
        for v in q.vertices:
            if v not in self.vertex_module:
                raise ValueError(f"no module at vertex {v!r}")
            if self.vertex_module[v].algebra != monad_quiver.algebra(v):
                raise DimensionError(f"module at {v!r} is over the wrong algebra")
        for e in q.edges:
            if e.name not in self.edge_map:
                raise ValueError(f"no structure map on edge {e.name!r}")
            expected = self.edge_shape(e.name)
            if self.edge_map[e.name].shape != expected:
                raise DimensionError(
                    f"edge map {e.name!r} has shape {self.edge_map[e.name].shape}; the extension "
                    f"basis along it has dimension {expected[1]}, so {expected} is required"
                )
        self._cache: dict = {}

    @property
    def quiver(self) -> Quiver:
        return self.monad_quiver.quiver

    @property
    def field(self):
        return self.monad_quiver.field

    def module(self, x: str) -> ModuleObject:
        return self.vertex_module[x]

    def dims(self) -> dict[str, int]:
        return {v: self.vertex_module[v].dim for v in self.quiver.vertices}

    def total_dim(self) -> int:
        return sum(self.dims().values())

    def edge_shape(self, name: str) -> tuple[int, int]:
        e = self.quiver.edge(name)
        src = extend(self.monad_quiver.edge_morphism[name], self.vertex_module[e.source]).module
        return (self.vertex_module[e.target].dim, src.dim)

    def structure_map(self, arrow: Arrow) -> LinearMap:
        """``M^psi : psi^* M_x -> M_y`` in the basis of ``extend(psi, M_x)``."""
        if arrow.is_identity:
            return LinearMap.identity(self.field, self.vertex_module[arrow.source].dim)
        key = (arrow.source, arrow.path)
        if key not in self._cache:
            self._cache[key] = self._compose_along(arrow.source, arrow.path)
        return self._cache[key]

    def _compose_along(self, x: str, path: tuple[str, ...]) -> LinearMap:
        u = self.monad_quiver
        if len(path) == 1:
            return self.edge_map[path[0]]
        head, last = path[:-1], path[-1]
        phi = u.path_morphism(x, head)
        psi = u.edge_morphism[last]
        mx = self.vertex_module[x]
        mid = u.quiver.edge(last).source
        inner = self._compose_along(x, head)
        comp = comparison(phi, psi, mx)
        transported = extend_map(psi, extend(phi, mx).module, self.vertex_module[mid], inner)
        return self.edge_map[last] @ transported @ comp.morphism.map

    def transport(self, x: str, y: str) -> LinearMap:
        arr = self.monad_quiver.arrow(x, y)
        if arr is None:
            raise ValueError(f"{x!r} is not below {y!r}")
        return self.structure_map(arr)

    def adjoint_form(self, name: str) -> LinearMap:
        """``M_e : M_x -> e_* M_y``, the transpose of ``M^e``."""
        e = self.quiver.edge(name)
        ext = extend(self.monad_quiver.edge_morphism[name], self.vertex_module[e.source])
        return self.edge_map[name] @ ext.unit

    def __eq__(self, other):
        if not isinstance(other, QuiverModule):
            return NotImplemented
        return (self.quiver is other.quiver or (
            self.quiver.vertices == other.quiver.vertices and self.quiver.edges == other.quiver.edges)) \
            and self.vertex_module == other.vertex_module and self.edge_map == other.edge_map

    def __hash__(self):
        return hash((self.quiver.vertices, tuple(sorted(self.edge_map.items()))))

    def __repr__(self):
        return f"QuiverModule(dims={self.dims()})"


def zero_quiver_module(u: MonadQuiver) -> QuiverModule:
    mods = {v: em.zero_module(u.algebra(v)) for v in u.quiver.vertices}
    maps = {e.name: LinearMap.zero(u.field, 0, 0) for e in u.quiver.edges}
    return QuiverModule(u, mods, maps)


def validate_umodule(m: QuiverModule) -> Check:
    u = m.monad_quiver
    q = u.quiver
    for v in q.vertices:
        chk = validate_module(m.module(v))
        if not chk:
            return Check(False, "vertex module", witness={"vertex": v, "failure": chk.name, "at": chk.witness})
    for e in q.edges:
        phi = u.edge_morphism[e.name]
        ext = extend(phi, m.module(e.source)).module
        if not em.is_equivariant(ext, m.module(e.target), m.edge_map[e.name]):
            return Check(False, "equivariance", witness={"edge": e.name})
        from .change import adjoint_transpose_scalars
        adj = adjoint_transpose_scalars("to_restriction", phi, m.module(e.source), m.module(e.target),
                                        m.edge_map[e.name])
        back = adjoint_transpose_scalars("to_extension", phi, m.module(e.source), m.module(e.target), adj)
        if back != m.edge_map[e.name]:
            return Check(False, "adjoint form", witness={"edge": e.name})
    if u.is_poset:
        for x, y in q.comparable_pairs():
            arrows = [Arrow(x, y, p, u.path_morphism(x, p)) for p in q.paths(x, y)]
            ref = m.structure_map(arrows[0])
            for a in arrows[1:]:
                if m.structure_map(a) != ref:
                    return Check(False, "cocycle",
                                 witness={"source": x, "target": y, "paths": [list(arrows[0].path), list(a.path)]})
    return Check(True, "module over monad quiver")


@dataclass
class QuiverMorphism:
    source: QuiverModule
    target: QuiverModule
    components: dict

    def component(self, x: str) -> LinearMap:
        return self.components[x]

    def then(self, other: "QuiverMorphism") -> "QuiverMorphism":
        return QuiverMorphism(self.source, other.target,
                              {v: other.components[v] @ self.components[v] for v in self.components})

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components.values())

    def __eq__(self, other):
        return isinstance(other, QuiverMorphism) and self.components == other.components \
            and self.source == other.source and self.target == other.target


def validate_quiver_morphism(xi: QuiverMorphism) -> Check:
    m, n = xi.source, xi.target
    u = m.monad_quiver
    for v in u.quiver.vertices:
        c = xi.components[v]
        if c.shape != (n.module(v).dim, m.module(v).dim):
            return Check(False, "shape", witness={"vertex": v})
        if not em.is_equivariant(m.module(v), n.module(v), c):
            return Check(False, "equivariance", witness={"vertex": v})
    for e in u.quiver.edges:
        phi = u.edge_morphism[e.name]
        lhs = n.edge_map[e.name] @ extend_map(phi, m.module(e.source), n.module(e.source), xi.components[e.source])
        rhs = xi.components[e.target] @ m.edge_map[e.name]
        if lhs != rhs:
            return Check(False, "edge compatibility", witness={"edge": e.name})
    return Check(True, "quiver module morphism")


def identity_morphism_of(m: QuiverModule) -> QuiverMorphism:
    return QuiverMorphism(m, m, {v: LinearMap.identity(m.field, d) for v, d in m.dims().items()})


def zero_morphism(m: QuiverModule, n: QuiverModule) -> QuiverMorphism:
    return QuiverMorphism(m, n, {v: LinearMap.zero(m.field, n.module(v).dim, m.module(v).dim)
                                 for v in m.quiver.vertices})


def _unknown_layout(m: QuiverModule, n: QuiverModule):
    layout, off = {}, 0
    for v in m.quiver.vertices:
        r, c = n.module(v).dim, m.module(v).dim
        layout[v] = (off, r, c)
        off += r * c
    return layout, off


def hom_space(m: QuiverModule, n: QuiverModule) -> list[QuiverMorphism]:
    """A basis of ``Hom(M, N)`` in ``Mod-U``, solved as one linear system."""
    field = m.field
    u = m.monad_quiver
    layout, total = _unknown_layout(m, n)

    def unpack(vec):
        out = {}
        for v, (off, r, c) in layout.items():
            out[v] = LinearMap(field, r, c, tuple(tuple(vec[off + i * c: off + (i + 1) * c]) for i in range(r)))
        return out

    def residual(comps):
        res = []
        for v in u.quiver.vertices:
            g = comps[v]
            for i in range(u.algebra(v).dim):
                d = n.module(v).rho(i) @ g - g @ m.module(v).rho(i)
                res.extend(a for row in d.entries for a in row)
        for e in u.quiver.edges:
            phi = u.edge_morphism[e.name]
            d = n.edge_map[e.name] @ extend_map(phi, m.module(e.source), n.module(e.source), comps[e.source]) \
                - comps[e.target] @ m.edge_map[e.name]
            res.extend(a for row in d.entries for a in row)
        return res

    cols = []
    for k in range(total):
        vec = [field.zero] * total
        vec[k] = field.one
        cols.append(residual(unpack(vec)))
    if total == 0:
        return []
    nrows = len(cols[0])
    system = LinearMap.from_columns(field, cols, nrows)
    return [QuiverMorphism(m, n, unpack(v)) for v in system.kernel().basis]


def enumerate_homs(m: QuiverModule, n: QuiverModule):
    """Every morphism ``M -> N`` by brute force over all component matrices (finite fields)."""
    field = m.field
    layout, total = _unknown_layout(m, n)
    for flat in cartesian_product(field.elements(), repeat=total):
        comps = {}
        for v, (off, r, c) in layout.items():
            comps[v] = LinearMap(field, r, c, tuple(tuple(flat[off + i * c: off + (i + 1) * c]) for i in range(r)))
        xi = QuiverMorphism(m, n, comps)
        if validate_quiver_morphism(xi):
            yield xi


# ---------------------------------------------------------------------------
# subobjects


class SubobjectFamily:
    """Per-vertex action-closed subspaces ``S_x`` of ``M_x``."""

    def __init__(self, spaces: Mapping[str, Subspace]):
        self.spaces = dict(spaces)

    def __getitem__(self, v: str) -> Subspace:
        return self.spaces[v]

    def __eq__(self, other):
        return isinstance(other, SubobjectFamily) and self.spaces == other.spaces

    def __le__(self, other: "SubobjectFamily") -> bool:
        return all(other.spaces[v].contains(s) for v, s in self.spaces.items())

    def __add__(self, other: "SubobjectFamily") -> "SubobjectFamily":
        return SubobjectFamily({v: s + other.spaces[v] for v, s in self.spaces.items()})

    def dims(self) -> dict[str, int]:
        return {v: s.dim for v, s in self.spaces.items()}

    def total_dim(self) -> int:
        return sum(s.dim for s in self.spaces.values())

    def __repr__(self):
        return f"SubobjectFamily(dims={self.dims()})"

    @classmethod
    def zero(cls, m: QuiverModule) -> "SubobjectFamily":
        return cls({v: Subspace.zero(m.field, d) for v, d in m.dims().items()})

    @classmethod
    def full(cls, m: QuiverModule) -> "SubobjectFamily":
        return cls({v: Subspace.full(m.field, d) for v, d in m.dims().items()})


def transported_image(m: QuiverModule, arrow: Arrow, s: Subspace) -> Subspace:
    """Image of ``psi^* S -> psi^* M_x -> M_y`` for an action-closed ``S`` in ``M_x``."""
    if arrow.is_identity:
        return s
    mx = m.module(arrow.source)
    inc = em.submodule(mx, s)
    moved = m.structure_map(arrow) @ extend_map(arrow.morphism, inc.source, mx, inc.map)
    return moved.image()


def check_subobject_family(m: QuiverModule, s: SubobjectFamily) -> Check:
    for v in m.quiver.vertices:
        if not em.is_action_closed(m.module(v), s[v]):
            return Check(False, "action closed", witness={"vertex": v})
    for e in m.quiver.edges:
        img = transported_image(m, m.monad_quiver.edge_arrow(e.name), s[e.source])
        if not s[e.target].contains(img):
            return Check(False, "edge closed", witness={"edge": e.name})
    return Check(True, "subobject family")


def generated_subobject(m: QuiverModule, x: str, zeta: Sequence) -> SubobjectFamily:
    """The subobject generated by one element ``zeta`` of ``M_x``.

    ``P_y`` is the sum over arrows ``psi : x -> y`` of the images of
    ``psi^*(a |-> a.zeta)`` followed by ``M^psi``; it is zero when there is no
    arrow.
    """
    u = m.monad_quiver
    if x not in u.quiver.vertices:
        raise KeyError(f"unknown vertex {x!r}")
    mx = m.module(x)
    if len(zeta) != mx.dim:
        raise DimensionError("element has the wrong length")
    ax = u.algebra(x)
    zhat = em.adjoint_transpose("to_module", ax, 1, mx,
                                LinearMap.from_columns(m.field, [zeta], mx.dim))
    spaces = {}
    for y in u.quiver.vertices:
        total = Subspace.zero(m.field, m.module(y).dim)
        for arr in u.arrows(x, y):
            if arr.is_identity:
                img = zhat.map.image()
            else:
                moved = m.structure_map(arr) @ extend_map(arr.morphism, zhat.source, mx, zhat.map)
                img = moved.image()
            total = total + img
        spaces[y] = total
    return SubobjectFamily(spaces)


def generated_family(m: QuiverModule, s: Mapping[str, Subspace | Sequence]) -> SubobjectFamily:
    """Smallest subobject family containing the given subspaces (or vector lists)."""
    out = SubobjectFamily.zero(m)
    for v, vecs in s.items():
        vecs = vecs.basis if isinstance(vecs, Subspace) else vecs
        for vec in vecs:
            out = out + generated_subobject(m, v, vec)
    return out


def sub_quiver_module(m: QuiverModule, s: SubobjectFamily) -> QuiverMorphism:
    """The subobject as a module in its own right, with its inclusion into ``m``."""
    u = m.monad_quiver
    incs = {v: em.submodule(m.module(v), s[v]) for v in u.quiver.vertices}
    maps = {}
    for e in u.quiver.edges:
        phi = u.edge_morphism[e.name]
        src = incs[e.source]
        rhs = m.edge_map[e.name] @ extend_map(phi, src.source, m.module(e.source), src.map)
        sol = solve(incs[e.target].map, rhs)
        if sol is None:
            raise ValueError(f"family is not closed along edge {e.name!r}")
        maps[e.name] = sol
    p = QuiverModule(u, {v: i.source for v, i in incs.items()}, maps)
    return QuiverMorphism(p, m, {v: i.map for v, i in incs.items()})


def quotient_quiver_module(m: QuiverModule, s: SubobjectFamily) -> QuiverMorphism:
    return pointwise_cokernel(sub_quiver_module(m, s))


class KernelRefused(ValueError):
    pass


def pointwise_kernel(xi: QuiverMorphism) -> QuiverMorphism:
    """Kernel with induced edge maps; refuses (with a witness) if an edge map cannot be induced."""
    m = xi.source
    u = m.monad_quiver
    incs = {v: em.kernel(ModuleMorphism(m.module(v), xi.target.module(v), xi.components[v]))
            for v in u.quiver.vertices}
    maps = {}
    for e in u.quiver.edges:
        phi = u.edge_morphism[e.name]
        src = incs[e.source]
        rhs = m.edge_map[e.name] @ extend_map(phi, src.source, m.module(e.source), src.map)
        sol = solve(incs[e.target].map, rhs)
        if sol is None:
            raise KernelRefused(
                f"edge {e.name!r} (flat={is_flat_morphism(phi)}): transported kernel at "
                f"{e.source!r} does not land in the kernel at {e.target!r}"
            )
        ext = extend(phi, src.source).module
        if not em.is_equivariant(ext, incs[e.target].source, sol):
            raise KernelRefused(f"induced kernel map on edge {e.name!r} is not equivariant")
        maps[e.name] = sol
    k = QuiverModule(u, {v: i.source for v, i in incs.items()}, maps)
    return QuiverMorphism(k, m, {v: i.map for v, i in incs.items()})


def pointwise_cokernel(xi: QuiverMorphism) -> QuiverMorphism:
    n = xi.target
    u = n.monad_quiver
    projs = {v: em.cokernel(ModuleMorphism(xi.source.module(v), n.module(v), xi.components[v]))
             for v in u.quiver.vertices}
    maps = {}
    for e in u.quiver.edges:
        phi = u.edge_morphism[e.name]
        p = projs[e.source]
        moved = extend_map(phi, n.module(e.source), p.target, p.map)
        rhs = projs[e.target].map @ n.edge_map[e.name]
        sol = solve_right(moved, rhs)
        if sol is None:
            raise ValueError(f"cokernel edge map on {e.name!r} is not well defined")
        maps[e.name] = sol
    c = QuiverModule(u, {v: p.target for v, p in projs.items()}, maps)
    return QuiverMorphism(n, c, {v: p.map for v, p in projs.items()})


@dataclass
class QuiverDirectSum:
    module: QuiverModule
    injections: list
    projections: list


def direct_sum_quiver(mods: Sequence[QuiverModule], u: MonadQuiver | None = None) -> QuiverDirectSum:
    u = mods[0].monad_quiver if mods else u
    if not mods:
        z = zero_quiver_module(u)
        return QuiverDirectSum(z, [], [])
    sums = {v: em.direct_sum([m.module(v) for m in mods], u.algebra(v)) for v in u.quiver.vertices}
    maps = {}
    for e in u.quiver.edges:
        phi = u.edge_morphism[e.name]
        ds = sums[e.source]
        cmp_ = extension_direct_sum_comparison(phi, [m.module(e.source) for m in mods], ds.module, ds.injections)
        if not cmp_.certified:
            raise ValueError("extension failed to preserve a direct sum")
        diag = block_diag([m.edge_map[e.name] for m in mods], u.field)
        maps[e.name] = diag @ cmp_.inverse
    total = QuiverModule(u, {v: s.module for v, s in sums.items()}, maps)
    inj = [QuiverMorphism(m, total, {v: sums[v].injections[i].map for v in u.quiver.vertices})
           for i, m in enumerate(mods)]
    proj = [QuiverMorphism(total, m, {v: sums[v].projections[i].map for v in u.quiver.vertices})
            for i, m in enumerate(mods)]
    return QuiverDirectSum(total, inj, proj)


@dataclass
class ElementSet:
    elements: list
    exhaustive: bool


def elements(m: QuiverModule) -> ElementSet:
    """Vertex-tagged elements; all of them over ``F_p``, basis representatives over Q."""
    out = []
    if m.field.is_finite:
        for v in m.quiver.vertices:
            full = Subspace.full(m.field, m.module(v).dim)
            out.extend((v, vec) for vec in full.elements())
        return ElementSet(out, True)
    for v in m.quiver.vertices:
        d = m.module(v).dim
        out.append((v, tuple(m.field.zero for _ in range(d))))
        out.extend((v, Subspace.full(m.field, d).basis[i]) for i in range(d))
    return ElementSet(out, False)


def regenerate_check(m: QuiverModule, x: str, zeta: Sequence) -> bool:
    """Regenerating from ``zeta`` inside its own generated subobject reproduces that subobject."""
    p = generated_subobject(m, x, zeta)
    inc = sub_quiver_module(m, p)
    inner = p[x].coordinates(zeta)
    again = generated_subobject(inc.source, x, inner)
    for v in m.quiver.vertices:
        pushed = Subspace.span(m.field, m.module(v).dim,
                               [inc.components[v].apply(b) for b in again[v].basis])
        if pushed != p[v]:
            return False
    return True


def is_cartesian(m: QuiverModule) -> Check:
    failing = []
    ranks = {}
    for e in m.quiver.edges:
        mp = m.edge_map[e.name]
        r = mp.rank()
        ranks[e.name] = {"rank": r, "shape": list(mp.shape)}
        if not mp.is_invertible():
            failing.append(e.name)
    if failing:
        return Check(False, "cartesian", witness={"edges": failing}, payload={"ranks": ranks})
    return Check(True, "cartesian", payload={"ranks": ranks})
