"""Eilenberg-Moore categories of the monads ``A (x) -``.

A module is a pair ``(M, f_M)`` with ``f_M : A (x) M -> M``.  The action
matrix has ``dim M`` rows and ``dim A * dim M`` columns; column
``i * dim M + m`` is ``b_i . e_m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra import FDAlgebra
from .linalg import (
    DimensionError,
    LinearMap,
    Subspace,
    block_diag,
    hstack,
    kronecker,
    solve,
)
from .report import Check


@dataclass(frozen=True)
class ModuleObject:
    algebra: FDAlgebra
    dim: int
    action: LinearMap

    def __post_init__(self):
        if self.action.shape != (self.dim, self.algebra.dim * self.dim):
            raise DimensionError(
                f"action must be {self.dim}x{self.algebra.dim * self.dim}, got {self.action.shape}"
            )
        if self.action.field != self.algebra.field:
            raise DimensionError("action and algebra live over different fields")

    @classmethod
    def from_matrices(cls, algebra: FDAlgebra, mats: Sequence[LinearMap], dim: int | None = None):
        """Build from the action matrices of the algebra basis elements."""
        if len(mats) != algebra.dim:
            raise DimensionError("need one action matrix per algebra basis element")
        dim = mats[0].rows if dim is None else dim
        return cls(algebra, dim, hstack(list(mats)))

    @property
    def field(self):
        return self.algebra.field

    @cached_property
    def _rho(self) -> tuple[LinearMap, ...]:
        return tuple(self.action.col_slice(i * self.dim, (i + 1) * self.dim) for i in range(self.algebra.dim))

    def rho(self, i: int) -> LinearMap:
        """Action matrix of basis element ``i``."""
        return self._rho[i]

    def act(self, a: Sequence) -> LinearMap:
        out = LinearMap.zero(self.field, self.dim, self.dim)
        for c, r in zip(a, self._rho):
            if c:
                out = out + r.scale(c)
        return out

    def identity(self) -> "ModuleMorphism":
        return ModuleMorphism(self, self, LinearMap.identity(self.field, self.dim))


@dataclass(frozen=True)
class ModuleMorphism:
    source: ModuleObject
    target: ModuleObject
    map: LinearMap

    def __post_init__(self):
        if self.map.shape != (self.target.dim, self.source.dim):
            raise DimensionError(
                f"module map must be {self.target.dim}x{self.source.dim}, got {self.map.shape}"
            )

    def then(self, other: "ModuleMorphism") -> "ModuleMorphism":
        return ModuleMorphism(self.source, other.target, other.map @ self.map)

    def is_equivariant(self) -> bool:
        return is_equivariant(self.source, self.target, self.map)


def is_equivariant(m: ModuleObject, n: ModuleObject, g: LinearMap) -> bool:
    if m.algebra != n.algebra:
        raise DimensionError("modules over different algebras")
    return all(n.rho(i) @ g == g @ m.rho(i) for i in range(m.algebra.dim))


def validate_module(m: ModuleObject) -> Check:
    """Both monad-algebra identities, checked as literal matrix equations."""
    a = m.algebra
    field = m.field
    id_m = LinearMap.identity(field, m.dim)
    f = m.action
    lhs = f @ kronecker(a.mult_map, id_m)
    rhs = f @ kronecker(LinearMap.identity(field, a.dim), f)
    if lhs != rhs:
        bad = next(j for j in range(lhs.cols) if lhs.column(j) != rhs.column(j))
        i, rest = divmod(bad, a.dim * m.dim)
        j, k = divmod(rest, m.dim)
        return Check(False, "associativity", witness=(i, j, k))
    unit_law = f @ kronecker(a.unit_map, id_m)
    if unit_law != id_m:
        bad = next(j for j in range(m.dim) if unit_law.column(j) != id_m.column(j))
        return Check(False, "unit", witness=(bad,))
    return Check(True, "module")


def validate_module_morphism(g: ModuleMorphism) -> Check:
    if g.is_equivariant():
        return Check(True, "module morphism")
    bad = next(i for i in range(g.source.algebra.dim)
               if g.target.rho(i) @ g.map != g.map @ g.source.rho(i))
    return Check(False, "equivariance", witness=(bad,))


# ---------------------------------------------------------------------------
# constructions


def zero_module(a: FDAlgebra) -> ModuleObject:
    return ModuleObject(a, 0, LinearMap.zero(a.field, 0, 0))


def free_module(a: FDAlgebra, n: int) -> ModuleObject:
    """``A (x) k^n`` with action ``theta (x) id``."""
    if n < 0:
        raise ValueError("rank must be non-negative")
    return ModuleObject(a, a.dim * n, kronecker(a.mult_map, LinearMap.identity(a.field, n)))


def regular_module(a: FDAlgebra) -> ModuleObject:
    return free_module(a, 1)


def adjoint_transpose(direction: str, a: FDAlgebra, v_dim: int, n: ModuleObject, g):
    """Transpose across ``Hom_A(A (x) k^v, N) = Hom_k(k^v, N)``.

    ``to_linear`` takes a module morphism out of the free module and returns
    ``g o (eta (x) id)``; ``to_module`` takes a linear map ``x`` and returns
    ``f_N o (id_A (x) x)``.
    """
    field = a.field
    free = free_module(a, v_dim)
    if direction == "to_linear":
        gm = g.map if isinstance(g, ModuleMorphism) else g
        if not is_equivariant(free, n, gm):
            raise ValueError("to_linear needs an A-linear map out of the free module")
        return gm @ kronecker(a.unit_map, LinearMap.identity(field, v_dim))
    if direction == "to_module":
        if g.shape != (n.dim, v_dim):
            raise DimensionError("linear map has the wrong shape")
        return ModuleMorphism(free, n, n.action @ kronecker(LinearMap.identity(field, a.dim), g))
    raise ValueError(f"unknown direction {direction!r}")


def is_action_closed(m: ModuleObject, s: Subspace) -> bool:
    return all(s.contains(m.rho(i).apply(v)) for i in range(m.algebra.dim) for v in s.basis)


def generated_submodule(m: ModuleObject, elements: Sequence[Sequence]) -> Subspace:
    """Span of ``A . x`` over the given elements."""
    vecs = []
    for x in elements:
        if len(x) != m.dim:
            raise DimensionError(f"element of length {len(x)} in a module of dimension {m.dim}")
        vecs.extend(m.rho(i).apply(x) for i in range(m.algebra.dim))
    return Subspace.span(m.field, m.dim, vecs)


def submodule(m: ModuleObject, s: Subspace) -> ModuleMorphism:
    """The inclusion of an action-closed subspace, with induced action."""
    if s.ambient_dim != m.dim:
        raise DimensionError("subspace lives in the wrong ambient space")
    b = s.basis_matrix()
    mats = []
    for i in range(m.algebra.dim):
        c = solve(b, m.rho(i) @ b)
        if c is None:
            raise ValueError(f"subspace is not closed under basis element {i}")
        mats.append(c)
    sub = ModuleObject(m.algebra, s.dim, hstack(mats, rows=s.dim, field=m.field))
    return ModuleMorphism(sub, m, b)


def quotient(m: ModuleObject, s: Subspace) -> ModuleMorphism:
    """The projection onto ``M / S`` in the non-pivot coordinate basis."""
    if s.ambient_dim != m.dim:
        raise DimensionError("subspace lives in the wrong ambient space")
    if not is_action_closed(m, s):
        raise ValueError("cannot form a quotient by a subspace that is not a submodule")
    pi = s.quotient_projection()
    sec = s.quotient_section()
    mats = [pi @ m.rho(i) @ sec for i in range(m.algebra.dim)]
    q = ModuleObject(m.algebra, pi.rows, hstack(mats, rows=pi.rows, field=m.field))
    return ModuleMorphism(m, q, pi)


def kernel(g: ModuleMorphism) -> ModuleMorphism:
    return submodule(g.source, g.map.kernel())


def cokernel(g: ModuleMorphism) -> ModuleMorphism:
    return quotient(g.target, g.map.image())


def image(g: ModuleMorphism) -> ModuleMorphism:
    return submodule(g.target, g.map.image())


@dataclass(frozen=True)
class DirectSum:
    module: ModuleObject
    injections: tuple[ModuleMorphism, ...]
    projections: tuple[ModuleMorphism, ...]


def direct_sum(modules: Sequence[ModuleObject], algebra: FDAlgebra | None = None) -> DirectSum:
    if not modules:
        if algebra is None:
            raise ValueError("empty direct sum needs an algebra")
        return DirectSum(zero_module(algebra), (), ())
    a = modules[0].algebra
    if any(m.algebra != a for m in modules):
        raise DimensionError("direct sum of modules over different algebras")
    field = a.field
    dim = sum(m.dim for m in modules)
    mats = [block_diag([m.rho(i) for m in modules], field) for i in range(a.dim)]
    total = ModuleObject(a, dim, hstack(mats, rows=dim, field=field))
    inj, proj = [], []
    off = 0
    for m in modules:
        e = LinearMap.from_columns(
            field, [[1 if r == off + c else 0 for r in range(dim)] for c in range(m.dim)], dim
        )
        inj.append(ModuleMorphism(m, total, e))
        proj.append(ModuleMorphism(total, m, e.T))
        off += m.dim
    return DirectSum(total, tuple(inj), tuple(proj))


def ker_coker_sum(op: str, g):
    if op == "kernel":
        return kernel(g)
    if op == "cokernel":
        return cokernel(g)
    if op == "image":
        return image(g)
    if op == "sum":
        return direct_sum(g)
    raise ValueError(f"unknown operation {op!r}")


def evaluation_epimorphism(m: ModuleObject) -> ModuleMorphism:
    """``A (x) k^dim(M) -> M`` induced by the standard basis of ``M``."""
    return adjoint_transpose("to_module", m.algebra, m.dim, m, LinearMap.identity(m.field, m.dim))


# ---------------------------------------------------------------------------
# hom spaces


def _equivariance_system(m: ModuleObject, n: ModuleObject) -> LinearMap:
    field = m.field
    id_m = LinearMap.identity(field, m.dim)
    id_n = LinearMap.identity(field, n.dim)
    # unknown g (n x m), row-major: rho_N g - g rho_M = 0
    blocks = [kronecker(n.rho(i), id_m) - kronecker(id_n, m.rho(i).T) for i in range(m.algebra.dim)]
    return LinearMap(field, sum(b.rows for b in blocks), n.dim * m.dim,
                     tuple(r for b in blocks for r in b.entries))


def hom_space(m: ModuleObject, n: ModuleObject) -> list[LinearMap]:
    """A basis of ``Hom_A(M, N)`` as ``dim N x dim M`` matrices."""
    if m.algebra != n.algebra:
        raise DimensionError("modules over different algebras")
    ker = _equivariance_system(m, n).kernel()
    return [LinearMap(m.field, n.dim, m.dim,
                      tuple(tuple(v[r * m.dim:(r + 1) * m.dim]) for r in range(n.dim)))
            for v in ker.basis]


@dataclass(frozen=True)
class HomCount:
    field: object
    dimension: int

    @property
    def infinite(self) -> bool:
        return not self.field.is_finite and self.dimension > 0

    @property
    def cardinality(self) -> int | None:
        """``p ** dimension`` over ``F_p``; ``None`` when the set is infinite."""
        if self.field.is_finite:
            return self.field.characteristic ** self.dimension
        return None if self.dimension else 1


def hom_count(m, n, field=None) -> HomCount:
    """Size of a hom set, for modules or (given ints) for plain vector spaces."""
    if isinstance(m, int) and isinstance(n, int):
        if field is None:
            raise ValueError("plain vector spaces need an explicit field")
        return HomCount(field, m * n)
    return HomCount(m.field, len(hom_space(m, n)))


def elements_count(m: ModuleObject) -> HomCount:
    """``|Hom(k, M)|``: the number of elements of ``M``."""
    return HomCount(m.field, m.dim)
