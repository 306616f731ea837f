"""Restriction and extension of scalars along an algebra morphism.

For ``phi : A -> B`` the extension ``phi^* M`` is the cokernel of

    d : B (x) A (x) M -> B (x) M,   b (x) a (x) x  |->  b phi(a) (x) x - b (x) a.x

and is stored with its presentation.  Its basis is normative: the non-pivot
standard coordinates of ``B (x) M`` with respect to the reduced echelon basis
of ``Im d``.  Serialized edge maps are matrices against this basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import AlgebraMorphism
from .em import (
    ModuleMorphism,
    ModuleObject,
    free_module,
    is_equivariant,
)
from .linalg import DimensionError, LinearMap, Subspace, hstack, kronecker
from .report import Check


@dataclass(frozen=True)
class ExtensionResult:
    module: ModuleObject
    relations: Subspace
    projection: LinearMap
    section: LinearMap
    unit: LinearMap

    @property
    def presentation(self) -> tuple[LinearMap, Subspace]:
        """The surjection ``B (x) M -> phi^* M`` and its kernel."""
        return self.projection, self.relations


def restrict(phi: AlgebraMorphism, m: ModuleObject) -> ModuleObject:
    if m.algebra != phi.target:
        raise DimensionError("module is not over the target of the morphism")
    action = m.action @ kronecker(phi.matrix, LinearMap.identity(m.field, m.dim))
    return ModuleObject(phi.source, m.dim, action)


def restrict_morphism(phi: AlgebraMorphism, g: ModuleMorphism) -> ModuleMorphism:
    return ModuleMorphism(restrict(phi, g.source), restrict(phi, g.target), g.map)


def relation_map(phi: AlgebraMorphism, m: ModuleObject) -> LinearMap:
    """The difference map ``d`` whose cokernel is ``phi^* M``."""
    b = phi.target
    field = m.field
    id_m = LinearMap.identity(field, m.dim)
    id_b = LinearMap.identity(field, b.dim)
    first = kronecker(b.mult_map @ kronecker(id_b, phi.matrix), id_m)
    second = kronecker(id_b, m.action)
    return first - second


@lru_cache(maxsize=4096)
def extend(phi: AlgebraMorphism, m: ModuleObject) -> ExtensionResult:
    if m.algebra != phi.source:
        raise DimensionError("module is not over the source of the morphism")
    b = phi.target
    field = m.field
    rel = relation_map(phi, m).image()
    proj = rel.quotient_projection()
    sec = rel.quotient_section()
    act = proj @ kronecker(b.mult_map, LinearMap.identity(field, m.dim)) @ kronecker(
        LinearMap.identity(field, b.dim), sec
    )
    ext = ModuleObject(b, proj.rows, act)
    unit = proj @ kronecker(b.unit_map, LinearMap.identity(field, m.dim))
    return ExtensionResult(ext, rel, proj, sec, unit)


def extend_module(phi: AlgebraMorphism, m: ModuleObject) -> ModuleObject:
    return extend(phi, m).module


def extend_map(phi: AlgebraMorphism, m: ModuleObject, n: ModuleObject, g: LinearMap) -> LinearMap:
    """Matrix of ``phi^*(g) : phi^* M -> phi^* N``."""
    em, en = extend(phi, m), extend(phi, n)
    return en.projection @ kronecker(LinearMap.identity(m.field, phi.target.dim), g) @ em.section


def extend_morphism(phi: AlgebraMorphism, g: ModuleMorphism) -> ModuleMorphism:
    em, en = extend(phi, g.source), extend(phi, g.target)
    return ModuleMorphism(em.module, en.module, extend_map(phi, g.source, g.target, g.map))


def unit_morphism(phi: AlgebraMorphism, m: ModuleObject) -> ModuleMorphism:
    """The adjunction unit ``M -> phi_* phi^* M``."""
    ext = extend(phi, m)
    return ModuleMorphism(m, restrict(phi, ext.module), ext.unit)


def counit_morphism(phi: AlgebraMorphism, n: ModuleObject) -> ModuleMorphism:
    """The adjunction counit ``phi^* phi_* N -> N``."""
    r = restrict(phi, n)
    ext = extend(phi, r)
    return ModuleMorphism(ext.module, n, n.action @ ext.section)


def adjoint_transpose_scalars(direction: str, phi: AlgebraMorphism, m: ModuleObject,
                              n: ModuleObject, g: LinearMap) -> LinearMap:
    """Transpose across ``Hom_B(phi^* M, N) = Hom_A(M, phi_* N)``.

    ``to_restriction`` sends ``h`` to ``h o unit``; ``to_extension`` sends
    ``g`` to the map ``[b (x) x] |-> b . g(x)``.
    """
    ext = extend(phi, m)
    if direction == "to_restriction":
        if not is_equivariant(ext.module, n, g):
            raise ValueError("input is not B-linear on the extension")
        return g @ ext.unit
    if direction == "to_extension":
        if not is_equivariant(m, restrict(phi, n), g):
            raise ValueError("input is not A-linear into the restriction")
        return n.action @ kronecker(LinearMap.identity(m.field, phi.target.dim), g) @ ext.section
    raise ValueError(f"unknown direction {direction!r}")


def triangle_identities(phi: AlgebraMorphism, m: ModuleObject, n: ModuleObject) -> Check:
    """Both triangle identities, at ``M`` (source side) and ``N`` (target side)."""
    ext = extend(phi, m)
    eta = unit_morphism(phi, m)
    eps = counit_morphism(phi, ext.module)
    first = eps.map @ extend_map(phi, m, eta.target, eta.map)
    if first != LinearMap.identity(m.field, ext.module.dim):
        return Check(False, "triangle", witness="eps_{phi^*M} o phi^*(eta_M) != id")
    r = restrict(phi, n)
    second = counit_morphism(phi, n).map @ unit_morphism(phi, r).map
    if second != LinearMap.identity(m.field, n.dim):
        return Check(False, "triangle", witness="phi_*(eps_N) o eta_{phi_*N} != id")
    return Check(True, "triangle")


@dataclass(frozen=True)
class IsoWitness:
    morphism: ModuleMorphism
    inverse: LinearMap | None
    certified: bool


def extend_free_check(phi: AlgebraMorphism, n: int) -> IsoWitness:
    """Certify the canonical iso ``phi^*(A (x) k^n) -> B (x) k^n``."""
    src = free_module(phi.source, n)
    tgt = free_module(phi.target, n)
    inclusion = kronecker(phi.matrix, LinearMap.identity(src.field, n))
    h = adjoint_transpose_scalars("to_extension", phi, src, tgt, inclusion)
    ext = extend(phi, src)
    mor = ModuleMorphism(ext.module, tgt, h)
    ok = h.is_invertible() and mor.is_equivariant()
    return IsoWitness(mor, h.inverse() if ok else None, ok)


def comparison(phi: AlgebraMorphism, psi: AlgebraMorphism, m: ModuleObject) -> IsoWitness:
    """Certified iso ``(psi phi)^* M -> psi^* phi^* M``, ``[c (x) x] |-> [c (x) [1 (x) x]]``."""
    rho = phi.then(psi)
    inner = extend(phi, m)
    outer = extend(psi, inner.module)
    direct = extend(rho, m)
    c = psi.target
    h = outer.projection @ kronecker(LinearMap.identity(m.field, c.dim), inner.unit) @ direct.section
    mor = ModuleMorphism(direct.module, outer.module, h)
    ok = h.is_invertible() and mor.is_equivariant()
    return IsoWitness(mor, h.inverse() if ok else None, ok)


def extension_direct_sum_comparison(phi: AlgebraMorphism, modules, sum_module, injections) -> IsoWitness:
    """Canonical map ``(+) phi^* M_i -> phi^*((+) M_i)`` built from the injections."""
    from .em import direct_sum

    parts = [extend_map(phi, mi, sum_module, inj.map) for mi, inj in zip(modules, injections)]
    ext_sum = extend(phi, sum_module).module
    h = hstack(parts, rows=ext_sum.dim, field=ext_sum.field)
    src = direct_sum([extend(phi, mi).module for mi in modules], phi.target).module
    mor = ModuleMorphism(src, ext_sum, h)
    ok = h.is_invertible() and mor.is_equivariant()
    return IsoWitness(mor, h.inverse() if ok else None, ok)
