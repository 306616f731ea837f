"""Finite-dimensional unital associative algebras given by structure constants.

An algebra ``A`` induces the monad ``A (x) -`` on vector spaces: the
multiplication ``A (x) A -> A`` is the monad multiplication and the unit
``k -> A`` is the monad unit.  Unital algebra maps are monad morphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .linalg import DimensionError, FieldSpec, LinearMap, kronecker, solve
from .report import Check


@dataclass(frozen=True)
class FDAlgebra:
    field: FieldSpec
    dim: int
    mul: tuple[tuple[tuple, ...], ...]
    unit: tuple

    def __post_init__(self):
        if self.dim <= 0:
            raise DimensionError("algebra dimension must be positive")
        if len(self.mul) != self.dim or any(len(row) != self.dim for row in self.mul):
            raise DimensionError(f"structure table must be {self.dim}x{self.dim}")
        if any(len(v) != self.dim for row in self.mul for v in row):
            raise DimensionError(f"structure constants must be vectors of length {self.dim}")
        if len(self.unit) != self.dim:
            raise DimensionError(f"unit must have length {self.dim}")

    @classmethod
    def from_table(cls, field: FieldSpec, mul: Sequence, unit: Sequence) -> "FDAlgebra":
        dim = len(unit)
        table = tuple(tuple(tuple(field.reduce(c) for c in v) for v in row) for row in mul)
        return cls(field, dim, table, tuple(field.reduce(c) for c in unit))

    def basis_vector(self, i: int) -> tuple:
        return tuple(self.field.one if j == i else self.field.zero for j in range(self.dim))

    def multiply(self, u: Sequence, v: Sequence) -> tuple:
        red = self.field.reduce
        out = [0] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.mul[i][j]):
                    if c:
                        out[k] += ab * c
        return tuple(red(x) for x in out)

    @cached_property
    def mult_map(self) -> LinearMap:
        """The multiplication ``A (x) A -> A``."""
        cols = [self.mul[i][j] for i in range(self.dim) for j in range(self.dim)]
        return LinearMap.from_columns(self.field, cols, self.dim)

    @cached_property
    def unit_map(self) -> LinearMap:
        """The unit ``k -> A``."""
        return LinearMap.from_columns(self.field, [self.unit], self.dim)

    def left_mult(self, v: Sequence) -> LinearMap:
        cols = [self.multiply(v, self.basis_vector(j)) for j in range(self.dim)]
        return LinearMap.from_columns(self.field, cols, self.dim)

    def right_mult(self, v: Sequence) -> LinearMap:
        cols = [self.multiply(self.basis_vector(j), v) for j in range(self.dim)]
        return LinearMap.from_columns(self.field, cols, self.dim)

    def power(self, v: Sequence, n: int) -> tuple:
        out = self.unit
        for _ in range(n):
            out = self.multiply(out, v)
        return out


@dataclass(frozen=True)
class AlgebraMorphism:
    source: FDAlgebra
    target: FDAlgebra
    matrix: LinearMap

    def __post_init__(self):
        if self.source.field != self.target.field or self.matrix.field != self.source.field:
            raise DimensionError("field mismatch in algebra morphism")
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionError(
                f"morphism matrix must be {self.target.dim}x{self.source.dim}, got {self.matrix.shape}"
            )

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def then(self, other: "AlgebraMorphism") -> "AlgebraMorphism":
        """``other`` after ``self``."""
        if other.source != self.target:
            raise DimensionError("cannot compose morphisms: algebras do not match")
        return AlgebraMorphism(self.source, other.target, other.matrix @ self.matrix)


def validate_algebra(a: FDAlgebra) -> Check:
    basis = [a.basis_vector(i) for i in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            bij = a.mul[i][j]
            for k in range(a.dim):
                if a.multiply(bij, basis[k]) != a.multiply(basis[i], a.mul[j][k]):
                    return Check(False, "associativity", witness=(i, j, k))
    for i in range(a.dim):
        if a.multiply(a.unit, basis[i]) != basis[i]:
            return Check(False, "left unit", witness=(i,))
        if a.multiply(basis[i], a.unit) != basis[i]:
            return Check(False, "right unit", witness=(i,))
    return Check(True, "algebra")


def validate_morphism(phi: AlgebraMorphism) -> Check:
    src, tgt = phi.source, phi.target
    images = [phi.matrix.column(i) for i in range(src.dim)]
    for i in range(src.dim):
        for j in range(src.dim):
            if phi(src.mul[i][j]) != tgt.multiply(images[i], images[j]):
                return Check(False, "multiplicative", witness=(i, j))
    if phi(src.unit) != tgt.unit:
        return Check(False, "unital", witness="unit")
    return Check(True, "morphism")


# ---------------------------------------------------------------------------
# constructors


def ground_field(field: FieldSpec) -> FDAlgebra:
    return FDAlgebra.from_table(field, [[[1]]], [1])


def truncated_poly(field: FieldSpec, n: int) -> FDAlgebra:
    """``k[t]/(t^n)`` on the basis ``1, t, ..., t^(n-1)``."""
    if n <= 0:
        raise ValueError("n must be positive")
    mul = [[[1 if (i + j == k and i + j < n) else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    return FDAlgebra.from_table(field, mul, [1] + [0] * (n - 1))


def cyclic_group_algebra(field: FieldSpec, n: int) -> FDAlgebra:
    """``k[C_n]`` on the basis ``1, g, ..., g^(n-1)``."""
    if n <= 0:
        raise ValueError("n must be positive")
    mul = [[[1 if (i + j) % n == k else 0 for k in range(n)] for j in range(n)] for i in range(n)]
    return FDAlgebra.from_table(field, mul, [1] + [0] * (n - 1))


def full_matrix(field: FieldSpec, n: int) -> FDAlgebra:
    """``M_n(k)`` on the matrix units ``e_ij`` at index ``i*n + j``."""
    if n <= 0:
        raise ValueError("n must be positive")
    d = n * n
    mul = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(n):
        for j in range(n):
            for l in range(n):
                mul[i * n + j][j * n + l][i * n + l] = 1
    unit = [1 if (k // n == k % n) else 0 for k in range(d)]
    return FDAlgebra.from_table(field, mul, unit)


def product(*algebras: FDAlgebra) -> FDAlgebra:
    """Direct product; the basis is the concatenation of the factor bases."""
    if not algebras:
        raise ValueError("empty product")
    field = algebras[0].field
    d = sum(a.dim for a in algebras)
    mul = [[[0] * d for _ in range(d)] for _ in range(d)]
    unit = []
    off = 0
    for a in algebras:
        for i in range(a.dim):
            for j in range(a.dim):
                for k, c in enumerate(a.mul[i][j]):
                    mul[off + i][off + j][off + k] = c
        unit.extend(a.unit)
        off += a.dim
    return FDAlgebra.from_table(field, mul, unit)


def standard_constructors(kind: str, field: FieldSpec, *args) -> FDAlgebra:
    makers = {
        "field": lambda: ground_field(field),
        "truncated_poly": lambda: truncated_poly(field, *args),
        "cyclic_group_algebra": lambda: cyclic_group_algebra(field, *args),
        "full_matrix": lambda: full_matrix(field, *args),
        "product": lambda: product(*args),
    }
    if kind not in makers:
        raise ValueError(f"unknown algebra family {kind!r}")
    return makers[kind]()


def identity_morphism(a: FDAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(a, a, LinearMap.identity(a.field, a.dim))


def unit_inclusion(a: FDAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(ground_field(a.field), a, a.unit_map)


def morphism_from_images(source: FDAlgebra, target: FDAlgebra, images: Sequence[Sequence]) -> AlgebraMorphism:
    """Morphism sending basis vector ``i`` of ``source`` to ``images[i]``."""
    return AlgebraMorphism(source, target, LinearMap.from_columns(source.field, images, target.dim))


def generator_morphism(source: FDAlgebra, target: FDAlgebra, image) -> AlgebraMorphism:
    """Morphism out of ``k[t]/(t^n)`` or ``k[C_n]`` fixed by the image of the generator.

    Basis vector ``i`` of the source is ``x^i``; validity is not checked here.
    """
    images = [target.power(image, i) for i in range(source.dim)]
    return morphism_from_images(source, target, images)


def projection(prod: FDAlgebra, factors: Sequence[FDAlgebra], index: int) -> AlgebraMorphism:
    off = sum(f.dim for f in factors[:index])
    target = factors[index]
    cols = []
    for i in range(prod.dim):
        v = [0] * target.dim
        if off <= i < off + target.dim:
            v[i - off] = 1
        cols.append(v)
    return morphism_from_images(prod, target, cols)


def diagonal_inclusion(field: FieldSpec, n: int) -> AlgebraMorphism:
    """``k^n -> M_n(k)`` onto the diagonal matrices."""
    source = product(*[ground_field(field)] * n)
    target = full_matrix(field, n)
    cols = []
    for i in range(n):
        v = [0] * (n * n)
        v[i * n + i] = 1
        cols.append(v)
    return morphism_from_images(source, target, cols)


# ---------------------------------------------------------------------------
# flatness


def flatness_section(phi: AlgebraMorphism) -> LinearMap | None:
    """A right-module section of the evaluation map onto the target, if one exists.

    The target ``B`` is a right module over the source ``A`` via
    ``b . a = b * phi(a)``.  The free right module ``F = k^dim(B) (x) A``
    surjects onto ``B`` by ``e_j (x) a -> b_j * phi(a)``; ``B`` is projective
    (equivalently flat, in finite dimension) iff this surjection splits.
    """
    a, b = phi.source, phi.target
    field = a.field
    p, q = b.dim * a.dim, b.dim
    cols = []
    for j in range(b.dim):
        bj = b.basis_vector(j)
        for i in range(a.dim):
            cols.append(b.multiply(bj, phi(a.basis_vector(i))))
    evaluation = LinearMap.from_columns(field, cols, b.dim)
    id_p = LinearMap.identity(field, p)
    id_q = LinearMap.identity(field, q)
    # unknown s (p x q), vectorised row-major: vec(X M Y) = (X (x) Y^T) vec(M)
    blocks = [kronecker(evaluation, id_q)]
    rhs = [LinearMap.identity(field, q)]
    for i in range(a.dim):
        ai = a.basis_vector(i)
        r_b = b.right_mult(phi(ai))
        r_f = kronecker(LinearMap.identity(field, b.dim), a.right_mult(ai))
        blocks.append(kronecker(id_p, r_b.T) - kronecker(r_f, id_q))
        rhs.append(LinearMap.zero(field, p, q))
    system = LinearMap(field, sum(m.rows for m in blocks), p * q,
                       tuple(r for m in blocks for r in m.entries))
    target = [v for m in rhs for row in m.entries for v in row]
    sol = solve(system, LinearMap.from_columns(field, [target], len(target)))
    if sol is None:
        return None
    flat = sol.column(0)
    return LinearMap(field, p, q, tuple(tuple(flat[r * q:(r + 1) * q]) for r in range(p)))


def is_flat_morphism(phi: AlgebraMorphism) -> bool:
    return flatness_section(phi) is not None
