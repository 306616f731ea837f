"""
Finite-dimensional algebras from structure constants
====================================================

Build a few algebras, check their laws, break one constant and see the
validator point at the offending triple, then decide flatness of some maps.
"""

from monadquiver.algebra import (
    FDAlgebra,
    generator_morphism,
    ground_field,
    is_flat_morphism,
    truncated_poly,
    unit_inclusion,
    validate_algebra,
)
from monadquiver.catalog import catalog_algebras
from monadquiver.linalg import GF, QQ

F2 = GF(2)

# the catalog: truncated polynomials, group algebras, M_2 and products
for name, a in catalog_algebras(QQ).items():
    print(f"{name:>14}  dim {a.dim}  valid: {bool(validate_algebra(a))}")

# dual numbers k[t]/t^2, basis (1, t); mul[i][j] is the coordinate vector of b_i b_j
a = truncated_poly(F2, 2)
print("t * t =", a.mul[1][1])

# set t . 1 := 1 and associativity fails on a named triple
mul = [[list(v) for v in row] for row in a.mul]
mul[1][0] = [1, 0]
chk = validate_algebra(FDAlgebra.from_table(F2, mul, a.unit))
print("mutated:", chk.name, "fails at", chk.witness)

# flatness: the unit map k -> A is flat, the augmentation A -> k is not
k = ground_field(F2)
print("unit flat:", is_flat_morphism(unit_inclusion(a)))
print("augmentation flat:", is_flat_morphism(generator_morphism(a, k, (0,))))
