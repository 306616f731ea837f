"""
Modules over a monad quiver
===========================

A quiver whose vertices carry algebras and whose edges carry algebra maps.
A module puts an A_x-module at each vertex and, on each edge, a map from
the extended source module to the target module.
"""

import random

from monadquiver.catalog import flat_quivers, free_cartesian, random_element, random_quiver_module
from monadquiver.linalg import GF
from monadquiver.quiver import (
    check_subobject_family,
    generated_subobject,
    is_cartesian,
    regenerate_check,
    validate_umodule,
)

F2 = GF(2)
rng = random.Random(1)

u = flat_quivers(F2)["diamond"]
print("vertices:", u.quiver.vertices)
print("algebra dims:", {v: u.algebra(v).dim for v in u.quiver.vertices})
print("poset:", u.is_poset)

m = random_quiver_module(u, rng, 3)
print("random module dims:", m.dims(), "valid:", bool(validate_umodule(m)))

# the subobject generated by one element
x, zeta = random_element(m, rng)
while not any(zeta):
    x, zeta = random_element(m, rng)
p = generated_subobject(m, x, zeta)
print(f"generated by {zeta} at {x}:", p.dims())
print("is a subobject:", bool(check_subobject_family(m, p)), " regenerates:", regenerate_check(m, x, zeta))

# cartesian means every structure map is invertible
print("random module cartesian:", bool(is_cartesian(m)))
print("free module cartesian:", bool(is_cartesian(free_cartesian(u, 2))))
