"""
Modules, the free-module adjunction and change of scalars
=========================================================

A module over A is a vector space with an action map A (x) M -> M.  Linear
maps out of k^n correspond to module maps out of the free module A (x) k^n,
and an algebra map phi : A -> B moves modules both ways.
"""

import random

from monadquiver import em
from monadquiver.algebra import generator_morphism, truncated_poly, unit_inclusion
from monadquiver.catalog import random_matrix, random_module
from monadquiver.change import extend, extend_free_check, restrict, triangle_identities
from monadquiver.linalg import GF

F3 = GF(3)
rng = random.Random(0)
a = truncated_poly(F3, 3)

m = random_module(a, rng, 3)
print("random module of dim", m.dim, "valid:", bool(em.validate_module(m)))

# a linear map k^2 -> M and its transpose A (x) k^2 -> M
x = random_matrix(F3, m.dim, 2, rng)
g = em.adjoint_transpose("to_module", a, 2, m, x)
print("transpose is A-linear:", g.is_equivariant())
print("round trip exact:", em.adjoint_transpose("to_linear", a, 2, m, g) == x)

# extend along t |-> t^2 into k[t]/t^4, then restrict back
b = truncated_poly(F3, 4)
phi = generator_morphism(a, b, (0, 0, 1, 0))
ext = extend(phi, m)
print("extension has dim", ext.module.dim, "over", b.dim, "dimensional B")
print("restriction of B has dim", restrict(phi, em.regular_module(b)).dim)
print("triangle identities:", bool(triangle_identities(phi, m, random_module(b, rng, 3))))

# extending a free module gives a free module, with a certified iso
for n in (0, 1, 3):
    print(f"free rank {n}: iso certified", extend_free_check(unit_inclusion(b), n).certified)
