"""
Cartesian hulls
===============

On a quiver with flat edges, each element of a cartesian module lies in a
cartesian submodule built by enlarging edge by edge until nothing changes.
"""

import random

from monadquiver.cartesian import cartesian_hull, hull_decomposition, hull_sum
from monadquiver.catalog import chain2, flat_quivers, free_cartesian, random_cartesian_module
from monadquiver.linalg import GF
from monadquiver.quiver import SubobjectFamily, generated_subobject, is_cartesian

F2 = GF(2)

# x -> y along k -> k[t]/t^2, M = (k^2, A^2); basis of A (x) k^2 is 1e1, 1e2, te1, te2
m = free_cartesian(chain2(F2), 2)
zeta = (0, 0, 1, 0)  # t e1 at y
print("generated by t e1:", generated_subobject(m, "y", zeta).dims())
h = cartesian_hull(m, "y", zeta)
# the hull has to reach back to e1 at x, and then all of A e1 at y
print("hull:", h.family.dims(), "basis at x:", h.family["x"].basis)
print("hull cartesian:", bool(is_cartesian(h.module)), " sweeps:", h.sweeps)

# a random cartesian module splits into hulls of basis vectors
rng = random.Random(3)
u = flat_quivers(F2)["wedge k<A,kxk"]
m = random_cartesian_module(u, rng, 4)
while m.module("x").dim < 2:
    m = random_cartesian_module(u, rng, 4)
print("module dims:", m.dims(), "cartesian:", bool(is_cartesian(m)))
hulls = hull_decomposition(m)
print([hh.family.dims() for hh in hulls])
print(len(hulls), "hulls cover m:", hull_sum(m, hulls) == SubobjectFamily.full(m))
