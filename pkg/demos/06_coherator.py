"""
The coherator
=============

On a rooted poset every module has a best cartesian approximation from the
left: ex at the root of the module at the root, with the counit mapping it in.
"""

import random

from monadquiver import em
from monadquiver.cartesian import UnsupportedShape, certify_iso, coherator, coherator_universal_check
from monadquiver.catalog import chain2, flat_quivers, free_cartesian
from monadquiver.linalg import GF, LinearMap
from monadquiver.quiver import QuiverModule, enumerate_homs, is_cartesian

F2 = GF(2)
rng = random.Random(4)

# C = (k, A^2) with k landing in the first copy of A: not cartesian
u = chain2(F2)
first = LinearMap.from_columns(F2, [(1, 0, 0, 0), (0, 0, 1, 0)], 4)
c = QuiverModule(u, {"x": em.regular_module(u.algebra("x")), "y": em.free_module(u.algebra("y"), 2)}, {"e": first})
print("C cartesian:", bool(is_cartesian(c)))

res = coherator(c)
print("Q(C) dims:", res.module.dims(), "cartesian:", bool(is_cartesian(res.module)))
print("Q(Q(C)) -> Q(C) is an iso:", bool(certify_iso(coherator(res.module).counit)))

# maps from a cartesian N into C factor uniquely through Q(C)
n = free_cartesian(u, 1)
homs = list(enumerate_homs(n, c))
print(len(homs), "maps N -> C;", len(list(enumerate_homs(n, res.module))), "maps N -> Q(C)")
for f in homs:
    coherator_universal_check(n, f, res)
print("every one factors")

try:
    coherator(free_cartesian(flat_quivers(F2)["vee k,k<A"], 1))
except UnsupportedShape as exc:
    print("x -> z <- y:", exc)
