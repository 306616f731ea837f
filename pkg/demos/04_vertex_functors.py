"""
Evaluation at a vertex and its two adjoints
===========================================

ev_x reads off the module at x.  ex_x pushes an A_x-module forward along
every arrow out of x; coe_x pulls it back along every arrow into x.
"""

import random

from monadquiver import em
from monadquiver.catalog import chain2, flat_quivers, random_module, random_module_morphism, random_quiver_module
from monadquiver.linalg import GF
from monadquiver.vertex import adjunction_checks, coe, ev, ex, ex_ev_transpose, lifting_check, projective_cover

F2 = GF(2)
rng = random.Random(2)

u = chain2(F2)  # x -> y along k -> k[t]/t^2
k = em.regular_module(u.algebra("x"))
print("ex_x(k) dims:", ex(u, "x", k).dims())
print("coe_y(A) dims:", coe(u, "y", em.regular_module(u.algebra("y"))).dims())
print("ev_x(ex_x(k)) == k:", ev("x", ex(u, "x", k)) == k)

# both adjunctions on a random instance
w = flat_quivers(F2)["wedge k<A,kxk"]
p = random_quiver_module(w, rng, 3)
m = random_module(w.algebra("x"), rng, 3)
for kind in ("ex_ev", "ev_coe"):
    chk = adjunction_checks(kind, w, "x", m, p)
    print(kind, bool(chk), chk.payload)

# every module is a quotient of a sum of ex_x of free modules
cov = projective_cover(p)
print("cover summands:", cov.summands, "surjective:", cov.surjective)

# and maps out of those free pieces lift through any epimorphism
free = em.free_module(w.algebra("x"), 1)
f = ex_ev_transpose("to_quiver", w, "x", free, p, random_module_morphism(free, p.module("x"), rng))
g = lifting_check(cov.morphism, f, "x", 1)
print("lift reproduces f:", g.then(cov.morphism).components == f.components)
