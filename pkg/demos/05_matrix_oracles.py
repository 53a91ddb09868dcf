"""Small matrix groups over finite fields as ground truth."""

# %%
from __future__ import annotations

from collections import Counter

from hhcert.matoracle import groups as G
from hhcert.matoracle.closure import closure
from hhcert.matoracle.ff import GF
from hhcert.matoracle.linalg import element_order, jordan_type_unipotent, minpoly
from hhcert.matoracle.meataxe import chop
from hhcert.matoracle.perm import perm_matrix, schreier_sims_order

# %% group orders by closure and by Schreier-Sims
su3 = G.su3_3()
print("SU3(3) by closure:", closure(su3.field, su3.gens).order)
_, sp_perms = G.sp6_2_points_action()
print("Sp6(2) on 63 points:", schreier_sims_order(sp_perms))

# %% order 4 elements of the bundled 6-dimensional GF(2) module
module = G.su3_3_f2_module()
F2 = module.field
shapes = Counter()
for g in closure(F2, module.gens).elements:
    if element_order(F2, g, 16) == 4:
        shapes[(jordan_type_unipotent(F2, g).parts, len(minpoly(F2, g)) - 1)] += 1
print("(Jordan type, minpoly degree) -> count:", dict(shapes))

# %% composition factors of permutation modules
_, sl_perms = G.sl3_3_points_action()
F5, F3 = GF(5), GF(3)
print("SL3(3), 13 points over GF(5):", chop(F5, [perm_matrix(F5, p) for p in sl_perms]).dims())
print("Sp6(2), 63 points over GF(3):", chop(F3, [perm_matrix(F3, p) for p in sp_perms]).dims())
