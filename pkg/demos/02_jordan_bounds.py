"""Closed-form bounds on Jordan data, checked against exhaustive partition search."""

# %%
from __future__ import annotations

from hhcert.jordan2 import JordanType, brute_argmax_j, j_of_type, max_j_bound
from hhcert.su3 import pr5_endgame

# %% j counts the blocks that survive raising to half the order
t = JordanType.of([6, 3])
print(t.parts, "j at order 8 =", j_of_type(t, 8))

# %% formula and brute force side by side
print("%4s %4s %6s %8s %6s" % ("n", "d", "order", "formula", "brute"))
for order in (4, 8):
    for n in (7, 10, 14):
        for d in range(order // 2 + 1, min(order - 1, n) + 1):
            best, _ = brute_argmax_j(n, d, order)
            print("%4d %4d %6d %8d %6d" % (n, d, order, max_j_bound(n, d, order), best))

# %% the all-q-blocks shape is the unique maximiser
for q in (3, 7):
    res = pr5_endgame(q)
    print("q=%d max_j=%s maximisers=%s" % (q, res["max_j"], res["maximisers"]))
