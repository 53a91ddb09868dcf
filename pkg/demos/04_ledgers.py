"""Symbolic congruences and the Brauer character ledgers over families of q."""

# %%
from __future__ import annotations

from hhcert import paperdata as P
from hhcert.qpoly import parse_qpoly, qp_mod

# %% unipotent degrees modulo q^4 - q^2 + 1
print(qp_mod(parse_qpoly("q^12"), parse_qpoly("q^4-q^2+1")))
for r in P.d4_congruences():
    print(r["id"], r["residue"], r["holds"])

# %% the 2G2 torus table over q = 3^(2k+1)
rows = P.check_torus_table(P.load_g2r_table())
print(len(rows), "cells,", sum(r["verdict"] == "verified" for r in rows), "verified")

# %% both ledgers; only one cell stays open
rows = P.check_ledgers(P.load_d4_ledger()) + P.check_ledgers(P.load_f4_ledger())
print({v: sum(r["verdict"] == v for r in rows) for v in ("verified", "refuted", "undetermined")})
print(P.exception_set(rows))
small = next(r for r in rows if r.get("bound") == "688")
print("%s * %s = %s < %s" % (small["bound"], small["torus_order_minus_one"], small["product"], small["lower_bound"]))
