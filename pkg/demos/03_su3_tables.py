"""Recomputing the SU3 multiplicity and bound tables from the stored character rows."""

# %%
from __future__ import annotations

from hhcert import su3
from hhcert.datafiles import load_json

t1, t2 = load_json("su3_table1"), load_json("su3_table2")
rows = {r.name: r for r in su3.load_rows(t1)}

# %% multiplicity of the eigenvalue 1 on the centre-by-unipotent and unipotent parts
for name, row in rows.items():
    print("%-6s mult_zu=%-10s mult_u=%s" % (name, su3.mult_zu(row), su3.mult_u(row)))

# %% column by column comparison with the stored printed values
for r in su3.verify_table1(t1) + su3.verify_table2(t2, t1):
    bad = [k for k, c in r.get("columns", {}).items() if not c["match"]]
    print("%-14s %-13s %s" % (r["id"], r["verdict"], ", ".join(bad)))

# %% the two mismatches in detail
print(su3.verify_table1(t1)[1]["columns"]["mult_u"])
print(next(r for r in su3.verify_table2(t2, t1) if r["id"] == "table2/phi4*")["columns"]["f1"])
