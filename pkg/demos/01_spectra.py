"""Eigenvalue multiplicities from trace vectors of cyclic groups."""

# %%
from __future__ import annotations

from hhcert.cyclotomic import CycNum
from hhcert.matoracle import groups as G
from hhcert.matoracle.ff import GF
from hhcert.matoracle.perm import perm_trace
from hhcert.spectrum import (
    CyclicTrace,
    eigen_multiplicities,
    spectrum_report,
    torus_certificate,
    tr1_from_constant,
    trace_of,
)

# %% exact cyclotomic arithmetic: the 5th roots of unity sum to zero
z = CycNum.from_exponents(5, {1: 1})
print("1 + z + ... + z^4 =", sum((z ** k for k in range(5)), CycNum.rational(0, 5)))

# %% traces go to multiplicities and back
mults = [2, 0, 1, 1, 0, 3]
t = trace_of(mults)
print("trace vector:", [str(v) for v in t.values])
print("recovered   :", eigen_multiplicities(t).mults)

# %% an element of order 13 acting on the 13 points of the projective plane over GF(3)
pts = G.projective_points(GF(3), 3)
singer = G._point_action(GF(3), G.singer_element(), pts)
print(spectrum_report(perm_trace(singer, minus_trivial=True)))

# %% a trace constant off the identity splits as k copies of the regular character plus a
print(tr1_from_constant(27 ** 3, -1, 28).to_json())

# %% a degree bound against torus orders
print("64624 > 688 * (37 - 1):", torus_certificate(64624, -688, 37))
print("CyclicTrace(2, (1, 0)) is not a character:", end=" ")
try:
    eigen_multiplicities(CyclicTrace(2, (1, 0)))
except Exception as exc:
    print(type(exc).__name__)
