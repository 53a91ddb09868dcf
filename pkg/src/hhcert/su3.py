"""Fixed-point multiplicities and Jordan bounds for 2-modular SU_3(q) characters.

Throughout, q is a prime power with 4 | (q+1), U is a Sylow p-subgroup of
order q^3, u is a nontrivial central element of U and v lies in U minus Z(U).
A character row stores phi(1), phi(u) and phi(v); everything else is derived.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NonPolynomialQuotient, UnsupportedResidue
from .jordan2 import brute_argmax_j, f1, f2
from .qpoly import (
    PositivityResult,
    QFamily,
    QPoly,
    QRat,
    eval_at,
    eventually_positive,
    exact_div,
    parse_qpoly,
    parse_rational,
)

__all__ = [
    "CharRow",
    "FAMILY",
    "row_family",
    "mult_zu",
    "mult_u",
    "mult_u_per_class",
    "nb2_bound",
    "pr5_contradiction",
    "Pr5Result",
    "gamma_values",
    "gg_value",
    "gg_criterion",
    "pr5_endgame",
    "verify_table1",
    "verify_table2",
    "load_rows",
]

Q = QPoly.q()

# q a prime power with q = 3 mod 4
FAMILY = QFamily.prime_powers(3, 4, [3])


@dataclass(frozen=True)
class CharRow:
    name: str
    deg: QPoly
    val_u: QPoly
    val_v: object  # QPoly, or a tuple of (value, class weight) pairs
    exists_if: tuple | None = None  # (modulus, residues) restricting q further
    notes: str = ""

    @property
    def classes(self) -> tuple | None:
        return self.val_v if isinstance(self.val_v, tuple) else None

    @classmethod
    def from_json(cls, obj: Mapping) -> "CharRow":
        vv = obj["val_v"]
        if isinstance(vv, Mapping):
            val_v = tuple((parse_qpoly(c["value"]), Fraction(c["weight"])) for c in vv["classes"])
        else:
            val_v = parse_qpoly(str(vv))
        ex = obj.get("exists_if")
        exists_if = (int(ex["modulus"]), tuple(ex["residues"])) if ex else None
        return cls(obj["name"], parse_qpoly(str(obj["deg"])), parse_qpoly(str(obj["val_u"])),
                   val_v, exists_if, obj.get("notes", ""))


def row_family(row: CharRow) -> QFamily:
    """q values where the row exists: q = 3 mod 4, plus any extra congruence."""
    if row.exists_if is None:
        return FAMILY
    mod, res = row.exists_if
    combined = sorted({r for r in range(4 * mod) if r % 4 == 3 and r % mod in res})
    return QFamily.prime_powers(3, 4 * mod, combined)


def _exact(num: QPoly, den: QPoly, what: str) -> QPoly:
    try:
        return exact_div(num, den)
    except NonPolynomialQuotient as exc:
        raise NonPolynomialQuotient("%s: %s" % (what, exc)) from None


def mult_zu(row: CharRow) -> QPoly:
    """Multiplicity of the trivial character of Z(U) in phi restricted to Z(U)."""
    return _exact(row.deg + (Q - 1) * row.val_u, Q, "%s on Z(U)" % row.name)


def _mean_v(row: CharRow) -> QPoly:
    if row.classes is None:
        return row.val_v
    total_w = sum(w for _, w in row.classes)
    acc = QPoly()
    for val, w in row.classes:
        acc = acc + val * (w / total_w)
    return acc


def mult_u(row: CharRow) -> QPoly:
    """Multiplicity of 1_U in phi restricted to U, using the class-size weighted value on U minus Z(U)."""
    num = row.deg + _mean_v(row) * (Q ** 3 - Q) + row.val_u * (Q - 1)
    return _exact(num, Q ** 3, "%s on U" % row.name)


def mult_u_per_class(row: CharRow) -> list[QPoly]:
    """Same multiplicity for each Galois-conjugate variant of a split row.

    When the values on U minus Z(U) vary over equal-size classes, the conjugate
    characters permute those values cyclically.  Each variant is computed by
    summing over the classes directly, without averaging first.
    """
    if row.classes is None:
        return [mult_u(row)]
    vals = [v for v, _ in row.classes]
    weights = [w for _, w in row.classes]
    total_w = sum(weights)
    out = []
    for shift in range(len(vals)):
        rolled = vals[shift:] + vals[:shift]
        on_v = QPoly()
        for val, w in zip(rolled, weights):
            on_v = on_v + val * (Q ** 3 - Q) * (w / total_w)
        out.append(_exact(row.deg + on_v + row.val_u * (Q - 1), Q ** 3, "%s on U" % row.name))
    return out


def nb2_bound(row: CharRow, *, four_divides_q_plus_1: bool = True):
    """Lower bound for the number of size-2 Jordan blocks of phi(z)."""
    if not four_divides_q_plus_1:
        raise ValueError("the bound is only valid when 4 divides q+1")
    mzu, mu = mult_zu(row), mult_u(row)
    return QRat((Q - 1) * (row.deg - mzu), Q * 2) + (mzu - mu) / 2


@dataclass
class Pr5Result:
    row: str
    case: str
    refuted: bool
    bound: object
    f_value: object
    difference: object
    positivity: PositivityResult

    def to_json(self) -> dict:
        return {
            "row": self.row,
            "case": self.case,
            "refuted": self.refuted,
            "nb2": str(self.bound),
            "f": str(self.f_value),
            "difference": str(self.difference),
            "positivity": self.positivity.to_json(),
        }


def _numerator_sign_poly(x) -> QPoly:
    # num * den has the sign of num / den
    if isinstance(x, QRat):
        return x.num * x.den
    return x


def pr5_contradiction(row: CharRow, case: str, fam: QFamily | None = None) -> Pr5Result:
    """Is the lower bound strictly above the partition bound for every q in the family?"""
    if case not in ("f1", "f2"):
        raise ValueError("case must be f1 or f2")
    fam = row_family(row) if fam is None else fam
    lower = nb2_bound(row)
    upper = f1(row.deg, Q) if case == "f1" else f2(row.deg, Q)
    diff = QRat.lift(lower) - upper
    pos = eventually_positive(_numerator_sign_poly(diff), fam)
    return Pr5Result(row.name, case, pos.verdict is True, lower, upper, diff, pos)


# Gelfand-Graev style criterion --------------------------------------------


def gamma_values(q, eps: int) -> dict:
    """Gamma(1) = |H|/|U|, Gamma(u) = 1, Gamma(t) = (q-eps)(q-1) for H = SL_3 (eps=1) or SU_3 (eps=-1)."""
    if eps not in (1, -1):
        raise ValueError("eps must be 1 or -1")
    return {"1": (q * q - 1) * (q ** 3 - eps), "u": 1, "t": (q - eps) * (q - 1)}


def gg_value(tau_deg, tau_t, tau_u, q):
    return tau_deg + tau_t * (q - 1) + q * tau_u


def gg_criterion(tau_deg, tau_t, tau_u, eps: int = -1, q=None, fam: QFamily | None = None) -> bool:
    """tau(1) + tau(t)(q-1) + q tau(u) > 0, exactly; symbolic inputs are checked over fam."""
    if eps not in (1, -1):
        raise ValueError("eps must be 1 or -1")
    if all(isinstance(x, (int, Fraction)) for x in (tau_deg, tau_t, tau_u)) and q is not None and not isinstance(q, QPoly):
        return gg_value(tau_deg, tau_t, tau_u, q) > 0
    val = gg_value(QPoly.coerce(tau_deg) if not isinstance(tau_deg, QPoly) else tau_deg,
                   tau_t, tau_u, Q)
    if q is not None and not isinstance(q, QPoly):
        return eval_at(val, q) > 0
    return eventually_positive(val, fam or FAMILY).verdict is True


# Jordan form endgame ------------------------------------------------------


def pr5_endgame(q: int) -> dict:
    """Exhaustive maximum of j for n = q^2-q, largest block q, element order q+1 (a 2-power)."""
    n, order = q * q - q, q + 1
    best, arg = brute_argmax_j(n, q, order, cap=max(60, n))
    return {
        "q": q,
        "n": n,
        "max_j": best,
        "maximisers": [list(p) for p in arg],
        "unique_all_q_blocks": arg == [tuple([q] * (q - 1))],
        "half_square": Fraction((q - 1) ** 2, 2),
    }


# table checks -------------------------------------------------------------


def load_rows(table1: Mapping) -> list[CharRow]:
    return [CharRow.from_json(r) for r in table1["rows"]]


_INTEGRALITY_Q = (3, 7, 11, 19, 23)


def _integral_nonneg(P: QPoly, qs: Sequence[int]) -> list[int]:
    bad = []
    for qv in qs:
        v = eval_at(P, qv)
        if v.denominator != 1 or v < 0:
            bad.append(qv)
    return bad


def verify_table1(table1: Mapping) -> list[dict]:
    """Recompute the three derived columns of every row and compare with the stored ones."""
    out = []
    for obj in table1["rows"]:
        row = CharRow.from_json(obj)
        printed = {k: parse_qpoly(v) for k, v in obj["printed"].items()}
        qs = [qv for qv in _INTEGRALITY_Q if row_family(row).contains(qv)]
        item = {"id": "table1/" + row.name, "row": row.name}
        try:
            mzu, mu = mult_zu(row), mult_u(row)
        except NonPolynomialQuotient as exc:
            item.update(verdict="refuted", reason=str(exc))
            out.append(item)
            continue
        computed = {"mult_zu": mzu, "mult_u": mu, "diff": mzu - mu}
        cols = {}
        for key in ("mult_zu", "mult_u", "diff"):
            cols[key] = {"computed": str(computed[key]), "printed": str(printed[key]),
                         "match": computed[key] == printed[key]}
        item["columns"] = cols
        per_class = mult_u_per_class(row)
        item["mult_u_per_class_agrees"] = all(p == mu for p in per_class)
        bad = sorted({qv for P in computed.values() for qv in _integral_nonneg(P, qs)})
        item["integrality_q"] = qs
        item["integrality_failures"] = bad
        ok = all(c["match"] for c in cols.values()) and item["mult_u_per_class_agrees"] and not bad
        item["verdict"] = "verified" if ok else "refuted"
        if not ok:
            item["reason"] = ", ".join(k for k, c in cols.items() if not c["match"]) or "integrality"
        out.append(item)
    return out


def _same(a, b) -> bool:
    return QRat.lift(a) == QRat.lift(b)


def verify_table2(table2: Mapping, table1: Mapping) -> list[dict]:
    """Compare the lower bound and both partition bounds, then run the two contradiction checks."""
    rows = {r.name: r for r in load_rows(table1)}
    out = []
    for obj in table2["rows"]:
        row = rows[obj["name"]]
        item = {"id": "table2/" + row.name, "row": row.name}
        checks = {}
        n_printed = parse_qpoly(obj["n"])
        checks["n"] = {"computed": str(row.deg), "printed": str(n_printed), "match": row.deg == n_printed}
        lower = nb2_bound(row)
        lp = parse_rational(obj["nb2"])
        checks["nb2"] = {"computed": str(lower), "printed": str(lp), "match": _same(lower, lp)}
        f1v = f1(row.deg, Q)
        f1p = parse_rational(obj["f1"])
        checks["f1"] = {"computed": str(f1v), "printed": str(f1p), "match": _same(f1v, f1p)}
        if obj.get("f2") is not None:
            f2v = f2(row.deg, Q)
            f2p = parse_rational(obj["f2"])
            checks["f2"] = {"computed": str(f2v), "printed": str(f2p), "match": _same(f2v, f2p)}
        item["columns"] = checks
        pr5 = {"f1": pr5_contradiction(row, "f1").to_json()}
        try:
            pr5["f2"] = pr5_contradiction(row, "f2").to_json()
        except UnsupportedResidue as exc:
            pr5["f2"] = {"refuted": None, "reason": str(exc)}
        item["pr5"] = pr5
        ok = all(c["match"] for c in checks.values())
        item["verdict"] = "verified" if ok else "refuted"
        if not ok:
            item["reason"] = ", ".join(k for k, c in checks.items() if not c["match"])
        out.append(item)
    for name in table2.get("not_compared", ()):
        out.append({"id": "table2/" + name, "row": name, "verdict": "not compared"})
    return out
