from __future__ import annotations

from fractions import Fraction

import pytest

from hhcert import su3
from hhcert.datafiles import load_json
from hhcert.jordan2 import brute_max_j
from hhcert.qpoly import QPoly, eval_at, parse_qpoly


@pytest.fixture(scope="module")
def rows():
    return {r.name: r for r in su3.load_rows(load_json("su3_table1"))}


def P(text):
    return parse_qpoly(text)


def test_mult_zu_examples(rows):
    assert su3.mult_zu(rows["phi5"]) == P("q^2+1")
    assert su3.mult_zu(rows["phi1"]) == P("0")
    assert su3.mult_zu(rows["phi4"]) == P("q^2-1")


def test_mult_u_examples(rows):
    assert su3.mult_u(rows["phi5"]) == P("2")
    assert su3.mult_u(rows["phi7"]) == P("1")
    # the stored row values give exactly q^3/q^3 here; the printed column says 0
    assert su3.mult_u(rows["phi2"]) == P("1")


def test_phi4_star_class_refinement_is_irrelevant(rows):
    per_class = su3.mult_u_per_class(rows["phi4*"])
    assert per_class == [P("0")] * 3
    assert su3.mult_u(rows["phi4*"]) == P("0")


def test_nb2_examples(rows):
    assert su3.nb2_bound(rows["phi1"]) == P("(q-1)^2/2")
    assert su3.nb2_bound(rows["phi5"]) == P("(q-1)*(q^2+1)/2")
    assert su3.nb2_bound(rows["phi4"]) == P("(q-1)*(q^2-2*q+3)/2")
    with pytest.raises(ValueError):
        su3.nb2_bound(rows["phi1"], four_divides_q_plus_1=False)


def test_pr5_examples(rows):
    assert su3.pr5_contradiction(rows["phi5"], "f2").refuted
    assert not su3.pr5_contradiction(rows["phi1"], "f2").refuted
    assert su3.pr5_contradiction(rows["phi4"], "f1").refuted


def test_gelfand_graev_values():
    assert su3.gamma_values(3, -1)["t"] == 8
    assert su3.gamma_values(3, -1)["1"] == 6048 // 27 == 224
    assert su3.gamma_values(5, 1)["t"] == 16
    assert su3.gg_criterion(100, 1, 1, -1, q=3)
    assert not su3.gg_criterion(2, -1, -1, -1, q=3)
    with pytest.raises(ValueError):
        su3.gamma_values(3, 0)


def test_gamma_one_matches_group_order():
    from hhcert.matoracle.closure import closure
    from hhcert.matoracle.groups import su3_3

    rep = su3_3()
    assert closure(rep.field, rep.gens).order // 27 == su3.gamma_values(3, -1)["1"]


def test_gg_symbolic():
    q = QPoly.q()
    assert su3.gg_criterion(q ** 3, QPoly.const(0), QPoly.const(0))
    assert not su3.gg_criterion(q, -q, QPoly.const(0))


@pytest.mark.parametrize("q", [3, 7])
def test_pr5_endgame(q):
    res = su3.pr5_endgame(q)
    assert res["maximisers"] == [[q] * (q - 1)]
    assert res["max_j"] == Fraction((q - 1) ** 2, 2)
    assert res["max_j"] == brute_max_j(q * q - q, q, q + 1)


def test_integrality_of_multiplicities(rows):
    for row in rows.values():
        fam = su3.row_family(row)
        for q in fam.members(limit=23):
            for value in (su3.mult_zu(row), su3.mult_u(row)):
                v = eval_at(value, q)
                assert v.denominator == 1 and v >= 0, (row.name, q)


def test_table_verdicts_frozen():
    t1, t2 = load_json("su3_table1"), load_json("su3_table2")
    got = {r["id"]: r["verdict"] for r in su3.verify_table1(t1) + su3.verify_table2(t2, t1)}
    refuted = sorted(k for k, v in got.items() if v == "refuted")
    assert refuted == ["table1/phi2", "table2/phi4*"]
    assert got["table2/phi7"] == "not compared"
    assert sum(v == "verified" for v in got.values()) == 11
