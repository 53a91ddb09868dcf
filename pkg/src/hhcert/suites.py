"""Named certification suites: each returns a list of items with a verdict.

An item is a dict with an "id", a "verdict" in {verified, refuted,
undetermined} and a "detail" dict.  Refuted items carry a "witness" and
undetermined items a "reason".  Reports sort items by id.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from . import jordan2, paperdata, spectrum, su3
from .cyclotomic import CycNum
from .datafiles import dataset_digest, load_json
from .errors import HHCertError
from .qpoly import QPoly

__all__ = ["SUITES", "SuiteConfig", "run_one", "run_suite_items", "suite_datasets", "VERDICTS"]

VERDICTS = ("verified", "refuted", "undetermined")


@dataclass
class SuiteConfig:
    seed: int = 20240601
    cap: int = 2 ** 20
    budget: int = 40
    data_dir: str | None = None
    case: str | None = None
    options: dict = field(default_factory=dict)  # per-suite settings from a config file

    def opt(self, suite: str, key: str, default):
        return self.options.get(suite, {}).get(key, default)


def _item(ident: str, ok: bool | None, detail: Mapping | None = None, *,
          witness=None, reason: str | None = None) -> dict:
    verdict = "verified" if ok else ("undetermined" if ok is None else "refuted")
    out = {"id": ident, "verdict": verdict, "detail": dict(detail or {})}
    if verdict == "refuted":
        out["witness"] = witness if witness is not None else "see detail"
    if verdict == "undetermined":
        out["reason"] = reason or "no certificate found"
    return out


def _from_row(prefix: str, row: Mapping) -> dict:
    """Wrap a checker row that already carries a verdict."""
    detail = {k: v for k, v in row.items() if k not in ("id", "verdict")}
    verdict = row["verdict"]
    ok = {"verified": True, "refuted": False}.get(verdict)
    return _item(prefix + row["id"], ok, detail,
                 witness=row.get("witness", row.get("reason")),
                 reason=row.get("reason"))


# spectrum -----------------------------------------------------------------


def _spectrum_items(cfg: SuiteConfig) -> list[dict]:
    from .matoracle.groups import _point_action, projective_points, singer_element
    from .matoracle.ff import GF
    from .matoracle.perm import perm_trace

    items = []
    F = GF(3)
    pts = projective_points(F, 3)
    singer = _point_action(F, singer_element(F), pts)
    rep = spectrum.spectrum_report(perm_trace(singer, minus_trivial=True))
    items.append(_item("spectrum/singer-13-minus-trivial",
                       rep["degree"] == 12 and rep["missing_eigenvalues"] == [0], rep))

    reg = spectrum.trace_of([1] * 5)
    m = spectrum.eigen_multiplicities(reg)
    items.append(_item("spectrum/regular-C5", list(m.mults) == [1] * 5, {"mults": list(m.mults)}))

    diag = spectrum.CyclicTrace(4, (2, 0, -2, 0))
    m = spectrum.eigen_multiplicities(diag)
    items.append(_item("spectrum/diag-i-minus-i", list(m.mults) == [0, 1, 0, 1], {"mults": list(m.mults)}))

    q = 27
    st = spectrum.tr1_from_constant(q ** 3, -1, q + 1)
    items.append(_item("spectrum/tr1-2G2-St-C2-q27", st.k == 703 and st.proper, st.to_json()))

    ok = spectrum.torus_certificate(64624, -688, 37)
    items.append(_item("spectrum/torus-certificate-q8-T2", ok,
                       {"lower": 64624, "value": -688, "torus_order": 37}))
    return items, []


# jordan -------------------------------------------------------------------


def _jordan_items(cfg: SuiteConfig) -> list[dict]:
    n_max = int(cfg.opt("jordan", "n_max", 40))
    orders = [int(o) for o in cfg.opt("jordan", "orders", [4, 8, 16, 32, 64])]
    items = []
    for order in orders:
        half = order // 2
        checked, mismatches, non_monotone = 0, [], []
        for n in range(1, n_max + 1):
            prev = None
            for d in range(half + 1, min(order - 1, n) + 1):
                formula = jordan2.max_j_bound(n, d, order)
                brute = jordan2.brute_max_j(n, d, order, cap=max(n_max, jordan2.DEFAULT_CAP))
                checked += 1
                if formula != brute:
                    mismatches.append([n, d, order, formula, brute])
                if prev is not None and formula < prev:
                    non_monotone.append([n, d, order])
                prev = formula
        items.append(_item("jordan/formula-vs-brute/order=%02d" % order, not mismatches,
                           {"n_max": n_max, "triples": checked, "mismatches": mismatches},
                           witness=mismatches[:1]))
        items.append(_item("jordan/monotone-in-d/order=%02d" % order, not non_monotone,
                           {"n_max": n_max, "violations": non_monotone}, witness=non_monotone[:1]))
    for q in cfg.opt("jordan", "endgame_q", [3, 7]):
        res = su3.pr5_endgame(int(q))
        # the all-q-blocks partition gives j = (q-1)^2/2 at element order q+1
        ok = res["unique_all_q_blocks"] and res["max_j"] == res["half_square"]
        items.append(_item("jordan/pr5-endgame/q=%d" % q, ok, _plain(res)))
    return items, []


# su3 tables ---------------------------------------------------------------


def _su3_items(cfg: SuiteConfig) -> list[dict]:
    t1 = load_json("su3_table1", cfg.data_dir)
    t2 = load_json("su3_table2", cfg.data_dir)
    rows = su3.verify_table1(t1) + su3.verify_table2(t2, t1)
    out, notes = [], []
    for r in rows:
        bad = [k for k, v in r.get("columns", {}).items() if not v["match"]]
        if r["verdict"] == "not compared":
            notes.append("su3/%s: %s" % (r["id"], r["verdict"]))
            continue
        out.append(_from_row("su3/", dict(r, witness={"columns": bad})))
    return out, notes


# ledgers and tables -------------------------------------------------------


def _d4_items(cfg: SuiteConfig) -> list[dict]:
    d = paperdata.load_d4_table(cfg.data_dir)
    items = []
    if cfg.case is None:
        for r in paperdata.d4_congruences(d):
            items.append(_item("d4/congruence/" + r["id"], r["holds"], r,
                               witness={"residue": r["residue"], "stored": r["stored"]}))
        items.extend(_from_row("d4/torus/", r) for r in paperdata.check_torus_table(d))
    cases = paperdata.load_d4_ledger(cfg.data_dir)
    items.extend(_from_row("", r) for r in paperdata.check_ledgers(cases, only=cfg.case))
    return items, []


def _f4_items(cfg: SuiteConfig) -> list[dict]:
    cases = paperdata.load_f4_ledger(cfg.data_dir)
    rows = paperdata.check_ledgers(cases, only=cfg.case)
    # check_ledger already appends the small-q bound row of case (f)
    items = [_from_row("", r) for r in rows]
    notes = ["f4/table3/%s: %s" % (r["id"], r["status"])
             for r in paperdata.f4_table_consistency(paperdata.load_f4_table(cfg.data_dir))]
    return items, notes


def _g2r_items(cfg: SuiteConfig) -> list[dict]:
    t = paperdata.load_g2r_table(cfg.data_dir)
    items = [_from_row("g2r/torus/", r) for r in paperdata.check_torus_table(t)]
    for r in paperdata.g2r_congruences(t):
        items.append(_item("g2r/congruence/" + r["id"], r["holds"], r, witness=r["value"]))
    return items, []


# matrix oracle ------------------------------------------------------------


def _oracle_items(cfg: SuiteConfig) -> list[dict]:
    import numpy as np

    from .matoracle import groups as G
    from .matoracle.closure import closure
    from .matoracle.ff import GF
    from .matoracle.linalg import jordan_type_unipotent, minpoly
    from .matoracle.meataxe import chop
    from .matoracle.perm import perm_matrix, perm_trace, schreier_sims_order

    items = []
    for name, rep, order in [("SL2(3)", G.sl2(3), 24), ("SL3(3)", G.sl3_3(), 5616),
                             ("SU3(3)", G.su3_3(), 6048)]:
        got = closure(rep.field, rep.gens, cfg.cap).order
        items.append(_item("oracle/closure/" + name, got == order, {"order": got, "expected": order}))

    module = G.su3_3_f2_module(cfg.data_dir)
    check = G.validate_rep(module, cfg.cap)
    cl = closure(module.field, module.gens, cfg.cap)
    F2 = module.field
    types, degrees, count = set(), set(), 0
    eye = np.eye(6, dtype=np.int64)
    for g in cl.elements:
        g2 = (g @ g) % 2
        if np.array_equal(g2, eye) or not np.array_equal((g2 @ g2) % 2, eye):
            continue
        count += 1
        types.add(jordan_type_unipotent(F2, g).parts)
        degrees.add(len(minpoly(F2, g)) - 1)
    ok = (check["invertible"] and check["form_preserved"] and check.get("order_matches")
          and count > 0 and types == {(3, 3)} and degrees == {3})
    items.append(_item("oracle/su3-f2-module/order-4-elements", ok,
                       {"order": cl.order, "form_preserved": check["form_preserved"],
                        "order_4_elements": count, "jordan_types": sorted(types),
                        "minpoly_degrees": sorted(degrees)},
                       witness={"jordan_types": sorted(types), "minpoly_degrees": sorted(degrees)}))

    pts, perms = G.sl3_3_points_action()
    items.append(_item("oracle/schreier-sims/SL3(3)-13-points", schreier_sims_order(perms) == 5616,
                       {"order": schreier_sims_order(perms)}))
    F5 = GF(5)
    res = chop(F5, [perm_matrix(F5, p) for p in perms], budget=cfg.budget, seed=cfg.seed)
    items.append(_item("oracle/chop/SL3(3)-13-points-F5", res.dims() == [12, 1], res.to_json()))

    sp = G.sp6_2()
    _, sp_perms = G.sp6_2_points_action(sp)
    sp_order = schreier_sims_order(sp_perms)
    items.append(_item("oracle/schreier-sims/Sp6(2)-63-points", sp_order == 1451520, {"order": sp_order}))
    F3 = GF(3)
    res = chop(F3, [perm_matrix(F3, p) for p in sp_perms], budget=cfg.budget, seed=cfg.seed)
    items.append(_item("oracle/chop/Sp6(2)-63-points-F3", 27 in res.dims(),
                       res.to_json()))

    singer = G._point_action(GF(3), G.singer_element(), G.projective_points(GF(3), 3))
    mp = minpoly(F5, perm_matrix(F5, singer))
    sreport = spectrum.spectrum_report(perm_trace(singer, ell=5))
    items.append(_item("oracle/minpoly-vs-spectrum/singer-F5", len(mp) - 1 == sreport["degree"] == 13,
                       {"minpoly_degree": len(mp) - 1, "spectrum_degree": sreport["degree"]}))

    z = paperdata.zgm_bruteforce(int(cfg.opt("oracle", "zgm_limit", 10 ** 6)))
    items.append(_item("oracle/zgm-bruteforce", not z["unclassified"],
                       {"limit": z["limit"], "counts": z["counts"],
                        "unclassified": [list(s) for s in z["unclassified"]]},
                       witness=[list(s) for s in z["unclassified"][:3]]))
    return items, []


def _plain(obj):
    """Fractions and tuples to JSON-friendly values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (QPoly, CycNum)):
        return str(obj)
    return obj


SUITES: dict[str, Callable[[SuiteConfig], tuple[list[dict], list[str]]]] = {
    "spectrum": _spectrum_items,
    "jordan": _jordan_items,
    "su3-tables": _su3_items,
    "d4-ledger": _d4_items,
    "f4-ledger": _f4_items,
    "g2r-table": _g2r_items,
    "oracle": _oracle_items,
}

_DATASETS = {
    "spectrum": [],
    "jordan": [],
    "su3-tables": ["su3_table1", "su3_table2"],
    "d4-ledger": ["d4_unipotent", "d4_ledger"],
    "f4-ledger": ["f4_table3", "f4_ledger"],
    "g2r-table": ["g2r_tori"],
    "oracle": ["su3_3_f2_module"],
}


def suite_datasets(name: str, data_dir=None) -> dict[str, str]:
    names = sorted({d for s in _expand(name) for d in _DATASETS[s]})
    return {n: dataset_digest(n, data_dir) for n in names}


def _expand(name: str) -> list[str]:
    if name == "all":
        return list(SUITES)
    if name not in SUITES:
        raise KeyError("unknown suite %r; choose from %s" % (name, ", ".join(list(SUITES) + ["all"])))
    return [name]


def run_one(name: str, cfg: SuiteConfig) -> tuple[list[dict], list[str], float]:
    t0 = time.perf_counter()
    try:
        items, notes = SUITES[name](cfg)
    except HHCertError as exc:
        items = [_item(name + "/error", None, reason="%s: %s" % (type(exc).__name__, exc))]
        notes = []
    return [_plain(it) for it in items], list(notes), time.perf_counter() - t0


def run_suite_items(name: str, cfg: SuiteConfig, jobs: int = 1):
    """Items of one suite (or all) sorted by id, sorted notes, and seconds per suite.

    With jobs > 1 the suites of "all" run in a process pool; the assembled
    result does not depend on completion order.
    """
    names = _expand(name)
    if jobs > 1 and len(names) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, names, [cfg] * len(names)))
    else:
        results = [run_one(n, cfg) for n in names]
    items, notes, timing = [], [], {}
    for n, (its, nts, secs) in zip(names, results):
        items.extend(its)
        notes.extend(nts)
        timing[n] = secs
    items.sort(key=lambda it: it["id"])
    ids = [it["id"] for it in items]
    if len(set(ids)) != len(ids):
        raise HHCertError("duplicate item ids in suite %s" % name)
    return items, sorted(notes), timing
