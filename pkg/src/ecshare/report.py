"""Analysis and point-inventory reports (plain dicts ready for JSON)."""
from __future__ import annotations

from typing import Any

from . import analysis as an
from .agcode import EnumerationCapExceeded
from .config import LoadedConfig, echo_config
from .curve import CurveSpec, Point, enumerate_points, group_structure, point_order, supersingular_case
from .lsss import Scheme, build_scheme, lemma1_table


def group_summary(c: CurveSpec) -> dict[str, Any]:
    gs = group_structure(c)
    return {
        "order": gs.order,
        "n1": gs.n1,
        "n2": gs.n2,
        "cyclic": gs.is_cyclic,
        "supersingular": gs.is_supersingular,
        "supersingular_shape": supersingular_case(c, gs) if gs.is_supersingular else None,
        "trace": gs.trace,
        "generators": [c.format_point(p) for p in gs.generators],
    }


def points_report(loaded: LoadedConfig) -> dict[str, Any]:
    c = loaded.curve
    pts = enumerate_points(c)
    return {
        "curve": echo_config(LoadedConfig(c, None)),
        "group": group_summary(c),
        "points": [{"point": c.format_point(p), "order": point_order(c, p)} for p in pts],
    }


def _names(s: Scheme, sets) -> list[list[str]]:
    c = s.config.curve
    return [[c.format_point(s.config.D[i]) for i in S] for S in sets]


def _claims_block(s: Scheme, claims: dict[str, list[list[Point]]]) -> dict[str, Any]:
    c = s.config.curve
    index = {p: i for i, p in enumerate(s.config.D)}
    players = set(range(1, s.n + 1))
    minimal = an.minimal_table(s.qualified_table, s.n)
    out: dict[str, Any] = {}
    for key, groups in claims.items():
        rows = []
        for group in groups:
            idx = sorted(index.get(p, -1) for p in group)
            if any(i < 1 for i in idx):
                rows.append({"set": [c.format_point(p) for p in group], "status": "not players"})
                continue
            Q = idx if key == "minimal_qualified" else sorted(players - set(idx))
            mask = s.mask(Q)
            qual, mini = bool(s.qualified_table[mask]), bool(minimal[mask])
            rows.append(
                {
                    "set": [c.format_point(p) for p in group],
                    "qualified": qual,
                    "minimal": mini,
                    "status": "confirmed" if mini else "refuted",
                }
            )
        out[key] = rows
    refuted = sum(r["status"] != "confirmed" for rows in out.values() for r in rows)
    out["refuted"] = refuted
    return out


def analysis_report(loaded: LoadedConfig, scheme: Scheme | None = None) -> dict[str, Any]:
    """Everything the ``analyze`` command emits.  ``violations`` lists theorem failures."""
    sc = loaded.scheme
    s = scheme or build_scheme(sc)
    c = sc.curve
    m = sc.m
    violations: list[str] = []

    acc = an.access_structure(s)
    params = an.mds_check(s)
    full_d = an.full_code_distance(s)
    t1 = an.theorem1_bounds(s, params)
    if not t1:
        violations.append("theorem1: bound chain fails")
    t3 = an.theorem3_validate(s)
    if t3["qualified_disagreements"]:
        violations.append(f"theorem3: {len(t3['qualified_disagreements'])} qualification disagreements")
    if t3["minimal_disagreements"]:
        violations.append(f"theorem3: {len(t3['minimal_disagreements'])} minimality disagreements")

    try:
        t4 = an.theorem4_check(s, params, strict=False)
    except an.TheoremViolation as exc:
        violations.append(f"theorem4: {exc}")
        t4 = None
    if t4 is not None and t4.precondition and not t4.holds:
        violations.append(
            f"theorem4: subgroup scheme has d_min={params.d_min}, d_cheat={params.d_cheat}, expected {m - 1}"
        )
    cond = an.corollary1_condition(s)
    if cond is not None and not params.is_mds:
        violations.append("corollary1: condition met but scheme is not MDS")

    try:
        lemma1 = bool((lemma1_table(s) == s.qualified_table).all())
    except EnumerationCapExceeded:
        lemma1 = None
    if lemma1 is False:
        violations.append("lemma1: dual-codeword route disagrees with the column-span oracle")

    report: dict[str, Any] = {
        "config": echo_config(loaded),
        "scheme": {
            "field": repr(c.field),
            "q": c.field.q,
            "n": s.n,
            "m": m,
            "k": s.k,
            "dealer": c.format_point(sc.dealer),
            "players": {str(i): c.format_point(p) for i, p in enumerate(sc.D) if i},
            "group": group_summary(c),
        },
        "access_structure": {
            "minimal_qualified": [list(S) for S in acc.minimal_qualified],
            "minimal_qualified_points": _names(s, acc.minimal_qualified),
            "count": len(acc.minimal_qualified),
        },
        "params": {
            "d_min": params.d_min,
            "d_cheat": params.d_cheat,
            "max_unqualified": params.max_unqualified,
            "is_mds": params.is_mds,
            "d_cheat_by_weight": an.d_cheat_by_weight(s),
            "full_code_distance": full_d,
        },
        "lemma1_routes_agree": lemma1,
        "theorem1": {"lower": m - 1, "upper": m + 1, "holds": t1},
        "theorem3": t3,
        "theorem4": {
            "precondition": t4.precondition if t4 else None,
            "witness": list(t4.witness) if t4 and t4.witness else None,
            "witness_points": _names(s, [t4.witness])[0] if t4 and t4.witness else None,
            "holds": t4.holds if t4 else False,
        },
        "corollary1": {
            "condition_set": list(cond) if cond else None,
            "condition_holds": cond is not None,
        },
    }
    if loaded.claims:
        report["claims"] = _claims_block(s, loaded.claims)
    report["violations"] = violations
    return report
