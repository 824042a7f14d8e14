import itertools
from dataclasses import replace

import numpy as np
import pytest

from ecshare import analysis as an
from ecshare.agcode import vandermonde_code
from ecshare.catalog import catalog, example_curves, sweep_configs
from ecshare.curve import CurveSpec, enumerate_points, group_structure, group_sum, neg, supersingular_case
from ecshare.field import GF
from ecshare.lsss import SchemeConfig, build_scheme, is_qualified, scheme_from_dual, upward_closure

ALL = ["example1", "example2", "example3", "gf8_m5"]


def small_sweep():
    out = []
    for item in sweep_configs(example_curves() + catalog()[3:6], max_dealers=2, random_sets=1):
        if item.config.n <= 9:
            out.append(item.config)
    return out[::3]


SMALL = small_sweep()


def _sets_to_masks(sets):
    return {sum(1 << (i - 1) for i in S) for S in sets}


@pytest.mark.parametrize("name", ALL)
def test_minimal_sets_form_generating_antichain(schemes, name):
    s = schemes[name]
    acc = an.access_structure(s)
    masks = _sets_to_masks(acc.minimal_qualified)
    for a, b in itertools.permutations(masks, 2):
        assert a & b != a  # no minimal set inside another
    flags = np.zeros(1 << s.n, dtype=bool)
    flags[list(masks)] = True
    assert np.array_equal(upward_closure(flags, s.n), s.qualified_table)
    assert [len(S) for S in acc.minimal_qualified] == sorted(len(S) for S in acc.minimal_qualified)


def test_example2_oracle_four_element_family(loaded, schemes):
    s = schemes["example2"]
    c = loaded["example2"].curve
    fours = [S for S in an.access_structure(s).minimal_qualified if len(S) == 4]
    comps = sorted(
        sorted(c.format_point(s.config.D[i]) for i in set(range(1, 8)) - set(S)) for S in fours
    )
    # oracle-derived, pinned: complements of the five minimal 4-sets
    assert comps == sorted(
        sorted(x)
        for x in [
            ["(00,01)", "(11,10)", "(10,11)"],
            ["(01,11)", "(11,11)", "(10,11)"],
            ["(01,11)", "(10,10)", "(00,01)"],
            ["(01,10)", "(11,11)", "(00,01)"],
            ["(01,10)", "(10,10)", "(11,10)"],
        ]
    )


def test_example2_listed_four_sets_sum_to_dealer(loaded, schemes):
    s = schemes["example2"]
    c = loaded["example2"].curve
    dealer = s.config.dealer
    claims = loaded["example2"].claims["minimal_qualified_complements"]
    for A in claims[:3]:
        assert group_sum(c, A) == dealer
        idx = [s.config.D.index(p) for p in A]
        assert not is_qualified(s, set(range(1, 8)) - set(idx))


@pytest.mark.parametrize("cfg", SMALL, ids=lambda c: f"q{c.curve.field.q}-n{c.n}-m{c.m}")
def test_parameters_on_sweep(cfg):
    s = build_scheme(cfg)
    p = an.mds_check(s)
    assert cfg.m - 1 <= p.d_min <= p.d_cheat <= cfg.m + 1
    assert p.d_cheat == an.d_cheat_by_weight(s)
    assert p.is_mds == (p.d_min == p.d_cheat)
    assert an.full_code_distance(s) in (p.d_min, p.d_min + 1)
    res = an.theorem3_validate(s)
    assert res["qualified_disagreements"] == [] and res["minimal_disagreements"] == []
    assert res["part_b_boundary"]["all_qualified"]
    if an.corollary1_condition(s) is not None:
        assert p.is_mds


def test_d_cheat_mismatch_is_reported(schemes, monkeypatch):
    s = schemes["example1"]
    monkeypatch.setattr(an, "d_cheat_by_weight", lambda _s: 99)
    with pytest.raises(an.IdentityMismatch):
        an.d_cheat(s)


def test_theorem3_predict_cases(schemes):
    s = schemes["example3"]  # m = 3, players P2..P8 at indices 1..7, P_i = i G
    # {P2, P3, P4}: sum 9 = 0 -> complement minimal qualified
    v = an.theorem3_predict(s, [1, 2, 3])
    assert v.case == "t=m zero-sum" and v.predicted_qualified and v.predicted_minimal
    # {P2, P7}: B = -9 = 0, not dealer, not in D -> minimal
    v = an.theorem3_predict(s, [1, 6])
    assert v.B.is_infinity and v.predicted_qualified and v.predicted_minimal
    # {P2, P6}: B = -8 = P1, the dealer -> unqualified
    v = an.theorem3_predict(s, [1, 5])
    assert v.B == s.config.dealer and not v.predicted_qualified
    # {P3, P4}: B = -7 = P2 is a player outside A -> qualified, not minimal
    v = an.theorem3_predict(s, [2, 3])
    assert v.predicted_qualified and not v.predicted_minimal
    assert is_qualified(s, [1, 4, 5, 6, 7])
    assert an.theorem3_predict(s, [1]).case == "t<=m-2 always-qualified"
    assert not an.theorem3_predict(s, [1, 2, 3, 4]).predicted_qualified


def test_theorem4_witness_and_complement(schemes):
    s = schemes["example3"]
    r = an.theorem4_check(s)
    assert r.precondition and r.holds and len(r.witness) == s.m - 1
    c = s.config.curve
    assert group_sum(c, [s.config.D[i] for i in r.witness]) == neg(c, s.config.dealer)
    assert not is_qualified(s, set(range(1, s.n + 1)) - set(r.witness))
    assert an.theorem4_check(schemes["example1"]).precondition is False


def test_theorem4_two_torsion_dealer_counterexample():
    # y^2 + xy = x^3 + 1 over GF(4): the dealer (0,1) has order 2, so no single player sums to -P0
    c = CurveSpec(GF(2, 2), a1=1, a6=1)
    pts = [p for p in enumerate_points(c) if not p.is_infinity]
    dealer = next(p for p in pts if neg(c, p) == p)
    D = [dealer] + [p for p in pts if p != dealer]
    s = build_scheme(SchemeConfig(c, 2, tuple(D)))
    r = an.theorem4_check(s, strict=False)
    assert r.precondition and r.witness is None
    p = an.mds_check(s)
    assert p.d_min == p.d_cheat == 2 == s.m
    with pytest.raises(an.TheoremViolation):
        an.theorem4_check(s)


def test_theorem4_corrected_statement_on_sweep():
    for item in sweep_configs(example_curves() + catalog()[3:6], max_dealers=2, random_sets=0):
        s = build_scheme(item.config)
        r = an.theorem4_check(s, strict=False)
        assert r.precondition
        p = an.mds_check(s)
        assert p.is_mds
        assert p.d_min == (s.m - 1 if r.witness is not None else s.m)


@pytest.mark.parametrize("p,n,k", [(7, 5, 2), (7, 6, 3), (11, 8, 3), (11, 9, 5)])
def test_shamir_parameters(p, n, k):
    s = scheme_from_dual(vandermonde_code(GF(p), list(range(n + 1)), n + 1 - k))
    params = an.mds_check(s)
    assert params.d_min == params.d_cheat == n - k + 1
    assert params.max_unqualified == k - 1
    with pytest.raises(Exception):
        an.group_labels(s)


def test_group_shape_constraints_on_catalog():
    for c in catalog():
        gs = group_structure(c)
        assert gs.n2 % gs.n1 == 0 and (c.field.q - 1) % gs.n1 == 0
        if gs.is_supersingular:
            assert supersingular_case(c, gs) is not None


@pytest.mark.parametrize("cfg", SMALL[::2], ids=lambda c: f"q{c.curve.field.q}-n{c.n}-m{c.m}")
def test_dependency_route_matches_enumeration(cfg):
    s = build_scheme(cfg)
    assert s.field.q ** s.k <= s.cap
    big = replace(s, cap=1)  # forces the dual-column route
    assert an.d_min(big) == an.d_min(s) == an.d_min_by_dependency(s)
    assert an.d_cheat_by_weight(big) == an.d_cheat_by_weight(s) == an.d_cheat_by_dependency(s)
    assert an.full_code_distance(big) == an.full_code_distance(s)
