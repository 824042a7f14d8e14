"""Access structures, d_min / d_cheat, and the group-law predictions for curve schemes.

Qualification is always decided by the linear-algebra oracle in
:mod:`ecshare.lsss`.  The predictions made from group sums of points are
checked against it, never trusted.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import kernels
from .agcode import min_distance, min_weight_where
from .curve import INFINITY, CurveSpec, Point, group_structure, group_sum, is_subgroup, neg
from .lsss import Scheme, SchemeError

MAX_PLAYERS = 16


class TheoremViolation(AssertionError):
    """A computed scheme contradicts a statement that should hold for it."""


class IdentityMismatch(RuntimeError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class AccessStructure:
    n: int
    minimal_qualified: tuple[tuple[int, ...], ...]

    def __contains__(self, Q) -> bool:
        Q = set(Q)
        return any(set(M) <= Q for M in self.minimal_qualified)


@dataclass(frozen=True)
class SchemeParams:
    d_min: int
    d_cheat: int
    is_mds: bool
    max_unqualified: int


@dataclass(frozen=True)
class Theorem3Verdict:
    A: tuple[int, ...]
    B: Point
    case: str
    predicted_qualified: bool  # is A^c qualified
    predicted_minimal: bool  # is A^c a minimal qualified set


def _require_players(s: Scheme):
    if s.n > MAX_PLAYERS:
        raise SchemeError(f"{s.n} players exceed the subset-enumeration limit {MAX_PLAYERS}")


def _bits(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(n) if mask >> i & 1)


def popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        pc[1 << b : 1 << (b + 1)] = pc[: 1 << b] + 1
    return pc


def minimal_table(table: np.ndarray, n: int) -> np.ndarray:
    """True at masks that are qualified while every one-smaller subset is not."""
    masks = np.arange(1 << n)
    out = table.copy()
    for b in range(n):
        has = (masks >> b) & 1 == 1
        out[has] &= ~table[masks[has] ^ (1 << b)]
    return out


def _sorted_sets(masks: Iterable[int], n: int) -> tuple[tuple[int, ...], ...]:
    sets = [_bits(int(m), n) for m in masks]
    return tuple(sorted(sets, key=lambda s: (len(s), s)))


def access_structure(s: Scheme) -> AccessStructure:
    _require_players(s)
    mins = np.nonzero(minimal_table(s.qualified_table, s.n))[0]
    return AccessStructure(s.n, _sorted_sets(mins, s.n))


def max_unqualified(s: Scheme) -> int:
    _require_players(s)
    pc = popcounts(s.n)
    unq = ~s.qualified_table
    return int(pc[unq].max()) if unq.any() else -1


def _min_span_size(s: Scheme, target: int, others: list[int]) -> int | None:
    """Least |T|, T among ``others``, with dual column ``target`` in span(h_T)."""
    F = s.field
    H = s.dual.generator
    cols = H[:, [target] + others]
    flags = kernels.qualified_flags(cols, F.add_table, F.mul_table, F.neg_table, F.inv_table)
    hits = popcounts(len(others))[flags]
    return int(hits.min()) if hits.size else None


def _smallest_support(s: Scheme, secret_needed: bool, include_dealer: bool = True) -> int:
    """Least number of players carrying a sharing codeword, found through the dual.

    A sharing word supported on S is a linear dependency among the
    reconstruction-code columns h_i, i in S.  A dependency using h_0 means
    h_0 in span(h_T); one avoiding it means some h_i (i >= 1) lies in the span
    of other player columns.  ``secret_needed`` keeps only the first kind.
    """
    players = list(range(1, s.n + 1))
    best = []
    if include_dealer:
        best.append(_min_span_size(s, 0, players))
    if not secret_needed:
        for i in players:
            t = _min_span_size(s, i, [j for j in players if j != i])
            if t is not None:
                best.append(t + 1)
    best = [b for b in best if b is not None]
    if not best:
        raise SchemeError("no sharing codeword with the requested support")
    return min(best)


def _enumerable(s: Scheme) -> bool:
    return s.field.q ** s.k <= s.cap


def d_min(s: Scheme) -> int:
    """Minimum weight of the share code (sharing codewords restricted to players)."""
    if _enumerable(s):
        return min_weight_where(s.sharing_code, False, s.cap)
    return d_min_by_dependency(s)


def d_min_by_dependency(s: Scheme) -> int:
    return _smallest_support(s, secret_needed=False)


def d_cheat_by_weight(s: Scheme) -> int:
    """Least share weight among sharing codewords with a nonzero secret."""
    if _enumerable(s):
        return min_weight_where(s.sharing_code, True, s.cap)
    return d_cheat_by_dependency(s)


def d_cheat_by_dependency(s: Scheme) -> int:
    return _smallest_support(s, secret_needed=True)


def d_cheat(s: Scheme) -> int:
    """n minus the largest unqualified set; cross-checked by the weight route."""
    value = s.n - max_unqualified(s)
    other = d_cheat_by_weight(s)
    if value != other:
        raise IdentityMismatch(f"d_cheat {value} from the access structure, {other} from weights")
    return value


def full_code_distance(s: Scheme) -> int:
    if _enumerable(s):
        return min_distance(s.sharing_code, s.cap)
    # a word of weight w on 0..n: either w share positions or 1 + (w - 1)
    with_dealer = _smallest_support(s, secret_needed=True) + 1
    without = _smallest_support(s, secret_needed=False, include_dealer=False) if s.n > 0 else with_dealer
    return min(with_dealer, without)


def mds_check(s: Scheme) -> SchemeParams:
    dm, dc = d_min(s), d_cheat(s)
    return SchemeParams(d_min=dm, d_cheat=dc, is_mds=dm == dc, max_unqualified=s.n - dc)


def theorem1_bounds(s: Scheme, params: SchemeParams, genus: int = 1) -> bool:
    m = s.m
    return m - 2 * genus + 1 <= params.d_min <= params.d_cheat <= m + 1


# ---------------------------------------------------------------- group labels


@dataclass(frozen=True)
class GroupLabels:
    """Discrete logs of the scheme points: D[i] = a_i * P + b_i * Q."""

    n1: int
    n2: int
    labels: np.ndarray  # (n+1, 2): column 0 mod n2, column 1 mod n1

    def index(self, a: int, b: int) -> int:
        return a % self.n2 * self.n1 + b % self.n1


@functools.lru_cache(maxsize=64)
def _label_lookup(c: CurveSpec) -> dict[Point, tuple[int, int]]:
    gs = group_structure(c)
    return {pt: ij for ij, pt in gs.label_map(c).items()}


def group_labels(s: Scheme) -> GroupLabels:
    c = _curve(s)
    gs = group_structure(c)
    look = _label_lookup(c)
    lab = np.array([look[pt] for pt in s.config.D], dtype=np.int64)
    return GroupLabels(gs.n1, gs.n2, lab)


def _curve(s: Scheme) -> CurveSpec:
    if s.config is None:
        raise SchemeError("group-law predictions need a curve scheme")
    return s.config.curve


def _subset_sums(lab: GroupLabels, n: int) -> np.ndarray:
    """Encoded group sum of the players in every mask."""
    a = np.zeros(1 << n, dtype=np.int64)
    b = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        lo, hi = 1 << i, 1 << (i + 1)
        a[lo:hi] = (a[:lo] + lab.labels[i + 1, 0]) % lab.n2
        b[lo:hi] = (b[:lo] + lab.labels[i + 1, 1]) % lab.n1
    return a * lab.n1 + b


# ---------------------------------------------------------------- group-sum predictor


def _classify(t: int, m: int, B_is_zero: bool, B_is_dealer: bool, B_in_D: bool, B_in_A: bool):
    if t > m:
        return "t>m never-qualified", False, False
    if t == m:
        return "t=m zero-sum", B_is_zero, B_is_zero
    if t == m - 1:
        return "t=m-1 B-escapes", not B_is_dealer, (not B_in_D) or B_in_A
    return "t<=m-2 always-qualified", True, False


def theorem3_predict(s: Scheme, A: Iterable[int]) -> Theorem3Verdict:
    """Predict from group sums whether the complement of ``A`` is (minimally) qualified.

    B is the point with B + sum(A) = O.  A set of size t <= m-2 never yields
    a minimal complement because adding any player keeps it qualified.
    """
    c = _curve(s)
    A = tuple(sorted(set(A)))
    s.mask(A)
    D = s.config.D
    B = neg(c, group_sum(c, (D[i] for i in A)))
    in_A = any(D[i] == B for i in A)
    case, qual, minimal = _classify(len(A), s.m, B.is_infinity, B == D[0], B in D, in_A)
    return Theorem3Verdict(A, B, case, qual, minimal)


def theorem3_validate(s: Scheme) -> dict:
    """Compare the group-sum predictions with the oracle on every subset A.

    Qualification is compared for all sizes; minimality is compared for the
    sizes t = m and t = m - 1 that carry a characterization.
    """
    _require_players(s)
    n, m = s.n, s.m
    lab = group_labels(s)
    full = (1 << n) - 1
    masks = np.arange(1 << n)
    t = popcounts(n)  # |A| for A = mask
    sums = _subset_sums(lab, n)
    neg_sums = ((-(sums // lab.n1)) % lab.n2) * lab.n1 + ((-(sums % lab.n1)) % lab.n1)
    D_codes = np.array([lab.index(a, b) for a, b in lab.labels])
    dealer = D_codes[0]
    player_bit = {int(code): i for i, code in enumerate(D_codes[1:])}
    B = neg_sums
    B_zero = B == 0
    B_dealer = B == dealer
    B_in_D = np.isin(B, D_codes)
    B_bit = np.array([player_bit.get(int(x), -1) for x in range(lab.n1 * lab.n2)])[B]
    B_in_A = (B_bit >= 0) & ((masks >> np.maximum(B_bit, 0)) & 1 == 1)

    pred_q = np.where(t > m, False, np.where(t == m, B_zero, np.where(t == m - 1, ~B_dealer, True)))
    pred_min = np.where(t == m, B_zero, np.where(t == m - 1, ~B_in_D | B_in_A, False))
    oracle = s.qualified_table[full ^ masks]  # qualification of A^c
    oracle_min = minimal_table(s.qualified_table, n)[full ^ masks]

    q_bad = np.nonzero(pred_q != oracle)[0]
    band = (t == m) | (t == m - 1)
    min_bad = np.nonzero(band & (pred_min != oracle_min))[0]
    boundary = (t == m - 2) if m >= 2 else np.zeros_like(band)
    cases = {
        "t>m never-qualified": int((t > m).sum()),
        "t=m zero-sum": int((t == m).sum()),
        "t=m-1 B-escapes": int((t == m - 1).sum()),
        "t<=m-2 always-qualified": int((t <= m - 2).sum()),
    }
    return {
        "subsets_checked": int(1 << n),
        "cases": cases,
        "qualified_disagreements": [list(_bits(int(x), n)) for x in q_bad],
        "minimal_disagreements": [list(_bits(int(x), n)) for x in min_bad],
        "part_b_boundary": {
            "complement_size": n - m + 2,
            "subsets": int(boundary.sum()),
            "all_qualified": bool(oracle[boundary].all()) if boundary.any() else True,
        },
    }


# ---------------------------------------------------------------- subgroup schemes, sufficient MDS condition


def theorem4_precondition(s: Scheme) -> bool:
    c = _curve(s)
    return is_subgroup(c, set(s.config.D) | {INFINITY})


def theorem4_witness(s: Scheme) -> tuple[int, ...] | None:
    """Lexicographically first m-1 players whose sum is -P_0, or None.

    The complement of a witness is checked to be unqualified.
    """
    lab = group_labels(s)
    n, m = s.n, s.m
    ta, tb = lab.labels[0]
    target = lab.index(-ta, -tb)
    for combo in itertools.combinations(range(1, n + 1), m - 1):
        a = sum(int(lab.labels[i, 0]) for i in combo)
        b = sum(int(lab.labels[i, 1]) for i in combo)
        if lab.index(a, b) == target:
            complement = sorted(set(range(1, n + 1)) - set(combo))
            if s.qualified_table[s.mask(complement)]:
                raise TheoremViolation(f"complement of witness {combo} is qualified")
            return combo
    return None


@dataclass(frozen=True)
class Theorem4Result:
    precondition: bool
    witness: tuple[int, ...] | None
    params: SchemeParams | None
    holds: bool | None  # None when the precondition fails


def theorem4_check(s: Scheme, params: SchemeParams | None = None, strict: bool = True) -> Theorem4Result:
    """If D + {O} is a subgroup, the scheme should have d_min = d_cheat = m - 1."""
    pre = theorem4_precondition(s)
    if not pre:
        return Theorem4Result(False, None, params, None)
    params = params or mds_check(s)
    witness = theorem4_witness(s)
    holds = params.d_min == params.d_cheat == s.m - 1
    if strict and not holds:
        raise TheoremViolation(
            f"subgroup scheme has (d_min, d_cheat) = ({params.d_min}, {params.d_cheat}), expected {s.m - 1}"
        )
    return Theorem4Result(True, witness, params, holds)


def corollary1_condition(s: Scheme) -> tuple[int, ...] | None:
    """An (m-1)-set A whose complement is neither type-2 minimal nor contains a type-1 minimal set."""
    _require_players(s)
    lab = group_labels(s)
    n, m = s.n, s.m
    codes = [lab.index(a, b) for a, b in lab.labels]
    code_set = set(codes)
    for A in itertools.combinations(range(1, n + 1), m - 1):
        sa = sum(int(lab.labels[i, 0]) for i in A)
        sb = sum(int(lab.labels[i, 1]) for i in A)
        B = lab.index(-sa, -sb)
        type2 = B not in code_set or B in (codes[i] for i in A)
        if type2:
            continue
        # (n-m)-subsets of A^c are complements of A + {x}; type a) means zero sum
        if any(lab.index(sa + int(lab.labels[x, 0]), sb + int(lab.labels[x, 1])) == 0
               for x in range(1, n + 1) if x not in A):
            continue
        return A
    return None


def corollary1_check(s: Scheme, params: SchemeParams | None = None) -> bool:
    A = corollary1_condition(s)
    if A is None:
        return False
    params = params or mds_check(s)
    if not params.is_mds:
        raise TheoremViolation(f"sufficient condition met by A={A} but the scheme is not MDS")
    return True
