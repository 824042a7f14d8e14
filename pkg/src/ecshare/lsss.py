"""Linear secret sharing on the residue code C_Omega(D, mO).

Coordinate 0 of every sharing codeword is the secret; coordinates 1..n are
the shares of players P_1..P_n.  Reconstruction uses a codeword of the dual
code C_L(D, mO) that has a 1 at coordinate 0 and is supported on the
reconstructing set.

Player subsets are passed as iterables of 1-based player indices.  The
all-subsets tables are indexed by bitmask, with player ``i`` at bit ``i-1``.
"""
from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .agcode import (
    ENUMERATION_CAP,
    LinearCode,
    codewords,
    dual_code,
    functional_code,
    message_digits,
    solve,
    vec_mat,
)
from .curve import CurveSpec, Point, on_curve
from .field import FieldElement, FieldSpec


class SchemeError(ValueError):
    pass


class DegenerateScheme(SchemeError):
    pass


class LemmaHypothesisViolated(SchemeError):
    pass


class NotQualified(SchemeError):
    pass


@dataclass(frozen=True)
class SchemeConfig:
    curve: CurveSpec
    m: int
    D: tuple[Point, ...]
    rng_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "D", tuple(self.D))
        if any(pt.is_infinity for pt in self.D):
            raise SchemeError("D must not contain the point at infinity")
        if len(set(self.D)) != len(self.D):
            raise SchemeError("D has repeated points")
        for pt in self.D:
            if not on_curve(self.curve, pt):
                raise SchemeError(f"{self.curve.format_point(pt)} is not on the curve")
        n = len(self.D) - 1
        if not 2 <= self.m <= n - 1:
            raise SchemeError(f"need 2 <= m <= n-1 (m={self.m}, n={n})")

    @property
    def n(self) -> int:
        return len(self.D) - 1

    @property
    def dealer(self) -> Point:
        return self.D[0]

    @property
    def players(self) -> tuple[Point, ...]:
        return self.D[1:]


@dataclass(frozen=True)
class ShareBundle:
    secret: FieldElement
    shares: tuple[FieldElement, ...]

    @property
    def word(self) -> list[int]:
        return [self.secret.value] + [s.value for s in self.shares]


@dataclass(frozen=True, eq=False)
class Scheme:
    """An ideal LSSS whose share vectors form ``sharing_code``.

    ``dual`` is the reconstruction code; for curve schemes it is C_L(D, mO)
    and ``sharing_code`` is C_Omega(D, mO).
    """

    field: FieldSpec
    sharing_code: LinearCode
    dual: LinearCode
    config: SchemeConfig | None = None
    m: int | None = None
    cap: int = field(default=ENUMERATION_CAP, repr=False)

    @property
    def n(self) -> int:
        return self.sharing_code.length - 1

    @property
    def k(self) -> int:
        return self.sharing_code.dimension

    @property
    def curve(self) -> CurveSpec | None:
        return self.config.curve if self.config else None

    @functools.cached_property
    def columns(self) -> list[list[int]]:
        """g_0..g_n: the columns of the sharing generator."""
        return self.sharing_code.generator.T.tolist()

    @functools.cached_property
    def words(self) -> np.ndarray:
        return codewords(self.sharing_code, self.cap)

    @functools.cached_property
    def qualified_table(self) -> np.ndarray:
        F = self.field
        flags = kernels.qualified_flags(
            self.sharing_code.generator, F.add_table, F.mul_table, F.neg_table, F.inv_table
        )
        flags.setflags(write=False)
        return flags

    def mask(self, Q: Iterable[int]) -> int:
        m = 0
        for i in Q:
            if not 1 <= i <= self.n:
                raise SchemeError(f"player index {i} out of range 1..{self.n}")
            m |= 1 << (i - 1)
        return m


def _validate(s: Scheme) -> Scheme:
    cols = s.columns
    if not any(cols[0]):
        raise DegenerateScheme("secret column g_0 is zero")
    # e_i lies in the dual iff column i of its parity-check (the sharing generator) vanishes
    for i, col in enumerate(cols):
        if not any(col):
            raise LemmaHypothesisViolated(f"the dual code contains the weight-1 word e_{i}")
    if not s.dual.generator[:, 0].any():
        raise DegenerateScheme("a sharing codeword is supported on the secret alone")
    return s


def build_scheme(config: SchemeConfig, cap: int = ENUMERATION_CAP) -> Scheme:
    CL = functional_code(config.curve, config.m, config.D)
    share = dual_code(CL)
    s = Scheme(config.curve.field, share, CL, config=config, m=config.m, cap=cap)
    return _validate(s)


def scheme_from_dual(dual: LinearCode, cap: int = ENUMERATION_CAP) -> Scheme:
    """Scheme whose reconstruction code is ``dual`` (any evaluation code)."""
    return _validate(Scheme(dual.field, dual_code(dual), dual, cap=cap))


def _code(F: FieldSpec, value) -> int:
    if isinstance(value, FieldElement):
        if value.field != F:
            raise SchemeError("secret belongs to a different field")
        return value.value
    if isinstance(value, int) and not isinstance(value, bool):
        if not 0 <= value < F.q:
            raise SchemeError(f"{value} is not a field code")
        return value
    return F.parse(value)


def deal(s: Scheme, secret, seed: int | None = None) -> ShareBundle:
    """Sample u uniformly with u . g_0 = secret and hand out u G.

    The generator is numpy's PCG64 (``default_rng``) seeded with ``seed`` or,
    if omitted, the config seed.  The first nonzero entry of g_0 fixes one
    message digit; the other k-1 digits are drawn uniformly.
    """
    F = s.field
    sec = _code(F, secret)
    if seed is None:
        seed = s.config.rng_seed if s.config else 0
    rng = np.random.default_rng(seed)
    g0 = s.columns[0]
    k = len(g0)
    u = rng.integers(0, F.q, size=k).tolist()
    j = next(i for i, x in enumerate(g0) if x)
    acc = 0
    for i in range(k):
        if i != j:
            acc = F.add(acc, F.mul(u[i], g0[i]))
    u[j] = F.div(F.sub(sec, acc), g0[j])
    word = vec_mat(F, u, s.sharing_code.rows())
    assert word[0] == sec
    return ShareBundle(FieldElement(F, word[0]), tuple(FieldElement(F, w) for w in word[1:]))


def is_qualified(s: Scheme, Q: Iterable[int]) -> bool:
    """g_0 in span{g_i : i in Q} (table lookup over the column-span oracle)."""
    return bool(s.qualified_table[s.mask(Q)])


def is_qualified_direct(s: Scheme, Q: Iterable[int]) -> bool:
    """Column-span test by a fresh linear solve (no tables)."""
    Q = sorted(set(Q))
    s.mask(Q)
    if not Q:
        return False
    A = [[s.columns[i][r] for i in Q] for r in range(s.k)]
    return solve(s.field, A, s.columns[0]) is not None


def recovery_vector(s: Scheme, Q: Iterable[int]) -> dict[int, FieldElement] | None:
    """Coefficients v_i (i in Q) with (1, v) in the dual code and support in {0} + Q."""
    F = s.field
    Q = sorted(set(Q))
    s.mask(Q)
    if not Q:
        return None
    A = [[s.columns[i][r] for i in Q] for r in range(s.k)]
    target = [F.neg(x) for x in s.columns[0]]
    x = solve(F, A, target)
    if x is None:
        return None
    return {i: FieldElement(F, xi) for i, xi in zip(Q, x)}


def reconstruct(s: Scheme, Q: Iterable[int], sub_shares: Mapping[int, object]) -> FieldElement:
    F = s.field
    Q = sorted(set(Q))
    v = recovery_vector(s, Q)
    if v is None:
        raise NotQualified(f"players {Q} are not qualified")
    acc = 0
    for i in Q:
        acc = F.add(acc, F.mul(v[i].value, _code(F, sub_shares[i])))
    return FieldElement(F, F.neg(acc))


# ---------------------------------------------------------------- dual-codeword route


def lemma1_witness(s: Scheme, Q: Iterable[int]) -> list[int] | None:
    """Search the dual code exhaustively for (1, v) supported in {0} + Q."""
    F = s.field
    allowed = np.zeros(s.n + 1, dtype=bool)
    allowed[0] = True
    for i in Q:
        allowed[i] = True
    words = codewords(s.dual, s.cap)
    ok = (words[:, 0] == 1) & ~(words[:, ~allowed].any(axis=1))
    hits = np.nonzero(ok)[0]
    return words[hits[0]].tolist() if len(hits) else None


def upward_closure(flags: np.ndarray, n: int) -> np.ndarray:
    """Set every superset of a True mask (sum over subsets, one bit at a time)."""
    f = flags.copy()
    for b in range(n):
        step = 1 << b
        view = f.reshape(-1, 2 * step)
        view[:, step:] |= view[:, :step]
    return f


def downward_closure(flags: np.ndarray, n: int) -> np.ndarray:
    f = flags.copy()
    for b in range(n):
        step = 1 << b
        view = f.reshape(-1, 2 * step)
        view[:, :step] |= view[:, step:]
    return f


def support_masks(words: np.ndarray) -> np.ndarray:
    """Bitmask of nonzero share coordinates (1..n) for each word."""
    n = words.shape[1] - 1
    weights = (1 << np.arange(n, dtype=np.int64))
    return (words[:, 1:] != 0).astype(np.int64) @ weights


def lemma1_table(s: Scheme) -> np.ndarray:
    """Qualification of every subset via dual codewords with v_0 = 1."""
    words = codewords(s.dual, s.cap)
    masks = support_masks(words[words[:, 0] == 1])
    flags = np.zeros(1 << s.n, dtype=bool)
    flags[masks] = True
    return upward_closure(flags, s.n)


# ---------------------------------------------------------------- perfectness


def perfectness_profile(s: Scheme, B: Iterable[int]) -> dict[FieldElement, Counter]:
    """For each secret, the multiset of share tuples on ``B`` over all randomness."""
    F = s.field
    B = sorted(set(B))
    s.mask(B)
    words = s.words
    # encode each share tuple as one integer so np.unique runs on a flat array
    place = F.q ** np.arange(len(B) - 1, -1, -1, dtype=np.int64)
    keys_all = words[:, B].astype(np.int64) @ place if B else np.zeros(len(words), dtype=np.int64)
    out: dict[FieldElement, Counter] = {}
    for sec in range(F.q):
        keys, counts = np.unique(keys_all[words[:, 0] == sec], return_counts=True)
        tally = Counter()
        for key, cnt in zip(keys.tolist(), counts.tolist()):
            tally[tuple(message_digits(key, F.q, len(B)))] = cnt
        out[FieldElement(F, sec)] = tally
    return out


def is_perfect_on(s: Scheme, B: Sequence[int]) -> bool:
    profile = perfectness_profile(s, B)
    first = next(iter(profile.values()))
    return all(t == first for t in profile.values())
