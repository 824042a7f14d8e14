"""Cheating players and exhaustive nearest-codeword decoding.

The model: cheaters replace their shares with other field values, the
combiner sees all n submitted shares and decodes to the nearest sharing
codewords in Hamming distance on the player coordinates.  d_min bounds how
many cheaters can be identified, d_cheat how many can be tolerated while
still recovering the secret.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .agcode import _check_cap, message_digits, vec_mat
from .field import FieldElement
from .lsss import Scheme, SchemeError, ShareBundle, deal

AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class CheatScenario:
    scheme: Scheme
    true_bundle: ShareBundle
    cheater_indices: frozenset[int]
    submitted: tuple[FieldElement, ...]


@dataclass(frozen=True)
class DecodeResult:
    candidates: tuple[tuple[int, ...], ...]
    distance: int
    recovered_secret: FieldElement | str
    identified_cheaters: frozenset[int] | str

    @property
    def unique(self) -> bool:
        return len(self.candidates) == 1


def corrupt(s: Scheme, bundle: ShareBundle, indices: Iterable[int], seed: int) -> CheatScenario:
    """Replace each indexed share by a uniformly drawn different value."""
    idx = frozenset(indices)
    s.mask(idx)
    q = s.field.q
    rng = np.random.default_rng(seed)
    submitted = list(bundle.shares)
    for i in sorted(idx):
        honest = submitted[i - 1].value
        offset = int(rng.integers(1, q))
        submitted[i - 1] = FieldElement(s.field, (honest + offset) % q)
    return CheatScenario(s, bundle, idx, tuple(submitted))


def decode(s: Scheme, submitted: Sequence) -> DecodeResult:
    F = s.field
    _check_cap(s.sharing_code, s.cap)
    target = np.array([v.value if isinstance(v, FieldElement) else int(v) for v in submitted], dtype=np.uint8)
    if len(target) != s.n:
        raise SchemeError(f"expected {s.n} submitted shares, got {len(target)}")
    dist, hits = kernels.nearest(s.sharing_code.generator, F.add_table, F.mul_table, target, 1)
    rows = s.sharing_code.rows()
    cands = tuple(tuple(vec_mat(F, message_digits(int(h), F.q, s.k), rows)) for h in hits)
    secrets = {c[0] for c in cands}
    recovered = FieldElement(F, cands[0][0]) if len(secrets) == 1 else AMBIGUOUS
    if len(cands) == 1:
        cheaters = frozenset(i for i in range(1, s.n + 1) if cands[0][i] != target[i - 1])
    else:
        cheaters = AMBIGUOUS
    return DecodeResult(cands, int(dist), recovered, cheaters)


@dataclass(frozen=True)
class SimulationSummary:
    trials: int
    cheaters: int
    secret_recovered: int
    cheaters_identified: int
    ambiguous_secret: int
    ambiguous_cheaters: int
    wrong_secret: int

    def as_dict(self) -> dict:
        t = max(self.trials, 1)
        return {
            "model": "nearest-codeword decoding on share coordinates",
            "trials": self.trials,
            "cheaters": self.cheaters,
            "secret_recovered": self.secret_recovered,
            "cheaters_identified": self.cheaters_identified,
            "ambiguous_secret": self.ambiguous_secret,
            "ambiguous_cheaters": self.ambiguous_cheaters,
            "wrong_secret": self.wrong_secret,
            "recovery_rate": self.secret_recovered / t,
            "identification_rate": self.cheaters_identified / t,
        }


def run_trial(s: Scheme, t: int, seed: int):
    """One scenario derived entirely from ``seed``; returns (scenario, result)."""
    rng = np.random.default_rng(seed)
    secret = int(rng.integers(0, s.field.q))
    bundle = deal(s, secret, seed=int(rng.integers(0, 2**63)))
    idx = sorted(rng.choice(np.arange(1, s.n + 1), size=t, replace=False).tolist())
    scen = corrupt(s, bundle, idx, seed=int(rng.integers(0, 2**63)))
    return scen, decode(s, scen.submitted)


def simulate(s: Scheme, trials: int, t: int, seed: int, detail: list | None = None) -> SimulationSummary:
    """Run ``trials`` scenarios with exactly ``t`` cheaters.

    Trial ``i`` is seeded from ``(seed, i)`` so the outcome does not depend on
    execution order.  When ``detail`` is a list, one record per trial is appended.
    """
    if not 0 <= t <= s.n:
        raise SchemeError(f"cheater count {t} outside 0..{s.n}")
    rec = ident = amb_s = amb_c = wrong = 0
    for i in range(trials):
        trial_seed = int(np.random.SeedSequence([seed, i]).generate_state(1, dtype=np.uint64)[0])
        scen, res = run_trial(s, t, trial_seed)
        if res.recovered_secret == AMBIGUOUS:
            amb_s += 1
        elif res.recovered_secret == scen.true_bundle.secret:
            rec += 1
        else:
            wrong += 1
        if res.identified_cheaters == AMBIGUOUS:
            amb_c += 1
        elif res.identified_cheaters == scen.cheater_indices:
            ident += 1
        if detail is not None:
            detail.append(
                {
                    "trial": i,
                    "secret": str(scen.true_bundle.secret),
                    "cheaters": sorted(scen.cheater_indices),
                    "distance": res.distance,
                    "candidates": len(res.candidates),
                    "recovered": str(res.recovered_secret),
                }
            )
    return SimulationSummary(trials, t, rec, ident, amb_s, amb_c, wrong)


def confusable_scenario(s: Scheme, t: int) -> tuple[ShareBundle, tuple[FieldElement, ...]] | None:
    """Search for honest shares plus t altered shares that decode ambiguously.

    Uses a sharing codeword c with c_0 != 0 of least share weight w.  From the
    zero bundle, altering t >= ceil(w/2) shares of its support towards c puts
    c at distance w - t <= t, tying or beating the honest word.
    """
    F = s.field
    words = s.words
    sel = words[words[:, 0] != 0]
    weights = np.count_nonzero(sel[:, 1:], axis=1)
    c = sel[int(np.argmin(weights))]
    support = [i for i in range(1, s.n + 1) if c[i]]
    w = len(support)
    if 2 * t < w or t > w:
        return None
    zero = ShareBundle(FieldElement(F, 0), tuple(FieldElement(F, 0) for _ in range(s.n)))
    submitted = [FieldElement(F, 0)] * s.n
    for i in support[:t]:
        submitted[i - 1] = FieldElement(F, int(c[i]))
    res = decode(s, submitted)
    if res.recovered_secret != AMBIGUOUS and res.recovered_secret == zero.secret:
        return None
    return zero, tuple(submitted)
