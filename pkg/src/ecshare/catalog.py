"""Deterministic catalog of small curves and scheme configurations for sweeps."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .curve import CurveError, CurveSpec, enumerate_points, group_structure, subgroups
from .field import GF, FieldSpec
from .lsss import SchemeConfig

CATALOG_FIELDS = ((2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1))
CURVES_PER_FIELD = 3


def _coefficient_families(F: FieldSpec) -> Iterator[tuple[int, int, int, int, int]]:
    q = F.q
    if F.p == 2:
        # supersingular y^2 + a3 y = x^3 + a4 x + a6, then ordinary y^2 + xy = x^3 + a2 x^2 + a6
        for a3, a4, a6 in itertools.product(range(1, q), range(q), range(q)):
            yield (0, 0, a3, a4, a6)
        for a2, a6 in itertools.product(range(q), range(1, q)):
            yield (1, a2, 0, 0, a6)
    elif F.p == 3:
        for a2, a4, a6 in itertools.product(range(q), repeat=3):
            yield (0, a2, 0, a4, a6)
    else:
        for a4, a6 in itertools.product(range(q), repeat=2):
            yield (0, 0, 0, a4, a6)


def catalog_curves(F: FieldSpec, limit: int = CURVES_PER_FIELD) -> list[CurveSpec]:
    """Up to ``limit`` curves with distinct group shapes, largest groups first.

    Each shape is represented by its first curve in coefficient order.
    """
    first: dict[tuple[int, int], tuple[int, CurveSpec]] = {}
    for pos, coeffs in enumerate(_coefficient_families(F)):
        try:
            c = CurveSpec(F, *coeffs)
        except CurveError:
            continue
        gs = group_structure(c)
        first.setdefault((gs.n1, gs.n2), (pos, c))
    ranked = sorted(first.values(), key=lambda pc: (-group_structure(pc[1]).order, pc[0]))
    return [c for _, c in sorted(ranked[:limit], key=lambda pc: pc[0])]


def example_curves() -> list[CurveSpec]:
    """The curves of the three worked examples."""
    return [
        CurveSpec(GF(7), a4=5, a6=4),
        CurveSpec(GF(2, 2), a3=1),
        CurveSpec(GF(2, 3), a3=1),
    ]


def catalog() -> list[CurveSpec]:
    out = example_curves()
    for p, r in CATALOG_FIELDS:
        out.extend(c for c in catalog_curves(GF(p, r)) if c not in out)
    return out


@dataclass(frozen=True)
class SweepItem:
    config: SchemeConfig
    kind: str  # "subgroup" or "random"


def _dealers(pts: list, max_dealers: int | None):
    if max_dealers is None or len(pts) <= max_dealers:
        return pts
    step = len(pts) / max_dealers
    return [pts[int(i * step)] for i in range(max_dealers)]


def sweep_configs(
    curves: list[CurveSpec] | None = None,
    max_dealers: int | None = 4,
    random_sets: int = 2,
    seed: int = 2024,
    min_points: int = 0,
) -> Iterator[SweepItem]:
    """Subgroup configs (every subgroup, several dealers, every admissible m)
    followed by seeded random subsets of the affine points."""
    rng = np.random.default_rng(seed)
    for c in curves if curves is not None else catalog():
        for H in subgroups(c):
            pts = sorted(p for p in H if not p.is_infinity)
            if len(pts) < max(4, min_points):
                continue
            for dealer in _dealers(pts, max_dealers):
                D = [dealer] + [p for p in pts if p != dealer]
                for m in range(2, len(D) - 1):
                    yield SweepItem(SchemeConfig(c, m, tuple(D)), "subgroup")
        affine = [p for p in enumerate_points(c) if not p.is_infinity]
        for _ in range(random_sets):
            if len(affine) < 4:
                break
            size = int(rng.integers(4, len(affine) + 1))
            idx = rng.choice(len(affine), size=size, replace=False)
            D = [affine[i] for i in idx]
            for m in range(2, len(D) - 1):
                yield SweepItem(SchemeConfig(c, m, tuple(D)), "random")
