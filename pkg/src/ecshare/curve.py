"""Rational points on elliptic curves in general Weierstrass form.

    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6

over a small field GF(q).  Coordinates are field codes (see :mod:`ecshare.field`).
The long form is needed because the supersingular curves in characteristic 2
(``y^2 + y = x^3``) have no short Weierstrass model.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .field import FieldSpec


class CurveError(ValueError):
    pass


class NotOnCurveError(CurveError):
    pass


@dataclass(frozen=True)
class Point:
    """An affine point, or the point at infinity when ``x is None``."""

    x: int | None = None
    y: int | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def sort_key(self):
        return (0, 0, 0) if self.x is None else (1, self.x, self.y)

    def __lt__(self, other: "Point"):
        return self.sort_key() < other.sort_key()


INFINITY = Point()


@dataclass(frozen=True)
class CurveSpec:
    field: FieldSpec
    a1: int = 0
    a2: int = 0
    a3: int = 0
    a4: int = 0
    a6: int = 0
    genus = 1

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            v = getattr(self, name)
            if not 0 <= v < self.field.q:
                raise CurveError(f"coefficient {name}={v} is not in {self.field!r}")
        if self.discriminant() == 0:
            raise CurveError("singular curve: discriminant is zero")

    @property
    def coefficients(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def discriminant(self) -> int:
        F = self.field
        a1, a2, a3, a4, a6 = self.coefficients
        c = F.from_int
        m, a, s = F.mul, F.add, F.sub
        b2 = a(m(a1, a1), m(c(4), a2))
        b4 = a(m(c(2), a4), m(a1, a3))
        b6 = a(m(a3, a3), m(c(4), a6))
        b8 = s(
            a(a(m(m(a1, a1), a6), m(m(c(4), a2), a6)), m(a2, m(a3, a3))),
            a(m(m(a1, a3), a4), m(a4, a4)),
        )
        t1 = m(m(b2, b2), b8)
        t2 = m(c(8), m(b4, m(b4, b4)))
        t3 = m(c(27), m(b6, b6))
        t4 = m(c(9), m(b2, m(b4, b6)))
        return s(s(s(t4, t1), t2), t3)

    def lhs_rhs(self, x: int, y: int) -> tuple[int, int]:
        F = self.field
        m, a = F.mul, F.add
        lhs = a(a(m(y, y), m(self.a1, m(x, y))), m(self.a3, y))
        x2 = m(x, x)
        rhs = a(a(a(m(x2, x), m(self.a2, x2)), m(self.a4, x)), self.a6)
        return lhs, rhs

    def __repr__(self):
        f = self.field.format
        return (
            f"CurveSpec({self.field!r}, a1={f(self.a1)}, a2={f(self.a2)}, "
            f"a3={f(self.a3)}, a4={f(self.a4)}, a6={f(self.a6)})"
        )

    # -- text encoding --

    def format_point(self, pt: Point) -> str:
        if pt.is_infinity:
            return "inf"
        return f"({self.field.format(pt.x)},{self.field.format(pt.y)})"

    def parse_point(self, text: str) -> Point:
        s = str(text).strip().replace(" ", "")
        if s.lower() in ("inf", "o", "infinity"):
            return INFINITY
        if not (s.startswith("(") and s.endswith(")")):
            raise CurveError(f"cannot parse point {text!r}")
        body = s[1:-1]
        if self.field.r > 1 and self.field.p >= 10:
            # digits are comma separated: split the coordinate list in half
            parts = body.split(",")
            half = len(parts) // 2
            xs, ys = ",".join(parts[:half]), ",".join(parts[half:])
        else:
            if body.count(",") != 1:
                raise CurveError(f"cannot parse point {text!r}")
            xs, ys = body.split(",")
        pt = Point(self.field.parse(xs), self.field.parse(ys))
        if not on_curve(self, pt):
            raise NotOnCurveError(f"{text} is not on {self!r}")
        return pt


def on_curve(c: CurveSpec, pt: Point) -> bool:
    if pt.is_infinity:
        return True
    lhs, rhs = c.lhs_rhs(pt.x, pt.y)
    return lhs == rhs


def _require(c: CurveSpec, *pts: Point):
    for pt in pts:
        if not on_curve(c, pt):
            raise NotOnCurveError(f"{pt} is not on {c!r}")


def neg(c: CurveSpec, pt: Point) -> Point:
    _require(c, pt)
    return _neg(c, pt)


def _neg(c: CurveSpec, pt: Point) -> Point:
    if pt.is_infinity:
        return pt
    F = c.field
    # -(x, y) = (x, -y - a1 x - a3)
    return Point(pt.x, F.sub(F.sub(F.neg(pt.y), F.mul(c.a1, pt.x)), c.a3))


def add(c: CurveSpec, p1: Point, p2: Point) -> Point:
    _require(c, p1, p2)
    return _add(c, p1, p2)


def _add(c: CurveSpec, p1: Point, p2: Point) -> Point:
    if p1.is_infinity:
        return p2
    if p2.is_infinity:
        return p1
    F = c.field
    m, a, s = F.mul, F.add, F.sub
    x1, y1, x2, y2 = p1.x, p1.y, p2.x, p2.y
    if x1 == x2:
        denom = a(a(m(F.from_int(2), y1), m(c.a1, x1)), c.a3)
        if y2 != y1 or denom == 0:
            # vertical chord or vertical tangent
            return INFINITY
        num = s(a(a(m(F.from_int(3), m(x1, x1)), m(m(F.from_int(2), c.a2), x1)), c.a4), m(c.a1, y1))
        lam = F.div(num, denom)
        nu_num = s(a(a(F.neg(m(x1, m(x1, x1))), m(c.a4, x1)), m(F.from_int(2), c.a6)), m(c.a3, y1))
        nu = F.div(nu_num, denom)
    else:
        dx = s(x2, x1)
        lam = F.div(s(y2, y1), dx)
        nu = F.div(s(m(y1, x2), m(y2, x1)), dx)
    x3 = s(s(s(a(m(lam, lam), m(c.a1, lam)), c.a2), x1), x2)
    y3 = s(s(F.neg(m(a(lam, c.a1), x3)), nu), c.a3)
    return Point(x3, y3)


def scalar_mul(c: CurveSpec, k: int, pt: Point) -> Point:
    _require(c, pt)
    if k < 0:
        k, pt = -k, _neg(c, pt)
    result, base = INFINITY, pt
    while k:
        if k & 1:
            result = _add(c, result, base)
        base = _add(c, base, base)
        k >>= 1
    return result


def group_sum(c: CurveSpec, pts: Iterable[Point]) -> Point:
    total = INFINITY
    for pt in pts:
        _require(c, pt)
        total = _add(c, total, pt)
    return total


def point_order(c: CurveSpec, pt: Point) -> int:
    _require(c, pt)
    k, cur = 1, pt
    while not cur.is_infinity:
        cur = _add(c, cur, pt)
        k += 1
    return k


@functools.lru_cache(maxsize=256)
def enumerate_points(c: CurveSpec) -> tuple[Point, ...]:
    """All rational points: infinity first, then affine points in (x, y) order."""
    F = c.field
    pts = [INFINITY]
    for x in range(F.q):
        for y in range(F.q):
            lhs, rhs = c.lhs_rhs(x, y)
            if lhs == rhs:
                pts.append(Point(x, y))
    return tuple(pts)


def is_subgroup(c: CurveSpec, pts: Iterable[Point]) -> bool:
    s = set(pts)
    _require(c, *s)
    if INFINITY not in s:
        return False
    return all(_neg(c, a) in s for a in s) and all(_add(c, a, b) in s for a in s for b in s)


@dataclass(frozen=True)
class GroupStructure:
    """E(GF(q)) = Z_n1 + Z_n2 with n1 | n2."""

    order: int
    n1: int
    n2: int
    generators: tuple[Point, ...]
    is_cyclic: bool
    is_supersingular: bool
    trace: int

    def label_map(self, c: CurveSpec) -> dict[tuple[int, int], Point]:
        """(i, j) -> i*P + j*Q for the stored generators (j = 0 if cyclic)."""
        P = self.generators[0]
        Q = self.generators[1] if len(self.generators) > 1 else INFINITY
        return {
            (i, j): _add(c, scalar_mul(c, i, P), scalar_mul(c, j, Q))
            for i in range(self.n2)
            for j in range(self.n1)
        }


class InvariantViolation(RuntimeError):
    pass


def _cyclic_subgroup(c: CurveSpec, pt: Point) -> set[Point]:
    out, cur = {INFINITY}, pt
    while not cur.is_infinity:
        out.add(cur)
        cur = _add(c, cur, pt)
    return out


@functools.lru_cache(maxsize=256)
def group_structure(c: CurveSpec) -> GroupStructure:
    pts = enumerate_points(c)
    N = len(pts)
    q = c.field.q
    orders = {pt: point_order(c, pt) for pt in pts}
    n2 = math.lcm(*orders.values())
    if N % n2:
        raise InvariantViolation(f"exponent {n2} does not divide order {N}")
    n1 = N // n2
    try:
        P = next(pt for pt in pts if orders[pt] == n2)
    except StopIteration:
        raise InvariantViolation("no point attains the group exponent") from None
    gens: tuple[Point, ...] = (P,)
    if n1 > 1:
        span = _cyclic_subgroup(c, P)
        Q = next(
            (pt for pt in pts if orders[pt] == n1 and _cyclic_subgroup(c, pt) & span == {INFINITY}),
            None,
        )
        if Q is None:
            raise InvariantViolation("no complementary generator found")
        gens = (P, Q)
    trace = q + 1 - N
    if trace * trace > 4 * q:
        raise InvariantViolation(f"point count {N} violates the Hasse bound for q={q}")
    if n2 % n1 or (q - 1) % n1:
        raise InvariantViolation(f"decomposition ({n1}, {n2}) violates n1 | n2, n1 | q-1")
    return GroupStructure(
        order=N,
        n1=n1,
        n2=n2,
        generators=gens,
        is_cyclic=n1 == 1,
        is_supersingular=trace % c.field.p == 0,
        trace=trace,
    )


def supersingular_case(c: CurveSpec, gs: GroupStructure | None = None) -> str | None:
    """Which supersingular group shape applies: 'cyclic', 'Z2+Z(q+1)/2',
    'Z(sqrt q - 1)^2' or 'Z(sqrt q + 1)^2'; None if the shape fits none."""
    gs = gs or group_structure(c)
    q = c.field.q
    if gs.is_cyclic:
        return "cyclic"
    if gs.n1 == 2 and 2 * gs.n2 == q + 1:
        return "Z2+Z(q+1)/2"
    root = math.isqrt(q)
    if root * root == q:
        if gs.n1 == gs.n2 == root - 1:
            return "Z(sqrt q - 1)^2"
        if gs.n1 == gs.n2 == root + 1:
            return "Z(sqrt q + 1)^2"
    return None


def subgroups(c: CurveSpec) -> list[frozenset[Point]]:
    """Every subgroup of E(GF(q)), ordered by size then canonical point order.

    Finite abelian groups of rank <= 2 have every subgroup generated by at
    most two elements, so closing all pairs is exhaustive.
    """
    pts = enumerate_points(c)
    cyc = {pt: frozenset(_cyclic_subgroup(c, pt)) for pt in pts}
    found: set[frozenset[Point]] = set(cyc.values())
    for i, a in enumerate(pts):
        for b in pts[i + 1 :]:
            if b in cyc[a] or a in cyc[b]:
                continue
            found.add(frozenset(_add(c, u, v) for u in cyc[a] for v in cyc[b]))
    return sorted(found, key=lambda s: (len(s), sorted(p.sort_key() for p in s)))


def sorted_points(pts: Sequence[Point]) -> list[Point]:
    return sorted(pts, key=Point.sort_key)
