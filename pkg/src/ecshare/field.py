"""Exact arithmetic in small finite fields GF(p^r).

Elements are stored as integer codes ``sum(c_k * p**k)`` where ``c_k`` is the
coefficient of ``z**k`` in the polynomial basis.  Code order is the canonical
element order (least significant digit varies fastest), so ``range(q)`` walks
the field in the same order as :func:`enumerate_field`.

All arithmetic goes through precomputed tables; fields are small by design.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

FIELD_ORDER_CAP = 256

# constant term first
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),  # z^2 + z + 1
    (2, 3): (1, 1, 0, 1),  # z^3 + z + 1
    (2, 4): (1, 1, 0, 0, 1),  # z^4 + z + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # z^5 + z^2 + 1
    (3, 2): (1, 0, 1),  # z^2 + 1
    (5, 2): (2, 0, 1),  # z^2 + 2
}


class FieldError(ValueError):
    """Invalid field parameters or mismatched operands."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over GF(p)."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    r = len(modulus) - 1
    for d in range(1, r // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not any(_poly_mod(list(modulus), divisor, p)):
                return False
    return True


def find_irreducible(p: int, r: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``r`` in canonical digit order."""
    for low in itertools.product(range(p), repeat=r):
        cand = tuple(reversed(low)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {r} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^r) with an explicit monic irreducible modulus."""

    p: int
    r: int = 1
    modulus: tuple[int, ...] = ()
    cap: int = field(default=FIELD_ORDER_CAP, compare=False, repr=False)

    add_table: np.ndarray = field(init=False, compare=False, repr=False)
    mul_table: np.ndarray = field(init=False, compare=False, repr=False)
    neg_table: np.ndarray = field(init=False, compare=False, repr=False)
    inv_table: np.ndarray = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        p, r = self.p, self.r
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if r < 1:
            raise FieldError("extension degree must be >= 1")
        if p**r > min(self.cap, FIELD_ORDER_CAP):
            raise FieldError(f"field order {p ** r} exceeds cap {min(self.cap, FIELD_ORDER_CAP)}")
        modulus = tuple(int(c) for c in self.modulus) if self.modulus else None
        if modulus is None:
            modulus = (0, 1) if r == 1 else DEFAULT_MODULI.get((p, r)) or find_irreducible(p, r)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {r}")
        if any(not 0 <= c < p for c in modulus):
            raise FieldError("modulus digits must lie in [0, p)")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        object.__setattr__(self, "modulus", modulus)
        self._build_tables()

    def _build_tables(self):
        p, r, q = self.p, self.r, self.q
        digits = np.array([self.digits(a) for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(r)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights
        # a * z^i for each a, then b*a = sum_i b_i (a z^i)
        shifts = np.zeros((r, q, r), dtype=np.int64)
        cur = digits.copy()
        m = np.array(self.modulus[:r], dtype=np.int64)
        for i in range(r):
            shifts[i] = cur
            top = cur[:, r - 1].copy()
            cur = np.concatenate([np.zeros((q, 1), dtype=np.int64), cur[:, : r - 1]], axis=1)
            cur = (cur - top[:, None] * m[None, :]) % p
        # prod[a, b, :] = sum_i digits[b, i] * shifts[i, a, :]
        prod = np.einsum("bi,iak->abk", digits, shifts) % p
        mul = prod @ weights
        inv = np.zeros(q, dtype=np.int64)
        rows, cols = np.nonzero(mul == 1)
        inv[rows] = cols
        for name, table in (("add_table", add), ("mul_table", mul), ("neg_table", neg), ("inv_table", inv)):
            table = table.astype(np.uint8)
            table.setflags(write=False)
            object.__setattr__(self, name, table)
        object.__setattr__(self, "_add", add.tolist())
        object.__setattr__(self, "_mul", mul.tolist())
        object.__setattr__(self, "_neg", neg.tolist())
        object.__setattr__(self, "_inv", inv.tolist())

    @property
    def q(self) -> int:
        return self.p**self.r

    def __repr__(self):
        if self.r == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.r})"

    # -- integer-code arithmetic used by the rest of the package --

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self._mul[result][a]
            a = self._mul[a][a]
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under Z -> GF(q)."""
        return n % self.p

    def digits(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.r):
            a, d = divmod(a, self.p)
            out.append(d)
        return tuple(out)

    def from_digits(self, digits: Sequence[int]) -> int:
        if len(digits) != self.r or any(not 0 <= d < self.p for d in digits):
            raise FieldError(f"expected {self.r} digits in [0, {self.p})")
        return sum(d * self.p**k for k, d in enumerate(digits))

    def format(self, a: int) -> str:
        if self.r == 1:
            return str(a)
        return "".join(str(d) for d in reversed(self.digits(a))) if self.p < 10 else ",".join(
            str(d) for d in reversed(self.digits(a))
        )

    def parse(self, text) -> int:
        """Parse the canonical text encoding (most significant digit first)."""
        if isinstance(text, bool):
            raise FieldError(f"cannot parse {text!r} as a field element")
        if isinstance(text, int):
            if self.r != 1 or not 0 <= text < self.p:
                raise FieldError(f"integer {text} is not an element of {self!r}")
            return text
        s = str(text).strip()
        if self.r == 1:
            try:
                v = int(s)
            except ValueError:
                raise FieldError(f"cannot parse {text!r} in {self!r}") from None
            if not 0 <= v < self.p:
                raise FieldError(f"{v} is not an element of {self!r}")
            return v
        parts = s.split(",") if "," in s else list(s)
        try:
            msd_first = [int(d) for d in parts]
        except ValueError:
            raise FieldError(f"cannot parse {text!r} in {self!r}") from None
        return self.from_digits(list(reversed(msd_first)))

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, (tuple, list)):
            return FieldElement(self, self.from_digits(value))
        if isinstance(value, int) and not isinstance(value, bool):
            return FieldElement(self, self.from_int(value)) if self.r == 1 else FieldElement(self, self._check(value))
        return FieldElement(self, self.parse(value))

    def _check(self, code: int) -> int:
        if not 0 <= code < self.q:
            raise FieldError(f"code {code} out of range for {self!r}")
        return code

    def elements(self) -> list["FieldElement"]:
        return enumerate_field(self)


@functools.lru_cache(maxsize=None)
def GF(p: int, r: int = 1, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """Cached constructor; ``modulus`` lists coefficients constant term first."""
    return FieldSpec(p, r, tuple(modulus) if modulus else ())


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.value)

    def _same(self, other) -> "FieldElement":
        if isinstance(other, int) and not isinstance(other, bool):
            return FieldElement(self.field, self.field.from_int(other))
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldError("operands belong to different fields")
        return other

    def __add__(self, other):
        return ff_add(self, self._same(other))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._same(other)
        return FieldElement(self.field, self.field.sub(self.value, o.value))

    def __rsub__(self, other):
        return self._same(other) - self

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return ff_mul(self, self._same(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * ff_inv(self._same(other))

    def __pow__(self, e: int):
        return ff_pow(self, e)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"{self.field!r}({self.field.format(self.value)})"


def _check_pair(a: FieldElement, b: FieldElement) -> FieldSpec:
    if a.field != b.field:
        raise FieldError(f"mismatched fields {a.field!r} and {b.field!r}")
    return a.field


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _check_pair(a, b)
    return FieldElement(f, f.add(a.value, b.value))


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _check_pair(a, b)
    return FieldElement(f, f.mul(a.value, b.value))


def ff_inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.inv(a.value))


def ff_pow(a: FieldElement, e: int) -> FieldElement:
    if e < 0:
        raise FieldError("exponent must be non-negative")
    return FieldElement(a.field, a.field.pow(a.value, e))


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    return [FieldElement(spec, a) for a in range(spec.q)]
