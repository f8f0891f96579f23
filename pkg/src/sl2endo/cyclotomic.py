"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Values are represented by their coefficient vector in the power basis of
Q[x]/(Phi_m(x)), with Fraction coefficients, so equality of character
values is exact coefficient comparison.  Working modulo the cyclotomic
polynomial (rather than x^m - 1) keeps the representation faithful.

Mixed conductors are supported by embedding both operands into the lcm
conductor (zeta_m -> zeta_L^{L/m}); rationals live at conductor 1 and
embed everywhere.  The functional API can disable embedding, in which
case mixing conductors raises ConductorMismatch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConductorMismatch

_CYCLO_CACHE: dict[int, tuple[int, ...]] = {}


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    # den is monic; the division is exact over the integers.
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c == 0:
            continue
        quot[i - dd] = c
        for j, dj in enumerate(den):
            num[i - dd + j] -= c * dj
    assert all(c == 0 for c in num), "non-exact cyclotomic division"
    return quot


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the m-th cyclotomic polynomial.

    Computed once per m by exact division of x^m - 1 by the product of the
    cyclotomic polynomials of the proper divisors of m.
    """
    if m < 1:
        raise ValueError("conductor must be >= 1")
    cached = _CYCLO_CACHE.get(m)
    if cached is not None:
        return cached
    if m == 1:
        poly = (-1, 1)
    else:
        num = [-1] + [0] * (m - 1) + [1]
        den = [1]
        for d in _divisors(m)[:-1]:
            den = _poly_mul(den, list(cyclotomic_poly(d)))
        poly = tuple(_poly_div_exact(num, den))
    _CYCLO_CACHE[m] = poly
    return poly


def euler_phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


def _reduce(coeffs: list[Fraction], m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        top = c[i]
        if top:
            for j, pj in enumerate(phi):
                c[i - deg + j] -= top * pj
    c = c[:deg]
    c += [Fraction(0)] * (deg - len(c))
    return tuple(c)


@dataclass(frozen=True, eq=False)
class CycNumber:
    """An element of Q(zeta_m) in the reduced power basis."""

    m: int
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def from_rational(r, m: int = 1) -> "CycNumber":
        return CycNumber(m, _reduce([Fraction(r)], m))

    @staticmethod
    def zero(m: int = 1) -> "CycNumber":
        return CycNumber.from_rational(0, m)

    @staticmethod
    def one(m: int = 1) -> "CycNumber":
        return CycNumber.from_rational(1, m)

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def promote(self, L: int) -> "CycNumber":
        """Embed into Q(zeta_L) via zeta_m -> zeta_L^{L/m} (m must divide L)."""
        if L == self.m:
            return self
        if L % self.m:
            raise ConductorMismatch(f"{self.m} does not divide {L}")
        step = L // self.m
        lifted = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            lifted[i * step] = c
        return CycNumber(L, _reduce(lifted, L))

    def _pair(self, other: "CycNumber | int | Fraction", embed: bool = True):
        if not isinstance(other, CycNumber):
            other = CycNumber.from_rational(other)
        if self.m == other.m:
            return self, other
        if not embed:
            raise ConductorMismatch(f"conductors {self.m} and {other.m} differ")
        L = math.lcm(self.m, other.m)
        return self.promote(L), other.promote(L)

    def __add__(self, other) -> "CycNumber":
        a, b = self._pair(other)
        return CycNumber(a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other) -> "CycNumber":
        a, b = self._pair(other)
        return CycNumber(a.m, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other) -> "CycNumber":
        return CycNumber.from_rational(other) - self

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.m, tuple(-c for c in self.coeffs))

    def __mul__(self, other) -> "CycNumber":
        a, b = self._pair(other)
        prod = [Fraction(0)] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    prod[i + j] += x * y
        return CycNumber(a.m, _reduce(prod, a.m))

    __rmul__ = __mul__

    def scale(self, r) -> "CycNumber":
        r = Fraction(r)
        return CycNumber(self.m, tuple(c * r for c in self.coeffs))

    def __pow__(self, n: int) -> "CycNumber":
        if n < 0:
            raise ValueError("negative powers not supported; use conjugate for roots")
        result = CycNumber.one(self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "CycNumber":
        """Image under zeta_m -> zeta_m^{-1} (complex conjugation on values)."""
        flipped = [Fraction(0)] * self.m
        for i, c in enumerate(self.coeffs):
            flipped[(self.m - i) % self.m] += c
        return CycNumber(self.m, _reduce(flipped, self.m))

    def __eq__(self, other) -> bool:
        if not isinstance(other, (CycNumber, int, Fraction)):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # equality crosses conductors; not intended as a dict key

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                z = f"z{self.m}" if i == 1 else f"z{self.m}^{i}"
                if c == 1:
                    parts.append(z)
                elif c == -1:
                    parts.append(f"-{z}")
                else:
                    parts.append(f"{c}*{z}")
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out

    def __repr__(self) -> str:
        return f"CycNumber({self})"


def root_of_unity(m: int, k: int) -> CycNumber:
    """The class of x^{k mod m} in Q[x]/(Phi_m)."""
    if m < 1:
        raise ValueError("conductor must be >= 1")
    k %= m
    coeffs = [Fraction(0)] * (k + 1)
    coeffs[k] = Fraction(1)
    return CycNumber(m, _reduce(coeffs, m))


def conjugate(z: CycNumber) -> CycNumber:
    return z.conjugate()


def add(z: CycNumber, w: CycNumber, embed: bool = True) -> CycNumber:
    a, b = z._pair(w, embed=embed)
    return a + b


def mul(z: CycNumber, w: CycNumber, embed: bool = True) -> CycNumber:
    a, b = z._pair(w, embed=embed)
    return a * b


def negate(z: CycNumber) -> CycNumber:
    return -z


def scale(z: CycNumber, r) -> CycNumber:
    return z.scale(r)
