"""The residue-field side of the elliptic torus.

Over the residue field F_p, the points (a, b) with a^2 - eps*b^2 = 1 form
a cyclic group of order q + 1 (the norm-one subgroup of F_{p^2}^x written
in the basis 1, sqrt(eps)).  Depth-zero characters of the p-adic torus
factor through this group, so a character is named by an integer level k
mod q+1 relative to a deterministic generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cyclotomic import CycNumber, root_of_unity
from .localfield import FieldConfig


@dataclass(frozen=True)
class ResTorusPoint:
    """A residue-field point (a, b) with a^2 - eps*b^2 = 1."""

    a: int
    b: int


@dataclass(frozen=True)
class CharacterLevel:
    """A depth-zero character of the torus, named by its exponent mod q+1."""

    k: int
    modulus: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", self.k % self.modulus)

    @property
    def is_trivial(self) -> bool:
        return self.k == 0

    @property
    def is_quadratic(self) -> bool:
        return self.k == self.modulus // 2

    @property
    def is_regular(self) -> bool:
        """True when the character differs from its inverse (k != 0, (q+1)/2)."""
        return not (self.is_trivial or self.is_quadratic)


class NormOneGroup:
    """The order-(q+1) group of residue torus points, with dlog bookkeeping.

    Enumeration is in lexicographic (a, b) order; the generator is the
    first point of exact order q+1, which makes character levels canonical
    across runs with the same configuration.
    """

    def __init__(self, config: FieldConfig):
        self.config = config
        p, eps = config.p, config.eps
        self.points: tuple[ResTorusPoint, ...] = tuple(
            ResTorusPoint(a, b)
            for a in range(p)
            for b in range(p)
            if (a * a - eps * b * b) % p == 1
        )
        self.order = len(self.points)
        self.identity = ResTorusPoint(1, 0)
        self.generator = self._find_generator()
        self._dlog: dict[ResTorusPoint, int] = {}
        pt = self.identity
        for e in range(self.order):
            self._dlog[pt] = e
            pt = self.mul(pt, self.generator)

    def mul(self, x: ResTorusPoint, y: ResTorusPoint) -> ResTorusPoint:
        p, eps = self.config.p, self.config.eps
        return ResTorusPoint(
            (x.a * y.a + eps * x.b * y.b) % p,
            (x.a * y.b + x.b * y.a) % p,
        )

    def inverse(self, x: ResTorusPoint) -> ResTorusPoint:
        return ResTorusPoint(x.a, -x.b % self.config.p)

    def element_order(self, x: ResTorusPoint) -> int:
        n, pt = 1, x
        while pt != self.identity:
            pt = self.mul(pt, x)
            n += 1
        return n

    def _find_generator(self) -> ResTorusPoint:
        for pt in self.points:
            if self.element_order(pt) == self.order:
                return pt
        raise AssertionError("norm-one group is cyclic; no generator found")

    def dlog(self, point: ResTorusPoint) -> int:
        return self._dlog[point]

    def reduce(self, element) -> ResTorusPoint:
        """Residue image of a p-adic torus element (anything with .a/.b residues)."""
        p = self.config.p
        return ResTorusPoint(element.a.residue % p, element.b.residue % p)

    def character_value(self, level: CharacterLevel, point: ResTorusPoint) -> CycNumber:
        if level.modulus != self.order:
            raise ValueError(
                f"level lives mod {level.modulus}, group has order {self.order}"
            )
        return root_of_unity(self.order, level.k * self.dlog(point))


@lru_cache(maxsize=None)
def norm_one_group(config: FieldConfig) -> NormOneGroup:
    return NormOneGroup(config)


def enumerate_norm_one(config: FieldConfig) -> tuple[ResTorusPoint, ...]:
    return norm_one_group(config).points


def find_generator(config: FieldConfig) -> ResTorusPoint:
    return norm_one_group(config).generator


def dlog(config: FieldConfig, point: ResTorusPoint) -> int:
    return norm_one_group(config).dlog(point)


def eval_character(
    config: FieldConfig, level: CharacterLevel, point: ResTorusPoint
) -> CycNumber:
    """Value zeta_{q+1}^{k * dlog(point)} of the level-k character."""
    return norm_one_group(config).character_value(level, point)


def character_level(config: FieldConfig, k: int) -> CharacterLevel:
    return CharacterLevel(k, config.q + 1)


def quadratic_level(config: FieldConfig) -> CharacterLevel:
    """The level of the unique order-2 character (q+1 is even for odd q)."""
    return CharacterLevel((config.q + 1) // 2, config.q + 1)


def regular_levels(config: FieldConfig) -> list[CharacterLevel]:
    m = config.q + 1
    return [CharacterLevel(k, m) for k in range(m) if k not in (0, m // 2)]
