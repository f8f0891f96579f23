"""Component groups, character tables, and parameter-image matrices.

The two depth-zero supercuspidal packet shapes of SL(2) have component
groups Z/2 (regular character level) and Klein four (quadratic level);
the quaternion group appears as the pull-back of the Klein-four group to
the simply connected dual and only its dimension bookkeeping is used.

Parameter images are handled as exact 2x2 matrices over cyclotomic
numbers considered modulo nonzero scalars; the testable content of the
centralizer statements is pure commutation, checked here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CycNumber, root_of_unity
from .errors import NonRegularLevel
from .residue import CharacterLevel

KLEIN4_ELEMENTS = ("1", "s1", "s2", "s3")

# Rows rho1..rho4, columns as in KLEIN4_ELEMENTS.
KLEIN4_TABLE: dict[int, tuple[int, int, int, int]] = {
    1: (1, 1, 1, 1),
    2: (1, 1, -1, -1),
    3: (1, -1, 1, -1),
    4: (1, -1, -1, 1),
}

Z2_ELEMENTS = ("1", "s1")
Z2_TABLE: dict[int, tuple[int, int]] = {
    0: (1, 1),   # trivial character
    1: (1, -1),  # sign character
}

# Quaternion group by conjugacy class: sizes and the standard 5-row table
# (four linear characters and the 2-dimensional representation).
Q8_CLASSES = ("1", "-1", "i", "j", "k")
Q8_CLASS_SIZES = (1, 1, 2, 2, 2)
Q8_TABLE: dict[int, tuple[int, ...]] = {
    1: (1, 1, 1, 1, 1),
    2: (1, 1, 1, -1, -1),
    3: (1, 1, -1, 1, -1),
    4: (1, 1, -1, -1, 1),
    5: (2, -2, 0, 0, 0),
}
Q8_DIMS = (1, 1, 1, 1, 2)


@dataclass(frozen=True)
class ComponentGroup:
    kind: str                      # "Z2" | "Klein4" | "Q8"
    elements: tuple[str, ...]
    class_sizes: tuple[int, ...]
    table: dict[int, tuple[int, ...]]
    dims: tuple[int, ...]

    @property
    def order(self) -> int:
        return sum(self.class_sizes)


def component_group(kind: str) -> ComponentGroup:
    if kind == "Z2":
        return ComponentGroup("Z2", Z2_ELEMENTS, (1, 1), Z2_TABLE, (1, 1))
    if kind == "Klein4":
        return ComponentGroup("Klein4", KLEIN4_ELEMENTS, (1, 1, 1, 1), KLEIN4_TABLE, (1, 1, 1, 1))
    if kind == "Q8":
        return ComponentGroup("Q8", Q8_CLASSES, Q8_CLASS_SIZES, Q8_TABLE, Q8_DIMS)
    raise ValueError(f"unknown component group kind {kind!r}")


def klein4_char(j: int, s: str) -> int:
    """Value of the j-th Klein-four character at element s."""
    return KLEIN4_TABLE[j][KLEIN4_ELEMENTS.index(s)]


def virtual_coeffs(s: str) -> tuple[int, int, int, int]:
    """Signs weighting the four packet members in the s-virtual character.

    These are the columns of the Klein-four table: member j enters with
    coefficient rho_j(s).
    """
    col = KLEIN4_ELEMENTS.index(s)
    return tuple(KLEIN4_TABLE[j][col] for j in (1, 2, 3, 4))


def row_orthogonality(group: ComponentGroup) -> bool:
    """Check sum_s size(s) * chi_i(s) * chi_j(s) = |S| * delta_ij exactly."""
    rows = sorted(group.table)
    for i in rows:
        for j in rows:
            total = sum(
                size * group.table[i][c] * group.table[j][c]
                for c, size in enumerate(group.class_sizes)
            )
            if total != (group.order if i == j else 0):
                return False
    return True


@dataclass(frozen=True, eq=False)
class ProjMatrix:
    """A 2x2 matrix over cyclotomic numbers, considered modulo scalars."""

    entries: tuple[tuple[CycNumber, CycNumber], tuple[CycNumber, CycNumber]]

    def __post_init__(self) -> None:
        if self.det().is_zero:
            raise ValueError("projective matrix must be invertible")

    @staticmethod
    def from_rational_rows(rows) -> "ProjMatrix":
        conv = tuple(
            tuple(x if isinstance(x, CycNumber) else CycNumber.from_rational(Fraction(x)) for x in row)
            for row in rows
        )
        return ProjMatrix(conv)

    def det(self) -> CycNumber:
        e = self.entries
        return e[0][0] * e[1][1] - e[0][1] * e[1][0]

    def __matmul__(self, other: "ProjMatrix") -> "ProjMatrix":
        a, b = self.entries, other.entries
        return ProjMatrix(
            tuple(
                tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in (0, 1))
                for i in (0, 1)
            )
        )

    def _flat(self) -> tuple[CycNumber, ...]:
        return self.entries[0] + self.entries[1]

    def proportional(self, other: "ProjMatrix") -> bool:
        """Equality in PGL_2: the entry vectors are parallel."""
        x, y = self._flat(), other._flat()
        for i in range(4):
            for j in range(i + 1, 4):
                if x[i] * y[j] != x[j] * y[i]:
                    return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        return self.proportional(other)

    __hash__ = None


PROJ_IDENTITY = ProjMatrix.from_rational_rows(((1, 0), (0, 1)))
PROJ_S1 = ProjMatrix.from_rational_rows(((1, 0), (0, -1)))
PROJ_S2 = ProjMatrix.from_rational_rows(((0, 1), (-1, 0)))
PROJ_S3 = ProjMatrix.from_rational_rows(((0, 1), (1, 0)))


def nonregular_image() -> tuple[ProjMatrix, ProjMatrix, ProjMatrix, ProjMatrix]:
    """Image of the biquadratic parameter mod scalars: {1, s1, s2, s1*s2}."""
    return (PROJ_IDENTITY, PROJ_S1, PROJ_S2, PROJ_S1 @ PROJ_S2)


def regular_image_generators(level: CharacterLevel) -> tuple[ProjMatrix, ProjMatrix]:
    """Generators of the image of a regular parameter mod scalars.

    The inertia part acts through diag(zeta^k, 1) and Frobenius through the
    coordinate swap.
    """
    if not level.is_regular:
        raise NonRegularLevel(f"level {level.k} mod {level.modulus} is not regular")
    zeta_k = root_of_unity(level.modulus, level.k)
    one = CycNumber.one(level.modulus)
    zero = CycNumber.zero(level.modulus)
    diag = ProjMatrix(((zeta_k, zero), (zero, one)))
    return (diag, PROJ_S3)


def centralizes(x: ProjMatrix, gens) -> bool:
    return all((x @ g).proportional(g @ x) for g in gens)


def iota_nonregular(j: int) -> int:
    """Packet member j of the quadratic-level packet carries character rho_j.

    The generic member (j = 1) carries the trivial character; the identity
    checks downstream pin the rest of the assignment.
    """
    if j not in (1, 2, 3, 4):
        raise ValueError(f"member index must be 1..4, got {j}")
    return j


def iota_regular(member: str) -> int:
    """Generic member -> trivial character, the other -> sign character."""
    if member == "plus":
        return 0
    if member == "minus":
        return 1
    raise ValueError(f"member must be 'plus' or 'minus', got {member!r}")
