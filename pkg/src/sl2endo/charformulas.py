"""Character values of the depth-zero supercuspidal packets on the elliptic torus.

The trusted engine exposes:

* individual member characters of the regular-level packet (two members),
* individual member characters of the quadratic-level packet far from the
  identity, but only the member sums near the identity (the published
  individual near-identity values are unreliable; see ``adss152_theta``),
* the virtual characters assembled from the component-group tables,
* the orbital-integral route to the near-identity sums (via the inverse
  Cayley transform), used as an independent cross-check,
* the inner-form character and the stable-character comparison across the
  two inner forms.

The values from Theorem 15.2 of Adler-DeBacker-Sally-Spice (2011), which
go back to the seventh line of Sally-Shalika's Table 3, are quarantined
behind the explicitly named ``adss152_*`` API: they are exposed solely so
the falsification harness can exhibit their clash with the endoscopic
identity, and the trusted engine never consults them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cyclotomic import CycNumber
from .errors import (
    AntiNearUnsupported,
    IndistinguishableFromZero,
    NotFar,
    NotNear,
    PrecisionExhausted,
    Undetermined,
)
from .localfield import FieldConfig, PadicNumber, legendre, sgn_eps, sgn_pi
from .packets import KLEIN4_ELEMENTS, virtual_coeffs
from .residue import CharacterLevel, norm_one_group, quadratic_level
from .torus import (
    Classification,
    LieElement,
    TorusElement,
    TorusVariant,
    classify,
    f_direct,
    g_conjugate,
)

# Constant term of the near-identity germ expansion of the generic member.
NEAR_CONSTANT_TERM = -1
# Sign of the depth-zero additive character's Weil-type constant for the
# unramified quadratic extension; enters the eps-orbit Fourier coefficient.
UNRAMIFIED_ADDITIVE_SIGN = -1
# Kottwitz signs of the two inner forms of SL(2).
KOTTWITZ_SIGN_SPLIT = 1
KOTTWITZ_SIGN_ANISOTROPIC = -1


class PacketKind(enum.Enum):
    REGULAR = "regular"
    NONREGULAR = "nonregular"


@dataclass(frozen=True)
class PacketSpec:
    """A depth-zero supercuspidal packet, named by its torus character level.

    Regular levels give the two-member packet; the quadratic level gives
    the four-member packet.  The generic member is pi^+ / member 1 in both
    cases (the fixed genericity convention).
    """

    kind: PacketKind
    level: CharacterLevel

    @staticmethod
    def regular(config: FieldConfig, k: int) -> "PacketSpec":
        level = CharacterLevel(k, config.q + 1)
        if not level.is_regular:
            raise ValueError(f"level {k} mod {config.q + 1} is not regular")
        return PacketSpec(PacketKind.REGULAR, level)

    @staticmethod
    def nonregular(config: FieldConfig) -> "PacketSpec":
        return PacketSpec(PacketKind.NONREGULAR, quadratic_level(config))


def _require_unramified(gamma: TorusElement) -> None:
    if gamma.variant is not TorusVariant.UNRAMIFIED:
        raise ValueError("formula applies to elements of the unramified-class torus")


def _classify_supported(gamma: TorusElement) -> Classification:
    cls = classify(gamma)
    if cls is Classification.ANTI_NEAR:
        raise AntiNearUnsupported(
            "no character formula on central twists of near elements"
        )
    return cls


def psi0(gamma: TorusElement) -> int:
    """The unique quadratic character of the norm-one torus, as +-1.

    Computed through sgn_pi(2(a+1)) away from the identity (with the
    lambda = -1 branch handled separately); near elements short-circuit to
    1 since the character has depth zero.  Agreement with the quadratic
    character level through the residue discrete log is a verified
    property, not an assumption.
    """
    cfg = gamma.config
    if gamma.b.is_zero_at_precision:
        # a^2 = 1 exactly at precision forces the avatar to be +-1.
        if gamma.a.residue == 1:
            return 1
        return -legendre(cfg.p - 1, cfg.p)
    if classify(gamma) is Classification.NEAR:
        return 1
    arg = (gamma.a + 1) * 2
    try:
        return sgn_pi(arg)
    except IndistinguishableFromZero as exc:
        raise PrecisionExhausted("2(a+1) is 0 at precision") from exc


def psi0_via_level(gamma: TorusElement) -> int:
    """The same character evaluated through the residue dlog route."""
    group = norm_one_group(gamma.config)
    value = group.character_value(quadratic_level(gamma.config), group.reduce(gamma))
    return int(value.as_fraction())


def psi0_on_residue_point(config: FieldConfig, point) -> int:
    """The defining formula evaluated on a residue point.

    On the residue curve a = -1 forces b = 0, so away from that single
    point the argument 2(a+1) is a unit and the character is a Legendre
    symbol.
    """
    p = config.p
    if point.b == 0 and point.a == p - 1:
        return -legendre(p - 1, p)
    return legendre(2 * (point.a + 1) % p, p)


def character_value_on(gamma: TorusElement, level: CharacterLevel) -> CycNumber:
    """Depth-zero character value at gamma via reduction and dlog."""
    group = norm_one_group(gamma.config)
    return group.character_value(level, group.reduce(gamma))


def theta_regular(member: str, level: CharacterLevel, gamma: TorusElement) -> CycNumber:
    """Character of one member of a regular-level packet at gamma in T^eps.

    Far from the identity the generic member takes -psi(gamma) - psi(1/gamma)
    and the other member vanishes; near the identity the values are
    -1 -+ f(gamma).
    """
    if member not in ("plus", "minus"):
        raise ValueError(f"member must be 'plus' or 'minus', got {member!r}")
    _require_unramified(gamma)
    cls = _classify_supported(gamma)
    if cls is Classification.FAR:
        if member == "minus":
            return CycNumber.zero(level.modulus)
        group = norm_one_group(gamma.config)
        pt = group.reduce(gamma)
        value = group.character_value(level, pt)
        value_inv = group.character_value(level, group.inverse(pt))
        return -value - value_inv
    f = f_direct(gamma)
    if member == "plus":
        return CycNumber.from_rational(NEAR_CONSTANT_TERM - f)
    return CycNumber.from_rational(NEAR_CONSTANT_TERM + f)


def theta_nonregular_far(j: int, gamma: TorusElement) -> CycNumber:
    """Member characters of the quadratic-level packet far from the identity.

    Members 1 and 2 take -psi0(gamma); members 3 and 4 live on the other
    vertex and vanish on this torus.
    """
    if j not in (1, 2, 3, 4):
        raise ValueError(f"member index must be 1..4, got {j}")
    _require_unramified(gamma)
    if _classify_supported(gamma) is not Classification.FAR:
        raise NotFar("individual member values are only trusted far from the identity")
    if j in (1, 2):
        return CycNumber.from_rational(-psi0(gamma))
    return CycNumber.zero()


def theta_nonregular_near_sums(gamma: TorusElement) -> tuple[CycNumber, CycNumber]:
    """Near the identity only the two member sums are pinned down.

    Returns (theta_1 + theta_2, theta_3 + theta_4) = (-1 - f, -1 + f).
    Individual members are deliberately not exposed here.
    """
    _require_unramified(gamma)
    if _classify_supported(gamma) is not Classification.NEAR:
        raise NotNear("member sums are the near-identity values")
    f = f_direct(gamma)
    return (
        CycNumber.from_rational(NEAR_CONSTANT_TERM - f),
        CycNumber.from_rational(NEAR_CONSTANT_TERM + f),
    )


def theta_virtual(packet: PacketSpec, s: str, gamma: TorusElement) -> CycNumber:
    """The s-weighted virtual character of the packet at gamma.

    Elements of the conjugated-class torus are evaluated by pullback: the
    transporting conjugation permutes the packet members (1 <-> 3, 2 <-> 4
    for the four-member packet, plus <-> minus for the two-member one) and
    fixes the avatar, so the value is read off the unramified avatar with
    the members swapped.
    """
    cls = _classify_supported(gamma)
    swapped = gamma.variant is TorusVariant.CONJUGATED
    base = g_conjugate(gamma) if swapped else gamma

    if packet.kind is PacketKind.REGULAR:
        if s not in ("1", "s1"):
            raise ValueError(f"the two-member packet has s in {{1, s1}}, got {s!r}")
        v_plus = theta_regular("plus", packet.level, base)
        v_minus = theta_regular("minus", packet.level, base)
        if swapped:
            v_plus, v_minus = v_minus, v_plus
        return v_plus + v_minus if s == "1" else v_plus - v_minus

    if s not in KLEIN4_ELEMENTS:
        raise ValueError(f"s must be one of {KLEIN4_ELEMENTS}, got {s!r}")
    coeffs = virtual_coeffs(s)
    if cls is Classification.FAR:
        values = [theta_nonregular_far(j, base) for j in (1, 2, 3, 4)]
        if swapped:
            values = [values[2], values[3], values[0], values[1]]
        total = CycNumber.zero()
        for c, v in zip(coeffs, values):
            total = total + v.scale(c)
        return total
    if s in ("s2", "s3"):
        raise Undetermined(
            "near the identity only the member sums are known, which do not"
            " pin down the s2/s3 combinations"
        )
    sum12, sum34 = theta_nonregular_near_sums(base)
    if swapped:
        sum12, sum34 = sum34, sum12
    return sum12 + sum34 if s == "1" else sum12 - sum34


def b_eps_coefficient(config: FieldConfig) -> Callable[[PadicNumber], int]:
    """The eps-orbit coefficient function -q * sgn_eps in the orbital expansion."""

    def coeff(x: PadicNumber) -> int:
        return UNRAMIFIED_ADDITIVE_SIGN * config.q * sgn_eps(x)

    return coeff


def mu_hat_orbital(
    Y: LieElement,
    a_term: int,
    b_eps: Callable[[PadicNumber], int],
    eta: int,
) -> CycNumber:
    """Orbital-integral Fourier transform value on a topologically nilpotent Y.

    Evaluates  a_term + q^{-1} * (1/D(Y)) * b_eps(eta^{-1} * y)  with
    1/D(Y) = q^{v(y)}; eta is 1 on the unramified-class torus and the
    uniformizer on its conjugate, where the twist flips the sign character.
    """
    cfg = Y.config
    if eta not in (1, cfg.pi):
        raise ValueError(f"eta must be 1 or the uniformizer, got {eta}")
    try:
        vy = Y.y.valuation()
    except IndistinguishableFromZero as exc:
        raise PrecisionExhausted("v(y) undefined at precision") from exc
    if vy < 1:
        raise ValueError("the expansion applies for v(y) >= 1")
    arg = Y.y if eta == 1 else Y.y.shift_down(1)
    value = Fraction(a_term) + Fraction(cfg.q**vy, cfg.q) * b_eps(arg)
    return CycNumber.from_rational(value)


def adss152_theta(j: int, gamma: TorusElement) -> CycNumber:
    """Near-identity member values as published in ADSS Theorem 15.2.

    Quarantined: these rational values ((-f-1)/2, (f-1)/2, (f-1)/2,
    (-f-1)/2) contradict both the orbital-integral route and the
    endoscopic identity, and exist here only for the falsification
    harness.  Nothing in the trusted engine calls this.
    """
    if j not in (1, 2, 3, 4):
        raise ValueError(f"member index must be 1..4, got {j}")
    _require_unramified(gamma)
    if _classify_supported(gamma) is not Classification.NEAR:
        raise NotNear("the disputed values concern the near-identity regime")
    f = f_direct(gamma)
    numerator = -f - 1 if j in (1, 4) else f - 1
    return CycNumber.from_rational(Fraction(numerator, 2))


def theta5(gamma: TorusElement) -> CycNumber:
    """Character of the inner-form member at the transfer of gamma.

    Equals psi0(gamma); in particular 1 near the identity since the
    character has depth zero.
    """
    cls = _classify_supported(gamma)
    if cls is Classification.NEAR:
        return CycNumber.one()
    return CycNumber.from_rational(psi0(gamma))


def kottwitz_stable(gamma: TorusElement) -> tuple[CycNumber, CycNumber]:
    """Both sides of the inner-form stability comparison, computed independently.

    The split side is the Kottwitz-signed stable sum of the four-member
    packet; the anisotropic side is the Kottwitz-signed doubled inner-form
    character.  The contract is that they agree.
    """
    packet = PacketSpec.nonregular(gamma.config)
    split_side = theta_virtual(packet, "1", gamma).scale(KOTTWITZ_SIGN_SPLIT)
    aniso_side = theta5(gamma).scale(2 * KOTTWITZ_SIGN_ANISOTROPIC)
    return (split_side, aniso_side)
