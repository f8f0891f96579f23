"""Elements of the unramified elliptic torus and its conjugate.

A torus element is stored as the pair (a, b) with a^2 - eps*b^2 = 1 at
precision (the avatar a + b*sqrt(eps) of the norm-one group), tagged with
which of the two conjugacy classes of the torus it belongs to.  The 2x2
matrix forms are reconstructible views; every formula downstream consumes
only (a, b, v(b)).

Regular elements split into three classes: far from the identity
(v(b) = 0), near the identity (v(b) >= 1 and a = 1 mod p), and the
central twist of near (a = -1 mod p).  The last class is classified but
carries no character formula, so evaluation on it fails loudly.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from .errors import (
    IndistinguishableFromZero,
    NotASquare,
    NotNear,
    PrecisionExhausted,
    SamplingBudgetExceeded,
)
from .localfield import FieldConfig, PadicNumber, hensel_sqrt, sgn_eps


class TorusVariant(enum.Enum):
    UNRAMIFIED = "unramified"     # entries (a, b; eps*b, a)
    CONJUGATED = "conjugated"     # entries (a, b/pi; eps*pi*b, a)


class Classification(enum.Enum):
    NEAR = "near"
    ANTI_NEAR = "anti-near"
    FAR = "far"


@dataclass(frozen=True)
class TorusElement:
    a: PadicNumber
    b: PadicNumber
    variant: TorusVariant = TorusVariant.UNRAMIFIED

    def __post_init__(self) -> None:
        cfg = self.a.config
        if self.b.config != cfg:
            raise ValueError("a and b from different field configurations")
        norm = self.a * self.a - self.b * self.b * cfg.eps
        if norm.residue != 1:
            raise ValueError(
                f"({self.a.residue}, {self.b.residue}) is not norm-one at precision"
            )

    @property
    def config(self) -> FieldConfig:
        return self.a.config

    def __repr__(self) -> str:
        return (
            f"TorusElement(a={self.a.residue}, b={self.b.residue},"
            f" {self.variant.value}, p={self.config.p})"
        )


@dataclass(frozen=True)
class LieElement:
    """Trace-zero torus Lie algebra element with off-diagonal avatar y."""

    y: PadicNumber
    variant: TorusVariant = TorusVariant.UNRAMIFIED

    @property
    def config(self) -> FieldConfig:
        return self.y.config


def element(config: FieldConfig, a: int, b: int,
            variant: TorusVariant = TorusVariant.UNRAMIFIED) -> TorusElement:
    return TorusElement(config.padic(a), config.padic(b), variant)


def im_eps(gamma: TorusElement) -> PadicNumber:
    """The coefficient of sqrt(eps) in the avatar; invariant under g-conjugation."""
    return gamma.b


def is_regular(gamma: TorusElement) -> bool:
    return not gamma.b.is_zero_at_precision


def classify(gamma: TorusElement) -> Classification:
    """Near / anti-near / far trichotomy for regular elements.

    Far is v(b) = 0.  Otherwise b is in the maximal ideal, which forces
    a = +-1 mod p (a^2 = 1 + eps*b^2), splitting the remainder into near
    and its central twist.
    """
    try:
        vb = gamma.b.valuation()
    except IndistinguishableFromZero as exc:
        raise PrecisionExhausted("v(b) undefined: element not regular at precision") from exc
    if vb == 0:
        return Classification.FAR
    a_mod_p = gamma.a.residue % gamma.config.p
    if a_mod_p == 1:
        return Classification.NEAR
    if a_mod_p == gamma.config.p - 1:
        return Classification.ANTI_NEAR
    raise AssertionError("norm-one element with b in (p) must have a = +-1 mod p")


def in_first_filtration(gamma: TorusElement) -> bool:
    """Membership in the first congruence subgroup: a = 1 mod p, b = 0 mod p.

    This is the definitional near-the-identity test; classify() is checked
    against it (and its central twist) in the test suite.
    """
    p = gamma.config.p
    return gamma.a.residue % p == 1 and gamma.b.residue % p == 0


def f_direct(gamma: TorusElement) -> int:
    """The function (-q)^{v(b)} as an exact integer."""
    try:
        vb = gamma.b.valuation()
    except IndistinguishableFromZero as exc:
        raise PrecisionExhausted("f undefined: v(b) undefined at precision") from exc
    return (-gamma.config.q) ** vb


def f_via_disc(gamma: TorusElement) -> int:
    """The same function computed from its defining quotient.

    sgn_eps(b) divided by the normalized Weyl discriminant |b| = q^{-v(b)},
    i.e. sgn_eps(b) * q^{v(b)}.
    """
    try:
        s = sgn_eps(gamma.b)
        vb = gamma.b.valuation()
    except IndistinguishableFromZero as exc:
        raise PrecisionExhausted("f undefined: v(b) undefined at precision") from exc
    return s * gamma.config.q**vb


def weyl_DG(gamma: TorusElement) -> PadicNumber:
    """Weyl discriminant (trace)^2 - 4 of the matrix form; equals 4*eps*b^2."""
    two_a = gamma.a + gamma.a
    return two_a * two_a - 4


def weyl_D_lie(Y: LieElement) -> PadicNumber:
    """Lie-algebra discriminant: char-poly discriminant 4*eps*y^2."""
    return Y.y * Y.y * (4 * Y.config.eps)


def invert(gamma: TorusElement) -> TorusElement:
    """Inverse = Galois conjugate for norm-one elements: (a, -b)."""
    return TorusElement(gamma.a, -gamma.b, gamma.variant)


def galois_conj(gamma: TorusElement) -> TorusElement:
    return invert(gamma)


def g_conjugate(gamma: TorusElement) -> TorusElement:
    """Transport between the two torus conjugacy classes.

    Conjugation by diag(1, pi) moves the matrix entries but fixes the
    avatar (a, b), so the stored data only toggles the variant tag.
    """
    other = (
        TorusVariant.CONJUGATED
        if gamma.variant is TorusVariant.UNRAMIFIED
        else TorusVariant.UNRAMIFIED
    )
    return TorusElement(gamma.a, gamma.b, other)


def cayley_inverse(gamma: TorusElement) -> LieElement:
    """Inverse Cayley transform X = 2(gamma - 1)/(gamma + 1) for near elements.

    In avatar coordinates y = 4b / ((a+1)^2 - eps*b^2); the denominator is
    a unit (= 4 mod p) precisely because gamma is near the identity.
    """
    if classify(gamma) is not Classification.NEAR:
        raise NotNear("inverse Cayley transform is only taken near the identity")
    a, b = gamma.a, gamma.b
    denom = (a + 1) * (a + 1) - b * b * gamma.config.eps
    return LieElement((b * 4) / denom, gamma.variant)


def cayley(Y: LieElement) -> TorusElement:
    """Cayley transform (1 + X/2)/(1 - X/2) back to the torus."""
    try:
        if Y.y.valuation() < 1:
            raise ValueError("Cayley transform requires v(y) >= 1")
    except IndistinguishableFromZero as exc:
        raise PrecisionExhausted("v(y) undefined at precision") from exc
    quarter_eps_y2 = Y.y * Y.y * Y.config.eps / 4
    denom = 1 - quarter_eps_y2
    a = (1 + quarter_eps_y2) / denom
    b = Y.y / denom
    return TorusElement(a, b, Y.variant)


def sample_regular(
    config: FieldConfig,
    classification: Classification,
    v_target: int,
    seed: "int | str | random.Random",
    budget: int = 256,
) -> TorusElement:
    """Draw a pseudo-random regular element of the requested class.

    b is p^{v_target} times a random unit; a is the Hensel square root of
    1 + eps*b^2 with its sign forced by the class (random for far, where
    the sign carries no information).  Near/anti-near draws always
    succeed; far draws are accepted only when 1 + eps*b^2 is a square,
    which happens for a positive fraction of units that can drop to ~1/8
    at p = 3, hence the generous retry budget.
    """
    if classification is Classification.FAR:
        if v_target != 0:
            raise ValueError("far elements have v(b) = 0")
    else:
        if v_target < 1:
            raise ValueError("near elements need v(b) >= 1")
    if v_target >= config.N - 2:
        raise ValueError(f"v_target={v_target} leaves too little precision (N={config.N})")

    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    p = config.p
    for _ in range(budget):
        # unit by construction: nonzero low digit plus arbitrary higher digits
        u = rng.randrange(1, p) + p * rng.randrange(p ** (config.N - v_target - 1))
        b = config.padic(p**v_target * u)
        one_plus = b * b * config.eps + 1
        try:
            a = hensel_sqrt(one_plus)
        except (NotASquare, IndistinguishableFromZero):
            continue
        if classification is Classification.NEAR:
            if a.residue % p != 1:
                a = -a
        elif classification is Classification.ANTI_NEAR:
            if a.residue % p != p - 1:
                a = -a
        elif rng.getrandbits(1):
            a = -a
        gamma = TorusElement(a, b)
        if classify(gamma) is classification:
            return gamma
    raise SamplingBudgetExceeded(
        f"no {classification.value} element with v(b)={v_target} in {budget} draws"
    )
