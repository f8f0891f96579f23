"""Endoscopic data, transfer factors, and the identity verifier.

The endoscopic group for both packet shapes is the norm-one unramified
torus itself, attached to the diagonal order-2 element of the component
group; only the transported character differs (a regular level for the
two-member packet, the quadratic level for the four-member one).

The transfer factor is assembled from its constituents (the local epsilon
factor of the unramified quadratic character, the kappa term, and the
inverted Weyl-discriminant norm) rather than from the closed form -f, and
the right-hand side of the identity is always the literal two-term sum
over related elements.  Every check is exact cyclotomic equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .charformulas import (
    KOTTWITZ_SIGN_ANISOTROPIC,
    NEAR_CONSTANT_TERM,
    PacketKind,
    PacketSpec,
    adss152_theta,
    b_eps_coefficient,
    character_value_on,
    mu_hat_orbital,
    theta5,
    theta_virtual,
)
from .cyclotomic import CycNumber
from .errors import (
    AntiNearUnsupported,
    IndistinguishableFromZero,
    NotNear,
    PrecisionExhausted,
    Undetermined,
)
from .localfield import FieldConfig, sgn_eps
from .packets import virtual_coeffs
from .residue import CharacterLevel
from .torus import (
    Classification,
    TorusElement,
    cayley_inverse,
    classify,
    im_eps,
    invert,
)

RELATED_TAGS = ("gamma_h", "inv_gamma_h")

REPORT_FIELDS = (
    "p", "N", "eps", "packet", "level", "s",
    "a", "b", "valuation_b", "classification", "lhs", "rhs", "verdict",
)


@dataclass(frozen=True)
class EndoscopicDatum:
    """Bookkeeping for the endoscopic datum shared by both packet shapes."""

    endoscopic_group: str
    s_label: str
    kind: PacketKind
    transfer_level_k: int

    @staticmethod
    def for_packet(packet: PacketSpec) -> "EndoscopicDatum":
        return EndoscopicDatum(
            endoscopic_group="norm-one unramified torus",
            s_label="s1",
            kind=packet.kind,
            transfer_level_k=packet.level.k,
        )

    @property
    def fingerprint(self) -> tuple[str, str]:
        """(group, s) pair; identical for both packet shapes by design."""
        return (self.endoscopic_group, self.s_label)


def epsilon_factor(config: FieldConfig) -> int:
    """Local epsilon factor of the unramified quadratic character, always -1.

    Computed as the inverse of that character's value at the uniformizer
    (a level-one additive character is understood).
    """
    chi_at_pi = sgn_eps(config.padic(config.pi))
    return chi_at_pi  # order <= 2, so the inverse is the value itself


def kappa_term(gamma: TorusElement) -> int:
    """The kappa constituent: the unramified character at (c - cbar)/(2*sqrt(eps)) = b."""
    try:
        return sgn_eps(im_eps(gamma))
    except IndistinguishableFromZero as exc:
        raise PrecisionExhausted("kappa term needs v(b)") from exc


def related_elements(gamma: TorusElement) -> tuple[TorusElement, TorusElement]:
    """The two transfers of gamma under the two admissible isomorphisms."""
    return (gamma, invert(gamma))


def transfer_factor(related_tag: str, gamma: TorusElement) -> int:
    """The normalized transfer factor at (delta, gamma), constituent by constituent.

    epsilon factor times kappa term times the inverted discriminant norm
    q^{v(b)}; independent of which related element is meant, since both
    share v(b).
    """
    if related_tag not in RELATED_TAGS:
        raise ValueError(f"related_tag must be one of {RELATED_TAGS}")
    try:
        vb = im_eps(gamma).valuation()
    except IndistinguishableFromZero as exc:
        raise PrecisionExhausted("transfer factor needs v(b)") from exc
    cfg = gamma.config
    return epsilon_factor(cfg) * kappa_term(gamma) * cfg.q**vb


def rhs_endoscopic(datum: EndoscopicDatum, gamma: TorusElement) -> CycNumber:
    """The literal two-term sum over related elements of factor times character.

    The transported stable character is evaluated through the residue dlog
    route, independently of the member formulas on the left-hand side.
    """
    cls = classify(gamma)
    if cls is Classification.ANTI_NEAR:
        raise AntiNearUnsupported("right-hand side undefined on anti-near elements")
    cfg = gamma.config
    level = CharacterLevel(datum.transfer_level_k, cfg.q + 1)
    total = CycNumber.zero(cfg.q + 1)
    for tag, delta in zip(RELATED_TAGS, related_elements(gamma)):
        factor = transfer_factor(tag, gamma)
        total = total + character_value_on(delta, level).scale(factor)
    return total


@dataclass
class VerificationReport:
    """Structured outcome of one identity check (exact values throughout)."""

    p: int
    N: int
    eps: int
    packet: str
    level: int
    s: str
    a: int
    b: int
    valuation_b: "int | None"
    classification: str
    lhs: "CycNumber | None"
    rhs: "CycNumber | None"
    verdict: str

    @property
    def is_equal(self) -> bool:
        return self.verdict == "equal"

    @property
    def is_skipped(self) -> bool:
        return self.verdict.startswith("skipped")

    def to_record(self) -> dict:
        """JSON-ready dict with exactly the report schema's fields."""

        def render(value):
            if value is None:
                return None
            return {
                "conductor": value.m,
                "coeffs": [str(c) for c in value.coeffs],
                "text": str(value),
            }

        return {
            "p": self.p,
            "N": self.N,
            "eps": self.eps,
            "packet": self.packet,
            "level": self.level,
            "s": self.s,
            "a": self.a,
            "b": self.b,
            "valuation_b": self.valuation_b,
            "classification": self.classification,
            "lhs": render(self.lhs),
            "rhs": render(self.rhs),
            "verdict": self.verdict,
        }


def _report_shell(packet: PacketSpec, s: str, gamma: TorusElement) -> VerificationReport:
    cfg = gamma.config
    try:
        vb = gamma.b.valuation()
        cls_name = classify(gamma).value
    except (PrecisionExhausted, IndistinguishableFromZero):
        vb, cls_name = None, "unknown"
    return VerificationReport(
        p=cfg.p,
        N=cfg.N,
        eps=cfg.eps,
        packet=packet.kind.value,
        level=packet.level.k,
        s=s,
        a=gamma.a.residue,
        b=gamma.b.residue,
        valuation_b=vb,
        classification=cls_name,
        lhs=None,
        rhs=None,
        verdict="skipped(unevaluated)",
    )


def verify_identity(packet: PacketSpec, s: str, gamma: TorusElement) -> VerificationReport:
    """Check the endoscopic character identity at gamma, exactly.

    The left-hand side is the virtual character assembled from the trusted
    member formulas; the right-hand side is the two-term transfer sum.
    For the four-member packet with s the trivial element, the comparison
    is instead against the inner-form stable value (the doubled inner-form
    character with its Kottwitz sign), the only trusted route to that side.
    Anti-near elements, precision failures, and combinations the engine
    cannot determine yield skipped reports rather than guesses.
    """
    report = _report_shell(packet, s, gamma)
    if report.classification == "unknown":
        report.verdict = "skipped(precision exhausted)"
        return report
    if report.classification == Classification.ANTI_NEAR.value:
        report.verdict = "skipped(anti-near: no character formula)"
        return report

    try:
        report.lhs = theta_virtual(packet, s, gamma)
    except Undetermined:
        report.verdict = "skipped(undetermined near-identity combination)"
        return report

    if s == "s1":
        datum = EndoscopicDatum.for_packet(packet)
        report.rhs = rhs_endoscopic(datum, gamma)
    elif s == "1" and packet.kind is PacketKind.NONREGULAR:
        report.rhs = theta5(gamma).scale(2 * KOTTWITZ_SIGN_ANISOTROPIC)
    else:
        report.verdict = f"skipped(no endoscopic comparison for s={s})"
        return report

    report.verdict = "equal" if report.lhs == report.rhs else "unequal"
    return report


def falsify_adss152(gamma: TorusElement) -> tuple[VerificationReport, VerificationReport]:
    """Exhibit the clash between the ADSS-15.2 values and the trusted routes.

    Report one compares the s1 virtual character assembled from the 15.2
    member values (identically zero) with the endoscopic right-hand side
    (-2f, never zero near the identity).  Report two compares the 15.2
    member sum theta_1 + theta_2 (identically -1) with the orbital-integral
    route (-1 - f).  Both are unequal for every near regular element.
    """
    if classify(gamma) is not Classification.NEAR:
        raise NotNear("the disputed values concern the near-identity regime")
    cfg = gamma.config
    packet = PacketSpec.nonregular(cfg)

    coeffs = virtual_coeffs("s1")
    lhs1 = CycNumber.zero()
    for c, j in zip(coeffs, (1, 2, 3, 4)):
        lhs1 = lhs1 + adss152_theta(j, gamma).scale(c)
    rhs1 = rhs_endoscopic(EndoscopicDatum.for_packet(packet), gamma)
    report1 = _report_shell(packet, "s1", gamma)
    report1.lhs, report1.rhs = lhs1, rhs1
    report1.verdict = "equal" if lhs1 == rhs1 else "unequal"

    lhs2 = adss152_theta(1, gamma) + adss152_theta(2, gamma)
    rhs2 = mu_hat_orbital(
        cayley_inverse(gamma), NEAR_CONSTANT_TERM, b_eps_coefficient(cfg), eta=1
    )
    report2 = _report_shell(packet, "theta1+theta2", gamma)
    report2.lhs, report2.rhs = lhs2, rhs2
    report2.verdict = "equal" if lhs2 == rhs2 else "unequal"

    return (report1, report2)
