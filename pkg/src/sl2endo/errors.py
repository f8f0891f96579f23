"""Exception types shared across the package.

Everything failure-related is loud and specific: truncated p-adic
arithmetic refuses to guess when precision runs out, and character
evaluation refuses to answer where no formula is available.
"""


class Sl2EndoError(Exception):
    """Base class for all package-specific errors."""


class IndistinguishableFromZero(Sl2EndoError):
    """The residue is 0 mod p^N, so the valuation is undefined at precision."""


class ZeroInput(Sl2EndoError):
    """A quadratic-residue test received an argument divisible by p."""


class NotASquare(Sl2EndoError):
    """Square root requested of an element outside the square class."""


class ConductorMismatch(Sl2EndoError):
    """Cyclotomic operands live at different conductors and embedding is off."""


class PrecisionExhausted(Sl2EndoError):
    """A torus-level operation needed a valuation that is undefined at precision."""


class NotNear(Sl2EndoError):
    """Operation requires an element near the identity."""


class NotFar(Sl2EndoError):
    """Operation requires an element far from the identity."""


class AntiNearUnsupported(Sl2EndoError):
    """No character formula is available on Z(G)-twists of near elements."""


class Undetermined(Sl2EndoError):
    """The requested combination is not pinned down by any trusted formula."""


class NonRegularLevel(Sl2EndoError):
    """A regular character level was required."""


class SamplingBudgetExceeded(Sl2EndoError):
    """Rejection sampling did not find an admissible element within budget."""
