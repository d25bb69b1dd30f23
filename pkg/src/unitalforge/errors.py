"""Exception hierarchy for unitalforge.

Every check failure carries enough context (a witness) to reproduce it;
the message is the human-readable form, attributes hold the raw data.
"""


class UnitalForgeError(Exception):
    """Base class for all unitalforge errors."""


# --- field construction / arithmetic ---

class NotPrime(UnitalForgeError):
    pass


class EvenCharacteristic(UnitalForgeError):
    pass


class NotIrreducible(UnitalForgeError):
    pass


class DivisionByZero(UnitalForgeError):
    pass


class XiInSubfield(UnitalForgeError):
    pass


class DegenerateForm(UnitalForgeError):
    """Quadratic form with vanishing discriminant."""


# --- planar function catalog ---

class SpecConstraintViolated(UnitalForgeError):
    """A planar-function family was instantiated outside its parameter range."""


# --- plane geometry ---

class EqualPoints(UnitalForgeError):
    pass


class AxiomViolation(UnitalForgeError):
    """Projective-plane axiom failed; carries the smallest-ID witness pair."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FamilyMismatch(UnitalForgeError):
    """Collineation family not defined for this plane's function family."""


# --- unital construction / certification ---

class ZeroTheta(UnitalForgeError):
    pass


class HypothesisFailed(UnitalForgeError):
    """The fiber-count hypothesis for the parabolic point set does not hold."""


class NotInjective(UnitalForgeError):
    pass


class CountViolation(UnitalForgeError):
    def __init__(self, a, b, count):
        super().__init__(f"solution count {count} not in {{1, q+1}} at (a={a}, b={b})")
        self.a, self.b, self.count = a, b, count


class IntersectionViolation(UnitalForgeError):
    def __init__(self, line_id, count):
        super().__init__(f"line {line_id} meets the point set in {count} points")
        self.line_id, self.count = line_id, count


class PairCoverageViolation(UnitalForgeError):
    def __init__(self, pair, count):
        super().__init__(f"point pair {pair} covered by {count} blocks")
        self.pair, self.count = pair, count


class NotNormal(UnitalForgeError):
    pass


class OvalViolation(UnitalForgeError):
    pass


class SwitchMismatch(UnitalForgeError):
    """Dual switch image differs from the original point set."""


# --- polarity ---

class ConditionAFailed(UnitalForgeError):
    """Involution is not of order two."""


class ConditionBFailed(UnitalForgeError):
    """Involution does not commute with the plane's function."""


class ConditionCFailed(UnitalForgeError):
    """Fiber count of y + conj(y) = f(x + conj(x)) is not q for every x."""


class NotPolarity(UnitalForgeError):
    pass


class AbsoluteCountMismatch(UnitalForgeError):
    pass


# --- analysis ---

class ZeroBeta(UnitalForgeError):
    pass


class SingularSystem(UnitalForgeError):
    """Trace bilinear system is singular (cannot happen for a valid split)."""


class HypothesisUnmet(UnitalForgeError):
    """Explicit-construction theorem hypotheses not satisfied by this plane."""


class WitnessCheckFailed(UnitalForgeError):
    """Explicit construction produced no parameter choice passing verification."""


class ElementDoesNotFix(UnitalForgeError):
    """A subgroup element expected to stabilize the unital moved it."""
