"""Exception types used across the package.

Verification routines generally return reports rather than raising; exceptions
are for malformed input, violated preconditions, exhausted search budgets, and
"impossible" situations that signal a bug in the library itself.
"""


class FinsemiError(Exception):
    pass


# --- input validation ------------------------------------------------------

class NonAssociativeError(FinsemiError):
    """A multiplication table fails associativity; carries the witness triple."""

    def __init__(self, a, b, c):
        self.witness = (a, b, c)
        super().__init__(
            "associativity fails at (%d, %d, %d): (a*b)*c != a*(b*c)" % (a, b, c))


class OutOfRangeError(FinsemiError):
    """Malformed table, index, or map value outside the element range."""


class NotIdempotentError(FinsemiError):
    pass


class NotAGroupError(FinsemiError):
    pass


class NotRegularError(FinsemiError):
    pass


class NotLocallyInverseError(FinsemiError):
    pass


class NotESolidError(FinsemiError):
    pass


class QuotientNotInverseError(FinsemiError):
    pass


class RhoNotOverCsError(FinsemiError):
    """The congruence's idempotent classes are not all completely simple."""


class UnknownKindError(FinsemiError):
    pass


class IncompatibleHomsError(FinsemiError):
    """Structure maps of a strong semilattice violate identity/composition."""


class ActionInvalidError(FinsemiError):
    """An endomorphism action fails its law; carries the witness."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__("invalid action: %r" % (witness,))


class OrderBoundError(FinsemiError):
    """Input is larger than the configured bound for an exhaustive routine."""


class PreconditionError(FinsemiError):
    """An operation was called on input outside its stated domain."""


# --- term and word manipulation -------------------------------------------

class TermSyntaxError(FinsemiError):
    def __init__(self, message, position):
        self.position = position
        super().__init__("%s (at position %d)" % (message, position))


class NoMatchError(FinsemiError):
    """A rewrite step does not match the word at the given position."""


class BadCompositionError(FinsemiError):
    """A composition-based step was given arrows that do not compose as claimed."""


class BudgetExceededError(FinsemiError):
    """A search ran out of budget before reaching a verdict.

    Distinct from a definite "no witness within the stated bounds" answer.
    """


class NotAPathError(FinsemiError):
    pass


class NotConsecutiveError(FinsemiError):
    """Arrows are not composable (target of the first != source of the second)."""


class NotAdjacentError(FinsemiError):
    """Arrow pair does not share the object required by the sandwich operation."""


# --- consistency failures (bug signals) ------------------------------------

class NonSingletonSandwichError(FinsemiError):
    """A sandwich set that the theory says is a singleton was not."""


class UniquenessError(FinsemiError):
    """An element that should exist uniquely is missing or ambiguous."""


class StabilityDisagreementError(FinsemiError):
    """The equivalent stability clauses evaluated differently on an arrow."""


class CaseNotCoveredError(FinsemiError):
    """A case analysis reached a branch that should be unreachable."""


class InvarianceError(FinsemiError):
    """A lifted derivation step changed the invariant value.

    Carries the transcript needed to replay the failure.
    """

    def __init__(self, message, transcript=None):
        self.transcript = transcript
        super().__init__(message)


class NoWitnessError(FinsemiError):
    """Exhaustive search found no witness within the configured budget."""


class UnclassifiedError(FinsemiError):
    """A bracketed word outside the classified families was passed to a map
    that is only defined on them."""
