"""Exception taxonomy shared by every module.

Rejections that are part of a normal answer (a graph that is not CC1, say)
are returned as values; exceptions are reserved for broken hypotheses,
budget exhaustion and malformed input.
"""


class GraphProdError(Exception):
    """Base class for all library errors."""


class ParseError(GraphProdError, ValueError):
    """Malformed graph file, word, literal or descriptor."""


class PresentationMismatch(GraphProdError, ValueError):
    """A word, vertex or element does not belong to the presentation used."""


class KindMismatch(GraphProdError, TypeError):
    """An element payload does not fit the vertex group it was handed to."""


class HypothesisViolation(GraphProdError):
    """A precondition of a decomposition routine failed.

    ``which`` names the precondition so callers and tests can branch on it.
    """

    def __init__(self, which, detail=""):
        self.which = which
        self.detail = detail
        msg = f"HypothesisViolation({which})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class SupportViolation(HypothesisViolation):
    def __init__(self, detail=""):
        super().__init__("support", detail)


class BudgetExhausted(GraphProdError):
    """A bounded enumeration ran out of budget before it could certify."""


class InvalidMorphism(GraphProdError, ValueError):
    """A proposed isometry, isomorphism or character fails validation."""
