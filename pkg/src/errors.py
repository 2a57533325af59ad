"""Error types raised by the toolkit.

Every class derives from ``ValueError`` so callers that only care about bad
input can keep catching ``ValueError``; the command-line front end uses the
concrete class to choose an exit status.
"""


class InvalidRationalError(ValueError):
    """A rational with a zero (or negative) denominator."""


class InvalidVertexError(ValueError):
    """A vertex id outside 0..N-1."""


class EmptyGraphError(ValueError):
    """An operation that needs at least one vertex got the empty graph."""


class InvalidPowerError(ValueError):
    """A tensor power below 1."""


class ParseError(ValueError):
    """Malformed graph6 or edge-list input.

    ``offset`` is the byte offset for graph6 and the 1-based line number for
    edge lists.
    """

    def __init__(self, message, offset=0):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnsupportedSizeError(ValueError):
    """Graph too large for the short graph6 form."""


class InvalidProbabilityError(ValueError):
    """Edge probability outside [0, 1]."""


class InstanceTooLargeError(ValueError):
    """A resource guard refused the instance."""


class NotBipartiteError(ValueError):
    """H must be bipartite."""


class InvalidHypothesisError(ValueError):
    """H lacks the apex vertex a lemma requires."""


class InvalidArgumentError(ValueError):
    """Any other out-of-range parameter."""


class ConfigError(ValueError):
    """A run configuration that is missing a parameter or mixes options."""
