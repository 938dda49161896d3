"""Error taxonomy shared by the library and the CLI.

The CLI maps these onto its exit codes: parse errors (1), invalid curves
(2), geometric degeneracies (3), infeasible or unrealizable inputs (4),
and constraint violations such as a wrong number of marked points (5).
"""


class TropcountError(Exception):
    """Base class for all package errors."""


class ParseError(TropcountError):
    """Malformed input document."""


class ValidationError(TropcountError):
    """The curve data violates a structural invariant."""


class DegeneracyError(TropcountError):
    """A geometric computation hit a degenerate configuration."""


class InfeasibleError(TropcountError):
    """A system or curve is provably infeasible / unrealizable."""


class ConstraintError(TropcountError):
    """A precondition on the request is violated (counts, rigidity, ...)."""
