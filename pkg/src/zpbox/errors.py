"""Exception hierarchy shared by all zpbox modules."""


class ZpboxError(Exception):
    """Base class for every error raised by zpbox."""


class ValidationError(ZpboxError, ValueError):
    """An input value violates a documented precondition (names the field)."""


class DomainError(ZpboxError, ValueError):
    """A quantity was requested outside its mathematical domain."""


class NumericalError(ZpboxError, RuntimeError):
    """A solver or integrator failed to converge or broke down mid-run."""


class AnalysisError(ZpboxError, ValueError):
    """A post-processing step received degenerate or insufficient data."""


class UsageError(ZpboxError):
    """Malformed command line, config file, or conflicting options."""
