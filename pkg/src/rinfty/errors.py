"""Error hierarchy shared by all modules; each class carries a CLI exit code."""


class RinftyError(Exception):
    exit_code = 1


class InputError(RinftyError, ValueError):
    """Malformed input or violated call contract."""
    exit_code = 2


class DomainError(RinftyError, ValueError):
    """Input is well formed but outside the domain of the operation."""
    exit_code = 3


class ResourceError(RinftyError, RuntimeError):
    """A configured size or budget limit was exceeded."""
    exit_code = 4


class TheoremViolation(RinftyError, AssertionError):
    """A check that must hold by theory failed, or a certificate was tampered."""
    exit_code = 5
