# treecross/errors.py
"""Exception hierarchy shared by the library and the CLI.

Each error knows the process exit code the CLI maps it to, so commands never
translate exceptions by hand.
"""

EXIT_BAD_CONFIG = 2
EXIT_GUARD = 3
EXIT_INTERNAL = 4


class TreeCrossError(Exception):
    kind = "error"
    exit_code = EXIT_INTERNAL

    def to_dict(self):
        return {"error": self.kind, "message": str(self), "exit_code": self.exit_code}


class ConfigError(TreeCrossError, ValueError):
    """A config file or environment override is unreadable or out of range."""

    kind = "bad_config"
    exit_code = EXIT_BAD_CONFIG


class GuardViolation(TreeCrossError, ValueError):
    """An argument lies outside the documented range of an operation."""

    kind = "guard_violation"
    exit_code = EXIT_GUARD


class InvalidTreeError(TreeCrossError, ValueError):
    """An edge list or Prüfer code does not describe a labelled tree."""

    kind = "invalid_tree"
    exit_code = EXIT_GUARD


class CouplingFailure(TreeCrossError, RuntimeError):
    """An internal invariant of a size-bias sampler did not hold."""

    kind = "internal_assertion"
    exit_code = EXIT_INTERNAL


def require(condition, message, error=GuardViolation):
    if not condition:
        raise error(message)
