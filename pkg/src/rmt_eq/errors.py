"""Exception types shared across the package.

The CLI maps these onto process exit codes, so library code should raise
these rather than bare builtins for contract violations.
"""


class InvalidArgumentError(ValueError):
    """An argument violates a documented precondition."""


class UndefinedDispersionError(InvalidArgumentError):
    """Gap dispersion requested for data whose amplitudes are all zero."""


class NumericFailureError(RuntimeError):
    """A numeric routine failed (non-convergence, overflow, broken symmetry).

    Carries the originating sample seed when known so the failure can be
    reproduced in isolation.
    """

    def __init__(self, message, seed=None):
        if seed is not None:
            message = f"{message} (sample seed {seed})"
        super().__init__(message)
        self.seed = seed


class ConfigError(ValueError):
    """Configuration file or override could not be parsed or validated."""
