"""Exception types shared by the solvers and the command line."""


class ResourceLimitError(RuntimeError):
    """An instance exceeds a configured enumeration cap; the answer is unknown, not wrong."""


class VerificationError(AssertionError):
    """A built artifact failed its computational self-check."""
