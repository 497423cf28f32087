"""Exception hierarchy shared by every module of the package."""


class GLHSError(Exception):
    """Base class for all errors raised by glhs."""


class DomainError(GLHSError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class InvalidBracket(GLHSError, ValueError):
    """Endpoint values of a bracket do not have strictly opposite signs."""


class NoConvergence(GLHSError, RuntimeError):
    """An iterative routine exhausted its iteration or evaluation budget."""


class NonRealResult(GLHSError, ArithmeticError):
    """A quantity that should be real carries a non-negligible imaginary part."""


class PoleAtOrigin(DomainError):
    pass


class OutOfSupport(DomainError):
    pass


class InvariantViolation(GLHSError, AssertionError):
    """A computed object failed one of its structural checks."""


class ResourceExceeded(GLHSError, MemoryError):
    pass


class NumericalBlowup(GLHSError, FloatingPointError):
    pass
