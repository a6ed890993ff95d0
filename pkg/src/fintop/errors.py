"""Exception hierarchy shared by every fintop module."""


class FintopError(Exception):
    """Base class. ``path`` locates the offending field when parsing documents."""

    def __init__(self, message, *, path=None):
        super().__init__(message)
        self.path = path

    def __str__(self):
        msg = super().__str__()
        return f"{self.path}: {msg}" if self.path else msg


class TopologyAxiomViolation(FintopError):
    pass


class DuplicatePoint(FintopError):
    pass


class ForeignPoint(FintopError):
    pass


class CarrierMismatch(FintopError):
    pass


class PartitionError(FintopError):
    pass


class AssociativityViolation(FintopError):
    def __init__(self, message, witness=None, *, path=None):
        super().__init__(message, path=path)
        self.witness = witness


class NotACongruence(FintopError):
    pass


class NoIdentity(FintopError):
    pass


class UnsupportedAxiom(FintopError):
    pass


class HypothesisNotMet(FintopError):
    def __init__(self, flag, message=None):
        super().__init__(message or f"hypothesis not met: {flag}")
        self.flag = flag


class NotContinuous(FintopError):
    pass


class ReflectionInvariantViolation(FintopError):
    pass


class UnknownLaw(FintopError):
    pass


class InstanceKindMismatch(FintopError):
    pass


class SizeOutOfRange(FintopError):
    pass


class ParseError(FintopError):
    pass
