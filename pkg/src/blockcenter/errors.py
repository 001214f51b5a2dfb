"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class BlockCenterError(Exception):
    """Base class for every error raised by this package."""


class SingularMatrix(BlockCenterError, ZeroDivisionError):
    pass


class DimensionMismatch(BlockCenterError, ValueError):
    pass


class NotPositiveDefinite(BlockCenterError, ValueError):
    pass


class NoSolution(BlockCenterError):
    """Raised when contribution constraints cannot possibly be met."""


class NotIntegral(BlockCenterError, ValueError):
    pass


class OrthogonalityViolation(BlockCenterError):
    def __init__(self, pair, entry, value):
        self.pair = pair
        self.entry = entry
        self.value = value
        super().__init__(
            f"Q_{pair[0]}^T Q_{pair[1]} has entry {value} at {entry}, expected 0"
        )


class NonIntegralDiagonal(BlockCenterError):
    pass


class UnitNotInLattice(BlockCenterError):
    pass


class WrongDimension(BlockCenterError, ValueError):
    pass


class NotPresentedLocal(BlockCenterError):
    """The non-unit basis vectors do not span a nilpotent ideal."""


class OddCharacteristic(BlockCenterError, ValueError):
    pass


class NotSymmetric(BlockCenterError):
    """No nondegenerate symmetric linear form exists (or none was found)."""

    def __init__(self, msg="algebra admits no symmetrizing form", low_confidence=False):
        self.low_confidence = low_confidence
        if low_confidence:
            msg += " (LOW_CONFIDENCE: random sampling only)"
        super().__init__(msg)


class FormNotSymmetrizing(BlockCenterError, ValueError):
    pass


class NotInRadical(BlockCenterError, ValueError):
    pass


class DataFileMissing(BlockCenterError, FileNotFoundError):
    pass


class ParseError(BlockCenterError, ValueError):
    pass
