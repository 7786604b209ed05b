"""
Exceptions and warnings raised by the engine
"""

from typing import Optional


class ColombeauError(Exception):
    """Base class for engine errors"""
    pass


class MagnitudeOverflow(ColombeauError):
    """Raised when a sampled log-magnitude exceeds the configured cap"""
    pass


class GridMismatchError(ColombeauError):
    """Raised when two sampled nets live on different epsilon grids"""
    pass


class PartitionError(ColombeauError):
    """Raised when index sets do not partition the epsilon grid"""
    pass


class PreconditionError(ColombeauError):
    """Raised when an operation's precondition does not hold"""
    pass


class ContainmentError(PreconditionError):
    """Raised when a compact set is not contained in the domain it must cover"""
    pass


class EmptySetError(ColombeauError):
    """Raised when an optimisation is requested over an empty set"""
    pass


class EvalDomainError(ColombeauError):
    """Raised when an expression is evaluated outside its domain (log of nonpositive, 1/0, ...)"""
    pass


class NotCauchyError(ColombeauError):
    """Raised when a schedule violates the Cauchy gap ||u_{n_{k+1}} - u_{n_k}||_k < d eps^k"""
    pass


class NotInvertibleError(ColombeauError):
    """Raised when dividing by a number that has zero samples"""
    pass


class UndecidableError(ColombeauError):
    """Raised when an undecided tri-state result is used as a plain boolean"""
    pass


class ExpressionParseError(ColombeauError):
    """Raised when an expression or net string cannot be parsed"""

    def __init__(self, message: str, position: Optional[int] = None, text: str = ""):
        self.position = position
        self.text = text
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class ValuationUnreliable(UserWarning):
    """Issued when the valuation regression residual exceeds the threshold"""
    pass
