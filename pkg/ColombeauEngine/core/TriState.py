"""
Tri-state decisions for semi-decidable properties
"""

from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict

from .Errors import UndecidableError


class TriState(Enum):
    """Outcome of a decision over finitely many epsilon samples"""
    TRUE = "true"
    FALSE = "false"
    UNDECIDABLE = "undecidable"

    @classmethod
    def of(cls, value: bool) -> "TriState":
        return cls.TRUE if value else cls.FALSE

    def __and__(self, other: "TriState") -> "TriState":
        if self is TriState.FALSE or other is TriState.FALSE:
            return TriState.FALSE
        if self is TriState.TRUE and other is TriState.TRUE:
            return TriState.TRUE
        return TriState.UNDECIDABLE

    def __or__(self, other: "TriState") -> "TriState":
        if self is TriState.TRUE or other is TriState.TRUE:
            return TriState.TRUE
        if self is TriState.FALSE and other is TriState.FALSE:
            return TriState.FALSE
        return TriState.UNDECIDABLE

    def __invert__(self) -> "TriState":
        if self is TriState.UNDECIDABLE:
            return self
        return TriState.FALSE if self is TriState.TRUE else TriState.TRUE


class Decision(BaseModel):
    """A tri-state result with an optional witness (e.g. the exponent m of x > eps^m)"""
    state: TriState
    witness: Optional[float] = None
    note: Optional[str] = None

    model_config = ConfigDict(frozen=True)

    @classmethod
    def true(cls, witness: Optional[float] = None, note: Optional[str] = None) -> "Decision":
        return cls(state=TriState.TRUE, witness=witness, note=note)

    @classmethod
    def false(cls, note: Optional[str] = None) -> "Decision":
        return cls(state=TriState.FALSE, note=note)

    @classmethod
    def undecidable(cls, note: Optional[str] = None) -> "Decision":
        return cls(state=TriState.UNDECIDABLE, note=note)

    @classmethod
    def of(cls, value: bool, witness: Optional[float] = None) -> "Decision":
        return cls.true(witness) if value else cls.false()

    @property
    def is_true(self) -> bool:
        return self.state is TriState.TRUE

    @property
    def is_false(self) -> bool:
        return self.state is TriState.FALSE

    @property
    def is_undecidable(self) -> bool:
        return self.state is TriState.UNDECIDABLE

    def __bool__(self) -> bool:
        if self.state is TriState.UNDECIDABLE:
            raise UndecidableError(self.note or "decision is undecidable on this grid")
        return self.state is TriState.TRUE

    def __and__(self, other: "Decision") -> "Decision":
        return Decision(state=self.state & other.state, note=self.note or other.note)

    def __or__(self, other: "Decision") -> "Decision":
        if self.is_true:
            return self
        if other.is_true:
            return other
        return Decision(state=self.state | other.state, note=self.note or other.note)

    def __invert__(self) -> "Decision":
        return Decision(state=~self.state, note=self.note)

    def to_dict(self) -> dict[str, Any]:
        return {"state": self.state.value, "witness": self.witness, "note": self.note}
