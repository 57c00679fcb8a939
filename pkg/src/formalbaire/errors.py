"""Exception hierarchy shared by every module."""

from __future__ import annotations


class FormalBaireError(Exception):
    """Base class for all errors raised by this package."""


class BudgetExhausted(FormalBaireError):
    """A search ran out of its depth, fuel or cutoff budget."""


class FuelExhausted(BudgetExhausted):
    def __init__(self, fuel: int, what: str = "no bar element found within budget"):
        super().__init__(f"{what} (fuel={fuel})")
        self.fuel = fuel


class CutoffExhausted(BudgetExhausted):
    """A bounded check could not reach a definite answer."""


class NotTabular(FormalBaireError):
    """An exact whole-tree algorithm was asked to run on a generated tree."""


class ConstancyViolation(FormalBaireError):
    def __init__(self, first: tuple[int, ...], second: tuple[int, ...], values: tuple[int, int]):
        super().__init__(
            f"function is not constant on the bar cell: {list(first)} gives {values[0]}, "
            f"{list(second)} gives {values[1]}"
        )
        self.pair = (first, second)
        self.values = values


class MissingRealiser(FormalBaireError):
    pass


class UndefinedValue(FormalBaireError):
    def __init__(self, addr: tuple[int, ...]):
        super().__init__(f"map has no value at witness address {list(addr)}")
        self.addr = addr


class MalformedFragment(FormalBaireError):
    pass


class InvalidFan(FormalBaireError):
    pass


class SchemaError(FormalBaireError):
    """JSON input does not match the expected schema."""
