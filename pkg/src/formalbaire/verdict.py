from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any


class Status(enum.Enum):
    YES = "yes"
    NO = "no"
    UNVERIFIED = "unverified"


@dataclass(frozen=True)
class Verdict:
    """Answer of a check that may be exact or only bounded.

    Truthiness is ``status is YES``; an unverified answer is falsy, so callers
    that need to tell "no" from "don't know" must look at ``status``.
    """

    status: Status
    witness: Any = None
    cutoff: int | None = None

    @classmethod
    def yes(cls) -> Verdict:
        return cls(Status.YES)

    @classmethod
    def no(cls, witness: Any = None) -> Verdict:
        return cls(Status.NO, witness)

    @classmethod
    def unverified(cls, cutoff: int | None) -> Verdict:
        return cls(Status.UNVERIFIED, cutoff=cutoff)

    @property
    def is_yes(self) -> bool:
        return self.status is Status.YES

    @property
    def is_no(self) -> bool:
        return self.status is Status.NO

    @property
    def is_unverified(self) -> bool:
        return self.status is Status.UNVERIFIED

    def __bool__(self) -> bool:
        return self.status is Status.YES
