"""Finite sequences, points of Baire space, and decidable sets of addresses.

Finite sequences are plain tuples of non-negative ints. Every tree in the
package is addressed by them, so the helpers here stay small and pure.
"""

from __future__ import annotations

import itertools
import threading
from typing import Callable, Iterable, Iterator, Union

FinSeq = tuple[int, ...]

EMPTY: FinSeq = ()


def finseq(items: Iterable[int]) -> FinSeq:
    """Validate ``items`` as a finite sequence of naturals."""
    out = tuple(items)
    for x in out:
        if isinstance(x, bool) or not isinstance(x, int) or x < 0:
            raise ValueError(f"not a natural number: {x!r}")
    return out


def concat(a: FinSeq, b: FinSeq) -> FinSeq:
    return a + b


def is_prefix(a: FinSeq, b: FinSeq) -> bool:
    """``a`` is an initial segment of ``b`` (not necessarily strict)."""
    return len(a) <= len(b) and b[: len(a)] == a


def is_strict_prefix(a: FinSeq, b: FinSeq) -> bool:
    return len(a) < len(b) and b[: len(a)] == a


def prefixes(a: FinSeq) -> Iterator[FinSeq]:
    """All initial segments of ``a``, shortest first, ``a`` itself last."""
    for k in range(len(a) + 1):
        yield a[:k]


class Cycle:
    """Periodic tail ``c * c * c * ...``."""

    __slots__ = ("items",)

    def __init__(self, items: Iterable[int]):
        items = finseq(items)
        if not items:
            raise ValueError("cycle must be non-empty")
        self.items = items

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Cycle) and other.items == self.items

    def __hash__(self) -> int:
        return hash(("cycle", self.items))

    def __repr__(self) -> str:
        return f"Cycle({list(self.items)})"


Tail = Union[str, Cycle, Callable[[int], int]]


class Point:
    """An infinite sequence: a finite prefix followed by a described tail.

    The tail is ``"zeros"``, a :class:`Cycle`, or a pure rule ``n -> value``
    giving the entry ``n`` places after the prefix. Rule values are memoized
    on first read, so a point never changes once an entry has been observed.
    """

    __slots__ = ("prefix", "tail", "_memo", "_lock")

    def __init__(self, prefix: Iterable[int] = (), tail: Tail = "zeros"):
        self.prefix = finseq(prefix)
        if isinstance(tail, str):
            if tail != "zeros":
                raise ValueError(f"unknown tail {tail!r}")
        elif not isinstance(tail, Cycle) and not callable(tail):
            raise TypeError("tail must be 'zeros', a Cycle or a callable")
        self.tail = tail
        self._memo: dict[int, int] = {}
        self._lock = threading.Lock()

    @classmethod
    def zeros(cls) -> Point:
        return cls((), "zeros")

    @classmethod
    def cycle(cls, prefix: Iterable[int], period: Iterable[int]) -> Point:
        return cls(prefix, Cycle(period))

    @classmethod
    def generated(cls, prefix: Iterable[int], rule: Callable[[int], int]) -> Point:
        return cls(prefix, rule)

    @property
    def serializable(self) -> bool:
        return not callable(self.tail) or isinstance(self.tail, Cycle)

    def at(self, n: int) -> int:
        if n < 0:
            raise IndexError(n)
        p = len(self.prefix)
        if n < p:
            return self.prefix[n]
        if self.tail == "zeros":
            return 0
        if isinstance(self.tail, Cycle):
            c = self.tail.items
            return c[(n - p) % len(c)]
        with self._lock:
            if n not in self._memo:
                v = self.tail(n - p)
                if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                    raise ValueError(f"generated tail produced {v!r} at index {n}")
                self._memo[n] = v
            return self._memo[n]

    __getitem__ = at

    def iseg(self, n: int) -> FinSeq:
        return tuple(self.at(k) for k in range(n))

    def prepend(self, a: FinSeq) -> Point:
        """The point ``a * self``."""
        if callable(self.tail) and not isinstance(self.tail, Cycle):
            # read through so the new point shares memoized values
            return Point(finseq(a) + self.prefix, lambda k, src=self: src.at(len(src.prefix) + k))
        return Point(finseq(a) + self.prefix, self.tail)

    def __repr__(self) -> str:
        if self.tail == "zeros":
            t = "0^w"
        elif isinstance(self.tail, Cycle):
            t = f"({','.join(map(str, self.tail.items))})^w"
        else:
            t = "<rule>"
        return f"Point({list(self.prefix)} * {t})"


def iseg(alpha: Point, n: int) -> FinSeq:
    """Initial segment of ``alpha`` of length ``n``."""
    return alpha.iseg(n)


def zeros_after(a: FinSeq) -> Point:
    """The point ``a * 0^w``."""
    return Point(a)


class DecidableSet:
    """A decidable subset of finite sequences.

    ``uniform_from`` is an optional promise: membership does not change when
    any entry ``>= uniform_from`` is replaced by ``uniform_from``. Sets with
    that promise can be checked exactly against infinitely-branching
    certificates, because only finitely many index classes exist.
    """

    __slots__ = ("_contains", "extent", "uniform_from")

    def __init__(
        self,
        contains: Callable[[FinSeq], bool],
        extent: frozenset[FinSeq] | None = None,
        uniform_from: int | None = None,
    ):
        self._contains = contains
        self.extent = extent
        self.uniform_from = uniform_from

    @classmethod
    def finite(cls, items: Iterable[Iterable[int]]) -> DecidableSet:
        ext = frozenset(finseq(x) for x in items)
        top = max((max(a) for a in ext if a), default=-1)
        return cls(ext.__contains__, ext, top + 1)

    @classmethod
    def predicate(cls, rule: Callable[[FinSeq], bool], uniform_from: int | None = None) -> DecidableSet:
        return cls(rule, None, uniform_from)

    def __contains__(self, a: FinSeq) -> bool:
        return bool(self._contains(tuple(a)))

    def contains(self, a: FinSeq) -> bool:
        return a in self

    def __iter__(self) -> Iterator[FinSeq]:
        if self.extent is None:
            raise TypeError("predicate-only set has no listing")
        return iter(sorted(self.extent, key=lambda s: (len(s), s)))

    def __repr__(self) -> str:
        if self.extent is not None:
            return f"DecidableSet({sorted(map(list, self.extent))})"
        return f"DecidableSet(<predicate>, uniform_from={self.uniform_from})"


def ext_member(U: DecidableSet, a: FinSeq) -> bool:
    """Membership of ``a`` in the closure of ``U`` under extension."""
    return any(b in U for b in prefixes(a))


def ext_closure(U: DecidableSet) -> DecidableSet:
    """``U`` closed under extension, as a predicate set with the same uniformity."""
    return DecidableSet.predicate(lambda a: ext_member(U, a), U.uniform_from)


def cylinder(a: FinSeq, k: int, cutoff: int | None = None) -> list[FinSeq]:
    """List ``a[k] = {a * b : |b| = k}`` restricted to entries below ``cutoff``."""
    if k < 0:
        raise ValueError("k must be a natural number")
    if k == 0:
        return [a]
    if cutoff is None:
        raise ValueError("a finite listing of a[k] with k > 0 needs a branching cutoff")
    return [a + b for b in itertools.product(range(cutoff), repeat=k)]


def cylinder_set(a: FinSeq, k: int) -> DecidableSet:
    """``a[k]`` as a decidable set (no cutoff needed for membership)."""
    a = finseq(a)
    n = len(a) + k
    return DecidableSet.predicate(
        lambda c: len(c) == n and c[: len(a)] == a,
        uniform_from=max(a, default=-1) + 1,
    )
