"""Brouwer-operations as well-founded tree certificates of continuity.

A Brouwer-operation is either a leaf carrying a positive value ``n + 1``
(the constant neighbourhood function with output ``n``) or a sup-node with a
child for every natural number. Countable branching is represented two ways:

* :class:`Sup` lists finitely many children and one ``default`` child that
  stands for every index ``>= width``. Trees built only from :class:`Leaf`
  and :class:`Sup` are finite objects; all exact algorithms run on them.
* :class:`LazySup` holds a pure rule ``i -> child``. Such trees support
  evaluation and cutoff-bounded checks only.

Within a :class:`Sup`, index ``width`` is used as the canonical
representative of the default family.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Optional, Sequence, Union

from .errors import ConstancyViolation, FuelExhausted, MissingRealiser, NotTabular
from .seq import FinSeq, Point, is_prefix
from .verdict import Verdict

DEFAULT_FUEL = 10_000


@dataclass(frozen=True)
class Leaf:
    value: int

    def __post_init__(self) -> None:
        if isinstance(self.value, bool) or not isinstance(self.value, int) or self.value < 1:
            raise ValueError(f"leaf value must be an int >= 1, got {self.value!r}")

    def __repr__(self) -> str:
        return f"Leaf({self.value})"


@dataclass(frozen=True)
class Sup:
    children: tuple
    default: BrouwerOp
    _tabular: bool = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        for c in (*self.children, self.default):
            if not isinstance(c, (Leaf, Sup, LazySup)):
                raise TypeError(f"not a Brouwer-operation: {c!r}")
        object.__setattr__(self, "_tabular", all(is_tabular(c) for c in (*self.children, self.default)))

    @classmethod
    def uniform(cls, child: BrouwerOp) -> Sup:
        """Every child is ``child``."""
        return cls((), child)

    @property
    def width(self) -> int:
        return len(self.children)

    def child(self, i: int) -> BrouwerOp:
        return self.children[i] if i < len(self.children) else self.default

    def __repr__(self) -> str:
        return f"Sup({list(self.children)!r}, default={self.default!r})"


class LazySup:
    """Sup-node whose children come from a pure rule.

    ``cutoff_hint`` is how many children bounded searches should inspect by
    default. Children are memoized so repeated descents see the same object.
    """

    __slots__ = ("rule", "cutoff_hint", "_memo", "_lock")

    def __init__(self, rule: Callable[[int], BrouwerOp], cutoff_hint: int = 4):
        self.rule = rule
        self.cutoff_hint = cutoff_hint
        self._memo: dict[int, BrouwerOp] = {}
        self._lock = threading.Lock()

    def child(self, i: int) -> BrouwerOp:
        with self._lock:
            c = self._memo.get(i)
        if c is None:
            c = self.rule(i)
            if not isinstance(c, (Leaf, Sup, LazySup)):
                raise TypeError(f"rule returned a non-operation at index {i}: {c!r}")
            with self._lock:
                c = self._memo.setdefault(i, c)
        return c

    def __repr__(self) -> str:
        return f"LazySup(<rule>, cutoff_hint={self.cutoff_hint})"


BrouwerOp = Union[Leaf, Sup, LazySup]

UNIT = Leaf(1)


def is_tabular(gamma: BrouwerOp) -> bool:
    """True when the whole tree is finite (no :class:`LazySup` anywhere)."""
    if isinstance(gamma, Leaf):
        return True
    if isinstance(gamma, Sup):
        return gamma._tabular
    return False


def _require_tabular(gamma: BrouwerOp) -> None:
    if not is_tabular(gamma):
        raise NotTabular("exact algorithm needs a tabular operation")


def depth(gamma: BrouwerOp) -> int:
    """Height of a tabular tree (a leaf has depth 0)."""
    _require_tabular(gamma)
    if isinstance(gamma, Leaf):
        return 0
    return 1 + max(depth(c) for c in (*gamma.children, gamma.default))


def max_width(gamma: BrouwerOp) -> int:
    """Largest explicit child list in a tabular tree."""
    _require_tabular(gamma)
    if isinstance(gamma, Leaf):
        return 0
    return max(gamma.width, *(max_width(c) for c in (*gamma.children, gamma.default)))


def canonical_address(gamma: BrouwerOp, a: FinSeq) -> FinSeq:
    """Replace each default-family index along ``a`` by its representative."""
    out = []
    node = gamma
    for x in a:
        if isinstance(node, Sup):
            out.append(min(x, node.width))
            node = node.child(x)
        else:
            out.append(x)
            if isinstance(node, LazySup):
                node = node.child(x)
    return tuple(out)


# -- neighbourhood-function view -------------------------------------------------


class Evaluation(NamedTuple):
    value: int
    modulus: int


def apply_nbhd(gamma: BrouwerOp, a: FinSeq, fuel: int | None = None) -> int:
    """``gamma(a)``: 0 strictly above the bar, the leaf value at or below it."""
    node = gamma
    for steps, x in enumerate(a):
        if isinstance(node, Leaf):
            return node.value
        if fuel is not None and steps >= fuel:
            raise FuelExhausted(fuel, "descent exceeded depth budget")
        node = node.child(x)
    return node.value if isinstance(node, Leaf) else 0


def evaluate(gamma: BrouwerOp, alpha: Point, fuel: int = DEFAULT_FUEL) -> Evaluation:
    """Value of the function realised by ``gamma`` at ``alpha``.

    ``modulus`` is the least ``n`` with ``gamma(alpha|n) > 0``; the value is
    that leaf value minus one.
    """
    node = gamma
    n = 0
    while not isinstance(node, Leaf):
        if n >= fuel:
            raise FuelExhausted(fuel)
        node = node.child(alpha.at(n))
        n += 1
    return Evaluation(node.value - 1, n)


# -- bars ------------------------------------------------------------------------


class BarItem(NamedTuple):
    address: FinSeq
    value: int


@dataclass(frozen=True)
class AtLeast:
    """Pattern entry standing for every index ``>= k``."""

    k: int

    def __repr__(self) -> str:
        return f">={self.k}"


PatternEntry = Union[int, AtLeast]


class BarCell(NamedTuple):
    """A bar address pattern of a tabular tree with its label."""

    pattern: tuple
    value: int

    @property
    def representative(self) -> FinSeq:
        return tuple(e.k if isinstance(e, AtLeast) else e for e in self.pattern)

    def matches(self, a: FinSeq) -> bool:
        if len(a) != len(self.pattern):
            return False
        for e, x in zip(self.pattern, a):
            if isinstance(e, AtLeast):
                if x < e.k:
                    return False
            elif x != e:
                return False
        return True

    def expand(self, cutoff: int) -> Iterator[FinSeq]:
        """Concrete addresses matching the pattern with family entries below ``cutoff``.

        A family ``>= k`` contributes at least its representative ``k`` even
        when ``k >= cutoff``.
        """
        ranges = [
            range(e.k, max(e.k + 1, cutoff)) if isinstance(e, AtLeast) else (e,)
            for e in self.pattern
        ]
        return (tuple(t) for t in itertools.product(*ranges))


def bar_cells(gamma: BrouwerOp) -> list[BarCell]:
    """The bar of a tabular tree as a finite list of patterns, in depth-first index order."""
    _require_tabular(gamma)
    out: list[BarCell] = []

    def walk(node: BrouwerOp, pat: tuple) -> None:
        if isinstance(node, Leaf):
            out.append(BarCell(pat, node.value))
            return
        for i, c in enumerate(node.children):
            walk(c, pat + (i,))
        walk(node.default, pat + (AtLeast(node.width),))

    walk(gamma, ())
    return out


def bar_contains(gamma: BrouwerOp, a: FinSeq) -> bool:
    """``a`` is a minimal address where ``gamma`` is positive."""
    node = gamma
    for x in a:
        if isinstance(node, Leaf):
            return False
        node = node.child(x)
    return isinstance(node, Leaf)


def _depth_index_key(item: BarItem) -> tuple:
    return (len(item.address), item.address)


def bar_enumerate(gamma: BrouwerOp, limit: int | None = None, cutoff: int | None = None) -> Iterator[BarItem]:
    """Enumerate the bar of ``gamma`` with its labels.

    Tabular trees are listed completely, every default family expanded to
    indices below ``max(width, cutoff)`` (``cutoff`` defaults to 2), sorted by
    depth then index. Trees with generated nodes are enumerated lazily by
    stages: stage ``s`` explores entries ``< s`` to depth ``s``, so every bar
    address eventually appears.
    """
    if is_tabular(gamma):
        items = sorted(_expand_tabular(gamma, 2 if cutoff is None else cutoff), key=_depth_index_key)
        yield from items[:limit] if limit is not None else items
        return
    yield from itertools.islice(_dovetail(gamma), limit)


def _expand_tabular(gamma: BrouwerOp, cutoff: int) -> Iterator[BarItem]:
    def walk(node: BrouwerOp, addr: FinSeq) -> Iterator[BarItem]:
        if isinstance(node, Leaf):
            yield BarItem(addr, node.value)
            return
        for i in range(max(node.width, cutoff)):
            yield from walk(node.child(i), addr + (i,))

    return walk(gamma, ())


def _dovetail(gamma: BrouwerOp) -> Iterator[BarItem]:
    seen: set[FinSeq] = set()
    for stage in itertools.count(1):
        found: list[BarItem] = []

        def walk(node: BrouwerOp, addr: FinSeq) -> None:
            if isinstance(node, Leaf):
                if addr not in seen:
                    found.append(BarItem(addr, node.value))
                return
            if len(addr) >= stage:
                return
            for i in range(stage):
                walk(node.child(i), addr + (i,))

        walk(gamma, ())
        found.sort(key=_depth_index_key)
        for item in found:
            seen.add(item.address)
            yield item


@dataclass(frozen=True)
class BarListing:
    items: tuple
    truncated: bool


def list_bar(gamma: BrouwerOp, limit: int | None = None, cutoff: int | None = None) -> BarListing:
    """Finite listing of :func:`bar_enumerate` that records whether ``limit`` cut it short."""
    if limit is None and not is_tabular(gamma):
        raise ValueError("listing the bar of a generated tree needs a limit")
    probe = None if limit is None else limit + 1
    items = tuple(bar_enumerate(gamma, probe, cutoff))
    truncated = limit is not None and len(items) > limit
    return BarListing(items[:limit] if truncated else items, truncated)


# -- realisers -------------------------------------------------------------------


@dataclass(frozen=True)
class ContinuousFn:
    """A function from Baire space to the naturals, optionally with a realiser."""

    apply: Callable[[Point], int]
    realiser: Optional[BrouwerOp] = None

    def __call__(self, alpha: Point) -> int:
        return self.apply(alpha)

    @classmethod
    def from_op(cls, gamma: BrouwerOp, fuel: int = DEFAULT_FUEL) -> ContinuousFn:
        return cls(lambda alpha: evaluate(gamma, alpha, fuel).value, gamma)

    def at_prefix(self, a: FinSeq) -> int:
        """``F(a * 0^w)``."""
        return self.apply(Point(a))


@dataclass(frozen=True)
class RealisationReport:
    checked: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


def check_realises(
    F: ContinuousFn, gamma: BrouwerOp, samples: Sequence[Point], fuel: int = DEFAULT_FUEL
) -> RealisationReport:
    """Compare ``F`` with the function realised by ``gamma`` on every sample.

    Failures are ``(point, F(point), realised value)`` triples.
    """
    failures = []
    for alpha in samples:
        want = F.apply(alpha)
        got = evaluate(gamma, alpha, fuel).value
        if want != got:
            failures.append((alpha, want, got))
    return RealisationReport(len(samples), tuple(failures))


def skeleton(gamma: BrouwerOp) -> BrouwerOp:
    """Forget the labels: same shape, every leaf replaced by ``Leaf(1)``."""
    if isinstance(gamma, Leaf):
        return UNIT
    if isinstance(gamma, Sup):
        return Sup(tuple(skeleton(c) for c in gamma.children), skeleton(gamma.default))
    return LazySup(lambda i, g=gamma: skeleton(g.child(i)), gamma.cutoff_hint)


def is_unit_labelled(gamma: BrouwerOp) -> bool:
    _require_tabular(gamma)
    if isinstance(gamma, Leaf):
        return gamma.value == 1
    return all(is_unit_labelled(c) for c in (*gamma.children, gamma.default))


def _child_indices(node: BrouwerOp, cutoff: int) -> tuple[range, bool]:
    """Indices to visit below a sup-node and whether that visit is exhaustive."""
    if isinstance(node, Sup):
        return range(node.width + 1), True
    return range(cutoff), False


def is_constant_below(
    gamma: BrouwerOp, a: FinSeq, cutoff: int | None = None, fuel: int = DEFAULT_FUEL
) -> Verdict:
    """Decide whether ``gamma`` has a single leaf value on the cylinder ``a``.

    On tabular subtrees the answer is exact; a ``no`` carries two concrete
    addresses with different values. Below generated nodes only ``cutoff``
    children (default: the node's hint) and ``cutoff`` extra levels are
    searched, and the answer is ``unverified`` unless a violation turns up.
    """
    node = gamma
    for x in a:
        if isinstance(node, Leaf):
            return Verdict.yes()
        node = node.child(x)
    if isinstance(node, Leaf):
        return Verdict.yes()

    first: list = []
    truncated = False
    stack = [(node, tuple(a))]
    while stack:
        cur, addr = stack.pop()
        if isinstance(cur, Leaf):
            if not first:
                first.extend((addr, cur.value))
            elif cur.value != first[1]:
                return Verdict.no((first[0], addr))
            continue
        c = cutoff if cutoff is not None else getattr(cur, "cutoff_hint", 4)
        idx, exhaustive = _child_indices(cur, c)
        if not exhaustive:
            truncated = True
            if len(addr) - len(a) >= c or len(addr) >= fuel:
                continue
        for i in reversed(idx):
            stack.append((cur.child(i), addr + (i,)))
    if truncated:
        return Verdict.unverified(cutoff)
    return Verdict.yes()


def _leaf_pair(node: BrouwerOp, addr: FinSeq) -> tuple[tuple, tuple] | None:
    """Two leaves with different values in a tabular subtree, if any."""
    seen: tuple | None = None
    stack = [(node, addr)]
    while stack:
        cur, at = stack.pop()
        if isinstance(cur, Leaf):
            if seen is None:
                seen = (at, cur.value)
            elif cur.value != seen[1]:
                return seen, (at, cur.value)
            continue
        for i in reversed(range(cur.width + 1)):
            stack.append((cur.child(i), at + (i,)))
    return None


def _guided_shape(gamma: BrouwerOp, rho: BrouwerOp, addr: FinSeq) -> BrouwerOp:
    """Shape of ``gamma`` rebuilt so every default family is uniform for ``rho``.

    Raises :class:`ConstancyViolation` when ``rho`` is not constant on some
    bar cell of ``gamma``. Families whose ``rho`` values differ by index become
    :class:`LazySup` nodes; everything else keeps its tabular form.
    """
    if isinstance(gamma, Leaf):
        pair = _leaf_pair(rho, addr)
        if pair is not None:
            (a1, v1), (a2, v2) = pair
            raise ConstancyViolation(a1, a2, (v1 - 1, v2 - 1))
        return UNIT

    def rho_child(i: int) -> BrouwerOp:
        return rho if isinstance(rho, Leaf) else rho.child(i)

    k = gamma.width
    children = tuple(_guided_shape(c, rho_child(i), addr + (i,)) for i, c in enumerate(gamma.children))
    top = k if isinstance(rho, Leaf) else max(k, rho.width)
    family = [_guided_shape(gamma.default, rho_child(i), addr + (i,)) for i in range(k, top + 1)]
    # labels only matter through the labelled copy, so shape equality plus equal rho labels is needed
    labelled = [_label_from(rho_child(i), s) for i, s in zip(range(k, top + 1), family)]
    if len(labelled) == 1 or (None not in labelled and all(lab == labelled[0] for lab in labelled)):
        return Sup(children, family[0])

    def rule(i: int) -> BrouwerOp:
        if i < k:
            return children[i]
        return family[min(i, top) - k]

    return LazySup(rule, cutoff_hint=top + 1)


def _label_from(rho: BrouwerOp, shape: BrouwerOp) -> BrouwerOp | None:
    """Label a shape by the (constant) value of ``rho`` below each of its leaves."""
    if isinstance(shape, LazySup):
        return None
    if isinstance(shape, Leaf):
        while not isinstance(rho, Leaf):
            rho = rho.child(0)
        return Leaf(rho.value)

    def rho_child(i: int) -> BrouwerOp:
        return rho if isinstance(rho, Leaf) else rho.child(i)

    kids = tuple(_label_from(rho_child(i), c) for i, c in enumerate(shape.children))
    dflt = _label_from(rho_child(shape.width), shape.default)
    if dflt is None or any(c is None for c in kids):
        return None
    return Sup(kids, dflt)


def extract_realiser(F: ContinuousFn, gamma: BrouwerOp) -> BrouwerOp:
    """Relabel the tree ``gamma`` so that it realises ``F``.

    Each leaf at address ``a`` becomes ``Leaf(F(a * 0^w) + 1)``. This is
    correct when ``F`` is constant on every bar cell of ``gamma``. If both
    ``gamma`` and ``F.realiser`` are tabular that condition is checked exactly
    first (raising :class:`ConstancyViolation` with two offending addresses),
    and default families on which ``F`` varies with the index are turned into
    generated nodes. Otherwise the condition is assumed and each default
    family is evaluated at its representative index.
    """
    rho = F.realiser
    if rho is not None and is_tabular(rho) and is_tabular(gamma):
        gamma = _guided_shape(gamma, rho, ())
    return _relabel(F, gamma, ())


def _relabel(F: ContinuousFn, node: BrouwerOp, addr: FinSeq) -> BrouwerOp:
    if isinstance(node, Leaf):
        return Leaf(F.at_prefix(addr) + 1)
    if isinstance(node, Sup):
        kids = tuple(_relabel(F, c, addr + (i,)) for i, c in enumerate(node.children))
        return Sup(kids, _relabel(F, node.default, addr + (node.width,)))
    return LazySup(lambda i, n=node: _relabel(F, n.child(i), addr + (i,)), node.cutoff_hint)


def require_realiser(F: ContinuousFn, tabular: bool = False) -> BrouwerOp:
    if F.realiser is None:
        raise MissingRealiser("function carries no realiser")
    if tabular:
        _require_tabular(F.realiser)
    return F.realiser


def structurally_equal(g: BrouwerOp, h: BrouwerOp, cutoff: int = 4) -> bool | None:
    """Tree equality; ``None`` when generated nodes stop an exact answer."""
    if is_tabular(g) and is_tabular(h):
        return g == h
    verdict: bool | None = True

    def walk(x: BrouwerOp, y: BrouwerOp, level: int) -> bool:
        nonlocal verdict
        if isinstance(x, Leaf) or isinstance(y, Leaf):
            return x == y
        if isinstance(x, Sup) and isinstance(y, Sup) and is_tabular(x) and is_tabular(y):
            return x == y
        if level >= cutoff:
            verdict = None
            return True
        n = cutoff
        if isinstance(x, Sup) and isinstance(y, Sup):
            n = max(x.width, y.width) + 1
        else:
            verdict = None
        return all(walk(x.child(i), y.child(i), level + 1) for i in range(n))

    if not walk(g, h, 0):
        return False
    return verdict


def tree_nodes(gamma: BrouwerOp) -> Iterator[tuple[FinSeq, BrouwerOp]]:
    """Every node of a tabular tree, default families at their representative index."""
    _require_tabular(gamma)
    stack = [((), gamma)]
    while stack:
        addr, node = stack.pop()
        yield addr, node
        if isinstance(node, Sup):
            for i in reversed(range(node.width + 1)):
                stack.append((addr + (i,), node.child(i)))


def bar_hits(items: Sequence[BarItem], alpha: Point) -> list[FinSeq]:
    """Bar addresses from ``items`` lying on ``alpha``."""
    return [it.address for it in items if is_prefix(it.address, alpha.iseg(len(it.address)))]
