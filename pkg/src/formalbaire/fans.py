"""Fans, c-bars, and the constructions relating continuity, c-bars and uniform bounds.

A c-bar is carried by a function ``delta`` on finite sequences: ``P(a)``
holds when ``delta`` no longer changes below ``a``. Whether an arbitrary
``delta`` bars every path is undecidable, so every :class:`CBar` here carries
a Brouwer tree certifying that ``delta`` stabilizes along every path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence

from .brouwer import (
    DEFAULT_FUEL,
    BrouwerOp,
    ContinuousFn,
    LazySup,
    Leaf,
    Sup,
    apply_nbhd,
    bar_cells,
    is_constant_below,
    is_tabular,
    require_realiser,
    skeleton,
)
from .errors import CutoffExhausted, FuelExhausted, InvalidFan, NotTabular
from .formal import CovWitness, FormalMap
from .seq import FinSeq, Point, finseq, is_prefix
from .verdict import Verdict

DEFAULT_DEPTH_BUDGET = 64


class FanTree:
    """A decidable, prefix-closed, finitely branching tree with no dead ends.

    ``bound(a)`` is the largest child index that may be a member below ``a``.
    """

    def __init__(self, member: Callable[[FinSeq], bool], bound: Callable[[FinSeq], int], spec: Any = None):
        self.member = member
        self.bound = bound
        self.spec = spec

    def children(self, a: FinSeq) -> list[FinSeq]:
        return [a + (n,) for n in range(self.bound(a) + 1) if self.member(a + (n,))]

    def level(self, n: int) -> Iterator[FinSeq]:
        """Member nodes of depth ``n``, in lexicographic order."""
        if n == 0:
            yield ()
            return
        for a in self.level(n - 1):
            yield from self.children(a)

    def is_path(self, alpha: Point, n: int) -> bool:
        """``alpha`` stays in the tree for its first ``n`` entries."""
        return all(self.member(alpha.iseg(k)) for k in range(n + 1))

    def check_laws(self, max_depth: int) -> list[FinSeq]:
        """Member nodes up to ``max_depth`` without a member child (spread law failures)."""
        bad = []
        for n in range(max_depth):
            for a in self.level(n):
                if not self.children(a):
                    bad.append(a)
        return bad

    def __repr__(self) -> str:
        return f"FanTree({self.spec!r})"


def full_binary() -> FanTree:
    return FanTree(lambda a: all(x < 2 for x in a), lambda a: 1, {"kind": "full_binary"})


def bounded_by(widths: Sequence[int], tail_width: int = 1) -> FanTree:
    """Level ``n`` allows indices below ``widths[n]``, deeper levels below ``tail_width``."""
    widths = tuple(widths)
    if any(w < 1 for w in widths) or tail_width < 1:
        raise InvalidFan("every level needs width >= 1")

    def width(n: int) -> int:
        return widths[n] if n < len(widths) else tail_width

    return FanTree(
        lambda a: all(x < width(n) for n, x in enumerate(a)),
        lambda a: width(len(a)) - 1,
        {"kind": "bounded", "widths": list(widths), "tailWidth": tail_width},
    )


def explicit(nodes: Iterable[Iterable[int]], full: Iterable[Iterable[int]] = ()) -> FanTree:
    """A fan given by a finite table of nodes.

    Below an address listed in ``full`` the tree continues as the full binary
    tree. Every other table node must have a child in the table.
    """
    table = {finseq(a) for a in nodes}
    fulls = {finseq(a) for a in full}
    if () not in table:
        raise InvalidFan("the empty sequence must be a node")
    for a in table:
        if a and a[:-1] not in table:
            raise InvalidFan(f"table not prefix-closed at {list(a)}")
    for a in fulls:
        if a not in table:
            raise InvalidFan(f"full marker {list(a)} is not a node")
    for a in table:
        if a in fulls:
            continue
        if any(is_prefix(f, a) for f in fulls):
            continue
        if not any(len(b) == len(a) + 1 and b[: len(a)] == a for b in table):
            raise InvalidFan(f"node {list(a)} has no child (spread law)")

    def member(a: FinSeq) -> bool:
        if a in table:
            return True
        return any(is_prefix(f, a) and all(x < 2 for x in a[len(f):]) for f in fulls)

    def bound(a: FinSeq) -> int:
        if any(is_prefix(f, a) for f in fulls):
            kids = [b[-1] for b in table if len(b) == len(a) + 1 and b[: len(a)] == a]
            return max([1, *kids])
        kids = [b[-1] for b in table if len(b) == len(a) + 1 and b[: len(a)] == a]
        return max(kids, default=0)

    return FanTree(
        member,
        bound,
        {"kind": "explicit", "nodes": sorted(map(list, table)), "full": sorted(map(list, fulls))},
    )


def make_fan(spec: dict) -> FanTree:
    """Build a fan from its JSON description."""
    kind = spec.get("kind")
    if kind == "full_binary":
        return full_binary()
    if kind == "bounded":
        return bounded_by(spec["widths"], spec.get("tailWidth", 1))
    if kind == "explicit":
        return explicit(spec["nodes"], spec.get("full", ()))
    raise InvalidFan(f"unknown fan kind {kind!r}")


# -- c-bars ----------------------------------------------------------------------


@dataclass(frozen=True)
class CBar:
    """A c-set with its stabilization certificate.

    ``source`` is ``"brouwer"``, ``"function"`` or ``"opaque"``; ``op`` is
    the operation behind the first two (the tree itself, or the function's
    realiser).
    """

    delta: Callable[[FinSeq], int]
    source: str
    witness: Optional[BrouwerOp]
    op: Optional[BrouwerOp] = None
    fn: Optional[ContinuousFn] = None


def cbar_from_function(F: ContinuousFn) -> CBar:
    """``P(a)`` iff ``F(a * 0^w) = F(a * b * 0^w)`` for every ``b``."""
    gamma = require_realiser(F, tabular=True)
    return CBar(F.at_prefix, "function", gamma, gamma, F)


def cbar_from_brouwer(gamma: BrouwerOp, characteristic: bool = False) -> CBar:
    """c-bar carried by ``gamma`` itself, so ``P`` is the extension closure of its bar.

    With ``characteristic=True`` the carrier is clipped to ``{0, 1}``,
    i.e. the characteristic function of that monotone set.
    """
    if characteristic:
        delta = lambda a: min(apply_nbhd(gamma, a), 1)  # noqa: E731
    else:
        delta = lambda a: apply_nbhd(gamma, a)  # noqa: E731
    return CBar(delta, "brouwer", gamma, gamma)


def opaque_cbar(delta: Callable[[FinSeq], int], witness: BrouwerOp | None = None) -> CBar:
    return CBar(delta, "opaque", witness)


def cbar_member(P: CBar, a: FinSeq, cutoff: int = 4) -> Verdict:
    """Decide ``P(a)``; exact for trees and tabular functions, bounded otherwise."""
    a = finseq(a)
    if P.source == "brouwer":
        if apply_nbhd(P.op, a) > 0:
            return Verdict.yes()
        # strictly above the bar: delta is 0 here and positive at the first leaf below
        node, b = P.op, a
        for x in a:
            node = node.child(x)
        while not isinstance(node, Leaf):
            node, b = node.child(0), b + (0,)
        return Verdict.no((a, b))
    if P.source == "function":
        return is_constant_below(P.op, a, cutoff)
    d0 = P.delta(a)
    for k in range(1, cutoff + 1):
        for b in itertools.product(range(cutoff), repeat=k):
            if P.delta(a + b) != d0:
                return Verdict.no((a, a + b))
    return Verdict.unverified(cutoff)


def check_cbar_witness(P: CBar, cutoff: int = 4) -> list[FinSeq]:
    """Witness bar cells on which ``delta`` is seen to change (bounded search)."""
    if P.witness is None or not is_tabular(P.witness):
        raise NotTabular("witness check needs a tabular witness")
    bad = []
    for cell in bar_cells(P.witness):
        u = cell.representative
        d0 = P.delta(u)
        grid = (b for k in range(1, cutoff + 1) for b in itertools.product(range(cutoff), repeat=k))
        if any(P.delta(u + b) != d0 for b in grid):
            bad.append(u)
    return bad


def _change_depth_max(delta: Callable[[FinSeq], int], u: FinSeq) -> int:
    """``max({n < |u| : delta(u|n) != delta(u|n+1)} | {1})``."""
    vals = [delta(u[:n]) for n in range(len(u) + 1)]
    return max([1, *(n for n in range(len(u)) if vals[n] != vals[n + 1])])


def function_from_cbar(P: CBar, fuel: int = DEFAULT_FUEL) -> ContinuousFn:
    """The function ``alpha -> max(D_alpha | {1})``, where ``D_alpha`` is the set of depths at which
    ``delta`` changes along ``alpha``.

    Along each path ``delta`` is constant below the witness bar, so the
    changes are all seen once the path reaches it. The attached realiser is
    the witness labelled by these values; it is tabular for tree- and
    function-backed c-bars (their carriers do not vary inside a default
    family) and generated for opaque ones.
    """
    W = P.witness
    if W is None:
        raise ValueError("c-bar has no stabilization witness")

    def apply(alpha: Point) -> int:
        node = W
        n = 0
        while not isinstance(node, Leaf):
            if n >= fuel:
                raise FuelExhausted(fuel)
            node = node.child(alpha.at(n))
            n += 1
        return _change_depth_max(P.delta, alpha.iseg(n))

    tabular = P.source != "opaque"

    def label(node: BrouwerOp, addr: FinSeq) -> BrouwerOp:
        if isinstance(node, Leaf):
            return Leaf(_change_depth_max(P.delta, addr) + 1)
        if isinstance(node, Sup) and tabular:
            kids = tuple(label(c, addr + (i,)) for i, c in enumerate(node.children))
            return Sup(kids, label(node.default, addr + (node.width,)))
        hint = node.cutoff_hint if isinstance(node, LazySup) else node.width + 1
        return LazySup(lambda i, nd=node: label(nd.child(i), addr + (i,)), hint)

    return ContinuousFn(apply, label(W, ()))


# -- uniform bounds over fans ----------------------------------------------------


def uniform_modulus(F: ContinuousFn, T: FanTree, max_depth: int = DEFAULT_DEPTH_BUDGET) -> int:
    """Least ``N`` such that ``F`` is constant on the cylinder of every depth-``N`` node of ``T``."""
    gamma = require_realiser(F, tabular=True)
    for N in range(max_depth + 1):
        if all(is_constant_below(gamma, a).is_yes for a in T.level(N)):
            return N
    raise FuelExhausted(max_depth, "no uniform modulus within depth budget")


def modulus_M(F: ContinuousFn, T: FanTree, N: int) -> int:
    """``max(N, max{F(a * 0^w) : a in T, |a| = N}) + 1``."""
    return max(N, max(F.at_prefix(a) for a in T.level(N))) + 1


def uniform_bar_modulus(
    P: CBar,
    T: FanTree,
    max_depth: int = DEFAULT_DEPTH_BUDGET,
    cutoff: int = 4,
    accept_unverified: bool = False,
) -> int:
    """Least ``N`` with ``P(a)`` for every depth-``N`` node ``a`` of ``T``.

    Bounded answers from opaque c-bars stop the search with
    :class:`CutoffExhausted` unless ``accept_unverified`` is set.
    """
    for N in range(max_depth + 1):
        ok = True
        for a in T.level(N):
            v = cbar_member(P, a, cutoff)
            if v.is_unverified and not accept_unverified:
                raise CutoffExhausted(f"membership of {list(a)} undecided within cutoff {cutoff}")
            if v.is_no:
                ok = False
                break
        if ok:
            return N
    raise FuelExhausted(max_depth, "no uniform bar depth within budget")


def map_from_cbar(P: CBar, F: ContinuousFn, cutoff: int = 4) -> FormalMap:
    """The map ``a r n  iff  P(a) and F(a * 0^w) = n``, certified by the c-bar's witness."""
    if P.source == "opaque":
        raise ValueError("opaque c-bars cannot back a formal map")
    if P.witness is None or not is_tabular(P.witness):
        raise NotTabular("map from a c-bar needs a tabular witness")
    W = CovWitness((), skeleton(P.witness))
    base = FormalMap.from_table(W, [(u, F.at_prefix(u)) for u in W.representatives()])

    def in_P(u: FinSeq) -> bool:
        return cbar_member(P, u, cutoff).is_yes

    def value_at(u: FinSeq) -> int | None:
        return F.at_prefix(u) if in_P(u) else None

    def relate(u: FinSeq, n: int) -> bool:
        return in_P(u) and F.at_prefix(u) == n

    return FormalMap(relate, W, value_at, base.pairs, base.uniform_from)

