"""Formal Baire space: cover certificates, formal points and formal topology maps.

A cover certificate (:class:`CovWitness`) is a root address together with an
unlabelled Brouwer tree; it denotes ``root * bar(shape)``. A leaf shape is the
canonical cover ``{root}``, a sup shape is the union of the covers of
``root * <n>`` for every ``n``. ``a`` is covered by ``U`` exactly when some
such certificate rooted at ``a`` lands inside the extension closure of ``U``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .brouwer import (
    DEFAULT_FUEL,
    UNIT,
    BrouwerOp,
    ContinuousFn,
    LazySup,
    Leaf,
    Sup,
    bar_cells,
    canonical_address,
    is_tabular,
    is_unit_labelled,
    max_width,
    require_realiser,
    skeleton,
)
from .errors import FuelExhausted, MalformedFragment, UndefinedValue
from .seq import DecidableSet, FinSeq, Point, ext_member, finseq, is_prefix
from .verdict import Verdict


@dataclass(frozen=True)
class CovWitness:
    root: FinSeq
    shape: BrouwerOp

    def __post_init__(self) -> None:
        object.__setattr__(self, "root", finseq(self.root))
        if is_tabular(self.shape) and not is_unit_labelled(self.shape):
            raise ValueError("cover shapes carry unit leaves only; use skeleton()")

    def contains(self, c: FinSeq) -> bool:
        """Membership in the denoted set, read off the inductive clauses."""
        c = tuple(c)
        if not is_prefix(self.root, c):
            return False
        node = self.shape
        for x in c[len(self.root):]:
            if isinstance(node, Leaf):
                return False  # {a} contains a only, not its extensions
            node = node.child(x)
        return isinstance(node, Leaf)

    __contains__ = contains

    def cells(self) -> list[tuple]:
        """Finite pattern form of the denoted set (tabular shapes only)."""
        return [self.root + cell.pattern for cell in bar_cells(self.shape)]

    def representatives(self) -> list[FinSeq]:
        return [self.root + cell.representative for cell in bar_cells(self.shape)]

    def members(self, cutoff: int) -> list[FinSeq]:
        """Denoted addresses with every default family expanded below ``cutoff``.

        Generated nodes are expanded to ``cutoff`` children and followed only
        to ``cutoff`` levels, so for generated shapes the listing is partial.
        """
        if is_tabular(self.shape):
            out = []
            for cell in bar_cells(self.shape):
                out.extend(self.root + b for b in cell.expand(cutoff))
            return out
        out = []
        stack = [(self.shape, (), 0)]
        while stack:
            node, addr, level = stack.pop()
            if isinstance(node, Leaf):
                out.append(self.root + addr)
                continue
            if isinstance(node, LazySup) and level >= cutoff:
                continue
            width = node.width if isinstance(node, Sup) else 0
            for i in reversed(range(max(width, cutoff))):
                stack.append((node.child(i), addr + (i,), level + 1))
        return out


def cov_from_brouwer(a: FinSeq, gamma: BrouwerOp) -> CovWitness:
    """Certificate denoting ``a * bar(gamma)``."""
    return CovWitness(finseq(a), skeleton(gamma))


def brouwer_from_cov(W: CovWitness) -> BrouwerOp:
    """The unlabelled operation whose bar, shifted by ``W.root``, is ``W``'s set."""
    return W.shape


def uniform_witness(a: FinSeq, k: int) -> CovWitness:
    """Certificate of ``a`` being covered by ``a[k]``."""
    shape: BrouwerOp = UNIT
    for _ in range(k):
        shape = Sup.uniform(shape)
    return CovWitness(finseq(a), shape)


def check_cover(a: FinSeq, U: DecidableSet, W: CovWitness, cutoff: int | None = None) -> Verdict:
    """Check that ``W`` certifies ``a`` covered by ``U``.

    Requires ``W.root == a`` and every address of ``W`` to extend some member
    of ``U``. The check is exact when the shape is tabular and ``U`` declares
    ``uniform_from``: only the finitely many index classes need inspecting.
    Otherwise every sup-node is expanded to ``cutoff`` children (and generated
    nodes to ``cutoff`` levels), and a clean run is ``unverified``.
    """
    a = finseq(a)
    if W.root != a:
        return Verdict.no(("root", W.root))
    t = U.uniform_from
    exact_possible = is_tabular(W.shape) and t is not None
    if not exact_possible and cutoff is None:
        raise ValueError("check needs a cutoff: shape is generated or U declares no uniformity")
    truncated = False
    stack = [(W.shape, a, 0)]
    while stack:
        node, addr, level = stack.pop()
        if isinstance(node, Leaf):
            if not ext_member(U, addr):
                return Verdict.no(addr)
            continue
        if isinstance(node, Sup) and t is not None:
            idx = range(max(node.width, t) + 1)
        else:
            truncated = True
            if isinstance(node, LazySup) and level >= cutoff:
                continue
            idx = range(max(node.width, cutoff) if isinstance(node, Sup) else cutoff)
        for i in reversed(idx):
            stack.append((node.child(i), addr + (i,), level + 1))
    return Verdict.unverified(cutoff) if truncated else Verdict.yes()


def find_cover_witness(a: FinSeq, U: DecidableSet, max_depth: int) -> CovWitness | None:
    """Search for a certificate of ``a`` covered by ``U`` of depth at most ``max_depth``.

    Needs ``U.uniform_from``; returns ``None`` when no certificate of that
    depth exists.
    """
    t = U.uniform_from
    if t is None:
        raise ValueError("search needs a set with declared uniformity")
    a = finseq(a)

    def build(addr: FinSeq, budget: int) -> BrouwerOp | None:
        if ext_member(U, addr):
            return UNIT
        if budget == 0:
            return None
        kids = []
        for i in range(t + 1):
            c = build(addr + (i,), budget - 1)
            if c is None:
                return None
            kids.append(c)
        return Sup(tuple(kids[:t]), kids[t])

    shape = build(a, max_depth)
    return None if shape is None else CovWitness(a, shape)


# -- formal points ---------------------------------------------------------------


@dataclass(frozen=True)
class FormalPointFragment:
    """The first ``depth + 1`` neighbourhoods of a formal point."""

    depth: int
    chain: tuple

    def __post_init__(self) -> None:
        chain = tuple(finseq(c) for c in self.chain)
        object.__setattr__(self, "chain", chain)
        if len(chain) != self.depth + 1:
            raise MalformedFragment(f"expected {self.depth + 1} neighbourhoods, got {len(chain)}")
        for n, c in enumerate(chain):
            if len(c) != n:
                raise MalformedFragment(f"neighbourhood {n} has length {len(c)}")
            if n and not is_prefix(chain[n - 1], c):
                raise MalformedFragment(f"{list(chain[n - 1])} is not a prefix of {list(c)}")

    def __contains__(self, a: FinSeq) -> bool:
        return tuple(a) in self.chain


def formal_point_fragment(alpha: Point, depth: int) -> FormalPointFragment:
    return FormalPointFragment(depth, tuple(alpha.iseg(n) for n in range(depth + 1)))


def point_from_fragment(f: FormalPointFragment) -> FinSeq:
    """Longest neighbourhood; its ``n``-th entry is the point's value at ``n``."""
    return f.chain[-1]


# -- formal topology maps --------------------------------------------------------


@dataclass(frozen=True)
class FormalMap:
    """A relation between addresses and naturals with its totality certificate.

    ``pairs`` is present for table-backed maps: a finite list of
    ``(address, n)`` where addresses are canonical representatives of the
    witness's cells (see :func:`~formalbaire.brouwer.canonical_address`).
    """

    relate: Callable[[FinSeq, int], bool]
    witness: CovWitness
    value_at: Callable[[FinSeq], Optional[int]]
    pairs: Optional[tuple] = None
    uniform_from: Optional[int] = field(default=None)

    @classmethod
    def from_table(cls, witness: CovWitness, pairs: Iterable[tuple[Iterable[int], int]]) -> FormalMap:
        if not is_tabular(witness.shape):
            raise ValueError("table-backed maps need a tabular witness")
        pairs = tuple((finseq(a), int(n)) for a, n in pairs)
        table: dict[FinSeq, list[int]] = {}
        for a, n in pairs:
            table.setdefault(a, []).append(n)
        root, shape = witness.root, witness.shape

        def canon(u: FinSeq) -> FinSeq:
            return root + canonical_address(shape, u[len(root):])

        def value_at(u: FinSeq) -> int | None:
            if not witness.contains(u):
                return None
            vals = table.get(canon(u))
            return vals[0] if vals else None

        def relate(u: FinSeq, n: int) -> bool:
            return witness.contains(u) and n in table.get(canon(u), ())

        bound = max([max_width(shape), *(x + 1 for x in root)])
        return cls(relate, witness, value_at, pairs, bound)

    def preimage(self) -> DecidableSet:
        """``r^- N`` as a decidable set, via ``value_at``."""

        def member(u: FinSeq) -> bool:
            v = self.value_at(u)
            return v is not None and self.relate(u, v)

        return DecidableSet.predicate(member, self.uniform_from)


def map_from_realisable(F: ContinuousFn) -> FormalMap:
    """The map ``a r n  iff  a in bar(realiser) and F(a * 0^w) = n``."""
    gamma = require_realiser(F)
    W = cov_from_brouwer((), gamma)
    if is_tabular(gamma):
        return FormalMap.from_table(W, [(u, F.at_prefix(u)) for u in W.representatives()])

    def value_at(u: FinSeq) -> int | None:
        return F.at_prefix(u) if W.contains(u) else None

    return FormalMap(lambda u, n: W.contains(u) and F.at_prefix(u) == n, W, value_at)


def realiser_from_map(r: FormalMap, fuel: int = DEFAULT_FUEL) -> ContinuousFn:
    """Label the totality witness by the map's values to get a realiser."""
    root = r.witness.root

    def label(node: BrouwerOp, addr: FinSeq) -> BrouwerOp:
        if isinstance(node, Leaf):
            v = r.value_at(root + addr)
            if v is None:
                raise UndefinedValue(root + addr)
            return Leaf(v + 1)
        if isinstance(node, Sup) and r.pairs is not None:
            kids = tuple(label(c, addr + (i,)) for i, c in enumerate(node.children))
            return Sup(kids, label(node.default, addr + (node.width,)))
        # a rule-based map may vary across a default family, so label each index
        hint = node.width + 1 if isinstance(node, Sup) else node.cutoff_hint
        return LazySup(lambda i, n=node, addr=addr: label(n.child(i), addr + (i,)), hint)

    if root:
        raise ValueError("a totality witness must be rooted at the empty sequence")
    return ContinuousFn.from_op(label(r.witness.shape, ()), fuel)


def apply_map(r: FormalMap, alpha: Point, fuel: int = DEFAULT_FUEL) -> int:
    """The unique ``n`` related to some neighbourhood of ``alpha``."""
    for n in range(fuel + 1):
        u = alpha.iseg(n)
        if r.witness.contains(u):
            v = r.value_at(u)
            if v is not None:
                return v
    raise FuelExhausted(fuel, "no witness address met along the point")


@dataclass
class MapReport:
    violations: list = field(default_factory=list)
    unverified: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_map(
    r: FormalMap,
    F: ContinuousFn | None = None,
    samples: Sequence[Point] = (),
    cutoff: int = 4,
    fuel: int = DEFAULT_FUEL,
) -> MapReport:
    """Check totality, single-valuedness on the witness, and the commuting square."""
    report = MapReport()
    W = r.witness
    if W.root:
        report.violations.append(("totality", "witness not rooted at the empty sequence", W.root))
    else:
        v = check_cover((), r.preimage(), W, cutoff=cutoff)
        if v.is_no:
            report.violations.append(("totality", "witness address outside ext(r^- N)", v.witness))
        elif v.is_unverified:
            report.unverified.append(("totality", cutoff))

    if r.pairs is not None:
        seen: dict[FinSeq, int] = {}
        for a, n in r.pairs:
            if a in seen and seen[a] != n:
                report.violations.append(("single-valued", a, (seen[a], n)))
            seen.setdefault(a, n)
    else:
        addrs = W.representatives() if is_tabular(W.shape) else W.members(cutoff)[: cutoff**3]
        for u in addrs:
            v = r.value_at(u)
            if v is None:
                continue
            others = [n for n in range(v + cutoff + 1) if n != v and r.relate(u, n)]
            if others:
                report.violations.append(("single-valued", u, (v, others[0])))
        report.unverified.append(("single-valued", "values probed up to value + cutoff"))

    if F is not None:
        for alpha in samples:
            try:
                got = apply_map(r, alpha, fuel)
            except FuelExhausted:
                report.violations.append(("commutes", alpha, "no witness address met"))
                continue
            want = F.apply(alpha)
            if got != want:
                report.violations.append(("commutes", alpha, (want, got)))
    return report
