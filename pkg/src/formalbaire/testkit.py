"""Random generators and brute-force oracles.

The oracles here deliberately avoid the engine's tree-walking helpers: they
read operations only through their neighbourhood function (recomputed
locally from the definition) and read functions only through ``F.apply``, so
agreement with the engine is evidence rather than a tautology.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .brouwer import BrouwerOp, ContinuousFn, LazySup, Leaf, Sup
from .seq import FinSeq, Point


@dataclass(frozen=True)
class OpGenSpec:
    max_depth: int = 5
    max_width: int = 4
    max_leaf_value: int = 9
    seed: int = 0


def gen_random_op(spec: OpGenSpec) -> BrouwerOp:
    """A random tabular operation, deterministic in ``spec.seed``."""
    if spec.max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    rng = random.Random(spec.seed)

    def build(level: int) -> BrouwerOp:
        if level >= spec.max_depth:
            return Leaf(rng.randint(1, spec.max_leaf_value))
        # leaves get likelier with depth so trees stay desk-sized
        if rng.random() < 0.25 + 0.75 * level / max(spec.max_depth, 1):
            return Leaf(rng.randint(1, spec.max_leaf_value))
        width = rng.randint(0, spec.max_width)
        return Sup(tuple(build(level + 1) for _ in range(width)), build(level + 1))

    return build(0)


def random_ops(count: int, spec: OpGenSpec = OpGenSpec()) -> list[BrouwerOp]:
    return [
        gen_random_op(OpGenSpec(spec.max_depth, spec.max_width, spec.max_leaf_value, spec.seed + i))
        for i in range(count)
    ]


def random_point(rng: random.Random, max_entry: int = 5, max_prefix: int = 7) -> Point:
    prefix = [rng.randrange(max_entry) for _ in range(rng.randint(0, max_prefix))]
    if rng.random() < 0.5:
        return Point(prefix)
    period = [rng.randrange(max_entry) for _ in range(rng.randint(1, 3))]
    return Point.cycle(prefix, period)


def sample_points(seed: int, count: int, max_entry: int = 5, max_prefix: int = 7) -> list[Point]:
    rng = random.Random(seed)
    return [random_point(rng, max_entry, max_prefix) for _ in range(count)]


def binary_points(length: int) -> Iterator[Point]:
    """Every binary prefix of ``length`` followed by zeros."""
    for bits in itertools.product((0, 1), repeat=length):
        yield Point(bits)


# -- canned functions ------------------------------------------------------------


def first_entry_op() -> LazySup:
    """Realises ``alpha -> alpha(0)``."""
    return LazySup(lambda n: Leaf(n + 1))


def sum_first_two_op() -> LazySup:
    """Realises ``alpha -> alpha(0) + alpha(1)``."""
    return LazySup(lambda n: LazySup(lambda m, n=n: Leaf(n + m + 1)))


def binary_sum_op() -> Sup:
    """Tabular realiser of ``min(alpha(0), 1) + min(alpha(1), 1)``.

    It agrees with ``alpha(0) + alpha(1)`` on binary sequences.
    """
    lo = Sup((Leaf(1), Leaf(2)), Leaf(2))
    hi = Sup((Leaf(2), Leaf(3)), Leaf(3))
    return Sup((lo, hi), hi)


def min_first_one_op() -> Sup:
    """Tabular realiser of ``min(alpha(0), 1)``."""
    return Sup((Leaf(1), Leaf(2)), Leaf(2))


# -- oracles ---------------------------------------------------------------------


def nbhd_value(gamma: BrouwerOp, a: FinSeq) -> int:
    """``gamma(a)`` straight from the inductive definition."""
    if isinstance(gamma, Leaf):
        return gamma.value
    if not a:
        return 0
    return nbhd_value(gamma.child(a[0]), a[1:])


def oracle_bar(gamma: BrouwerOp, cutoff: int, max_len: int = 64) -> set[FinSeq]:
    """Minimal addresses with positive value, searching entries below ``cutoff``."""
    out: set[FinSeq] = set()
    frontier: list[FinSeq] = [()]
    while frontier:
        a = frontier.pop()
        if nbhd_value(gamma, a) > 0:
            if all(nbhd_value(gamma, a[:k]) == 0 for k in range(len(a))):
                out.add(a)
            continue
        if len(a) < max_len:
            frontier.extend(a + (i,) for i in range(cutoff))
    return out


def op_shape_bounds(gamma: BrouwerOp) -> tuple[int, int]:
    """(height, largest explicit width) of a tabular tree."""
    if isinstance(gamma, Leaf):
        return 0, 0
    subs = [op_shape_bounds(c) for c in (*gamma.children, gamma.default)]
    return 1 + max(h for h, _ in subs), max(gamma.width, *(w for _, w in subs))


def neighbourhood_law_failures(
    gamma: BrouwerOp, ext_len: int = 3, ext_entries: int = 4
) -> list[tuple[FinSeq, FinSeq]]:
    """Pairs ``(a, b)`` with ``gamma(a) > 0`` but ``gamma(a * b) != gamma(a)``."""
    _, width = op_shape_bounds(gamma)
    bad = []
    positives = [a for a in oracle_bar(gamma, width + 1)]
    for a in positives:
        v = nbhd_value(gamma, a)
        for k in range(ext_len + 1):
            for b in itertools.product(range(ext_entries), repeat=k):
                if nbhd_value(gamma, a + b) != v:
                    bad.append((a, b))
    return bad


def _fan_level(T, n: int) -> list[FinSeq]:
    nodes: list[FinSeq] = [()]
    for _ in range(n):
        nodes = [a + (i,) for a in nodes for i in range(T.bound(a) + 1) if T.member(a + (i,))]
    return nodes


def brute_force_modulus(
    F: ContinuousFn, T, max_depth: int, grid: tuple[int, int] = (3, 3)
) -> Optional[int]:
    """Least ``N`` making ``F`` constant on every depth-``N`` cylinder of ``T``, by exhaustive evaluation.

    With a tabular realiser of height ``h`` and width ``w``, ``F`` depends only
    on the first ``h`` entries and treats entries ``>= w`` alike, so checking
    all extensions to length ``h`` with entries ``<= w`` is complete. Without
    a realiser the extensions come from ``grid = (max length, entries below)``.
    """
    if F.realiser is not None:
        height, width = op_shape_bounds(F.realiser)
        entries = range(width + 1)

        def extensions(a: FinSeq) -> Iterator[FinSeq]:
            return itertools.product(entries, repeat=max(0, height - len(a)))
    else:
        glen, gent = grid

        def extensions(a: FinSeq) -> Iterator[FinSeq]:
            return (b for k in range(glen + 1) for b in itertools.product(range(gent), repeat=k))

    for N in range(max_depth + 1):
        ok = True
        for a in _fan_level(T, N):
            vals = {F.apply(Point(a + b)) for b in extensions(a)}
            if len(vals) > 1:
                ok = False
                break
        if ok:
            return N
    return None


def change_depth_oracle(delta: Callable[[FinSeq], int], alpha: Point, horizon: int) -> int:
    """``max(D_alpha | {1})`` scanning ``delta`` along ``alpha`` up to ``horizon``."""
    D = {n for n in range(horizon) if delta(alpha.iseg(n)) != delta(alpha.iseg(n + 1))}
    return max(D | {1})


def modulus_M_oracle(F: ContinuousFn, T, N: int) -> int:
    return max(N, max(F.apply(Point(a)) for a in _fan_level(T, N))) + 1


def random_finite_set(rng: random.Random, size: int = 4, max_len: int = 3, max_entry: int = 3) -> list[FinSeq]:
    return [
        tuple(rng.randrange(max_entry) for _ in range(rng.randint(0, max_len)))
        for _ in range(rng.randint(1, size))
    ]
