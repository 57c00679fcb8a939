import itertools
import random

import pytest

from formalbaire import (
    ContinuousFn,
    CutoffExhausted,
    FuelExhausted,
    InvalidFan,
    LazySup,
    Leaf,
    NotTabular,
    Point,
    Sup,
    bar_enumerate,
    bounded_by,
    cbar_from_brouwer,
    cbar_from_function,
    cbar_member,
    check_cbar_witness,
    explicit,
    full_binary,
    function_from_cbar,
    make_fan,
    map_from_cbar,
    modulus_M,
    opaque_cbar,
    skeleton,
    uniform_bar_modulus,
    uniform_modulus,
    validate_map,
)
from formalbaire.testkit import (
    OpGenSpec,
    binary_points,
    binary_sum_op,
    brute_force_modulus,
    change_depth_oracle,
    first_entry_op,
    min_first_one_op,
    modulus_M_oracle,
    random_ops,
    sample_points,
)


def uniform_shape(k):
    s = Leaf(1)
    for _ in range(k):
        s = Sup.uniform(s)
    return s


# -- fans -------------------------------------------------------------------------------


def test_full_binary():
    T = make_fan({"kind": "full_binary"})
    assert T.member((0, 1, 1)) and not T.member((0, 2))
    assert T.bound(()) == 1 and T.bound((1, 0, 1)) == 1
    assert list(T.level(2)) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_bounded_by():
    T = make_fan({"kind": "bounded", "widths": [3, 1], "tailWidth": 1})
    assert T.children(()) == [(0,), (1,), (2,)]
    assert T.children((2,)) == [(2, 0)]
    assert T.children((2, 0, 0, 0)) == [(2, 0, 0, 0, 0)]
    assert not T.member((0, 1))
    assert len(list(bounded_by((3, 2)).level(3))) == 6
    with pytest.raises(InvalidFan):
        bounded_by((2, 0))


def test_explicit_fan():
    T = explicit([(), (0,), (2,), (0, 1), (2, 0)], full=[(0, 1), (2, 0)])
    assert T.children(()) == [(0,), (2,)]
    assert T.member((0, 1, 1, 0)) and not T.member((0, 1, 2))
    assert T.check_laws(5) == []


def test_explicit_fan_errors():
    with pytest.raises(InvalidFan):
        explicit([(), (0,), (1,), (1, 0)])  # <0> has no child
    with pytest.raises(InvalidFan):
        explicit([(), (0, 1)])  # not prefix-closed
    with pytest.raises(InvalidFan):
        explicit([(0,)])
    with pytest.raises(InvalidFan):
        make_fan({"kind": "ternary"})


def test_fan_laws_hold_for_canned_fans():
    for T in (full_binary(), bounded_by((3, 2)), bounded_by((1, 4, 2), 2)):
        assert T.check_laws(5) == []
        for n in range(4):
            for a in T.level(n):
                assert all(x <= T.bound(a) for *_, x in T.children(a))


# -- c-bars ------------------------------------------------------------------------------


def test_cbar_from_function_examples():
    P = cbar_from_function(ContinuousFn.from_op(Leaf(5)))
    assert cbar_member(P, ()).is_yes and cbar_member(P, (9, 9)).is_yes
    P = cbar_from_function(ContinuousFn.from_op(min_first_one_op()))
    v = cbar_member(P, ())
    assert v.is_no and v.witness == ((0,), (1,))
    assert cbar_member(P, (0,)).is_yes and cbar_member(P, (1,)).is_yes and cbar_member(P, (7,)).is_yes


def test_cbar_from_function_needs_tabular():
    with pytest.raises(NotTabular):
        cbar_from_function(ContinuousFn.from_op(first_entry_op()))


def test_cbar_monotone_on_samples():
    rng = random.Random(3)
    for g in random_ops(50, OpGenSpec(seed=40)):
        P = cbar_from_function(ContinuousFn.from_op(g))
        for _ in range(20):
            a = tuple(rng.randrange(4) for _ in range(rng.randint(0, 4)))
            if cbar_member(P, a).is_yes:
                assert all(cbar_member(P, a + (n,)).is_yes for n in range(5))


def test_cbar_law_matches_brute_force():
    # P(a) iff delta(a) = delta(a*b) for all b; grid exhaustive for these small trees
    for g in random_ops(40, OpGenSpec(max_depth=3, max_width=2, seed=70)):
        F = ContinuousFn.from_op(g)
        P = cbar_from_function(F)
        for k in range(3):
            for a in itertools.product(range(3), repeat=k):
                grid = (b for m in range(4) for b in itertools.product(range(3), repeat=m))
                expect = all(F.at_prefix(a + b) == F.at_prefix(a) for b in grid)
                assert cbar_member(P, a).is_yes == expect


def test_cbar_from_brouwer():
    g = Sup((Leaf(3),), Sup((), Leaf(1)))
    P = cbar_from_brouwer(g)
    assert cbar_member(P, (0,)).is_yes and cbar_member(P, (1, 5, 2)).is_yes
    v = cbar_member(P, (4,))
    assert v.is_no and v.witness == ((4,), (4, 0))
    Q = cbar_from_brouwer(g, characteristic=True)
    assert Q.delta((0,)) == 1 and Q.delta(()) == 0 and Q.delta((2, 2)) == 1


def test_opaque_cbar_is_bounded():
    P = opaque_cbar(lambda a: min(len(a), 3))
    assert cbar_member(P, (0, 0, 0), cutoff=2).is_unverified
    v = cbar_member(P, (0,), cutoff=2)
    assert v.is_no


def test_check_cbar_witness():
    P = opaque_cbar(lambda a: min(len(a), 3), uniform_shape(3))
    assert check_cbar_witness(P, cutoff=2) == []
    P = opaque_cbar(lambda a: min(len(a), 3), uniform_shape(2))
    # the uniform shape has a single cell, represented by <0,0>
    assert check_cbar_witness(P, cutoff=2) == [(0, 0)]


# -- function from a c-bar --------------------------------------------------------------


def test_function_from_cbar_examples():
    pts = sample_points(6, 30)
    F = function_from_cbar(opaque_cbar(lambda a: min(len(a), 3), uniform_shape(3)))
    assert all(F(p) == 2 for p in pts)
    F = function_from_cbar(opaque_cbar(lambda a: 7, Leaf(1)))
    assert all(F(p) == 1 for p in pts)
    F = function_from_cbar(opaque_cbar(lambda a: 1 if len(a) >= 1 else 0, uniform_shape(1)))
    assert all(F(p) == 1 for p in pts)


def test_function_from_cbar_needs_witness():
    with pytest.raises(ValueError):
        function_from_cbar(opaque_cbar(lambda a: 0))


def test_function_from_cbar_fuel():
    deep = LazySup(lambda i: LazySup(lambda j: LazySup(lambda k: Leaf(1))))
    F = function_from_cbar(opaque_cbar(lambda a: 0, deep), fuel=2)
    with pytest.raises(FuelExhausted):
        F(Point.zeros())


def test_function_from_cbar_matches_oracle_and_witness_bar():
    pts = sample_points(17, 40)
    for g in random_ops(60, OpGenSpec(seed=300)):
        P = cbar_from_brouwer(g)
        F = function_from_cbar(P)
        assert skeleton(F.realiser) == skeleton(g)
        for p in pts:
            assert F(p) == change_depth_oracle(P.delta, p, 12)
        for it in bar_enumerate(F.realiser, cutoff=3):
            assert it.value - 1 == change_depth_oracle(P.delta, Point(it.address), 12)


def test_function_from_cbar_of_function_cbar():
    for g in random_ops(40, OpGenSpec(seed=330)):
        G = ContinuousFn.from_op(g)
        P = cbar_from_function(G)
        F = function_from_cbar(P)
        assert skeleton(F.realiser) == skeleton(g)
        for p in sample_points(5, 20):
            assert F(p) == change_depth_oracle(G.at_prefix, p, 12)


# -- uniform bounds ------------------------------------------------------------------------


def test_uniform_modulus_examples():
    assert uniform_modulus(ContinuousFn.from_op(Leaf(1)), full_binary()) == 0
    assert uniform_modulus(ContinuousFn.from_op(Leaf(1)), bounded_by((3, 2))) == 0
    assert uniform_modulus(ContinuousFn.from_op(binary_sum_op()), full_binary()) == 2
    assert uniform_modulus(ContinuousFn.from_op(min_first_one_op()), full_binary()) == 1


def test_uniform_modulus_budget():
    # two levels of dependence do not fit a budget of one
    with pytest.raises(FuelExhausted):
        uniform_modulus(ContinuousFn.from_op(binary_sum_op()), full_binary(), max_depth=1)


def test_uniform_modulus_matches_brute_force():
    for T in (full_binary(), bounded_by((3, 2))):
        for g in random_ops(60, OpGenSpec(seed=1000)):
            F = ContinuousFn.from_op(g)
            assert uniform_modulus(F, T) == brute_force_modulus(F, T, 8)


def test_uniform_modulus_minimal():
    for g in random_ops(60, OpGenSpec(seed=1500)):
        F = ContinuousFn.from_op(g)
        T = full_binary()
        N = uniform_modulus(F, T)
        for a in T.level(N):
            assert len({F(Point(a + b)) for b in itertools.product(range(2), repeat=5)}) == 1
        if N > 0:
            from formalbaire import is_constant_below
            assert any(is_constant_below(g, a).is_no for a in T.level(N - 1))


def test_modulus_M_examples():
    F = ContinuousFn.from_op(binary_sum_op())
    assert modulus_M(F, full_binary(), 2) == 3
    assert modulus_M(ContinuousFn.from_op(Leaf(1)), full_binary(), 0) == 1
    assert modulus_M(ContinuousFn.from_op(Leaf(1)), bounded_by((3,)), 0) == 1


def test_modulus_M_matches_oracle():
    for g in random_ops(40, OpGenSpec(seed=2000)):
        F = ContinuousFn.from_op(g)
        for T in (full_binary(), bounded_by((3, 2))):
            N = uniform_modulus(F, T)
            assert modulus_M(F, T, N) == modulus_M_oracle(F, T, N)


def test_M_bars_every_binary_path():
    F = ContinuousFn.from_op(binary_sum_op())
    T = full_binary()
    M = modulus_M(F, T, uniform_modulus(F, T))
    P = cbar_from_function(F)
    assert all(cbar_member(P, p.iseg(M)).is_yes for p in binary_points(M))


def test_M_from_function_of_brouwer_cbar():
    # P from a tree, F the change-depth function of P: P holds at depth M on every binary node
    for g in random_ops(40, OpGenSpec(seed=2500)):
        P = cbar_from_brouwer(g)
        F = function_from_cbar(P)
        T = full_binary()
        M = modulus_M(F, T, uniform_modulus(F, T))
        assert all(cbar_member(P, a).is_yes for a in T.level(M))


def test_uniform_bar_modulus_examples():
    T = full_binary()
    assert uniform_bar_modulus(cbar_from_function(ContinuousFn.from_op(Leaf(1))), T) == 0
    assert uniform_bar_modulus(cbar_from_function(ContinuousFn.from_op(binary_sum_op())), T) == 2
    P = opaque_cbar(lambda a: min(len(a), 3), uniform_shape(3))
    assert uniform_bar_modulus(P, T, accept_unverified=True) == 3
    with pytest.raises(CutoffExhausted):
        uniform_bar_modulus(P, T)


def test_uniform_bar_modulus_equals_uniform_modulus():
    for g in random_ops(80, OpGenSpec(seed=3000)):
        F = ContinuousFn.from_op(g)
        P = cbar_from_function(F)
        for T in (full_binary(), bounded_by((3, 2))):
            assert uniform_bar_modulus(P, T) == uniform_modulus(F, T)


# -- formal maps from c-bars ------------------------------------------------------------


def test_map_from_cbar_examples():
    F = ContinuousFn.from_op(Leaf(5))
    r = map_from_cbar(cbar_from_function(F), F)
    assert r.relate((), 4)
    F = ContinuousFn.from_op(min_first_one_op())
    r = map_from_cbar(cbar_from_function(F), F)
    assert r.relate((0,), 0) and r.relate((1,), 1)
    assert all(r.relate((n,), 1) for n in range(2, 12))
    assert not r.relate((), 0) and not r.relate((), 1)


def test_map_from_cbar_rejects_opaque():
    with pytest.raises(ValueError):
        map_from_cbar(opaque_cbar(lambda a: 0, Leaf(1)), ContinuousFn.from_op(Leaf(1)))


def test_map_from_cbar_validates():
    pts = sample_points(21, 20)
    for g in random_ops(50, OpGenSpec(seed=4000)):
        F = ContinuousFn.from_op(g)
        rep = validate_map(map_from_cbar(cbar_from_function(F), F), F, pts)
        assert rep.ok, rep.violations
