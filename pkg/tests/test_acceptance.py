"""Acceptance criteria, each with its time limit.

Every criterion records one PASS/FAIL line; the lines are printed in the
pytest terminal summary.
"""

import itertools
import json
import random
import subprocess
import sys
import time
from functools import lru_cache

from formalbaire import (
    ContinuousFn,
    CovWitness,
    DecidableSet,
    Leaf,
    Sup,
    apply_map,
    bar_cells,
    bar_contains,
    bounded_by,
    brouwer_from_cov,
    cbar_from_brouwer,
    cbar_from_function,
    cbar_member,
    check_cover,
    check_realises,
    cov_from_brouwer,
    cylinder_set,
    evaluate,
    ext_closure,
    extract_realiser,
    full_binary,
    function_from_cbar,
    map_from_realisable,
    modulus_M,
    skeleton,
    uniform_bar_modulus,
    uniform_modulus,
    uniform_witness,
    validate_map,
)
from formalbaire.testkit import (
    OpGenSpec,
    binary_sum_op,
    brute_force_modulus,
    change_depth_oracle,
    modulus_M_oracle,
    nbhd_value,
    neighbourhood_law_failures,
    op_shape_bounds,
    oracle_bar,
    random_finite_set,
    random_ops,
    sample_points,
)

from conftest import ACCEPTANCE_LINES

SPEC = OpGenSpec(max_depth=5, max_width=4, max_leaf_value=9)


@lru_cache(maxsize=None)
def corpus(count: int, seed: int) -> tuple:
    return tuple(random_ops(count, OpGenSpec(SPEC.max_depth, SPEC.max_width, SPEC.max_leaf_value, seed)))


class Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.failures: list = []

    def fail(self, what) -> None:
        self.failures.append(what)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc is not None:
            self.failures.append(f"{exc_type.__name__}: {exc}")
        ok = not self.failures and elapsed < self.limit
        detail = f"{len(self.failures)} failures" if self.failures else "0 failures"
        line = (f"{'PASS' if ok else 'FAIL'} criterion {self.number}: {self.title} "
                f"({detail}, {elapsed:.2f}s / limit {self.limit:.0f}s)")
        ACCEPTANCE_LINES.append(line)
        assert not self.failures, self.failures[:3]
        assert elapsed < self.limit, f"took {elapsed:.2f}s, limit {self.limit}s"
        return False


def test_criterion_1_neighbourhood_law():
    with Criterion(1, "neighbourhood law and single bar hit", 30) as c:
        ops = corpus(1000, 100_000)
        pts = sample_points(1, 50)
        for i, g in enumerate(ops):
            if neighbourhood_law_failures(g, ext_len=3, ext_entries=4):
                c.fail(("law", i))
            height, _ = op_shape_bounds(g)
            for p in pts:
                hits = [n for n in range(height + 2) if bar_contains(g, p.iseg(n))]
                # oracle side: minimal positive prefix, read off the definition
                first = next(n for n in range(height + 2) if nbhd_value(g, p.iseg(n)) > 0)
                if hits != [first] or evaluate(g, p).modulus != first:
                    c.fail(("hit", i, p.iseg(height + 1)))


def test_criterion_2_cover_round_trip():
    with Criterion(2, "cover witness round trip", 10) as c:
        for i, g in enumerate(corpus(300, 200_000)):
            W = cov_from_brouwer((), g)
            _, w = op_shape_bounds(g)
            # exact: finite pattern forms agree, and the expansion agrees with the oracle bar
            if sorted(W.cells(), key=repr) != sorted((cell.pattern for cell in bar_cells(g)), key=repr):
                c.fail(("cells", i))
            if set(W.members(w + 2)) != oracle_bar(g, w + 2):
                c.fail(("members", i))
            if brouwer_from_cov(W) != skeleton(g):
                c.fail(("skeleton", i))


def test_criterion_3_realiser_extraction():
    with Criterion(3, "realiser extraction", 20) as c:
        pts = sample_points(3, 50)
        for i, g in enumerate(corpus(100, 300_000)):
            F = ContinuousFn(lambda a, g=g: evaluate(g, a).value)
            g2 = extract_realiser(F, skeleton(g))
            if skeleton(g2) != skeleton(g):
                c.fail(("skeleton", i))
            if not check_realises(F, g2, pts).ok:
                c.fail(("realises", i))


def test_criterion_4_commuting_diagram():
    with Criterion(4, "commuting diagram", 30) as c:
        pts = sample_points(4, 100)
        for i, g in enumerate(corpus(100, 300_000)):
            F = ContinuousFn.from_op(g)
            r = map_from_realisable(F)
            if any(apply_map(r, p) != F(p) for p in pts):
                c.fail(("apply", i))
            rep = validate_map(r, F, pts)
            if rep.violations:
                c.fail(("axioms", i, rep.violations[:1]))


FANS = (("full_binary", full_binary()), ("bounded(3,2)", bounded_by((3, 2))))


def test_criterion_5_modulus_vs_oracle():
    with Criterion(5, "uniform modulus against brute force", 60) as c:
        for i, g in enumerate(corpus(200, 500_000)):
            F = ContinuousFn.from_op(g)
            for name, T in FANS:
                if uniform_modulus(F, T) != brute_force_modulus(F, T, 16):
                    c.fail((name, i))
        F = ContinuousFn.from_op(binary_sum_op())
        T = full_binary()
        N_oracle = brute_force_modulus(F, T, 8)
        M_oracle = modulus_M_oracle(F, T, N_oracle)
        if (N_oracle, M_oracle) != (2, 3):
            c.fail(("oracle worked instance", N_oracle, M_oracle))
        N = uniform_modulus(F, T)
        if (N, modulus_M(F, T, N)) != (N_oracle, M_oracle):
            c.fail(("engine worked instance", N))


def test_criterion_6_uniform_cbar_modulus():
    with Criterion(6, "uniform c-bar modulus", 60) as c:
        for i, g in enumerate(corpus(200, 500_000)):
            F = ContinuousFn.from_op(g)
            P = cbar_from_function(F)
            for name, T in FANS:
                if uniform_bar_modulus(P, T) != uniform_modulus(F, T):
                    c.fail((name, i))
        F = ContinuousFn.from_op(binary_sum_op())
        T = full_binary()
        M = modulus_M(F, T, uniform_modulus(F, T))
        P = cbar_from_function(F)
        nodes = list(itertools.product((0, 1), repeat=M))
        if len(nodes) != 2**M or not all(cbar_member(P, a).is_yes for a in nodes):
            c.fail(("depth-M slice", M))


def _random_witness(rng, depth):
    def build(d):
        if d == 0 or rng.random() < 0.3:
            return Leaf(1)
        return Sup(tuple(build(d - 1) for _ in range(rng.randint(0, 3))), build(d - 1))
    return CovWitness((), build(depth))


def test_criterion_7_cover_checks():
    with Criterion(7, "cover certificate checks", 20) as c:
        for k in range(6):
            if not check_cover((), cylinder_set((), k), uniform_witness((), k)).is_yes:
                c.fail(("uniform", k))
        rng = random.Random(7)
        only_zero = DecidableSet.finite([(0,)])
        for j in range(200):
            W = _random_witness(rng, rng.randint(0, 4))
            if not check_cover((), only_zero, W).is_no:
                c.fail(("{<0>}", j))
        for j in range(100):
            U = DecidableSet.finite(random_finite_set(rng))
            W = _random_witness(rng, 3)
            if check_cover((), U, W).status != check_cover((), ext_closure(U), W).status:
                c.fail(("zeta", j))


def test_criterion_8_function_from_cbar():
    with Criterion(8, "change-depth function from c-bars", 20) as c:
        pts = sample_points(8, 50)
        for i, g in enumerate(corpus(100, 800_000)):
            P = cbar_from_brouwer(g)
            height, _ = op_shape_bounds(g)
            # fuel equal to the witness height: evaluation must stop at the witness bar
            F = function_from_cbar(P, fuel=height)
            for p in pts:
                if F(p) != change_depth_oracle(P.delta, p, height + 4):
                    c.fail((i, p.iseg(height)))


SUM_OP = json.dumps({"sup": {
    "children": [
        {"sup": {"children": [{"leaf": 1}, {"leaf": 2}], "default": {"leaf": 2}}},
        {"sup": {"children": [{"leaf": 2}, {"leaf": 3}], "default": {"leaf": 3}}},
    ],
    "default": {"sup": {"children": [{"leaf": 2}, {"leaf": 3}], "default": {"leaf": 3}}},
}})

CLI_CASES = [
    (["eval", "--op", '{"leaf":5}', "--point", '{"prefix":[],"tail":"zeros"}'], 0,
     {"value": 4, "modulus": 0}),
    (["modulus", "--op", SUM_OP, "--fan", '{"kind":"full_binary"}'], 0, {"N": 2, "M": 3}),
    (["convert", "--input", '{"leaf":5}', "--to", "cov"], 0,
     {"result": {"root": [], "shape": {"leaf": 1}}}),
    (["convert", "--input", '{"root":[],"shape":{"leaf":1}}', "--to", "brouwer"], 0,
     {"result": {"leaf": 1}}),
    (["eval", "--op", SUM_OP, "--point", "[]", "--fuel", "1"], 3, {"error": "budget"}),
]


def _cli(argv):
    return subprocess.run([sys.executable, "-m", "formalbaire", *argv], capture_output=True)


def test_criterion_9_cli_conformance():
    with Criterion(9, "command-line conformance", 5) as c:
        for argv, code, expect in CLI_CASES:
            first, second = _cli(argv), _cli(argv)
            if first.stdout != second.stdout:
                c.fail(("not deterministic", argv[0]))
            if first.returncode != code or second.returncode != code:
                c.fail(("exit code", argv[0], first.returncode))
            report = json.loads(first.stdout)
            if any(report.get(k) != v for k, v in expect.items()):
                c.fail(("report", argv[0], report))
