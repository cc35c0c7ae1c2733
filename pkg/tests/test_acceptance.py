"""End-to-end acceptance: the eleven release-gating checks.

Each test is one check; ``pytest -v`` prints one pass/fail line per check.
Module suites cover the fine-grained behavior — these are the coarse,
quantitative gates run at full strength.
"""

import io
import json
import math
import random
import time
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import numpy as np
import pytest

from semicrossed.algebra import (
    alpha_endomorphism,
    constant_cylinder,
    crossed_u_power,
    embed_poly,
    from_function,
    l1_norm,
    linear_ops,
    multiply,
    poly_distance,
    regularize_right_multiply,
    semicrossed_poly,
    u_power,
)
from semicrossed.catalog import CATALOG, get_system
from semicrossed.cli import main as cli_main
from semicrossed.dynamics import (
    compose_shift,
    enumerate_cycles,
    make_cylinder,
    make_lasso,
    make_stream,
)
from semicrossed.errors import SeparationFailure
from semicrossed.extension import bilasso_from_cycle, make_bilasso, transfer_check
from semicrossed.representations import (
    TruncationPolicy,
    build_pi_x,
    constant_A,
    constant_B,
    crossed_norm,
    norm_pi_x,
    semicrossed_norm,
    sup_lambda_norm,
    verify_nest_truncation,
)
from semicrossed import streams

from conftest import rand_cylinder, rand_poly


CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def _rand_lasso(rng: random.Random, g):
    """Random eventually-periodic point: short walk, then the first cycle
    the walk closes."""
    path = [rng.randrange(g.alphabet_size)]
    seen = {path[0]: 0}
    while True:
        nxt = rng.choice(g.followers(path[-1]))
        if nxt in seen:
            i = seen[nxt]
            return make_lasso(g, tuple(path[:i]), tuple(path[i:]))
        seen[nxt] = len(path)
        path.append(nxt)


@pytest.fixture(scope="module")
def fifty_polys(full2):
    """The shared random suite for the two norm-comparison checks."""
    rng = random.Random(20)
    return [rand_poly(rng, full2, max_degree=3, max_window=2) for _ in range(50)]


def _acceptance_elements(g):
    f = make_cylinder(g, 1, {w: 1.0 if w[0] == 0 else 0.5 for w in g.admissible_words(1)})
    words2 = g.admissible_words(2)
    g2 = make_cylinder(g, 2, {w: complex(0.25 * (i + 1), 0.25) for i, w in enumerate(words2)})
    one = u_power(g, 0)
    return {
        "U": u_power(g, 1),
        "onePlusU": linear_ops(one, u_power(g, 1), "add"),
        "fU": semicrossed_poly(g, {1: f}),
        "mixed": semicrossed_poly(g, {0: constant_cylinder(g, 1.0), 1: f, 2: g2}),
    }


# ---------------------------------------------------------------------------


def test_01_covariance_exact_on_every_system(full2):
    """fU and U(f after shift) build identical matrices, bit for bit."""
    start = time.monotonic()
    checked = 0
    for name in CATALOG:
        g = get_system(name)
        rng = random.Random(hash(name) & 0xFFFF)
        U = u_power(g, 1)
        for _ in range(100):
            f = rand_cylinder(rng, g, rng.randint(1, 2))
            x = _rand_lasso(rng, g)
            K = rng.randint(2, 64)
            lhs = build_pi_x(multiply(from_function(f), U), x, K)
            rhs = build_pi_x(multiply(U, from_function(compose_shift(f, 1))), x, K)
            assert np.array_equal(lhs, rhs), (name, x, K)
            checked += 1
    elapsed = time.monotonic() - start
    print(f"covariance: {checked} triples exact in {elapsed:.2f}s")
    assert checked == 100 * len(CATALOG)
    assert elapsed < 10.0


def test_02_shift_generator_is_an_isometry(full2, gm):
    for g in (full2, gm):
        U = u_power(g, 1)
        x = make_lasso(g, (0,), (0, 1))
        for K in range(2, 65):
            assert norm_pi_x(U, x, K) == 1.0


def test_03_norm_anchor_one_plus_shift(full2):
    F = linear_ops(u_power(full2, 0), u_power(full2, 1), "add")
    est = semicrossed_norm(F, TruncationPolicy(k_start=8, k_max=512))
    print(f"estimate {est.value:.12f}, history {est.history}")
    assert est.value >= 1.99
    assert est.value <= 2.0 + 1e-9  # the summable-coefficient bound
    # the truncation curve itself is past 1.99 by K=512
    x = make_lasso(full2, (), (0,))
    direct = norm_pi_x(F, x, 512)
    assert direct >= 1.99
    assert direct == pytest.approx(2 * math.cos(math.pi / 1024), abs=1e-9)
    cyc = constant_B(F, max_period=1, lambda_grid=256)
    assert cyc.value == pytest.approx(2.0, abs=1e-6)


def test_04_cycle_norms_dominated_by_point_norms(full2, fifty_polys):
    cycles = [c.word for c in enumerate_cycles(full2, 4)]
    assert len(cycles) == 8
    violations = []
    worst = 0.0
    for idx, F in enumerate(fifty_polys):
        for cyc in cycles:
            lam = sup_lambda_norm(F, cyc).value
            point = norm_pi_x(F, make_lasso(full2, (), cyc), 256)
            worst = max(worst, lam - point)
            if lam > point + 5e-2:
                violations.append((idx, cyc, lam, point))
    print(f"worst excess {worst:.3e} over {len(fifty_polys) * len(cycles)} pairs")
    assert violations == []


def test_05_two_bounds_meet_the_sampled_supremum(full2, fifty_polys):
    cycles = [c.word for c in enumerate_cycles(full2, 4)]
    worst = 0.0
    for idx, F in enumerate(fifty_polys):
        word = constant_A(F, 10, mode="exhaustive")
        cyc = constant_B(F, max_period=4)
        target = max(word.value, cyc.value)

        points = [make_lasso(full2, (), c) for c in cycles]
        points.append(make_lasso(full2, word.word, (0,)))
        points.append(make_lasso(full2, word.word, (1,)))
        rng = random.Random(1000 + idx)
        while len(points) < 20:
            points.append(_rand_lasso(rng, full2))
        sampled = max(norm_pi_x(F, p, 256) for p in points)

        gap = abs(target - sampled)
        worst = max(worst, gap)
        assert gap <= 5e-2, (idx, target, sampled)
    print(f"worst |bound - sample| = {worst:.3e}")


def test_06_one_sided_and_two_sided_norms_agree(full2, gm):
    policy = TruncationPolicy(k_start=8, k_max=512)
    worst = 0.0
    for g in (full2, gm):
        for label, F in _acceptance_elements(g).items():
            one = semicrossed_norm(F, policy)
            two = crossed_norm(embed_poly(F), policy)
            gap = abs(one.value - two.value)
            worst = max(worst, gap)
            assert gap <= 2e-2, (g.alphabet_size, label, one.value, two.value)
    print(f"worst embedding gap {worst:.3e}")


def test_07_properties_transfer_across_the_extension():
    cells = 0
    for name, entry in CATALOG.items():
        for row in transfer_check(entry.graph):
            assert row.agreement, (name, row.property, row.base, row.extension)
            cells += 1
    print(f"{cells} cells agree on {len(CATALOG)} systems")
    assert len(CATALOG) >= 10
    assert cells >= 40


def test_08_ordered_invariant_chain_survives_truncation(full2, gm):
    tm = make_stream(full2, streams.ThueMorse(), check_to=1024)
    rep = verify_nest_truncation(tm, K=16)
    assert rep.indicators_exact and rep.tails_invariant
    assert rep.window == 9

    spike = make_bilasso(full2, (0,), (1,), 0, (0,))
    rep2 = verify_nest_truncation(spike, K=8)
    assert rep2.indicators_exact and rep2.tails_invariant
    assert (rep2.start, rep2.window) == (-8, 16)

    with pytest.raises(SeparationFailure):
        verify_nest_truncation(make_lasso(gm, (), (0, 1)), K=8)
    with pytest.raises(SeparationFailure):
        verify_nest_truncation(bilasso_from_cycle(full2, (0, 1)), K=8)


def test_09_algebra_laws_and_regularization(gm):
    rng = random.Random(90)
    for _ in range(50):
        F, G = rand_poly(rng, gm), rand_poly(rng, gm)
        H = rand_poly(rng, gm)
        assert poly_distance(multiply(multiply(F, G), H), multiply(F, multiply(G, H))) < 1e-12
        assert alpha_endomorphism(multiply(F, G)) == multiply(
            alpha_endomorphism(F), alpha_endomorphism(G)
        )

    policy = TruncationPolicy(k_start=8, k_max=64)
    worst = 0.0
    for i in range(10):
        base = rand_poly(random.Random(900 + i), gm, max_degree=2, max_window=2)
        G = multiply(embed_poly(base), crossed_u_power(gm, -random.Random(950 + i).randint(0, 3)))
        m, F = regularize_right_multiply(G)
        # landing is exact: nonnegative powers, windows anchored at >= 1
        assert all(n >= 0 for n in F.support)
        assert all(ft.start >= 1 for ft in embed_poly(F).coeffs.values())
        before = crossed_norm(G, policy).value
        after = crossed_norm(embed_poly(F), policy).value
        worst = max(worst, abs(before - after))
        assert abs(before - after) <= 2e-2, (i, m, before, after)
    print(f"worst regularization drift {worst:.3e}")


def test_10_simplicity_implies_semisimplicity_not_conversely():
    from semicrossed.envelope import envelope_report

    policy = TruncationPolicy(k_start=8, k_max=64, lambda_grid=64, refine_steps=30, max_period=2)
    witness_found = False
    for name, entry in CATALOG.items():
        g = entry.graph
        elements = [u_power(g, 1), linear_ops(u_power(g, 0), u_power(g, 1), "add")]
        rep = envelope_report(g, elements, policy=policy, name=name)
        assert rep.implication_ok, name
        if rep.envelope_simple:
            assert rep.semisimple_predicate, name
        if name == "full-2":
            assert rep.semisimple_predicate and not rep.envelope_simple
            witness_found = True
    assert witness_found


def test_11_reports_are_deterministic():
    args = [
        "envelope",
        "--config",
        str(CONFIGS / "golden-mean.json"),
        "--no-timestamp",
        "--k-max",
        "64",
    ]

    def run_once():
        out = io.StringIO()
        with redirect_stdout(out), redirect_stderr(io.StringIO()):
            rc = cli_main(args)
        assert rc == 0
        return out.getvalue()

    first, second = run_once(), run_once()
    assert first == second
    json.loads(first)  # and it is valid JSON
