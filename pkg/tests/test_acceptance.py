"""Acceptance criteria, one test each, at the stated tolerances.

Run with ``pytest tests/test_acceptance.py -s`` to see the PASS/FAIL lines
as they happen; they are also repeated in the terminal summary.
"""
import json

import numpy as np

from maxconv import suites
from maxconv.cli import main
from maxconv.convolution import boolean_max, classical_max, free_max, free_max_power
from maxconv.measure import (DiscreteMeasure, empirical_from_samples, grid_clusters, ks_distance,
                             load_measure, max_cdf_gap, sample, union_grid, write_measure)
from maxconv.operators import (PointedSpace, monotone_pair, random_hermitian,
                               spectral_distribution, spectral_maximum_distribution,
                               verify_prop_projections)
from maxconv.subordination import subordinate
from maxconv.transforms import atom_at_zero_monotone_projections

from conftest import record_criterion

SEED = 20240601


def test_criterion_1_projection_join_operator_path():
    rng = np.random.default_rng([SEED, 1])
    worst = 0.0
    for _ in range(50):
        p, q = rng.random(2)
        d1, d2 = (int(v) for v in rng.integers(2, 5, size=2))
        r = verify_prop_projections(p, q, d1, d2, seed=int(rng.integers(2**32)))
        worst = max(worst, r.max_error)
    ok = worst <= 1e-9
    record_criterion(1, "state of projection join = 1 - pq, 50 pairs", ok, f"max error {worst:.2e}")
    assert ok


def test_criterion_2_projection_join_transform_path():
    grid = np.linspace(0, 1, 21)
    worst = max(abs(atom_at_zero_monotone_projections(p, q) - p * q) for p in grid for q in grid)
    ok = worst <= 1e-6
    record_criterion(2, "limit of zG at 0 = pq, 21x21 grid", ok, f"max error {worst:.2e}")
    assert ok


def test_criterion_3_spectral_maximum_is_classical_max():
    # general random pairs: continuous spectra of either sign, random states
    rng = np.random.default_rng([SEED, 3])
    dists, half_line = [], []
    for _ in range(50):
        d1, d2 = (int(v) for v in rng.integers(1, 5, size=2))
        x = random_hermitian(rng.normal(size=d1), rng)
        y = random_hermitian(rng.normal(size=d2), rng)
        s1, s2 = PointedSpace.random(d1, rng), PointedSpace.random(d2, rng)
        law = spectral_maximum_distribution(*monotone_pair(x, s1, y, s2))
        classical = classical_max(spectral_distribution(x, s1), spectral_distribution(y, s2))
        dists.append(ks_distance(law, classical))
        half_line.append(max_cdf_gap(law, classical, union_grid(law, classical), lower=0.0)[0])
    dists = np.array(dists)
    failures = int(np.sum(dists > 1e-9))
    ok = failures == 0
    record_criterion(3, "spectral max of monotone pair = classical max, 50 pairs", ok,
                     f"{failures}/50 above 1e-9, worst KS {dists.max():.3f}; "
                     f"gap restricted to [0, inf) {max(half_line):.1e}")
    assert ok, f"{failures} of 50 pairs differ; worst KS distance {dists.max():.3f}"


def _adversarial_pairs(rng):
    for _ in range(50):
        # disjoint supports, each side
        a = suites.random_measure(rng, shift=-10.0)
        b = suites.random_measure(rng, shift=10.0)
        yield a, b
        yield b, a
        # sigma starts late and has long flat stretches: F_sigma = 0 over
        # most of the support of mu
        sigma = DiscreteMeasure(np.sort(rng.choice(np.arange(0, 40, 8.0), 3, replace=False)),
                                rng.dirichlet(np.ones(3)) * 0.9 + 0.1 / 3)
        yield sigma, suites.random_measure(rng)


def test_criterion_4_decomposition():
    rng = np.random.default_rng([SEED, 4])
    pairs = [tuple(suites.random_tuple(rng, 2)) for _ in range(350)]
    pairs += list(_adversarial_pairs(rng))
    worst = 0.0
    for sigma, mu in pairs:
        a = subordinate(sigma, mu)
        lo, hi = grid_clusters(union_grid(sigma, mu, a))
        probes = np.r_[hi, hi[-1] + 1.0]
        lhs = sigma.cdf(probes) * a.cdf(probes)
        rhs = np.maximum(sigma.cdf(probes) + mu.cdf(probes) - 1.0, 0.0)
        left = sigma.cdf_left(lo) * a.cdf_left(lo) - np.maximum(
            sigma.cdf_left(lo) + mu.cdf_left(lo) - 1.0, 0.0)
        worst = max(worst, np.max(np.abs(lhs - rhs)), np.max(np.abs(left)))
    ok = len(pairs) == 500 and worst <= 1e-12
    record_criterion(4, "F_sigma F_A = max(F_sigma + F_mu - 1, 0), 500 pairs", ok,
                     f"max error {worst:.2e}")
    assert ok


def test_criterion_5_identity_verifiers():
    counts = {"composition": 500, "distributivity": 500, "power": 200, "boolean": 500}
    lines, ok = [], True
    for name, trials in counts.items():
        r = suites.run_suite(name, trials, SEED)
        ok &= r.passed and r.max_error <= 1e-12
        lines.append(f"{name} {trials} trials max {r.max_error:.1e}")
    record_criterion(5, "composition, distributivity, power, Boolean", ok, "; ".join(lines))
    assert ok


def test_criterion_6_structural_laws():
    rng = np.random.default_rng([SEED, 6])
    worst = {}

    def note(key, value):
        worst[key] = max(worst.get(key, 0.0), value)

    for _ in range(200):
        a, b, c = (suites.random_measure(rng, nonnegative=True) for _ in range(3))
        for name, op in (("classical", classical_max), ("free", free_max), ("boolean", boolean_max)):
            note(f"{name} commutative", ks_distance(op(a, b), op(b, a)))
            note(f"{name} associative", ks_distance(op(op(a, b), c), op(a, op(b, c))))
        s, t = rng.uniform(1, 4, size=2)
        m = suites.random_measure(rng)
        note("power semigroup", ks_distance(free_max_power(free_max_power(m, s), t),
                                            free_max_power(m, s * t)))
        note("power 2 = free", ks_distance(free_max_power(m, 2), free_max(m, m)))
        below = DiscreteMeasure.delta(m.atoms[0] - float(rng.uniform(0, 5)))
        note("classical identity", ks_distance(classical_max(m, below), m))
        note("free identity", ks_distance(free_max(m, below), m))
        note("boolean identity", ks_distance(boolean_max(a, DiscreteMeasure.delta(0)), a))
    top = max(worst.values())
    ok = top <= 1e-12
    record_criterion(6, "structural laws, 200 draws each", ok,
                     f"max error {top:.1e} ({max(worst, key=worst.get)})")
    assert ok


def test_criterion_7_monte_carlo_bridge():
    dists = []
    for seed in range(20):
        rng = np.random.default_rng([SEED, 7, seed])
        mu, nu = suites.random_measure(rng), suites.random_measure(rng)
        xs = np.maximum(sample(mu, 10_000, seed=2 * seed), sample(nu, 10_000, seed=2 * seed + 1))
        dists.append(ks_distance(empirical_from_samples(xs), classical_max(mu, nu)))
    ok = max(dists) <= 0.05
    record_criterion(7, "empirical max vs classical max, 20 seeds", ok, f"max KS {max(dists):.4f}")
    assert ok


def test_criterion_8_cli(tmp_path, capsys):
    checks = {}
    checks["verify all exits 0"] = main(["verify", "--suite", "all", "--trials", "200",
                                         "--seed", "7"]) == 0
    checks["verify JSON pass"] = json.loads(capsys.readouterr().out)["pass"] is True

    rng = np.random.default_rng([SEED, 8])
    exact = True
    for k in range(100):
        n = int(rng.integers(1, 12))
        m = DiscreteMeasure(rng.normal(size=n) * 100, rng.dirichlet(np.ones(n)))
        path = tmp_path / f"m{k}.json"
        write_measure(m, path)
        exact &= load_measure(path) == m
    checks["JSON round trip"] = exact

    bad = tmp_path / "bad.json"
    bad.write_text('{"atoms": [{"x": 0, "w": 0.6}, {"x": 1, "w": 0.6}]}')
    neg = tmp_path / "neg.json"
    write_measure(DiscreteMeasure([-1, 1], [0.5, 0.5]), neg)
    checks["bad weights exit 3"] = main(["emit-cdf", "--a", str(bad)]) == 3
    checks["missing file exit 3"] = main(["emit-cdf", "--a", str(tmp_path / "none.json")]) == 3
    checks["negative atom exit 3"] = main(["conv", "--kind", "boolean", "--a", str(neg),
                                           "--b", str(neg)]) == 3
    try:
        main(["no-such-verb"])
        checks["unknown verb exit 2"] = False
    except SystemExit as exc:
        checks["unknown verb exit 2"] = exc.code == 2
    capsys.readouterr()

    failed = [k for k, v in checks.items() if not v]
    ok = not failed
    record_criterion(8, "CLI end to end", ok, "all checks ok" if ok else f"failed: {failed}")
    assert ok
