"""Randomized verification suites for the max-convolution identities.

Each suite draws its inputs from a seeded generator, runs one verifier per
trial and folds the per-trial reports into a single worst-case report.
"""
from __future__ import annotations

import numpy as np

from .convolution import classical_max
from .measure import DiscreteMeasure, max_cdf_gap, sup_distance, union_grid
from .operators import (PointedSpace, monotone_pair, random_hermitian,
                        spectral_distribution, spectral_maximum_distribution,
                        tensor_model_max_law, verify_prop_projections)
from .report import Report
from .subordination import (TOL, boolean_decomposition, verify_composition,
                            verify_decomposition, verify_free_distributivity,
                            verify_power)

MIN_WEIGHT_SHARE = 0.1


def _weights(rng, n, dyadic=False):
    if dyadic:
        w = [1.0]
        while len(w) < n:
            k = int(rng.integers(len(w)))
            half = w.pop(k) / 2
            w += [half, half]
        return rng.permutation(np.array(w))
    w = rng.dirichlet(np.ones(n))
    return (1 - MIN_WEIGHT_SHARE) * w + MIN_WEIGHT_SHARE / n


def random_measure(rng, max_atoms=8, nonnegative=False, lattice=None, dyadic=None,
                   shift=0.0) -> DiscreteMeasure:
    """Random atomic measure.

    Atoms come from a small integer lattice about half the time, so that
    independently drawn measures share atoms, and are continuous otherwise.
    Dyadic weights make ties such as ``tail_mu == F_sigma`` exact.
    """
    n = int(rng.integers(1, max_atoms + 1))
    if lattice is None:
        lattice = rng.random() < 0.5
    if dyadic is None:
        dyadic = rng.random() < 0.3
    if lattice:
        lo = 0 if nonnegative else -6
        atoms = rng.choice(np.arange(lo, lo + 13), size=min(n, 13), replace=False).astype(float)
    else:
        atoms = rng.uniform(0.0 if nonnegative else -3.0, 3.0, size=n)
    atoms = atoms + shift
    return DiscreteMeasure(atoms, _weights(rng, atoms.size, dyadic))


def random_tuple(rng, k, nonnegative=False):
    """``k`` measures, occasionally arranged adversarially.

    Modes: independent draws; disjoint supports (each measure to the right
    of the previous one); identical atom sets; a first measure pushed far
    right so its CDF vanishes over the others' whole support.
    """
    mode = rng.choice(["plain", "plain", "disjoint", "shared", "late_first"])
    if mode == "disjoint":
        out, offset = [], 0.0
        for _ in range(k):
            m = random_measure(rng, nonnegative=True, shift=offset)
            out.append(m)
            offset = float(m.atoms[-1]) + 1.0 + rng.random()
        return [out[i] for i in rng.permutation(k)]
    if mode == "shared":
        base = random_measure(rng, nonnegative=nonnegative)
        return [DiscreteMeasure(base.atoms, _weights(rng, len(base), rng.random() < 0.3))
                for _ in range(k)]
    ms = [random_measure(rng, nonnegative=nonnegative) for _ in range(k)]
    if mode == "late_first":
        ms[0] = random_measure(rng, nonnegative=True, shift=6.0 + 3 * rng.random())
    return ms


def _fold(reports, name, trials) -> Report:
    worst = max(reports, key=lambda r: r.max_error)
    extra = {"suite": name, "trials": trials, "failures": sum(not r.passed for r in reports)}
    extra.update({f"witness_{k}": v for k, v in worst.extra.items()})
    return Report(worst.max_error, worst.witness_x, all(r.passed for r in reports), extra)


def suite_decomposition(rng, trials, tol=TOL):
    return [verify_decomposition(*random_tuple(rng, 2), tol=tol) for _ in range(trials)]


def suite_composition(rng, trials, tol=TOL):
    return [verify_composition(*random_tuple(rng, 3), tol=tol) for _ in range(trials)]


def suite_distributivity(rng, trials, tol=TOL):
    return [verify_free_distributivity(*random_tuple(rng, 3), tol=tol) for _ in range(trials)]


def suite_power(rng, trials, tol=TOL):
    out = []
    for _ in range(trials):
        sigma, mu = random_tuple(rng, 2)
        t = float(rng.uniform(1.0, 5.0))
        r = verify_power(sigma, mu, t, tol=tol)
        r.extra["t"] = t
        out.append(r)
    return out


def suite_boolean(rng, trials, tol=TOL):
    return [boolean_decomposition(*random_tuple(rng, 2, nonnegative=True), tol=tol)[2]
            for _ in range(trials)]


def random_operator(rng, max_dim=4, positive=False, dim=None):
    """Hermitian matrix with a random lattice spectrum and a random unit vector.

    The dimension is ``dim`` if given, else uniform on ``1..max_dim``.
    """
    d = int(rng.integers(1, max_dim + 1)) if dim is None else dim
    levels = np.arange(0, 7) * 0.5 if positive else np.arange(-3, 4) * 0.5
    spectrum = rng.choice(levels, size=d, replace=d > levels.size or rng.random() < 0.3)
    return random_hermitian(spectrum, rng), PointedSpace.random(d, rng)


def spectral_max_trial(rng, max_dim=4, tol=1e-9) -> Report:
    """Spectral maximum of a random monotone pair against max-convolution laws.

    Half the trials use a positive first operator, where the spectral
    maximum must follow the classical max-convolution on the whole line.
    Every trial also checks the tensor-model closed form everywhere and the
    classical law on ``[0, inf)``.
    """
    positive = bool(rng.random() < 0.5)
    x, s1 = random_operator(rng, max_dim, positive=positive)
    y, s2 = random_operator(rng, max_dim)
    xt, yt, s = monotone_pair(x, s1, y, s2)
    law = spectral_maximum_distribution(xt, yt, s)
    mu, nu = spectral_distribution(x, s1), spectral_distribution(y, s2)
    marg = classical_max(spectral_distribution(xt, s), spectral_distribution(yt, s))
    classical = classical_max(mu, nu)

    checks = [sup_distance(law, tensor_model_max_law(mu, nu)),
              max_cdf_gap(law, marg, union_grid(law, marg), lower=0.0),
              max_cdf_gap(law, classical, union_grid(law, classical),
                          lower=None if positive else 0.0)]
    err, where = max(checks)
    return Report(err, where, err <= tol, {"dims": [s1.dim, s2.dim], "positive_first": positive})


def suite_spectral_max(rng, trials, tol=1e-9):
    return [spectral_max_trial(rng, tol=tol) for _ in range(trials)]


def suite_prop_projections(rng, trials, tol=1e-9):
    out = []
    for _ in range(trials):
        p, q = rng.random(2)
        d1, d2 = (int(v) for v in rng.integers(2, 5, size=2))
        out.append(verify_prop_projections(p, q, d1, d2, seed=rng.integers(2**32), tol=tol))
    return out


SUITES = {
    "decomposition": suite_decomposition,
    "composition": suite_composition,
    "distributivity": suite_distributivity,
    "power": suite_power,
    "boolean": suite_boolean,
    "theorem1": suite_spectral_max,
    "prop-projections": suite_prop_projections,
}


def run_suite(name: str, trials: int, seed: int) -> Report:
    rng = np.random.default_rng([seed, list(SUITES).index(name)])
    return _fold(SUITES[name](rng, trials), name, trials)


def run_suites(names, trials: int, seed: int) -> dict:
    return {name: run_suite(name, trials, seed) for name in names}
