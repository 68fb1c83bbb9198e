"""Max-convolutions of discrete measures.

Each operation combines the two distribution functions pointwise. Between
consecutive atoms of the union grid both inputs are constant, so evaluating
the combining rule on that grid determines the result exactly.
"""
import numpy as np

from .measure import DiscreteMeasure, DomainError, union_grid


def _combine(mu, nu, rule):
    grid = union_grid(mu, nu)
    return DiscreteMeasure.from_cdf(grid, rule(mu.cdf(grid), nu.cdf(grid)))


def classical_cdf(f, g):
    return f * g


def free_cdf(f, g):
    return np.maximum(f + g - 1.0, 0.0)


def boolean_cdf(f, g):
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    live = (f > 0) & (g > 0)
    denom = np.where(live, f + g - f * g, 1.0)
    return np.where(live, f * g / denom, 0.0)


def free_power_cdf(f, t):
    return np.maximum(t * f - (t - 1.0), 0.0)


def classical_max(mu: DiscreteMeasure, nu: DiscreteMeasure) -> DiscreteMeasure:
    """Law of the maximum of independent variables: F = F_mu * F_nu."""
    return _combine(mu, nu, classical_cdf)


def monotone_max(mu: DiscreteMeasure, nu: DiscreteMeasure) -> DiscreteMeasure:
    """Monotone max-convolution, defined to coincide with :func:`classical_max`.

    In the tensor model of :mod:`maxconv.operators` the spectral maximum has
    this law whenever the first operator is positive; for a first operator
    with negative spectrum the two agree only on ``[0, inf)`` (see
    :func:`maxconv.operators.tensor_model_max_law`).
    """
    return classical_max(mu, nu)


def free_max(mu: DiscreteMeasure, nu: DiscreteMeasure) -> DiscreteMeasure:
    """Free max-convolution: F = max(F_mu + F_nu - 1, 0)."""
    return _combine(mu, nu, free_cdf)


def _check_nonnegative(m, name):
    if m.atoms[0] < 0:
        raise DomainError(f"{name} has a negative atom at x={m.atoms[0]:g}; "
                          "Boolean max-convolution needs support in [0, inf)")


def boolean_max(mu: DiscreteMeasure, nu: DiscreteMeasure) -> DiscreteMeasure:
    """Boolean max-convolution of measures on [0, inf).

    F = F_mu F_nu / (F_mu + F_nu - F_mu F_nu), and F = 0 wherever either
    input CDF vanishes.
    """
    _check_nonnegative(mu, "first measure")
    _check_nonnegative(nu, "second measure")
    return _combine(mu, nu, boolean_cdf)


def free_max_power(mu: DiscreteMeasure, t: float) -> DiscreteMeasure:
    """Free max-convolution power, F = max(t F_mu - (t - 1), 0) for t >= 1."""
    if not t >= 1:
        raise DomainError(f"power t must be >= 1, got {t}")
    grid = mu.atoms
    return DiscreteMeasure.from_cdf(grid, free_power_cdf(mu.cdf(grid), float(t)))


KINDS = {
    "classical": classical_max,
    "free": free_max,
    "boolean": boolean_max,
    "monotone": monotone_max,
}
