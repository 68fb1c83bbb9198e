"""Subordination for free max-convolution.

For measures ``sigma`` and ``mu`` the subordinate measure ``A(sigma, mu)`` has
distribution function ``max(1 - tail_mu / F_sigma, 0)`` (zero where
``F_sigma`` vanishes) and satisfies

    free_max(sigma, mu) == classical_max(sigma, A(sigma, mu)).

The ``verify_*`` functions evaluate both sides of an identity in closed form
and report the worst CDF gap over the union of all atoms involved.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .convolution import boolean_max, classical_max, free_max, free_max_power
from .measure import DiscreteMeasure, DomainError, max_cdf_gap, union_grid
from .report import Report

ZERO_GUARD = 1e-15
TOL = 1e-12


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    lo_closed: bool = True
    hi_closed: bool = False

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        above = x >= self.lo if self.lo_closed else x > self.lo
        below = x <= self.hi if self.hi_closed else x < self.hi
        return above & below


@dataclass(frozen=True)
class SupportRegion:
    """Finite disjoint union of sorted intervals; the last one runs to +inf."""

    intervals: tuple

    def contains(self, x):
        x = np.asarray(x, dtype=float)
        hit = np.zeros(x.shape, dtype=bool)
        for iv in self.intervals:
            hit |= iv.contains(x)
        return hit

    def __str__(self):
        parts = []
        for iv in self.intervals:
            hi = "inf)" if np.isinf(iv.hi) else f"{iv.hi:g}" + ("]" if iv.hi_closed else ")")
            parts.append(("[" if iv.lo_closed else "(") + f"{iv.lo:g}, " + hi)
        return " U ".join(parts)


def u_set(sigma: DiscreteMeasure, mu: DiscreteMeasure) -> SupportRegion:
    """The region ``{x : tail_mu(x) < F_sigma(x)}``.

    Both functions are right-continuous steps with jumps at atoms only, so
    the region is a union of grid cells ``[g_k, g_{k+1})``. Membership is
    tested as ``F_sigma + F_mu - 1 > TOL`` so that exact ties land outside
    regardless of argument order.
    """
    grid = union_grid(sigma, mu)
    inside = sigma.cdf(grid) + mu.cdf(grid) - 1.0 > TOL
    intervals = []
    k, n = 0, grid.size
    while k < n:
        if not inside[k]:
            k += 1
            continue
        j = k
        while j + 1 < n and inside[j + 1]:
            j += 1
        hi = grid[j + 1] if j + 1 < n else np.inf
        intervals.append(Interval(float(grid[k]), float(hi), True, False))
        k = j + 1
    return SupportRegion(tuple(intervals))


def subordinate_cdf(f_sigma, tail_mu):
    f_sigma = np.asarray(f_sigma, dtype=float)
    live = f_sigma >= ZERO_GUARD
    ratio = np.divide(tail_mu, f_sigma, out=np.ones_like(f_sigma), where=live)
    return np.where(live, np.maximum(1.0 - ratio, 0.0), 0.0)


def subordinate(sigma: DiscreteMeasure, mu: DiscreteMeasure) -> DiscreteMeasure:
    """The measure whose CDF is ``max(1 - tail_mu / F_sigma, 0)``."""
    grid = union_grid(sigma, mu)
    return DiscreteMeasure.from_cdf(grid, subordinate_cdf(sigma.cdf(grid), mu.tail(grid)))


def compare(lhs: DiscreteMeasure, rhs: DiscreteMeasure, *inputs, tol=TOL) -> Report:
    """Sup of |F_lhs - F_rhs| over every atom of every argument, with left limits."""
    err, where = max_cdf_gap(lhs, rhs, union_grid(lhs, rhs, *inputs))
    return Report(err, where, err <= tol)


def verify_decomposition(sigma, mu, tol=TOL) -> Report:
    lhs = classical_max(sigma, subordinate(sigma, mu))
    return compare(lhs, free_max(sigma, mu), sigma, mu, tol=tol)


def verify_composition(sigma1, sigma2, mu, tol=TOL) -> Report:
    lhs = subordinate(sigma1, subordinate(sigma2, mu))
    rhs = subordinate(classical_max(sigma1, sigma2), mu)
    return compare(lhs, rhs, sigma1, sigma2, mu, tol=tol)


def verify_free_distributivity(sigma, mu1, mu2, tol=TOL) -> Report:
    lhs = subordinate(sigma, free_max(mu1, mu2))
    rhs = free_max(subordinate(sigma, mu1), subordinate(sigma, mu2))
    return compare(lhs, rhs, sigma, mu1, mu2, tol=tol)


def verify_power(sigma, mu, t, tol=TOL) -> Report:
    if not t >= 1:
        raise DomainError(f"power t must be >= 1, got {t}")
    lhs = subordinate(sigma, free_max_power(mu, t))
    rhs = free_max_power(subordinate(sigma, mu), t)
    return compare(lhs, rhs, sigma, mu, tol=tol)


def boolean_decomposition(sigma, mu, tol=TOL):
    """Split ``free_max(sigma, mu)`` into a Boolean max of two subordinates.

    Returns ``(A(sigma, mu), A(mu, sigma), report)``; both inputs must live
    on ``[0, inf)``.
    """
    for name, m in (("sigma", sigma), ("mu", mu)):
        if m.atoms[0] < 0:
            raise DomainError(f"{name} has a negative atom at x={m.atoms[0]:g}")
    a = subordinate(sigma, mu)
    b = subordinate(mu, sigma)
    report = compare(boolean_max(a, b), free_max(sigma, mu), sigma, mu, tol=tol)
    return a, b, report
