"""Finite atomic probability measures on the real line.

Every measure is stored as strictly increasing atom locations with positive
weights. The distribution function is right-continuous: mass sitting at ``x``
is included in ``F(x)``.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

MERGE_TOL = 1e-12
PRUNE_TOL = 1e-15
SUM_TOL = 1e-12


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class MeasureFormatError(DomainError):
    """A serialized measure could not be parsed or failed validation."""


@dataclass(frozen=True)
class CdfPoint:
    location: float
    value: float

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise DomainError(f"CDF value {self.value} outside [0, 1]")


class DiscreteMeasure:
    """Probability measure with finitely many atoms.

    Parameters
    ----------
    atoms : array_like
        Atom locations, in any order. Locations closer than ``MERGE_TOL``
        are merged and their weights summed.
    weights : array_like
        Nonnegative weights. Atoms whose weight is ``<= PRUNE_TOL`` are
        dropped and the remaining mass renormalized.
    sum_tol : float
        Accepted deviation of the total mass from one.
    """

    __slots__ = ("_atoms", "_weights", "_cdf")

    def __init__(self, atoms, weights, sum_tol=SUM_TOL):
        x = np.asarray(atoms, dtype=float).ravel()
        w = np.asarray(weights, dtype=float).ravel()
        if x.shape != w.shape:
            raise DomainError(f"{x.size} atoms but {w.size} weights")
        if x.size == 0:
            raise DomainError("a measure needs at least one atom")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(w))):
            raise DomainError("atoms and weights must be finite")
        if np.any(w < 0):
            k = int(np.argmin(w))
            raise DomainError(f"negative weight {w[k]} at atom {x[k]}")
        total = float(w.sum())
        if abs(total - 1.0) > sum_tol:
            raise DomainError(f"weights sum {total:.12g}, expected 1")

        order = np.argsort(x, kind="stable")
        x, w = x[order], w[order]
        if x.size > 1:
            # chain-merge runs of near-identical locations onto the first one
            starts = np.flatnonzero(np.r_[True, np.diff(x) > MERGE_TOL])
            w = np.add.reduceat(w, starts)
            x = x[starts]

        keep = w > PRUNE_TOL
        pruned = not keep.all()
        x, w = x[keep], w[keep]
        if x.size == 0:
            raise DomainError("all weights vanish")
        total = float(w.sum())
        if pruned or abs(total - 1.0) > SUM_TOL:
            w = w / total

        cdf = np.minimum(np.cumsum(w), 1.0)
        cdf[-1] = 1.0
        for arr in (x, w, cdf):
            arr.setflags(write=False)
        self._atoms, self._weights, self._cdf = x, w, cdf

    @classmethod
    def from_cdf(cls, grid, values, tol=1e-9):
        """Build the measure whose CDF takes ``values[k]`` on ``[grid[k], grid[k+1])``.

        ``grid`` must be strictly increasing and the last value must be one;
        negative increments up to ``tol`` are treated as rounding noise.
        """
        g = np.asarray(grid, dtype=float).ravel()
        F = np.asarray(values, dtype=float).ravel()
        if g.shape != F.shape or g.size == 0:
            raise DomainError("grid and values must be nonempty and of equal length")
        if np.any(np.diff(g) <= 0):
            raise DomainError("grid must be strictly increasing")
        if abs(F[-1] - 1.0) > tol:
            raise DomainError(f"CDF ends at {F[-1]:.12g}, expected 1")
        steps = np.diff(F, prepend=0.0)
        if np.any(steps < -tol):
            k = int(np.argmin(steps))
            raise DomainError(f"CDF decreases by {-steps[k]:.3g} at x={g[k]}")
        F = np.maximum.accumulate(np.clip(F, 0.0, 1.0))
        F[-1] = 1.0
        return cls(g, np.diff(F, prepend=0.0), sum_tol=tol)

    @classmethod
    def delta(cls, x):
        return cls([x], [1.0])

    @property
    def atoms(self) -> np.ndarray:
        return self._atoms

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    def __len__(self):
        return self._atoms.size

    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return np.array_equal(self._atoms, other._atoms) and np.array_equal(
            self._weights, other._weights
        )

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{a:.6g}: {w:.6g}" for a, w in zip(self._atoms, self._weights))
        return f"DiscreteMeasure({{{body}}})"

    def cdf(self, x):
        """F(x), vectorized over ``x``."""
        idx = np.searchsorted(self._atoms, x, side="right")
        return _lookup(self._cdf, idx)

    def cdf_left(self, x):
        """Left limit F(x-)."""
        idx = np.searchsorted(self._atoms, x, side="left")
        return _lookup(self._cdf, idx)

    def tail(self, x):
        return 1.0 - self.cdf(x)

    def cdf_points(self):
        return [CdfPoint(float(a), float(f)) for a, f in zip(self._atoms, self._cdf)]


def _lookup(cdf, idx):
    vals = np.where(idx > 0, cdf[np.maximum(idx - 1, 0)], 0.0)
    return float(vals) if np.ndim(vals) == 0 else vals


def cdf_eval(m: DiscreteMeasure, x):
    return m.cdf(x)


def tail_eval(m: DiscreteMeasure, x):
    return m.tail(x)


def quantile(m: DiscreteMeasure, u):
    """Generalized inverse ``inf{x : F(x) >= u}`` for ``u`` in (0, 1]."""
    uu = np.asarray(u, dtype=float)
    if np.any((uu <= 0) | (uu > 1)) or np.any(np.isnan(uu)):
        raise DomainError("quantile level must lie in (0, 1]")
    idx = np.minimum(np.searchsorted(m._cdf, uu, side="left"), len(m) - 1)
    out = m.atoms[idx]
    return float(out) if out.ndim == 0 else out


def sample(m: DiscreteMeasure, n: int, seed=None) -> np.ndarray:
    """Draw ``n`` i.i.d. values by inverse-CDF sampling."""
    if n < 0:
        raise DomainError("sample size must be nonnegative")
    rng = np.random.default_rng(seed)
    u = 1.0 - rng.random(n)  # (0, 1]
    return np.asarray(quantile(m, u), dtype=float).reshape(n)


def empirical_from_samples(xs) -> DiscreteMeasure:
    xs = np.asarray(xs, dtype=float).ravel()
    if xs.size == 0:
        raise DomainError("cannot build an empirical measure from no samples")
    vals, counts = np.unique(xs, return_counts=True)
    return DiscreteMeasure(vals, counts / xs.size)


def discretize_named(family: str, n: int, **params) -> DiscreteMeasure:
    """Equal-weight atoms at the ``(k - 1/2)/n`` quantiles of a named law.

    Families: ``uniform01`` and ``truncated_exponential`` (keyword
    parameters ``rate`` and ``cap``; the exponential law conditioned on
    ``[0, cap]``).
    """
    if n < 2:
        raise DomainError("need at least two atoms")
    u = (np.arange(1, n + 1) - 0.5) / n
    if family == "uniform01":
        x = u
    elif family == "truncated_exponential":
        rate = float(params.get("rate", 1.0))
        cap = float(params.get("cap", 1.0))
        if rate <= 0 or cap <= 0:
            raise DomainError("rate and cap must be positive")
        x = -np.log1p(u * np.expm1(-rate * cap)) / rate
    else:
        raise DomainError(f"unknown family {family!r}")
    return DiscreteMeasure(x, np.full(n, 1.0 / n))


def union_grid(*measures: DiscreteMeasure) -> np.ndarray:
    return np.unique(np.concatenate([m.atoms for m in measures]))


def grid_clusters(grid):
    """Group a sorted grid into runs closer than ``MERGE_TOL``; return run (min, max)."""
    g = np.asarray(grid, dtype=float)
    starts = np.flatnonzero(np.r_[True, np.diff(g) > MERGE_TOL])
    ends = np.r_[starts[1:], g.size] - 1
    return g[starts], g[ends]


def max_cdf_gap(a: DiscreteMeasure, b: DiscreteMeasure, grid, lower=None):
    """Largest |F_a - F_b| over ``grid``, right values and left limits.

    Grid points within ``MERGE_TOL`` count as one location, the convention
    measures use for their own atoms. With ``lower`` set, only the half-line
    ``[lower, inf)`` is compared. Returns ``(gap, location)``.
    """
    g = np.unique(np.r_[np.asarray(grid, dtype=float), [] if lower is None else [lower]])
    if lower is not None:
        g = g[g >= lower]
    lo, hi = grid_clusters(g)
    left = np.abs(a.cdf_left(lo) - b.cdf_left(lo))
    if lower is not None:
        left[lo <= lower] = 0.0
    gap = np.maximum(np.abs(a.cdf(hi) - b.cdf(hi)), left)
    k = int(np.argmax(gap))
    return float(gap[k]), float(lo[k])


def sup_distance(a: DiscreteMeasure, b: DiscreteMeasure, grid=None):
    """``max_cdf_gap`` over the union of both atom sets unless ``grid`` is given."""
    return max_cdf_gap(a, b, union_grid(a, b) if grid is None else grid)


def ks_distance(a: DiscreteMeasure, b: DiscreteMeasure) -> float:
    return sup_distance(a, b)[0]


# -- serialization -----------------------------------------------------------

def measure_to_dict(m: DiscreteMeasure) -> dict:
    return {"atoms": [{"x": float(x), "w": float(w)} for x, w in zip(m.atoms, m.weights)]}


def measure_from_dict(obj) -> DiscreteMeasure:
    if not isinstance(obj, dict) or "atoms" not in obj:
        raise MeasureFormatError('missing field "atoms"')
    entries = obj["atoms"]
    if not isinstance(entries, list) or not entries:
        raise MeasureFormatError('field "atoms" must be a nonempty array')
    xs, ws = [], []
    for i, e in enumerate(entries):
        if not isinstance(e, dict):
            raise MeasureFormatError(f"atoms[{i}] is not an object")
        for key, dest in (("x", xs), ("w", ws)):
            v = e.get(key)
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise MeasureFormatError(f'atoms[{i}].{key} must be a finite number, got {v!r}')
            dest.append(float(v))
    for i, w in enumerate(ws):
        if w < 0:
            raise MeasureFormatError(f"atoms[{i}].w is negative ({w})")
    total = math.fsum(ws)
    if abs(total - 1.0) > 1e-9:
        raise MeasureFormatError(f"weights sum {total:.12g}, expected 1")
    return DiscreteMeasure(xs, ws, sum_tol=1e-9)


def dumps_measure(m: DiscreteMeasure) -> str:
    return json.dumps(measure_to_dict(m), indent=2)


def write_measure(m: DiscreteMeasure, path) -> None:
    Path(path).write_text(dumps_measure(m) + "\n")


def load_measure(path) -> DiscreteMeasure:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise MeasureFormatError(f"cannot read {p}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MeasureFormatError(f"{p}: invalid JSON ({exc.msg})") from exc
    return measure_from_dict(obj)


def write_cdf_csv(m: DiscreteMeasure, fh) -> None:
    """Step function as ``x,F`` rows: one row below the support, then one per atom."""
    span = float(m.atoms[-1] - m.atoms[0])
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["x", "F"])
    writer.writerow([repr(float(m.atoms[0] - max(1.0, span))), "0.0"])
    for pt in m.cdf_points():
        writer.writerow([repr(pt.location), repr(pt.value)])
