"""Finite-dimensional operator model for spectral maxima.

Self-adjoint operators and projections are plain complex ``ndarray``
matrices, checked on entry. A :class:`PointedSpace` carries the unit vector
that defines the vector state ``A -> <A xi, xi>``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measure import DiscreteMeasure, DomainError, PRUNE_TOL, union_grid
from .report import Report

EIG_TOL = 1e-9
SVD_TOL = 1e-9
HERM_TOL = 1e-12


class ConsistencyError(RuntimeError):
    """Computed spectral data violates a structural guarantee."""


@dataclass(frozen=True, eq=False)
class PointedSpace:
    xi: np.ndarray

    def __post_init__(self):
        xi = np.asarray(self.xi, dtype=complex).ravel()
        if abs(np.linalg.norm(xi) - 1.0) > 1e-12:
            raise DomainError(f"state vector has norm {np.linalg.norm(xi):.15g}, expected 1")
        xi.setflags(write=False)
        object.__setattr__(self, "xi", xi)

    @property
    def dim(self) -> int:
        return self.xi.size

    @classmethod
    def random(cls, dim, rng):
        v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        return cls(v / np.linalg.norm(v))


def as_hermitian(a, tol=HERM_TOL) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if a.size and np.max(np.abs(a - a.conj().T)) > tol:
        raise DomainError("matrix is not Hermitian")
    return a


def as_projection(p) -> np.ndarray:
    p = as_hermitian(p)
    if p.size and np.max(np.abs(p @ p - p)) > 1e-9:
        raise DomainError("matrix is not idempotent")
    return p


def _check_dim(a, s):
    if a.shape[0] != s.dim:
        raise DomainError(f"operator acts on dimension {a.shape[0]}, state on {s.dim}")


def vector_state(a, s: PointedSpace) -> float:
    a = as_hermitian(a, tol=1e-9)
    _check_dim(a, s)
    val = np.vdot(s.xi, a @ s.xi)
    if abs(val.imag) > 1e-12 * max(1.0, np.abs(a).max()):
        raise ConsistencyError(f"vector state has imaginary part {val.imag:.3g}")
    return float(val.real)


def spectral_projection_leq(a, x: float, tol=EIG_TOL) -> np.ndarray:
    """Projection onto the eigenvectors of ``a`` with eigenvalue <= x."""
    a = as_hermitian(a)
    w, v = np.linalg.eigh(a)
    vs = v[:, w <= x + tol]
    return vs @ vs.conj().T


def projection_meet(p, q, tol=SVD_TOL) -> np.ndarray:
    """Projection onto range(p) & range(q).

    The intersection is the null space of ``v -> ((I - p) v, (I - q) v)``,
    read off the right singular vectors below ``tol``.
    """
    p, q = as_projection(p), as_projection(q)
    if p.shape != q.shape:
        raise DomainError(f"shape mismatch {p.shape} vs {q.shape}")
    eye = np.eye(p.shape[0])
    stacked = np.vstack([eye - p, eye - q])
    _, s, vh = np.linalg.svd(stacked)
    rank = int(np.sum(s > tol))
    basis = vh[rank:].conj().T
    return basis @ basis.conj().T


def projection_join(p, q, tol=SVD_TOL) -> np.ndarray:
    eye = np.eye(np.shape(p)[0])
    return eye - projection_meet(eye - p, eye - q, tol=tol)


def operator_leq(p, q, tol=1e-9) -> bool:
    """``p <= q`` in the operator order (q - p positive semidefinite)."""
    return bool(np.linalg.eigvalsh(as_hermitian(q - p, tol=1e-9)).min() >= -tol)


def _group(values, tol):
    """Representatives of clusters of sorted ``values`` closer than ``tol``."""
    values = np.sort(np.asarray(values, dtype=float))
    starts = np.flatnonzero(np.r_[True, np.diff(values) > tol])
    return values[starts], starts


def spectral_distribution(a, s: PointedSpace, tol=EIG_TOL) -> DiscreteMeasure:
    """Law of ``a`` in the vector state: weight ``|E_lambda xi|^2`` at each eigenvalue."""
    a = as_hermitian(a)
    _check_dim(a, s)
    w, v = np.linalg.eigh(a)
    overlaps = np.abs(v.conj().T @ s.xi) ** 2
    reps, starts = _group(w, tol)
    weights = np.add.reduceat(overlaps, starts)
    keep = weights > PRUNE_TOL
    return DiscreteMeasure(reps[keep], weights[keep], sum_tol=1e-10)


def monotone_pair(x, s1: PointedSpace, y, s2: PointedSpace):
    """Monotonically independent copies of ``x`` and ``y`` on the tensor product.

    Returns ``(kron(x, P_xi2), kron(I, y), PointedSpace(xi1 (x) xi2))``.
    """
    x, y = as_hermitian(x), as_hermitian(y)
    _check_dim(x, s1)
    _check_dim(y, s2)
    p_xi2 = np.outer(s2.xi, s2.xi.conj())
    xt = np.kron(x, p_xi2)
    yt = np.kron(np.eye(s1.dim), y)
    return xt, yt, PointedSpace(np.kron(s1.xi, s2.xi))


def spectral_maximum_distribution(a, b, s: PointedSpace, tol=EIG_TOL) -> DiscreteMeasure:
    """Law of the spectral maximum of ``a`` and ``b``.

    Its CDF at ``x`` is the state of the meet of the two spectral
    projections of ``(-inf, x]``; jumps can only occur at eigenvalues.
    """
    a, b = as_hermitian(a), as_hermitian(b)
    _check_dim(a, s)
    _check_dim(b, s)
    ea, eb = np.linalg.eigvalsh(a), np.linalg.eigvalsh(b)
    # group each spectrum on its own first so representatives line up with
    # spectral_distribution, then merge the two lists
    grid, _ = _group(np.r_[_group(ea, tol)[0], _group(eb, tol)[0]], tol)
    F = np.array([
        vector_state(projection_meet(spectral_projection_leq(a, x, tol),
                                     spectral_projection_leq(b, x, tol)), s)
        for x in grid
    ])
    drops = np.diff(F)
    if drops.size and drops.min() < -1e-9:
        k = int(np.argmin(drops))
        raise ConsistencyError(f"spectral-maximum CDF decreases by {-drops[k]:.3g} "
                               f"after x={grid[k]:g}")
    return DiscreteMeasure.from_cdf(grid, F)


def tensor_model_max_law(mu: DiscreteMeasure, nu: DiscreteMeasure) -> DiscreteMeasure:
    """Closed-form law of the spectral maximum of a :func:`monotone_pair`.

    ``mu`` is the law of the first operator, ``nu`` of the second. On
    ``[0, inf)`` the CDF is ``F_mu F_nu``. Below zero the first spectral
    projection is ``E_X(x) (x) P_xi2`` and its meet with ``I (x) E_Y(x)``
    only sees ``xi2`` once ``F_nu(x) = 1``, so the CDF is
    ``F_mu(x) [F_nu(x) = 1]``. Both pieces agree with the classical
    max-convolution when ``mu`` lives on ``[0, inf)``.
    """
    grid = union_grid(mu, nu, DiscreteMeasure.delta(0.0))
    f, g = mu.cdf(grid), nu.cdf(grid)
    full = g >= 1.0 - 1e-12
    F = np.where(grid >= 0, f * g, np.where(full, f, 0.0))
    return DiscreteMeasure.from_cdf(grid, F)


def random_hermitian(spectrum, rng) -> np.ndarray:
    """``U diag(spectrum) U*`` with Haar-like random unitary ``U``."""
    d = len(spectrum)
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    u, r = np.linalg.qr(z)
    u = u * (np.diag(r) / np.abs(np.diag(r)))
    a = (u * np.asarray(spectrum, dtype=float)) @ u.conj().T
    return (a + a.conj().T) / 2


def projection_with_state(p: float, s: PointedSpace, rng) -> np.ndarray:
    """Rank-one projection ``P`` with ``<P xi, xi> = 1 - p``."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    if s.dim < 2:
        raise DomainError("need dimension >= 2")
    u = rng.standard_normal(s.dim) + 1j * rng.standard_normal(s.dim)
    u -= np.vdot(s.xi, u) * s.xi
    u /= np.linalg.norm(u)
    v = np.sqrt(1.0 - p) * s.xi + np.sqrt(p) * u
    return np.outer(v, v.conj())


def verify_prop_projections(p, q, d1=2, d2=2, seed=None, tol=1e-9):
    """Check ``<(P~ v Q~) xi, xi> = 1 - pq`` on a random matrix realization."""
    rng = np.random.default_rng(seed)
    s1, s2 = PointedSpace.random(d1, rng), PointedSpace.random(d2, rng)
    P = projection_with_state(p, s1, rng)
    Q = projection_with_state(q, s2, rng)
    pt, qt, s = monotone_pair(P, s1, Q, s2)
    value = vector_state(projection_join(pt, qt), s)
    err = abs(value - (1.0 - p * q))
    return Report(err, float(p), err <= tol, {"p": float(p), "q": float(q), "state": value})
