"""Cauchy transforms of discrete measures on the upper half-plane."""
import numpy as np

from .measure import DiscreteMeasure, DomainError

UHP_SLACK = 1e-14


def _upper(z):
    z = np.asarray(z, dtype=complex)
    if np.any(~(z.imag > 0)):
        raise DomainError("transform argument must lie in the open upper half-plane")
    return z


def _scalar(out):
    return complex(out) if np.ndim(out) == 0 else out


def cauchy_transform(mu: DiscreteMeasure, z):
    """G(z) = sum_i w_i / (z - x_i)."""
    z = _upper(z)
    terms = mu.weights / (z[..., None] - mu.atoms)
    return _scalar(terms.sum(axis=-1))


def reciprocal_cauchy(mu: DiscreteMeasure, z):
    """H(z) = 1 / G(z)."""
    return _scalar(1.0 / np.asarray(cauchy_transform(mu, z)))


def bernoulli_h(p: float, z):
    """Reciprocal Cauchy transform of ``p delta_0 + (1 - p) delta_1``.

    This is the law of a projection whose state value is ``1 - p``.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    z = _upper(z)
    return _scalar(z * (z - 1.0) / (z - p))


def monotone_additive_h(mu: DiscreteMeasure, nu: DiscreteMeasure, z):
    """H_mu(H_nu(z)), the reciprocal Cauchy transform of mu |> nu."""
    inner = np.asarray(reciprocal_cauchy(nu, z))
    if np.any(inner.imag <= -UHP_SLACK):
        raise DomainError("inner transform left the upper half-plane")
    # lift values sitting on the axis within the slack
    inner = inner.real + 1j * np.maximum(inner.imag, np.finfo(float).tiny)
    return reciprocal_cauchy(mu, inner)


def extrapolate_to_zero(ys, values):
    """Value at 0 of the polynomial through ``(ys[k], values[k])`` (Neville)."""
    ys = [float(y) for y in ys]
    table = [complex(v) for v in values]
    n = len(ys)
    for level in range(1, n):
        for i in range(n - level):
            y0, y1 = ys[i], ys[i + level]
            table[i] = (y1 * table[i] - y0 * table[i + 1]) / (y1 - y0)
    return table[0]


def atom_at_zero_monotone_projections(p: float, q: float, ys=(1e-3, 1e-4, 1e-5)) -> float:
    """Mass at 0 of P + Q for monotonically independent projections.

    ``P`` and ``Q`` have state values ``1 - p`` and ``1 - q``. The mass is the
    limit of ``z G(z)`` as ``z -> 0`` along ``z = iy``, where
    ``G = 1 / (H_P o H_Q)``; it is extrapolated from the sample points ``ys``.
    """
    if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
        raise DomainError("p and q must lie in [0, 1]")
    vals = []
    for y in ys:
        z = 1j * y
        vals.append(z / bernoulli_h(p, bernoulli_h(q, z)))
    return extrapolate_to_zero(ys, vals).real
