"""Finite-difference oracle for the tensor machinery.

Every closed-form quantity in :mod:`lorentz3.geometry.curvature` is checked
against plain central differences (with one Richardson extrapolation level)
applied one differentiation layer below it:

* Christoffel symbols  <-  differences of the metric components,
* Riemann tensor       <-  differences of Christoffel symbols,
* covariant derivative of R  <-  differences of Riemann components.

The fully nested variants (everything derived from metric values alone) are
also provided; they are noisier but independent of every closed form.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

DEFAULT_STEP = 1e-5


def partial_derivative(f: Callable, point, axis: int, step: float = DEFAULT_STEP):
    """Central difference with one Richardson level along the given axis.

    ``f`` may return a scalar or any ndarray; the result has the same shape.
    """

    def central(h):
        p_plus = np.array(point, dtype=float)
        p_minus = np.array(point, dtype=float)
        p_plus[axis] += h
        p_minus[axis] -= h
        return (np.asarray(f(tuple(p_plus)), dtype=float) - np.asarray(f(tuple(p_minus)), dtype=float)) / (2.0 * h)

    return (4.0 * central(step / 2.0) - central(step)) / 3.0


def christoffels_fd(metric_fn: Callable, point, step: float = DEFAULT_STEP) -> np.ndarray:
    """Gamma^k_ij from finite differences of the metric alone."""
    g = np.asarray(metric_fn(point), dtype=float)
    ginv = np.linalg.inv(g)
    dg = np.stack([partial_derivative(metric_fn, point, m, step) for m in range(3)])
    gamma = np.zeros((3, 3, 3))
    for k in range(3):
        for i in range(3):
            for j in range(3):
                gamma[k, i, j] = 0.5 * np.dot(
                    ginv[k], dg[i][j, :] + dg[j][i, :] - dg[:, i, j]
                )
    return gamma


def riemann_from_gamma_fd(
    gamma_fn: Callable, metric_fn: Callable, point, step: float = 1e-4
) -> np.ndarray:
    """R_ijkl = g(R(d_i, d_j) d_k, d_l) from differences of a Gamma function.

    The curvature convention is R(X, Y)Z = del_X del_Y Z - del_Y del_X Z
    - del_[X,Y] Z; for coordinate fields the bracket term drops.
    """
    gamma = np.asarray(gamma_fn(point), dtype=float)
    dgamma = np.stack([partial_derivative(gamma_fn, point, m, step) for m in range(3)])
    g = np.asarray(metric_fn(point), dtype=float)
    upper = np.zeros((3, 3, 3, 3))  # upper[i, j, k, l] = (R(d_i, d_j) d_k)^l
    for i in range(3):
        for j in range(3):
            for k in range(3):
                upper[i, j, k] = (
                    dgamma[i][:, j, k]
                    - dgamma[j][:, i, k]
                    + gamma[:, i, :] @ gamma[:, j, k]
                    - gamma[:, j, :] @ gamma[:, i, k]
                )
    return np.einsum("ijkm,ml->ijkl", upper, g)


def riemann_fd(metric_fn: Callable, point, inner_step: float = 1e-4, outer_step: float = 3e-4) -> np.ndarray:
    """Fully nested oracle: Riemann from metric values only.

    The inner step is larger than the single-layer default: the outer
    difference divides the inner roundoff by its own step, so the inner
    layer is run roundoff-limited rather than truncation-limited.
    """
    gamma_fn = lambda q: christoffels_fd(metric_fn, q, inner_step)
    return riemann_from_gamma_fd(gamma_fn, metric_fn, point, outer_step)


def nabla_riemann_fd(
    riemann_fn: Callable,
    gamma_fn: Callable,
    point,
    direction: int,
    step: float = DEFAULT_STEP,
) -> np.ndarray:
    """(del_m R)_ijkl from differences of a Riemann function plus the four
    connection correction terms."""
    r0 = np.asarray(riemann_fn(point), dtype=float)
    dr = partial_derivative(riemann_fn, point, direction, step)
    gamma = np.asarray(gamma_fn(point), dtype=float)
    gm = gamma[:, direction, :]  # gm[p, a] = Gamma^p_{direction a}
    out = np.array(dr)
    out -= np.einsum("pa,pbcd->abcd", gm, r0)
    out -= np.einsum("pb,apcd->abcd", gm, r0)
    out -= np.einsum("pc,abpd->abcd", gm, r0)
    out -= np.einsum("pd,abcp->abcd", gm, r0)
    return out
