"""Weighted natural cubic smoothing splines with GCV penalty selection.

Minimizes sum_i w_i*(y_i - g(x_i))^2 + s * integral g''(t)^2 dt over natural
cubic splines with knots at the data, following the banded formulation of
Green & Silverman (Nonparametric Regression and Generalized Linear Models,
1994, ch. 2): with Q and R the second-difference and Gram matrices, the
fitted values solve (W + s*Q R^{-1} Q^T) g = W y.

The penalty is resolved through the generalized eigenproblem
Q^T W^{-1} Q v = mu R v (Demmler-Reinsch), which makes the fitted values,
effective degrees of freedom and GCV score cheap for every candidate s.  When
no penalty is given, s is chosen by generalized cross-validation

    GCV(s) = (1/n) * sum_i w_i*(y_i - g_i)^2 / (1 - tr(S)/n)^2

scanned over a data-driven logarithmic grid, taking the smoothest s whose
score is within one standard error (relative sqrt(2/n)) of the minimum; the
flat GCV profiles typical of near-polynomial data otherwise select arbitrary
amounts of residual wiggle (Hurvich, Simonoff & Tsai, JRSS B 1998, discuss the
undersmoothing risk).

s = 0 interpolates; s -> infinity tends to the weighted least-squares line.
The fitted curve is returned as the natural cubic interpolant of the fitted
values, which coincides with the smoothing spline itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import eigh

from .errors import InvalidParameterError

_SCAN_POINTS = 49
_SCAN_DECADES_PAD = 4.0


@dataclass(frozen=True)
class SmoothedCurve:
    """Differentiable fit of y(x): natural cubic spline through the fitted values.

    penalty is the roughness weight actually used (0 for interpolation),
    dof the effective degrees of freedom tr(S) of the smoother.
    """

    x: np.ndarray
    fitted: np.ndarray
    penalty: float
    dof: float

    def __post_init__(self):
        spline = CubicSpline(self.x, self.fitted, bc_type="natural")
        object.__setattr__(self, "_spline", spline)
        object.__setattr__(self, "_derivative", spline.derivative())

    def __call__(self, f):
        return self._spline(f)

    def derivative(self, f):
        return self._derivative(f)


def _difference_matrices(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Q (n x n-2) and R (n-2 x n-2) of the natural-spline roughness penalty."""
    n = x.size
    h = np.diff(x)
    q = np.zeros((n, n - 2))
    r = np.zeros((n - 2, n - 2))
    for k in range(1, n - 1):
        j = k - 1
        q[k - 1, j] = 1.0 / h[k - 1]
        q[k, j] = -1.0 / h[k - 1] - 1.0 / h[k]
        q[k + 1, j] = 1.0 / h[k]
        r[j, j] = (h[k - 1] + h[k]) / 3.0
        if j + 1 < n - 2:
            r[j, j + 1] = h[k] / 6.0
            r[j + 1, j] = h[k] / 6.0
    return q, r


class _PenalizedSpline:
    """Demmler-Reinsch decomposition of one (x, y, w) problem, reusable across penalties."""

    def __init__(self, x: np.ndarray, y: np.ndarray, weights: np.ndarray):
        self.x = x
        self.y = y
        self.w = weights
        q, r = _difference_matrices(x)
        w_inv = 1.0 / weights
        b = q.T @ (w_inv[:, None] * q)
        # mu >= 0; eigenvectors are R-orthonormal.
        mu, vec = eigh(b, r)
        self.mu = np.maximum(mu, 0.0)
        self.vec = vec
        self.qty = q.T @ y
        self.q = q
        self.w_inv = w_inv

    def fit(self, penalty: float) -> tuple[np.ndarray, float]:
        """Fitted values and effective dof tr(S) for one penalty."""
        n = self.x.size
        if penalty == 0.0:
            return self.y.copy(), float(n)
        inv_s = 1.0 / penalty
        # t = s/(1 + s*mu) computed as 1/(mu + 1/s); stable as s -> infinity.
        t = 1.0 / (self.mu + inv_s)
        gamma_scaled = self.vec @ (t * (self.vec.T @ self.qty))
        g = self.y - self.w_inv * (self.q @ gamma_scaled)
        dof = 2.0 + float(np.sum(inv_s / (inv_s + self.mu)))
        return g, dof

    def gcv_score(self, penalty: float) -> tuple[float, np.ndarray, float]:
        g, dof = self.fit(penalty)
        n = self.x.size
        denom = (1.0 - dof / n) ** 2
        if denom <= 0.0:
            return math.inf, g, dof
        wrss = float(np.sum(self.w * (self.y - g) ** 2))
        return (wrss / n) / denom, g, dof


def fit_natural_smoothing_spline(
    x: np.ndarray,
    y: np.ndarray,
    weights: np.ndarray | None = None,
    penalty: float | None = None,
) -> SmoothedCurve:
    """Fit a weighted natural cubic smoothing spline.

    penalty = 0 interpolates, penalty > 0 is used as given, penalty = None
    selects it by GCV with the one-standard-error rule.  Weights default to 1
    and are normalized to mean 1, so the penalty scale is per unit weight.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise InvalidParameterError("x and y must be 1-d arrays of equal length")
    if x.size < 4:
        raise InvalidParameterError("smoothing spline needs at least 4 points")
    if np.any(np.diff(x) <= 0.0):
        raise InvalidParameterError("x must be strictly increasing (duplicates not allowed)")
    if weights is None:
        w = np.ones_like(y)
    else:
        w = np.asarray(weights, dtype=float)
        if w.shape != y.shape or np.any(w <= 0.0) or not np.all(np.isfinite(w)):
            raise InvalidParameterError("weights must be finite, positive, same length as y")
        w = w / np.mean(w)
    if penalty is not None and penalty < 0.0:
        raise InvalidParameterError("penalty must be >= 0")

    if penalty == 0.0:
        return SmoothedCurve(x=x, fitted=y.copy(), penalty=0.0, dof=float(x.size))

    problem = _PenalizedSpline(x, y, w)
    if penalty is not None:
        g, dof = problem.fit(penalty)
        return SmoothedCurve(x=x, fitted=g, penalty=penalty, dof=dof)

    mu_pos = problem.mu[problem.mu > 0.0]
    if mu_pos.size == 0:
        # No curvature modes resolvable: any penalty yields the same fit.
        g, dof = problem.fit(1.0)
        return SmoothedCurve(x=x, fitted=g, penalty=1.0, dof=dof)
    lo = math.log10(1.0 / mu_pos.max()) - _SCAN_DECADES_PAD
    hi = math.log10(1.0 / mu_pos.min()) + _SCAN_DECADES_PAD
    n = x.size
    candidates = np.logspace(lo, hi, _SCAN_POINTS)
    scores = []
    for s in candidates:
        score, _, dof = problem.gcv_score(float(s))
        # Require at least ~2 residual dof so the GCV denominator is meaningful.
        if math.isfinite(score) and dof <= n - 1.5:
            scores.append((float(s), score))
    if not scores:
        raise InvalidParameterError("GCV scan found no admissible penalty")
    best = min(score for _, score in scores)
    tolerance = (1.0 + math.sqrt(2.0 / n)) * best
    chosen = max(s for s, score in scores if score <= tolerance)
    g, dof = problem.fit(chosen)
    return SmoothedCurve(x=x, fitted=g, penalty=chosen, dof=dof)
