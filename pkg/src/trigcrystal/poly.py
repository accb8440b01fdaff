"""Random trigonometric polynomials: representation, Gaussian sampling,
evaluation, and exact differentiation.

The central object is the finite series

    F(x) = sum_{n=0}^{N} a_n cos(n x) + b_n sin(n x),

with real coefficients.  Ensembles draw the coefficients as independent
centered Gaussians with per-mode standard deviations sigma_n; repeated
differentiation reweights mode n by a factor n per derivative, which is
why the zero statistics of high derivatives are dominated by the top
mode.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TrigPolynomial",
    "VarianceProfile",
    "EnsembleSpec",
    "sample",
    "evaluate",
    "evaluate_rescaled",
    "differentiate",
    "derivative_rescaled",
]


def _frozen_array(values, name):
    arr = np.array(values, dtype=float, copy=True)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TrigPolynomial:
    """Degree-N cosine/sine series with coefficient vectors a_0..a_N, b_0..b_N.

    b_0 must be zero (sin(0*x) contributes nothing).  Instances are immutable
    and safe to share across threads.
    """

    degree: int
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        a = _frozen_array(self.cos_coeffs, "cos_coeffs")
        b = _frozen_array(self.sin_coeffs, "sin_coeffs")
        if len(a) != self.degree + 1 or len(b) != self.degree + 1:
            raise ValueError("coefficient vectors must have length degree + 1")
        if b[0] != 0.0:
            raise ValueError("sin coefficient b_0 must be zero")
        object.__setattr__(self, "cos_coeffs", a)
        object.__setattr__(self, "sin_coeffs", b)

    @property
    def is_zero(self) -> bool:
        return not (np.any(self.cos_coeffs) or np.any(self.sin_coeffs))

    def to_json(self) -> dict:
        """JSON-serializable fixture form {"degree": N, "a": [...], "b": [...]}."""
        return {
            "degree": self.degree,
            "a": self.cos_coeffs.tolist(),
            "b": self.sin_coeffs.tolist(),
        }

    @classmethod
    def from_json(cls, obj) -> "TrigPolynomial":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(degree=int(obj["degree"]), cos_coeffs=obj["a"], sin_coeffs=obj["b"])


@dataclass(frozen=True)
class VarianceProfile:
    """Per-mode standard deviations sigma_0..sigma_N of the coefficient Gaussians.

    Stores standard deviations, not variances: coefficient n has variance
    sigma_n**2.  At least one sigma_n with n >= 1 must be positive, otherwise
    the polynomial is constant and zero statistics are undefined.
    """

    sigmas: np.ndarray

    def __post_init__(self):
        s = _frozen_array(self.sigmas, "sigmas")
        if len(s) < 2:
            raise ValueError("profile needs at least modes 0 and 1")
        if np.any(s < 0.0):
            raise ValueError("standard deviations must be non-negative")
        if not np.any(s[1:] > 0.0):
            raise ValueError("at least one sigma_n with n >= 1 must be positive")
        object.__setattr__(self, "sigmas", s)

    @property
    def degree(self) -> int:
        return len(self.sigmas) - 1

    @classmethod
    def equal(cls, degree: int, sigma: float = 1.0) -> "VarianceProfile":
        """All modes share the same standard deviation."""
        return cls(np.full(degree + 1, float(sigma)))

    @classmethod
    def derivative(cls, degree: int, order: int, sigma: float = 1.0) -> "VarianceProfile":
        """Profile of the order-th derivative of an equal-variance polynomial.

        Mode n is weighted by n**order.  The stored values are normalized to
        (n/N)**order so that arbitrarily high orders stay inside the floating
        range; all zero statistics are invariant under that overall rescaling.
        """
        if order < 0:
            raise ValueError("order must be non-negative")
        if degree < 1:
            raise ValueError("derivative profile needs degree >= 1")
        n = np.arange(degree + 1, dtype=float)
        return cls(float(sigma) * (n / degree) ** order)


@dataclass(frozen=True)
class EnsembleSpec:
    """Full description of a reproducible Monte Carlo ensemble.

    Two runs with equal EnsembleSpec produce bit-identical realizations, no
    matter how the realizations are partitioned across workers: realization i
    uses its own substream keyed by (master_seed, i).
    """

    degree: int
    derivative_order: int
    profile: VarianceProfile
    realizations: int
    master_seed: int

    def __post_init__(self):
        if self.profile.degree != self.degree:
            raise ValueError("profile degree does not match spec degree")
        if self.derivative_order < 0:
            raise ValueError("derivative_order must be non-negative")
        if self.realizations < 1:
            raise ValueError("realizations must be at least 1")

    @classmethod
    def equal_variance(
        cls,
        degree: int,
        derivative_order: int,
        realizations: int,
        master_seed: int,
        sigma: float = 1.0,
    ) -> "EnsembleSpec":
        return cls(
            degree=degree,
            derivative_order=derivative_order,
            profile=VarianceProfile.equal(degree, sigma),
            realizations=realizations,
            master_seed=master_seed,
        )

    def summary(self) -> dict:
        return {
            "degree": self.degree,
            "derivative_order": self.derivative_order,
            "realizations": self.realizations,
            "master_seed": self.master_seed,
        }


def sample(spec: EnsembleSpec, index: int) -> TrigPolynomial:
    """Draw realization `index` of the ensemble.

    Coefficients are independent Gaussian(0, sigma_n**2), generated by
    numpy's PCG64 ziggurat normal sampler on a SeedSequence substream
    spawned as (master_seed, index).  The draw is a pure function of
    (spec, index).
    """
    if not 0 <= index < spec.realizations:
        raise IndexError(f"realization index {index} outside [0, {spec.realizations})")
    seq = np.random.SeedSequence(entropy=spec.master_seed, spawn_key=(index,))
    rng = np.random.default_rng(seq)
    z = rng.standard_normal(2 * (spec.degree + 1))
    a = z[: spec.degree + 1] * spec.profile.sigmas
    b = z[spec.degree + 1 :] * spec.profile.sigmas
    b[0] = 0.0
    return TrigPolynomial(degree=spec.degree, cos_coeffs=a, sin_coeffs=b)


def evaluate(f: TrigPolynomial, x):
    """Evaluate F at scalar or array x by direct summation."""
    xv = np.asarray(x, dtype=float)
    n = np.arange(f.degree + 1, dtype=float)
    ang = np.multiply.outer(xv, n)
    vals = np.cos(ang) @ f.cos_coeffs + np.sin(ang) @ f.sin_coeffs
    if np.isscalar(x) or xv.ndim == 0:
        return float(vals)
    return vals


def evaluate_rescaled(f: TrigPolynomial, x_rescaled):
    """Evaluate F(pi * x / N): in this coordinate the mean spacing of the
    2N zeros per period is exactly 1."""
    if f.degree < 1:
        raise ValueError("rescaling needs degree >= 1")
    return evaluate(f, np.asarray(x_rescaled, dtype=float) * (np.pi / f.degree))


def differentiate(f: TrigPolynomial, times: int = 1) -> TrigPolynomial:
    """Exact derivative, applied `times` times.

    One application maps (a_n, b_n) -> (n*b_n, -n*a_n); four applications
    give (n^4*a_n, n^4*b_n).  The constant term is annihilated.
    """
    if times < 1:
        raise ValueError("times must be at least 1")
    n = np.arange(f.degree + 1, dtype=float)
    a = f.cos_coeffs.copy()
    b = f.sin_coeffs.copy()
    for _ in range(times):
        a, b = n * b, -n * a
    return TrigPolynomial(degree=f.degree, cos_coeffs=a, sin_coeffs=b)


def derivative_rescaled(f: TrigPolynomial, times: int) -> TrigPolynomial:
    """The `times`-th derivative scaled by N**(-times).

    Same zero set as differentiate(f, times); the per-mode weight is
    computed as (n/N)**times so very high orders cannot overflow.  Used by
    the ensemble pipeline, where all statistics are scale invariant.
    """
    if times < 0:
        raise ValueError("times must be non-negative")
    if times == 0:
        return f
    if f.degree < 1:
        raise ValueError("rescaled derivative needs degree >= 1")
    n = np.arange(f.degree + 1, dtype=float)
    w = (n / f.degree) ** times
    a, b = f.cos_coeffs, f.sin_coeffs
    rot = times % 4
    if rot == 0:
        a2, b2 = w * a, w * b
    elif rot == 1:
        a2, b2 = w * b, -w * a
    elif rot == 2:
        a2, b2 = -w * a, -w * b
    else:
        a2, b2 = -w * b, w * a
    return TrigPolynomial(degree=f.degree, cos_coeffs=a2, sin_coeffs=b2)
