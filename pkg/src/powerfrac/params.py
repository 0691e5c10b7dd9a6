"""Parameter bundles and function wrappers used by the fractional operators.

All function handles are expected to accept numpy arrays as well as scalars
(plain ufunc-style broadcasting); everything in this package evaluates on
batched node arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError

__all__ = [
    "PowerParams",
    "WeightFunction",
    "ScalarFunction",
    "QuadratureConfig",
    "unit_normalization",
]


def unit_normalization(alpha: float) -> float:
    """Default normalization, constant 1 (satisfies the endpoint conditions)."""
    return 1.0


@dataclass(frozen=True)
class PowerParams:
    """Operator parameter bundle: order alpha in [0, 1), kernel exponent beta > 0,
    power base p > 0, and the normalization function."""

    alpha: float
    beta: float
    p: float
    normalization: Callable[[float], float] = unit_normalization

    def __post_init__(self):
        if not 0.0 <= self.alpha < 1.0:
            raise DomainError(f"alpha must satisfy 0 <= alpha < 1, got {self.alpha}")
        if not self.beta > 0.0:
            raise DomainError(f"beta must be > 0, got {self.beta}")
        if not self.p > 0.0:
            raise DomainError(f"p must be > 0, got {self.p}")
        if not self.normalization(self.alpha) > 0.0:
            raise DomainError("normalization N(alpha) must be positive")

    @property
    def n_alpha(self) -> float:
        return self.normalization(self.alpha)

    @property
    def chi(self) -> float:
        """(1 - alpha) / N(alpha); multiplies the pointwise part of the integral."""
        return (1.0 - self.alpha) / self.n_alpha

    @property
    def phi(self) -> float:
        """alpha / N(alpha); multiplies the Riemann-Liouville part."""
        return self.alpha / self.n_alpha

    @property
    def mu(self) -> float:
        """alpha / (1 - alpha); scale inside the kernel argument."""
        return self.alpha / (1.0 - self.alpha)

    @property
    def ln_p(self) -> float:
        return math.log(self.p)


def _ones(t):
    return np.ones_like(np.asarray(t, dtype=float))


def _zeros(t):
    return np.zeros_like(np.asarray(t, dtype=float))


@dataclass(frozen=True)
class WeightFunction:
    """Positive weight omega with its derivative omega'.

    Positivity is checked on the actual evaluation nodes by the operators;
    a non-positive sample raises DomainError there.
    """

    omega: Callable
    omega_prime: Callable
    label: str = "custom"

    @classmethod
    def one(cls) -> "WeightFunction":
        return cls(_ones, _zeros, label="one")

    @classmethod
    def exp_decay(cls, c: float = 1.0) -> "WeightFunction":
        """omega(t) = exp(-c t)."""
        return cls(
            lambda t, c=c: np.exp(-c * np.asarray(t, dtype=float)),
            lambda t, c=c: -c * np.exp(-c * np.asarray(t, dtype=float)),
            label=f"exp(-{c}*t)",
        )

    @classmethod
    def one_plus_square(cls, c: float = 1.0) -> "WeightFunction":
        """omega(t) = 1 + c t^2 (positive on all of R for c >= 0)."""
        return cls(
            lambda t, c=c: 1.0 + c * np.asarray(t, dtype=float) ** 2,
            lambda t, c=c: 2.0 * c * np.asarray(t, dtype=float),
            label=f"1+{c}*t^2",
        )


@dataclass(frozen=True)
class ScalarFunction:
    """Real function of one real variable, optionally with an analytic derivative.

    When ``f_prime`` is absent the derivative falls back to a central finite
    difference with step max(1e-6, 1e-6*|t|); ``uses_fd_fallback`` flags this
    so results metadata can report it.
    """

    f: Callable
    f_prime: Optional[Callable] = None
    label: str = "f"
    registered: object = field(default=None, compare=False)

    @property
    def uses_fd_fallback(self) -> bool:
        return self.f_prime is None

    def value(self, t):
        return self.f(t)

    def derivative(self, t):
        if self.f_prime is not None:
            return self.f_prime(t)
        t = np.asarray(t, dtype=float)
        h = np.maximum(1e-6, 1e-6 * np.abs(t))
        return (self.f(t + h) - self.f(t - h)) / (2.0 * h)


@dataclass(frozen=True)
class QuadratureConfig:
    """Deterministic quadrature controls.

    ``panels`` composite panels of ``nodes_per_panel``-point Gauss-Legendre;
    panels are graded toward the kernel endpoint with exponent ``grading``.
    ``singularity_substitution`` enables the exact u = (t-tau)^beta change of
    variables that removes the integrable singularity of fractional orders
    below one.  ``interp_density`` is the tabulation density (points per unit
    length) used when iterated operators need a function representation
    between composition levels.
    """

    panels: int = 256
    nodes_per_panel: int = 8
    singularity_substitution: bool = True
    grading: float = 6.0
    interp_density: int = 2049

    def __post_init__(self):
        if self.panels < 1:
            raise DomainError(f"panels must be >= 1, got {self.panels}")
        if self.nodes_per_panel < 2:
            raise DomainError(f"nodes_per_panel must be >= 2, got {self.nodes_per_panel}")
        if self.grading < 1.0:
            raise DomainError(f"grading must be >= 1, got {self.grading}")
        if self.interp_density < 9:
            raise DomainError(f"interp_density must be >= 9, got {self.interp_density}")
