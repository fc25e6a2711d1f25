"""Normalized radial spinor components.

In the spin limit the large component is F(r) = N e^{-eps r} r^{nu+1/2}
L_n^{2 nu}(2 eps r); in the pseudospin limit the same form describes the
small component G.  The partner component follows from the first-order
Dirac equations and is not normalized separately.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, StateLabel, Symmetry
from .specfun import laguerre, log_factorial
from .spectrum import EnergyLevel

__all__ = [
    "Component",
    "RadialFunction",
    "SingularPointError",
    "norm_constant",
    "radial_function",
    "eval_primary",
    "eval_primary_derivative",
    "eval_secondary",
    "sample",
]


class Component(str, enum.Enum):
    UPPER_F = "F"
    LOWER_G = "G"


class SingularPointError(ZeroDivisionError):
    def __init__(self, r: float):
        super().__init__(f"partner-component denominator vanishes at r = {r!r}")
        self.r = r


@dataclass(frozen=True)
class RadialFunction:
    """Closed-form primary component N e^{-eps r} r^{nu+1/2} L_n^{2 nu}(2 eps r).

    ``level`` is the solved state the function belongs to; it is required
    only for the partner component, which depends on the energy.
    """

    n: int
    nu: float
    eps: float
    norm_const: float
    component: Component
    symmetry: Symmetry
    level: EnergyLevel | None = None

    @classmethod
    def from_quantum_numbers(cls, n: int, nu: float, eps: float,
                             symmetry: Symmetry = Symmetry.SPIN) -> "RadialFunction":
        comp = Component.UPPER_F if symmetry is Symmetry.SPIN else Component.LOWER_G
        return cls(n, nu, eps, norm_constant(n, nu, eps), comp, Symmetry(symmetry))


def norm_constant(n: int, nu: float, eps: float) -> float:
    """(2 eps)^{nu+1} sqrt(n! / (Gamma(n + 2 nu + 1) (2n + 2nu + 1))), evaluated in log space."""
    if not nu > 0:
        raise ValueError(f"nu must be positive, got {nu}")
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    log_n = 0.5 * (
        log_factorial(n) - math.lgamma(n + 2.0 * nu + 1.0) - math.log(2.0 * n + 2.0 * nu + 1.0)
    ) + (nu + 1.0) * math.log(2.0 * eps)
    return math.exp(log_n)


def radial_function(level: EnergyLevel) -> RadialFunction:
    """Primary (normalized) component for a solved level."""
    sym = level.state.symmetry
    comp = Component.UPPER_F if sym is Symmetry.SPIN else Component.LOWER_G
    n, nu, eps = level.state.n, level.diagnostics.nu, level.diagnostics.eps
    return RadialFunction(n, nu, eps, norm_constant(n, nu, eps), comp, sym, level)


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(~(r > 0)):
        raise ValueError("radial functions are evaluated at r > 0 only")
    return r


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def _envelope(rf: RadialFunction, r):
    return rf.norm_const * np.exp(-rf.eps * r) * r ** (rf.nu + 0.5)


def eval_primary(rf: RadialFunction, r):
    r = _check_r(r)
    x = 2.0 * rf.eps * r
    return _scalar_or_array(_envelope(rf, r) * laguerre(rf.n, 2.0 * rf.nu, x))


def eval_primary_derivative(rf: RadialFunction, r):
    """Analytic d/dr of the primary component (product rule, dL_n^a/dx = -L_{n-1}^{a+1})."""
    r = _check_r(r)
    eps, nu = rf.eps, rf.nu
    x = 2.0 * eps * r
    env = _envelope(rf, r)
    value = env * laguerre(rf.n, 2.0 * nu, x)
    return _scalar_or_array(
        (-eps + (nu + 0.5) / r) * value - 2.0 * eps * env * laguerre(rf.n - 1, 2.0 * nu + 1.0, x)
    )


def eval_secondary(rf: RadialFunction, params: ModelParams, state: StateLabel, r):
    """Partner component from the first-order Dirac equations.

    Spin limit:   G = hbar_c (F' + (kappa+T) F / r) / (m0 + hbar_c b / r + E - C_s)
    P-spin limit: F = hbar_c (G' - (kappa+T) G / r) / (m0 + hbar_c b / r - E + C_ps)
    """
    r = _check_r(r)
    if state.symmetry is not rf.symmetry:
        raise ValueError("state and radial function belong to different symmetry limits")
    if rf.level is None:
        raise ValueError("the partner component needs a radial function built from a solved level")
    energy = rf.level.energy
    hc = params.hbar_c
    kt = state.kappa + params.tensor
    if rf.symmetry is Symmetry.SPIN:
        denom = params.m0 + hc * params.b / r + energy - params.c_sym
        sign = 1.0
    else:
        denom = params.m0 + hc * params.b / r - energy + params.c_sym
        sign = -1.0
    bad = np.abs(denom) < 1e-12
    if np.any(bad):
        raise SingularPointError(float(np.atleast_1d(r)[np.argmax(np.atleast_1d(bad))]))
    primary = np.asarray(eval_primary(rf, r))
    deriv = np.asarray(eval_primary_derivative(rf, r))
    return _scalar_or_array(hc * (deriv + sign * kt / r * primary) / denom)


def sample(level: EnergyLevel, r_max: float | None = None, points: int = 200):
    """Uniform samples (r, F, G) of both components on (0, r_max]."""
    rf = radial_function(level)
    if r_max is None:
        r_max = (2.0 * rf.n + 2.0 * rf.nu + 12.0) / rf.eps
    r = np.linspace(r_max / points, r_max, points)
    primary = np.asarray(eval_primary(rf, r))
    secondary = np.asarray(eval_secondary(rf, level.params, level.state, r))
    if rf.symmetry is Symmetry.SPIN:
        return r, primary, secondary
    return r, secondary, primary
