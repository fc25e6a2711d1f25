"""Closed-form bound-state energies in the spin and pseudospin limits.

Both limits lead to the same algebraic problem.  Write P for the distance of
the energy from the edge where the 1/r coupling is evaluated
(P = m0 + E - C_s for spin, P = m0 - E + C_ps for pseudospin) and W for the
width of the bound-state window (2 m0 - C_s, resp. 2 m0 + C_ps).  With
K = b (C_s - 2 m0), resp. b (C_ps + 2 m0), the quantization condition

    (q P + K) / (2 sqrt(P (W - P))) = n + 1/2 + nu

squares to a quadratic in P whose leading coefficient 4 D^2 + q^2 is
strictly positive, D = n + 1/2 + nu.  The distance to the other edge,
Q = W - P, obeys a quadratic with the same leading coefficient,

    a Q^2 - (4 D^2 W + 2 q (q W + K)) Q + (q W + K)^2 = 0,

and is solved separately so that weakly bound levels (Q or P tiny) keep
full relative accuracy in eps^2 = P Q.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .model import (
    EnergyDiagnostics,
    ModelParams,
    NoBoundStateError,
    NoRealSolutionError,
    StateLabel,
    Symmetry,
    classify,
    diagnostics,
    nu_squared,
)

__all__ = [
    "Branch",
    "EnergyLevel",
    "solve_energy",
    "solve_energy_spin",
    "solve_energy_pspin",
    "solve_energy_constant_mass",
    "energy_equation_sides",
    "nonrelativistic_limit",
    "mirror_map",
]

RESIDUAL_TOL = 1e-9


class Branch(str, enum.Enum):
    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class EnergyLevel:
    energy: float
    diagnostics: EnergyDiagnostics
    branch: Branch
    quantization_residual: float
    state: StateLabel
    params: ModelParams

    @property
    def nu(self) -> float:
        return self.diagnostics.nu

    @property
    def eps(self) -> float:
        return self.diagnostics.eps

    @property
    def label(self) -> str:
        return self.state.spectro


def _window(params: ModelParams, symmetry: Symmetry) -> tuple[float, float]:
    m0, c = params.m0, params.c_sym
    if symmetry is Symmetry.SPIN:
        return 2.0 * m0 - c, params.b * (c - 2.0 * m0)
    return 2.0 * m0 + c, params.b * (c + 2.0 * m0)


def _energy_from_p(params: ModelParams, p: float, symmetry: Symmetry) -> float:
    if symmetry is Symmetry.SPIN:
        return p + params.c_sym - params.m0
    return params.m0 + params.c_sym - p


def _quadratic_roots(a: float, b: float, c: float) -> tuple[float, float] | None:
    """Real roots of a x^2 + b x + c (a > 0), smaller first, cancellation-free."""
    disc = b * b - 4.0 * a * c
    if disc < 0:
        return None
    s = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    if s == 0.0:
        return 0.0, 0.0
    r1, r2 = s / a, c / s
    return (r1, r2) if r1 <= r2 else (r2, r1)


def _edge_diagnostics(params: ModelParams, state: StateLabel, p: float, q_edge: float) -> EnergyDiagnostics:
    nsq = nu_squared(params, state.kappa, state.symmetry)
    _, k = _window(params, state.symmetry)
    hc = params.hbar_c
    eps_sq = p * q_edge / hc**2
    return EnergyDiagnostics(
        lambda_sq=nsq - 0.25,
        nu_sq=nsq,
        nu=math.sqrt(nsq),
        delta_sq=-(params.q * p + k) / hc,
        eps_sq=eps_sq,
        eps=math.sqrt(eps_sq) if eps_sq > 0 else math.nan,
    )


def _level(params, state, energy, branch, require_attractive, edges=None) -> EnergyLevel:
    diag = diagnostics(params, state, energy) if edges is None else _edge_diagnostics(params, state, *edges)
    target = state.n + 0.5 + diag.nu
    lhs = diag.quantization_lhs()
    if not require_attractive:
        lhs = abs(lhs)
    residual = abs(lhs - target)
    if not residual <= RESIDUAL_TOL * max(1.0, target):
        raise ArithmeticError(
            f"energy {energy!r} fails re-substitution into the quantization condition "
            f"(residual {residual:.3e})"
        )
    return EnergyLevel(energy, diag, branch, residual, state, params)


def solve_energy(
    params: ModelParams, state: StateLabel, *, require_attractive: bool = True
) -> EnergyLevel:
    """Bound-state energy for ``state`` in its symmetry limit.

    The physical root is the one continuously connected to +m0 (spin) or
    -m0 (pseudospin) as the couplings vanish, i.e. the largest P among the
    roots that satisfy eps^2 > 0 and, when ``require_attractive`` is set,
    -delta^2 > 0.  Clearing ``require_attractive`` accepts roots of the
    squared energy equation whose Coulomb term has the repulsive sign; this
    is what the spin <-> pseudospin parameter mapping produces, because it
    flips the sign of q.
    """
    sym = state.symmetry
    nsq = nu_squared(params, state.kappa, sym)
    if not nsq > 0:
        raise NoRealSolutionError(
            f"nu^2 = {nsq:.6g} <= 0 for {state.spectro}: no regular solution at the origin"
        )
    d = state.n + 0.5 + math.sqrt(nsq)
    width, k = _window(params, sym)
    q = params.q
    if not width > 0:
        raise NoBoundStateError(
            f"empty bound-state window (width {width:.6g}): eps^2 > 0 cannot hold", "eps^2>0"
        )
    roots = _quadratic_roots(4.0 * d * d + q * q, 2.0 * q * k - 4.0 * d * d * width, k * k)
    if roots is None:
        raise NoBoundStateError(
            f"energy equation for {state.spectro} has no real root", "eps^2>0"
        )
    in_window = [p for p in roots if 0.0 < p < width]
    if not in_window:
        raise NoBoundStateError(
            f"no root of the energy equation for {state.spectro} lies inside the "
            f"bound-state window: eps^2 > 0 fails",
            "eps^2>0",
        )
    if require_attractive:
        candidates = [p for p in in_window if q * p + k > 0]
        if not candidates:
            raise NoBoundStateError(
                f"Coulomb term is repulsive at every root for {state.spectro}: -delta^2 > 0 fails",
                "-delta^2>0",
            )
    else:
        candidates = in_window
    p = max(candidates)
    upper_p = p == roots[1]
    a = 4.0 * d * d + q * q
    s0 = q * width + k
    q_roots = _quadratic_roots(a, -(4.0 * d * d * width + 2.0 * q * s0), s0 * s0)
    # Q = W - P reverses the order of the roots
    q_edge = (q_roots[0] if upper_p else q_roots[1]) if q_roots is not None else width - p
    # larger P is the larger energy in the spin limit, the smaller one in the p-spin limit
    if sym is Symmetry.SPIN:
        branch = Branch.UPPER if upper_p else Branch.LOWER
        energy = params.m0 - q_edge if q_edge < p else _energy_from_p(params, p, sym)
    else:
        branch = Branch.LOWER if upper_p else Branch.UPPER
        energy = q_edge - params.m0 if q_edge < p else _energy_from_p(params, p, sym)
    return _level(params, state, energy, branch, require_attractive, (p, q_edge))


def solve_energy_spin(
    params: ModelParams, n: int, kappa: int, *, require_attractive: bool = True
) -> EnergyLevel:
    return solve_energy(params, StateLabel(n, kappa, Symmetry.SPIN),
                        require_attractive=require_attractive)


def solve_energy_pspin(
    params: ModelParams, n: int, kappa: int, *, require_attractive: bool = True
) -> EnergyLevel:
    return solve_energy(params, StateLabel(n, kappa, Symmetry.PSPIN),
                        require_attractive=require_attractive)


def solve_energy_constant_mass(
    params: ModelParams, n: int, kappa: int, symmetry: Symmetry | str
) -> EnergyLevel:
    """Constant-mass (b = 0) energy from the linear closed form.

    With b = 0 the factor m0 + E - C_s (resp. m0 - E + C_ps) cancels and the
    energy follows from 4 D^2 (m0 -/+ E) = q^2 (m0 +/- E -/+ C).  The
    denominator is n + kappa + T + 1 (spin) or n + kappa + T (pseudospin)
    while kappa + T +/- 1/2 > 0, and n + 1/2 + |kappa + T +/- 1/2| otherwise.
    """
    if params.b != 0:
        raise ValueError(f"constant-mass solution requires b = 0, got b = {params.b}")
    sym = Symmetry(symmetry)
    state = StateLabel(n, kappa, sym)
    t = params.tensor
    m0, q, c = params.m0, params.q, params.c_sym
    if sym is Symmetry.SPIN:
        shift = kappa + t + 0.5
        d = n + kappa + t + 1.0 if shift > 0 else n - kappa - t
    else:
        shift = kappa + t - 0.5
        d = n + kappa + t if shift > 0 else n + 1.0 - kappa - t
    if shift == 0:
        raise NoRealSolutionError(f"nu = 0 for {state.spectro}")
    four_d2 = 4.0 * d * d
    if sym is Symmetry.SPIN:
        energy = (four_d2 * m0 - q * q * (m0 - c)) / (four_d2 + q * q)
        branch = Branch.UPPER
    else:
        energy = (q * q * (m0 + c) - four_d2 * m0) / (four_d2 + q * q)
        branch = Branch.LOWER
    cond = diagnostics(params, state, energy).failed_condition()
    if cond is not None:
        raise NoBoundStateError(f"constant-mass level {state.spectro} is unbound: {cond} fails", cond)
    return _level(params, state, energy, branch, True)


def energy_equation_sides(params: ModelParams, state: StateLabel, energy: float) -> tuple[float, float]:
    """Left and right sides of the (squared) energy equation at ``energy``."""
    m0, b, q, c = params.m0, params.b, params.q, params.c_sym
    d = state.n + 0.5 + math.sqrt(nu_squared(params, state.kappa, state.symmetry))
    if state.symmetry is Symmetry.SPIN:
        lhs = (m0 - energy) * (m0 + energy - c)
        num = q * (m0 + energy - c) + b * (c - 2.0 * m0)
    else:
        lhs = (m0 + energy) * (m0 - energy + c)
        num = q * (m0 - energy + c) + b * (c + 2.0 * m0)
    return lhs, 0.25 * (num / d) ** 2


def nonrelativistic_limit(m0: float, q: float, n: int, l: int) -> float:
    """Binding energy -m0 q^2 / (2 (n + l + 1)^2), hbar = c = 1.

    This is the leading term of the constant-mass spin energy at small q,
    E - m0 = -2 m0 q^2 / (4 (n+l+1)^2 + q^2).
    """
    if n < 0 or l < 0:
        raise ValueError("n and l must be non-negative")
    if not m0 > 0:
        raise ValueError("m0 must be positive")
    return -m0 * q * q / (2.0 * (n + l + 1) ** 2)


def mirror_map(params: ModelParams, state: StateLabel) -> tuple[ModelParams, StateLabel]:
    """Map a state onto its image in the other symmetry limit.

    q -> -q and c_sym -> -c_sym; pseudospin kappa becomes spin kappa - 1 and
    the reverse, so applying the map twice is the identity.  Energies of the
    image are the negatives of the original ones (with the Coulomb sign
    check relaxed, see :func:`solve_energy`).
    """
    if state.symmetry is Symmetry.PSPIN:
        kappa = state.kappa - 1
    else:
        kappa = state.kappa + 1
    if kappa == 0:
        raise ValueError(
            f"{state.symmetry.value} kappa = {state.kappa} maps onto kappa = 0, which has no image"
        )
    new_params = params.with_(q=-params.q, c_sym=-params.c_sym)
    return new_params, StateLabel(state.n, kappa, state.symmetry.other)


def describe(level: EnergyLevel) -> dict:
    cls = classify(level.state.kappa, level.state.symmetry)
    d = level.diagnostics
    return {
        "symmetry": level.state.symmetry.value,
        "n": level.state.n,
        "kappa": level.state.kappa,
        "label": level.label,
        "l": cls.l,
        "j": str(cls.j),
        "l_tilde": cls.l_tilde,
        "energy": level.energy,
        "branch": level.branch.value,
        "nu": d.nu,
        "lambda_sq": d.lambda_sq,
        "delta_sq": d.delta_sq,
        "eps": d.eps,
        "quantization_residual": level.quantization_residual,
    }
