"""Physical parameters, quantum-number bookkeeping and derived diagnostics.

Units: every energy is expressed in the unit of ``m0`` (``m0`` is the rest
energy m0 c^2).  ``hbar_c`` converts energies to inverse lengths, so with the
default ``hbar_c = 1`` energies and inverse lengths coincide (fm^-1 in the
published tables).

The two symmetry limits share one constant ``c_sym``: it is ``C_s`` (the
constant V - S) in the spin limit and ``C_ps`` (the constant V + S) in the
pseudospin limit.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from fractions import Fraction

__all__ = [
    "Symmetry",
    "ModelParams",
    "StateLabel",
    "Classification",
    "EnergyDiagnostics",
    "NoBoundStateError",
    "NoRealSolutionError",
    "b_from_m1",
    "m1_from_b",
    "classify",
    "doublet_partner",
    "nu_squared",
    "diagnostics",
]

ORBITAL_LETTERS = "spdfghiklmnoqrtuv"


class Symmetry(str, enum.Enum):
    SPIN = "spin"
    PSPIN = "pspin"

    @property
    def other(self) -> "Symmetry":
        return Symmetry.PSPIN if self is Symmetry.SPIN else Symmetry.SPIN


class NoBoundStateError(ValueError):
    """No root of the energy equation satisfies the bound-state conditions.

    ``condition`` names the failed existence requirement
    (``"nu^2>0"``, ``"eps^2>0"`` or ``"-delta^2>0"``).
    """

    def __init__(self, message: str, condition: str):
        super().__init__(message)
        self.condition = condition


class NoRealSolutionError(NoBoundStateError):
    """nu^2 <= 0: the effective centrifugal term makes the problem fall to the centre."""

    def __init__(self, message: str):
        super().__init__(message, "nu^2>0")


@dataclass(frozen=True)
class ModelParams:
    """Inputs of the Coulomb + tensor + position-dependent mass model.

    The mass is M(r) c^2 = m0 + hbar_c * b / r, the Coulomb term is
    -hbar_c * q / r and the tensor potential is U(r) = -tensor / r.
    """

    m0: float = 5.0
    b: float = 0.0
    q: float = 1.0
    c_sym: float = 0.0
    tensor: float = 0.0
    hbar_c: float = 1.0

    def __post_init__(self):
        if not self.m0 > 0:
            raise ValueError(f"m0 must be positive, got {self.m0}")
        if not self.hbar_c > 0:
            raise ValueError(f"hbar_c must be positive, got {self.hbar_c}")
        for name in ("b", "q", "c_sym", "tensor"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def with_(self, **changes) -> "ModelParams":
        return replace(self, **changes)


def b_from_m1(m1: float, hbar_c: float = 1.0) -> float:
    """Dimensionless mass perturbation from m1 (given as m1 c^2 times a length)."""
    return m1 / hbar_c


def m1_from_b(b: float, hbar_c: float = 1.0) -> float:
    return b * hbar_c


@dataclass(frozen=True)
class StateLabel:
    n: int
    kappa: int
    symmetry: Symmetry = Symmetry.SPIN

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n}")
        if int(self.kappa) != self.kappa or self.kappa == 0:
            raise ValueError(f"kappa must be a nonzero integer, got {self.kappa}")
        object.__setattr__(self, "symmetry", Symmetry(self.symmetry))

    @property
    def spectro(self) -> str:
        return classify(self.kappa, self.symmetry).label(self.n)


@dataclass(frozen=True)
class Classification:
    l: int
    j: Fraction
    l_tilde: int
    letter: str

    def label(self, n: int) -> str:
        """Spectroscopic text such as ``1p3/2``."""
        return f"{n}{self.letter}{int(2 * self.j)}/2"


def classify(kappa: int, symmetry: Symmetry | str = Symmetry.SPIN) -> Classification:
    """Orbital, total and pseudo-orbital angular momenta for ``kappa``.

    kappa = -(l+1) for j = l + 1/2 and kappa = l for j = l - 1/2;
    the pseudo-orbital momentum obeys kappa = -l~ (kappa < 0) and
    kappa = l~ + 1 (kappa > 0).  Neither relation depends on the symmetry
    limit, which is accepted only so callers can pass a state through
    unchanged.
    """
    Symmetry(symmetry)
    if int(kappa) != kappa or kappa == 0:
        raise ValueError(f"kappa must be a nonzero integer, got {kappa}")
    kappa = int(kappa)
    if kappa < 0:
        l = -kappa - 1
        l_tilde = -kappa
    else:
        l = kappa
        l_tilde = kappa - 1
    j = Fraction(2 * abs(kappa) - 1, 2)
    letter = ORBITAL_LETTERS[l] if l < len(ORBITAL_LETTERS) else f"[l={l}]"
    return Classification(l=l, j=j, l_tilde=l_tilde, letter=letter)


def doublet_partner(kappa: int, symmetry: Symmetry | str) -> int:
    """The other member of the spin (same l) or pseudospin (same l~) doublet."""
    if kappa == 0:
        raise ValueError("kappa must be nonzero")
    if Symmetry(symmetry) is Symmetry.SPIN:
        return -kappa - 1
    return -kappa + 1


def nu_squared(params: ModelParams, kappa: int, symmetry: Symmetry | str) -> float:
    b, q, t = params.b, params.q, params.tensor
    if Symmetry(symmetry) is Symmetry.SPIN:
        return (kappa + t + 0.5) ** 2 + b * (b - q)
    return (kappa + t - 0.5) ** 2 + b * (b + q)


@dataclass(frozen=True)
class EnergyDiagnostics:
    """Quantities entering the effective radial equation at a trial energy.

    ``coupling`` is -delta^2 (the strength of the attractive 1/r term, in
    inverse length) and ``eps_sq`` is the squared decay constant.  ``nu`` and
    ``eps`` are NaN when their squares are not positive.
    """

    lambda_sq: float
    nu_sq: float
    nu: float
    delta_sq: float
    eps_sq: float
    eps: float

    @property
    def coupling(self) -> float:
        return -self.delta_sq

    @property
    def valid(self) -> bool:
        return self.nu_sq > 0 and self.eps_sq > 0 and self.delta_sq < 0

    def failed_condition(self) -> str | None:
        if not self.nu_sq > 0:
            return "nu^2>0"
        if not self.eps_sq > 0:
            return "eps^2>0"
        if not self.delta_sq < 0:
            return "-delta^2>0"
        return None

    def quantization_lhs(self) -> float:
        """-delta^2 / (2 eps); equals n + nu + 1/2 at an eigenvalue."""
        return -self.delta_sq / (2.0 * self.eps)


def _edge_distance(params: ModelParams, energy: float, symmetry: Symmetry) -> float:
    """m0 + E - C_s (spin) or m0 - E + C_ps (pseudospin)."""
    if symmetry is Symmetry.SPIN:
        return params.m0 + energy - params.c_sym
    return params.m0 - energy + params.c_sym


def _coulomb_numerator(params: ModelParams, energy: float, symmetry: Symmetry) -> float:
    """-delta^2 * hbar_c."""
    m0, b, q, c = params.m0, params.b, params.q, params.c_sym
    if symmetry is Symmetry.SPIN:
        return q * (m0 + energy - c) + b * (c - 2.0 * m0)
    return q * (m0 - energy + c) + b * (c + 2.0 * m0)


def diagnostics(params: ModelParams, state: StateLabel, energy: float) -> EnergyDiagnostics:
    sym = state.symmetry
    nsq = nu_squared(params, state.kappa, sym)
    hc = params.hbar_c
    if sym is Symmetry.SPIN:
        eps_sq = (params.m0 - energy) * _edge_distance(params, energy, sym) / hc**2
    else:
        eps_sq = (params.m0 + energy) * _edge_distance(params, energy, sym) / hc**2
    delta_sq = -_coulomb_numerator(params, energy, sym) / hc
    return EnergyDiagnostics(
        lambda_sq=nsq - 0.25,
        nu_sq=nsq,
        nu=math.sqrt(nsq) if nsq > 0 else math.nan,
        delta_sq=delta_sq,
        eps_sq=eps_sq,
        eps=math.sqrt(eps_sq) if eps_sq > 0 else math.nan,
    )
