"""Numerical cross-checks that do not use the closed-form solutions.

``shoot_eigenvalue`` integrates the second-order radial equation

    F'' = [lambda^2 / r^2 - A(E) / r + eps^2(E)] F

whose coefficients depend on the trial energy, and locates energies where
the outward and inward Numerov solutions join smoothly.  With r = e^x and
F = e^{x/2} y the equation becomes y'' = (lambda^2 + 1/4 - A r + eps^2 r^2) y,
which has no first-derivative term and a uniform grid in x resolves both
the origin and the exponential tail.

``quadrature`` is an adaptive composite Gauss-Legendre rule on [0, R] with R
pushed out until the integrand has decayed below the requested tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba
import numpy as np

from .model import ModelParams, NoBoundStateError, StateLabel, Symmetry

__all__ = [
    "ShootingConfig",
    "ShootingResult",
    "NoBoundStateInBracketError",
    "WrongLevelError",
    "AccuracyNotReachedError",
    "radial_coefficients",
    "shoot_eigenvalue",
    "shoot",
    "quadrature",
]


class NoBoundStateInBracketError(NoBoundStateError):
    def __init__(self, message: str):
        super().__init__(message, "bracket")


class WrongLevelError(RuntimeError):
    pass


class AccuracyNotReachedError(ArithmeticError):
    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


@dataclass(frozen=True)
class ShootingConfig:
    """Numerical settings of the shooting solver.

    ``r_min`` defaults to 1e-6 hbar_c / m0 and ``energy_bracket`` to the open
    bound-state window of the symmetry limit (both resolved per problem).
    ``tol`` is relative to m0.
    """

    r_min: float | None = None
    r_max_factor: float = 30.0
    grid_points: int = 20000
    energy_bracket: tuple[float, float] | None = None
    tol: float = 1e-10
    scan_points: int = 1000
    edge_margin: float = 1e-5

    def __post_init__(self):
        if self.r_min is not None and not self.r_min > 0:
            raise ValueError("r_min must be positive")
        if self.grid_points < 1000:
            raise ValueError("grid_points must be at least 1000")
        if self.energy_bracket is not None and not self.energy_bracket[0] < self.energy_bracket[1]:
            raise ValueError("energy bracket must satisfy E_lo < E_hi")
        if self.scan_points < 2:
            raise ValueError("scan_points must be at least 2")


@dataclass(frozen=True)
class ShootingResult:
    energy: float
    nodes: int
    roots: list[tuple[float, int]] = field(default_factory=list)


def radial_coefficients(params: ModelParams, state: StateLabel, energy: float) -> tuple[float, float, float]:
    """(lambda^2, A, eps^2) of the radial equation at a trial energy.

    Spin limit (large component F):
        lambda^2 = (kappa+T)(kappa+T+1) + b(b-q)
        A        = [q(m0+E-C_s) + b(C_s-2m0)] / hbar_c
        eps^2    = (m0-E)(m0+E-C_s) / hbar_c^2
    Pseudospin limit (small component G):
        lambda^2 = (kappa+T)(kappa+T-1) + b(b+q)
        A        = [q(m0-E+C_ps) + b(C_ps+2m0)] / hbar_c
        eps^2    = (m0+E)(m0-E+C_ps) / hbar_c^2
    """
    m0, b, q, c, t, hc = params.m0, params.b, params.q, params.c_sym, params.tensor, params.hbar_c
    k = state.kappa + t
    if state.symmetry is Symmetry.SPIN:
        lam2 = k * (k + 1.0) + b * (b - q)
        a = (q * (m0 + energy - c) + b * (c - 2.0 * m0)) / hc
        eps2 = (m0 - energy) * (m0 + energy - c) / hc**2
    else:
        lam2 = k * (k - 1.0) + b * (b + q)
        a = (q * (m0 - energy + c) + b * (c + 2.0 * m0)) / hc
        eps2 = (m0 + energy) * (m0 - energy + c) / hc**2
    return lam2, a, eps2


@numba.njit(cache=True)
def _numerov_match(nu2, a, eps2, x0, h, npts, m):
    """Numerov matching function and node count for one trial energy.

    Returns (mismatch, nodes).  The mismatch is the Numerov three-point
    residual at grid index ``m`` of the outward solution joined to the
    inward one, scaled by positive magnitudes so only its sign and zeros
    carry meaning.
    """
    nu = math.sqrt(nu2)
    big = 1e250
    hh = h * h / 12.0

    # outward: y ~ r^nu (1 + c1 r) near the origin
    c1 = -a / (2.0 * nu + 1.0)
    r0 = math.exp(x0)
    r1 = math.exp(x0 + h)
    y_prev = 1.0 + c1 * r0
    y_cur = math.exp(nu * h) * (1.0 + c1 * r1)
    t_prev = hh * (nu2 - a * r0 + eps2 * r0 * r0)
    t_cur = hh * (nu2 - a * r1 + eps2 * r1 * r1)
    nodes = 0
    growth = math.exp(h)
    r = r1
    for i in range(1, m):
        r *= growth
        t_next = hh * (nu2 - a * r + eps2 * r * r)
        y_next = ((2.0 + 10.0 * t_cur) * y_cur - (1.0 - t_prev) * y_prev) / (1.0 - t_next)
        if y_next * y_cur < 0.0:
            nodes += 1
        y_prev, y_cur = y_cur, y_next
        t_prev, t_cur = t_cur, t_next
        if abs(y_cur) > big:
            y_prev /= big
            y_cur /= big
    o_m1, o_m = y_prev, y_cur

    # inward from y(r_max) = 0
    last = npts - 1
    rl = math.exp(x0 + last * h)
    rl1 = math.exp(x0 + (last - 1) * h)
    y_prev = 0.0
    y_cur = 1e-200
    t_prev = hh * (nu2 - a * rl + eps2 * rl * rl)
    t_cur = hh * (nu2 - a * rl1 + eps2 * rl1 * rl1)
    shrink = math.exp(-h)
    r = rl1
    for i in range(last - 1, m, -1):
        r *= shrink
        t_next = hh * (nu2 - a * r + eps2 * r * r)
        y_next = ((2.0 + 10.0 * t_cur) * y_cur - (1.0 - t_prev) * y_prev) / (1.0 - t_next)
        if y_next * y_cur < 0.0:
            nodes += 1
        y_prev, y_cur = y_cur, y_next
        t_prev, t_cur = t_cur, t_next
        if abs(y_cur) > big:
            y_prev /= big
            y_cur /= big
    i_m, i_p1 = y_cur, y_prev

    rm = math.exp(x0 + m * h)
    tm = hh * (nu2 - a * rm + eps2 * rm * rm)
    rm_1 = math.exp(x0 + (m - 1) * h)
    rm1 = math.exp(x0 + (m + 1) * h)
    tm_1 = hh * (nu2 - a * rm_1 + eps2 * rm_1 * rm_1)
    tm1 = hh * (nu2 - a * rm1 + eps2 * rm1 * rm1)
    scale_o = abs(o_m1) + abs(o_m)
    scale_i = abs(i_m) + abs(i_p1)
    mismatch = (
        (i_m / scale_i) * (1.0 - tm_1) * (o_m1 / scale_o)
        + (o_m / scale_o) * (1.0 - tm1) * (i_p1 / scale_i)
        - (2.0 + 10.0 * tm) * (o_m / scale_o) * (i_m / scale_i)
    )
    return mismatch, nodes


class _Shooter:
    def __init__(self, params: ModelParams, state: StateLabel, cfg: ShootingConfig):
        self.params = params
        self.state = state
        self.cfg = cfg
        self.r_min = cfg.r_min if cfg.r_min is not None else 1e-6 * params.hbar_c / params.m0
        lam2, _, _ = radial_coefficients(params, state, 0.0)
        self.nu2 = lam2 + 0.25
        if not self.nu2 > 0:
            raise NoBoundStateError(
                f"lambda^2 + 1/4 = {self.nu2:.6g} <= 0: no regular solution at the origin", "nu^2>0"
            )

    def window(self) -> tuple[float, float]:
        if self.cfg.energy_bracket is not None:
            return self.cfg.energy_bracket
        m0, c = self.params.m0, self.params.c_sym
        if self.state.symmetry is Symmetry.SPIN:
            lo, hi = c - m0, m0
        else:
            lo, hi = -m0, m0 + c
        if not lo < hi:
            raise NoBoundStateInBracketError("the bound-state window is empty")
        pad = self.cfg.edge_margin * (hi - lo)
        return lo + pad, hi - pad

    def evaluate(self, energy: float) -> tuple[float, int]:
        _, a, eps2 = radial_coefficients(self.params, self.state, energy)
        if not eps2 > 0:
            return math.nan, -1
        eps = math.sqrt(eps2)
        x0 = math.log(self.r_min)
        x1 = math.log(self.cfg.r_max_factor / eps)
        if not x1 > x0:
            return math.nan, -1
        npts = self.cfg.grid_points
        h = (x1 - x0) / (npts - 1)
        disc = a * a - 4.0 * eps2 * self.nu2
        if a > 0 and disc > 0:
            r_match = (a + math.sqrt(disc)) / (2.0 * eps2)
        else:
            r_match = 1.0 / eps
        m = int(round((math.log(r_match) - x0) / h))
        m = min(max(m, 2), npts - 3)
        return _numerov_match(self.nu2, a, eps2, x0, h, npts, m)

    def scan(self, target_nodes: int | None = None) -> list[tuple[float, int]]:
        """Bracket sign changes of the matching function and refine them.

        With ``target_nodes`` set, only brackets whose end-point node counts
        lie within one of the target are refined.
        """
        lo, hi = self.window()
        s = np.linspace(0.0, 1.0, self.cfg.scan_points)
        energies = lo + (hi - lo) * 0.5 * (1.0 - np.cos(np.pi * s))
        evaluated = [self.evaluate(float(e)) for e in energies]
        roots = []
        for k in range(len(energies) - 1):
            (f0, n0), (f1, n1) = evaluated[k], evaluated[k + 1]
            if math.isnan(f0) or math.isnan(f1):
                continue
            if target_nodes is not None and min(abs(n0 - target_nodes), abs(n1 - target_nodes)) > 1:
                continue
            if f0 == 0.0:
                roots.append(self._finish(float(energies[k])))
            elif f0 * f1 < 0.0:
                roots.append(self._bisect(float(energies[k]), float(energies[k + 1]), f0))
        return roots

    def _bisect(self, a: float, b: float, fa: float) -> tuple[float, int]:
        tol = self.cfg.tol * self.params.m0
        for _ in range(200):
            if b - a <= tol:
                break
            mid = 0.5 * (a + b)
            fm, _ = self.evaluate(mid)
            if fm == 0.0:
                a = b = mid
                break
            if (fm < 0.0) == (fa < 0.0):
                a, fa = mid, fm
            else:
                b = mid
        return self._finish(0.5 * (a + b))

    def _finish(self, energy: float) -> tuple[float, int]:
        return energy, self.evaluate(energy)[1]


def shoot(params: ModelParams, state: StateLabel, cfg: ShootingConfig | None = None) -> ShootingResult:
    """All eigenvalues in the bracket with ``state.n`` nodes; picks the physical branch.

    The physical root is the highest such energy in the spin limit and the
    lowest in the pseudospin limit (the levels that join continuously onto
    +m0 / -m0 as the couplings vanish).
    """
    cfg = cfg or ShootingConfig()
    shooter = _Shooter(params, state, cfg)
    roots = shooter.scan(state.n)
    if not roots:
        lo, hi = shooter.window()
        raise NoBoundStateInBracketError(
            f"matching function has no sign change in [{lo:.8g}, {hi:.8g}]"
        )
    matching = [(e, k) for e, k in roots if k == state.n]
    if not matching:
        found = sorted({k for _, k in roots})
        raise WrongLevelError(
            f"no eigenvalue with {state.n} nodes in the bracket (node counts found: {found})"
        )
    pick = max if state.symmetry is Symmetry.SPIN else min
    energy, nodes = pick(matching, key=lambda item: item[0])
    return ShootingResult(energy, nodes, roots)


def shoot_eigenvalue(params: ModelParams, state: StateLabel, cfg: ShootingConfig | None = None) -> float:
    return shoot(params, state, cfg).energy


# ---------------------------------------------------------------------------
# quadrature

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


def _call(f, x: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f(x), dtype=float)
    except TypeError:
        y = None
    if y is None or y.shape != x.shape:
        y = np.array([float(f(float(v))) for v in x])
    return y


def _gl_segment(f, a: float, b: float, order: int) -> float:
    nodes, weights = _gauss_legendre(order)
    half = 0.5 * (b - a)
    return half * float(np.dot(weights, _call(f, a + half * (nodes + 1.0))))


def _decay_radius(f, tol: float, start: float) -> float:
    """Smallest doubling radius R with |f| on [R, 4R] negligible at ``tol``."""
    r = start
    for _ in range(60):
        probe = np.linspace(r, 4.0 * r, 64)
        peak = float(np.max(np.abs(_call(f, probe))))
        if peak * 3.0 * r < 1e-3 * tol:
            return r
        r *= 2.0
    raise AccuracyNotReachedError("integrand does not decay", math.nan)


def quadrature(
    f,
    tol: float = 1e-10,
    *,
    r_max: float | None = None,
    scale: float = 1.0,
    order: int = 16,
    max_depth: int = 40,
) -> float:
    """Integral of ``f`` over [0, inf) to absolute accuracy ``tol``.

    ``f`` should accept numpy arrays.  ``scale`` is a characteristic length
    used as the first probe when searching for the cutoff radius; pass
    ``r_max`` to skip the search.
    """
    if r_max is None:
        r_max = _decay_radius(f, tol, max(scale, 1e-300))
    tail = abs(_gl_segment(f, r_max, 2.0 * r_max, order))

    total = 0.0
    worst = 0.0
    stack = [(0.0, r_max, _gl_segment(f, 0.0, r_max, order), 0)]
    while stack:
        a, b, whole, depth = stack.pop()
        mid = 0.5 * (a + b)
        left = _gl_segment(f, a, mid, order)
        right = _gl_segment(f, mid, b, order)
        err = abs(left + right - whole)
        budget = 0.1 * tol * (b - a) / r_max
        if err <= budget or err < 1e-15 * abs(left + right):
            total += left + right
        elif depth >= max_depth:
            total += left + right
            worst = max(worst, err)
        else:
            stack.append((a, mid, left, depth + 1))
            stack.append((mid, b, right, depth + 1))
    if worst > tol or tail > tol:
        raise AccuracyNotReachedError(
            f"quadrature did not reach tol={tol:g} (segment error {worst:.2e}, tail {tail:.2e})",
            total,
        )
    return total
