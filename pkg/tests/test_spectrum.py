from __future__ import annotations

import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from diracpdm.model import (
    ModelParams,
    NoBoundStateError,
    NoRealSolutionError,
    StateLabel,
    Symmetry,
    classify,
    diagnostics,
)
from diracpdm.spectrum import (
    Branch,
    energy_equation_sides,
    mirror_map,
    nonrelativistic_limit,
    solve_energy,
    solve_energy_constant_mass,
    solve_energy_pspin,
    solve_energy_spin,
)

SPIN, PSPIN = Symmetry.SPIN, Symmetry.PSPIN


def unsquared(params, state):
    """Quantization condition -delta^2/(2 eps) - (n + 1/2 + nu) as a function of E."""
    def f(e):
        d = diagnostics(params, state, e)
        return d.quantization_lhs() - (state.n + 0.5 + d.nu)
    return f


# --- worked examples -------------------------------------------------------

def test_spin_ground_state_exact():
    assert solve_energy_spin(ModelParams(m0=5, q=1), 0, -1).energy == pytest.approx(3.0, abs=1e-13)


def test_spin_first_excited_exact():
    assert solve_energy_spin(ModelParams(m0=5, q=1), 1, -1).energy == pytest.approx(75 / 17, abs=1e-13)


def test_spin_with_mass_term_against_brentq():
    p = ModelParams(m0=5, q=1, b=0.2)
    state = StateLabel(0, -1, SPIN)
    e = solve_energy(p, state).energy
    ref = brentq(unsquared(p, state), 0.0, 5.0 - 1e-12, xtol=1e-14)
    assert e == pytest.approx(ref, abs=1e-11)
    # positive root of 3.56 E^2 + 6 E - 55 = 0
    assert e == pytest.approx((-6 + math.sqrt(36 + 4 * 3.56 * 55)) / (2 * 3.56), abs=1e-11)
    assert e == pytest.approx(3.17721, abs=1e-5)


@pytest.mark.parametrize(
    "b, c, t, n, kappa, expected",
    [(0, -1, 0, 1, -2, 4 - 576 / 65), (0, -1, 5, 0, -4, 4 - 36 / 5),
     (0.2, -1, 0, 1, -2, -4.80508), (0, -1.25, 5, 0, -4, -3.25)],
)
def test_pspin_examples(b, c, t, n, kappa, expected):
    level = solve_energy_pspin(ModelParams(m0=5, q=1, b=b, c_sym=c, tensor=t), n, kappa)
    assert level.energy == pytest.approx(expected, abs=1e-5)
    assert level.branch is Branch.LOWER


def test_rejected_root_is_other_edge():
    p = ModelParams(m0=5, q=1, b=0.2, c_sym=-1)
    state = StateLabel(1, -2, PSPIN)
    f = unsquared(p, state)
    other = brentq(f, 3.9, 4.0 - 1e-12, xtol=1e-14)
    assert other == pytest.approx(3.99447, abs=1e-5)
    assert solve_energy(p, state).energy == pytest.approx(-4.80508, abs=1e-5)


@pytest.mark.parametrize(
    "c, t, n, kappa, sym, expected",
    [(0, 0, 0, -1, SPIN, 3.0), (-1, 1, 1, -2, PSPIN, 4 - 324 / 37), (-1, 0, 1, 3, PSPIN, 4 - 576 / 65)],
)
def test_constant_mass_examples(c, t, n, kappa, sym, expected):
    level = solve_energy_constant_mass(ModelParams(m0=5, q=1, c_sym=c, tensor=t), n, kappa, sym)
    assert level.energy == pytest.approx(expected, abs=1e-12)


def test_constant_mass_requires_b_zero():
    with pytest.raises(ValueError):
        solve_energy_constant_mass(ModelParams(b=0.1), 0, -1, SPIN)


def test_mirror_example():
    p = ModelParams(m0=5, q=1, c_sym=-1)
    state = StateLabel(1, -2, PSPIN)
    mp, ms = mirror_map(p, state)
    assert (mp.q, mp.c_sym, ms.kappa, ms.symmetry) == (-1, 1, -3, SPIN)
    e = solve_energy(mp, ms, require_attractive=False).energy
    assert e == pytest.approx(4.86154, abs=1e-5)
    assert e == pytest.approx(-solve_energy(p, state).energy, abs=1e-12)


def test_mirror_involution():
    p = ModelParams(m0=5, q=0.7, b=0.3, c_sym=-1.2, tensor=2)
    state = StateLabel(2, 3, PSPIN)
    assert mirror_map(*mirror_map(p, state)) == (p, state)


def test_mirror_preserves_nu():
    from diracpdm.model import nu_squared
    p = ModelParams(b=0.3, q=0.8, tensor=1.5)
    mp, ms = mirror_map(p, StateLabel(0, -3, PSPIN))
    assert nu_squared(mp, ms.kappa, SPIN) == pytest.approx(nu_squared(p, -3, PSPIN), rel=1e-15)


def test_mirror_of_kappa_one_has_no_image():
    with pytest.raises(ValueError):
        mirror_map(ModelParams(), StateLabel(0, 1, PSPIN))


# --- errors ----------------------------------------------------------------

def test_nu_squared_nonpositive():
    with pytest.raises(NoRealSolutionError) as exc:
        solve_energy(ModelParams(b=0.5, q=1), StateLabel(0, -1, SPIN))
    assert exc.value.condition == "nu^2>0"


def test_empty_window():
    with pytest.raises(NoBoundStateError) as exc:
        solve_energy(ModelParams(m0=1, c_sym=2.5), StateLabel(0, -1, SPIN))
    assert exc.value.condition == "eps^2>0"


def test_repulsive_coulomb_unbound():
    with pytest.raises(NoBoundStateError):
        solve_energy(ModelParams(m0=5, q=-1), StateLabel(0, -1, SPIN))


# --- invariants --------------------------------------------------------------

param_draws = st.builds(
    lambda m0, b, q, cf, t: ModelParams(m0=m0, b=b, q=q, c_sym=cf * m0, tensor=t),
    st.floats(1, 10), st.floats(0, 0.6), st.floats(0.05, 3), st.floats(-0.9, 0.9), st.floats(0, 5),
)
states = st.builds(
    StateLabel, st.integers(0, 4), st.integers(-6, 6).filter(lambda k: k != 0), st.sampled_from(list(Symmetry)),
)


@settings(max_examples=400, deadline=None)
@given(param_draws, states)
def test_resubstitution(params, state):
    try:
        level = solve_energy(params, state)
    except NoBoundStateError:
        return
    e = level.energy
    lhs, rhs = energy_equation_sides(params, state, e)
    # the sides are evaluated at the rounded energy, which costs |d(lhs - rhs)/dE| * ulp(E)
    h = 1e-6 * params.m0
    slope = abs(
        (lambda s: s[0] - s[1])(energy_equation_sides(params, state, e + h))
        - (lambda s: s[0] - s[1])(energy_equation_sides(params, state, e - h))
    ) / (2 * h)
    rounding = 4 * slope * math.ulp(max(abs(e), params.m0, abs(params.c_sym)))
    assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs)) + rounding
    assert level.quantization_residual <= 1e-9
    assert level.diagnostics.valid
    lo, hi = (params.c_sym - params.m0, params.m0) if state.symmetry is SPIN else (-params.m0, params.m0 + params.c_sym)
    assert lo < level.energy < hi


@pytest.mark.parametrize("sym", list(Symmetry))
@pytest.mark.parametrize("t", [0.0, 1.0, 2.0, 5.0])
def test_constant_mass_agreement_grid(sym, t):
    c = 0.0 if sym is SPIN else -1.0
    p = ModelParams(m0=5, q=1, c_sym=c, tensor=t)
    checked = 0
    for n in range(4):
        for kappa in [k for k in range(-5, 6) if k != 0]:
            state = StateLabel(n, kappa, sym)
            try:
                general = solve_energy(p, state).energy
            except NoBoundStateError:
                with pytest.raises(NoBoundStateError):
                    solve_energy_constant_mass(p, n, kappa, sym)
                continue
            closed = solve_energy_constant_mass(p, n, kappa, sym).energy
            assert general == pytest.approx(closed, abs=1e-12)
            checked += 1
    assert checked >= 30


@settings(max_examples=200, deadline=None)
@given(param_draws, st.integers(0, 3), st.integers(-5, 5).filter(lambda k: k not in (0, 1)))
def test_mirror_identity(params, n, kappa):
    state = StateLabel(n, kappa, PSPIN)
    try:
        e = solve_energy(params, state).energy
    except NoBoundStateError:
        assume(False)
    mp, ms = mirror_map(params, state)
    assert solve_energy(mp, ms, require_attractive=False).energy == pytest.approx(-e, abs=1e-12)


@pytest.mark.parametrize("sym", list(Symmetry))
@pytest.mark.parametrize("b", [0.0, 0.3])
def test_doublets_degenerate_without_tensor(sym, b):
    from diracpdm.model import doublet_partner
    p = ModelParams(m0=5, q=1, b=b, c_sym=0.0 if sym is SPIN else -1.0)
    for n in range(3):
        for kappa in (-3, -2, 2, 3):
            partner = doublet_partner(kappa, sym)
            if partner == 0:
                continue
            try:
                a = solve_energy(p, StateLabel(n, kappa, sym)).energy
            except NoBoundStateError:
                continue
            assert solve_energy(p, StateLabel(n, partner, sym)).energy == pytest.approx(a, abs=1e-12)


def test_tensor_lifts_degeneracy():
    p = ModelParams(m0=5, q=1, c_sym=-1, tensor=1)
    a = solve_energy(p, StateLabel(1, -2, PSPIN)).energy
    b = solve_energy(p, StateLabel(1, 3, PSPIN)).energy
    assert abs(a - b) > 0.1


def test_accidental_degeneracy():
    p = ModelParams(m0=5, q=1, c_sym=-1, tensor=5)
    a = solve_energy(p, StateLabel(1, -4, PSPIN)).energy
    b = solve_energy(p, StateLabel(1, -5, PSPIN)).energy
    assert a == b
    assert a == pytest.approx(-4.47059, abs=1e-5)


@pytest.mark.parametrize("n, kappa", [(0, -1), (1, -1), (0, -2), (2, -1), (1, -2), (0, -3)])
def test_nonrelativistic_convergence(n, kappa):
    m0, q = 5.0, 0.01
    e = solve_energy(ModelParams(m0=m0, q=q), StateLabel(n, kappa, SPIN)).energy
    l = classify(kappa).l
    enl = nonrelativistic_limit(m0, q, n, l)
    assert abs((e - m0) - enl) / abs(enl) <= 1e-3


def test_nonrelativistic_limit_values():
    assert nonrelativistic_limit(5, 1, 0, 0) == -2.5
    assert nonrelativistic_limit(5, 0, 3, 2) == 0
    assert nonrelativistic_limit(5, 1, 2, 1) == nonrelativistic_limit(5, 1, 3, 0)


def test_hbar_c_scaling_invariance():
    a = solve_energy(ModelParams(m0=5, q=1, b=0.2, c_sym=-1), StateLabel(1, -2, PSPIN)).energy
    b = solve_energy(ModelParams(m0=5, q=1, b=0.2, c_sym=-1, hbar_c=197.327), StateLabel(1, -2, PSPIN)).energy
    assert a == pytest.approx(b, abs=1e-12)
