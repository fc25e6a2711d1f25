"""Bound states of the position-dependent-mass Dirac equation with Coulomb and tensor
potentials in the spin and pseudospin symmetry limits."""
from .model import (
    ModelParams,
    NoBoundStateError,
    NoRealSolutionError,
    StateLabel,
    Symmetry,
    b_from_m1,
    classify,
    diagnostics,
    doublet_partner,
)
from .spectrum import (
    Branch,
    EnergyLevel,
    mirror_map,
    nonrelativistic_limit,
    solve_energy,
    solve_energy_constant_mass,
    solve_energy_pspin,
    solve_energy_spin,
)

__version__ = "0.1.0"
