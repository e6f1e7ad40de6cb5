"""Neel-type factorized eigenstates of the spin-s XYZ model on cubic lattices."""

from .errors import (
    AllCoefficientsZero,
    BudgetExceeded,
    ConditionViolated,
    DegenerateDenominator,
    EmptyNullspace,
    IndeterminateTerm,
    NeelError,
    NoRoot,
    PoleDegeneracy,
)
from .factor_core import (
    AngleInvariants,
    ModelContext,
    NeelAngles,
    ParamRay,
    Params,
    StereoPair,
    alpha_beta,
    angle_invariants,
    closed_form_params,
    condition_holds,
    condition_residual,
    energy_per_site,
    factorizing_field_scan,
    field_normalizing_scale,
    quadratic_coefficients,
    solve_angles,
    solve_params,
    stereo_roots,
    system_matrix,
)
from .lattice import Lattice, Site, directed_bonds, parity, sites
from .spin_algebra import Direction, SpinMatrices, SpinQuantum, as_spin, coherent_state, expectation, spin_matrices
from .verifier import (
    EigenCheck,
    apply_hamiltonian,
    bond_hamiltonian,
    bond_residual,
    build_neel_state,
    check_eigenstate,
    dense_hamiltonian,
    eigen_residual,
    spectrum_probe,
)

__version__ = "0.1.0"
