"""Direct checks of the Neel eigenstate relations on small periodic lattices.

States live in the site-ordered tensor basis with site 0 as the slowest
varying factor. The Hamiltonian is applied matrix-free by contracting single-
and two-site operators into the corresponding tensor axes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import BudgetExceeded
from .factor_core import ModelContext, NeelAngles, Params, energy_per_site
from .lattice import Lattice, directed_bonds, parity, sites
from .spin_algebra import as_spin, coherent_state, spin_matrices

__all__ = [
    "EigenCheck",
    "build_neel_state",
    "apply_hamiltonian",
    "dense_hamiltonian",
    "eigen_residual",
    "check_eigenstate",
    "bond_hamiltonian",
    "bond_residual",
    "spectrum_probe",
]

DEFAULT_MAX_DIM = 2**20
DENSE_MAX_DIM = 4096


def _check_budget(lat: Lattice, local_dim: int, max_dim: int) -> int:
    dim = lat.hilbert_dim(local_dim)
    if dim > max_dim:
        raise BudgetExceeded(f"Hilbert space dimension {dim} exceeds the limit {max_dim}")
    return dim


def build_neel_state(lat: Lattice, angles: NeelAngles, s, max_dim: int = DEFAULT_MAX_DIM) -> np.ndarray:
    """Product of coherent states, ``angles.dir1`` on even sites and ``dir2`` on odd ones."""
    spin = as_spin(s)
    _check_budget(lat, spin.dim, max_dim)
    local = (coherent_state(spin, angles.dir1), coherent_state(spin, angles.dir2))
    psi = np.ones(1, dtype=complex)
    for site in sites(lat):
        psi = np.kron(psi, local[parity(site)])
    return psi


def _apply_local(op: np.ndarray, psi: np.ndarray, axis: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(op, psi, axes=([1], [axis])), 0, axis)


def apply_hamiltonian(p: Params, lat: Lattice, s, v: np.ndarray) -> np.ndarray:
    """``H @ v`` without forming H.

    Exchange terms run over the ``N * d`` directed bonds; the field acts
    once per site.
    """
    spin = as_spin(s)
    v = np.asarray(v)
    n = lat.num_sites
    dim = lat.hilbert_dim(spin.dim)
    if v.shape != (dim,):
        raise ValueError(f"state has shape {v.shape}, expected ({dim},)")
    psi = v.astype(complex, copy=False).reshape((spin.dim,) * n)
    ops = spin_matrices(spin)
    out = np.zeros_like(psi)
    couplings = [(op, J) for op, J in zip(ops, p.J) if J != 0.0]
    for a, b in directed_bonds(lat):
        for op, J in couplings:
            out += J * _apply_local(op, _apply_local(op, psi, b.flat), a.flat)
    field = p.hx * ops.sx + p.hy * ops.sy + p.hz * ops.sz
    if np.any(field):
        for k in range(n):
            out -= _apply_local(field, psi, k)
    return out.reshape(-1)


def _embed(op, k, n, local_dim):
    left = sp.identity(local_dim**k, format="csr")
    right = sp.identity(local_dim ** (n - k - 1), format="csr")
    return sp.kron(sp.kron(left, sp.csr_matrix(op)), right, format="csr")


def dense_hamiltonian(p: Params, lat: Lattice, s, max_dim: int = DENSE_MAX_DIM) -> np.ndarray:
    """Explicit Hamiltonian matrix assembled from Kronecker products."""
    spin = as_spin(s)
    dim = _check_budget(lat, spin.dim, max_dim)
    n = lat.num_sites
    ops = spin_matrices(spin)
    H = sp.csr_matrix((dim, dim), dtype=complex)
    for a, b in directed_bonds(lat):
        for op, J in zip(ops, p.J):
            if J != 0.0:
                H = H + J * (_embed(op, a.flat, n, spin.dim) @ _embed(op, b.flat, n, spin.dim))
    field = p.hx * ops.sx + p.hy * ops.sy + p.hz * ops.sz
    for k in range(n):
        H = H - _embed(field, k, n, spin.dim)
    return H.toarray()


@dataclass(frozen=True)
class EigenCheck:
    residual: float
    norm_h_psi: float
    energy: float
    expectation: float
    num_sites: int

    def passes(self, tol: float = 1e-10) -> bool:
        return self.residual <= tol * max(self.norm_h_psi, np.finfo(float).tiny)


def check_eigenstate(p: Params, lat: Lattice, s, angles: NeelAngles, max_dim: int = DEFAULT_MAX_DIM) -> EigenCheck:
    """Residual of ``H|N> = N eps |N>`` together with ``||H|N>||`` and ``<N|H|N>``."""
    spin = as_spin(s)
    psi = build_neel_state(lat, angles, spin, max_dim=max_dim)
    hpsi = apply_hamiltonian(p, lat, spin, psi)
    energy = lat.num_sites * energy_per_site(p, ModelContext(lat.d, spin))
    return EigenCheck(
        residual=float(np.linalg.norm(hpsi - energy * psi)),
        norm_h_psi=float(np.linalg.norm(hpsi)),
        energy=float(energy),
        expectation=float(np.vdot(psi, hpsi).real),
        num_sites=lat.num_sites,
    )


def eigen_residual(p: Params, lat: Lattice, s, angles: NeelAngles, max_dim: int = DEFAULT_MAX_DIM) -> float:
    return check_eigenstate(p, lat, s, angles, max_dim=max_dim).residual


def bond_hamiltonian(p: Params, ctx: ModelContext) -> np.ndarray:
    """Two-site Hamiltonian with the field shared out as ``1/(2d)`` per bond end."""
    ops = spin_matrices(ctx.s)
    eye = np.eye(ctx.s.dim)
    H = sum(J * np.kron(op, op) for op, J in zip(ops, p.J))
    field = p.hx * ops.sx + p.hy * ops.sy + p.hz * ops.sz
    return H - (np.kron(field, eye) + np.kron(eye, field)) / (2 * ctx.d)


def bond_residual(p: Params, ctx: ModelContext, angles: NeelAngles) -> float:
    """Residual of the two-site relation ``H_12 |psi1 psi2> = (eps/d) |psi1 psi2>``."""
    v = np.kron(coherent_state(ctx.s, angles.dir1), coherent_state(ctx.s, angles.dir2))
    target = energy_per_site(p, ctx) / ctx.d
    return float(np.linalg.norm(bond_hamiltonian(p, ctx) @ v - target * v))


def spectrum_probe(p: Params, lat: Lattice, s, max_dim: int = DENSE_MAX_DIM) -> np.ndarray:
    """Full ascending spectrum by dense diagonalization (diagnostic only)."""
    return np.linalg.eigvalsh(dense_hamiltonian(p, lat, s, max_dim=max_dim))
