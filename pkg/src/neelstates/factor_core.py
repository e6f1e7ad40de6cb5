"""Relations between XYZ Hamiltonian parameters and two-sublattice product eigenstates.

The Hamiltonian is ``sum_bonds (Jx SxSx + Jy SySy + Jz SzSz) - sum_sites h.S``
on a d-dimensional cubic lattice of spin-s sites. A Neel-type product state
with sublattice directions ``(theta1, phi1)`` and ``(theta2, phi2)`` is an
eigenstate with energy per site ``-d s^2 (Jx + Jy + Jz)`` exactly when

    hx^2/((Jx+Jy)(Jx+Jz)) + hy^2/((Jy+Jx)(Jy+Jz)) + hz^2/((Jz+Jx)(Jz+Jy)) = (2ds)^2.

Directions are handled through the stereographic variable
``z = tan(theta/2) exp(i phi)``. Going from parameters to angles means
solving a quadratic in z; going from angles to parameters means finding the
nullspace of a 6x6 real linear system. Spin s enters only through the
combination ``2ds`` that multiplies the exchange terms relative to the field.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    AllCoefficientsZero,
    ConditionViolated,
    DegenerateDenominator,
    EmptyNullspace,
    IndeterminateTerm,
    NoRoot,
    PoleDegeneracy,
)
from .spin_algebra import Direction, SpinQuantum, as_spin

__all__ = [
    "Params",
    "ModelContext",
    "NeelAngles",
    "AngleInvariants",
    "StereoPair",
    "ParamRay",
    "condition_residual",
    "condition_holds",
    "field_normalizing_scale",
    "energy_per_site",
    "quadratic_coefficients",
    "alpha_beta",
    "stereo_roots",
    "solve_angles",
    "angle_invariants",
    "system_matrix",
    "closed_form_params",
    "solve_params",
    "factorizing_field_scan",
]

EPS_DEN = 1e-12
CONDITION_TOL = 1e-9
NULLSPACE_TOL = 1e-10
EPS_POLE = 1e-8
ZERO_COEFF_TOL = 1e-12

PARAM_NAMES = ("Jx", "Jy", "Jz", "hx", "hy", "hz")


@dataclass(frozen=True)
class Params:
    """Exchange integrals and field components in a common energy unit."""

    jx: float
    jy: float
    jz: float
    hx: float = 0.0
    hy: float = 0.0
    hz: float = 0.0

    def __post_init__(self):
        for name in ("jx", "jy", "jz", "hx", "hy", "hz"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if not any(self.as_array()):
            raise ValueError("at least one Hamiltonian parameter must be nonzero")

    @classmethod
    def from_array(cls, values: Sequence[float]) -> "Params":
        values = np.asarray(values, dtype=float)
        if values.shape != (6,):
            raise ValueError(f"expected 6 parameters, got shape {values.shape}")
        return cls(*values)

    @classmethod
    def from_mapping(cls, mapping) -> "Params":
        """Accepts keys ``Jx ... hz`` in either case; missing fields default to 0."""
        lowered = {str(k).lower(): v for k, v in mapping.items()}
        unknown = set(lowered) - {n.lower() for n in PARAM_NAMES}
        if unknown:
            raise ValueError(f"unknown parameter keys: {sorted(unknown)}")
        return cls(*(float(lowered.get(n.lower(), 0.0)) for n in PARAM_NAMES))

    def as_array(self) -> np.ndarray:
        return np.array([self.jx, self.jy, self.jz, self.hx, self.hy, self.hz])

    def as_dict(self) -> dict:
        return dict(zip(PARAM_NAMES, (float(x) for x in self.as_array())))

    @property
    def J(self) -> np.ndarray:
        return np.array([self.jx, self.jy, self.jz])

    @property
    def h(self) -> np.ndarray:
        return np.array([self.hx, self.hy, self.hz])

    def scaled(self, factor: float) -> "Params":
        return Params.from_array(factor * self.as_array())

    def with_field_scaled(self, factor: float) -> "Params":
        return Params(self.jx, self.jy, self.jz, factor * self.hx, factor * self.hy, factor * self.hz)


@dataclass(frozen=True)
class ModelContext:
    d: int
    s: SpinQuantum

    def __post_init__(self):
        if isinstance(self.d, bool) or int(self.d) != self.d or self.d < 1:
            raise ValueError(f"dimension d must be a positive integer, got {self.d!r}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "s", as_spin(self.s))

    @property
    def two_ds(self) -> float:
        """The field-to-exchange scale ``2 d s``."""
        return self.d * self.s.two_s


@dataclass(frozen=True)
class NeelAngles:
    """Spin directions on sublattice 1 (even parity) and sublattice 2 (odd parity)."""

    dir1: Direction
    dir2: Direction

    @classmethod
    def from_radians(cls, theta1, phi1, theta2, phi2) -> "NeelAngles":
        return cls(Direction(theta1, phi1), Direction(theta2, phi2))

    def swapped(self) -> "NeelAngles":
        return NeelAngles(self.dir2, self.dir1)

    def canonical(self) -> "NeelAngles":
        """Order so that dir1 has the smaller theta, ties broken by smaller phi."""
        a, b = self.dir1, self.dir2
        if abs(a.theta - b.theta) > 1e-12:
            swap = b.theta < a.theta
        else:
            swap = b.phi < a.phi
        return self.swapped() if swap else self

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.dir1.theta, self.dir1.phi, self.dir2.theta, self.dir2.phi)

    def isclose(self, other: "NeelAngles", atol: float = 1e-9, up_to_swap: bool = False) -> bool:
        same = self.dir1.isclose(other.dir1, atol) and self.dir2.isclose(other.dir2, atol)
        if same or not up_to_swap:
            return same
        return self.dir1.isclose(other.dir2, atol) and self.dir2.isclose(other.dir1, atol)


@dataclass(frozen=True)
class AngleInvariants:
    gamma: float
    delta: float
    chi: float
    zeta: float

    def as_tuple(self):
        return (self.gamma, self.delta, self.chi, self.zeta)


@dataclass(frozen=True)
class StereoPair:
    """Two stereographic coordinates in homogeneous form ``z_k = u_k / v_k``.

    Each pair is scaled so ``max(|u|, |v|) = 1``; ``v = 0`` is the south pole.
    """

    u1: complex
    v1: complex
    u2: complex
    v2: complex

    @staticmethod
    def _z(u, v):
        if v == 0:
            return complex(math.inf, 0.0)
        return u / v

    @property
    def z1(self) -> complex:
        return self._z(self.u1, self.v1)

    @property
    def z2(self) -> complex:
        return self._z(self.u2, self.v2)

    def directions(self) -> tuple[Direction, Direction]:
        return _direction(self.u1, self.v1), _direction(self.u2, self.v2)


@dataclass(frozen=True)
class ParamRay:
    """Orthonormal basis (rows) of the parameter solutions for a given pair of angles.

    Components are ordered ``(Jx, Jy, Jz, hx, hy, hz)``. ``representative`` is
    the single solution scaled to ``Jx = 1`` and is only set when the solution
    space is one-dimensional with a nonzero Jx component.
    """

    basis: np.ndarray
    singular_values: np.ndarray
    representative: Optional[Params] = None

    @property
    def k(self) -> int:
        return self.basis.shape[0]

    def member(self, coeffs: Sequence[float]) -> Params:
        return Params.from_array(np.asarray(coeffs, dtype=float) @ self.basis)


# --- condition and energy -----------------------------------------------------


def _condition_terms(p: Params, eps_den: float, skip_zero_field: bool):
    J, h = p.J, p.h
    jscale = float(np.max(np.abs(J)))
    hscale = max(jscale, float(np.max(np.abs(h))))
    terms = []
    for a in range(3):
        b, c = (a + 1) % 3, (a + 2) % 3
        sab, sac = J[a] + J[b], J[a] + J[c]
        degenerate = abs(sab) <= eps_den * jscale or abs(sac) <= eps_den * jscale
        field_zero = abs(h[a]) <= eps_den * hscale
        if field_zero and skip_zero_field:
            continue
        if degenerate:
            axis = "xyz"[a]
            if field_zero:
                raise IndeterminateTerm(f"h{axis} term is 0/0; check the eigen residual instead")
            raise DegenerateDenominator(f"pairwise exchange sum vanishes in the h{axis} term")
        terms.append(h[a] ** 2 / (sab * sac))
    return terms


def condition_residual(p: Params, ctx: ModelContext, eps_den: float = EPS_DEN) -> float:
    """Left side of the factorization condition minus ``(2ds)^2``.

    Zero means the two Neel-type eigenstates exist. Raises
    :class:`DegenerateDenominator` when a pairwise sum ``J_a + J_b`` vanishes
    under a nonzero field component and :class:`IndeterminateTerm` when the
    field component vanishes as well.

    Examples
    --------
    >>> condition_residual(Params(1, 1, 1, 0, 0, 2), ModelContext(1, "1/2"))
    0.0
    """
    return float(math.fsum(_condition_terms(p, eps_den, skip_zero_field=False)) - ctx.two_ds**2)


def condition_holds(p: Params, ctx: ModelContext, tol: float = CONDITION_TOL) -> bool:
    return abs(condition_residual(p, ctx)) <= tol * ctx.two_ds**2


def field_normalizing_scale(p: Params, ctx: ModelContext, eps_den: float = EPS_DEN) -> float:
    """Positive ``lam`` such that ``(J, lam * h)`` satisfies the condition.

    Field components that are zero are left out, so 0/0 terms do not block
    the computation; callers should confirm such cases with an eigen residual.
    """
    terms = _condition_terms(p, eps_den, skip_zero_field=True)
    q = math.fsum(terms)
    if not terms or q <= 0.0:
        raise ConditionViolated("no positive field rescaling reaches the factorization surface")
    return ctx.two_ds / math.sqrt(q)


def energy_per_site(p: Params, ctx: ModelContext) -> float:
    return -ctx.d * ctx.s.s**2 * (p.jx + p.jy + p.jz)


# --- parameters -> angles -----------------------------------------------------


def _reduced_rows(p: Params, ctx: ModelContext) -> np.ndarray:
    # Each row r gives r . (a, b, c) = 0 for the quadratic a z^2 + b z + c with
    # roots z1, z2; rows come from the three distinct bond eigen-equations.
    g = ctx.two_ds
    jx, jy, jz, hx, hy, hz = p.as_array()
    fm = complex(hx, -hy)
    fp = complex(hx, hy)
    A = g * (jx + jy + 2 * jz) - 2 * hz
    B = g * (jx + jy + 2 * jz) + 2 * hz
    K = g * (jx - jy)
    L = g * (jx + jy)
    return np.array([[A, fm, K], [K, fp, B], [-fp, -L, -fm]])


def quadratic_coefficients(p: Params, ctx: ModelContext) -> tuple[complex, complex, complex]:
    """Coefficients ``(a, b, c)`` of ``a z^2 + b z + c = 0`` for the two sublattice directions.

    ``a = (2ds)^2 (Jx^2 - Jy^2) - (hx - i hy)^2`` is the common denominator of
    the product and sum of roots, so ``z1 z2 = c / a`` and ``z1 + z2 = -b / a``.
    Keeping the unscaled form lets ``a -> 0`` degrade into a root at the
    south pole.
    """
    rows = _reduced_rows(p, ctx)
    a, b, c = np.cross(rows[0], rows[2])
    return complex(a), complex(b), complex(c)


def alpha_beta(p: Params, ctx: ModelContext) -> tuple[complex, complex]:
    """Product and sum of the two stereographic roots; infinite when ``a = 0``."""
    a, b, c = quadratic_coefficients(p, ctx)
    if a == 0:
        inf = complex(math.inf, 0.0)
        return inf, inf
    return c / a, -b / a


def _normalize(u: complex, v: complex) -> tuple[complex, complex]:
    scale = max(abs(u), abs(v))
    return u / scale, v / scale


def _direction(u: complex, v: complex) -> Direction:
    theta = 2.0 * math.atan2(abs(u), abs(v))
    phi = cmath.phase(u * v.conjugate()) if (u != 0 and v != 0) else 0.0
    return Direction(min(theta, math.pi), phi)


def stereo_roots(p: Params, ctx: ModelContext) -> StereoPair:
    """Roots of the stereographic quadratic in homogeneous form, unordered.

    The coefficient vector ``(a, b, c)`` is the null vector of the reduced
    bond equations. Roots use the cancellation-free pairing ``z1 = q / a``, ``z2 = c / q`` with
    ``q = -(b + sqrt(b^2 - 4ac)) / 2`` and the square-root sign aligned with b.
    """
    rows = _reduced_rows(p, ctx)
    # on the factorization surface all pairwise cross products are parallel;
    # the (first, third) pair is the textbook one, the others cover its zeros
    candidates = [np.cross(rows[0], rows[2]), np.cross(rows[0], rows[1]), np.cross(rows[1], rows[2])]
    norms = [np.linalg.norm(v) for v in candidates]
    scale = float(np.max(np.abs(rows))) ** 2
    if max(norms) <= ZERO_COEFF_TOL * scale:
        raise AllCoefficientsZero("the bond equations leave the directions unconstrained")
    best = candidates[0] if norms[0] >= 1e-3 * max(norms) else candidates[int(np.argmax(norms))]
    a, b, c = (complex(x) for x in best)
    root = cmath.sqrt(b * b - 4 * a * c)
    if (b.conjugate() * root).real < 0:
        root = -root
    q = -(b + root) / 2
    if q == 0:
        # b = 0 and ac = 0: a double root at 0 or at infinity
        r = (0j, 1 + 0j) if a != 0 else (1 + 0j, 0j)
        return StereoPair(*r, *r)
    u1, v1 = _normalize(q, a)
    u2, v2 = _normalize(c, q)
    return StereoPair(u1, v1, u2, v2)


def solve_angles(p: Params, ctx: ModelContext, tol: float = CONDITION_TOL, check: bool = True) -> NeelAngles:
    """Sublattice directions of the Neel eigenstates for parameters ``p``.

    The result is canonically ordered (smaller theta first); the swapped
    assignment is the second eigenstate. With ``check=False`` the
    factorization condition is not enforced, which is needed when it is
    indeterminate.
    """
    if check:
        res = condition_residual(p, ctx)
        if abs(res) > tol * ctx.two_ds**2:
            raise ConditionViolated(f"condition residual {res:.3e} exceeds tolerance")
    d1, d2 = stereo_roots(p, ctx).directions()
    return NeelAngles(d1, d2).canonical()


# --- angles -> parameters -----------------------------------------------------


def angle_invariants(angles: NeelAngles, eps_pole: float = EPS_POLE) -> AngleInvariants:
    t = []
    for k, dr in enumerate((angles.dir1, angles.dir2), start=1):
        if dr.theta > math.pi - eps_pole:
            raise PoleDegeneracy(f"theta{k} = {dr.theta!r} is at the south pole")
        t.append(math.tan(dr.theta / 2))
    t1, t2 = t
    p1, p2 = angles.dir1.phi, angles.dir2.phi
    return AngleInvariants(
        gamma=t1 * t2 * math.cos(p1 + p2),
        delta=t1 * math.cos(p1) + t2 * math.cos(p2),
        chi=t1 * t2 * math.sin(p1 + p2),
        zeta=t1 * math.sin(p1) + t2 * math.sin(p2),
    )


def system_matrix(inv: AngleInvariants, ctx: ModelContext) -> np.ndarray:
    """Real 6x6 matrix ``M`` with ``M @ (Jx, Jy, Jz, hx, hy, hz) = 0`` for every compatible Hamiltonian."""
    g, dl, x, z = inv.as_tuple()
    G = ctx.two_ds
    return np.array(
        [
            [1 + g, 1 - g, 2, -dl / G, -z / G, -2 / G],
            [x, -x, 0, -z / G, dl / G, 0],
            [1 + g, g - 1, 2 * g, -dl / G, z / G, 2 * g / G],
            [x, x, 2 * x, -z / G, -dl / G, 2 * x / G],
            [dl, dl, 0, -(1 + g) / G, -x / G, 0],
            [z, z, 0, -x / G, -(1 - g) / G, 0],
        ]
    )


def closed_form_params(inv: AngleInvariants, ctx: ModelContext) -> np.ndarray:
    """Explicit solution scaled to ``Jx = 1``, valid when the shared denominator is nonzero."""
    g, dl, x, z = inv.as_tuple()
    G = ctx.two_ds
    den = x * (x * x + g * g - dl * dl + z * z - 1) + 2 * g * dl * z
    if den == 0:
        raise DegenerateDenominator("closed-form denominator vanishes")
    return np.array(
        [
            1.0,
            (x * (x * x + g * g + dl * dl - z * z - 1) - 2 * g * dl * z) / den,
            -(x * (x * x + g * g + g * (z * z - dl * dl) - dl * x * z - 1) + (1 + g * g) * dl * z) / den,
            2 * G * x * (dl * (g - 1) + x * z) / den,
            -2 * G * x * (z * (1 + g) - dl * x) / den,
            G * (dl * dl * x * (1 - g) + dl * z * (g * g - x * x - 1) + x * z * z * (1 + g)) / den,
        ]
    )


def _canonical_basis(vt_null: np.ndarray) -> np.ndarray:
    # project coordinate axes onto the nullspace and orthonormalize in axis order
    proj = vt_null.T @ vt_null
    out: list[np.ndarray] = []
    for i in range(proj.shape[0]):
        v = proj[:, i].copy()
        for w in out:
            v -= (w @ v) * w
        n = np.linalg.norm(v)
        if n > 1e-8:
            out.append(v / n)
        if len(out) == vt_null.shape[0]:
            break
    return np.array(out)


def solve_params(angles: NeelAngles, ctx: ModelContext, rel_tol: float = NULLSPACE_TOL) -> ParamRay:
    """All Hamiltonians (up to scale) with the given Neel pair as an eigenstate.

    Computed as the numerical nullspace of :func:`system_matrix`. Generic
    angles give a single ray; special configurations give a larger space,
    which is reported as is.
    """
    M = system_matrix(angle_invariants(angles), ctx)
    _, sv, vt = np.linalg.svd(M)
    k = int(np.count_nonzero(sv <= rel_tol * sv[0]))
    if k == 0:
        raise EmptyNullspace(f"smallest relative singular value {sv[-1] / sv[0]:.3e} above {rel_tol:.1e}")
    basis = _canonical_basis(vt[-k:])
    rep = None
    if k == 1 and abs(basis[0, 0]) > 1e-8:
        rep = Params.from_array(basis[0] / basis[0, 0])
    return ParamRay(basis=basis, singular_values=sv, representative=rep)


# --- scan ---------------------------------------------------------------------


def factorizing_field_scan(
    p0: Params,
    direction: Sequence[float],
    ctx: ModelContext,
    t_range: tuple[float, float] = (0.0, 10.0),
    samples: int = 1001,
) -> list[float]:
    """Values of t where ``p0 + t * direction`` meets the factorization surface.

    The range is sampled on a uniform grid, every sign change is bracketed
    and refined by bisection. Pairwise exchange sums must keep their sign
    over the range, otherwise the residual has a pole and
    :class:`DegenerateDenominator` is raised.
    """
    base = p0.as_array()
    step = np.asarray(direction, dtype=float)
    if step.shape != (6,):
        raise ValueError(f"direction must have 6 components, got shape {step.shape}")
    lo, hi = map(float, t_range)
    if not lo < hi:
        raise ValueError(f"empty scan range {t_range}")

    def f(t):
        return condition_residual(Params.from_array(base + t * step), ctx)

    ts = np.linspace(lo, hi, samples)
    vals = np.array([f(t) for t in ts])

    J = base[:3][None, :] + ts[:, None] * step[:3][None, :]
    sums = np.stack([J[:, 0] + J[:, 1], J[:, 0] + J[:, 2], J[:, 1] + J[:, 2]], axis=1)
    if np.any(np.sign(sums[1:]) * np.sign(sums[:-1]) < 0):
        raise DegenerateDenominator("a pairwise exchange sum changes sign inside the scan range")

    roots = []
    for i in range(samples):
        if vals[i] == 0.0:
            roots.append(float(ts[i]))
        elif i + 1 < samples and vals[i + 1] != 0.0 and np.sign(vals[i]) != np.sign(vals[i + 1]):
            roots.append(_bisect(f, ts[i], ts[i + 1], vals[i]))
    if not roots:
        raise NoRoot("condition residual keeps its sign over the scan range")
    return roots


def _bisect(f, a, b, fa, max_iter=200):
    # run to interval collapse; the residual then sits at the float floor
    best_t, best_f = a, fa
    for _ in range(max_iter):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        fm = f(m)
        if abs(fm) < abs(best_f):
            best_t, best_f = m, fm
        if fm == 0.0:
            break
        if np.sign(fm) == np.sign(fa):
            a, fa = m, fm
        else:
            b = m
    return float(best_t)
