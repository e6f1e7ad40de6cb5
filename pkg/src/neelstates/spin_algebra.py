"""Single-site spin-s operators and spin coherent states.

All matrices live in the S^z eigenbasis ordered m = s, s-1, ..., -s, so the
first basis vector is the fully polarized "up" state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "SpinQuantum",
    "SpinMatrices",
    "Direction",
    "as_spin",
    "spin_matrices",
    "coherent_state",
    "expectation",
]

POLE_TOL = 1e-12


@dataclass(frozen=True)
class SpinQuantum:
    """Spin quantum number stored as the integer ``two_s = 2s``."""

    two_s: int

    def __post_init__(self):
        if not isinstance(self.two_s, (int, np.integer)) or isinstance(self.two_s, bool):
            raise TypeError(f"two_s must be an integer, got {self.two_s!r}")
        if self.two_s < 1:
            raise ValueError(f"two_s must be >= 1, got {self.two_s}")
        object.__setattr__(self, "two_s", int(self.two_s))

    @property
    def s(self) -> float:
        return self.two_s / 2

    @property
    def dim(self) -> int:
        return self.two_s + 1

    @classmethod
    def parse(cls, value) -> "SpinQuantum":
        """Build from an exact half-integer given as str, int, float or Fraction.

        Floats are accepted only if ``2 * value`` is exactly an integer, so
        ``0.5`` and ``1.5`` work while ``0.3`` is rejected.
        """
        if isinstance(value, cls):
            return value
        if isinstance(value, bool):
            raise TypeError("spin cannot be a bool")
        if isinstance(value, str):
            try:
                frac = Fraction(value.strip())
            except ValueError as exc:
                raise ValueError(f"cannot parse spin {value!r}") from exc
        elif isinstance(value, (int, np.integer)):
            frac = Fraction(int(value))
        elif isinstance(value, (float, np.floating)):
            if not math.isfinite(value):
                raise ValueError(f"spin must be finite, got {value}")
            frac = Fraction(float(value))
        elif isinstance(value, Fraction):
            frac = value
        else:
            raise TypeError(f"cannot interpret {value!r} as a spin quantum number")
        twice = 2 * frac
        if twice.denominator != 1:
            raise ValueError(f"spin must be a half-integer, got {value!r}")
        return cls(int(twice))

    def __str__(self):
        return f"{self.two_s}/2" if self.two_s % 2 else str(self.two_s // 2)


def as_spin(value) -> SpinQuantum:
    return SpinQuantum.parse(value)


@dataclass(frozen=True)
class SpinMatrices:
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    def __iter__(self):
        return iter((self.sx, self.sy, self.sz))


@dataclass(frozen=True)
class Direction:
    """Unit vector on the sphere given by polar angle ``theta`` and azimuth ``phi``.

    ``phi`` is wrapped into (-pi, pi] and set to 0 at the poles, where it
    carries no information.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        phi = float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise ValueError(f"angles must be finite, got ({theta}, {phi})")
        if theta < 0.0 or theta > math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {theta}")
        if theta == 0.0 or theta == math.pi:
            phi = 0.0
        else:
            phi = wrap_angle(phi)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @property
    def unit_vector(self) -> np.ndarray:
        st = math.sin(self.theta)
        return np.array([st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)])

    def stereographic(self) -> complex:
        """``tan(theta/2) * exp(i phi)``; infinite at the south pole."""
        if self.theta == math.pi:
            return complex(math.inf, 0.0)
        return math.tan(self.theta / 2) * complex(math.cos(self.phi), math.sin(self.phi))

    def isclose(self, other: "Direction", atol: float = 1e-9) -> bool:
        if abs(self.theta - other.theta) > atol:
            return False
        if math.sin(self.theta) < POLE_TOL and math.sin(other.theta) < POLE_TOL:
            return True
        return abs(wrap_angle(self.phi - other.phi)) <= atol


def wrap_angle(phi: float) -> float:
    """Map an angle into (-pi, pi]."""
    wrapped = math.remainder(phi, 2 * math.pi)
    if wrapped == -math.pi:
        wrapped = math.pi
    return wrapped


def spin_matrices(s) -> SpinMatrices:
    """Spin operators for spin ``s`` built from the ladder operators.

    Examples
    --------
    >>> sm = spin_matrices("1/2")
    >>> sm.sz.real
    array([[ 0.5,  0. ],
           [ 0. , -0.5]])
    """
    spin = as_spin(s)
    ss = spin.s
    m = ss - np.arange(spin.dim)
    # <m+1|S+|m> sits just above the diagonal in descending order
    upper = np.sqrt(ss * (ss + 1) - m[1:] * (m[1:] + 1))
    splus = np.diag(upper, k=1).astype(complex)
    sminus = splus.conj().T
    sx = (splus + sminus) / 2
    sy = (splus - sminus) / 2j
    sz = np.diag(m).astype(complex)
    return SpinMatrices(sx, sy, sz)


def coherent_state(s, direction: Direction) -> np.ndarray:
    """Spin coherent state polarized along ``direction``.

    Amplitudes are ``sqrt(C(2s, s-m)) cos(t/2)^(s+m) sin(t/2)^(s-m) e^(-i m phi)``
    for m = s, ..., -s. For s = 1/2 this is ``(cos(t/2) e^(-i phi/2),
    sin(t/2) e^(i phi/2))``.
    """
    spin = as_spin(s)
    half = direction.theta / 2
    c, sn = math.cos(half), math.sin(half)
    if direction.theta == math.pi:
        c = 0.0  # cos(pi/2) is not exactly zero in floating point
    amps = np.empty(spin.dim, dtype=complex)
    for k in range(spin.dim):
        # k = s - m counts the lowered quanta
        m2 = spin.two_s - 2 * k  # 2m
        mag = math.sqrt(math.comb(spin.two_s, k)) * c ** (spin.two_s - k) * sn**k
        amps[k] = mag * np.exp(-0.5j * m2 * direction.phi)
    return amps


def expectation(state: np.ndarray, op: np.ndarray) -> complex:
    state = np.asarray(state)
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1] or op.shape[1] != state.shape[-1]:
        raise ValueError(f"operator of shape {op.shape} does not act on a state of length {state.shape[-1]}")
    return complex(np.vdot(state, op @ state))
