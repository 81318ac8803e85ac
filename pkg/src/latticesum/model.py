"""Domain types and unit conventions for dipolar lattice-sum calculations.

Everything internal is dimensionless: wave vectors are stored as k*a,
coupling tensors follow the convention Dt_ij = a^3 * D_ij, and couplings
are reported in units of J0 = mu^2 / (4 pi eps0 a^3). Physical eV values
appear only at the output boundary through :class:`EnergyScale`. Keeping a
single convention avoids the factor-of-a bookkeeping bugs that creep in
when some expressions carry 1/a^2 and others 1/a^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import elementary_charge, epsilon_0

__all__ = [
    "COULOMB_EV_ANGSTROM",
    "LatticeGeometry",
    "TransitionDipole",
    "WaveVector",
    "CouplingTensor",
    "EnergyScale",
    "dipole_from_theta",
    "j0_scale",
    "make_k_grid",
]

# e^2/(4 pi eps0) expressed in eV * Angstrom, built from CODATA constants
# rather than a hand-typed literal (~14.3996 eV A).
COULOMB_EV_ANGSTROM = elementary_charge / (4.0 * math.pi * epsilon_0) * 1e10

_HERMITICITY_TOL = 1e-10
_TRACE_TOL = 1e-10


@dataclass(frozen=True)
class LatticeGeometry:
    """Square-lattice stack: lattice constant, plane spacing, extent.

    ``a`` is in Angstrom, ``b_over_a`` is the plane separation in units of
    ``a``, ``n_sites`` is the number of sites per plane (must be a perfect
    square: the plane is sqrt(N) x sqrt(N)), ``n_planes`` counts stacked
    planes.
    """

    a: float
    b_over_a: float
    n_sites: int = 1
    n_planes: int = 1

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError(f"lattice constant must be positive, got {self.a}")
        if not self.b_over_a > 0:
            raise ValueError(f"b_over_a must be positive, got {self.b_over_a}")
        if self.n_planes < 1:
            raise ValueError(f"n_planes must be >= 1, got {self.n_planes}")
        if self.n_sites < 1:
            raise ValueError(f"n_sites must be >= 1, got {self.n_sites}")
        root = math.isqrt(self.n_sites)
        if root * root != self.n_sites:
            raise ValueError(f"n_sites must be a perfect square, got {self.n_sites}")


@dataclass(frozen=True)
class TransitionDipole:
    """Unit direction (m_x, m_y, m_z) plus physical magnitude in e*Angstrom."""

    direction: tuple[float, float, float]
    magnitude: float = 1.0

    def __post_init__(self):
        mx, my, mz = self.direction
        norm2 = mx * mx + my * my + mz * mz
        if abs(norm2 - 1.0) > 1e-12:
            raise ValueError(f"direction must be a unit vector, |m|^2 = {norm2!r}")
        if not self.magnitude > 0:
            raise ValueError(f"magnitude must be positive, got {self.magnitude}")


@dataclass(frozen=True)
class WaveVector:
    """In-plane wave vector stored dimensionless as (k_x a, k_y a)."""

    kxa: float
    kya: float

    def __post_init__(self):
        if not (math.isfinite(self.kxa) and math.isfinite(self.kya)):
            raise ValueError(f"wave vector must be finite, got ({self.kxa}, {self.kya})")

    @property
    def ka(self) -> float:
        return math.hypot(self.kxa, self.kya)

    def __neg__(self) -> "WaveVector":
        return WaveVector(-self.kxa, -self.kya)


@dataclass(frozen=True)
class CouplingTensor:
    """Complex Hermitian 3x3 dynamical matrix, convention Dt_ij = a^3 D_ij.

    The dipole dyadic delta_ij/r^3 - 3 r_i r_j / r^5 is traceless term by
    term, so any lattice sum of it must be traceless too; both Hermiticity
    and the vanishing trace are enforced on construction.
    """

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > _HERMITICITY_TOL:
            raise ValueError(f"tensor is not Hermitian: residual {herm:.3e}")
        tr = abs(m[0, 0] + m[1, 1] + m[2, 2])
        if tr > _TRACE_TOL:
            raise ValueError(f"tensor is not traceless: |trace| = {tr:.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @classmethod
    def from_components(cls, xx, yy, zz, xy, xz, yz) -> "CouplingTensor":
        """Build the Hermitian matrix from the six independent sums.

        The lower triangle is the conjugate of the upper one by convention,
        so off-diagonal sums that come out purely imaginary (the xz and yz
        inter-plane components) still yield a Hermitian matrix.
        """
        m = np.array(
            [
                [xx, xy, xz],
                [np.conj(xy), yy, yz],
                [np.conj(xz), np.conj(yz), zz],
            ],
            dtype=complex,
        )
        return cls(m)

    def __add__(self, other: "CouplingTensor") -> "CouplingTensor":
        return CouplingTensor(self.entries + other.entries)

    @property
    def xx(self):
        return self.entries[0, 0]

    @property
    def yy(self):
        return self.entries[1, 1]

    @property
    def zz(self):
        return self.entries[2, 2]

    @property
    def xy(self):
        return self.entries[0, 1]

    @property
    def xz(self):
        return self.entries[0, 2]

    @property
    def yz(self):
        return self.entries[1, 2]


@dataclass(frozen=True)
class EnergyScale:
    """Coupling scale J0 and transition energy E_A, both in eV."""

    j0_ev: float
    ea_ev: float = 1.0

    def __post_init__(self):
        if not self.j0_ev > 0:
            raise ValueError(f"j0_ev must be positive, got {self.j0_ev}")


def dipole_from_theta(theta: float, magnitude: float = 1.0) -> TransitionDipole:
    """Dipole tilted by theta from the plane normal: (sin t, 0, cos t).

    The in-plane projection is fixed along x; anisotropy scans rotate the
    wave vector instead. Angle wrapping is the caller's business.
    """
    return TransitionDipole((math.sin(theta), 0.0, math.cos(theta)), magnitude)


def j0_scale(mu: float, a: float) -> float:
    """J0 = mu^2 / (4 pi eps0 a^3) in eV, for mu in e*Angstrom and a in Angstrom."""
    if not mu > 0:
        raise ValueError(f"dipole magnitude must be positive, got {mu}")
    if not a > 0:
        raise ValueError(f"lattice constant must be positive, got {a}")
    return mu * mu * COULOMB_EV_ANGSTROM / a**3


def make_k_grid(geometry: LatticeGeometry) -> list[WaveVector]:
    """Allowed wave vectors of a sqrt(N) x sqrt(N) plane with periodic BCs.

    k_{x,y} a = 2 pi p / sqrt(N) with p = 0, +-1, ..., +-floor(sqrt(N)/2).
    Both signed edge values are kept, so for even sqrt(N) the grid has
    (sqrt(N)+1)^2 points and the zone-edge rows appear twice; nothing
    downstream needs uniqueness.
    """
    root = math.isqrt(geometry.n_sites)
    half = root // 2
    step = 2.0 * math.pi / root
    return [
        WaveVector(step * p, step * q)
        for p in range(-half, half + 1)
        for q in range(-half, half + 1)
    ]
