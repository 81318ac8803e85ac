"""Exciton couplings and stack spectra built on the tensor engines.

Contracts the transition dipole with the in-plane and inter-plane tensors
to get J(k) and J'(k) in units of J0, assembles N-plane stack matrices,
and diagonalizes them with an in-house cyclic Jacobi solver (the matrices
are tiny, n <= 64, and trace/Frobenius invariants make the solver testable
without pulling in an external eigensolver).

Sign conventions: the symmetric two-plane mode carries +J', so the pair
energies are E_A + J0 (Jt +- Jt') and the splitting is 2 |Jt'|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .direct_sum import DirectSumConfig, d_tensor_direct
from .ewald import (
    EwaldConfig,
    d_inter_ewald,
    d_inter_longwave,
    d_intra_ewald,
    f_constant,
)
from .model import (
    CouplingTensor,
    EnergyScale,
    LatticeGeometry,
    TransitionDipole,
    WaveVector,
)

__all__ = [
    "Direct",
    "Ewald",
    "LongWave",
    "Method",
    "ModeSpectrum",
    "coupling_from_tensor",
    "j_intra",
    "j_inter",
    "pair_energies",
    "splitting",
    "polarization_splitting",
    "stack_matrix",
    "symmetric_eigen",
]

_IMAG_TOL = 1e-12
_JACOBI_STOP = 1e-13
_MAX_JACOBI_SIZE = 64


@dataclass(frozen=True)
class Direct:
    """Brute-force window engine."""

    cutoff: int = 500


@dataclass(frozen=True)
class Ewald:
    """Accelerated-series engine."""

    config: EwaldConfig = EwaldConfig()


@dataclass(frozen=True)
class LongWave:
    """Closed forms valid for ka << 1: constant in-plane tensor
    diag(-F, -F, 2F) and the single-term inter-plane forms."""


Method = Union[Direct, Ewald, LongWave]


@dataclass(frozen=True)
class ModeSpectrum:
    """Eigenvalues at one k, ascending, in J0 units (relative to E_A) and eV."""

    k: WaveVector
    energies_j0: tuple[float, ...]
    energies_ev: tuple[float, ...]

    def __post_init__(self):
        if len(self.energies_j0) != len(self.energies_ev):
            raise ValueError("energy lists must have equal length")
        for seq in (self.energies_j0, self.energies_ev):
            if any(b < a for a, b in zip(seq, seq[1:])):
                raise ValueError("energies must be sorted ascending")


def coupling_from_tensor(tensor: CouplingTensor, dipole: TransitionDipole) -> float:
    """sum_ij m_i m_j Dt_ij; real for a Hermitian tensor and real m.

    The imaginary residual is asserted below 1e-12 and then discarded.
    """
    m = np.asarray(dipole.direction)
    val = complex(m @ tensor.entries @ m)
    if abs(val.imag) > _IMAG_TOL:
        raise ArithmeticError(f"contraction has imaginary residual {val.imag:.3e}")
    return val.real


def _intra_tensor(k: WaveVector, method: Method) -> CouplingTensor:
    if isinstance(method, Direct):
        return d_tensor_direct(k, DirectSumConfig(method.cutoff, 0), 1.0)
    if isinstance(method, Ewald):
        return d_intra_ewald(k, method.config)
    if isinstance(method, LongWave):
        f = f_constant()
        return CouplingTensor(np.diag([-f, -f, 2.0 * f]).astype(complex))
    raise TypeError(f"unknown engine {method!r}")


def _inter_tensor(k: WaveVector, b_over_a: float, method: Method) -> CouplingTensor:
    if isinstance(method, Direct):
        return d_tensor_direct(k, DirectSumConfig(method.cutoff, 1), b_over_a)
    if isinstance(method, Ewald):
        return d_inter_ewald(k, b_over_a, method.config)
    if isinstance(method, LongWave):
        return d_inter_longwave(k, b_over_a)
    raise TypeError(f"unknown engine {method!r}")


def j_intra(k: WaveVector, dipole: TransitionDipole, method: Method) -> float:
    """In-plane coupling Jt(k) in units of J0."""
    return coupling_from_tensor(_intra_tensor(k, method), dipole)


def j_inter(
    k: WaveVector, dipole: TransitionDipole, b_over_a: float, method: Method
) -> float:
    """Inter-plane coupling Jt'(k) in units of J0 for plane separation b.

    For LongWave this equals 2 pi (ka) e^{-kb} [(m_par . khat)^2 - m_z^2];
    the m_x m_z and m_y m_z cross terms drop out for every engine because
    the xz, yz components are purely imaginary and the contraction keeps
    2 Re of them.
    """
    return coupling_from_tensor(_inter_tensor(k, b_over_a, method), dipole)


def pair_energies(
    k: WaveVector,
    dipole: TransitionDipole,
    b_over_a: float,
    method: Method,
    scale: EnergyScale,
) -> ModeSpectrum:
    """Two-plane hybrid modes E_A + J0 (Jt +- Jt'), value-sorted."""
    j = j_intra(k, dipole, method)
    jp = j_inter(k, dipole, b_over_a, method)
    lo, hi = sorted((j - jp, j + jp))
    return ModeSpectrum(
        k=k,
        energies_j0=(lo, hi),
        energies_ev=(scale.ea_ev + scale.j0_ev * lo, scale.ea_ev + scale.j0_ev * hi),
    )


def splitting(
    k: WaveVector, dipole: TransitionDipole, b_over_a: float, method: Method
) -> float:
    """Two-plane splitting 2 |Jt'(k)| in units of J0."""
    return 2.0 * abs(j_inter(k, dipole, b_over_a, method))


def polarization_splitting(f: float) -> float:
    """k = 0 gap between the z-polarized branch (2F) and the in-plane
    branches (-F), i.e. 3F in units of J0 (dipole magnitude included in J0)."""
    if not f > 0:
        raise ValueError(f"F must be positive, got {f}")
    return 3.0 * f


def stack_matrix(
    k: WaveVector,
    dipole: TransitionDipole,
    geometry: LatticeGeometry,
    method: Method,
    nearest_only: bool = False,
) -> np.ndarray:
    """N-plane coupling matrix in J0 units, diagonal relative to E_A.

    Entry (alpha, beta) is Jt' evaluated at separation |alpha - beta| b,
    reusing the two-plane engine with a scaled separation (the Hamiltonian
    is pairwise, so nothing else enters); nearest_only zeroes everything
    beyond adjacent planes.
    """
    n = geometry.n_planes
    mat = np.zeros((n, n))
    diag = j_intra(k, dipole, method)
    for i in range(n):
        mat[i, i] = diag
    for sep in range(1, n):
        if nearest_only and sep > 1:
            break
        val = j_inter(k, dipole, sep * geometry.b_over_a, method)
        for i in range(n - sep):
            mat[i, i + sep] = val
            mat[i + sep, i] = val
    return mat


def symmetric_eigen(matrix) -> np.ndarray:
    """Eigenvalues of a small real symmetric matrix, ascending.

    Cyclic Jacobi rotations; sweeps stop once the off-diagonal Frobenius
    norm drops below 1e-13 of the full norm, comfortably inside the
    1e-12 guarantee. Input asymmetry beyond 1e-10 is rejected.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > _MAX_JACOBI_SIZE:
        raise ValueError(f"solver is sized for n <= {_MAX_JACOBI_SIZE}, got {n}")
    asym = np.max(np.abs(a - a.T)) if n > 1 else 0.0
    if asym > 1e-10:
        raise ValueError(f"matrix is not symmetric: residual {asym:.3e}")
    a = 0.5 * (a + a.T)
    norm = math.sqrt(float(np.sum(a * a)))
    if norm == 0.0 or n == 1:
        return np.sort(np.diag(a))

    def offnorm():
        # summed directly over off-diagonal entries: the difference
        # ||A||_F^2 - sum(diag^2) cancels catastrophically and would put
        # a sqrt(eps)-scale floor under the stopping test
        off = a - np.diag(np.diag(a))
        return math.sqrt(float(np.sum(off * off)))

    for _sweep in range(100):
        if offnorm() <= _JACOBI_STOP * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                h = a[q, q] - a[p, p]
                if abs(h) > 1e150 * abs(apq):
                    # theta would overflow; asymptotically t = 1/(2 theta)
                    t = apq / h
                else:
                    theta = 0.5 * h / apq
                    t = math.copysign(1.0, theta) / (
                        abs(theta) + math.sqrt(theta * theta + 1.0)
                    )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
        # the two-sided update leaves eps-scale asymmetry behind; purge it
        # so the rotations (which read the upper triangle) see all of it
        a = 0.5 * (a + a.T)
    else:
        raise RuntimeError("Jacobi sweeps failed to converge")
    return np.sort(np.diag(a))
