"""Finite-dimensional state spaces and the energy/ontological basis change.

An N-level system carries two distinguished orthonormal bases: the energy
eigenbasis ``|n>``, n = 0..N-1, and the "ontological" basis ``|s>`` whose
labels correspond one-to-one to the N sites ``phi_s = 2*pi*s/N`` of a
particle on the unit circle.  The two are connected by the unitary DFT-type
matrix

    U[s, n] = exp(2j*pi*n*s/N) / sqrt(N)

so that a state's ontological amplitudes are ``U @ energy_amplitudes`` and
the inverse transform uses ``U^dagger``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import BasisError, DimensionError, NormalizationError

NORM_TOL = 1e-12


class Basis(Enum):
    ENERGY = "energy"
    ONTOLOGICAL = "ontological"


def _as_readonly_complex(values, expected_ndim):
    arr = np.array(values, dtype=np.complex128, copy=True)
    if arr.ndim != expected_ndim:
        raise DimensionError(f"expected {expected_ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes tagged with the basis they are expressed in."""

    basis: Basis
    amplitudes: np.ndarray

    def __post_init__(self):
        if not isinstance(self.basis, Basis):
            raise BasisError(f"not a Basis tag: {self.basis!r}")
        arr = _as_readonly_complex(self.amplitudes, 1)
        if arr.size < 1:
            raise DimensionError("state needs at least one amplitude")
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(np.sum(np.abs(self.amplitudes) ** 2) - 1.0) <= tol

    def normalized(self) -> "StateVector":
        n = self.norm
        if n == 0.0:
            raise NormalizationError("cannot normalize the zero vector")
        return StateVector(self.basis, self.amplitudes / n)


def energy_state(n: int, dim: int) -> StateVector:
    """One-hot energy eigenstate |n> in a dim-level space."""
    if not 0 <= n < dim:
        raise DimensionError(f"level {n} outside 0..{dim - 1}")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[n] = 1.0
    return StateVector(Basis.ENERGY, amps)


def ontological_state(s: int, dim: int) -> StateVector:
    """One-hot circle-site state |s> in a dim-level space."""
    if not 0 <= s < dim:
        raise DimensionError(f"site {s} outside 0..{dim - 1}")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[s] = 1.0
    return StateVector(Basis.ONTOLOGICAL, amps)


def random_state(dim: int, rng: np.random.Generator, basis: Basis = Basis.ENERGY) -> StateVector:
    """Normalized state with Gaussian random complex amplitudes."""
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(basis, amps / np.linalg.norm(amps))


@dataclass(frozen=True, eq=False)
class DualityMap:
    """The N x N unitary connecting the energy and ontological bases.

    Column n holds the ontological-basis representation of the energy
    eigenstate |n>.
    """

    matrix: np.ndarray

    def __post_init__(self):
        arr = _as_readonly_complex(self.matrix, 2)
        if arr.shape[0] != arr.shape[1]:
            raise DimensionError(f"duality map must be square, got {arr.shape}")
        object.__setattr__(self, "matrix", arr)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def unitarity_defect(self) -> float:
        """Max-entry deviation of U^dagger U from the identity."""
        u = self.matrix
        return float(np.max(np.abs(u.conj().T @ u - np.eye(self.dim))))


def build_duality_map(dim: int) -> DualityMap:
    """Construct U[s, n] = exp(2j*pi*n*s/dim)/sqrt(dim)."""
    if not isinstance(dim, (int, np.integer)) or dim < 1:
        raise DimensionError(f"dimension must be a positive integer, got {dim!r}")
    idx = np.arange(dim)
    phases = np.exp(2j * np.pi * np.outer(idx, idx) / dim)
    return DualityMap(phases / np.sqrt(dim))


@dataclass(frozen=True, eq=False)
class AngleGrid:
    """The N circle sites phi_s = 2*pi*s/N, s = 0..N-1."""

    dim: int
    angles: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError(f"grid needs dim >= 1, got {self.dim}")
        angles = 2.0 * np.pi * np.arange(self.dim) / self.dim
        angles.setflags(write=False)
        object.__setattr__(self, "angles", angles)

    @property
    def spacing(self) -> float:
        return 2.0 * np.pi / self.dim


def _check_dims(state: StateVector, dmap: DualityMap):
    if state.dim != dmap.dim:
        raise DimensionError(f"state dim {state.dim} != map dim {dmap.dim}")


def to_ontological(state: StateVector, dmap: DualityMap) -> StateVector:
    """Re-express an energy-basis state over the circle sites."""
    if state.basis is not Basis.ENERGY:
        raise BasisError("to_ontological expects an energy-basis state")
    _check_dims(state, dmap)
    return StateVector(Basis.ONTOLOGICAL, dmap.matrix @ state.amplitudes)


def to_energy(state: StateVector, dmap: DualityMap) -> StateVector:
    """Re-express a circle-site state over the energy levels."""
    if state.basis is not Basis.ONTOLOGICAL:
        raise BasisError("to_energy expects an ontological-basis state")
    _check_dims(state, dmap)
    return StateVector(Basis.ENERGY, dmap.matrix.conj().T @ state.amplitudes)
