"""Spin-model Hamiltonians and their thermal states.

Couplings act on Pauli matrices (not spin-1/2 operators) and temperatures
are in units of the coupling with ``k_B = 1``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .linalg import HermitianEig, expm_hermitian_normalized, gibbs_from_eig, hermitian_eig
from .spin import PAULI, CollectiveMoments, axis_index, collective_j, moments_from_state, two_site_operator

FAMILIES = ("heisenberg_ring", "xy_ring", "cluster4", "heisenberg_complete", "xy_complete")


@dataclass(frozen=True)
class ModelSpec:
    family: str
    n: int
    j2: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown model family {self.family!r}; choose from {FAMILIES}")
        if self.family == "cluster4" and self.n != 4:
            raise ValueError("cluster4 is defined for exactly 4 qubits")
        if self.family.endswith("_ring") and self.n < 3:
            raise ValueError("rings need at least 3 qubits")
        if self.family.endswith("_complete") and self.n < 2:
            raise ValueError("complete-graph models need at least 2 qubits")
        if self.family != "cluster4" and self.j2 != 0:
            raise ValueError("j2 only applies to cluster4")
        object.__setattr__(self, "j2", float(self.j2))

    @property
    def label(self) -> str:
        if self.family == "cluster4":
            return f"cluster4(j2={self.j2:g})"
        return f"{self.family}(n={self.n})"


def _bond(i: int, j: int, n: int, components) -> np.ndarray:
    return sum(two_site_operator(PAULI[a], i, PAULI[a], j, n) for a in components)


def _bonds(spec: ModelSpec) -> list[tuple[int, int, float]]:
    n = spec.n
    if spec.family in ("heisenberg_ring", "xy_ring"):
        return [(k, (k + 1) % n, 1.0) for k in range(n)]
    if spec.family == "cluster4":
        return [(k, (k + 1) % 4, 1.0) for k in range(4)] + [(0, 2, spec.j2), (1, 3, spec.j2)]
    return [(i, j, 1.0) for i, j in itertools.combinations(range(n), 2)]


@functools.lru_cache(maxsize=64)
def _hamiltonian(spec: ModelSpec) -> np.ndarray:
    components = (0, 1) if spec.family.startswith("xy") else (0, 1, 2)
    d = 2**spec.n
    h = np.zeros((d, d), dtype=complex)
    for i, j, coupling in _bonds(spec):
        if coupling:
            h += coupling * _bond(i, j, spec.n, components)
    h.flags.writeable = False
    return h


def hamiltonian(spec: ModelSpec) -> np.ndarray:
    """Hamiltonian matrix of ``spec``; cached and read-only.

    * ``heisenberg_ring``: sum over ring bonds of ``sigma_k . sigma_(k+1)``
    * ``xy_ring``: same with only the x and y components
    * ``cluster4``: 4-site Heisenberg ring plus ``j2`` times the two diagonals
    * ``*_complete``: as the rings but summed over all pairs
    """
    return _hamiltonian(spec)


@functools.lru_cache(maxsize=64)
def site_symmetries(spec: ModelSpec) -> tuple[tuple[int, ...], ...]:
    """Site permutations ``perm`` (site ``k`` goes to ``perm[k]``) that leave ``H`` unchanged.

    All permutations are tried up to 8 sites; above that only the dihedral
    group of the ring is searched. Any subgroup of the true symmetry group is
    a valid answer.
    """
    n = spec.n
    bonds = {(min(i, j), max(i, j)): c for i, j, c in _bonds(spec) if c}

    def preserves(perm):
        return all(
            bonds.get((min(perm[i], perm[j]), max(perm[i], perm[j]))) == c
            for (i, j), c in bonds.items()
        )

    if n <= 8:
        candidates = itertools.permutations(range(n))
    else:
        rotations = [tuple((k + s) % n for k in range(n)) for s in range(n)]
        candidates = rotations + [tuple((s - k) % n for k in range(n)) for s in range(n)]
    return tuple(p for p in candidates if preserves(p))


@functools.lru_cache(maxsize=64)
def spectrum(spec: ModelSpec) -> HermitianEig:
    eig = hermitian_eig(hamiltonian(spec))
    for a in eig:
        a.flags.writeable = False
    return eig


@dataclass(frozen=True)
class ThermalPoint:
    model: ModelSpec
    temperature: float
    state: np.ndarray

    @functools.cached_property
    def moments(self) -> CollectiveMoments:
        return moments_from_state(self.state, validate=False)

    @property
    def energy(self) -> float:
        return float(np.sum(self.state * hamiltonian(self.model).T).real)


def thermal_state(spec: ModelSpec, t: float) -> ThermalPoint:
    """Gibbs state ``exp(-H/t)/Z``; ``t = inf`` gives the maximally mixed state exactly."""
    if math.isnan(t) or t <= 0:
        raise ValueError(f"temperature must be positive, got {t}")
    if math.isinf(t):
        d = 2**spec.n
        return ThermalPoint(spec, t, np.eye(d, dtype=complex) / d)
    return ThermalPoint(spec, float(t), gibbs_from_eig(spectrum(spec), 1 / t))


def susceptibility(spec: ModelSpec, axis, t: float, delta_b: float = 1e-3) -> float:
    """Magnetic susceptibility ``d<J_l>/dB_l`` at zero field by central differences.

    The field enters as ``H - B J_l``, so a spin aligns with it and the
    susceptibility is positive. When ``H`` commutes with every ``J_l`` it
    equals ``Var(J_l) / t``.
    """
    if not t > 0 or math.isinf(t):
        raise ValueError(f"temperature must be positive and finite, got {t}")
    if not delta_b > 0:
        raise ValueError(f"delta_b must be positive, got {delta_b}")
    j = collective_j(axis_index(axis), spec.n)
    h = hamiltonian(spec)

    def mean_j(b):
        rho = expm_hermitian_normalized(h - b * j, 1 / t)
        return float(np.sum(rho * j.T).real)

    return (mean_j(delta_b) - mean_j(-delta_b)) / (2 * delta_b)
