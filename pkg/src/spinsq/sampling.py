"""Random states and frames for property checks and demos."""

from __future__ import annotations

import numpy as np
from scipy.stats import special_ortho_group

from .spin import product_state, symmetric_basis


def random_bloch_vectors(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` unit vectors uniform on the sphere (Haar-random qubit pure states)."""
    v = rng.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_product_state(rng: np.random.Generator, n: int) -> np.ndarray:
    return product_state(random_bloch_vectors(rng, n))


def random_separable_state(rng: np.random.Generator, n: int, terms: int) -> np.ndarray:
    """Random convex mixture of ``terms`` pure product states."""
    weights = rng.dirichlet(np.ones(terms))
    return sum(w * random_product_state(rng, n) for w in weights)


def random_density_matrix(rng: np.random.Generator, n: int, rank: int | None = None) -> np.ndarray:
    """Ginibre-ensemble density matrix on ``n`` qubits."""
    d = 2**n
    g = rng.normal(size=(d, rank or d)) + 1j * rng.normal(size=(d, rank or d))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_symmetric_state(rng: np.random.Generator, n: int, rank: int = 1) -> np.ndarray:
    """Random density matrix supported on the permutation-symmetric subspace."""
    basis = symmetric_basis(n)
    g = rng.normal(size=(n + 1, rank)) + 1j * rng.normal(size=(n + 1, rank))
    vecs = basis @ g
    rho = vecs @ vecs.conj().T
    return rho / np.trace(rho).real


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    return special_ortho_group.rvs(3, random_state=rng)
