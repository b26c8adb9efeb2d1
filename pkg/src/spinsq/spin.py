"""Collective spin operators, reference states and moment extraction."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .linalg import as_matrix, hermiticity_error, n_qubits_of, partial_trace

AXES = ("x", "y", "z")

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in (IDENTITY,) + PAULI:
    _m.flags.writeable = False

STATE_TOL = 1e-8


def axis_index(axis) -> int:
    if isinstance(axis, str):
        try:
            return AXES.index(axis.lower())
        except ValueError:
            raise ValueError(f"unknown axis {axis!r}") from None
    i = int(axis)
    if i not in (0, 1, 2):
        raise ValueError(f"unknown axis {axis!r}")
    return i


def local_operator(op: np.ndarray, site: int, n: int) -> np.ndarray:
    """``op`` acting on qubit ``site`` of an ``n``-qubit register."""
    return np.kron(np.kron(np.eye(2**site), op), np.eye(2 ** (n - site - 1)))


def two_site_operator(a: np.ndarray, i: int, b: np.ndarray, j: int, n: int) -> np.ndarray:
    if i == j:
        raise ValueError("sites must differ")
    if i > j:
        a, i, b, j = b, j, a, i
    out = np.kron(np.eye(2**i), a)
    out = np.kron(out, np.eye(2 ** (j - i - 1)))
    out = np.kron(out, b)
    return np.kron(out, np.eye(2 ** (n - j - 1)))


@functools.lru_cache(maxsize=None)
def _collective(axis: int, n: int) -> np.ndarray:
    # J_l is diagonal-plus-bitflip; build it from the Pauli action on basis states
    d = 2**n
    out = np.zeros((d, d), dtype=complex)
    idx = np.arange(d)
    for k in range(n):
        bit = (idx >> (n - 1 - k)) & 1
        flipped = idx ^ (1 << (n - 1 - k))
        if axis == 0:
            out[flipped, idx] += 0.5
        elif axis == 1:
            # sigma_y |0> = i|1>, sigma_y |1> = -i|0>
            out[flipped, idx] += 0.5j * (1 - 2 * bit)
        else:
            out[idx, idx] += 0.5 * (1 - 2 * bit)
    out.flags.writeable = False
    return out


def collective_j(axis, n: int) -> np.ndarray:
    """Collective angular momentum ``J_l = (1/2) sum_k sigma_l^(k)``.

    The returned array is cached and read-only.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return _collective(axis_index(axis), int(n))


def collective_ops(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return tuple(collective_j(a, n) for a in range(3))


@functools.lru_cache(maxsize=None)
def _moment_stencils(n: int):
    # nonzero pattern (rows, cols, values) of J_k and of the symmetrized J_k J_l;
    # Tr(rho A) then only needs the entries of rho on A's transposed pattern
    ops = [sparse.csr_matrix(_collective(a, n)) for a in range(3)]

    def stencil(a):
        a = a.tocoo()
        return a.row, a.col, a.data

    firsts = [stencil(op) for op in ops]
    seconds = {}
    for k in range(3):
        for l in range(k, 3):
            seconds[k, l] = stencil((ops[k] @ ops[l] + ops[l] @ ops[k]) * 0.5)
    return firsts, seconds


def _trace_with(rho: np.ndarray, stencil) -> float:
    rows, cols, vals = stencil
    return float(np.sum(rho[cols, rows] * vals).real)


def bloch_projector(bloch) -> np.ndarray:
    b = np.asarray(bloch, dtype=float)
    return 0.5 * (IDENTITY + b[0] * SIGMA_X + b[1] * SIGMA_Y + b[2] * SIGMA_Z)


def product_state(blochs) -> np.ndarray:
    """Pure product state with the given unit Bloch vectors, qubit 0 first."""
    blochs = np.atleast_2d(np.asarray(blochs, dtype=float))
    if blochs.shape[1] != 3 or len(blochs) == 0:
        raise ValueError("expected a list of 3-component Bloch vectors")
    norms = np.linalg.norm(blochs, axis=1)
    if np.any(np.abs(norms - 1) > 1e-10):
        raise ValueError(f"Bloch vectors must have unit norm, got norms {norms}")
    rho = np.ones((1, 1), dtype=complex)
    for b in blochs:
        rho = np.kron(rho, bloch_projector(b))
    return rho


@dataclass(frozen=True)
class CollectiveMoments:
    """First and second moments of the collective spin.

    ``corr`` is the symmetrized correlation matrix ``C_kl = <J_k J_l + J_l J_k>/2``
    and ``cov = corr - outer(j_vec, j_vec)``. When only the diagonal second
    moments are known the off-diagonal entries of both are NaN.
    """

    n: int
    j_vec: np.ndarray
    corr: np.ndarray

    def __post_init__(self):
        j = np.asarray(self.j_vec, dtype=float).reshape(3)
        c = np.asarray(self.corr, dtype=float).reshape(3, 3)
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if np.any(np.isnan(np.diag(c))) or np.any(np.isnan(j)):
            raise ValueError("j_vec and the diagonal of corr are required")
        off = ~np.eye(3, dtype=bool)
        known = ~np.isnan(c)
        if np.any(known & off) and not np.all(known):
            raise ValueError("off-diagonal correlations must be all known or all unknown")
        if np.all(known) and np.max(np.abs(c - c.T)) > 1e-10:
            raise ValueError("correlation matrix must be symmetric")
        j.flags.writeable = False
        c.flags.writeable = False
        object.__setattr__(self, "j_vec", j)
        object.__setattr__(self, "corr", c)

    @classmethod
    def from_jk(cls, n: int, j_vec, k_vec, offdiag=None) -> "CollectiveMoments":
        """Build from ``<J_l>``, ``<J_l^2>`` and optionally ``(Cxy, Cxz, Cyz)``."""
        c = np.full((3, 3), np.nan)
        c[np.diag_indices(3)] = np.asarray(k_vec, dtype=float)
        if offdiag is not None:
            cxy, cxz, cyz = offdiag
            c[0, 1] = c[1, 0] = cxy
            c[0, 2] = c[2, 0] = cxz
            c[1, 2] = c[2, 1] = cyz
        return cls(int(n), np.asarray(j_vec, dtype=float), c)

    @property
    def k_vec(self) -> np.ndarray:
        return np.diag(self.corr).copy()

    @property
    def cov(self) -> np.ndarray:
        return self.corr - np.outer(self.j_vec, self.j_vec)

    @property
    def variances(self) -> np.ndarray:
        return self.k_vec - self.j_vec**2

    @property
    def has_full_corr(self) -> bool:
        return not np.any(np.isnan(self.corr))


def check_density_matrix(rho, tol: float = STATE_TOL, psd: bool = True) -> np.ndarray:
    """Validate a density matrix; returns it as a complex array.

    Raises ``ValueError`` naming the first failed property
    (hermiticity, trace, positivity).
    """
    rho = as_matrix(rho)
    n_qubits_of(rho)
    if hermiticity_error(rho) > tol:
        raise ValueError("state is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValueError(f"state trace is {np.trace(rho).real:.12g}, expected 1")
    if psd and np.linalg.eigvalsh(rho)[0] < -tol:
        raise ValueError("state is not positive semidefinite")
    return rho


def moments_from_state(rho, validate: bool = True) -> CollectiveMoments:
    """Collective moments of an ``n``-qubit density matrix.

    Only hermiticity and unit trace are checked; use
    :func:`check_density_matrix` for a full positivity check.
    """
    rho = as_matrix(rho)
    n = n_qubits_of(rho)
    if validate:
        check_density_matrix(rho, psd=False)
    firsts, seconds = _moment_stencils(n)
    j_vec = np.array([_trace_with(rho, st) for st in firsts])
    corr = np.empty((3, 3))
    for (k, l), st in seconds.items():
        # Re Tr(rho J_k J_l) is the symmetrized product for Hermitian rho
        corr[k, l] = corr[l, k] = _trace_with(rho, st)
    return CollectiveMoments(n, j_vec, corr)


def rotation_matrix(axis_unit, angle: float) -> np.ndarray:
    """Proper rotation by ``angle`` about ``axis_unit`` (right-hand rule)."""
    a = np.asarray(axis_unit, dtype=float)
    norm = np.linalg.norm(a)
    if norm == 0:
        raise ValueError("rotation axis must be nonzero")
    if abs(norm - 1) > 1e-10:
        raise ValueError("rotation axis must be a unit vector")
    kx = np.array([[0, -a[2], a[1]], [a[2], 0, -a[0]], [-a[1], a[0], 0]])
    return np.eye(3) + np.sin(angle) * kx + (1 - np.cos(angle)) * kx @ kx


def collective_rotation(axis_unit, angle: float, n: int) -> np.ndarray:
    """Unitary ``exp(-i angle (axis . J))`` on ``n`` qubits.

    Conjugating a state with it rotates ``<J>`` by
    ``rotation_matrix(axis_unit, angle)``.
    """
    a = np.asarray(axis_unit, dtype=float)
    norm = np.linalg.norm(a)
    if norm == 0:
        raise ValueError("rotation axis must be nonzero")
    if abs(norm - 1) > 1e-10:
        raise ValueError("rotation axis must be a unit vector")
    ns = a[0] * SIGMA_X + a[1] * SIGMA_Y + a[2] * SIGMA_Z
    u1 = np.cos(angle / 2) * IDENTITY - 1j * np.sin(angle / 2) * ns
    u = np.ones((1, 1), dtype=complex)
    for _ in range(n):
        u = np.kron(u, u1)
    return u


_SWAP = np.eye(4, dtype=complex)[[0, 2, 1, 3]]


def avg_two_qubit_state(rho) -> np.ndarray:
    """Average of the reduced states over all ordered pairs of qubits."""
    rho = as_matrix(rho)
    n = n_qubits_of(rho)
    if n < 2:
        raise ValueError("need at least two qubits")
    acc = np.zeros((4, 4), dtype=complex)
    for i, j in itertools.combinations(range(n), 2):
        r = partial_trace(rho, (i, j))
        acc += r + _SWAP @ r @ _SWAP
    return acc / (n * (n - 1))


def dicke_vector(n: int, excitations: int) -> np.ndarray:
    """Normalized symmetric Dicke state vector with the given Hamming weight."""
    if not 0 <= excitations <= n:
        raise ValueError("excitations must lie in [0, n]")
    psi = np.zeros(2**n, dtype=complex)
    for ones in itertools.combinations(range(n), excitations):
        psi[sum(1 << (n - 1 - q) for q in ones)] = 1
    return psi / np.linalg.norm(psi)


def symmetric_basis(n: int) -> np.ndarray:
    """Columns are the Dicke states with 0..n excitations."""
    return np.stack([dicke_vector(n, k) for k in range(n + 1)], axis=1)


_SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def reference_state(name: str, n: int) -> np.ndarray:
    """Named reference states as density matrices.

    ``singlet_pairs`` places two-qubit singlets on (0,1), (2,3), ...;
    ``dicke_half`` is the symmetric Dicke state with ``n/2`` excitations;
    ``ghz`` is ``(|0...0> + |1...1>)/sqrt(2)``.
    """
    if name == "singlet_pairs":
        if n < 2 or n % 2:
            raise ValueError("singlet_pairs needs an even number of qubits")
        psi = np.ones(1, dtype=complex)
        for _ in range(n // 2):
            psi = np.kron(psi, _SINGLET)
    elif name == "dicke_half":
        if n < 2 or n % 2:
            raise ValueError("dicke_half needs an even number of qubits")
        psi = dicke_vector(n, n // 2)
    elif name == "ghz":
        if n < 1:
            raise ValueError("n must be at least 1")
        psi = np.zeros(2**n, dtype=complex)
        psi[0] = psi[-1] = 1 / np.sqrt(2)
    else:
        raise ValueError(f"unknown reference state {name!r}")
    return np.outer(psi, psi.conj())
