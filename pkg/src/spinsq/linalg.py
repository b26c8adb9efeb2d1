"""Dense complex linear algebra on qubit registers.

Qubit 0 is the most significant Kronecker factor everywhere in this package:
the basis state ``|b0 b1 ... b(n-1)>`` has index ``sum_k b_k 2**(n-1-k)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-10


class HermitianEig(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class Bipartition:
    """A cut of ``n_qubits`` into ``left_set`` and its complement.

    The left set always contains qubit 0, so each cut has exactly one
    representative.
    """

    n_qubits: int
    left_set: tuple[int, ...]

    def __post_init__(self):
        left = tuple(sorted(set(int(q) for q in self.left_set)))
        object.__setattr__(self, "left_set", left)
        if self.n_qubits < 2:
            raise ValueError("a bipartition needs at least two qubits")
        if not left or left[0] != 0:
            raise ValueError("left_set must contain qubit 0")
        if left[-1] >= self.n_qubits or len(left) >= self.n_qubits:
            raise ValueError("left_set must be a proper subset of the qubits")

    @property
    def right_set(self) -> tuple[int, ...]:
        return tuple(q for q in range(self.n_qubits) if q not in self.left_set)

    @classmethod
    def canonical(cls, n_qubits: int, qubits: Iterable[int]) -> "Bipartition":
        """Return the canonical cut separating ``qubits`` from the rest."""
        s = set(qubits)
        if 0 not in s:
            s = set(range(n_qubits)) - s
        return cls(n_qubits, tuple(s))

    def __str__(self):
        return "".join(map(str, self.left_set)) + "|" + "".join(map(str, self.right_set))


def bipartitions(n_qubits: int) -> list[Bipartition]:
    """All ``2**(n-1) - 1`` inequivalent bipartitions, ordered by left-set size then lexicographically."""
    out = []
    rest = range(1, n_qubits)
    for size in range(0, n_qubits - 1):
        for combo in itertools.combinations(rest, size):
            out.append(Bipartition(n_qubits, (0,) + combo))
    return out


def n_qubits_of(m: np.ndarray) -> int:
    d = m.shape[0]
    if m.ndim != 2 or m.shape[1] != d:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = int(round(np.log2(d)))
    if d < 2 or 2**n != d:
        raise ValueError(f"dimension {d} is not a power of two")
    return n


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got {a.ndim}-d")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def hermiticity_error(h: np.ndarray) -> float:
    return float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0


def hermitian_eig(h) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises
    ------
    ValueError
        If ``h`` is not square or deviates from Hermitian by more than 1e-10.
    """
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if hermiticity_error(h) > HERMITIAN_TOL:
        raise ValueError("operator is not Hermitian")
    w, v = np.linalg.eigh(h)
    return HermitianEig(w, v)


def gibbs_from_eig(eig: HermitianEig, beta: float) -> np.ndarray:
    """``exp(-beta H) / Z`` from a precomputed spectrum of ``H``."""
    if not np.isfinite(beta) or beta < 0:
        raise ValueError(f"beta must be finite and nonnegative, got {beta}")
    w, v = eig
    # shift so the largest exponent is 0
    weights = np.exp(-beta * (w - w[0]))
    weights /= weights.sum()
    rho = (v * weights) @ v.conj().T
    return (rho + rho.conj().T) / 2


def expm_hermitian_normalized(h, beta: float) -> np.ndarray:
    """Normalized matrix exponential ``exp(-beta h) / Tr exp(-beta h)``.

    Evaluated through the spectral decomposition with the ground energy
    subtracted, so large ``beta`` cannot overflow.
    """
    if not np.isfinite(beta) or beta < 0:
        raise ValueError(f"beta must be finite and nonnegative, got {beta}")
    return gibbs_from_eig(hermitian_eig(h), beta)


def _qubit_set(part, n: int) -> tuple[int, ...]:
    if isinstance(part, Bipartition):
        if part.n_qubits != n:
            raise ValueError(f"bipartition is for {part.n_qubits} qubits, matrix has {n}")
        return part.left_set
    qs = tuple(sorted(set(int(q) for q in part)))
    if qs and (qs[0] < 0 or qs[-1] >= n):
        raise ValueError(f"qubit indices {qs} out of range for {n} qubits")
    return qs


def partial_transpose(rho, part) -> np.ndarray:
    """Transpose the tensor factors of the qubits in ``part``.

    ``part`` is a :class:`Bipartition` (its left set is transposed) or any
    collection of qubit indices, including all of them.
    """
    rho = as_matrix(rho)
    n = n_qubits_of(rho)
    t = rho.reshape((2,) * (2 * n))
    perm = list(range(2 * n))
    for q in _qubit_set(part, n):
        perm[q], perm[n + q] = perm[n + q], perm[q]
    return t.transpose(perm).reshape(rho.shape)


def partial_trace(rho, keep: Iterable[int]) -> np.ndarray:
    """Reduced state on the qubits in ``keep``, kept in ascending order."""
    rho = as_matrix(rho)
    n = n_qubits_of(rho)
    keep = _qubit_set(keep, n)
    if not keep:
        raise ValueError("keep must name at least one qubit")
    drop = [q for q in range(n) if q not in keep]
    t = rho.reshape((2,) * (2 * n))
    order = list(keep) + drop
    t = t.transpose(order + [n + q for q in order])
    dk, dd = 2 ** len(keep), 2 ** len(drop)
    return np.einsum("ijkj->ik", t.reshape(dk, dd, dk, dd))


def realign(rho, part: Bipartition) -> np.ndarray:
    """Realigned matrix ``R[(i,j),(k,l)] = rho[(i,k),(j,l)]`` for the cut ``part``.

    Indices ``i, j`` run over the left set and ``k, l`` over the right set,
    after reordering the qubits so the left set leads.
    """
    rho = as_matrix(rho)
    n = n_qubits_of(rho)
    if not isinstance(part, Bipartition):
        part = Bipartition.canonical(n, part)
    if part.n_qubits != n:
        raise ValueError(f"bipartition is for {part.n_qubits} qubits, matrix has {n}")
    order = list(part.left_set) + list(part.right_set)
    t = rho.reshape((2,) * (2 * n)).transpose(order + [n + q for q in order])
    da, db = 2 ** len(part.left_set), 2 ** len(part.right_set)
    return t.reshape(da, db, da, db).transpose(0, 2, 1, 3).reshape(da * da, db * db)


def trace_norm(m) -> float:
    return float(np.sum(np.linalg.svd(as_matrix(m), compute_uv=False)))
