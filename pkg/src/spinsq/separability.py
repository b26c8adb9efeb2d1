"""PPT and realignment (CCNR) tests over every bipartition."""

from __future__ import annotations

import functools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .linalg import Bipartition, bipartitions, n_qubits_of, partial_transpose, realign, trace_norm
from .spin import check_density_matrix

NPT_TOLERANCE = 1e-10
CCNR_TOLERANCE = 1e-9


def worker_count() -> int:
    """Worker pool size: ``SPINSQ_THREADS`` if set, else all cores."""
    env = os.environ.get("SPINSQ_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"SPINSQ_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _map(fn, items, workers):
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) < 4:
        return [fn(x) for x in items]
    # LAPACK releases the GIL, threads are enough; map keeps input order
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class BipartitionRecord:
    bipartition: Bipartition
    min_pt_eigenvalue: float | None = None
    ccnr_margin: float | None = None


@dataclass(frozen=True)
class BipartitionVerdicts:
    records: tuple[BipartitionRecord, ...]

    @property
    def min_pt_eigenvalue(self) -> float | None:
        vals = [r.min_pt_eigenvalue for r in self.records if r.min_pt_eigenvalue is not None]
        return min(vals) if vals else None

    @property
    def max_ccnr_margin(self) -> float | None:
        vals = [r.ccnr_margin for r in self.records if r.ccnr_margin is not None]
        return max(vals) if vals else None

    @property
    def is_npt(self) -> bool:
        v = self.min_pt_eigenvalue
        return v is not None and v < -NPT_TOLERANCE

    @property
    def ccnr_detected(self) -> bool:
        v = self.max_ccnr_margin
        return v is not None and v > CCNR_TOLERANCE


def min_pt_eigenvalue(rho: np.ndarray, part) -> float:
    pt = partial_transpose(rho, part)
    return float(scipy.linalg.eigh(pt, eigvals_only=True, subset_by_index=[0, 0])[0])


def ccnr_margin(rho: np.ndarray, part) -> float:
    return trace_norm(realign(rho, part)) - 1


@functools.lru_cache(maxsize=64)
def bipartition_orbits(n: int, symmetries: tuple[tuple[int, ...], ...] = ()) -> tuple[int, ...]:
    """Index of each bipartition's orbit representative under the site permutations.

    Representatives are the earliest member of their orbit in
    :func:`bipartitions` order.
    """
    parts = bipartitions(n)
    index = {p: i for i, p in enumerate(parts)}
    rep = list(range(len(parts)))
    for i, part in enumerate(parts):
        for perm in symmetries:
            j = index[Bipartition.canonical(n, (perm[q] for q in part.left_set))]
            rep[i] = min(rep[i], j)
    # one pass suffices when the permutations form a group
    return tuple(rep)


def bipartition_verdicts(
    rho,
    ppt: bool = True,
    ccnr: bool = True,
    workers: int | None = None,
    validate: bool = True,
    symmetries=None,
) -> BipartitionVerdicts:
    """PPT and/or CCNR data for each canonical bipartition, in enumeration order.

    ``symmetries`` is an optional group of site permutations under which
    ``rho`` is invariant. Bipartitions mapped onto each other by the group
    have unitarily equivalent partial transposes and realignments, so only
    one per orbit is computed and its values are copied to the rest.
    """
    rho = check_density_matrix(rho, psd=False) if validate else np.asarray(rho, dtype=complex)
    n = n_qubits_of(rho)
    if n < 2:
        raise ValueError("need at least two qubits")
    parts = bipartitions(n)
    reps = bipartition_orbits(n, tuple(map(tuple, symmetries or ())))

    def work(part):
        return BipartitionRecord(
            part,
            min_pt_eigenvalue(rho, part) if ppt else None,
            ccnr_margin(rho, part) if ccnr else None,
        )

    unique = sorted(set(reps))
    computed = dict(zip(unique, _map(work, [parts[i] for i in unique], workers)))
    records = []
    for part, r in zip(parts, reps):
        src = computed[r]
        records.append(BipartitionRecord(part, src.min_pt_eigenvalue, src.ccnr_margin))
    return BipartitionVerdicts(tuple(records))


def ppt_all(rho, workers: int | None = None, validate: bool = True, symmetries=None) -> BipartitionVerdicts:
    """Smallest partial-transpose eigenvalue for every bipartition."""
    return bipartition_verdicts(rho, True, False, workers, validate, symmetries)


def ccnr_all(rho, workers: int | None = None, validate: bool = True, symmetries=None) -> BipartitionVerdicts:
    """Realignment margin ``||R(rho)||_1 - 1`` for every bipartition."""
    return bipartition_verdicts(rho, False, True, workers, validate, symmetries)


def two_qubit_ppt_margin(rho2) -> float:
    """Negated smallest eigenvalue of the partial transpose of a two-qubit state.

    Positive means entangled; for two qubits PPT is also sufficient for
    separability, so a nonpositive margin certifies a separable state.
    """
    rho2 = np.asarray(rho2, dtype=complex)
    if rho2.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho2.shape}")
    return -float(np.linalg.eigvalsh(partial_transpose(rho2, [0]))[0])
