"""Spin squeezing inequalities built from first and second collective moments.

Every criterion is reported as a signed margin, oriented so that a positive
value means the inequality is violated and the state is entangled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spin import AXES, CollectiveMoments, axis_index, product_state

DETECTION_TOLERANCE = 1e-9

OBSERVATION1_IDS = (
    "eq2a",
    "eq2b",
    "eq2c_x",
    "eq2c_y",
    "eq2c_z",
    "eq2d_x",
    "eq2d_y",
    "eq2d_z",
)


@dataclass(frozen=True)
class CriterionReport:
    margins: dict[str, float]
    detected: bool
    max_margin: float
    argmax_id: str

    @classmethod
    def from_margins(cls, margins: dict[str, float], tol: float = DETECTION_TOLERANCE):
        argmax_id = max(margins, key=margins.get)
        best = margins[argmax_id]
        return cls(dict(margins), best > tol, best, argmax_id)


def _others(k: int) -> tuple[int, int]:
    i, j = (a for a in range(3) if a != k)
    return i, j


def observation1_margins(m: CollectiveMoments) -> dict[str, float]:
    n = m.n
    k = m.k_vec
    var = m.variances
    out = {
        "eq2a": k.sum() - n * (n + 2) / 4,
        "eq2b": n / 2 - var.sum(),
    }
    for a in range(3):
        i, j = _others(a)
        out[f"eq2c_{AXES[a]}"] = k[i] + k[j] - n / 2 - (n - 1) * var[a]
    for a in range(3):
        i, j = _others(a)
        out[f"eq2d_{AXES[a]}"] = k[a] + n * (n - 2) / 4 - (n - 1) * (var[i] + var[j])
    return {key: float(out[key]) for key in OBSERVATION1_IDS}


def eval_observation1(
    m: CollectiveMoments, extras: bool = False, tol: float = DETECTION_TOLERANCE
) -> CriterionReport:
    """Evaluate the eight generalized spin squeezing inequalities.

    With ``extras=True`` the report also carries ``eq1`` (standard spin
    squeezing, best of the three squeezing axes, omitted when no axis
    applies) and ``case2`` (best axis pair).
    """
    if m.n < 2:
        raise ValueError("the inequalities need at least two qubits")
    margins = observation1_margins(m)
    if extras:
        eq1 = best_standard_squeezing(m)
        if eq1 is not None:
            margins["eq1"] = eq1
        margins["case2"] = best_dicke_criterion(m)
    return CriterionReport.from_margins(margins, tol)


def eval_standard_squeezing(m: CollectiveMoments, axes=("x", "y", "z")) -> float | None:
    """Margin of the standard squeezing inequality ``Var(J_a)/(<J_b>^2+<J_c>^2) >= 1/N``.

    ``axes[0]`` is the squeezed component, the other two carry the mean spin.
    Returns ``None`` when the mean spin in the ``b, c`` plane vanishes; the
    criterion says nothing there.
    """
    a, b, c = (axis_index(x) for x in axes)
    if len({a, b, c}) != 3:
        raise ValueError("axes must be a permutation of x, y, z")
    denom = m.j_vec[b] ** 2 + m.j_vec[c] ** 2
    if denom <= 1e-14:
        return None
    return float(1 / m.n - m.variances[a] / denom)


def best_standard_squeezing(m: CollectiveMoments) -> float | None:
    vals = [eval_standard_squeezing(m, (a,) + _others(a)) for a in range(3)]
    vals = [v for v in vals if v is not None]
    return max(vals) if vals else None


def eval_dicke_criterion(m: CollectiveMoments, axes=("x", "y")) -> float:
    """Margin of ``<J_a^2> + <J_b^2> <= (N^2 + N)/4``."""
    a, b = (axis_index(x) for x in axes)
    if a == b:
        raise ValueError("axes must differ")
    if m.n < 2:
        raise ValueError("the criterion needs at least two qubits")
    k = m.k_vec
    return float(k[a] + k[b] - (m.n**2 + m.n) / 4)


def best_dicke_criterion(m: CollectiveMoments) -> float:
    return max(eval_dicke_criterion(m, p) for p in ((0, 1), (0, 2), (1, 2)))


@dataclass(frozen=True)
class ExtremePoints:
    """Vertices of the separable polytope in ``(<Jx^2>, <Jy^2>, <Jz^2>)`` space.

    Row ``k`` of ``a_points``/``b_points`` is ``A_k``/``B_k``.
    """

    a_points: np.ndarray
    b_points: np.ndarray
    kappa: float


def _check_feasible(j_vec, n: int) -> np.ndarray:
    j = np.asarray(j_vec, dtype=float).reshape(3)
    if n < 1:
        raise ValueError("n must be at least 1")
    if np.linalg.norm(j) > n / 2 + 1e-12:
        raise ValueError(f"|J| = {np.linalg.norm(j):.6g} exceeds N/2 = {n / 2}")
    return j


def extreme_points(j_vec, n: int) -> ExtremePoints:
    j = _check_feasible(j_vec, n)
    kappa = (n - 1) / n
    a_pts = np.empty((3, 3))
    b_pts = np.empty((3, 3))
    for k in range(3):
        i, l = _others(k)
        perp = j[i] ** 2 + j[l] ** 2
        for pts in (a_pts, b_pts):
            pts[k, i] = n / 4 + kappa * j[i] ** 2
            pts[k, l] = n / 4 + kappa * j[l] ** 2
        a_pts[k, k] = n**2 / 4 - kappa * perp
        b_pts[k, k] = j[k] ** 2 + perp / n
    return ExtremePoints(a_pts, b_pts, kappa)


@dataclass(frozen=True)
class _ExtremeGeometry:
    plus: np.ndarray
    minus: np.ndarray
    c: float
    p: float


def _extreme_geometry(axis, j_vec, n: int) -> _ExtremeGeometry:
    k = axis_index(axis)
    j = _check_feasible(j_vec, n)
    big_j = n / 2
    perp = np.delete(j, k)
    c = math.sqrt(max(0.0, 1 - float(perp @ perp) / big_j**2))
    if c < 1e-12:
        raise ValueError("mean spin lies in the plane orthogonal to the axis; c = 0")
    p = (1 + j[k] / (big_j * c)) / 2
    if p < -1e-12 or p > 1 + 1e-12:
        raise ValueError(f"infeasible mean spin: mixing ratio p = {p:.6g}")
    p = min(max(p, 0.0), 1.0)
    plus = j / big_j
    plus[k] = c
    minus = plus.copy()
    minus[k] = -c
    # renormalize against rounding in c
    plus /= np.linalg.norm(plus)
    minus /= np.linalg.norm(minus)
    return _ExtremeGeometry(plus, minus, c, p)


def separable_extreme_A(axis, j_vec, n: int) -> np.ndarray:
    """Separable state whose moments sit on the vertex ``A_axis``.

    A mixture of two fully polarized product states whose Bloch vectors differ
    only in the sign of the ``axis`` component.
    """
    g = _extreme_geometry(axis, j_vec, n)
    return g.p * product_state([g.plus] * n) + (1 - g.p) * product_state([g.minus] * n)


def separable_extreme_B(axis, j_vec, n: int) -> tuple[np.ndarray, float]:
    """Separable state at (or next to) the vertex ``B_axis``, and its gap.

    When ``M = N p`` is an integer the state is the pure product
    ``|psi+>^M |psi->^(N-M)`` and the gap is 0. Otherwise it mixes the two
    neighbouring integer splits with weights ``1 - eps`` and ``eps``; all
    moments agree with ``B_axis`` except ``<J_axis^2>``, which exceeds it by
    ``gap = c^2 (eps - eps^2) <= 1/4``.
    """
    g = _extreme_geometry(axis, j_vec, n)
    big_m = n * g.p
    m_floor = math.floor(big_m)
    eps = big_m - m_floor
    if abs(eps) < 1e-12 or abs(1 - eps) < 1e-12:
        m_int = int(round(big_m))
        return product_state([g.plus] * m_int + [g.minus] * (n - m_int)), 0.0
    low = product_state([g.plus] * m_floor + [g.minus] * (n - m_floor))
    high = product_state([g.plus] * (m_floor + 1) + [g.minus] * (n - m_floor - 1))
    return (1 - eps) * low + eps * high, g.c**2 * (eps - eps**2)


def _check_orthogonal(o) -> np.ndarray:
    o = np.asarray(o, dtype=float)
    if o.shape != (3, 3) or np.max(np.abs(o @ o.T - np.eye(3))) > 1e-10:
        raise ValueError("expected an orthogonal 3x3 matrix")
    return o


def rotate_moments(m: CollectiveMoments, o) -> CollectiveMoments:
    """Moments in the frame whose axes are the rows of ``o``."""
    o = _check_orthogonal(o)
    if not m.has_full_corr:
        raise ValueError("rotating moments needs the full correlation matrix")
    corr = o @ m.corr @ o.T
    return CollectiveMoments(m.n, o @ m.j_vec, (corr + corr.T) / 2)


@dataclass(frozen=True)
class DirectionReport:
    """Result of optimizing the measurement frame.

    ``rotation`` has the optimal axes as rows, ordered by ascending eigenvalue
    of ``X = (N-1) gamma + C``.
    """

    rotation: np.ndarray
    report: CriterionReport
    x_eigenvalues: np.ndarray
    eq2c_threshold: float
    eq2d_threshold: float
    eq2c_margin: float = field(init=False)
    eq2d_margin: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "eq2c_margin", float(self.eq2c_threshold - self.x_eigenvalues[0]))
        object.__setattr__(self, "eq2d_margin", float(self.x_eigenvalues[-1] - self.eq2d_threshold))

    @property
    def eq2c_violated(self) -> bool:
        return self.eq2c_margin > DETECTION_TOLERANCE

    @property
    def eq2d_violated(self) -> bool:
        return self.eq2d_margin > DETECTION_TOLERANCE


def x_matrix(m: CollectiveMoments) -> np.ndarray:
    if not m.has_full_corr:
        raise ValueError("direction optimization needs the full correlation matrix")
    return (m.n - 1) * m.cov + m.corr


def optimal_directions(m: CollectiveMoments) -> DirectionReport:
    """Frame that diagonalizes ``X = (N-1) gamma + C``.

    In that frame the best ``eq2c``/``eq2d`` margins over all frames are
    attained; ``eq2a`` and ``eq2b`` do not depend on the frame. A violation of
    ``eq2c`` exists in some frame iff ``min eig X < Tr C - N/2``, and of
    ``eq2d`` iff ``max eig X > (N-1) Tr gamma - N(N-2)/4``.
    """
    x = x_matrix(m)
    w, v = np.linalg.eigh((x + x.T) / 2)
    o = v.T.copy()
    if np.linalg.det(o) < 0:
        o[-1] *= -1
    n = m.n
    return DirectionReport(
        rotation=o,
        report=eval_observation1(rotate_moments(m, o)),
        x_eigenvalues=w,
        eq2c_threshold=float(np.trace(m.corr) - n / 2),
        eq2d_threshold=float((n - 1) * np.trace(m.cov) - n * (n - 2) / 4),
    )
