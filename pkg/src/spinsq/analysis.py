"""Critical temperatures of entanglement criteria and bound-entanglement windows."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .criteria import (
    DETECTION_TOLERANCE,
    best_dicke_criterion,
    best_standard_squeezing,
    eval_observation1,
    optimal_directions,
)
from .models import ModelSpec, site_symmetries, thermal_state
from .separability import CCNR_TOLERANCE, NPT_TOLERANCE, bipartition_verdicts, two_qubit_ppt_margin
from .spin import avg_two_qubit_state

CRITERIA = ("eqs2", "eq1", "case2", "ppt", "ccnr")
THRESHOLDS = {
    "eqs2": DETECTION_TOLERANCE,
    "eq1": DETECTION_TOLERANCE,
    "case2": DETECTION_TOLERANCE,
    "ppt": NPT_TOLERANCE,
    "ccnr": CCNR_TOLERANCE,
}

T_MIN = 0.02
DEFAULT_T_MAX = 10.0
DEFAULT_GRID_POINTS = 200
DEFAULT_TOL = 1e-4


class BracketExceededError(RuntimeError):
    """The criterion still fires at ``t_max``; the search range must grow."""


def _check_criterion(criterion: str) -> str:
    if criterion not in CRITERIA:
        raise ValueError(f"unknown criterion {criterion!r}; choose from {CRITERIA}")
    return criterion


def detection_margin(
    model: ModelSpec,
    t: float,
    criterion: str,
    optimize_directions: bool = False,
    workers: int | None = None,
    use_symmetry: bool = True,
) -> float:
    """Signed margin of ``criterion`` on the thermal state at temperature ``t``.

    Positive means the criterion detects entanglement. ``eqs2`` uses the
    canonical axes unless ``optimize_directions`` is set. ``eq1`` returns
    ``-inf`` when the mean spin vanishes (the criterion does not apply).
    ``ppt`` and ``ccnr`` visit one bipartition per orbit of the model's site
    symmetry group unless ``use_symmetry`` is false.
    """
    _check_criterion(criterion)
    point = thermal_state(model, t)
    if criterion == "eqs2":
        if optimize_directions:
            d = optimal_directions(point.moments)
            return max(d.report.max_margin, d.eq2c_margin, d.eq2d_margin)
        return eval_observation1(point.moments).max_margin
    if criterion == "eq1":
        m = best_standard_squeezing(point.moments)
        return -math.inf if m is None else m
    if criterion == "case2":
        return best_dicke_criterion(point.moments)
    syms = site_symmetries(model) if use_symmetry else None
    if criterion == "ppt":
        v = bipartition_verdicts(point.state, True, False, workers, False, syms)
        return -v.min_pt_eigenvalue
    v = bipartition_verdicts(point.state, False, True, workers, False, syms)
    return v.max_ccnr_margin


@dataclass(frozen=True)
class CriticalTemperature:
    """Outcome of a critical-temperature search.

    ``t_c`` and ``bracket`` are ``None`` when the criterion never fires on
    the grid.
    """

    model: ModelSpec
    criterion: str
    t_c: float | None
    bracket: tuple[float, float] | None
    detected_below: bool
    margin_lo: float | None = None
    margin_hi: float | None = None

    @property
    def detected(self) -> bool:
        return self.t_c is not None


def critical_temperature(
    model: ModelSpec,
    criterion: str,
    t_max: float = DEFAULT_T_MAX,
    grid_points: int = DEFAULT_GRID_POINTS,
    tol: float = DEFAULT_TOL,
    optimize_directions: bool = False,
    workers: int | None = None,
) -> CriticalTemperature:
    """Highest temperature at which ``criterion`` stops detecting the thermal state.

    The log-spaced grid on ``[0.02, t_max]`` is walked downward from
    ``t_max``; the first detecting grid point marks the highest sign change,
    which is then bisected to width ``tol``. Detection regions need not be
    connected.

    Raises
    ------
    BracketExceededError
        If the criterion already fires at ``t_max``.
    """
    _check_criterion(criterion)
    if not t_max > T_MIN:
        raise ValueError(f"t_max must exceed {T_MIN}")
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    if not tol > 0:
        raise ValueError("tol must be positive")
    threshold = THRESHOLDS[criterion]

    def margin(t):
        return detection_margin(model, t, criterion, optimize_directions, workers)

    grid = np.geomspace(T_MIN, t_max, grid_points)
    m_hi = margin(grid[-1])
    if m_hi > threshold:
        raise BracketExceededError(
            f"{criterion} still detects {model.label} at t_max={t_max:g}; raise t_max"
        )
    t_hi = grid[-1]
    for t in grid[-2::-1]:
        m = margin(t)
        if m > threshold:
            t_lo, m_lo = float(t), m
            break
        t_hi, m_hi = float(t), m
    else:
        return CriticalTemperature(model, criterion, None, None, False)

    while t_hi - t_lo > tol:
        mid = 0.5 * (t_lo + t_hi)
        m = margin(mid)
        if m > threshold:
            t_lo, m_lo = mid, m
        else:
            t_hi, m_hi = mid, m
    return CriticalTemperature(
        model, criterion, 0.5 * (t_lo + t_hi), (t_lo, t_hi), True, float(m_lo), float(m_hi)
    )


def table1(
    n_range=range(3, 10),
    families=("heisenberg_ring", "xy_ring"),
    criteria=("eqs2", "ppt"),
    **search,
) -> list[CriticalTemperature]:
    """Critical temperatures for ring models, ordered by family, criterion, then size."""
    out = []
    for family in families:
        for criterion in criteria:
            for n in n_range:
                out.append(critical_temperature(ModelSpec(family, n), criterion, **search))
    return out


@dataclass(frozen=True)
class BoundWindow:
    """Temperatures between the PPT and the spin-squeezing critical points.

    The thermal state at ``midpoint`` is checked to be PPT for every
    bipartition, undetected by CCNR, with a separable average two-qubit state,
    while still violating the spin squeezing inequalities.
    """

    model: ModelSpec
    t_ppt: float
    t_eqs2: float
    min_pt_eigenvalue: float
    eqs2_margin: float
    max_ccnr_margin: float
    avg2_ppt_margin: float

    @property
    def width(self) -> float:
        return self.t_eqs2 - self.t_ppt

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.t_ppt + self.t_eqs2)

    @property
    def verified(self) -> bool:
        return (
            self.min_pt_eigenvalue >= -NPT_TOLERANCE
            and self.eqs2_margin > DETECTION_TOLERANCE
            and self.max_ccnr_margin <= CCNR_TOLERANCE
            and self.avg2_ppt_margin <= 0
        )


def window_from(
    model: ModelSpec,
    t_eqs2: float | None,
    t_ppt: float | None,
    tol: float = DEFAULT_TOL,
    workers: int | None = None,
) -> BoundWindow | None:
    if t_eqs2 is None:
        return None
    t_ppt = 0.0 if t_ppt is None else t_ppt
    if t_eqs2 <= t_ppt + tol:
        return None
    mid = 0.5 * (t_ppt + t_eqs2)
    point = thermal_state(model, mid)
    v = bipartition_verdicts(point.state, workers=workers, validate=False, symmetries=site_symmetries(model))
    return BoundWindow(
        model,
        t_ppt,
        t_eqs2,
        v.min_pt_eigenvalue,
        eval_observation1(point.moments).max_margin,
        v.max_ccnr_margin,
        two_qubit_ppt_margin(avg_two_qubit_state(point.state)),
    )


def bound_window(
    model: ModelSpec,
    t_max: float = DEFAULT_T_MAX,
    grid_points: int = DEFAULT_GRID_POINTS,
    tol: float = DEFAULT_TOL,
    workers: int | None = None,
) -> BoundWindow | None:
    """Bound-entanglement window of ``model``, or ``None`` if PPT already reaches as high."""
    search = dict(t_max=t_max, grid_points=grid_points, tol=tol, workers=workers)
    t_eqs2 = critical_temperature(model, "eqs2", **search).t_c
    t_ppt = critical_temperature(model, "ppt", **search).t_c
    return window_from(model, t_eqs2, t_ppt, tol, workers)


@dataclass(frozen=True)
class SweepRow:
    j2: float
    t_c: dict[str, float | None]
    window: tuple[float, float] | None = field(default=None)


def _extending_search(model, criterion, tol, max_doublings, search):
    search = dict(search)
    t_max = search.pop("t_max", DEFAULT_T_MAX)
    for attempt in range(max_doublings + 1):
        try:
            return critical_temperature(model, criterion, t_max=t_max, tol=tol, **search).t_c
        except BracketExceededError:
            if attempt == max_doublings:
                raise
            t_max *= 2.0


def j2_sweep(
    j2_min: float = -1.0,
    j2_max: float = 2.0,
    steps: int = 13,
    criteria=("eqs2", "ppt", "ccnr"),
    tol: float = DEFAULT_TOL,
    max_doublings: int = 4,
    **search,
) -> list[SweepRow]:
    """Critical temperatures of the 4-qubit cluster model across ``j2``.

    ``steps = 1`` evaluates ``j2_min`` only. The window is reported when both
    ``eqs2`` and ``ppt`` are requested and ``t_eqs2 > t_ppt + tol``.

    Large ``j2`` raises the energy scale, so a criterion can still detect at
    ``t_max``; the upper end is then doubled (up to ``max_doublings`` times)
    rather than aborting the sweep.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    for c in criteria:
        _check_criterion(c)
    rows = []
    for j2 in np.linspace(j2_min, j2_max, steps) if steps > 1 else [j2_min]:
        model = ModelSpec("cluster4", 4, float(j2))
        tcs = {c: _extending_search(model, c, tol, max_doublings, search) for c in criteria}
        window = None
        if "eqs2" in tcs and "ppt" in tcs and tcs["eqs2"] is not None:
            t_ppt = tcs["ppt"] or 0.0
            if tcs["eqs2"] > t_ppt + tol:
                window = (t_ppt, tcs["eqs2"])
        rows.append(SweepRow(float(j2), tcs, window))
    return rows
