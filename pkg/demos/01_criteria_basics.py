"""Spin squeezing inequalities on a handful of textbook states.

Run with ``python demos/01_criteria_basics.py``.

Every quantity below only uses first and second moments of the collective
spin J = (1/2) sum sigma. A positive margin means the inequality is violated,
which certifies entanglement.
"""

import numpy as np

from spinsq import (
    eval_observation1,
    extreme_points,
    moments_from_state,
    reference_state,
    separable_extreme_B,
)
from spinsq.sampling import random_separable_state

np.set_printoptions(precision=4, suppress=True)


def show(name, rho):
    report = eval_observation1(moments_from_state(rho), extras=True)
    verdict = f"entangled via {report.argmax_id}" if report.detected else "not detected"
    print(f"{name:<28} max margin {report.max_margin:+8.4f}   {verdict}")


# %% Maximally violating states
# A product of two-qubit singlets has <J_l> = <J_l^2> = 0 on every axis, so the
# variance-sum inequality (eq2b) fails by exactly N/2.
for n in (2, 4, 6):
    show(f"singlet pairs, N={n}", reference_state("singlet_pairs", n))

# The half-filled Dicke state has a huge <Jx^2> + <Jy^2> and no z fluctuations.
for n in (4, 6):
    show(f"Dicke half filling, N={n}", reference_state("dicke_half", n))

show("GHZ, N=4", reference_state("ghz", 4))

# %% Separable states never violate
rng = np.random.default_rng(1)
worst = max(
    eval_observation1(moments_from_state(random_separable_state(rng, 5, 6))).max_margin
    for _ in range(500)
)
print(f"\nworst margin over 500 random separable 5-qubit states: {worst:+.2e}")

# %% The polytope is tight
# For a mean spin J the separable region in (<Jx^2>, <Jy^2>, <Jz^2>) is a
# polytope; its vertices are reachable by explicit separable states, up to a
# gap of at most 1/4 at the B vertices when N p is not an integer.
j = np.array([0.7, -0.4, 1.1])
pts = extreme_points(j, 4)
print("\nvertices A_k (rows):\n", pts.a_points)
print("vertices B_k (rows):\n", pts.b_points)
rho, gap = separable_extreme_B("z", j, 4)
print("moments of the B_z construction:", moments_from_state(rho).k_vec, f"(gap {gap:.4f})")
