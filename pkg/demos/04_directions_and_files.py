"""Choosing measurement axes, and moving data in and out of files.

Run with ``python demos/04_directions_and_files.py``.

The inequalities are stated for a fixed coordinate frame. When the full
second-moment matrix is known, the frame maximising the violation follows
from a single symmetric eigenproblem, so a state measured in a "bad" frame
can still be caught.
"""

import tempfile
from pathlib import Path

import numpy as np

from spinsq import (
    CollectiveMoments,
    eval_observation1,
    moments_from_state,
    optimal_directions,
    reference_state,
    rotate_moments,
)
from spinsq.cli import main
from spinsq.io import write_moments_file, write_state_file
from spinsq.sampling import random_density_matrix, random_rotation

rng = np.random.default_rng(3)

# %% Hide an anisotropic state in a random frame
# Noisy Dicke state: detected by eq2c along z in its own frame.
rho = 0.8 * reference_state("dicke_half", 4) + 0.2 * random_density_matrix(rng, 4)
m = moments_from_state(rho)
frame = random_rotation(rng)
hidden = rotate_moments(m, frame)

print("own frame      :", f"{eval_observation1(m).max_margin:+.4f}")
print("random frame   :", f"{eval_observation1(hidden).max_margin:+.4f}")

d = optimal_directions(hidden)
print("optimal frame  :", f"{d.report.max_margin:+.4f}",
      f"(eq2c {d.eq2c_margin:+.4f}, eq2d {d.eq2d_margin:+.4f})")
print("recovered axes (rows):\n", np.round(d.rotation, 4))

# %% Same thing through the command line
with tempfile.TemporaryDirectory() as tmp:
    moments_path = Path(tmp) / "hidden.txt"
    write_moments_file(moments_path, hidden)
    print("\n$ spinsq directions --moments hidden.txt")
    main(["directions", "--moments", str(moments_path)])

    state_path = Path(tmp) / "singlet.txt"
    write_state_file(state_path, reference_state("singlet_pairs", 2))
    print("\n$ spinsq check --state singlet.txt")
    main(["check", "--state", str(state_path)])

# Moments without cross correlations still support the fixed-frame check,
# but not the direction optimisation.
partial = CollectiveMoments.from_jk(4, [0, 0, 0], m.k_vec)
print("\nfixed-frame check from (J, K) only:", eval_observation1(partial).argmax_id)
