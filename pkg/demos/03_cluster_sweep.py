"""Second-neighbour coupling widens the bound-entanglement window.

Run with ``python demos/03_cluster_sweep.py``.

The four-qubit model has nearest-neighbour Heisenberg bonds around the ring
plus diagonal bonds of strength j2. Increasing j2 pushes the squeezing
temperature up while the PPT temperature stays put until j2 ~ 1.
"""

import numpy as np

from spinsq import j2_sweep

rows = j2_sweep(-1.0, 2.0, 13, criteria=("eqs2", "ppt", "ccnr"))

print(f"{'j2':>6}{'eqs2':>9}{'ppt':>9}{'ccnr':>9}   window")
for row in rows:
    t = {k: (v if v is not None else np.nan) for k, v in row.t_c.items()}
    window = "" if row.window is None else f"{row.window[0]:.3f} .. {row.window[1]:.3f}"
    print(f"{row.j2:>6.2f}{t['eqs2']:>9.3f}{t['ppt']:>9.3f}{t['ccnr']:>9.3f}   {window}")

# a crude text plot of the window width
print()
for row in rows:
    width = 0.0 if row.window is None else row.window[1] - row.window[0]
    print(f"{row.j2:>6.2f} |" + "#" * int(round(width * 20)))
