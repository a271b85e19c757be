# coding: utf-8

# # SSH and Rice-Mele: Wilson loop against the Weyl formula
#
# The SSH chain has a quantised Zak phase that flips when t1 and t2 are
# swapped.  A staggered potential (Rice-Mele) breaks the mirror symmetry and
# the phase varies continuously; both engines should still agree.

# In[1]:

import math
from pathlib import Path

import numpy as np

from zakweyl import compare_methods, make_rice_mele, make_ssh
from zakweyl.svg import heatmap, line_plot
from zakweyl.transfer import band_gap_width

OUT = Path(__file__).with_name("out")
OUT.mkdir(exist_ok=True)


# SSH at a few hopping pairs.

# In[2]:

for t1, t2 in ((1, 2), (2, 1), (0.5, 3), (3, 0.5)):
    c = compare_methods(make_ssh(t1, t2), 1)
    print(f"t1={t1:<4} t2={t2:<4} wilson {c.wilson.value:+.6f}  weyl {c.weyl.value:+.6f}  diff {c.discrepancy_mod_2pi:.1e}")


# The step as t2/t1 crosses 1.  Right at the crossing the gap closes and
# both engines refuse to run, so the point is skipped.

# In[3]:

ratios = np.geomspace(0.2, 5, 41)
gammas = []
for r in ratios:
    cell = make_ssh(1.0, r)
    gammas.append(abs(compare_methods(cell, 1).weyl.value) if band_gap_width(cell, 1) > 1e-3 else np.nan)
(OUT / "ssh_step.svg").write_text(line_plot([("|gamma|", ratios, gammas)], title="SSH lower band",
                                            xlabel="t2/t1", ylabel="Zak phase"))


# Rice-Mele sweep over (t2/t1, Delta) on a coarse lattice.

# In[4]:

ratios = np.linspace(0.2, 5, 11)
deltas = np.linspace(-1, 1, 11)
gamma = np.full((len(deltas), len(ratios)), np.nan)
worst = 0.0
for j, d in enumerate(deltas):
    for i, r in enumerate(ratios):
        cell = make_rice_mele(1.0, r, d)
        if band_gap_width(cell, 1) < 1e-3:
            continue
        c = compare_methods(cell, 1)
        gamma[j, i] = c.weyl.value
        worst = max(worst, c.discrepancy_mod_2pi)
print(f"largest Wilson/Weyl discrepancy on the lattice: {worst:.2e}")
(OUT / "rice_mele_sweep.svg").write_text(heatmap(ratios, deltas, gamma, title="Rice-Mele lower band",
                                                 xlabel="t2/t1", ylabel="Delta", vmin=-math.pi, vmax=math.pi))
