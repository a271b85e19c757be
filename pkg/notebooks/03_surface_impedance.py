# coding: utf-8

# # Surface impedance in the gaps
#
# Inside a gap m_+ and m_- are real, so the surface impedances Z_R and Z_L are
# real too.  They come from the Weyl functions, and independently from the
# decaying Floquet solutions; the two routes should match.

# In[1]:

from pathlib import Path

import numpy as np

from zakweyl import band_edges, make_ssh, make_trimer
from zakweyl.errors import DirichletPole, NotInGap
from zakweyl.impedance import impedance_from_floquet, surface_impedance
from zakweyl.svg import line_plot
from zakweyl.weyl import dirichlet_eigenvalues

OUT = Path(__file__).with_name("out")
OUT.mkdir(exist_ok=True)


def scan(cell, lo, hi, n=400):
    lam = np.linspace(lo, hi, n)
    zr, zl = np.full(n, np.nan), np.full(n, np.nan)
    worst = 0.0
    for i, x in enumerate(lam):
        try:
            z = surface_impedance(cell, x)
        except (NotInGap, DirichletPole):
            continue
        zr[i], zl[i] = z.z_right, z.z_left
        fr, fl = impedance_from_floquet(cell, x)
        worst = max(worst, abs(fr - z.z_right), abs(fl - z.z_left))
    return lam, zr, zl, worst


# In[2]:

for name, cell in (("ssh", make_ssh(1, 2)), ("trimer", make_trimer())):
    bands = band_edges(cell)
    print(name, "Dirichlet eigenvalues:", np.round(dirichlet_eigenvalues(cell), 6))
    lam, zr, zl, worst = scan(cell, bands[0].lambda_min - 1, bands[-1].lambda_max + 1)
    print(f"  max route difference {worst:.1e}")
    # large values near poles of Z would swamp the plot
    clip = lambda v: np.where(np.abs(v) < 5, v, np.nan)  # noqa: E731
    (OUT / f"{name}_impedance.svg").write_text(line_plot(
        [("Z_R", lam, clip(zr)), ("Z_L", lam, clip(zl))],
        title=f"{name} surface impedance", xlabel="lambda", ylabel="Z"))
