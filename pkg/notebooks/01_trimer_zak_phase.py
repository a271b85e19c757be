# coding: utf-8

# # Zak phase of the trimer from the Weyl function
#
# The trimer cell has hoppings (1.2, 1.2, 1.5) and on-site energies (0, 1, 0).
# It is mirror symmetric, so every isolated band has a quantised Zak phase.
# We compute band 1 three ways: the Wilson loop, the Weyl-function integral,
# and the edge-phase formula that only needs arg m_+ at the two band edges.

# In[1]:

import math
from pathlib import Path

import numpy as np

from zakweyl import band_edges, make_trimer, zak_wilson
from zakweyl.svg import line_plot
from zakweyl.transfer import dispersion
from zakweyl.weyl import weyl_core
from zakweyl.zak import berry_connection_weyl_array, zak_quantised_symmetric, zak_weyl

OUT = Path(__file__).with_name("out")
OUT.mkdir(exist_ok=True)
cell = make_trimer()


# Band structure first.  All three bands are separated by open gaps.

# In[2]:

for b in band_edges(cell):
    print(f"band {b.n}: [{b.lambda_min:+.6f}, {b.lambda_max:+.6f}]  isolated={b.isolated}")


# Wilson loop and Weyl integral on the same 500-point grid.

# In[3]:

w = zak_wilson(cell, 1, 500)
g = zak_weyl(cell, 1, 500)
print(f"wilson       {w.value:+.10f}")
print(f"weyl (k)     {g.value:+.10f}   err estimate {g.err_estimate:.1e}")
for rule in ("lambda-uniform", "lambda-tanh-sinh"):
    print(f"weyl ({rule}) {zak_weyl(cell, 1, 500, rule=rule).value:+.10f}")


# The uniform lambda grid lands near 3.129, a reminder that the edge
# singularities of the lambda integrand make naive grids converge slowly.
#
# Mirror symmetry pins |a_0 m_+| = 1 on the band, so only the edge phases matter:

# In[4]:

q = zak_quantised_symmetric(cell, 1)
print(f"phi(lambda_min) = {q.phi_min:.4f}, phi(lambda_max) = {q.phi_max:.4f}, gamma = {q.gamma.value:+.6f}")


# Plot |a_0 m_+| and arg m_+ along band 1, plus the Weyl Berry connection in k.

# In[5]:

ks = np.linspace(0.01, math.pi - 0.01, 300)
lam = np.asarray(dispersion(cell, 1, ks))
m, _, _ = weyl_core(cell, lam.astype(complex), "+")
(OUT / "trimer_m_plus.svg").write_text(line_plot(
    [("|a0 m+|", lam, cell.a0 * np.abs(m)), ("arg m+", lam, np.angle(m))],
    title="trimer band 1", xlabel="lambda", ylabel="value"))

kk = np.linspace(-math.pi + 0.01, math.pi - 0.01, 400)
kk = kk[np.abs(kk) > 1e-3]
(OUT / "trimer_connection.svg").write_text(line_plot(
    [("A(k)", kk, berry_connection_weyl_array(cell, 1, kk))],
    title="Weyl Berry connection, trimer band 1", xlabel="k", ylabel="A"))
print("figures in", OUT)
