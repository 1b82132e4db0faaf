"""Dev sanity checks for galerkin.py."""
import warnings

import numpy as np

from cantarray.beam import beam_modes
from cantarray.kernel import band_edge_gammas
from cantarray.model import (AlternatingProfile, BoundaryCondition,
                             DeviceGeometry, DiscreteProfile,
                             GalerkinSettings, TabulatedProfile,
                             UniformProfile, preset_device)
from cantarray import galerkin as gk
from cantarray import spectrum as sp

geo, prof, bc = preset_device("jap1-calibrated")
L = geo.beam_length
l = prof.length
settings = GalerkinSettings(basis_size=8)

# 1. uniform oracle: levels match closed form
k_max, n_max = 4, 4
lv_exact = sp.solve_uniform(geo, prof, bc, n_max, k_max)
alpha_max = band_edge_gammas(k_max)[-1] / l * 0.9999
import time
t0 = time.time()
lv_gal = gk.solve(geo, prof, bc, alpha_max, settings)
t1 = time.time()
print(f"1. galerkin uniform solve: {len(lv_gal)} levels in {t1-t0:.2f}s")
worst = 0.0
matched = 0
for ex in lv_exact:
    a_ex = ex.gamma / l
    if a_ex > alpha_max or ex.n > settings.basis_size:
        continue
    best = min(lv_gal, key=lambda g: abs(g.alpha - a_ex))
    rel = abs(best.alpha - a_ex) / a_ex
    if ex.n <= 4:
        worst = max(worst, rel)
        matched += 1
        if best.dominant_n != ex.n:
            print(f"   MISMATCH dominant_n: exact (n={ex.n},k={ex.k}) got {best.dominant_n}")
print(f"   matched {matched} levels, worst rel: {worst:.2e}")

# participation are coordinate axes
pmax = min(np.max(np.abs(lv.participation)) for lv in lv_gal)
print("   min dominant participation:", pmax)

# count levels: basis 8, 4 bands -> 32 expected in range (all n<=8)
print("   level count (expect 32):", len(lv_gal))

# 2. rho = 0 tabulated -> bare beam
prof0 = TabulatedProfile(x=(0.0, L/2, L), length=(l, l, l), density=(0.0, 0.0, 0.0))
basis = beam_modes(bc, 4)
m = gk.assemble(2.0e6, geo, prof0, basis)
expect = np.diag(np.array([b.beta for b in basis])**4 - (2.0e6*L)**4)
print("2. rho=0 matrix == diag(beta^4 - (aL)^4):", np.max(np.abs(m - expect)))

# 3. symmetry + off-diagonal smallness for uniform-as-tabulated
rho_u = 2.0 * geo.count_per_side / L
prof_u = TabulatedProfile(x=(0.0, L/3, 2*L/3, L), length=(l,)*4, density=(rho_u,)*4)
a_test = 2.5e6
m_tab = gk.assemble(a_test, geo, prof_u, basis)
m_uni = gk.assemble(a_test, geo, prof, basis)
print("3. tabulated-const vs uniform exact:", np.max(np.abs(m_tab - m_uni)) / np.max(np.abs(m_uni)))
print("   off-diagonal max:", np.max(np.abs(m_tab - np.diag(np.diag(m_tab)))))
print("   asymmetry:", np.max(np.abs(m_tab - m_tab.T)))

# 4. discrete midpoint comb vs continuum
n_side = 200
pos = tuple((j - 0.5) * L / n_side for j in range(1, n_side + 1))
prof_d = DiscreteProfile(positions=pos, lengths=(l,) * n_side)
geo200 = DeviceGeometry(
    beam_length=geo.beam_length, beam_width=geo.beam_width,
    beam_rigidity=geo.beam_rigidity, beam_linear_density=geo.beam_linear_density,
    cantilever_width=geo.cantilever_width, cantilever_rigidity=geo.cantilever_rigidity,
    cantilever_linear_density=geo.cantilever_linear_density, count_per_side=n_side)
lv_cont = sp.solve_uniform(geo200, prof, bc, 4, 2)
a2_max = band_edge_gammas(2)[-1] / l * 0.9999
t0 = time.time()
lv_disc = gk.solve(geo200, prof_d, bc, a2_max, settings)
t1 = time.time()
print(f"4. discrete comb solve: {len(lv_disc)} levels in {t1-t0:.2f}s")
worst_d = 0.0
for ex in lv_cont:
    a_ex = ex.gamma / l
    if a_ex > a2_max or ex.n > 4:
        continue
    best = min(lv_disc, key=lambda g: abs(g.alpha - a_ex))
    worst_d = max(worst_d, abs(best.alpha - a_ex) / a_ex)
print("   worst rel vs continuum (n<=4,k<=2):", worst_d)

# 5. alternating native vs closed form
prof_alt = AlternatingProfile(length1=5e-7, length2=4e-7, width1=2e-7, width2=2e-7,
                              count1=10, count2=10)
lv_alt_exact = sp.solve_alternating(geo, prof_alt, bc, 4, 3)
a3 = max(lv.gamma for lv in lv_alt_exact) / prof_alt.length1 * 1.001
lv_alt_gal = gk.solve(geo, prof_alt, bc, a3, settings)
worst_a = 0.0
for ex in lv_alt_exact:
    if ex.n > 4:
        continue
    a_ex = ex.gamma / prof_alt.length1
    best = min(lv_alt_gal, key=lambda g: abs(g.alpha - a_ex))
    worst_a = max(worst_a, abs(best.alpha - a_ex) / a_ex)
print("5. alternating native vs closed form, worst rel:", worst_a)

# 6. linear taper: root count by coarse vs fine scan
lo_taper = TabulatedProfile(
    x=tuple(np.linspace(0, L, 9)),
    length=tuple(5e-7 * (1 + xx / L) for xx in np.linspace(0, L, 9)),
    density=(rho_u / 10,) * 9)
a_taper_max = 1.6e6  # below first forbidden zone (1.875/1e-6 = 1.875e6)
t0 = time.time()
lv_taper = gk.solve(geo, lo_taper, bc, a_taper_max, settings)
t1 = time.time()
print(f"6. taper solve: {len(lv_taper)} levels in {t1-t0:.2f}s")
lv_taper_fine = gk.solve(geo, lo_taper, bc, a_taper_max, settings, scan_points=900)
print("   fine-scan count:", len(lv_taper_fine),
      " same:", len(lv_taper) == len(lv_taper_fine))
if len(lv_taper) == len(lv_taper_fine):
    d = max(abs(a.alpha - b.alpha) / b.alpha for a, b in zip(lv_taper, lv_taper_fine))
    print("   root agreement coarse vs fine:", d)
# taper spectrum differs from uniform
lv_uni_seg = [lv for lv in sp.solve_uniform(geo, prof, bc, 8, 1) if lv.gamma / l <= a_taper_max]
print("   taper alphas:", [f"{lv.alpha:.4e}" for lv in lv_taper[:4]])
print("   uniform alphas:", [f"{lv.gamma/l:.4e}" for lv in lv_uni_seg[:4]])

# 7. basis convergence M=8 -> 12 on a gentle smooth profile
gentle = TabulatedProfile(
    x=tuple(np.linspace(0, L, 9)),
    length=tuple(5e-7 * (1 + 0.1 * xx / L) for xx in np.linspace(0, L, 9)),
    density=tuple(rho_u * (1 + 0.2 * np.sin(np.pi * xx / L)) for xx in np.linspace(0, L, 9)))
a_g = 3.3e6  # below first forbidden start 1.875/5.5e-7 = 3.41e6
lv8 = gk.solve(geo, gentle, bc, a_g, GalerkinSettings(basis_size=8))
lv12 = gk.solve(geo, gentle, bc, a_g, GalerkinSettings(basis_size=12))
print(f"7. gentle profile: M=8 {len(lv8)} levels, M=12 {len(lv12)} levels")
dmax = max(abs(a.alpha - b.alpha) / b.alpha for a, b in zip(lv8[:4], lv12[:4]))
print("   level shift M=8->12 (lowest 4):", dmax)
d_all = [abs(a.alpha - b.alpha) / b.alpha for a, b in zip(lv8, lv12)]
print("   per-level shifts:", ["%.1e" % v for v in d_all])

# 8. forbidden intervals
for itv in gk.forbidden_alpha_intervals(lo_taper, 1e7)[:3]:
    print(f"8. forbidden k={itv.k}: [{itv.lo:.5e}, {itv.hi:.5e}]")
