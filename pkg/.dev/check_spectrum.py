"""Dev sanity checks for spectrum.py (not part of the package)."""
import numpy as np
from scipy.optimize import brentq

from cantarray.beam import beam_roots
from cantarray.kernel import band_edge_gammas, shear_kernel
from cantarray.model import (AlternatingProfile, BoundaryCondition,
                             DeviceGeometry, DimensionlessParams,
                             UniformProfile, dimensionless)
from cantarray import spectrum as sp

rng = np.random.default_rng(42)

geo = DeviceGeometry(
    beam_length=1.07e-5, beam_width=4e-7,
    beam_rigidity=2.1e-17, beam_linear_density=8.4e-10,
    cantilever_width=2e-7,
    cantilever_rigidity=1.05e-17, cantilever_linear_density=4.2e-10,
    count_per_side=20)
prof = UniformProfile(length=5e-7)
bc = BoundaryCondition.CLAMPED_CLAMPED
params = dimensionless(geo, prof)
print("lam, nu =", params.lam, params.nu)

# 1. residual of the raw secular function at the solved roots
betas = beam_roots(bc, 6)
G = sp.solve_uniform_dimensionless(params, betas, 5)
worst = 0.0
for i, beta in enumerate(betas):
    for k in range(5):
        g = G[i, k]
        f = params.nu * params.lam * g**3 * shear_kernel(g) + g**4 - (params.lam*beta)**4
        scale = max((params.lam*beta)**4, g**4, abs(params.nu*params.lam*g**3*shear_kernel(g)))
        worst = max(worst, abs(f)/scale)
print("1. worst raw-secular relative residual:", worst)

# 2. brentq cross-check on a few levels (shrink bracket off the edges)
edges = band_edge_gammas(5)
for (n, k) in [(1, 1), (2, 2), (4, 3), (6, 5)]:
    beta = betas[n-1]
    lo = 1e-9 if k == 1 else edges[k-2] + 1e-9
    hi = edges[k-1] - 1e-9
    fr = lambda g: params.nu*params.lam*g**3*shear_kernel(g) + g**4 - (params.lam*beta)**4
    try:
        gb = brentq(fr, lo, hi, xtol=1e-15, rtol=8.9e-16)
        print(f"2. (n={n},k={k}) bisect={G[n-1,k-1]:.15f} brentq={gb:.15f} diff={abs(G[n-1,k-1]-gb):.2e}")
    except ValueError as e:
        print(f"2. (n={n},k={k}) brentq bracket failed: {e}; f(lo)={fr(lo):.3e} f(hi)={fr(hi):.3e}")

# 3. interlacing and in-band
ok = True
for i in range(6):
    row = G[i]
    if not np.all(np.diff(row) > 0):
        ok = False
    for k in range(5):
        lo = 0.0 if k == 0 else edges[k-1]
        if not (lo < row[k] < edges[k]):
            ok = False
print("3. interlacing + in-band:", ok)

# 4. nu = 0
G0 = sp.solve_uniform_dimensionless(DimensionlessParams(params.lam, 0.0), betas, 3)
print("4. nu=0 band1 == lam*beta:", np.allclose(G0[:, 0], params.lam*betas, rtol=0, atol=0),
      "| other bands NaN:", np.all(np.isnan(G0[:, 1:])))

# 5. alternating with eps=1 reduces to uniform
prof_alt = AlternatingProfile(length1=5e-7, length2=5e-7, width1=2e-7, width2=2e-7,
                              count1=12, count2=8)
lv_alt = sp.solve_alternating(geo, prof_alt, bc, 4, 4)
lv_uni = sp.solve_uniform(geo, prof, bc, 4, 4)
assert len(lv_alt) == len(lv_uni), (len(lv_alt), len(lv_uni))
d = max(abs(a.gamma - u.gamma)/u.gamma for a, u in zip(lv_alt, lv_uni))
print("5. eps=1 reduction, worst rel diff:", d)

# 6. delta_asymptotic convergence as nu -> 0
beta1 = betas[0]
for k in [1, 2, 3]:
    print(f"6. band edge k={k}:")
    for nu in [1.0, 0.1, 0.01]:
        p = DimensionlessParams(params.lam, nu)
        delta, keff = sp.delta_asymptotic(1, k, p, beta1)
        g = sp.solve_uniform_dimensionless(p, betas[:1], k+1)[0]
        actual = g[keff-1] - edges[k-1]
        print(f"   nu={nu:5}: delta={delta:+.6e} actual={actual:+.6e} ratio={delta/actual:.4f} keff={keff}")

# 7. empirical accuracy of the first-order edge formula when |delta| < 0.05
draws, within, fails = 0, 0, []
while draws < 500:
    lam = rng.uniform(0.02, 0.6)
    nu = rng.uniform(0.05, 12.0)
    n = int(rng.integers(1, 7))
    k = int(rng.integers(1, 6))
    p = DimensionlessParams(lam, nu)
    beta = beam_roots(bc, n)[n-1]
    try:
        delta, keff = sp.delta_asymptotic(n, k, p, beta)
    except sp.BlowUpError:
        continue
    if abs(delta) >= 0.05:
        continue
    gg = sp.solve_uniform_dimensionless(p, beam_roots(bc, n), max(k+1, keff))
    actual = gg[n-1, keff-1] - band_edge_gammas(k)[k-1]
    draws += 1
    rel = abs(delta - actual) / abs(actual)
    if rel < 0.05:
        within += 1
    else:
        fails.append((lam, nu, n, k, delta, actual, rel))
print(f"7. |delta|<0.05 draws: {draws}, within 5%: {within}")
for f in fails[:8]:
    print("   FAIL lam=%.3f nu=%.3f n=%d k=%d delta=%+.4e actual=%+.4e rel=%.3f" % f)

# 8. crossing ratio: at lam = lam*, gamma is nu-independent and omega = bare beam
for (n, k) in [(1, 2), (2, 2), (1, 3), (3, 4)]:
    lam_star, _ = sp.crossing_ratio(n, k, bc)
    beta = beam_roots(bc, n)[n-1]
    gs = []
    for nu in [0.3, 2.0, 9.0]:
        p = DimensionlessParams(lam_star, nu)
        gs.append(sp.solve_uniform_dimensionless(p, beam_roots(bc, n), k)[n-1, k-1])
    spread = max(gs) - min(gs)
    print(f"8. (n={n},k={k}) lam*={lam_star:.8f} gamma spread over nu: {spread:.3e} "
          f"T(lam*beta)={shear_kernel(lam_star*beta):+.3e} in-band: "
          f"{(band_edge_gammas(k)[k-2] if k>1 else 0) < lam_star*beta < band_edge_gammas(k)[k-1]}")

# 9. band gap estimate vs exact
gaps = sp.band_gaps(geo, prof, bc, 3)
for g in gaps:
    print(f"9. k={g.k}: exact={g.exact:.6e} estimate={g.estimate:.6e} ratio={g.ratio:.4f}")

# 10. pole set of alternating profile
prof2 = AlternatingProfile(length1=5e-7, length2=3.5e-7, width1=2e-7, width2=2e-7,
                           count1=10, count2=10)
poles = sp.alternating_pole_set(prof2, 12.0)
print("10. poles (gamma, family):", [(round(g, 6), f) for g, f in poles])
eps = prof2.epsilon
expect = sorted([(g, 1) for g in band_edge_gammas(3) if g <= 12.0] +
                [(g/eps, 2) for g in band_edge_gammas(3) if g/eps <= 12.0])
print("    expected:              ", [(round(g, 6), f) for g, f in expect])

# 11. gamma_{n,1} decreases with nu
prev = np.inf
mono = True
for nu in [0.1, 1.0, 5.0, 20.0]:
    g = sp.solve_uniform_dimensionless(DimensionlessParams(0.3, nu), betas[:1], 1)[0, 0]
    if g >= prev:
        mono = False
    prev = g
print("11. gamma_{1,1} monotone decreasing in nu:", mono)

# 12. alternating solve with distinct eps: in-band count (one root per n per band)
lvs = sp.solve_alternating(geo, prof2, bc, 3, 5)
from collections import Counter
cnt = Counter((lv.n, lv.k) for lv in lvs)
print("12. alternating level multiplicity (should all be 1):",
      sorted(set(cnt.values())), "| total:", len(lvs))

# 13. frequency round trip
om = sp.gamma_to_omega(2.345, geo, prof.length)
g2 = sp.omega_to_gamma(om, geo, prof.length)
print("13. round trip rel err:", abs(g2 - 2.345)/2.345)
