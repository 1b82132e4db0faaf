"""Empirical check of the near-edge first-order offset accuracy on the
acceptance grid: 500 random (lam, nu), lam in [0.01,2], nu in [0,1000],
n in [1,8], k in [2,6]; window |gamma - edge_k| < 0.05."""
import numpy as np

from cantarray.beam import beam_roots
from cantarray.kernel import band_edge_gammas
from cantarray.model import BoundaryCondition, DimensionlessParams
from cantarray import spectrum as sp

rng = np.random.default_rng(7)
bc = BoundaryCondition.CLAMPED_CLAMPED
betas = beam_roots(bc, 8)
edges = band_edge_gammas(7)

cases = 0
worst = 0.0
fails = []
hist = []
for _ in range(500):
    lam = rng.uniform(0.01, 2.0)
    nu = rng.uniform(0.0, 1000.0)
    p = DimensionlessParams(lam, nu)
    G = sp.solve_uniform_dimensionless(p, betas, 7)
    if nu == 0.0:
        continue
    for n in range(1, 9):
        for k in range(2, 7):
            g = G[n - 1, k - 1]
            d_up = g - edges[k - 1]          # negative: top of band k
            d_dn = g - edges[k - 2]          # positive: bottom of band k
            for edge_idx, d in ((k, d_up), (k - 1, d_dn)):
                if abs(d) >= 0.05:
                    continue
                try:
                    delta, keff = sp.delta_asymptotic(n, edge_idx, p, betas[n - 1])
                except sp.BlowUpError:
                    continue
                if keff != k:
                    # first-order theory puts the near-edge root on the other
                    # side; record as mismatch case
                    fails.append((lam, nu, n, k, edge_idx, d, delta, np.inf))
                    continue
                rel = abs(delta - d) / abs(d)
                cases += 1
                hist.append(rel)
                worst = max(worst, rel)
                if rel >= 0.05:
                    fails.append((lam, nu, n, k, edge_idx, d, delta, rel))

hist = np.array(hist)
print(f"cases in window: {cases}; worst rel: {worst:.4f}")
print(f"quantiles: 50%={np.quantile(hist,0.5):.4f} 90%={np.quantile(hist,0.9):.4f} "
      f"99%={np.quantile(hist,0.99):.4f}")
print(f"failures >= 5%: {len(fails)}")
for f in fails[:15]:
    print("  lam=%.4f nu=%8.3f n=%d k=%d edge=%d d_exact=%+.5f delta=%+.5f rel=%s"
          % (f[0], f[1], f[2], f[3], f[4], f[5], f[6],
             ("inf" if f[7] == np.inf else "%.4f" % f[7])))
# distribution of |d| among failures
if fails:
    ds = [abs(f[5]) for f in fails if f[7] != np.inf]
    if ds:
        print("failure |d| range: %.4f .. %.4f" % (min(ds), max(ds)))
