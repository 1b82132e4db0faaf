# Dev verification for nonlinear.py against appendix goldens and identities.
import math
import time
import warnings

import numpy as np

from cantarray.beam import BeamMode, beam_modes, beam_roots
from cantarray.model import (BoundaryCondition, NonlinearSettings,
                             UniformProfile, preset_device)
from cantarray import nonlinear as nl

t0 = time.time()
geom, prof, bc = preset_device("jap1-calibrated")

sel = nl.select_modes(geom, prof, bc)
print(f"beta={sel.beta:.10f} lam={sel.lam:.8f} nu={sel.nu:.4f}")
print(f"gamma1={sel.gamma1:.12f} gamma2={sel.gamma2:.12f}")
print(f"f1={sel.omega1/2/math.pi/1e6:.4f} MHz  f2={sel.omega2/2/math.pi/1e9:.5f} GHz")

# 1. beam constants: closed vs quadrature, odd family
print("\n1. beam constants closed vs quadrature")
closed = nl.beam_constants_closed(sel.beta)
quad = nl.beam_constants(sel.mode)
for name in ("stretch_inertia", "curvature_quartic", "shape_quartic", "mean_shape"):
    c, q = getattr(closed, name), getattr(quad, name)
    rel = abs(c - q) / max(abs(c), 1e-300)
    print(f"  {name:18s} closed={c:+.12e} quad={q:+.12e} rel={rel:.2e}")
    assert rel < 1e-7, name

# golden appendix values
assert abs(closed.stretch_inertia - 6.1513) < 5e-4
assert abs(closed.curvature_quartic - 2846.4975) < 0.05
assert abs(closed.shape_quartic - 1.8519) < 5e-4
assert abs(closed.mean_shape - (-0.8308)) < 5e-4
print("  appendix goldens: ok")

# 2. closed-form validity across families
print("\n2. closed forms on higher roots (which families hold?)")
betas = beam_roots(bc, 8)
for n, b in enumerate(betas, start=1):
    mode = BeamMode(n=n, beta=float(b), bc=bc)
    c = nl.beam_constants_closed(float(b))
    q = nl.beam_constants(mode)
    rels = [abs(getattr(c, f) - getattr(q, f)) / max(abs(getattr(q, f)), 1e-12)
            for f in ("stretch_inertia", "curvature_quartic", "shape_quartic")]
    mean_q = q.mean_shape
    print(f"  n={n} fam={'odd' if n % 2 else 'even'} rel(G1,G2,G3)="
          f"{rels[0]:.1e},{rels[1]:.1e},{rels[2]:.1e}  "
          f"mean quad={mean_q:+.3e} closed={c.mean_shape:+.3e}")

# 3. cantilever overlaps and identities
print("\n3. cantilever overlaps")
ints = nl.overlap_integrals(sel)
L = ints.mass_overlap
Lam = ints.damping_overlap
I = ints.stretch_overlap
K = ints.curvature_overlap
print(f"  L11={L[0,0]:.6f} L22={L[1,1]:.6f} L12={L[0,1]:.6e}")
print(f"  Lam11={Lam[0,0]:.6e} Lam22={Lam[1,1]:.6f}")
print(f"  I11={I[0,0]:.3e} I22={I[1,1]:.4f} I12={I[0,1]:.3e}")
print(f"  K1111={K[0,0,0,0]:.3e} K2222={K[1,1,1,1]:.4f} K1122={K[0,0,1,1]:.3e} "
      f"K2211={K[1,1,0,0]:.3e} K1212={K[0,1,0,1]:.3e}")
# damping identity Lam_ii = L_ii - T(g_i)/g_i
for i in range(2):
    ident = L[i, i] - nl.carried_shape_mean(sel, i)
    rel = abs(Lam[i, i] - ident) / max(abs(ident), 1e-300)
    print(f"  damping identity i={i}: {Lam[i,i]:.10e} vs {ident:.10e} rel={rel:.2e}")
    assert rel < 1e-10 or abs(Lam[i, i] - ident) < 1e-12
# golden orderings and 15% window checks
assert 1.0000 <= L[0, 0] <= 1.0002
assert Lam[0, 0] < 1e-4
assert I[0, 0] < 1e-12
assert I[0, 0] < I[0, 1] < I[1, 1]
assert K[1, 1, 1, 1] == max(abs(K[i, j, k, l]) for i in range(2)
                            for j in range(2) for k in range(2) for l in range(2))
for val, gold, name in ((L[1, 1], 3.89887, "L22"), (Lam[1, 1], 4.9687, "Lam22"),
                        (I[1, 1], 232.49, "I22"), (K[1, 1, 1, 1], 1.07e3, "K2222")):
    rel = abs(val - gold) / gold
    print(f"  {name}: {val:.5g} vs golden {gold:g} rel={rel:.3f}")
    assert rel < 0.15, name
print("  overlaps: ok")

# 4. effective parameters vs appendix goldens
print("\n4. effective parameters")
settings = NonlinearSettings(damping_beam=1e-6, damping_cantilever=1e-6,
                             force1=1.0, force2=1.0)
par = nl.effective_params(sel, ints, geom, settings)
print(f"  M1={par.mass1:.4e} (golden 1.74e-14)  M2={par.mass2:.4e} (golden 4.17e-14)")
print(f"  C11={par.self_coupling1:.4e} (golden -5.07e13)")
print(f"  C22={par.self_coupling2:.4e} (golden 1.05e21)")
print(f"  C12={par.cross_coupling:.4e} (golden 1.65e17)")
print(f"  drive/force={par.drive_per_force:.6e} (golden -4.44e-6)")
assert abs(par.mass1 - 1.74e-14) / 1.74e-14 < 0.01
assert abs(par.mass2 - 4.17e-14) / 4.17e-14 < 0.01
assert abs(par.self_coupling1 - (-5.07e13)) / 5.07e13 < 0.05
assert abs(par.self_coupling2 - 1.05e21) / 1.05e21 < 0.05
assert abs(par.cross_coupling - 1.65e17) / 1.65e17 < 0.05
assert abs(par.drive_per_force - (-4.44e-6)) / 4.44e-6 < 0.01
assert par.self_coupling1 < 0 < par.cross_coupling
print("  effective params: ok")

# 5. peak amplitude exactness and backbone closure
print("\n5. peak amplitude / backbone")
a1max = nl.peak_amplitude(1, par)
assert a1max == abs(par.drive1 / (par.damping1 * par.omega1))
bb = nl.backbone(1, a1max, 0.0, par)
assert bb is not None and abs(bb[1] - bb[0]) / max(abs(bb[0]), 1e-300) < 1e-6
assert nl.backbone(1, a1max * 1.01, 0.0, par) is None
print(f"  a1max={a1max:.6e}, backbone collapses at peak: ok")

# 6. decoupled Duffing reduction: force2=0 -> mode 2 at rest, mode 1 pure Duffing
print("\n6. decoupling with force2=0")
s2 = NonlinearSettings(damping_beam=1e-6, damping_cantilever=1e-6,
                       force1=1.0, force2=0.0)
par2 = nl.effective_params(sel, ints, geom, s2)
for sig_frac in (-2.0, -0.5, 0.0, 0.5, 2.0):
    sig1 = sig_frac * par2.damping1 / par2.mass1
    pairs = nl.coupled_steady_state(sig1, 0.0, par2)
    for p1, p2 in pairs:
        assert p2.amplitude == 0.0
        # Duffing check: backbone at that amplitude must contain sigma1
        lohi = nl.backbone(1, p1.amplitude, 0.0, par2)
        scale = max(abs(lohi[0]), abs(lohi[1]), 1e-300)
        resid = min(abs(sig1 - lohi[0]), abs(sig1 - lohi[1])) / scale
        assert resid < 1e-8, resid
    assert len(pairs) >= 1
print("  decoupled states match single-mode Duffing: ok")

# 7. multivalued region: moderate nonlinearity, fold ~6 linewidths
print("\n7. multivalued scan")
width = par2.damping1 / par2.mass1
ztarget = 6.0 * width * 4 * par2.mass1 * par2.omega1 / abs(par2.self_coupling1)
ffold = math.sqrt(ztarget) * par2.damping1 * par2.omega1 / abs(par2.drive_per_force)
s7 = NonlinearSettings(damping_beam=1e-6, damping_cantilever=1e-6,
                       force1=ffold, force2=0.0)
par7 = nl.effective_params(sel, ints, geom, s7)
zpk = nl.peak_amplitude(1, par7) ** 2
fold = par7.self_coupling1 * zpk / (4 * par7.mass1 * par7.omega1)
print(f"  fold/width = {fold/width:.2f}")
count3 = 0
for frac in np.linspace(0.05, 1.1, 40):
    sig1 = fold * frac
    pairs = nl.coupled_steady_state(sig1, 0.0, par7)
    if len(pairs) == 3:
        count3 += 1
    for p1, p2 in pairs:
        z1, z2 = p1.amplitude ** 2, p2.amplitude ** 2
        assert nl.steady_residual(z1, z2, sig1, 0.0, par7) < 1e-10
print(f"  detunings with 3 coexisting states: {count3}/40")
assert count3 >= 5

# 8. coupled states with both drives: residual + branch closure both orders
print("\n8. coupled steady states")
s3 = NonlinearSettings(damping_beam=1e-6, damping_cantilever=1e-6,
                       force1=ffold, force2=3.0 * ffold)
par3 = nl.effective_params(sel, ints, geom, s3)
rng = np.random.default_rng(11)
nmax = 0
for trial in range(40):
    sc1 = par3.self_coupling1 * nl.peak_amplitude(1, par3) ** 2 / (4 * par3.mass1 * par3.omega1)
    sc2 = par3.self_coupling2 * nl.peak_amplitude(2, par3) ** 2 / (4 * par3.mass2 * par3.omega2)
    sig1 = float(rng.uniform(-1.5, 1.5)) * max(abs(sc1), par3.damping1 / par3.mass1)
    sig2 = float(rng.uniform(-1.5, 1.5)) * max(abs(sc2), par3.damping2 / par3.mass2)
    pairs = nl.coupled_steady_state(sig1, sig2, par3)
    assert pairs, (sig1, sig2)
    nmax = max(nmax, len(pairs))
    for p1, p2 in pairs:
        res = nl.steady_residual(p1.amplitude ** 2, p2.amplitude ** 2,
                                 sig1, sig2, par3)
        assert res < 1e-10, res
print(f"  40 random detuning pairs, max coexisting states {nmax}: ok")

# 9. shift of fundamental: monotone in f2^2 over a decade, C11<0, C12>0
print("\n9. fundamental shift vs second drive")
f2s = np.geomspace(0.3, 3.0, 9)
shifts = []
for f2 in f2s:
    roots = nl.shift_of_fundamental(par3, force1=ffold, force2=float(f2) * ffold)
    assert roots
    shifts.append(roots[-1].sigma1)  # largest-a2 root
base = nl.shift_of_fundamental(par3, force1=ffold, force2=0.0)[0].sigma1
print(f"  f2=0 self-shift sigma1={base:.6e}")
print("  shifts:", ", ".join(f"{s:.4e}" for s in shifts))
diffs = np.diff(shifts)
assert np.all(diffs > 0), diffs
# f2=0 consistency with formula
expect = par3.self_coupling1 * (ffold * par3.drive_per_force / (par3.damping1 * par3.omega1)) ** 2 / (4 * par3.mass1 * par3.omega1)
assert abs(base - expect) / abs(expect) < 1e-12
print("  monotone increasing, f2=0 reduction exact: ok")

# 10. shift back-substitution: root satisfies mode-2 peak condition
print("\n10. shift back-substitution")
for f2 in (0.5 * ffold, 1.0 * ffold, 2.5 * ffold):
    for r in nl.shift_of_fundamental(par3, force1=ffold, force2=f2):
        z = r.amplitude2 ** 2
        A = (par3.drive_per_force * ffold / (par3.damping1 * par3.omega1)) ** 2
        bracket = (par3.self_coupling2 * z + par3.cross_coupling * A) / (4 * par3.mass2 * par3.omega2)
        drv = par3.drive_per_force * f2
        rad = (drv / (par3.mass2 * par3.omega2)) ** 2 / z - (par3.damping2 / par3.mass2) ** 2
        resid = abs(bracket ** 2 - rad * 0 - (bracket ** 2)) if rad < 0 else abs(abs(bracket) - math.sqrt(rad))
        rel = resid / max(abs(bracket), 1e-300)
        assert rel < 1e-8, (f2, rel)
print("  peak-condition residuals: ok")

# 11. reconstruction: time-average of y^2 matches sum of half squared amps
print("\n11. reconstruction sampler")
pairs = nl.coupled_steady_state(0.0, 0.0, par3)
fld = nl.reconstruct_solution(pairs[0], sel)
x = 0.5 * sel.beam_length
phi = float(sel.mode(np.array([0.5]))[0])
T1 = 2 * math.pi / (par3.omega1 + pairs[0][0].sigma)
ts = np.linspace(0.0, 5000 * T1, 200001)
y = fld.beam_deflection(x, ts)
msq = np.mean(y ** 2)
expect = 0.5 * phi ** 2 * (pairs[0][0].amplitude ** 2 + pairs[0][1].amplitude ** 2)
print(f"  <y^2>={msq:.6e} expected={expect:.6e} rel={abs(msq-expect)/expect:.2e}")
assert abs(msq - expect) / expect < 1e-2
# cantilever total = beam + relative at matching points
xi = np.array([0.25e-7, 2.5e-7, 5.0e-7])
tot = fld.cantilever_total(x, xi, 1e-9)
relv = fld.cantilever_relative(x, xi, 1e-9)
bm = fld.beam_deflection(x, 1e-9)
assert np.allclose(tot, relv + bm, rtol=1e-12)
print("  total = base + relative: ok")

# 12. scaling law: drives *s -> amplitudes *s in linear regime (tiny forces)
print("\n12. linear-regime scaling")
sA = NonlinearSettings(damping_beam=1e-6, damping_cantilever=1e-6,
                       force1=1e-12, force2=1e-12)
sB = NonlinearSettings(damping_beam=1e-6, damping_cantilever=1e-6,
                       force1=2e-12, force2=2e-12)
pA = nl.effective_params(sel, ints, geom, sA)
pB = nl.effective_params(sel, ints, geom, sB)
stA = nl.coupled_steady_state(0.0, 0.0, pA)
stB = nl.coupled_steady_state(0.0, 0.0, pB)
assert len(stA) == len(stB) == 1
r1 = stB[0][0].amplitude / stA[0][0].amplitude
r2 = stB[0][1].amplitude / stA[0][1].amplitude
print(f"  amplitude ratios: {r1:.12f}, {r2:.12f}")
assert abs(r1 - 2.0) < 1e-9 and abs(r2 - 2.0) < 1e-9

print(f"\nall nonlinear checks passed in {time.time()-t0:.1f}s")
