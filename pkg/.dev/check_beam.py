import numpy as np
from cantarray import beam_modes, beam_roots, BoundaryCondition, shear_kernel, band_edge_gammas, CantileverShape
from cantarray.quadrature import fixed_quad

cc, cf = BoundaryCondition.CLAMPED_CLAMPED, BoundaryCondition.CLAMPED_FREE
r_cc = beam_roots(cc, 6); r_cf = beam_roots(cf, 6)
print("cc roots:", r_cc)
print("cf roots:", r_cf)
print("edges   :", band_edge_gammas(6))
# residuals
print("cc resid:", np.cos(r_cc)*np.cosh(r_cc)-1)
print("cf resid:", np.cos(r_cf)*np.cosh(r_cf)+1)

modes = beam_modes(cc, 20)
m1 = modes[0]
# norm check
for m in (modes[0], modes[4], modes[19]):
    n2 = fixed_quad(lambda u: m(u)**2, 0, 1, panels=max(8, m.n+4))
    print(f"mode {m.n}: norm2={n2:.15f} raw_norm={m._norm:.15f} phi''(0)={m(0.0,2):.6f} phi(0)={m(0.0):.2e} phi(1)={m(1.0):.2e} phi'(1)={m(1.0,1):.2e}")
print("int phi1 =", fixed_quad(lambda u: m1(u), 0, 1, panels=8))
t = np.tan(m1.beta/2)
print("4t/beta  =", 4*t/m1.beta)
# orthonormality sample
g12 = fixed_quad(lambda u: modes[0](u)*modes[1](u), 0, 1, panels=16)
print("cross 1,2:", g12)
# mpmath high-precision check of mode 20 at a few points
import mpmath as mp
mp.mp.dps = 50
def phi_mp(beta, u):
    beta = mp.mpf(beta); u = mp.mpf(u)
    sig = (mp.cosh(beta)-mp.cos(beta))/(mp.sinh(beta)-mp.sin(beta))
    val = mp.cosh(beta*u)-mp.cos(beta*u)-sig*(mp.sinh(beta*u)-mp.sin(beta*u))
    return -val  # sign convention
m20 = modes[19]
for u in (0.03, 0.25, 0.5, 0.77, 0.97, 0.999):
    hi = float(phi_mp(m20.beta, u))
    lo = float(m20(u))*m20._norm  # compare raw (unnormalized)
    print(f"u={u}: scaled={lo:.15e} mp={hi:.15e} rel={(lo-hi)/hi:.2e}")
