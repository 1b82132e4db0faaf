import numpy as np
from cantarray import coeffs, shear_kernel, band_edge_gammas, CantileverShape, PoleProximityError
from cantarray.quadrature import fixed_quad, adaptive_quad

# coefficient identities
rng = np.random.default_rng(0)
for g in rng.uniform(0.05, 60, 12):
    c = coeffs(g)
    assert abs(c.a1_plus + c.a1_minus - 1) < 1e-13, g
    assert abs(c.a2_plus + c.a2_minus) < 1e-15
print("A identities ok")
# T series & pole signs
print("T(1e-3)/1e-3 - 1 =", shear_kernel(1e-3)/1e-3 - 1)
print("T(0.3) - (0.3+0.3**5/20) =", shear_kernel(0.3) - (0.3+0.3**5/20))
e1 = band_edge_gammas(1)[0]
print("T near pole:", shear_kernel(e1-1e-3), shear_kernel(e1+1e-3))
try:
    shear_kernel(e1)
except PoleProximityError as e:
    print("pole raise ok:", e)

# chi BCs + ODE residual via finite differences
for g in (0.18, 1.0, 2.05, 5.0, 12.0, 24.0, 40.0, 200.0):
    sh = CantileverShape(g)
    v = np.linspace(0, 1, 9)
    mx = np.max(np.abs(sh(v)))
    bc = [sh(0.0), sh(0.0,1), sh(1.0,2), sh(1.0,3)]
    # FD 4th derivative at v=0.5 (7-point, O(h^4)) vs gamma^4*(chi+1)
    h = 0.01 if g < 30 else 0.002
    st = np.array([-1/6, 2, -13/2, 28/3, -13/2, 2, -1/6])
    off = np.arange(-3,4)
    d4 = sum(c*sh(0.5+o*h) for c,o in zip(st,off))/h**4
    rhs = g**4*(sh(0.5)+1)
    print(f"g={g}: max|chi|={mx:.3e} bc_resid={[f'{abs(b)/max(mx,1e-30):.1e}' for b in bc]} ode_rel={(d4-rhs)/rhs:.2e}")

# integral identity: int h dv = T/gamma
for g in (0.18, 2.05, 7.0, 30.0):
    sh = CantileverShape(g)
    ih = adaptive_quad(lambda v: sh(v)+1.0, 0, 1)
    print(f"g={g}: int h={ih:.15e} T/g={shear_kernel(g)/g:.15e} diff={ih-shear_kernel(g)/g:.2e}")
