"""Show how one cantilever talks back to the beam that carries it.

A cantilever clamped to a vibrating support exerts a shear force on it.
Averaged over many identical cantilevers that feedback becomes a frequency
dependent kernel: smooth inside each cantilever band, divergent at the
cantilever's own clamped-free resonances (the band edges).  Those poles
are what carve the array's spectrum into bands.
"""

import numpy as np

from cantarray import CantileverShape, band_edge_gammas, shear_kernel
from cantarray.kernel import PoleProximityError


def main():
    edges = band_edge_gammas(4)
    print("Band edges: clamped-free resonances of a single cantilever")
    print("(dimensionless frequency gamma = root of cos g cosh g = -1):")
    for k, e in enumerate(edges, start=1):
        print(f"  k={k}: gamma_inf = {e:.10f}")

    print("\nKernel T(gamma) across the first two bands.  At low frequency")
    print("T -> gamma (the cantilever rides rigidly, pure added inertia);")
    print("approaching each edge it blows up and flips sign across it:")
    for g in (0.2, 0.5, 1.0, 1.5, 1.87, edges[0] - 1e-3, edges[0] + 1e-3,
              2.5, 3.5, 4.5, edges[1] - 1e-3):
        t = shear_kernel(g)
        note = "  <- rigid-ride limit" if g <= 0.5 else ""
        print(f"  T({g:8.5f}) = {t:>14.4f}{note}")

    print("\nInside a pole window the kernel is refused, not extrapolated:")
    try:
        shear_kernel(edges[0] + 1e-13)
    except PoleProximityError as exc:
        print(f"  PoleProximityError: {exc}")

    print("\nRelative tip motion of one cantilever, chi(tip), vs gamma.")
    print("Approaching its resonance from below the tip response diverges:")
    for g in (0.5, 1.0, 1.5, 1.8, 1.85, 1.87):
        chi = CantileverShape(g)
        print(f"  gamma = {g:5.2f}: chi(1) = {chi(1.0):>12.4f}")

    g = 1.2
    chi = CantileverShape(g)
    v = np.linspace(0.0, 1.0, 9)
    print(f"\nDeflection profile at gamma = {g} (clamp at v=0 rides the beam):")
    for vv, cv in zip(v, chi(v)):
        print(f"  v = {vv:.3f}: chi = {cv:+.6f}")
    # free end: no bending moment, no shear
    print(f"  check chi''(1) = {chi(1.0, 2):+.2e}, chi'''(1) = {chi(1.0, 3):+.2e}")


if __name__ == "__main__":
    main()
