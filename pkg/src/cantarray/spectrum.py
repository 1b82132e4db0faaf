"""Closed-form vibration spectra of beams with averaged cantilever loading.

For identical cantilevers the transcendental secular equation in the reduced
wavenumber gamma = alpha*l is

    nu*lam * gamma^3 * T(gamma) + gamma^4 = (lam*beta_n)^4

whose roots organize into bands: level (n, k) lies strictly between
consecutive poles of T (band edges gamma_{inf,k}).  Root finding never
evaluates T near its poles; instead it bisects the pole-free rescaled form

    F(gamma) = nu*lam*gamma^3*N(gamma) + (gamma^4 - (lam*beta_n)^4)*D(gamma)

with N = e^-g (cos sinh + sin cosh), D = e^-g (1 + cos cosh).  F is finite
and nonzero at the band edges with alternating sign, so [edge, edge] is a
guaranteed single-sign-change bracket for every (n, k).

An interleaved two-family array gives the same structure with both pole sets
{gamma_k} and {gamma_k / epsilon}; see solve_alternating.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .beam import beam_roots
from .kernel import band_edge_gammas, check_pole_distance, shear_kernel
from .model import (AlternatingProfile, BoundaryCondition, ConfigError,
                    DeviceGeometry, DimensionlessParams, UniformProfile,
                    dimensionless)

_BISECT_ITERS = 110


class BlowUpError(ArithmeticError):
    """Band-edge expansion denominator is resonant (lam*beta_n ~ gamma_edge)."""


@dataclass(frozen=True)
class BandEdge:
    k: int
    gamma: float
    omega: float | None = None  # rad/s when geometry+length given


@dataclass(frozen=True)
class SpectrumLevel:
    n: int
    k: int
    gamma: float
    omega: float           # rad/s
    band_lower: float      # gamma of lower band edge (0 for k=1)
    band_upper: float      # gamma of upper band edge
    valid: bool = True     # averaged model trustworthy (n << pairs)


@dataclass(frozen=True)
class BandGap:
    k: int
    omega_edge: float      # band-edge frequency omega_{inf,k}
    exact: float           # omega_{1,k+1} - omega_{inf,k}
    estimate: float        # 2 omega_{inf,k} Delta_{1,k} / gamma_{inf,k}
    ratio: float


def _scaled_nd(gamma):
    """e^-gamma scaled numerator/denominator of the shear kernel.

    N = e^-g (cos g sinh g + sin g cosh g),  D = e^-g (1 + cos g cosh g);
    T = N/D.  Both are finite for all gamma >= 0.
    """
    gamma = np.asarray(gamma, dtype=float)
    e = np.exp(-gamma)
    e2 = np.exp(-2.0 * gamma)
    ch = 0.5 * (1.0 + e2)
    sh = 0.5 * (1.0 - e2)
    c, s = np.cos(gamma), np.sin(gamma)
    return c * sh + s * ch, e + c * ch


def secular_uniform(gamma, params: DimensionlessParams, beta: float):
    """Raw secular function nu*lam*g^3*T(g) + g^4 - (lam*beta)^4.

    Has poles at the band edges (PoleProximityError within tolerance there);
    the root finder uses the regularized form instead.
    """
    gamma = np.asarray(gamma, dtype=float)
    t = shear_kernel(gamma)  # pole proximity check happens here
    return params.nu * params.lam * gamma ** 3 * t + gamma ** 4 \
        - (params.lam * beta) ** 4


def _regular_secular(gamma, nulam: float, lambeta4):
    """(secular) * D(gamma) * e^-gamma: pole-free, same roots off the edges."""
    n_hat, d_hat = _scaled_nd(gamma)
    return nulam * gamma ** 3 * n_hat + (gamma ** 4 - lambeta4) * d_hat


def band_edges(k_max: int, geometry: DeviceGeometry | None = None,
               cantilever_length: float | None = None) -> list[BandEdge]:
    """Band-edge wavenumbers, optionally converted to rad/s via omega =
    sqrt(Ec/mu_c) (gamma/l)^2."""
    gammas = band_edge_gammas(k_max)
    out = []
    for k, g in enumerate(gammas, start=1):
        omega = None
        if geometry is not None and cantilever_length is not None:
            omega = geometry.cantilever_wave_scale * (g / cantilever_length) ** 2
        out.append(BandEdge(k=k, gamma=float(g), omega=omega))
    return out


def solve_uniform_dimensionless(params: DimensionlessParams, betas: np.ndarray,
                                k_max: int) -> np.ndarray:
    """Roots gamma[n-1, k-1] for every beam index and band.

    Vectorized bisection on the regularized secular function with the band
    edges themselves as bracket endpoints (F has opposite signs there).
    nu = 0 collapses to the bare-beam roots gamma = lam*beta_n in band 1.
    """
    betas = np.asarray(betas, dtype=float)
    if params.nu == 0.0:
        out = np.full((betas.size, k_max), np.nan)
        out[:, 0] = params.lam * betas
        return out
    lambeta4 = (params.lam * betas[:, None]) ** 4
    return _band_bisect(params.nu * params.lam, lambeta4, k_max)


def _band_bisect(nulam: float, lambeta4: np.ndarray, k_max: int) -> np.ndarray:
    """Edge-to-edge bisection of the regularized single-family secular form.

    The regularized form vanishes with the kernel denominator exactly at the
    edges; evaluating there returns rounding noise of either sign.  Its limit
    sign alternates as (-1)^k at the lower edge of band k (and the k=1
    interval starts negative), so the bisection is seeded analytically.
    """
    n_max = lambeta4.shape[0]
    edges = band_edge_gammas(k_max)
    lo = np.empty((n_max, k_max))
    hi = np.empty((n_max, k_max))
    lo[:, 0] = 0.0
    lo[:, 1:] = edges[:-1][None, :]
    hi[:, :] = edges[None, :]
    f_lo = np.broadcast_to(
        (-1.0) ** np.arange(1, k_max + 1), (n_max, k_max)).copy()
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        f_mid = _regular_secular(mid, nulam, lambeta4)
        take = np.signbit(f_mid) == np.signbit(f_lo)
        lo = np.where(take, mid, lo)
        f_lo = np.where(take, f_mid, f_lo)
        hi = np.where(take, hi, mid)
    return 0.5 * (lo + hi)


def _uniform_context(geometry: DeviceGeometry, profile: UniformProfile,
                     bc: BoundaryCondition, n_max: int):
    params = dimensionless(geometry, profile)
    betas = beam_roots(bc, n_max)
    return params, betas


def solve_uniform(geometry: DeviceGeometry, profile: UniformProfile,
                  bc: BoundaryCondition, n_max: int, k_max: int) -> list[SpectrumLevel]:
    """Spectrum levels for a uniform array, frequencies from
    omega = sqrt(Ec/mu_c) (gamma/l)^2."""
    params, betas = _uniform_context(geometry, profile, bc, n_max)
    gammas = solve_uniform_dimensionless(params, betas, k_max)
    edges = band_edge_gammas(k_max)
    scale = geometry.cantilever_wave_scale / profile.length ** 2
    levels = []
    valid_n = geometry.count_per_side
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            g = gammas[n - 1, k - 1]
            if not np.isfinite(g):
                continue
            levels.append(SpectrumLevel(
                n=n, k=k, gamma=float(g), omega=float(scale * g * g),
                band_lower=0.0 if k == 1 else float(edges[k - 2]),
                band_upper=float(edges[k - 1]),
                valid=bool(n < valid_n) if valid_n > 0 else False,
            ))
    return levels


def gamma_to_omega(gamma: float, geometry: DeviceGeometry,
                   cantilever_length: float) -> float:
    return geometry.cantilever_wave_scale * (gamma / cantilever_length) ** 2


def omega_to_gamma(omega: float, geometry: DeviceGeometry,
                   cantilever_length: float) -> float:
    """Exact inverse of gamma_to_omega (cantilever dispersion)."""
    return cantilever_length * (omega / geometry.cantilever_wave_scale) ** 0.5


def delta_asymptotic(n: int, k: int, params: DimensionlessParams,
                     beta: float, resonance_rtol: float = 1e-9) -> tuple[float, int]:
    """First-order offset of the near-edge root from band edge k.

    Returns (delta, k_eff): the root sits at gamma_{inf,k} + delta and belongs
    to band k when delta < 0 (top of band) or band k+1 when delta > 0 (bottom
    of the next band).  Raises BlowUpError when lam*beta_n is resonant with
    the edge and the leading-order denominator vanishes.
    """
    edge = band_edge_gammas(k)[k - 1]
    x = params.lam * beta / edge
    if abs(x - 1.0) < resonance_rtol:
        raise BlowUpError(
            f"lam*beta_n within {resonance_rtol} of band edge {k}: "
            "first-order edge expansion diverges")
    t = np.tan(edge)
    th = np.tanh(edge)
    delta = (params.lam * params.nu / edge) * (t + th) / (t - th) / (1.0 - x ** 4)
    k_eff = k if delta < 0 else k + 1
    return float(delta), k_eff


def band_gaps(geometry: DeviceGeometry, profile: UniformProfile,
              bc: BoundaryCondition, k_max: int) -> list[BandGap]:
    """Frequency gaps omega_{1,k+1} - omega_{inf,k} above each band edge,
    with the first-order edge estimate alongside.  Empty for nu = 0."""
    params, betas = _uniform_context(geometry, profile, bc, 1)
    if params.nu == 0.0:
        return []
    gammas = solve_uniform_dimensionless(params, betas, k_max + 1)[0]
    edges = band_edge_gammas(k_max)
    scale = geometry.cantilever_wave_scale / profile.length ** 2
    beta1 = betas[0]
    out = []
    for k in range(1, k_max + 1):
        edge = edges[k - 1]
        omega_edge = scale * edge * edge
        exact = scale * gammas[k] ** 2 - omega_edge
        try:
            delta, k_eff = delta_asymptotic(1, k, params, beta1)
        except BlowUpError:
            delta, k_eff = np.nan, k + 1
        estimate = 2.0 * omega_edge * delta / edge if np.isfinite(delta) else np.nan
        ratio = estimate / exact if exact != 0 else np.nan
        out.append(BandGap(k=k, omega_edge=float(omega_edge), exact=float(exact),
                           estimate=float(estimate), ratio=float(ratio)))
    return out


def crossing_ratio(n: int, k: int, bc: BoundaryCondition,
                   geometry: DeviceGeometry | None = None) -> tuple[float, float | None]:
    """Length ratio lam* at which level (n, k) is independent of the loading.

    At lam = lam* the level sits on a zero of the shear kernel, gamma =
    lam*beta_n with T = 0, so every nu gives the same frequency: the bare-beam
    value omega* = sqrt(Eb/mu_b) (beta_n/L)^2.  Kernel zeros are half the
    odd-family clamped-clamped roots, so lam*_{n,k} = beta^cc_{2k-3} / (2 beta_n),
    defined for k >= 2.
    """
    if k < 2:
        raise ConfigError("crossing ratio defined for band index k >= 2")
    m = 2 * k - 3
    beta_cc = beam_roots(BoundaryCondition.CLAMPED_CLAMPED, m)[m - 1]
    beta_n = beam_roots(bc, n)[n - 1]
    lam_star = beta_cc / (2.0 * beta_n)
    omega_star = None
    if geometry is not None:
        omega_star = geometry.beam_wave_scale * (beta_n / geometry.beam_length) ** 2
    return float(lam_star), omega_star


# --- interleaved two-family arrays -----------------------------------------

def _alternating_coeffs(geometry: DeviceGeometry, profile: AlternatingProfile):
    """Prefactors c_i = w_i * l1 * rho_i / w_b of the two shear terms."""
    L = geometry.beam_length
    c1 = profile.width1 * profile.length1 * (2.0 * profile.count1 / L) \
        / geometry.beam_width
    c2 = profile.width2 * profile.length1 * (2.0 * profile.count2 / L) \
        / geometry.beam_width
    return c1, c2


def secular_alternating(gamma, geometry: DeviceGeometry,
                        profile: AlternatingProfile, beta: float,
                        as_printed: bool = False):
    """Two-family secular function in gamma = alpha * l1.

    The physical form carries gamma^3 on both shear terms so that epsilon = 1
    collapses exactly to the uniform equation.  as_printed=True evaluates the
    diagnostic variant without that factor (dimensionally inconsistent; kept
    only for comparison plots).
    """
    gamma = np.asarray(gamma, dtype=float)
    eps = profile.epsilon
    check_pole_distance(gamma, where="gamma")
    check_pole_distance(gamma * eps, where="gamma*epsilon")
    c1, c2 = _alternating_coeffs(geometry, profile)
    lam1 = profile.length1 / geometry.beam_length
    shear = c1 * shear_kernel(gamma) + c2 * shear_kernel(eps * gamma)
    power = 0.0 if as_printed else 3.0
    return gamma ** power * shear + gamma ** 4 - (lam1 * beta) ** 4


def _regular_alternating(gamma, c1, c2, eps, lambeta4):
    """Pole-free form: secular * D(g) * D(eps g) * exp(-(1+eps) g)."""
    n1, d1 = _scaled_nd(gamma)
    n2, d2 = _scaled_nd(eps * gamma)
    return (gamma ** 3 * (c1 * n1 * d2 + c2 * n2 * d1)
            + (gamma ** 4 - lambeta4) * d1 * d2)


def alternating_pole_set(profile: AlternatingProfile, gamma_max: float,
                         merge_tol: float = 1e-9) -> list[tuple[float, int]]:
    """All band-edge poles (gamma, family) with gamma <= gamma_max, sorted.

    Family 1 poles sit at gamma_k, family 2 at gamma_k / epsilon.  Poles of
    both families closer than merge_tol are merged (family reported as 0).
    """
    eps = profile.epsilon
    k1 = int(np.sum(band_edge_gammas(max(1, int(gamma_max / np.pi) + 2)) <= gamma_max))
    poles = []
    if profile.count1 > 0:
        for g in band_edge_gammas(max(k1, 1))[:k1]:
            if g <= gamma_max:
                poles.append((float(g), 1))
    if profile.count2 > 0:
        k2_max = max(1, int(gamma_max * eps / np.pi) + 2)
        for g in band_edge_gammas(k2_max):
            ge = g / eps
            if ge <= gamma_max:
                poles.append((float(ge), 2))
    poles.sort()
    merged = []
    for g, fam in poles:
        if merged and abs(g - merged[-1][0]) < merge_tol:
            merged[-1] = (merged[-1][0], 0)
            continue
        merged.append((g, fam))
    return merged


def solve_alternating(geometry: DeviceGeometry, profile: AlternatingProfile,
                      bc: BoundaryCondition, n_max: int, k_max: int,
                      scan_points: int = 96) -> list[SpectrumLevel]:
    """Levels of the interleaved array; band index counts the merged-pole
    intervals (band 1 is (0, first pole)).

    Degenerate layouts (one family empty, or equal lengths) share a single
    pole set, which would make the two-family regularized form vanish
    quadratically at the edges; those reduce exactly to the single-family
    solver instead.
    """
    if profile.count1 == 0 and profile.count2 == 0:
        raise ConfigError("alternating profile has no cantilevers")
    betas = beam_roots(bc, n_max)
    lam1 = profile.length1 / geometry.beam_length
    c1, c2 = _alternating_coeffs(geometry, profile)
    eps = profile.epsilon
    if profile.count1 == 0:
        c1 = 0.0
    if profile.count2 == 0:
        c2 = 0.0
    scale = geometry.cantilever_wave_scale / profile.length1 ** 2
    valid_n = profile.count1 + profile.count2

    def _single_family(nulam, beta_scale, gamma_scale):
        # gamma' = gamma_scale * gamma obeys the uniform equation; map back
        lambeta4 = (beta_scale * betas[:, None]) ** 4
        gam = _band_bisect(nulam, lambeta4, k_max) / gamma_scale
        edges = band_edge_gammas(k_max) / gamma_scale
        out = []
        for n in range(1, n_max + 1):
            for k in range(1, k_max + 1):
                g = gam[n - 1, k - 1]
                out.append(SpectrumLevel(
                    n=n, k=k, gamma=float(g), omega=float(scale * g * g),
                    band_lower=0.0 if k == 1 else float(edges[k - 2]),
                    band_upper=float(edges[k - 1]),
                    valid=bool(n < valid_n)))
        return out

    if c2 == 0.0:
        return _single_family(c1, lam1, 1.0)
    if c1 == 0.0:
        return _single_family(eps * c2, eps * lam1, eps)
    if abs(eps - 1.0) < 1e-12:
        return _single_family(c1 + c2, lam1, 1.0)

    gamma_hi = band_edge_gammas(k_max)[-1] + 1.0
    while True:
        pole_list = alternating_pole_set(profile, gamma_hi)
        if len(pole_list) >= k_max:
            break
        gamma_hi *= 1.6
    boundaries = [(0.0, -1)] + pole_list[:k_max]

    levels = []
    for n, beta in enumerate(betas, start=1):
        lambeta4 = (lam1 * beta) ** 4

        def f(g, _lb4=lambeta4):
            return _regular_alternating(g, c1, c2, eps, _lb4)

        for k in range(1, len(boundaries)):
            (lo_edge, _), (hi_edge, hi_fam) = boundaries[k - 1], boundaries[k]
            # an accidentally merged pole (family 0) zeroes both denominator
            # factors; step off it so the scan sees a genuine sign
            lo_scan = lo_edge if boundaries[k - 1][1] != 0 else lo_edge + 1e-10
            hi_scan = hi_edge if hi_fam != 0 else hi_edge - 1e-10
            grid = np.linspace(lo_scan, hi_scan, scan_points)
            vals = f(grid)
            sign = np.sign(vals)
            idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
            for i in idx:
                lo, hi = grid[i], grid[i + 1]
                flo = vals[i]
                for _ in range(_BISECT_ITERS):
                    mid = 0.5 * (lo + hi)
                    fm = f(mid)
                    if (fm < 0) == (flo < 0):
                        lo, flo = mid, fm
                    else:
                        hi = mid
                g = 0.5 * (lo + hi)
                levels.append(SpectrumLevel(
                    n=n, k=k, gamma=float(g), omega=float(scale * g * g),
                    band_lower=float(lo_edge), band_upper=float(hi_edge),
                    valid=bool(n < valid_n)))
            if len(idx) > 1:
                warnings.warn(
                    f"band {k}: {len(idx)} roots for beam index {n}; "
                    "labeling by position within the band", stacklevel=2)
    levels.sort(key=lambda lv: (lv.n, lv.k, lv.gamma))
    return levels


def sweep_uniform(geometry: DeviceGeometry, profile: UniformProfile,
                  bc: BoundaryCondition, parameter: str, values,
                  n_max: int, k_max: int):
    """Spectrum vs one swept parameter ('lambda', 'nu' or 'N').

    Yields (value, levels) with lam/nu recomputed per point; sweeping lambda
    rescales the cantilever length at fixed beam length.
    """
    base = dimensionless(geometry, profile)
    betas = beam_roots(bc, n_max)
    for value in values:
        if parameter == "lambda":
            params = DimensionlessParams(lam=float(value), nu=base.nu)
            length = value * geometry.beam_length
        elif parameter == "nu":
            params = DimensionlessParams(lam=base.lam, nu=float(value))
            length = profile.length
        elif parameter == "N":
            nu = 2.0 * float(value) * geometry.cantilever_width / geometry.beam_width
            params = DimensionlessParams(lam=base.lam, nu=nu)
            length = profile.length
        else:
            raise ConfigError(f"sweep: unknown parameter {parameter!r}")
        gammas = solve_uniform_dimensionless(params, betas, k_max)
        scale = geometry.cantilever_wave_scale / length ** 2
        yield float(value), gammas, scale
