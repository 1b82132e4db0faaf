"""Single-cantilever response to base motion.

A clamped-free cantilever of length l driven through its clamp at frequency
omega responds with a relative tip shape chi(v), v = xi/l, determined by the
reduced wavenumber gamma = alpha*l.  Everything here is parametrized by gamma:

    response coefficients  A1+/-, A2+/- (trig/hyperbolic mode mixture)
    shear kernel           T(gamma) = 2*A2+(gamma), the clamp shear per unit
                           base deflection in reduced units
    distributed potential  V(alpha; x) = (w_c/w_b) * rho(x) * alpha^3 * T(alpha l(x))

All coefficient formulas are evaluated in a cosh-scaled form (divide through
by cosh(gamma)) so they stay finite for arbitrarily large gamma.  T has simple
poles at the clamped-free beam resonances gamma_k, the band edges; calls
within POLE_TOL of a pole raise PoleProximityError.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

POLE_TOL = 1e-12        # absolute gamma distance treated as "at the pole"
_ROOT_XTOL = 1e-15


class PoleProximityError(ValueError):
    """gamma is too close to a cantilever resonance for the kernel to be used."""

    def __init__(self, gamma: float, k: int, where: str = "gamma"):
        self.gamma = gamma
        self.k = k
        self.where = where
        super().__init__(
            f"{where} = {gamma!r} lies within {POLE_TOL} of band edge k={k}")


def _edge_residual(gamma):
    """cos(gamma) + sech(gamma); zero at the band edges, overflow-safe."""
    gamma = np.asarray(gamma, dtype=float)
    return np.cos(gamma) + 1.0 / np.cosh(gamma)


def band_edge_gammas(k_max: int) -> np.ndarray:
    """First k_max roots of 1 + cos(gamma) cosh(gamma) = 0, ascending.

    Root k lies in ((k-1) pi, k pi) and approaches (k - 1/2) pi.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    out = np.empty(k_max)
    f = lambda g: float(_edge_residual(g))
    for k in range(1, k_max + 1):
        lo = (k - 1) * np.pi if k > 1 else 1e-6
        out[k - 1] = brentq(f, lo, k * np.pi, xtol=_ROOT_XTOL)
    return out


def nearest_band_edge(gamma: float) -> tuple[int, float]:
    """(k, gamma_k) of the band edge closest to gamma."""
    k_hi = max(1, int(np.ceil(gamma / np.pi - 0.5)) + 1)
    edges = band_edge_gammas(k_hi + 1)
    k = int(np.argmin(np.abs(edges - gamma)))
    return k + 1, float(edges[k])


def check_pole_distance(gamma, where: str = "gamma") -> None:
    """Raise PoleProximityError if any entry of gamma sits on a band edge."""
    arr = np.atleast_1d(np.asarray(gamma, dtype=float))
    finite = arr[np.isfinite(arr) & (arr > 0)]
    if finite.size == 0:
        return
    for g in finite:
        k, edge = nearest_band_edge(float(g))
        if abs(g - edge) < POLE_TOL:
            raise PoleProximityError(float(g), k, where)


@dataclass(frozen=True)
class CantileverCoeffs:
    gamma: float
    a1_plus: float
    a1_minus: float
    a2_plus: float
    a2_minus: float


def _scaled_parts(gamma):
    """cos, sin, tanh, sech of gamma plus the cosh-scaled resonance denominator
    d = sech(gamma) + cos(gamma)  [= (1 + cos cosh)/cosh]."""
    gamma = np.asarray(gamma, dtype=float)
    c, s = np.cos(gamma), np.sin(gamma)
    th = np.tanh(gamma)
    sech = 1.0 / np.cosh(gamma)
    return c, s, th, sech, sech + c


def coeffs(gamma: float) -> CantileverCoeffs:
    """Response coefficients at one gamma; A1+ + A1- = 1, A2+ = -A2-."""
    check_pole_distance(gamma)
    c, s, th, sech, d = _scaled_parts(gamma)
    a1p = (d - s * th) / (2.0 * d)
    a1m = (d + s * th) / (2.0 * d)
    a2p = (c * th + s) / (2.0 * d)
    return CantileverCoeffs(gamma=float(gamma), a1_plus=float(a1p),
                            a1_minus=float(a1m), a2_plus=float(a2p),
                            a2_minus=float(-a2p))


def shear_kernel(gamma):
    """T(gamma) = (cos sinh + sin cosh)/(1 + cos cosh), vectorized.

    Small-gamma behavior T = gamma + gamma^5/20 + ...; simple poles at the
    band edges.  Input within POLE_TOL of an edge raises PoleProximityError.
    """
    check_pole_distance(gamma)
    c, s, th, sech, d = _scaled_parts(gamma)
    return (c * th + s) / d


class CantileverShape:
    """Relative deflection chi(v) of a cantilever riding a vibrating base.

    chi(0) = chi'(0) = 0 (rigid clamp follows the base) and the tip is free,
    chi''(1) = chi'''(1) = 0.  Derivatives up to order 3 are available.
    Evaluation combines the trig part with an exponentially-scaled hyperbolic
    part, finite for any gamma.
    """

    def __init__(self, gamma: float):
        check_pole_distance(gamma)
        self.gamma = float(gamma)
        if self.gamma == 0.0:
            self._coeffs = None
            return
        self._coeffs = coeffs(self.gamma)
        g = self.gamma
        c = np.cos(g)
        # e^{-gamma} * 2(1 + cos cosh), denominator of the hyperbolic part
        self._dhat = 2.0 * np.exp(-g) + c * (1.0 + np.exp(-2.0 * g))

    def __call__(self, v, derivative: int = 0):
        return self.eval(v, derivative)

    def eval(self, v, derivative: int = 0):
        if derivative not in (0, 1, 2, 3):
            raise ValueError("derivative order must be 0..3")
        v = np.asarray(v, dtype=float)
        if np.any(v < -1e-12) or np.any(v > 1.0 + 1e-12):
            raise ValueError("v must lie in [0, 1]")
        if self._coeffs is None:  # gamma == 0: cantilever rides rigidly
            return np.zeros_like(v)
        g = self.gamma
        a1p, a2p = self._coeffs.a1_plus, self._coeffs.a2_plus
        cg, sg = np.cos(g), np.sin(g)
        # hyperbolic part numerator, scaled by e^{-gamma}:
        #   P(v) = cosh(g v) + cos(g) cosh(g(1-v)) + sin(g) sinh(g(1-v))
        e_up = np.exp(-g * (1.0 - v))   # e^{-g(1-v)}
        e_dn = np.exp(-g * v)           # e^{-g v}
        e_far = np.exp(-g * (1.0 + v))
        e_ref = np.exp(-g * (2.0 - v))
        ch_v = 0.5 * (e_up + e_far)
        sh_v = 0.5 * (e_up - e_far)
        ch_1mv = 0.5 * (e_dn + e_ref)
        sh_1mv = 0.5 * (e_dn - e_ref)
        p_even = ch_v + cg * ch_1mv + sg * sh_1mv      # P-hat
        p_odd = sh_v - cg * sh_1mv - sg * ch_1mv       # P-hat'/gamma
        cv, sv = np.cos(g * v), np.sin(g * v)
        if derivative == 0:
            return a1p * cv + a2p * sv + p_even / self._dhat - 1.0
        if derivative == 1:
            return g * (-a1p * sv + a2p * cv + p_odd / self._dhat)
        if derivative == 2:
            return g * g * (-a1p * cv - a2p * sv + p_even / self._dhat)
        return g ** 3 * (a1p * sv - a2p * cv + p_odd / self._dhat)

    def tip_deflection(self) -> float:
        return float(self.eval(1.0))


def potential(alpha: float, x, geometry, profile):
    """Averaged cantilever back-action V(alpha; x) on the beam equation, 1/m^4.

    Positive V stiffens the beam locally, negative V softens it.  Raises
    PoleProximityError when alpha*l(x) falls on a band edge, and ConfigError
    for profiles with no pointwise density (discrete combs).
    """
    from .model import (AlternatingProfile, ConfigError, DiscreteProfile,
                        TabulatedProfile, UniformProfile)
    x = np.asarray(x, dtype=float)
    L = geometry.beam_length
    if np.any(x < -1e-12) or np.any(x > L * (1 + 1e-12)):
        raise ConfigError("potential: x outside the beam span [0, L]")
    if isinstance(profile, UniformProfile):
        rho = 2.0 * geometry.count_per_side / L
        gam = alpha * profile.length
        check_pole_distance(gam, where="alpha*l")
        w = geometry.cantilever_width / geometry.beam_width
        val = w * rho * alpha ** 3 * shear_kernel(gam)
        return np.broadcast_to(np.asarray(val), x.shape).copy() if x.shape else val
    if isinstance(profile, AlternatingProfile):
        out = 0.0
        for ln, wd, ct in ((profile.length1, profile.width1, profile.count1),
                           (profile.length2, profile.width2, profile.count2)):
            if ct == 0:
                continue
            gam = alpha * ln
            check_pole_distance(gam, where="alpha*l")
            out += (wd / geometry.beam_width) * (2.0 * ct / L) \
                * alpha ** 3 * shear_kernel(gam)
        return np.broadcast_to(np.asarray(out), x.shape).copy() if x.shape else out
    if isinstance(profile, TabulatedProfile):
        l_of_x, rho_of_x = profile.interpolants()
        lx = l_of_x(x)
        gam = alpha * lx
        check_pole_distance(gam, where="alpha*l(x)")
        w = geometry.cantilever_width / geometry.beam_width
        return w * rho_of_x(x) * alpha ** 3 * shear_kernel(gam)
    if isinstance(profile, DiscreteProfile):
        raise ConfigError("potential: discrete combs have no pointwise density; "
                          "use the projection solver instead")
    raise ConfigError(f"potential: unsupported profile {type(profile).__name__}")
