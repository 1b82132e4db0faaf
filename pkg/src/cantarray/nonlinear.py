"""Two-mode nonlinear response of a cantilever-array resonator.

When the beam's fundamental flexural mode is paired with the first two
cantilever bands, the slow dynamics reduce to two coupled oscillators: the
collective mode (cantilevers ride the beam almost rigidly) and the high
band mode (cantilevers flex against it).  Geometric stretching of both the
beam and the cantilevers makes each oscillator a Duffing resonator, and
the shared beam shape couples their amplitudes.

Everything here works with the reduced amplitude equations.  Detuning,
damping and drive are taken as already scaled onto the slow time, so the
coefficients below enter the response formulas exactly as given; no
separate bookkeeping small parameter appears in the API.

Steady states of the coupled pair are roots of per-mode cubics in the
squared amplitude.  Those cubics are solved in closed form on a rescaled
variable (the squared peak amplitude sets the scale) and polished with a
Newton step, which keeps them reliable across the ~40 orders of magnitude
the physical coefficients span.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .beam import BeamMode, beam_modes
from .kernel import CantileverShape, shear_kernel
from .model import (BoundaryCondition, ConfigError, DeviceGeometry,
                    NonlinearSettings, UniformProfile, dimensionless)
from .quadrature import adaptive_quad, cumulative_square_quad
from .spectrum import gamma_to_omega, solve_uniform_dimensionless

__all__ = [
    "TwoModeSelection", "BeamConstants", "OverlapIntegrals",
    "EffectiveParams", "ResponsePoint", "ShiftRoot", "ResponseField",
    "SteadyStateWarning", "select_modes", "beam_constants",
    "beam_constants_closed", "overlap_integrals", "carried_shape_mean",
    "effective_params",
    "backbone", "peak_amplitude", "coupled_steady_state", "steady_residual",
    "shift_of_fundamental", "reconstruct_solution",
]


class SteadyStateWarning(UserWarning):
    """A steady-state candidate was dropped or a search came up empty."""


# ---------------------------------------------------------------------------
# mode selection


@dataclass(frozen=True)
class TwoModeSelection:
    """Fundamental beam mode paired with its first two array levels."""

    mode: BeamMode = field(compare=False)
    beta: float
    lam: float
    nu: float
    gamma1: float            # collective level, first band
    gamma2: float            # flexing level, second band
    omega1: float            # rad/s
    omega2: float
    shape1: CantileverShape = field(compare=False)
    shape2: CantileverShape = field(compare=False)
    beam_length: float
    cantilever_length: float


def select_modes(geometry: DeviceGeometry, profile: UniformProfile,
                 bc: BoundaryCondition) -> TwoModeSelection:
    """Pick the two interacting levels of the fundamental beam mode.

    The first-band root gives the collective mode, the second-band root the
    cantilever-flexing mode.  Needs at least one cantilever per side since
    the second band does not exist on a bare beam.
    """
    if geometry.count_per_side < 1:
        raise ConfigError("two-mode reduction needs count_per_side >= 1")
    params = dimensionless(geometry, profile)
    mode = beam_modes(bc, 1)[0]
    gammas = solve_uniform_dimensionless(params, np.array([mode.beta]), 2)[0]
    g1, g2 = float(gammas[0]), float(gammas[1])
    return TwoModeSelection(
        mode=mode, beta=mode.beta, lam=params.lam, nu=params.nu,
        gamma1=g1, gamma2=g2,
        omega1=gamma_to_omega(g1, geometry, profile.length),
        omega2=gamma_to_omega(g2, geometry, profile.length),
        shape1=CantileverShape(g1), shape2=CantileverShape(g2),
        beam_length=geometry.beam_length, cantilever_length=profile.length)


# ---------------------------------------------------------------------------
# overlap integrals


@dataclass(frozen=True)
class BeamConstants:
    """Shape integrals of one beam mode entering the amplitude equations.

    stretch_inertia   int_0^1 (int_0^u phi'^2) du   accumulated stretch
    curvature_quartic int (phi' phi'')^2 du         stretching stiffness
    shape_quartic     int phi^4 du                  cantilever-term weight
    mean_shape        int phi du                    drive overlap
    """

    stretch_inertia: float
    curvature_quartic: float
    shape_quartic: float
    mean_shape: float


def beam_constants(mode: BeamMode, rtol: float = 1e-9) -> BeamConstants:
    """Beam shape integrals by adaptive quadrature (any mode, any family).

    The nested stretch integral collapses exactly by swapping the order of
    integration, int_0^1 int_0^u f(v) dv du = int_0^1 (1 - v) f(v) dv, so a
    single composite rule handles it too.
    """
    panels = max(8, 2 * int(math.ceil(mode.beta / math.pi)))

    def quad(f):
        return adaptive_quad(f, 0.0, 1.0, rtol=rtol, initial_panels=panels)

    return BeamConstants(
        stretch_inertia=quad(lambda u: (1.0 - u) * mode(u, 1) ** 2),
        curvature_quartic=quad(lambda u: (mode(u, 1) * mode(u, 2)) ** 2),
        shape_quartic=quad(lambda u: mode(u) ** 4),
        # antisymmetric modes have exactly zero mean, needs the atol escape
        mean_shape=adaptive_quad(lambda u: mode(u), 0.0, 1.0, rtol=rtol,
                                 initial_panels=panels, atol=1e-13),
    )


def beam_constants_closed(beta: float) -> BeamConstants:
    """Closed forms of the beam shape integrals at a clamped-clamped root.

    Valid at odd-index roots (symmetric modes), where cos(beta) = sech(beta)
    and sin(beta) = -tanh(beta) hold with that sign; everything reduces to
    t = tan(beta/2).  Even-index (antisymmetric) modes flip the sign of t
    and have zero mean, so these expressions do not apply there.
    """
    t = math.tan(0.5 * beta)
    bt = beta * t
    return BeamConstants(
        stretch_inertia=0.5 * bt * (bt + 2.0),
        curvature_quartic=(beta ** 5) * t * (5.0 * bt + 11.0) / 10.0,
        shape_quartic=0.75 * (3.0 - t ** 4 - 2.0 * t ** 3 / beta),
        mean_shape=4.0 * t / beta,
    )


@dataclass(frozen=True)
class OverlapIntegrals:
    """Beam and cantilever shape integrals for the two-mode reduction.

    Cantilever entries use the total carried shape h_i(v) = 1 + chi_i(v),
    base motion plus relative flexing, indexed by level (1 = collective,
    2 = flexing):

    mass_overlap[i, j]       int h_i h_j dv
    damping_overlap[i, j]    int h_i (h_j - 1) dv       drag on relative motion
    stretch_overlap[i, j]    int (int_0^v h_i' h_j')^2 dv
    curvature_overlap[i, j, k, l]  int h_i' h_j' h_k'' h_l'' dv

    Arrays are 0-indexed; element [0, 1] couples level 1 to level 2.
    """

    beam: BeamConstants
    mass_overlap: np.ndarray = field(compare=False)
    damping_overlap: np.ndarray = field(compare=False)
    stretch_overlap: np.ndarray = field(compare=False)
    curvature_overlap: np.ndarray = field(compare=False)


def overlap_integrals(selection: TwoModeSelection,
                      rtol: float = 1e-9) -> OverlapIntegrals:
    """All shape integrals of the reduction, by adaptive quadrature.

    The carried shapes are mild (gamma below the second band edge), so a
    handful of panel doublings resolves every entry; the near-zero entries
    (the collective shape barely flexes) converge too because their
    integrands are non-negative.
    """
    shapes = (selection.shape1, selection.shape2)

    def h(i, v, d=0):
        chi = shapes[i](v, d)
        return chi + 1.0 if d == 0 else chi

    def quad(f):
        return adaptive_quad(f, 0.0, 1.0, rtol=rtol)

    mass = np.empty((2, 2))
    damp = np.empty((2, 2))
    stretch = np.empty((2, 2))
    for i in range(2):
        for j in range(i, 2):
            mass[i, j] = mass[j, i] = quad(lambda v: h(i, v) * h(j, v))
            stretch[i, j] = stretch[j, i] = cumulative_square_quad(
                lambda v: h(i, v, 1) * h(j, v, 1), 0.0, 1.0, rtol=rtol)
        for j in range(2):
            # depends on which shape sits in the drag factor, not symmetric
            damp[i, j] = quad(lambda v: h(i, v) * shapes[j](v))

    curv = np.empty((2, 2, 2, 2))
    for i in range(2):
        for j in range(i, 2):
            for k in range(2):
                for l in range(k, 2):
                    val = quad(lambda v: h(i, v, 1) * h(j, v, 1)
                               * h(k, v, 2) * h(l, v, 2))
                    for a, b in ((i, j), (j, i)):
                        for c, d in ((k, l), (l, k)):
                            curv[a, b, c, d] = val

    return OverlapIntegrals(
        beam=beam_constants(selection.mode, rtol=rtol),
        mass_overlap=mass, damping_overlap=damp,
        stretch_overlap=stretch, curvature_overlap=curv)


def carried_shape_mean(selection: TwoModeSelection, i: int) -> float:
    """Mean of the carried shape, from the shear kernel alone.

    int h_i dv equals T(gamma_i)/gamma_i, so the diagonal damping overlap
    must equal mass_overlap[i, i] minus this value.  Cross-check only.
    """
    g = (selection.gamma1, selection.gamma2)[i]
    return float(shear_kernel(np.array([g]))[0]) / g


# ---------------------------------------------------------------------------
# effective oscillator parameters


@dataclass(frozen=True)
class EffectiveParams:
    """Coefficients of the two coupled amplitude equations (SI).

    Each mode j obeys a damped driven Duffing equation in its slow
    amplitude: mass (kg), linear damping rate coefficient (kg/s),
    cubic self coupling (kg m^-2 s^-2), drive (N).  The cross coupling
    shifts each mode's frequency in proportion to the other's squared
    amplitude.
    """

    omega1: float
    omega2: float
    mass1: float
    mass2: float
    damping1: float
    damping2: float
    self_coupling1: float
    self_coupling2: float
    cross_coupling: float
    drive1: float
    drive2: float
    drive_per_force: float   # drive = this factor times modal force density

    def omega(self, j: int) -> float:
        return (self.omega1, self.omega2)[j - 1]

    def mass(self, j: int) -> float:
        return (self.mass1, self.mass2)[j - 1]

    def damping(self, j: int) -> float:
        return (self.damping1, self.damping2)[j - 1]

    def self_coupling(self, j: int) -> float:
        return (self.self_coupling1, self.self_coupling2)[j - 1]

    def drive(self, j: int) -> float:
        return (self.drive1, self.drive2)[j - 1]


def effective_params(selection: TwoModeSelection, integrals: OverlapIntegrals,
                     geometry: DeviceGeometry,
                     settings: NonlinearSettings) -> EffectiveParams:
    """Reduce geometry plus overlaps to the coupled-oscillator coefficients.

    Masses count the beam plus every cantilever weighted by its carried
    shape.  Damping splits into beam drag on the full length and cantilever
    drag on the relative motion.  The cubic couplings collect stretching
    inertia and stretching stiffness of the beam and of the cantilevers,
    the latter weighted by the quartic beam-shape integral.
    """
    L = geometry.beam_length
    ell = selection.cantilever_length
    n2 = 2.0 * geometry.count_per_side          # cantilevers per station pair
    m_beam = geometry.beam_linear_density * L
    m_cant = geometry.cantilever_linear_density * ell
    rig_beam = geometry.beam_rigidity
    rig_cant = geometry.cantilever_rigidity
    bb = integrals.beam
    mass_ov = integrals.mass_overlap
    damp_ov = integrals.damping_overlap
    stretch_ov = integrals.stretch_overlap
    curv_ov = integrals.curvature_overlap
    w1, w2 = selection.omega1, selection.omega2
    wsum = w1 * w1 + w2 * w2

    def modal_mass(j):
        return m_beam + n2 * m_cant * mass_ov[j, j]

    def modal_damping(j):
        return 0.5 * (L * settings.damping_beam
                      + n2 * ell * settings.damping_cantilever * damp_ov[j, j])

    def self_coupling(j, w):
        cant = (m_cant * w * w * stretch_ov[j, j]
                - 3.0 * rig_cant * curv_ov[j, j, j, j] / ell ** 3)
        return (bb.stretch_inertia * m_beam * w * w / L ** 2
                - 3.0 * bb.curvature_quartic * rig_beam / L ** 5
                + n2 * bb.shape_quartic * cant / ell ** 2)

    cross_cant = (m_cant * wsum * stretch_ov[0, 1]
                  - rig_cant / ell ** 3 * (curv_ov[0, 0, 1, 1]
                                           + curv_ov[1, 1, 0, 0]
                                           + 4.0 * curv_ov[0, 1, 0, 1]))
    cross = (bb.stretch_inertia * m_beam * wsum / L ** 2
             - 6.0 * bb.curvature_quartic * rig_beam / L ** 5
             + n2 * bb.shape_quartic * cross_cant / ell ** 2)

    drive_per_force = 0.5 * L * bb.mean_shape
    return EffectiveParams(
        omega1=w1, omega2=w2,
        mass1=modal_mass(0), mass2=modal_mass(1),
        damping1=modal_damping(0), damping2=modal_damping(1),
        self_coupling1=self_coupling(0, w1), self_coupling2=self_coupling(1, w2),
        cross_coupling=cross,
        drive1=drive_per_force * settings.force1,
        drive2=drive_per_force * settings.force2,
        drive_per_force=drive_per_force)


# ---------------------------------------------------------------------------
# single-mode response


def peak_amplitude(j: int, params: EffectiveParams) -> float:
    """Largest steady amplitude of mode j, reached where the drive balances
    the damping exactly; independent of every coupling coefficient."""
    mu = params.damping(j)
    if mu == 0.0:
        raise ConfigError(f"mode {j} is undamped, response is unbounded")
    return abs(params.drive(j) / (mu * params.omega(j)))


def backbone(j: int, amplitude: float, other_amplitude: float,
             params: EffectiveParams) -> tuple[float, float] | None:
    """The two detunings at which mode j holds the given amplitude.

    Returns (lower, upper) branch detunings in rad/s, or None when the
    amplitude exceeds the peak and no steady state exists.  The other
    mode's amplitude only shifts the backbone's center.
    """
    if amplitude <= 0.0:
        raise ValueError("amplitude must be positive")
    w, m = params.omega(j), params.mass(j)
    center = (params.self_coupling(j) * amplitude ** 2
              + params.cross_coupling * other_amplitude ** 2) / (4.0 * m * w)
    rad = (params.drive(j) / (m * w * amplitude)) ** 2 - (params.damping(j) / m) ** 2
    if rad < 0.0:
        return None
    half = math.sqrt(rad)
    return (center - half, center + half)


# ---------------------------------------------------------------------------
# cubic machinery

_CUBIC_IMAG_TOL = 1e-7


def _real_cubic_roots(coeffs, scale: float) -> list[float]:
    """Real roots of a cubic (or lower degree) with roots of size ~scale.

    The variable is rescaled before the closed-form companion solve so the
    coefficients stay O(1), then each root gets Newton polish in the scaled
    variable.  Roots with a relative imaginary part above 1e-7 are dropped.
    """
    if scale <= 0.0:
        scale = 1.0
    c = np.array([coeffs[0] * scale ** 3, coeffs[1] * scale ** 2,
                  coeffs[2] * scale, coeffs[3]], dtype=float)
    top = np.max(np.abs(c))
    if top == 0.0:
        return []
    c /= top
    roots = np.roots(c)   # trims a vanishing leading coefficient itself
    out = []
    dc = np.polyder(c)
    for r in roots:
        if abs(r.imag) > _CUBIC_IMAG_TOL * max(abs(r), 1.0):
            continue
        y = float(r.real)
        for _ in range(3):
            slope = np.polyval(dc, y)
            if slope == 0.0:
                break
            step = np.polyval(c, y) / slope
            y -= step
            if abs(step) <= 1e-16 * max(abs(y), 1.0):
                break
        out.append(y * scale)
    return out


def _mode_cubic_roots(j: int, z_other: float, sigma: float,
                      params: EffectiveParams) -> list[float]:
    """Squared amplitudes z of mode j in steady state, other mode fixed.

    z ((C z + C12 z_other)/4 - w sigma M)^2 + w^2 mu^2 z = F^2, a cubic in
    z with at most three admissible roots; z is clipped to [0, peak^2].
    """
    w, m = params.omega(j), params.mass(j)
    mu, drv = params.damping(j), params.drive(j)
    cself = params.self_coupling(j)
    off = 0.25 * params.cross_coupling * z_other - w * sigma * m
    coeffs = (cself ** 2 / 16.0, 0.5 * cself * off,
              off ** 2 + (w * mu) ** 2, -drv ** 2)
    mags = [abs(coeffs[3]) / max(abs(coeffs[0]), 1e-300),
            abs(coeffs[3]) / max(abs(coeffs[2]), 1e-300),
            abs(coeffs[1]) / max(abs(coeffs[0]), 1e-300)]
    scale = max(mags[0] ** (1.0 / 3.0), mags[1], mags[2], 1e-300)
    zmax = (drv / (mu * w)) ** 2 if mu > 0.0 and drv != 0.0 else math.inf
    out = []
    for z in _real_cubic_roots(coeffs, scale):
        if z < -1e-9 * scale or z > zmax * (1.0 + 1e-9):
            continue
        out.append(min(max(z, 0.0), zmax))
    if drv == 0.0 and not any(z == 0.0 for z in out):
        out.append(0.0)   # undriven mode always admits rest
    return sorted(set(out))


def steady_residual(z1: float, z2: float, sigma1: float, sigma2: float,
                    params: EffectiveParams) -> float:
    """Largest relative defect of the two steady-state conditions at the
    squared amplitudes (z1, z2)."""
    worst = 0.0
    for j, zj, zo, sig in ((1, z1, z2, sigma1), (2, z2, z1, sigma2)):
        w, m = params.omega(j), params.mass(j)
        mu, drv = params.damping(j), params.drive(j)
        off = 0.25 * (params.self_coupling(j) * zj
                      + params.cross_coupling * zo) - w * sig * m
        lhs = zj * (off ** 2 + (w * mu) ** 2)
        scale = max(abs(lhs), abs(zj) * off ** 2, abs(zj) * (w * mu) ** 2,
                    drv ** 2, 1e-300)
        worst = max(worst, abs(lhs - drv ** 2) / scale)
    return worst


def _phase(j: int, zj: float, zo: float, sigma: float,
           params: EffectiveParams) -> float:
    """Drive phase lag from the two steady conditions, quadrant correct."""
    drv = params.drive(j)
    if zj <= 0.0 or drv == 0.0:
        return 0.0
    a = math.sqrt(zj)
    w, m = params.omega(j), params.mass(j)
    cos_part = (0.25 * a * (params.self_coupling(j) * zj
                            + params.cross_coupling * zo)
                - w * sigma * m * a) / drv
    sin_part = w * params.damping(j) * a / drv
    return math.atan2(sin_part, cos_part)


def _branch(j: int, zj: float, zo: float, sigma: float,
            params: EffectiveParams) -> str:
    """Which square-root branch of the response curve the point sits on."""
    w, m = params.omega(j), params.mass(j)
    center = (params.self_coupling(j) * zj
              + params.cross_coupling * zo) / (4.0 * m * w)
    s = sigma - center
    tol = 1e-9 * max(abs(sigma), abs(center), params.damping(j) / m, 1e-300)
    if s > tol:
        return "+"
    if s < -tol:
        return "-"
    return "0"


@dataclass(frozen=True)
class ResponsePoint:
    """One mode's steady response: amplitude (m), phase lag (rad), detuning
    sigma (rad/s) and the square-root branch it lies on ('+', '-', '0')."""

    mode: int
    sigma: float
    amplitude: float
    phase: float
    branch: str


def _newton_polish(z1: float, z2: float, sigma1: float, sigma2: float,
                   params: EffectiveParams) -> tuple[float, float]:
    """A few damped Newton steps on the pair of steady-state cubics."""
    z = np.array([max(z1, 0.0), max(z2, 0.0)])
    sig = (sigma1, sigma2)
    fscale = np.array([max(params.drive(j) ** 2, 1e-300) for j in (1, 2)])
    for _ in range(12):
        f = np.empty(2)
        jac = np.zeros((2, 2))
        for i, j in enumerate((1, 2)):
            w, m = params.omega(j), params.mass(j)
            mu = params.damping(j)
            cs, cx = params.self_coupling(j), params.cross_coupling
            off = 0.25 * (cs * z[i] + cx * z[1 - i]) - w * sig[i] * m
            f[i] = z[i] * (off ** 2 + (w * mu) ** 2) - params.drive(j) ** 2
            jac[i, i] = off ** 2 + (w * mu) ** 2 + 0.5 * z[i] * off * cs
            jac[i, 1 - i] = 0.5 * z[i] * off * cx
        if np.all(np.abs(f) <= 1e-15 * fscale):
            break
        try:
            step = np.linalg.solve(jac, f)
        except np.linalg.LinAlgError:
            break
        nxt = z - step
        if np.any(nxt < 0.0) or not np.all(np.isfinite(nxt)):
            break
        z = nxt
    return float(z[0]), float(z[1])


def coupled_steady_state(sigma1: float, sigma2: float,
                         params: EffectiveParams, max_iter: int = 200,
                         rtol: float = 1e-12,
                         ) -> list[tuple[ResponsePoint, ResponsePoint]]:
    """All steady amplitude pairs at the given detunings.

    Seeds come from solving each mode's cubic with the other at rest and
    then at each of those roots, in both orders.  Every seed is refined by
    alternating the two cubics (tracking the nearest root so a branch is
    followed, not hopped), finished with Newton on the pair.  Candidates
    that fail to settle within max_iter alternations are dropped with a
    warning; converged duplicates are merged.  Up to nine distinct pairs
    can survive when both modes sit in their multivalued regions.
    """
    seeds = []
    for first, second in ((1, 2), (2, 1)):
        sig = {1: sigma1, 2: sigma2}
        for za in _mode_cubic_roots(first, 0.0, sig[first], params):
            for zb in _mode_cubic_roots(second, za, sig[second], params):
                pair = {first: za, second: zb}
                seeds.append((pair[1], pair[2]))

    def nearest(roots, ref):
        return min(roots, key=lambda z: abs(z - ref))

    scale1 = max((z for z, _ in seeds), default=0.0)
    scale2 = max((z for _, z in seeds), default=0.0)
    found = []
    for z1, z2 in seeds:
        ok = False
        for _ in range(max_iter):
            r1 = _mode_cubic_roots(1, z2, sigma1, params)
            if not r1:
                break
            n1 = nearest(r1, z1)
            r2 = _mode_cubic_roots(2, n1, sigma2, params)
            if not r2:
                break
            n2 = nearest(r2, z2)
            moved = max(abs(n1 - z1) / max(abs(n1), rtol * scale1, 1e-300),
                        abs(n2 - z2) / max(abs(n2), rtol * scale2, 1e-300))
            z1, z2 = n1, n2
            if moved <= rtol:
                ok = True
                break
        if not ok:
            warnings.warn(
                f"steady-state candidate near ({z1:.3e}, {z2:.3e}) did not "
                f"settle in {max_iter} alternations; dropped",
                SteadyStateWarning, stacklevel=2)
            continue
        z1, z2 = _newton_polish(z1, z2, sigma1, sigma2, params)
        if steady_residual(z1, z2, sigma1, sigma2, params) > 1e-10:
            continue
        found.append((z1, z2))

    unique = []
    for z1, z2 in sorted(found):
        dup = any(abs(z1 - u1) <= 1e-10 * max(abs(z1), abs(u1), 1e-300)
                  and abs(z2 - u2) <= 1e-10 * max(abs(z2), abs(u2), 1e-300)
                  for u1, u2 in unique)
        if not dup:
            unique.append((z1, z2))

    out = []
    for z1, z2 in unique:
        out.append((
            ResponsePoint(1, sigma1, math.sqrt(max(z1, 0.0)),
                          _phase(1, z1, z2, sigma1, params),
                          _branch(1, z1, z2, sigma1, params)),
            ResponsePoint(2, sigma2, math.sqrt(max(z2, 0.0)),
                          _phase(2, z2, z1, sigma2, params),
                          _branch(2, z2, z1, sigma2, params)),
        ))
    return out


# ---------------------------------------------------------------------------
# frequency shift of the driven fundamental


@dataclass(frozen=True)
class ShiftRoot:
    """Flexing-mode amplitude at its own resonance peak and the detuning it
    imposes on the collective mode through the cross coupling."""

    amplitude2: float
    sigma1: float
    branch: str


def shift_of_fundamental(params: EffectiveParams, force1: float | None = None,
                         force2: float | None = None) -> list[ShiftRoot]:
    """Collective-mode detuning when both modes are driven at their peaks.

    The collective mode is held at its largest response, where its amplitude
    is drive over damping regardless of the couplings.  The flexing mode's
    peak condition then closes into a cubic for its squared amplitude,
    and each admissible root shifts the collective resonance by the cross
    coupling.  Passing force1/force2 (modal force densities) overrides the
    drives stored in params.

    Without a second drive the collective mode still detunes itself through
    its own cubic coefficient; that single root is returned directly.
    """
    f1 = params.drive1 if force1 is None else params.drive_per_force * force1
    f2 = params.drive2 if force2 is None else params.drive_per_force * force2
    mu1, mu2 = params.damping1, params.damping2
    if mu1 == 0.0 or mu2 == 0.0:
        raise ConfigError("both modes need nonzero damping at their peaks")
    w1, w2 = params.omega1, params.omega2
    m1, m2 = params.mass1, params.mass2
    c11, c22 = params.self_coupling1, params.self_coupling2
    c12 = params.cross_coupling
    base = (f1 / (mu1 * w1)) ** 2     # collective peak amplitude, squared

    def sigma_at(z2):
        return (c11 * base + c12 * z2) / (4.0 * m1 * w1)

    if f2 == 0.0:
        return [ShiftRoot(amplitude2=0.0, sigma1=sigma_at(0.0), branch="0")]

    coeffs = (c22 ** 2, 2.0 * c22 * c12 * base,
              (c12 * base) ** 2 + 16.0 * (mu2 * w2) ** 2, -16.0 * f2 ** 2)
    zmax = (f2 / (mu2 * w2)) ** 2
    roots = _real_cubic_roots(coeffs, zmax)
    admissible = []
    rejected = []
    for z in roots:
        if -1e-9 * zmax <= z <= zmax * (1.0 + 1e-9):
            admissible.append(min(max(z, 0.0), zmax))
        else:
            rejected.append(z)
    if not admissible:
        near = min(rejected, key=lambda z: abs(z - zmax), default=None)
        detail = (f"nearest real root {near:.6e} vs admissible max {zmax:.6e}"
                  if near is not None else "no real roots at all")
        warnings.warn("no admissible flexing-mode amplitude: " + detail,
                      SteadyStateWarning, stacklevel=2)
        return []

    out = []
    for z in sorted(set(admissible)):
        bracket = (c22 * z + c12 * base) / (4.0 * m2 * w2)
        tol = 1e-9 * max(abs(bracket), mu2 / m2)
        branch = "0" if abs(bracket) <= tol else ("+" if bracket < 0.0 else "-")
        out.append(ShiftRoot(amplitude2=math.sqrt(z), sigma1=sigma_at(z),
                             branch=branch))
    return out


# ---------------------------------------------------------------------------
# physical-space reconstruction


@dataclass(frozen=True)
class ResponseField:
    """Steady deflection field of the array, sampled in SI coordinates.

    The whole structure moves on the fundamental beam shape; each of the
    two levels adds its own cantilever flexing profile, amplitude, phase
    and drive frequency (resonance plus detuning).
    """

    selection: TwoModeSelection
    point1: ResponsePoint
    point2: ResponsePoint

    def _parts(self, t):
        t = np.asarray(t, dtype=float)
        out = []
        for p in (self.point1, self.point2):
            w = self.selection.omega1 if p.mode == 1 else self.selection.omega2
            out.append(p.amplitude * np.cos((w + p.sigma) * t - p.phase))
        return out

    def beam_deflection(self, x, t):
        """Beam displacement y(x, t); x in [0, beam_length], t in s."""
        u = np.asarray(x, dtype=float) / self.selection.beam_length
        c1, c2 = self._parts(t)
        return self.selection.mode(u) * (c1 + c2)

    def cantilever_relative(self, x, xi, t):
        """Cantilever deflection relative to its base at station x; xi runs
        along the cantilever in [0, cantilever_length]."""
        u = np.asarray(x, dtype=float) / self.selection.beam_length
        v = np.asarray(xi, dtype=float) / self.selection.cantilever_length
        c1, c2 = self._parts(t)
        return self.selection.mode(u) * (self.selection.shape1(v) * c1
                                         + self.selection.shape2(v) * c2)

    def cantilever_total(self, x, xi, t):
        """Absolute cantilever displacement, base motion included."""
        u = np.asarray(x, dtype=float) / self.selection.beam_length
        v = np.asarray(xi, dtype=float) / self.selection.cantilever_length
        c1, c2 = self._parts(t)
        h1 = self.selection.shape1(v) + 1.0
        h2 = self.selection.shape2(v) + 1.0
        return self.selection.mode(u) * (h1 * c1 + h2 * c2)


def reconstruct_solution(pair: tuple[ResponsePoint, ResponsePoint],
                         selection: TwoModeSelection) -> ResponseField:
    """Physical-space sampler for one steady-state pair."""
    p1, p2 = pair
    if {p1.mode, p2.mode} != {1, 2}:
        raise ValueError("pair must hold one point per mode")
    if p1.mode == 2:
        p1, p2 = p2, p1
    return ResponseField(selection=selection, point1=p1, point2=p2)
