import math

import numpy as np
import pytest

from cantarray import nonlinear as nl
from cantarray.beam import BeamMode, beam_roots
from cantarray.model import (BoundaryCondition, ConfigError,
                             NonlinearSettings, preset_device)

GEOM, PROF, BC = preset_device("jap1-calibrated")


@pytest.fixture(scope="module")
def sel():
    return nl.select_modes(GEOM, PROF, BC)


@pytest.fixture(scope="module")
def ints(sel):
    return nl.overlap_integrals(sel)


def params_for(sel, ints, f1, f2, damping=1e-6):
    settings = NonlinearSettings(damping_beam=damping,
                                 damping_cantilever=damping,
                                 force1=f1, force2=f2)
    return nl.effective_params(sel, ints, GEOM, settings)


def fold_force(par, linewidths=6.0):
    """Drive level that folds the collective-mode resonance by the given
    number of linewidths (bistable but numerically benign)."""
    width = par.damping1 / par.mass1
    ztarget = linewidths * width * 4 * par.mass1 * par.omega1 \
        / abs(par.self_coupling1)
    return math.sqrt(ztarget) * par.damping1 * par.omega1 \
        / abs(par.drive_per_force)


def test_select_modes_needs_cantilevers():
    bare = GEOM.__class__(**{**GEOM.to_dict(), "count_per_side": 0})
    with pytest.raises(ConfigError):
        nl.select_modes(bare, PROF, BC)


def test_selected_pair_regression(sel):
    # frozen values for the calibrated preset; guards against solver drift
    assert sel.gamma1 == pytest.approx(0.18760324063691297, rel=1e-12)
    assert sel.gamma2 == pytest.approx(2.0465671487130734, rel=1e-12)
    assert sel.omega1 / (2 * math.pi) == pytest.approx(24.7e6, rel=0.02)
    assert sel.omega2 / (2 * math.pi) == pytest.approx(2.94e9, rel=0.02)


def test_beam_constants_closed_matches_quadrature(sel):
    closed = nl.beam_constants_closed(sel.beta)
    quad = nl.beam_constants(sel.mode)
    for name in ("stretch_inertia", "curvature_quartic", "shape_quartic",
                 "mean_shape"):
        c, q = getattr(closed, name), getattr(quad, name)
        assert c == pytest.approx(q, rel=1e-7), name
    assert closed.stretch_inertia == pytest.approx(6.1513, abs=5e-4)
    assert closed.curvature_quartic == pytest.approx(2846.4975, abs=0.05)
    assert closed.shape_quartic == pytest.approx(1.8519, abs=5e-4)
    assert closed.mean_shape == pytest.approx(-0.8308, abs=5e-4)


def test_closed_forms_hold_on_symmetric_family():
    betas = beam_roots(BC, 15)
    for n in range(1, 16, 2):
        mode = BeamMode(n=n, beta=float(betas[n - 1]), bc=BC)
        closed = nl.beam_constants_closed(mode.beta)
        quad = nl.beam_constants(mode)
        for name in ("stretch_inertia", "curvature_quartic", "shape_quartic",
                     "mean_shape"):
            assert getattr(closed, name) == \
                pytest.approx(getattr(quad, name), rel=1e-7), (n, name)


def test_antisymmetric_family_breaks_closed_forms():
    betas = beam_roots(BC, 6)
    for n in (2, 4, 6):
        mode = BeamMode(n=n, beta=float(betas[n - 1]), bc=BC)
        quad = nl.beam_constants(mode)
        closed = nl.beam_constants_closed(mode.beta)
        # antisymmetric shapes integrate to zero; the closed form does not
        assert abs(quad.mean_shape) < 1e-10
        assert abs(closed.mean_shape) > 0.1
        rel = abs(closed.stretch_inertia - quad.stretch_inertia) \
            / abs(quad.stretch_inertia)
        assert rel > 0.05


def test_overlap_goldens_and_orderings(sel, ints):
    L = ints.mass_overlap
    lam = ints.damping_overlap
    i_ = ints.stretch_overlap
    k_ = ints.curvature_overlap
    assert 1.0000 <= L[0, 0] <= 1.0002
    assert lam[0, 0] < 1e-4
    assert i_[0, 0] < 1e-12
    assert i_[0, 0] < i_[0, 1] < i_[1, 1]
    flat = np.abs(k_).reshape(-1)
    assert k_[1, 1, 1, 1] == flat.max()
    for got, golden in ((L[1, 1], 3.89887), (lam[1, 1], 4.9687),
                        (i_[1, 1], 232.49), (k_[1, 1, 1, 1], 1.07e3)):
        assert abs(got - golden) / golden < 0.15
    # symmetric blocks really are symmetric
    assert L[0, 1] == L[1, 0]
    assert i_[0, 1] == i_[1, 0]


def test_damping_overlap_identity(sel, ints):
    # diagonal damping overlap equals mass overlap minus the carried mean
    for i in range(2):
        ident = ints.mass_overlap[i, i] - nl.carried_shape_mean(sel, i)
        got = ints.damping_overlap[i, i]
        assert abs(got - ident) <= max(1e-10 * abs(ident), 1e-12)


def test_effective_params_goldens(sel, ints):
    par = params_for(sel, ints, 1.0, 1.0)
    assert par.mass1 == pytest.approx(1.74e-14, rel=0.01)
    assert par.mass2 == pytest.approx(4.17e-14, rel=0.01)
    assert par.self_coupling1 == pytest.approx(-5.07e13, rel=0.05)
    assert par.self_coupling2 == pytest.approx(1.05e21, rel=0.05)
    assert par.cross_coupling == pytest.approx(1.65e17, rel=0.05)
    assert par.drive_per_force == pytest.approx(-4.44e-6, rel=0.01)
    assert par.self_coupling1 < 0 < par.cross_coupling
    # accessor aliases agree with the flat fields
    assert par.mass(1) == par.mass1 and par.mass(2) == par.mass2
    assert par.omega(1) == par.omega1


def test_peak_amplitude_and_backbone(sel, ints):
    par = params_for(sel, ints, 1.0, 1.0)
    a1max = nl.peak_amplitude(1, par)
    assert a1max == abs(par.drive1 / (par.damping1 * par.omega1))
    lo, hi = nl.backbone(1, a1max, 0.0, par)
    assert hi - lo <= 1e-6 * max(abs(lo), abs(hi))
    assert nl.backbone(1, 1.01 * a1max, 0.0, par) is None
    with pytest.raises(ValueError):
        nl.backbone(1, 0.0, 0.0, par)
    undamped = params_for(sel, ints, 1.0, 1.0, damping=0.0)
    with pytest.raises(ConfigError):
        nl.peak_amplitude(1, undamped)


def test_single_drive_reduces_to_duffing(sel, ints):
    par = params_for(sel, ints, 1.0, 0.0)
    for frac in (-2.0, -0.5, 0.0, 0.5, 2.0):
        sig1 = frac * par.damping1 / par.mass1
        pairs = nl.coupled_steady_state(sig1, 0.0, par)
        assert pairs
        for p1, p2 in pairs:
            assert p2.amplitude == 0.0
            lo, hi = nl.backbone(1, p1.amplitude, 0.0, par)
            scale = max(abs(lo), abs(hi), 1e-300)
            assert min(abs(sig1 - lo), abs(sig1 - hi)) / scale < 1e-8


def test_bistable_window_has_three_states(sel, ints):
    probe = params_for(sel, ints, 1.0, 0.0)
    par = params_for(sel, ints, fold_force(probe), 0.0)
    zpk = nl.peak_amplitude(1, par) ** 2
    fold = par.self_coupling1 * zpk / (4 * par.mass1 * par.omega1)
    count3 = 0
    for frac in np.linspace(0.05, 1.1, 25):
        sig1 = fold * frac
        pairs = nl.coupled_steady_state(sig1, 0.0, par)
        if len(pairs) == 3:
            count3 += 1
        for p1, p2 in pairs:
            assert nl.steady_residual(p1.amplitude ** 2, p2.amplitude ** 2,
                                      sig1, 0.0, par) < 1e-10
    assert count3 >= 3


def test_coupled_states_satisfy_amplitude_equations(sel, ints):
    probe = params_for(sel, ints, 1.0, 0.0)
    ffold = fold_force(probe)
    par = params_for(sel, ints, ffold, 3.0 * ffold)
    rng = np.random.default_rng(11)
    for _ in range(15):
        sc1 = par.self_coupling1 * nl.peak_amplitude(1, par) ** 2 \
            / (4 * par.mass1 * par.omega1)
        sc2 = par.self_coupling2 * nl.peak_amplitude(2, par) ** 2 \
            / (4 * par.mass2 * par.omega2)
        sig1 = float(rng.uniform(-1.5, 1.5)) \
            * max(abs(sc1), par.damping1 / par.mass1)
        sig2 = float(rng.uniform(-1.5, 1.5)) \
            * max(abs(sc2), par.damping2 / par.mass2)
        pairs = nl.coupled_steady_state(sig1, sig2, par)
        assert pairs
        for p1, p2 in pairs:
            assert nl.steady_residual(p1.amplitude ** 2, p2.amplitude ** 2,
                                      sig1, sig2, par) < 1e-10


def test_shift_monotone_in_second_drive(sel, ints):
    probe = params_for(sel, ints, 1.0, 0.0)
    ffold = fold_force(probe)
    par = params_for(sel, ints, ffold, 3.0 * ffold)
    shifts = []
    for f2 in np.geomspace(0.3, 3.0, 9):
        roots = nl.shift_of_fundamental(par, force1=ffold,
                                        force2=float(f2) * ffold)
        assert roots
        shifts.append(roots[-1].sigma1)
    assert np.all(np.diff(shifts) > 0)
    # no second drive: pure self-shift of the collective mode
    base = nl.shift_of_fundamental(par, force1=ffold, force2=0.0)
    assert len(base) == 1
    a1sq = (par.drive_per_force * ffold / (par.damping1 * par.omega1)) ** 2
    expect = par.self_coupling1 * a1sq / (4 * par.mass1 * par.omega1)
    assert base[0].sigma1 == pytest.approx(expect, rel=1e-12)
    assert base[0].amplitude2 == 0.0


def test_shift_roots_back_substitute(sel, ints):
    probe = params_for(sel, ints, 1.0, 0.0)
    ffold = fold_force(probe)
    par = params_for(sel, ints, ffold, 0.0)
    a1sq = (par.drive_per_force * ffold / (par.damping1 * par.omega1)) ** 2
    for f2 in (0.5 * ffold, 1.0 * ffold, 2.5 * ffold):
        roots = nl.shift_of_fundamental(par, force1=ffold, force2=f2)
        assert roots
        for r in roots:
            # the reported pair must solve both amplitude equations with the
            # flexing mode sitting at zero detuning from its shifted peak
            par_f2 = params_for(sel, ints, ffold, f2)
            res = nl.steady_residual(a1sq, r.amplitude2 ** 2,
                                     r.sigma1, 0.0, par_f2)
            assert res < 1e-10


def test_shift_requires_damping(sel, ints):
    undamped = params_for(sel, ints, 1.0, 1.0, damping=0.0)
    with pytest.raises(ConfigError):
        nl.shift_of_fundamental(undamped)


def test_linear_regime_scaling(sel, ints):
    pa = params_for(sel, ints, 1e-12, 1e-12)
    pb = params_for(sel, ints, 2e-12, 2e-12)
    sta = nl.coupled_steady_state(0.0, 0.0, pa)
    stb = nl.coupled_steady_state(0.0, 0.0, pb)
    assert len(sta) == len(stb) == 1
    for i in range(2):
        ratio = stb[0][i].amplitude / sta[0][i].amplitude
        assert ratio == pytest.approx(2.0, abs=1e-9)


def test_reconstruction_field(sel, ints):
    par = params_for(sel, ints, 1e-9, 1e-9)
    pairs = nl.coupled_steady_state(0.0, 0.0, par)
    field = nl.reconstruct_solution(pairs[0], sel)
    p1, p2 = pairs[0]
    x = 0.5 * sel.beam_length
    phi_mid = float(sel.mode(np.array([0.5]))[0])
    period = 2 * math.pi / (par.omega1 + p1.sigma)
    ts = np.linspace(0.0, 5000 * period, 200001)
    msq = np.mean(field.beam_deflection(x, ts) ** 2)
    expect = 0.5 * phi_mid ** 2 * (p1.amplitude ** 2 + p2.amplitude ** 2)
    assert msq == pytest.approx(expect, rel=1e-2)
    # total cantilever motion = carried base + relative flex
    xi = np.array([0.25e-7, 2.5e-7, 5.0e-7])
    tot = field.cantilever_total(x, xi, 1e-9)
    relv = field.cantilever_relative(x, xi, 1e-9)
    base = field.beam_deflection(x, 1e-9)
    assert np.allclose(tot, relv + base, rtol=1e-12)
    # swapped pair order is accepted, mode mix is rejected
    swapped = nl.reconstruct_solution((p2, p1), sel)
    assert swapped.point1.mode == 1
    with pytest.raises(ValueError):
        nl.reconstruct_solution((p1, p1), sel)
