import numpy as np
import pytest
from scipy.optimize import brentq

from cantarray import spectrum as sp
from cantarray.beam import beam_roots
from cantarray.kernel import band_edge_gammas
from cantarray.model import (AlternatingProfile, BoundaryCondition,
                             ConfigError, DimensionlessParams, UniformProfile,
                             dimensionless, preset_device)

CC = BoundaryCondition.CLAMPED_CLAMPED


def test_uniform_roots_against_brentq():
    # independent root find on the raw secular function, away from the poles
    params = DimensionlessParams(lam=0.3, nu=15.0)
    betas = beam_roots(CC, 4)
    gammas = sp.solve_uniform_dimensionless(params, betas, 4)
    edges = band_edge_gammas(4)
    for n in range(4):
        beta = betas[n]
        for k in range(4):
            lo = 1e-6 if k == 0 else edges[k - 1] + 1e-6
            hi = edges[k] - 1e-6
            f = lambda g: float(sp.secular_uniform(g, params, beta))
            assert f(lo) < 0 < f(hi)
            ref = brentq(f, lo, hi, xtol=1e-13)
            assert gammas[n, k] == pytest.approx(ref, abs=1e-10)


def test_roots_stay_inside_their_bands():
    rng = np.random.default_rng(11)
    betas = beam_roots(CC, 8)
    edges = band_edge_gammas(6)
    for _ in range(80):
        params = DimensionlessParams(lam=rng.uniform(0.01, 2.0),
                                     nu=rng.uniform(0.0, 1000.0))
        if params.nu == 0.0:
            continue
        g = sp.solve_uniform_dimensionless(params, betas, 6)
        for k in range(6):
            lo = 0.0 if k == 0 else edges[k - 1]
            assert np.all(g[:, k] > lo)
            assert np.all(g[:, k] < edges[k])
            # one root per beam index per band, ordered by beam index
            assert np.all(np.diff(g[:, k]) > 0)


def test_unloaded_array_reduces_to_bare_beam():
    params = DimensionlessParams(lam=0.25, nu=0.0)
    betas = beam_roots(CC, 3)
    g = sp.solve_uniform_dimensionless(params, betas, 3)
    assert np.allclose(g[:, 0], 0.25 * betas, rtol=0, atol=1e-14)
    assert np.all(np.isnan(g[:, 1:]))


def test_band_one_root_decreases_with_loading():
    # below the first kernel zero the carried mass only softens the level
    betas = beam_roots(CC, 1)
    lam = 0.3  # lam*beta1 ~ 1.42, inside band 1 territory
    prev = lam * betas[0]
    for nu in (1.0, 10.0, 100.0, 1e4):
        g = sp.solve_uniform_dimensionless(
            DimensionlessParams(lam=lam, nu=nu), betas, 1)[0, 0]
        assert g < prev
        prev = g


def test_crossing_ratio_first_mode():
    lam_star, omega_star = sp.crossing_ratio(1, 2, CC)
    assert lam_star == pytest.approx(0.5, abs=1e-15)
    assert omega_star is None
    with pytest.raises(ConfigError):
        sp.crossing_ratio(1, 1, CC)


def test_crossing_point_is_loading_independent():
    betas = beam_roots(CC, 1)
    pivot = 0.5 * betas[0]
    got = []
    for nu in (0.5, 5.0, 50.0, 500.0):
        g = sp.solve_uniform_dimensionless(
            DimensionlessParams(lam=0.5, nu=nu), betas, 2)[0, 1]
        got.append(g)
    assert np.allclose(got, pivot, rtol=0, atol=1e-9)
    geometry, profile, bc = preset_device("jap1-calibrated")
    _, omega_star = sp.crossing_ratio(1, 2, bc, geometry)
    bare = geometry.beam_wave_scale * (betas[0] / geometry.beam_length) ** 2
    assert omega_star == pytest.approx(bare, rel=1e-15)


def test_gamma_omega_round_trip():
    geometry, profile, _ = preset_device("jap1-calibrated")
    for g in (0.1, 1.0, 3.7, 11.0):
        w = sp.gamma_to_omega(g, geometry, profile.length)
        assert sp.omega_to_gamma(w, geometry, profile.length) == \
            pytest.approx(g, rel=1e-12)


def test_solve_uniform_levels_and_validity():
    geometry, profile, bc = preset_device("jap1-calibrated")
    levels = sp.solve_uniform(geometry, profile, bc, n_max=3, k_max=3)
    assert len(levels) == 9
    for lv in levels:
        assert lv.band_lower < lv.gamma < lv.band_upper
        assert lv.omega == pytest.approx(
            sp.gamma_to_omega(lv.gamma, geometry, profile.length), rel=1e-15)
        assert lv.valid  # n <= 3 << 20 pairs per side
    small = geometry.__class__(**{**geometry.to_dict(), "count_per_side": 2})
    levels = sp.solve_uniform(geometry.__class__(**{**geometry.to_dict(),
                                                    "count_per_side": 2}),
                              profile, bc, n_max=3, k_max=1)
    flags = {lv.n: lv.valid for lv in levels}
    assert flags == {1: True, 2: False, 3: False}


def test_near_edge_offset_matches_exact_roots():
    # smaller replay of the acceptance sweep: first-order edge offsets track
    # the exact roots to 5% whenever the exact offset is under 0.05
    rng = np.random.default_rng(7)
    betas = beam_roots(CC, 8)
    edges = band_edge_gammas(7)
    cases = 0
    for _ in range(60):
        params = DimensionlessParams(lam=rng.uniform(0.01, 2.0),
                                     nu=rng.uniform(0.0, 1000.0))
        gam = sp.solve_uniform_dimensionless(params, betas, 7)
        for n in range(1, 9):
            for k in range(2, 7):
                g = gam[n - 1, k - 1]
                d_up = g - edges[k - 1]
                d_dn = g - edges[k - 2]
                for edge_idx, d in ((k, d_up), (k - 1, d_dn)):
                    if abs(d) >= 0.05:
                        continue
                    try:
                        delta, keff = sp.delta_asymptotic(
                            n, edge_idx, params, betas[n - 1])
                    except sp.BlowUpError:
                        continue
                    assert keff == k
                    assert abs(delta - d) <= 0.05 * abs(d)
                    cases += 1
    assert cases > 30  # the window must actually be exercised


def test_offset_blows_up_at_resonance():
    edge = band_edge_gammas(1)[0]
    beta = beam_roots(CC, 1)[0]
    params = DimensionlessParams(lam=edge / beta, nu=5.0)
    with pytest.raises(sp.BlowUpError):
        sp.delta_asymptotic(1, 1, params, beta)


def test_band_gaps_positive_and_estimated():
    geometry, profile, bc = preset_device("jap1-calibrated")
    gaps = sp.band_gaps(geometry, profile, bc, k_max=3)
    assert [g.k for g in gaps] == [1, 2, 3]
    for g in gaps:
        assert g.exact > 0
        assert g.estimate > 0
        assert 0.5 < g.ratio < 2.0
    assert sp.band_gaps(
        geometry.__class__(**{**geometry.to_dict(), "count_per_side": 0}),
        profile, bc, k_max=2) == []


def test_alternating_equal_lengths_match_uniform():
    geometry, profile, bc = preset_device("jap1-calibrated")
    alt = AlternatingProfile(length1=profile.length, length2=profile.length,
                             width1=geometry.cantilever_width,
                             width2=geometry.cantilever_width,
                             count1=10, count2=10)
    ref = {(lv.n, lv.k): lv.gamma
           for lv in sp.solve_uniform(geometry, profile, bc, 3, 3)}
    got = {(lv.n, lv.k): lv.gamma
           for lv in sp.solve_alternating(geometry, alt, bc, 3, 3)}
    assert set(got) == set(ref)
    for key, g in got.items():
        assert g == pytest.approx(ref[key], abs=1e-12)


def test_alternating_single_family_degenerate():
    geometry, profile, bc = preset_device("jap1-calibrated")
    alt = AlternatingProfile(length1=profile.length, length2=0.5 * profile.length,
                             width1=geometry.cantilever_width,
                             width2=geometry.cantilever_width,
                             count1=20, count2=0)
    ref = {(lv.n, lv.k): lv.gamma
           for lv in sp.solve_uniform(geometry, profile, bc, 2, 2)}
    got = {(lv.n, lv.k): lv.gamma
           for lv in sp.solve_alternating(geometry, alt, bc, 2, 2)}
    for key, g in got.items():
        assert g == pytest.approx(ref[key], abs=1e-12)


def test_alternating_pole_set_merges_both_families():
    geometry, profile, bc = preset_device("jap1-calibrated")
    alt = AlternatingProfile(length1=profile.length, length2=0.8 * profile.length,
                             width1=geometry.cantilever_width,
                             width2=geometry.cantilever_width,
                             count1=10, count2=10)
    poles = sp.alternating_pole_set(alt, gamma_max=12.0)
    gs = [p[0] for p in poles]
    assert gs == sorted(gs)
    edges = band_edge_gammas(4)
    for e in edges:
        if e <= 12.0:
            assert min(abs(g - e) for g, fam in poles if fam == 1) < 1e-10
        if e / 0.8 <= 12.0:
            assert min(abs(g - e / 0.8) for g, fam in poles if fam == 2) < 1e-10
    # equal lengths: every pole is shared and flagged as merged
    same = AlternatingProfile(length1=profile.length, length2=profile.length,
                              width1=geometry.cantilever_width,
                              width2=geometry.cantilever_width,
                              count1=10, count2=10)
    assert all(fam == 0 for _, fam in sp.alternating_pole_set(same, 12.0))


def test_alternating_roots_solve_raw_secular():
    geometry, profile, bc = preset_device("jap1-calibrated")
    alt = AlternatingProfile(length1=profile.length, length2=0.8 * profile.length,
                             width1=geometry.cantilever_width,
                             width2=geometry.cantilever_width,
                             count1=10, count2=10)
    betas = beam_roots(bc, 2)
    for lv in sp.solve_alternating(geometry, alt, bc, 2, 3):
        res = sp.secular_alternating(lv.gamma, geometry, alt, betas[lv.n - 1])
        # scale by the local slope so the residual reads as a gamma error
        h = 1e-7
        slope = (sp.secular_alternating(lv.gamma + h, geometry, alt,
                                        betas[lv.n - 1]) -
                 sp.secular_alternating(lv.gamma - h, geometry, alt,
                                        betas[lv.n - 1])) / (2 * h)
        assert abs(res / slope) < 1e-9


def test_sweep_uniform_lambda_rescales_length():
    geometry, profile, bc = preset_device("jap1-calibrated")
    base = dimensionless(geometry, profile)
    out = list(sp.sweep_uniform(geometry, profile, bc, "lambda",
                                [base.lam, 2 * base.lam], 1, 1))
    assert len(out) == 2
    (v1, g1, s1), (v2, g2, s2) = out
    # frequency scale follows the rescaled cantilever length
    assert s2 == pytest.approx(s1 / 4.0, rel=1e-12)
    direct = sp.solve_uniform_dimensionless(base, beam_roots(bc, 1), 1)
    assert g1[0, 0] == pytest.approx(direct[0, 0], abs=1e-14)
    with pytest.raises(ConfigError):
        list(sp.sweep_uniform(geometry, profile, bc, "mass", [1.0], 1, 1))


def test_sweep_uniform_over_count():
    geometry, profile, bc = preset_device("jap1-calibrated")
    out = list(sp.sweep_uniform(geometry, profile, bc, "N", [0.0, 20.0], 1, 1))
    assert out[1][1][0, 0] == pytest.approx(
        sp.solve_uniform_dimensionless(dimensionless(geometry, profile),
                                       beam_roots(bc, 1), 1)[0, 0], abs=1e-14)
    bare = dimensionless(geometry, profile).lam * beam_roots(bc, 1)[0]
    assert out[0][1][0, 0] == pytest.approx(bare, abs=1e-14)
