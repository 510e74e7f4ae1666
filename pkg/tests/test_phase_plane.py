import math

import numpy as np
import pytest

from ambnorm.errors import DomainError, IncompatibleGridsError
from ambnorm.phase_plane import (
    AmbiguitySurface,
    Grid2D,
    cross_ambiguity,
    fft_bins,
    fourier_rows,
    surface_lp_norm,
    weighted_r_norm,
    wigner,
    woodward_ambiguity,
)
from ambnorm.signal_core import (
    GaussianParams,
    Waveform,
    conjugate,
    inner_product,
    make_gaussian,
    reflect,
)
from ambnorm.verify import random_pair
from ambnorm.weights import GaussianWeight, SampledWeight

from oracles import ambiguity_literal, wigner_literal, woodward_literal

SMALL = Grid2D(-1.0, 1 / 16, 32, -1.0, 1 / 16, 32)


def test_grid_basics():
    g = Grid2D.default()
    assert g.shape == (256, 256)
    assert g.taus[0] == -4 and g.taus[-1] == 4 - 1 / 32
    assert g.cell_area == 1 / 1024
    t, n = g.mesh()
    assert t.shape == g.shape and np.all(t[:, 0] == g.taus) and np.all(n[0] == g.nus)
    assert Grid2D.from_extent((-4, 4), 1 / 32, (-4, 4), 1 / 32) == g
    assert Grid2D.from_dict(g.to_dict()) == g
    s = g.scaled(2.0)
    assert s.tau0 == -8 and s.dnu == 1 / 16
    m = g.mirrored()
    np.testing.assert_allclose(m.taus, -g.taus[::-1])
    assert g.matches(Grid2D.default())


@pytest.mark.parametrize("args", [(0, 0, 4, 0, 1, 4), (0, 1, 1, 0, 1, 4), (0, 1, 4, 0, -1, 4),
                                  (math.nan, 1, 4, 0, 1, 4)])
def test_grid_invalid(args):
    with pytest.raises(DomainError):
        Grid2D(*args)


def test_surface_validation():
    with pytest.raises(IncompatibleGridsError):
        AmbiguitySurface(SMALL, np.zeros((3, 3)))
    with pytest.raises(DomainError):
        AmbiguitySurface(SMALL, np.zeros(SMALL.shape), "X")
    bad = np.zeros(SMALL.shape, dtype=complex)
    bad[0, 0] = np.inf
    with pytest.raises(DomainError):
        AmbiguitySurface(SMALL, bad)


def test_matched_gaussian_closed_form(unit_g):
    s = cross_ambiguity(unit_g, unit_g)
    tau, nu = s.grid.mesh()
    np.testing.assert_allclose(s.magnitude, np.exp(-np.pi * (tau ** 2 + nu ** 2) / 2), atol=1e-6)
    assert s.value_at(0.0, 0.0) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(IncompatibleGridsError):
        s.value_at(0.01, 0.0)


def test_fft_matches_literal(rng):
    g, h = random_pair(rng)
    ref = ambiguity_literal(g, h, SMALL)
    fast = cross_ambiguity(g, h, SMALL)
    direct = cross_ambiguity(g, h, SMALL, method="direct")
    assert np.abs(fast.values - ref).max() < 1e-10
    assert np.abs(direct.values - ref).max() < 1e-10


def test_offbin_frequencies_use_direct_path(rng):
    g, h = random_pair(rng)
    grid = Grid2D(0.0, 1 / 16, 6, -math.e / 2, math.e / 7, 8)
    assert fft_bins(grid.nu0, grid.dnu, grid.n_nu, g.dt) is None
    np.testing.assert_allclose(cross_ambiguity(g, h, grid).values, ambiguity_literal(g, h, grid),
                               atol=1e-12)
    with pytest.raises(IncompatibleGridsError):
        cross_ambiguity(g, h, grid, method="fft")


def test_fourier_rows_fold_longer_than_transform(rng):
    h = rng.standard_normal((3, 100)) + 1j * rng.standard_normal((3, 100))
    # L = 1/(0.1 * 0.5) = 20 < 100 samples, so rows are folded before the transform
    a = fourier_rows(h, -2.0, 0.1, -1.0, 0.5, 9, method="fft")
    b = fourier_rows(h, -2.0, 0.1, -1.0, 0.5, 9, method="direct")
    np.testing.assert_allclose(a, b, atol=1e-11)
    with pytest.raises(DomainError):
        fourier_rows(h, 0, 0.1, 0, 0.5, 4, method="nope")


def test_misaligned_delay_grid(unit_g):
    with pytest.raises(IncompatibleGridsError):
        cross_ambiguity(unit_g, unit_g, Grid2D(0.0, unit_g.dt / 2, 4, 0, 1 / 16, 4))
    with pytest.raises(IncompatibleGridsError):
        woodward_ambiguity(unit_g, unit_g, Grid2D(0.0, unit_g.dt, 4, 0, 1 / 16, 4))


def test_mismatched_waveforms(unit_g):
    other = make_gaussian(GaussianParams.unit(math.pi), -4.0, unit_g.dt, 512)
    with pytest.raises(IncompatibleGridsError):
        cross_ambiguity(unit_g, other, SMALL)


def test_cauchy_schwarz_and_moyal(rng):
    for _ in range(3):
        g, h = random_pair(rng)
        s = cross_ambiguity(g, h)
        assert s.magnitude.max() <= 1 + 1e-9
        assert surface_lp_norm(s, 2) == pytest.approx(1.0, abs=1e-6)


def test_tail_truncation_negligible(rng):
    g, h = random_pair(rng)
    wide = Grid2D(-8.0, 1 / 32, 512, -8.0, 1 / 32, 512)
    a = surface_lp_norm(cross_ambiguity(g, h), 2)
    b = surface_lp_norm(cross_ambiguity(g, h, wide), 2)
    assert abs(a - b) < 1e-8


def test_woodward_literal(rng):
    g, h = random_pair(rng)
    grid = Grid2D(-1.0, 1 / 16, 16, -1.0, 1 / 16, 16)
    np.testing.assert_allclose(woodward_ambiguity(g, h, grid).values, woodward_literal(g, h, grid),
                               atol=1e-12)
    origin = woodward_ambiguity(g, h, Grid2D(0.0, 1 / 32, 2, 0.0, 1 / 16, 2)).values[0, 0]
    assert abs(origin) == pytest.approx(abs(inner_product(h, g)), rel=1e-12)


def test_woodward_magnitude_reflects_ambiguity(unit_g):
    a = cross_ambiguity(unit_g, unit_g, SMALL)
    at = woodward_ambiguity(unit_g, unit_g, SMALL.mirrored())
    np.testing.assert_allclose(a.magnitude, at.magnitude[::-1, ::-1], atol=1e-12)


def test_phase_relation(rng):
    g, h = random_pair(rng)
    tau, nu = SMALL.mesh()
    a = cross_ambiguity(g, h, SMALL).values
    at = woodward_ambiguity(conjugate(g), conjugate(h), SMALL.mirrored()).values[::-1, ::-1]
    np.testing.assert_allclose(a, np.exp(1j * np.pi * tau * nu) * at, atol=1e-12)


def test_wigner_literal_relation(rng):
    g, h = random_pair(rng)
    grid = Grid2D(-0.5, 1 / 16, 12, -0.5, 1 / 16, 12)
    np.testing.assert_allclose(wigner(g, h, grid).values, wigner_literal(g, h, grid), atol=1e-12)


def test_wigner_auto_marginals(unit_g, rng):
    w = wigner(unit_g, unit_g)
    assert np.abs(w.values.imag).max() < 1e-10
    assert w.values.real.sum() * w.grid.cell_area == pytest.approx(1.0, abs=1e-6)
    j, k = np.unravel_index(np.argmax(w.values.real), w.grid.shape)
    assert (w.grid.taus[j], w.grid.nus[k]) == (0.0, 0.0)
    assert w.values.real.max() == pytest.approx(2.0, abs=1e-9)
    g, _ = random_pair(rng)
    assert np.abs(wigner(g, g).values.imag).max() < 1e-10


def test_lp_norm_gaussian_p4(unit_g):
    assert surface_lp_norm(cross_ambiguity(unit_g, unit_g), 4) ** 4 == pytest.approx(0.5, abs=1e-6)


def test_lp_norm_zero_scaling_errors(unit_g):
    z = AmbiguitySurface(SMALL, np.zeros(SMALL.shape))
    assert surface_lp_norm(z, 3) == 0.0
    s = cross_ambiguity(unit_g, unit_g, SMALL)
    s3 = AmbiguitySurface(SMALL, 3 * s.values)
    assert surface_lp_norm(s3, 1.5) == pytest.approx(3 * surface_lp_norm(s, 1.5), rel=1e-12)
    for bad in (0, -1, math.inf):
        with pytest.raises(DomainError):
            surface_lp_norm(s, bad)


@pytest.mark.parametrize("alpha,r,expected", [(1.0, 2.0, 0.5), (0.25, 1.0, 1 / 3)])
def test_weighted_norm_gaussian(unit_g, alpha, r, expected):
    s = cross_ambiguity(unit_g, unit_g)
    assert weighted_r_norm(s, GaussianWeight(alpha), r) == pytest.approx(expected, abs=1e-4)


def test_weighted_norm_point_mass(unit_g):
    s = cross_ambiguity(unit_g, unit_g, SMALL)
    vals = np.zeros(SMALL.shape)
    vals[16, 16] = 1 / SMALL.cell_area
    assert weighted_r_norm(s, SampledWeight(SMALL, vals), 2.0) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(DomainError):
        weighted_r_norm(s, SampledWeight(SMALL, vals), 0.0)


def test_tiny_waveform_direct():
    g = Waveform(np.array([1, 2j, -1, 0.5]), 0.0, 0.5)
    grid = Grid2D(-0.5, 0.5, 3, -0.3, 0.2, 4)
    np.testing.assert_allclose(cross_ambiguity(g, g, grid).values, ambiguity_literal(g, g, grid),
                               atol=1e-14)
