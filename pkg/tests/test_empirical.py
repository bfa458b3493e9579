import math

import numpy as np
import pytest

from paircorr import (
    CorrelationConfig,
    MemoryCapError,
    PairCorrError,
    PowerBeta,
    ScaledPower,
    TestFunction,
    atom_count,
    brute_force_measure,
    count_in_shrinking_window,
    enumerate_window,
    evaluate,
    histogram,
    min_scaled_gap,
    p_bound_exact,
    stream_evaluate,
    stream_histogram,
    uniform_edges,
)
from paircorr.config import Custom
from paircorr.empirical import POSITIVE_ONLY, SYMMETRIC


def n3_config():
    return CorrelationConfig(0.5, PowerBeta(0.5), 3, 2.0)


N3_ATOMS = sorted([
    math.sqrt(3) * (math.sqrt(2) - 1),
    math.sqrt(3) * (math.sqrt(3) - math.sqrt(2)),
    math.sqrt(3) * (math.sqrt(3) - 1),
])


class TestPBound:
    def test_brute_force_scan_small(self):
        # oracle: scan p upward on the raw definition
        cfg = CorrelationConfig(0.5, Custom(lambda n: 10.0, 0.0), 100, 2.0)
        for m in (1, 7, 50, 99):
            p = 0
            while 10.0 * ((m + p + 1) ** 0.5 - m**0.5) <= 2.0:
                p += 1
            assert p_bound_exact(cfg, m) == p

    def test_reference_m99_case(self):
        cfg = CorrelationConfig(0.5, Custom(lambda n: 10.0, 0.0), 100, 2.0)
        assert p_bound_exact(cfg, 99) == 4

    def test_large_phi_gives_zero(self):
        cfg = CorrelationConfig(0.5, PowerBeta(0.9), 10**4, 4.0)
        assert min_scaled_gap(cfg) > cfg.window_A
        assert all(p_bound_exact(cfg, m) == 0 for m in (1, 100, 9999))

    def test_m_out_of_range(self):
        cfg = n3_config()
        with pytest.raises(PairCorrError):
            p_bound_exact(cfg, 0)
        with pytest.raises(PairCorrError):
            p_bound_exact(cfg, 3)


class TestEnumerateWindow:
    def test_n3_atoms(self):
        m = enumerate_window(n3_config())
        assert m.side == POSITIVE_ONLY
        assert m.weight == pytest.approx(1.0 / 3.0, rel=4e-16)
        assert np.allclose(np.sort(m.atoms), N3_ATOMS, atol=1e-14)

    def test_n1_empty(self):
        cfg = CorrelationConfig(0.5, PowerBeta(0.5), 1, 2.0)
        assert len(enumerate_window(cfg)) == 0

    def test_vanishing_regime_empty(self):
        cfg = CorrelationConfig(0.5, PowerBeta(0.9), 10**4, 4.0)
        assert len(enumerate_window(cfg)) == 0

    def test_atoms_positive_and_repulsed(self):
        cfg = CorrelationConfig(0.45, ScaledPower(1.0), 4000, 5.0)
        m = enumerate_window(cfg)
        assert len(m) > 0
        assert m.atoms.min() >= min_scaled_gap(cfg)
        assert m.atoms.max() <= cfg.window_A

    def test_memory_cap_refusal(self):
        cfg = CorrelationConfig(0.5, PowerBeta(0.5), 5000, 4.0)
        projected = atom_count(cfg)
        with pytest.raises(MemoryCapError) as err:
            enumerate_window(cfg, mem_cap=projected - 1)
        assert err.value.projected == projected

    def test_count_matches_materialization(self):
        cfg = CorrelationConfig(0.6, PowerBeta(0.3), 2000, 3.0)
        assert atom_count(cfg) == len(enumerate_window(cfg))


class TestOracleEquivalence:
    def test_brute_force_n3(self):
        m = brute_force_measure(n3_config())
        assert np.allclose(np.sort(m.atoms), N3_ATOMS, atol=1e-14)

    def test_guard(self):
        cfg = CorrelationConfig(0.5, PowerBeta(0.5), 30000, 2.0)
        with pytest.raises(PairCorrError):
            brute_force_measure(cfg)

    def test_random_configs(self):
        rng = np.random.default_rng(42)
        for _ in range(10):
            alpha = rng.uniform(0.2, 0.9)
            N = int(rng.integers(2, 2000))
            if rng.random() < 0.5:
                scaling = PowerBeta(rng.uniform(0.05, 0.95))
            else:
                scaling = ScaledPower(rng.uniform(0.3, 3.0))
            cfg = CorrelationConfig(alpha, scaling, N, rng.uniform(1.2, 6.0))
            fast = np.sort(enumerate_window(cfg).atoms)
            slow = np.sort(brute_force_measure(cfg).atoms)
            assert len(fast) == len(slow)
            if len(fast):
                assert np.max(np.abs(fast - slow)) <= 1e-12


class TestEvaluate:
    def test_hand_computation_n3(self):
        f = TestFunction.bump_shifted(0.4, 0.9)
        m = enumerate_window(n3_config())
        expected = (1.0 / 3.0) * sum(f(a) for a in N3_ATOMS)
        assert evaluate(m, f) == pytest.approx(expected, rel=1e-14)

    def test_empty_measure(self):
        cfg = CorrelationConfig(0.5, PowerBeta(0.5), 1, 2.0)
        f = TestFunction.bump_symmetric(2.0)
        assert evaluate(enumerate_window(cfg), f) == 0.0

    def test_symmetric_doubles_even_function(self):
        cfg = CorrelationConfig(0.5, ScaledPower(1.0), 500, 3.0)
        f = TestFunction.bump_symmetric(3.0)
        pos = enumerate_window(cfg)
        assert evaluate(pos.symmetrized(), f) == pytest.approx(
            2.0 * evaluate(pos, f), rel=1e-14)

    def test_support_exceeding_window_rejected(self):
        cfg = n3_config()
        f = TestFunction.bump_symmetric(3.0)
        with pytest.raises(PairCorrError):
            evaluate(enumerate_window(cfg), f)

    def test_stream_matches_materialized(self):
        cfg = CorrelationConfig(0.35, PowerBeta(0.4), 3000, 4.0)
        f = TestFunction.bump_shifted(0.2, 3.5)
        m = enumerate_window(cfg)
        assert stream_evaluate(cfg, f) == pytest.approx(evaluate(m, f), rel=1e-13)
        assert stream_evaluate(cfg, f, symmetric=True) == pytest.approx(
            evaluate(m.symmetrized(), f), rel=1e-13)


class TestHistogram:
    def test_single_bin_conserves_mass(self):
        cfg = CorrelationConfig(0.5, ScaledPower(1.0), 1000, 3.0)
        m = enumerate_window(cfg)
        h = histogram(m, np.array([0.0, 3.0]))
        assert h.total_mass == m.weight * len(m)

    def test_n3_hand_placed(self):
        m = enumerate_window(n3_config())
        h = histogram(m, np.array([0.0, 0.5, 1.0, 1.5]))
        assert np.allclose(h.masses, [0.0, 2.0 / 3.0, 1.0 / 3.0], rtol=1e-14)

    def test_mass_conservation_exact(self):
        cfg = CorrelationConfig(0.62, PowerBeta(0.3), 2500, 2.5)
        m = enumerate_window(cfg)
        h = histogram(m, uniform_edges(0.0, 2.5, 0.05))
        assert h.masses.sum() == m.weight * len(m)

    def test_repulsion_bins_empty(self):
        cfg = CorrelationConfig(0.5, ScaledPower(1.0), 5000, 2.0)
        h = stream_histogram(cfg, uniform_edges(0.0, 2.0, 0.01))
        gap = min_scaled_gap(cfg)
        inside = (h.edges[:-1] > 0) & (h.edges[1:] < gap)
        assert np.all(h.masses[inside] == 0.0)

    def test_symmetric_mirror_symmetry(self):
        cfg = CorrelationConfig(0.5, ScaledPower(1.0), 800, 2.0)
        m = enumerate_window(cfg).symmetrized()
        h = histogram(m, uniform_edges(-2.0, 2.0, 0.25))
        assert np.array_equal(h.masses, h.masses[::-1])

    def test_stream_matches_materialized(self):
        cfg = CorrelationConfig(0.5, PowerBeta(0.5), 4000, 6.0)
        edges = uniform_edges(0.0, 6.0, 0.05)
        a = histogram(enumerate_window(cfg), edges)
        b = stream_histogram(cfg, edges)
        assert np.allclose(a.masses, b.masses, rtol=1e-14)

    def test_snap_edges_hit_discontinuities(self):
        edges = uniform_edges(0.0, 2.0, 0.04, snap_step=0.25)
        on_grid = edges / edges[1]
        assert np.allclose(on_grid, np.round(on_grid), atol=1e-9)
        # 0.25 must be an edge
        assert np.any(np.abs(edges - 0.25) < 1e-12)


class TestShrinkingWindow:
    def test_converges_to_density_mass(self):
        # limit value: closed-form mass 0.609375 on [0.4, 0.8]
        v1 = count_in_shrinking_window(0.5, 0.5, 10**4, 0.4, 0.8)
        v2 = count_in_shrinking_window(0.5, 0.5, 10**5, 0.4, 0.8)
        assert abs(v2 - 0.609375) < abs(v1 - 0.609375)
        assert abs(v2 - 0.609375) < 5e-3

    def test_repulsion_zone_zero(self):
        assert count_in_shrinking_window(0.5, 0.5, 10**4, -0.3, 0.3) == 0.0

    def test_supercritical_beta_vanishes(self):
        assert count_in_shrinking_window(0.5, 0.9, 10**4, -2.0, 2.0) == 0.0


class TestWorkBound:
    def test_atom_count_linear_in_n(self):
        alpha, A = 0.5, 3.0
        bound = 2.0 * A / (alpha * (2.0 - alpha))
        for N in (10**4, 10**5):
            cfg = CorrelationConfig(alpha, ScaledPower(1.0), N, A)
            assert atom_count(cfg) / N < bound
