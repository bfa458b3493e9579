import json
import math

import numpy as np
import pytest

from paircorr import CorrelationConfig, PowerBeta, brute_force_measure
from paircorr.cli import (
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_VERIFY_FAILED,
    _parse_phi_expr,
    config_from_dict,
    config_to_dict,
    main,
)
from paircorr.config import ScaledPower


def read_csv(path):
    meta, rows, header = {}, [], None
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            for tok in line[1:].split():
                if "=" in tok:
                    k, v = tok.split("=", 1)
                    meta[k] = v
        elif header is None:
            header = line.split(",")
        else:
            rows.append([float(x) for x in line.split(",")])
    return meta, header, np.array(rows)


class TestDensityCommand:
    def test_reference_rows(self, tmp_path):
        out = tmp_path / "d.csv"
        rc = main(["density", "--alpha", "0.5", "--lambda", "1", "--t-max",
                   "2", "--step", "0.25", "--out", str(out)])
        assert rc == EXIT_OK
        meta, header, rows = read_csv(out)
        assert header == ["t", "rho"]
        assert float(meta["discontinuity_step"]) == 0.5
        table = {t: v for t, v in rows}
        assert table[0.5] == pytest.approx(4.0, abs=1e-14)
        assert table[1.0] == pytest.approx(2.5, abs=1e-14)
        assert table[0.25] == 0.0

    def test_scaled_column(self, tmp_path):
        out = tmp_path / "d.csv"
        main(["density", "--alpha", "0.5", "--lambda", "1", "--t-max", "2",
              "--step", "0.5", "--scaled", "--out", str(out)])
        _, header, rows = read_csv(out)
        assert header == ["t", "rho", "rho_scaled"]
        table = {t: s for t, _, s in rows}
        assert table[1.0] == pytest.approx(3.0, abs=1e-14)

    def test_bad_range(self):
        assert main(["density", "--alpha", "0.5", "--lambda", "1",
                     "--t-max", "-1", "--step", "0.1"]) == EXIT_VERIFY_FAILED

    def test_regime_flag(self, tmp_path):
        out = tmp_path / "d.csv"
        rc = main(["density", "--alpha", "0.5", "--regime", "zero",
                   "--t-max", "1", "--step", "0.5", "--out", str(out)])
        assert rc == EXIT_OK
        _, _, rows = read_csv(out)
        assert np.allclose(rows[:, 1], 4.0 / 3.0)


class TestEmpiricalCommand:
    def test_matches_brute_force_oracle(self, tmp_path):
        out = tmp_path / "e.csv"
        rc = main(["empirical", "--alpha", "0.5", "--beta", "0.5", "--n",
                   "200", "--window", "2", "--bin-width", "0.25",
                   "--out", str(out)])
        assert rc == EXIT_OK
        _, header, rows = read_csv(out)
        assert header == ["bin_left", "bin_right", "empirical_density",
                          "limit_density"]
        cfg = CorrelationConfig(0.5, PowerBeta(0.5), 200, 2.0)
        oracle = brute_force_measure(cfg)
        edges = np.append(rows[:, 0], rows[-1, 1])
        masses, _ = np.histogram(oracle.atoms, edges)
        expected = masses * oracle.weight / np.diff(edges)
        assert np.allclose(rows[:, 2], expected, atol=1e-12)

    def test_manifest_round_trip(self, tmp_path):
        out = tmp_path / "e.csv"
        main(["empirical", "--alpha", "0.5", "--lambda", "1", "--n", "500",
              "--window", "2", "--out", str(out)])
        manifest_path = out.parent / (out.name + ".manifest.json")
        manifest = json.loads(manifest_path.read_text())
        cfg = config_from_dict(manifest["config"])
        assert cfg == CorrelationConfig(0.5, ScaledPower(1.0), 500, 2.0)
        assert manifest["outputs"] == [str(out)]
        assert manifest["atom_count"] > 0

    def test_determinism(self, tmp_path):
        args = ["empirical", "--alpha", "0.5", "--beta", "0.5", "--n", "1000",
                "--window", "3"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(args + ["--out", str(a)])
        main(args + ["--out", str(b)])
        assert a.read_text() == b.read_text()

    def test_modes_agree(self, tmp_path):
        base = ["empirical", "--alpha", "0.5", "--beta", "0.5", "--n", "2000",
                "--window", "4"]
        a, b = tmp_path / "m.csv", tmp_path / "s.csv"
        main(base + ["--mode", "materialized", "--out", str(a)])
        main(base + ["--mode", "streaming", "--out", str(b)])
        _, _, ra = read_csv(a)
        _, _, rb = read_csv(b)
        assert np.allclose(ra, rb, rtol=1e-12)

    def test_memory_cap_exit_code(self, tmp_path, monkeypatch):
        monkeypatch.setenv("PAIRCORR_MEM_CAP", "10")
        out = tmp_path / "e.csv"
        rc = main(["empirical", "--alpha", "0.5", "--beta", "0.5", "--n",
                   "5000", "--window", "4", "--mode", "materialized",
                   "--out", str(out)])
        assert rc == EXIT_RESOURCE

    def test_scaling_flags_exclusive(self):
        rc = main(["empirical", "--alpha", "0.5", "--beta", "0.5",
                   "--lambda", "1", "--n", "10", "--window", "2"])
        assert rc == EXIT_VERIFY_FAILED


class TestVerifyCommand:
    def test_riemann_suite_passes(self, tmp_path):
        out = tmp_path / "r.json"
        rc = main(["verify", "--suite", "riemann", "--cases", "50",
                   "--out", str(out)])
        assert rc == EXIT_OK
        reports = json.loads(out.read_text())
        assert len(reports) == 50
        assert all(r["pass"] for r in reports)

    def test_roots_suite_passes(self, tmp_path):
        out = tmp_path / "r.json"
        rc = main(["verify", "--suite", "roots", "--cases", "50",
                   "--out", str(out)])
        assert rc == EXIT_OK

    def test_seed_determinism(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(["verify", "--suite", "riemann", "--cases", "20", "--seed", "7",
              "--out", str(a)])
        main(["verify", "--suite", "riemann", "--cases", "20", "--seed", "7",
              "--out", str(b)])
        assert a.read_text() == b.read_text()


class TestConfigSerialization:
    def test_round_trip(self):
        for cfg in (CorrelationConfig(0.5, PowerBeta(0.25), 100, 2.0),
                    CorrelationConfig(0.3, ScaledPower(1.5), 999, 3.0)):
            assert config_from_dict(config_to_dict(cfg)) == cfg

    def test_phi_expr_forms(self):
        assert _parse_phi_expr("N**0.5") == PowerBeta(0.5)
        assert _parse_phi_expr("2.5*N**(1-alpha)") == ScaledPower(2.5)
        with pytest.raises(Exception):
            _parse_phi_expr("log(N)")
