import json

import pytest

from hardy import harness

# the closed, documented enumeration of claim ids; a new claim must be added
# here deliberately, a dropped one is a regression
EXPECTED_CLAIM_IDS = [
    "cont.average.oracle_f0",
    "cont.average.oracle_fe",
    "cont.characterization.divergent",
    "cont.characterization.finite",
    "cont.equivalence.corrected",
    "cont.kernel.identities",
    "cont.mean_zero.necessity",
    "cont.modified.values",
    "cont.pnorm.sharp_bound",
    "cont.split.order_exchange",
    "disc.cesaro.kernel",
    "disc.characterization.divergent",
    "disc.characterization.finite",
    "disc.equivalence.corrected",
    "disc.harmonic.asymptotic",
    "disc.mean_zero.necessity",
    "disc.pnorm.sharp_bound",
    "disc.split.exact_identities",
    "disc.weight.values",
]


def test_claim_enumeration_is_closed_and_total():
    assert harness.claim_ids() == EXPECTED_CLAIM_IDS
    # both operator sides and every claim family are represented
    prefixes = {cid.split(".")[0] for cid in EXPECTED_CLAIM_IDS}
    assert prefixes == {"cont", "disc"}
    for needle in ("characterization", "mean_zero", "pnorm", "equivalence",
                   "split"):
        assert any(needle in cid for cid in EXPECTED_CLAIM_IDS), needle


def test_config_validation():
    with pytest.raises(harness.ConfigError):
        harness.SuiteConfig(fmt="xml")
    with pytest.raises(harness.ConfigError):
        harness.SuiteConfig(rel_tol=-1.0)
    with pytest.raises(harness.ConfigError):
        harness.SuiteConfig(seq_horizon=10)


def test_filter_matches_nothing_is_an_error():
    with pytest.raises(harness.ConfigError):
        harness.run_suite(harness.SuiteConfig(claims="nope.*"))


def test_run_filtered_subset():
    cfg = harness.SuiteConfig(claims="cont.average.*")
    records = harness.run_suite(cfg)
    assert [r.claim_id for r in records] == ["cont.average.oracle_f0",
                                             "cont.average.oracle_fe"]
    assert all(r.verdict == harness.PASS for r in records)
    assert harness.exit_code(records) == 0


def test_divergence_claims_get_their_own_verdict():
    cfg = harness.SuiteConfig(claims="*.characterization.divergent")
    records = harness.run_suite(cfg)
    assert len(records) == 2
    assert all(r.verdict == harness.DIVERGENT_OK for r in records)
    assert all(r.passed for r in records)


def test_report_determinism_in_process():
    cfg = harness.SuiteConfig(claims="disc.cesaro.*")
    r1 = harness.render_report(harness.run_suite(cfg), cfg, timestamp="T")
    r2 = harness.render_report(harness.run_suite(cfg), cfg, timestamp="T")
    assert r1 == r2
    payload = json.loads(r1)
    assert payload["schema_version"] == harness.SCHEMA_VERSION
    assert payload["meta"]["seed"] == cfg.seed


def test_report_csv_format():
    cfg = harness.SuiteConfig(claims="disc.cesaro.*", fmt="csv")
    text = harness.render_report(harness.run_suite(cfg), cfg, timestamp="T")
    lines = text.strip().splitlines()
    assert lines[0] == "claim_id,verdict,checks,failed,description"
    assert lines[1].startswith("disc.cesaro.kernel,PASS")


def test_parse_grid():
    assert harness.parse_grid("1:5") == [1.0, 2.0, 3.0, 4.0, 5.0]
    vals = harness.parse_grid("1.1:1.4:0.1")
    assert vals == pytest.approx([1.1, 1.2, 1.3, 1.4])
    with pytest.raises(harness.ConfigError):
        harness.parse_grid("5:1")
    with pytest.raises(harness.ConfigError):
        harness.parse_grid("1:2:0")
    with pytest.raises(harness.ConfigError):
        harness.parse_grid("1")


def test_sweep_cont_rows_and_footer():
    cfg = harness.SuiteConfig()
    rows, footer = harness.sweep_cont("power_tail", "beta", [1.5, 2.0, 3.0], cfg)
    assert len(rows) == 3
    for row in rows:
        assert row["weighted_verdict"] == "converged"
        assert row["equivalence_ratio"] is not None
    assert footer["ratio_min"] <= footer["ratio_max"]
    # beta = 2 is the annihilated kernel: ratio exactly 1/2 up to quadrature
    mid = [r for r in rows if r["beta"] == 2.0][0]
    assert mid["equivalence_ratio"] == pytest.approx(0.5, abs=1e-9)


def test_sweep_cont_divergent_rows_carry_verdicts():
    cfg = harness.SuiteConfig()
    rows, footer = harness.sweep_cont("log_tail", "beta", [1.5], cfg)
    assert rows[0]["weighted_verdict"] == "divergent"
    assert rows[0]["equivalence_ratio"] is None
    assert footer["ratio_min"] is None


def test_sweep_disc_rows():
    cfg = harness.SuiteConfig()
    rows, footer = harness.sweep_disc("em", "m", [1, 10, 100], cfg)
    assert [row["m"] for row in rows] == [1, 10, 100]
    assert footer["ratio_max"] == pytest.approx(1.5743533488445738, rel=1e-12)
    ratios = [row["equivalence_ratio"] for row in rows]
    assert ratios == sorted(ratios, reverse=True)


def test_sweep_unknown_family():
    cfg = harness.SuiteConfig()
    with pytest.raises(harness.ConfigError):
        harness.sweep_cont("nope", "x", [1.0], cfg)
    with pytest.raises(harness.ConfigError):
        harness.sweep_disc("nope", "x", [1], cfg)


def test_sweep_bad_point_recorded_not_raised():
    cfg = harness.SuiteConfig()
    rows, _ = harness.sweep_cont("power_tail", "beta", [0.5, 2.0], cfg)
    assert "error" in rows[0]
    assert rows[1]["equivalence_ratio"] is not None


def test_golden_data_is_packaged():
    gold = harness.golden()
    assert gold["cont"]["weighted_norm_box12"]["value"] == pytest.approx(
        1.4327906486489863, rel=1e-12)
    assert set(gold["disc"]["sharpness"]) == {"1.25", "1.5", "2", "3", "10"}
