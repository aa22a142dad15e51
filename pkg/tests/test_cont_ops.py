import math
import random

import pytest

from hardy import cont_ops as co
from hardy import funcspace as fs
from hardy.quad import QuadConfig

E = math.e
LN32 = math.log(1.5)


@pytest.fixture(scope="module")
def theta():
    return fs.catalog("theta")


@pytest.fixture(scope="module")
def f0():
    return fs.catalog("f0")


@pytest.fixture(scope="module")
def fe():
    return fs.catalog("fe")


def _log_points(rng, n, lo, hi, avoid=()):
    out = []
    span = math.log10(hi / lo)
    while len(out) < n:
        x = lo * 10.0 ** (span * rng.random())
        if all(abs(x - b) > 1e-9 * max(1.0, b) for b in avoid):
            out.append(x)
    return out


def test_oracle_values():
    assert co.oracle_qf0(5.0) == pytest.approx(LN32 / 5.0, rel=1e-15)
    assert co.oracle_qf0(0.5) == 0.0
    assert co.oracle_qf0(2.5) == pytest.approx(math.log(2.0) / 2.5, rel=1e-15)
    assert co.oracle_qfe(E ** 2) == pytest.approx(1.0 / (2.0 * E ** 2), rel=1e-15)
    assert co.oracle_qfe(1.0) == 1.0
    with pytest.raises(fs.DomainError):
        co.oracle_qf0(0.0)


def test_hardy_avg_matches_oracles(f0, fe):
    rng = random.Random(101)
    for f, oracle in ((f0, co.oracle_qf0), (fe, co.oracle_qfe)):
        pts = _log_points(rng, 500, 1e-3, 1e3, f.breakpoints)
        worst = max(abs(co.hardy_avg(f, x) - oracle(x)) for x in pts)
        assert worst <= 1e-10


def test_hardy_avg_theta(theta):
    for x in (0.01, 1.0, 100.0):
        assert co.hardy_avg(theta, x) == pytest.approx(1.0 / (1.0 + x), abs=1e-14)


def test_hardy_avg_quadrature_fallback(theta):
    bare = fs.strip_antiderivatives(theta)
    rng = random.Random(3)
    for x in sorted(_log_points(rng, 12, 1e-2, 1e3)):
        assert co.hardy_avg(bare, x) == pytest.approx(
            1.0 / (1.0 + x), rel=1e-8, abs=1e-12)


def test_modified_hardy_values(theta, f0, fe):
    for x in (0.1, 1.0, 10.0):
        assert abs(co.modified_hardy(theta, x)) < 1e-12
    assert co.modified_hardy(f0, 5.0) == pytest.approx(LN32 / 30.0, rel=1e-12)
    assert co.modified_hardy(fe, 1.0) == pytest.approx(1.0, rel=1e-12)


def test_modified_hardy_linearity(theta, f0):
    rng = random.Random(7)
    combo = fs.add(fs.scale(f0, 1.5), fs.scale(theta, -2.0))
    for x in _log_points(rng, 20, 1e-2, 1e4):
        direct = co.modified_hardy(combo, x)
        parts = 1.5 * co.modified_hardy(f0, x) - 2.0 * co.modified_hardy(theta, x)
        assert direct == pytest.approx(parts, abs=1e-12)


def test_weight_symmetry():
    for t in (0.01, 0.3, 2.0, 50.0):
        assert co.weight(t) == pytest.approx(co.weight(1.0 / t), rel=1e-14)
        assert co.weight(t) == pytest.approx(math.log(2.0 + t + 1.0 / t), rel=1e-14)


def test_log_weight_norm_theta(theta):
    res = co.log_weight_norm(theta)
    assert res.verdict == "converged"
    assert res.value == pytest.approx(2.0, abs=1e-9)


def test_log_weight_norm_box_golden():
    box = fs.catalog("box", lo=1.0, hi=2.0)
    res = co.log_weight_norm(box)
    assert res.value == pytest.approx(6.0 * LN32 - 1.0, abs=1e-11)


def test_log_weight_norm_divergent(fe):
    assert co.log_weight_norm(fs.absolute(fe)).verdict == "divergent"
    assert co.log_weight_norm(fs.catalog("log_tail", beta=1.5)).verdict == "divergent"


def test_splits_theta(theta):
    i1 = co.split_i1(theta)
    i2 = co.split_i2(theta)
    assert i1.value == pytest.approx(1.0, abs=1e-9)
    assert i2.value == pytest.approx(1.0, abs=1e-9)


def test_split_i2_box_closed_form():
    box = fs.catalog("box", lo=1.0, hi=2.0)
    res = co.split_i2(box)
    assert res.value == pytest.approx(3.0 * math.log(3.0) - 2.0 * math.log(2.0) - 1.0,
                                      abs=1e-11)


@pytest.mark.parametrize("name", ["theta", "abs(f0)", "power_tail(beta=2)",
                                  "power_tail(beta=3)"])
def test_fubini_check(name):
    rep = co.fubini_check_cont(fs.parse_function(name))
    assert rep.passed


def test_fubini_check_on_quadrature_fallback(theta):
    # same order-exchange identity with the cumulative cache instead of
    # exact antiderivatives
    rep = co.fubini_check_cont(fs.strip_antiderivatives(theta),
                               QuadConfig(rel_tol=1e-8, abs_tol=1e-12))
    assert rep.passed


def test_l1_norm_modified_theta(theta):
    res = co.l1_norm_modified(theta)
    assert res.verdict == "converged"
    assert abs(res.value) < 1e-10


def test_l1_norm_modified_f0_triangle(f0):
    h = co.l1_norm_modified(f0)
    a = fs.absolute(f0)
    i1 = co.split_i1(a)
    i2 = co.split_i2(a)
    assert h.verdict == "converged"
    assert h.value <= i1.value + i2.value + 10.0 * (
        h.total_error + i1.total_error + i2.total_error)


@pytest.mark.parametrize("name", ["log_tail(beta=1.5)", "log_tail(beta=2)",
                                  "abs(fe)"])
def test_l1_norm_modified_divergent(name):
    res = co.l1_norm_modified(fs.parse_function(name))
    assert res.verdict == "divergent"


def test_l1_norm_modified_fe_signed(fe):
    # fe has zero mean, so the corrected operator equals the raw average,
    # whose absolute integral diverges at both ends
    res = co.l1_norm_modified(fe)
    assert res.verdict == "divergent"


def test_mean_limit_reports(theta, f0, fe):
    rep = co.mean_limit_check(f0)
    assert rep.limit_estimate == pytest.approx(LN32, rel=1e-12)
    assert rep.consistent and rep.probe_rate_ok
    assert rep.probe.verdict == "divergent-log"

    rep = co.mean_limit_check(theta)
    assert rep.consistent and rep.probe_rate_ok
    assert rep.scaled_values[-1] == pytest.approx(1.0, rel=1e-5)

    rep = co.mean_limit_check(fe)
    assert rep.limit_is_zero and rep.consistent
    assert rep.probe is None


def test_mean_zero_necessity_across_catalog():
    # every catalog member with nonzero total yields a log-divergent |Qf|
    for name in ("theta", "f0", "power_tail(beta=2)", "box(lo=1,hi=2)",
                 "power_cutoff(alpha=0.5,T=1)"):
        rep = co.mean_limit_check(fs.parse_function(name))
        assert rep.probe is not None, name
        assert rep.probe.verdict == "divergent-log", name
        assert rep.probe_rate_ok, name


def test_mean_limit_needs_four_decades(theta):
    with pytest.raises(ValueError):
        co.mean_limit_check(theta, decades=3.0)


def test_equivalence_ratio(theta):
    assert co.equivalence_ratio(theta) == pytest.approx(0.5, abs=1e-9)
    r = co.equivalence_ratio(fs.catalog("power_tail", beta=2.0))
    assert r == pytest.approx(0.5, abs=1e-9)
    with pytest.raises(fs.DomainError):
        co.equivalence_ratio(fs.catalog("f0"))  # signed input


def test_cont_hardy_ratio_closed_forms():
    chi = fs.catalog("power_cutoff", alpha=0.0, T=1.0)
    assert co.cont_hardy_ratio(chi, 2.0) == pytest.approx(2.0, abs=1e-9)
    for alpha in (0.35, 0.45):
        f = fs.catalog("power_cutoff", alpha=alpha, T=1.0)
        assert co.cont_hardy_ratio(f, 2.0) == pytest.approx(
            2.0 / (1.0 - alpha), rel=1e-9)


def test_cont_hardy_ratio_under_bound():
    pt = fs.catalog("power_tail", beta=3.0)
    for p in (1.5, 2.0, 3.0, 10.0):
        assert co.cont_hardy_ratio(pt, p) <= (p / (p - 1.0)) ** p


def test_cont_hardy_ratio_domain_errors(theta, f0, fe):
    with pytest.raises(fs.DomainError):
        co.cont_hardy_ratio(theta, 1.0)
    with pytest.raises(fs.DomainError):
        co.cont_hardy_ratio(f0, 2.0)  # signed
    with pytest.raises(fs.DomainError):
        co.cont_hardy_ratio(fs.absolute(fe), 2.0)  # not p-integrable near 0
    with pytest.raises(fs.DomainError):
        # p*alpha >= 1: p-norm blows up at the origin
        co.cont_hardy_ratio(fs.catalog("power_cutoff", alpha=0.6, T=1.0), 2.0)


def test_characterization_both_directions():
    finite = ["theta", "power_tail(beta=1.5)", "power_tail(beta=3)",
              "abs(f0)", "box(lo=1,hi=2)", "power_cutoff(alpha=0.5,T=1)"]
    divergent = ["log_tail(beta=1.5)", "log_tail(beta=2)", "abs(fe)"]
    for name in finite:
        f = fs.parse_function(name)
        assert co.log_weight_norm(f).verdict == "converged", name
        assert co.l1_norm_modified(f).verdict == "converged", name
    for name in divergent:
        f = fs.parse_function(name)
        assert co.log_weight_norm(f).verdict == "divergent", name
        assert co.l1_norm_modified(f).verdict == "divergent", name


def test_build_report_roundtrip(theta):
    rep = co.build_report(theta)
    d = rep.to_dict()
    assert d["function"] == "theta"
    assert d["weighted_norm"]["verdict"] == "converged"
    assert d["equivalence_ratio"] == pytest.approx(0.5, abs=1e-9)


def test_total_integral_divergent_rejected():
    with pytest.raises(fs.ParameterError):
        # a tail like 1/t is not admissible in the catalog at all
        fs.catalog("power_tail", beta=1.0)
