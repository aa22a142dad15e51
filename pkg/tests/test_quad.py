import math
import random

import pytest

from hardy import funcspace as fs
from hardy.envelopes import Envelope
from hardy.quad import (
    DEFAULT_CONFIG, EvaluationError, HalflineIntegrand, QuadConfig,
    integrate, integrate_halfline, probe_divergence,
)

E = math.e


def test_integrate_smooth():
    res = integrate(lambda t: 1.0 / (1.0 + t) ** 2, 0.001, 1000.0)
    exact = 1000.0 / 1001.0 - 0.001 / 1.001
    assert res.converged
    assert abs(res.value - exact) <= max(res.err_est, 1e-12)


def test_integrate_respects_breakpoints():
    f0 = fs.catalog("f0")
    res = integrate(f0.eval, 1.0, 2.0, breakpoints=f0.breakpoints)
    assert res.value == pytest.approx(math.log(2.0), rel=1e-12)
    # straddling the jump at 2 without declaring it still works, only slower
    res2 = integrate(f0.eval, 1.5, 2.5, breakpoints=f0.breakpoints)
    assert res2.value == pytest.approx(math.log(2.0 / 1.5), rel=1e-12)


def test_integrate_empty_interval_rejected():
    with pytest.raises(ValueError):
        integrate(lambda t: t, 1.0, 1.0)
    with pytest.raises(ValueError):
        integrate(lambda t: t, 0.0, 1.0)
    with pytest.raises(ValueError):
        integrate(lambda t: t, 1.0, math.inf)


def test_integrate_nan_is_an_error():
    with pytest.raises(EvaluationError):
        integrate(lambda t: math.nan, 1.0, 2.0)


def test_config_validation():
    with pytest.raises(ValueError):
        QuadConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadConfig(max_depth=5)


def test_additivity():
    rng = random.Random(5)
    theta = fs.catalog("theta")
    for _ in range(25):
        a = rng.uniform(0.05, 5.0)
        b = a + rng.uniform(0.1, 10.0)
        c = b + rng.uniform(0.1, 10.0)
        whole = integrate(theta.eval, a, c)
        left = integrate(theta.eval, a, b)
        right = integrate(theta.eval, b, c)
        assert abs(whole.value - left.value - right.value) <= (
            whole.err_est + left.err_est + right.err_est + 1e-14)


def test_error_estimate_covers_truth():
    rng = random.Random(17)
    f0 = fs.catalog("f0")
    for _ in range(200):
        a = 10.0 ** rng.uniform(-2, 1.5)
        b = a + 10.0 ** rng.uniform(-2, 1.5)
        exact = fs.exact_antiderivative(f0, a, b)
        res = integrate(f0.eval, a, b, breakpoints=f0.breakpoints)
        assert abs(res.value - exact) <= res.err_est + 1e-13 * (1.0 + abs(exact))


def _abs_integrand(f):
    return HalflineIntegrand(
        lambda t: abs(f.eval(t)),
        vdensity=lambda v: math.exp(f.log_eval(v)[0] + v),
        udensity=lambda w: math.exp(f.log_eval(-w)[0] - w),
        breakpoints=f.breakpoints)


def test_halfline_theta():
    theta = fs.catalog("theta")
    res = integrate_halfline(
        _abs_integrand(theta),
        origin_envs=(theta.origin.envelope_reciprocal(),),
        tail_envs=(theta.tail.envelope(),))
    assert res.verdict == "converged"
    assert res.value == pytest.approx(1.0, abs=1e-10)
    assert res.total_error <= 1e-9


def test_halfline_weighted_theta():
    # int theta(t) ln(1+t) dt = 1 after the shift to t >= 1
    theta = fs.catalog("theta")
    integrand = HalflineIntegrand(
        lambda t: theta.eval(t) * math.log1p(t),
        breakpoints=())
    env_t = theta.tail.envelope().weighted_log()
    env_o = theta.origin.envelope_reciprocal()
    res = integrate_halfline(integrand, origin_envs=(env_o,), tail_envs=(env_t,))
    assert res.verdict == "converged"
    assert res.value == pytest.approx(1.0, abs=1e-9)


def test_halfline_requires_envelopes():
    with pytest.raises(ValueError):
        integrate_halfline(lambda t: t)


def test_halfline_divergent_by_certificate():
    # |running average of fe| = 1/(t ln t) beyond e: certified divergent
    env = Envelope(1.0, 1.0, -1.0, valid_from=E, lower=1.0)
    res = integrate_halfline(
        HalflineIntegrand(lambda t: 1.0 / (t * math.log(t)) if t > E else 0.0,
                          vdensity=lambda v: 1.0 / v if v > 1.0 else 0.0),
        origin_envs=(Envelope.compact(E),),
        tail_envs=(env,))
    assert res.verdict == "divergent"
    assert res.divergent_side == "tail"


def test_halfline_rejects_false_divergence_certificate():
    # claiming a harmonic lower bound for a convergent integrand must fail
    env = Envelope(1.0, 1.0, 0.0, valid_from=E, lower=0.9)
    with pytest.raises(ValueError):
        integrate_halfline(
            HalflineIntegrand(lambda t: t ** -3.0,
                              vdensity=lambda v: math.exp(-2.0 * v)),
            origin_envs=(Envelope.compact(E),),
            tail_envs=(env,))


def test_halfline_probe_fallback_divergent():
    # no usable upper envelope, no certificate: the probe catches 1/x
    env = Envelope(2.0, 1.0, 0.0, valid_from=E)  # not integrable, no lower
    res = integrate_halfline(
        HalflineIntegrand(lambda t: 1.0 / t if t > E else 0.0),
        origin_envs=(Envelope.compact(E),),
        tail_envs=(env,))
    assert res.verdict == "divergent"
    assert res.probe is not None


def test_substitution_consistency():
    # int_0^inf g(t) dt = int_0^inf g(1/u)/u^2 du with sides exchanged
    beta = 3.0
    g = fs.catalog("power_tail", beta=beta)
    direct = integrate_halfline(
        _abs_integrand(g),
        origin_envs=(g.origin.envelope_reciprocal(),),
        tail_envs=(g.tail.envelope(),))

    def mirrored(u: float) -> float:
        return g.eval(1.0 / u) / u ** 2

    res = integrate_halfline(
        HalflineIntegrand(mirrored),
        origin_envs=(Envelope(1.0, 2.0, 0.0),),       # u(1+u)^-3 <= u^-2 near 0
        tail_envs=(Envelope(1.0, 2.0, 0.0),))         # and <= u^-2 at infinity
    assert direct.verdict == res.verdict == "converged"
    assert abs(direct.value - res.value) <= 10.0 * (
        direct.total_error + res.total_error)


def test_probe_harmonic_tail():
    res = probe_divergence(lambda x: 1.0 / (1.0 + x), 1.0)
    assert res.verdict == "divergent-log"
    assert res.last_increment == pytest.approx(math.log(2.0), rel=1e-4)


def test_probe_convergent_tail():
    theta = fs.catalog("theta")
    assert probe_divergence(theta.eval, 1.0).verdict == "convergent"


def test_probe_f0_increment():
    # |running average of f0| has harmonic tail with increment ln(3/2) ln 2
    f0 = fs.catalog("f0")

    def qf0_abs(x: float) -> float:
        return abs(fs.exact_antiderivative(f0, 0.0, x)) / x

    res = probe_divergence(qf0_abs, 4.0, breakpoints=f0.breakpoints)
    assert res.verdict == "divergent-log"
    assert res.last_increment == pytest.approx(
        math.log(1.5) * math.log(2.0), rel=1e-3)


def test_probe_partials_monotone_for_nonnegative():
    res = probe_divergence(lambda x: 1.0 / (1.0 + x) ** 1.5, 1.0)
    partials = res.partials
    assert all(b >= a for a, b in zip(partials, partials[1:]))


def test_probe_inconclusive_between_rates():
    # increments grow geometrically (integrand ~ x^-0.5): neither harmonic
    # nor summable; the three-way rule must not overclaim
    res = probe_divergence(lambda x: x ** -0.5, 1.0)
    assert res.verdict == "inconclusive"


def test_quadresult_converged_invariant():
    # converged implies err_est + tail_bound <= SAFETY * tolerance
    from hardy.quad import SAFETY
    theta = fs.catalog("theta")
    res = integrate_halfline(
        _abs_integrand(theta),
        origin_envs=(theta.origin.envelope_reciprocal(),),
        tail_envs=(theta.tail.envelope(),))
    tol = max(DEFAULT_CONFIG.rel_tol * abs(res.value), DEFAULT_CONFIG.abs_tol)
    assert res.verdict == "converged"
    assert res.total_error <= SAFETY * tol
