import math
import random

import pytest

from hardy import funcspace as fs
from hardy import quad

E = math.e


@pytest.fixture(scope="module")
def theta():
    return fs.catalog("theta")


@pytest.fixture(scope="module")
def f0():
    return fs.catalog("f0")


@pytest.fixture(scope="module")
def fe():
    return fs.catalog("fe")


def test_eval_examples(theta, f0, fe):
    assert theta.eval(1.0) == 0.25
    assert f0.eval(1.5) == pytest.approx(2.0 / 3.0, rel=1e-15)
    assert fe.eval(E ** 2) == pytest.approx(-1.0 / (E ** 2 * 4.0), rel=1e-14)


def test_eval_rejects_nonpositive(theta):
    with pytest.raises(fs.DomainError):
        theta.eval(0.0)
    with pytest.raises(fs.DomainError):
        theta.eval(-1.0)


def test_breakpoint_left_convention(f0, fe):
    # the piece to the left of a breakpoint owns it
    assert f0.eval(1.0) == 0.0
    assert f0.eval(2.0) == 0.5
    assert f0.eval(4.0) == -0.25
    assert fe.eval(1.0 / E) == pytest.approx(E, rel=1e-15)


def test_piece_coverage_property():
    # every sampled t is claimed by exactly the piece the index points to
    for name in ("theta", "f0", "fe", "log_tail(beta=2)", "box(lo=1,hi=2)"):
        f = fs.parse_function(name)
        for i in range(10 ** 4):
            t = 10.0 ** (-6.0 + 12.0 * i / (10 ** 4 - 1))
            idx = f.piece_index(t)
            piece = f.pieces[idx]
            assert piece.lo < t <= piece.hi or (piece.hi == math.inf and t > piece.lo)
            f.eval(t)


def test_catalog_exact_values(theta, f0, fe):
    assert theta.exact("total_integral") == 1.0
    assert f0.exact("total_integral") == pytest.approx(math.log(1.5), rel=1e-15)
    assert fe.exact("total_integral") == 0.0
    assert f0.exact("l1_norm") == pytest.approx(math.log(8.0 / 3.0), rel=1e-15)


def test_catalog_unknown_name_and_bad_params():
    with pytest.raises(fs.CatalogError):
        fs.catalog("nope")
    with pytest.raises(fs.ParameterError):
        fs.catalog("power_tail", beta=1.0)
    with pytest.raises(fs.ParameterError):
        fs.catalog("power_cutoff", alpha=1.0, T=1.0)
    with pytest.raises(fs.ParameterError):
        fs.catalog("log_tail", beta=0.5)
    with pytest.raises(fs.ParameterError):
        fs.catalog("theta", beta=2.0)
    with pytest.raises(fs.ParameterError):
        fs.catalog("box", lo=2.0, hi=1.0)


def test_parse_function_forms():
    assert fs.parse_function("theta").name == "theta"
    f = fs.parse_function("power_tail(beta=2.5)")
    assert f.eval(1.0) == pytest.approx(2.0 ** -2.5, rel=1e-15)
    g = fs.parse_function("abs(f0)")
    assert g.eval(3.5) == pytest.approx(1.0 / 3.5, rel=1e-15)
    with pytest.raises(fs.ParameterError):
        fs.parse_function("power_tail(beta=x)")
    with pytest.raises(fs.CatalogError):
        fs.parse_function("2+2")


def test_exact_antiderivative_examples(theta, f0):
    # running integral of the kernel profile: x/(1+x)
    for x in (0.5, 1.0, 7.0):
        assert fs.exact_antiderivative(theta, 0.0, x) == pytest.approx(
            x / (1.0 + x), rel=1e-15)
    assert fs.exact_antiderivative(f0, 1.0, 2.0) == pytest.approx(
        math.log(2.0), rel=1e-15)
    assert fs.exact_antiderivative(f0, 2.5, 2.5) == 0.0
    assert fs.exact_antiderivative(theta, 0.0, math.inf) == 1.0


def test_exact_antiderivative_absent_when_stripped(theta):
    bare = fs.strip_antiderivatives(theta)
    assert fs.exact_antiderivative(bare, 1.0, 2.0) is None


def test_antiderivatives_differentiate_back():
    # central difference of each antiderivative reproduces the piece value
    rng = random.Random(11)
    for name in ("theta", "f0", "fe", "power_tail(beta=1.5)",
                 "power_cutoff(alpha=0.5,T=1)", "log_tail(beta=2)"):
        f = fs.parse_function(name)
        for piece in f.pieces:
            if piece.antiderivative is None:
                continue
            for _ in range(20):
                lo = max(piece.lo, 1e-3)
                hi = min(piece.hi, 1e3)
                if hi <= lo:
                    continue
                t = lo + (hi - lo) * rng.uniform(0.05, 0.95)
                h = 1e-6 * max(t, 1.0)
                if t - h <= piece.lo or t + h >= piece.hi:
                    continue
                deriv = (piece.antiderivative.eval(t + h)
                         - piece.antiderivative.eval(t - h)) / (2.0 * h)
                assert deriv == pytest.approx(piece.expr.eval(t),
                                              rel=1e-6, abs=1e-12)


def test_oracle_consistency_with_quadrature():
    # where the exact antiderivative exists it must agree with the
    # quadrature engine on random subintervals
    rng = random.Random(23)
    for name in ("theta", "f0", "fe", "power_tail(beta=2)"):
        f = fs.parse_function(name)
        for _ in range(100):
            a = 10.0 ** rng.uniform(-2.5, 2.0)
            b = a + 10.0 ** rng.uniform(-2.0, 2.0)
            exact = fs.exact_antiderivative(f, a, b)
            res = quad.integrate(f.eval, a, b, breakpoints=f.breakpoints)
            assert abs(res.value - exact) <= max(res.err_est, 1e-13 * (1 + abs(exact)))


def test_catalog_l1_membership():
    # every entry with a declared finite total has a finite quadrature l1
    # norm matching the declared value
    for name in ("theta", "abs(f0)", "abs(fe)", "power_tail(beta=1.5)",
                 "power_cutoff(alpha=0.5,T=2)", "log_tail(beta=3)",
                 "box(lo=0.5,hi=4)"):
        f = fs.parse_function(name)
        declared = f.exact("l1_norm") or f.exact("total_integral")
        res = quad.integrate_halfline(
            quad.HalflineIntegrand(
                lambda t, f=f: abs(f.eval(t)),
                vdensity=lambda v, f=f: math.exp(f.log_eval(v)[0] + v),
                udensity=lambda w, f=f: math.exp(f.log_eval(-w)[0] - w),
                breakpoints=f.breakpoints),
            origin_envs=(f.origin.envelope_reciprocal(),),
            tail_envs=(f.tail.envelope(),))
        assert res.verdict == "converged"
        assert res.value == pytest.approx(declared, rel=1e-9)


def test_scale_and_add(theta, f0):
    tw = fs.scale(theta, 2.0)
    assert tw.eval(1.0) == 0.5
    assert fs.total_integral_exact(tw) == 2.0
    combo = fs.add(f0, theta)
    assert combo.eval(1.5) == pytest.approx(f0.eval(1.5) + theta.eval(1.5), rel=1e-14)
    assert fs.total_integral_exact(combo) == pytest.approx(
        math.log(1.5) + 1.0, rel=1e-15)
    assert combo.breakpoints == (1.0, 2.0, 3.0, 4.0)


def test_absolute_flips_negative_pieces(f0, fe=None):
    a = fs.absolute(f0)
    assert a.eval(3.5) == pytest.approx(1.0 / 3.5, rel=1e-15)
    assert fs.total_integral_exact(a) == pytest.approx(math.log(8.0 / 3.0), rel=1e-15)


def test_declared_class_is_spot_checked():
    # declaring a tail faster than the actual decay must be rejected
    with pytest.raises(fs.ParameterError):
        fs.TestFunction(
            "bad",
            (fs.Piece(0.0, math.inf, fs.catalog("power_tail", beta=1.5).pieces[0].expr,
                      None, 1),),
            (),
            fs.OriginClass("bounded", 1.0),
            fs.TailClass("power", coeff=1.0, alpha=3.0),
        )


def test_compact_declaration_checked():
    with pytest.raises(fs.ParameterError):
        fs.TestFunction(
            "bad-compact",
            (fs.Piece(0.0, math.inf, fs.catalog("theta").pieces[0].expr, None, 1),),
            (),
            fs.OriginClass("bounded", 1.0),
            fs.TailClass("compact", support_end=2.0),
        )
