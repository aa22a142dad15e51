"""The averaging operator on (0, inf), its mean-zero correction, and the
logarithmically weighted norm that characterizes when the corrected image is
integrable.

Notation used throughout this module:

    Q f(x) = (1/x) * int_0^x f(t) dt               (running average)
    H f(x) = Q f(x) - (int_0^inf f) / (1 + x)      (mean-zero correction)
    w(t)   = ln(1 + 1/t) + ln(1 + t)               (two-sided log weight)
    W(f)   = int_0^inf |f(t)| w(t) dt
    I1     = int_0^inf (1/x - 1/(x+1)) (int_0^x |f|) dx
    I2     = int_0^inf (x+1)^-1 (int_x^inf |f|) dx

The splits I1 and I2 are computed as genuine iterated double integrals (outer
quadrature over an inner cumulative integral); the single-integral identities
I1 = int |f| ln(1+1/t) dt and I2 = int |f| ln(1+t) dt are computed separately
so the two routes can be compared as an order-of-integration check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .envelopes import Envelope
from .funcspace import DomainError, TestFunction, absolute, total_integral_exact
from .quad import (
    DEFAULT_CONFIG, HalflineIntegrand, HalflineResult, ProbeResult, QuadConfig,
    integrate, integrate_halfline, probe_divergence,
)

__all__ = [
    "hardy_avg", "oracle_qf0", "oracle_qfe", "modified_hardy",
    "log_weight_norm", "split_i1", "split_i2", "fubini_check_cont",
    "l1_norm_modified", "mean_limit_check", "equivalence_ratio",
    "cont_hardy_ratio", "total_integral",
    "FubiniReport", "MeanLimitReport", "ContReport", "build_report",
]

_E = math.e

# w(t) <= (1 + ln 2 + 1/e) ln t for t >= e, and w is symmetric under t -> 1/t
_W_UP = 1.0 + math.log(2.0) + 1.0 / _E


def weight(t: float) -> float:
    """The two-sided logarithmic weight ln(1 + 1/t) + ln(1 + t)."""
    if t <= 0.0:
        raise DomainError("weight defined for t > 0")
    return math.log1p(1.0 / t) + math.log1p(t)


def _weight_logarg(v: float) -> float:
    """weight(e**v), stable for any v; symmetric in v -> -v."""
    av = abs(v)
    return av + 2.0 * math.log1p(math.exp(-av))


def _ln1p_exp(v: float) -> float:
    """ln(1 + e**v), stable for large |v|."""
    if v > 35.0:
        return v + math.log1p(math.exp(-v))
    return math.log1p(math.exp(v))


def _is_nonnegative(f: TestFunction) -> bool:
    return all(p.sign is not None and p.sign >= 0 for p in f.pieces)


def _probe_start(f: TestFunction) -> float:
    anchors = [_E] + list(f.breakpoints)
    if f.tail.kind == "compact":
        anchors.append(f.tail.support_end)
    else:
        anchors.append(f.tail.valid_from)
    return 2.0 * max(anchors)


# ---------------------------------------------------------------------------
# cumulative integrals with a monotone node cache
# ---------------------------------------------------------------------------

class _Cumulative:
    """F(x) = int_0^x f with an exact piecewise-antiderivative fast path.

    When some piece lacks an antiderivative, increments are integrated
    numerically between cached nodes, so ascending query patterns (panel
    nodes of an outer quadrature) cost one short integral each instead of a
    fresh integral from the origin.  The cache is built single-threaded;
    after that, reads are safe from any number of threads on the exact path.
    """

    def __init__(self, f: TestFunction, cfg: QuadConfig):
        self.f = f
        self.cfg = cfg
        self.exact = all(p.antiderivative is not None for p in f.pieces)
        if self.exact:
            # prefix[i] = int_0^{lo_i} f, exact within each piece
            prefix = [0.0]
            for p in f.pieces[:-1]:
                lo = p.antiderivative.eval_ext(p.lo)
                hi = p.antiderivative.eval_ext(p.hi)
                prefix.append(prefix[-1] + (hi - lo))
            self._prefix = prefix
            self._first_base = f.pieces[0].antiderivative.eval_ext(0.0)
            last = f.pieces[-1]
            self._last_inf = last.antiderivative.eval_ext(math.inf)
            self._total = prefix[-1] + (
                self._last_inf - last.antiderivative.eval_ext(last.lo))
            self._total_err = 0.0
        else:
            self._nodes: list[tuple[float, float]] = []
            self._total, self._total_err = self._numeric_total()

    def _numeric_total(self) -> tuple[float, float]:
        fa = self.f
        res = integrate_halfline(
            HalflineIntegrand(fa.eval, breakpoints=fa.breakpoints),
            self.cfg,
            origin_envs=(fa.origin.envelope_reciprocal(),),
            tail_envs=(fa.tail.envelope(),),
        )
        if res.verdict not in ("converged", "not-converged"):
            raise DomainError(f"{fa.name}: total integral did not resolve ({res.verdict})")
        return res.value, res.total_error

    @property
    def total(self) -> float:
        return self._total

    @property
    def total_err(self) -> float:
        return self._total_err

    def value(self, x: float) -> float:
        if x <= 0.0:
            raise DomainError("cumulative integral needs x > 0")
        if self.exact:
            i = self.f.piece_index(x)
            p = self.f.pieces[i]
            base = self._first_base if i == 0 else p.antiderivative.eval_ext(p.lo)
            return self._prefix[i] + (p.antiderivative.eval_ext(x) - base)
        return self._value_numeric(x)

    def value_logarg(self, v: float) -> float:
        """F(e**v), stable far beyond the float range of e**v itself."""
        if self.exact:
            if v > 690.0:
                p = self.f.pieces[-1]
                la, s = p.antiderivative.log_eval(v)
                aval = s * math.exp(la)
                return self._prefix[-1] + (aval - p.antiderivative.eval_ext(p.lo))
            if v < -690.0:
                p = self.f.pieces[0]
                la, s = p.antiderivative.log_eval(v)
                return s * math.exp(la) - self._first_base
            return self.value(math.exp(v))
        if abs(v) > 690.0:
            raise DomainError("numeric cumulative cannot reach |ln t| > 690")
        return self._value_numeric(math.exp(v))

    def tail(self, x: float) -> float:
        """int_x^inf f, computed without subtracting nearly equal totals
        whenever the exact path is available."""
        if not self.exact:
            return self._total - self._value_numeric(x)
        pieces = self.f.pieces
        i = self.f.piece_index(x)
        last = pieces[-1]
        if i == len(pieces) - 1:
            return self._last_inf - last.antiderivative.eval_ext(x)
        p = pieces[i]
        out = p.antiderivative.eval_ext(p.hi) - p.antiderivative.eval_ext(x)
        for q in pieces[i + 1:-1]:
            out += q.antiderivative.eval_ext(q.hi) - q.antiderivative.eval_ext(q.lo)
        return out + (self._last_inf - last.antiderivative.eval_ext(last.lo))

    def tail_logarg(self, v: float) -> float:
        if self.exact and v > 690.0:
            p = self.f.pieces[-1]
            la, s = p.antiderivative.log_eval(v)
            return self._last_inf - s * math.exp(la)
        if v > 690.0:
            raise DomainError("numeric cumulative cannot reach ln t > 690")
        return self.tail(math.exp(v))

    # numeric path ------------------------------------------------------

    def _seed(self) -> tuple[float, float]:
        f = self.f
        x0 = min([1.0, 1.0 / f.origin.envelope_reciprocal().valid_from]
                 + [b for b in f.breakpoints])
        from .quad import _tail_side  # reuse of the certified log-tail walker
        val, _err, _bound, _sub = _tail_side(
            lambda w: f.eval(math.exp(-w)) * math.exp(-w),
            math.log(1.0 / x0), (f.origin.envelope_reciprocal(),), self.cfg)
        return x0, val

    def _value_numeric(self, x: float) -> float:
        from bisect import bisect_right, insort
        if not self._nodes:
            insort(self._nodes, self._seed())
        idx = bisect_right(self._nodes, (x, math.inf))
        if idx == 0:
            x0, f0 = self._nodes[0]
            inc = integrate(self.f.eval, x, x0, self.cfg,
                            breakpoints=self.f.breakpoints).value
            val = f0 - inc
        else:
            x0, f0 = self._nodes[idx - 1]
            if x0 == x:
                return f0
            inc = integrate(self.f.eval, x0, x, self.cfg,
                            breakpoints=self.f.breakpoints).value
            val = f0 + inc
        insort(self._nodes, (x, val))
        return val


@lru_cache(maxsize=None)
def _cumulative(f: TestFunction, cfg: QuadConfig) -> _Cumulative:
    return _Cumulative(f, cfg)


@lru_cache(maxsize=None)
def _cumulative_abs(f: TestFunction, cfg: QuadConfig) -> _Cumulative:
    if _is_nonnegative(f):
        return _cumulative(f, cfg)
    return _Cumulative(absolute(f), cfg)


def total_integral(f: TestFunction, cfg: QuadConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """(value, error bound) of int_0^inf f; exact catalog values have error 0."""
    exact = total_integral_exact(f)
    if exact is not None:
        if math.isinf(exact):
            raise DomainError(f"{f.name}: total integral diverges")
        return exact, 0.0
    cum = _cumulative(f, cfg)
    return cum.total, cum.total_err


# ---------------------------------------------------------------------------
# the operators
# ---------------------------------------------------------------------------

def hardy_avg(f: TestFunction, x: float, cfg: QuadConfig = DEFAULT_CONFIG) -> float:
    """Q f(x): the average of f over (0, x)."""
    if x <= 0.0:
        raise DomainError("hardy_avg needs x > 0")
    return _cumulative(f, cfg).value(x) / x


def modified_hardy(f: TestFunction, x: float, cfg: QuadConfig = DEFAULT_CONFIG) -> float:
    """H f(x) = Q f(x) - (int_0^inf f) / (1 + x)."""
    if x <= 0.0:
        raise DomainError("modified_hardy needs x > 0")
    m, _ = total_integral(f, cfg)
    return _cumulative(f, cfg).value(x) / x - m / (1.0 + x)


def oracle_qf0(x: float) -> float:
    """Closed form of Q f0 for f0 = (1_(1,2] - 1_(3,4])/t."""
    if x <= 0.0:
        raise DomainError("needs x > 0")
    if x <= 1.0:
        return 0.0
    if x <= 2.0:
        return math.log(x) / x
    if x <= 3.0:
        return math.log(2.0) / x
    if x <= 4.0:
        return (math.log(6.0) - math.log(x)) / x
    return math.log(1.5) / x


def oracle_qfe(x: float) -> float:
    """Closed form of Q fe for fe = (1_(0,1/e) - 1_(e,inf)) / (t ln(t)**2)."""
    if x <= 0.0:
        raise DomainError("needs x > 0")
    if x <= 1.0 / _E:
        return -1.0 / (x * math.log(x))
    if x < _E:
        return 1.0 / x
    return 1.0 / (x * math.log(x))


# ---------------------------------------------------------------------------
# weighted norm and the I1 / I2 split
# ---------------------------------------------------------------------------

def _abs_density_factory(f: TestFunction):
    def vdensity(v: float) -> float:
        la, _ = f.log_eval(v)
        return math.exp(la + v)

    def udensity(w: float) -> float:
        la, _ = f.log_eval(-w)
        return math.exp(la - w)

    return vdensity, udensity


def _env_weight_full(env: Envelope) -> Envelope:
    """Envelope after multiplying by the full weight w(t) (or w(1/u))."""
    return Envelope(env.coeff * _W_UP, env.power, env.logpow + 1.0,
                    env.valid_from, lower=env.lower)


def log_weight_norm(f: TestFunction, cfg: QuadConfig = DEFAULT_CONFIG) -> HalflineResult:
    """W(f) = int |f| w dt; DIVERGENT when a declared lower envelope or the
    doubling probe certifies it."""
    fn = lambda t: abs(f.eval(t)) * weight(t)
    vdensity, udensity = _abs_density_factory(f)
    integrand = HalflineIntegrand(
        fn,
        vdensity=lambda v: vdensity(v) * _weight_logarg(v),
        udensity=lambda w: udensity(w) * _weight_logarg(w),
        breakpoints=f.breakpoints,
    )
    return integrate_halfline(
        integrand, cfg,
        origin_envs=(_env_weight_full(f.origin.envelope_reciprocal()),),
        tail_envs=(_env_weight_full(f.tail.envelope()),),
        probe_start=_probe_start(f),
    )


def _single_weight_result(f: TestFunction, side: str, cfg: QuadConfig) -> HalflineResult:
    """int |f| ln(1+1/t) dt (side='small') or int |f| ln(1+t) dt (side='large')."""
    vdensity, udensity = _abs_density_factory(f)
    env_o = f.origin.envelope_reciprocal()
    env_t = f.tail.envelope()
    if side == "small":
        fn = lambda t: abs(f.eval(t)) * math.log1p(1.0 / t)
        integrand = HalflineIntegrand(
            fn,
            vdensity=lambda v: vdensity(v) * _ln1p_exp(-v),
            udensity=lambda w: udensity(w) * _ln1p_exp(w),
            breakpoints=f.breakpoints)
        # ln(1+1/t) <= 1/t at infinity; behaves like ln u at the origin
        origin = (Envelope(env_o.coeff * (1.0 + math.log(2.0)), env_o.power,
                           env_o.logpow + 1.0, env_o.valid_from, lower=env_o.lower),)
        tail = ((Envelope.compact(env_t.valid_from),) if env_t.is_compact
                else (Envelope(env_t.coeff, env_t.power + 1.0, env_t.logpow,
                               env_t.valid_from),))
    elif side == "large":
        fn = lambda t: abs(f.eval(t)) * math.log1p(t)
        integrand = HalflineIntegrand(
            fn,
            vdensity=lambda v: vdensity(v) * _ln1p_exp(v),
            udensity=lambda w: udensity(w) * _ln1p_exp(-w),
            breakpoints=f.breakpoints)
        # ln(1+t) <= t at the origin, i.e. one extra power of 1/u
        origin = (Envelope(env_o.coeff, env_o.power + 1.0, env_o.logpow,
                           env_o.valid_from),)
        tail = ((env_t,) if env_t.is_compact
                else (Envelope(env_t.coeff * (1.0 + math.log(2.0)), env_t.power,
                               env_t.logpow + 1.0, env_t.valid_from, lower=env_t.lower),))
    else:
        raise ValueError(side)
    return integrate_halfline(integrand, cfg, origin_envs=origin, tail_envs=tail,
                              probe_start=_probe_start(f))


def split_i1(f: TestFunction, cfg: QuadConfig = DEFAULT_CONFIG) -> HalflineResult:
    """I1 as the iterated double integral int (1/x - 1/(x+1)) F(x) dx,
    F(x) = int_0^x |f|."""
    cum = _cumulative_abs(f, cfg)
    m_up = cum.total + cum.total_err

    def fn(x: float) -> float:
        return cum.value(x) / (x * (x + 1.0))

    def vdensity(v: float) -> float:
        # F(e^v) / (e^v + 1)
        if v > 690.0:
            return cum.value_logarg(v) * math.exp(-v)
        t = math.exp(v)
        return cum.value(t) / (t + 1.0)

    def udensity(w: float) -> float:
        if w > 690.0:
            return cum.value_logarg(-w)
        t = math.exp(-w)
        return cum.value(t) / (t + 1.0)

    org = f.origin
    env_u = org.envelope_reciprocal()
    if org.kind == "bounded":
        origin_env = Envelope(org.coeff, 2.0, 0.0, env_u.valid_from)
    elif org.kind == "power":
        origin_env = Envelope(org.coeff / (1.0 - org.alpha), 2.0 - org.alpha, 0.0,
                              env_u.valid_from)
    else:
        low = None if org.lower is None else org.lower / (2.0 * (org.beta - 1.0))
        origin_env = Envelope(org.coeff / (org.beta - 1.0), 1.0,
                              1.0 - org.beta, env_u.valid_from, lower=low)
    tail_env = Envelope(max(m_up, 1e-300), 2.0, 0.0)
    integrand = HalflineIntegrand(fn, vdensity, udensity, f.breakpoints)
    return integrate_halfline(integrand, cfg, origin_envs=(origin_env,),
                              tail_envs=(tail_env,), probe_start=_probe_start(f))


def split_i2(f: TestFunction, cfg: QuadConfig = DEFAULT_CONFIG) -> HalflineResult:
    """I2 as the iterated double integral int (x+1)^-1 T(x) dx,
    T(x) = int_x^inf |f|."""
    cum = _cumulative_abs(f, cfg)
    m_up = cum.total + cum.total_err

    def fn(x: float) -> float:
        return cum.tail(x) / (x + 1.0)

    def vdensity(v: float) -> float:
        # T(e^v) * e^v / (e^v + 1)
        if v > 690.0:
            return cum.tail_logarg(v)
        t = math.exp(v)
        return cum.tail(t) * t / (t + 1.0)

    def udensity(w: float) -> float:
        if w > 690.0:
            return 0.0  # T(t) t / (t+1) <= m * e^-w, below any tolerance here
        t = math.exp(-w)
        return cum.tail(t) * t / (t + 1.0)

    tl = f.tail
    if tl.kind == "compact":
        tail_env = Envelope.compact(tl.support_end)
    elif tl.kind == "power":
        tail_env = Envelope(tl.coeff / (tl.alpha - 1.0), tl.alpha, 0.0, tl.valid_from)
    else:
        low = None if tl.lower is None else tl.lower / (2.0 * (tl.beta - 1.0))
        tail_env = Envelope(tl.coeff / (tl.beta - 1.0), 1.0, 1.0 - tl.beta,
                            tl.valid_from, lower=low)
    origin_env = Envelope(max(m_up, 1e-300), 2.0, 0.0)
    integrand = HalflineIntegrand(fn, vdensity, udensity, f.breakpoints)
    return integrate_halfline(integrand, cfg, origin_envs=(origin_env,),
                              tail_envs=(tail_env,), probe_start=_probe_start(f))


@dataclass(frozen=True)
class FubiniReport:
    name: str
    i1_double: HalflineResult
    i1_single: HalflineResult
    i2_double: HalflineResult
    i2_single: HalflineResult

    @staticmethod
    def _agrees(a: HalflineResult, b: HalflineResult) -> bool:
        if a.verdict == b.verdict == "divergent":
            return True
        if a.verdict not in ("converged", "not-converged"):
            return False
        if b.verdict not in ("converged", "not-converged"):
            return False
        return abs(a.value - b.value) <= 10.0 * (a.total_error + b.total_error)

    @property
    def i1_pass(self) -> bool:
        return self._agrees(self.i1_double, self.i1_single)

    @property
    def i2_pass(self) -> bool:
        return self._agrees(self.i2_double, self.i2_single)

    @property
    def passed(self) -> bool:
        return self.i1_pass and self.i2_pass


def fubini_check_cont(f: TestFunction, cfg: QuadConfig = DEFAULT_CONFIG) -> FubiniReport:
    """Order-of-integration check: each split equals its weighted single
    integral within ten times the combined error estimates."""
    return FubiniReport(
        name=f.name,
        i1_double=split_i1(f, cfg),
        i1_single=_single_weight_result(f, "small", cfg),
        i2_double=split_i2(f, cfg),
        i2_single=_single_weight_result(f, "large", cfg),
    )


# ---------------------------------------------------------------------------
# L1 norm of the corrected image
# ---------------------------------------------------------------------------

def _modified_envelopes(f: TestFunction, m: float, m_err: float, cfg: QuadConfig):
    """Upper (and where derivable, lower) envelopes for |H f|.

    Tail side, from H f(x) = m/(x(x+1)) - T(x)/x with T(x) = int_x^inf f:
        |H f(x)| <= |m| x^-2 + upper(T)(x) / x,
    and for nonnegative f with a declared two-sided tail,
        |H f(x)| >= lower(T)(x)/x - |m| x^-2 >= lower(T)(x) / (2x)
    beyond the computable point where lower(T)(x)/x dominates 2|m|/x^2.
    The origin side is symmetric with F(x) = int_0^x f in place of T.
    """
    am = abs(m) + m_err
    tl, org = f.tail, f.origin
    nonneg = _is_nonnegative(f)

    tail_envs = [Envelope(max(am, 1e-300), 2.0, 0.0)]
    if tl.kind == "power":
        tail_envs.append(Envelope(tl.coeff / (tl.alpha - 1.0), tl.alpha, 0.0, tl.valid_from))
    elif tl.kind == "power_log":
        upper = Envelope(tl.coeff / (tl.beta - 1.0), 1.0, -(tl.beta - 1.0), tl.valid_from)
        lower = None
        if nonneg and tl.lower is not None and tl.beta <= 2.0:
            x0 = tl.valid_from
            while x0 * tl.tail_integral_lower(x0) < 2.0 * am and x0 < 1e300:
                x0 *= 2.0
            lower = Envelope(tl.coeff / (tl.beta - 1.0), 1.0, -(tl.beta - 1.0),
                             valid_from=x0,
                             lower=tl.lower / (2.0 * (tl.beta - 1.0)))
        tail_envs = [lower] if lower is not None else tail_envs + [upper]

    origin_envs = [Envelope(max(am, 1e-300), 2.0, 0.0)]
    env_u = org.envelope_reciprocal()
    if org.kind == "bounded":
        origin_envs = [Envelope(org.coeff + am, 2.0, 0.0, env_u.valid_from)]
    elif org.kind == "power":
        origin_envs.append(Envelope(org.coeff / (1.0 - org.alpha), 2.0 - org.alpha,
                                    0.0, env_u.valid_from))
    else:
        upper = Envelope(org.coeff / (org.beta - 1.0), 1.0, 1.0 - org.beta,
                         env_u.valid_from)
        lower = None
        if nonneg and org.lower is not None and org.beta <= 2.0:
            x0 = org.valid_below
            while org.cumulative_lower(x0) / x0 < 2.0 * am and x0 > 1e-300:
                x0 *= 0.5
            lower = Envelope(org.coeff / (org.beta - 1.0), 1.0, 1.0 - org.beta,
                             valid_from=1.0 / x0,
                             lower=org.lower / (2.0 * (org.beta - 1.0)))
        origin_envs = [lower] if lower is not None else origin_envs + [upper]
    return tuple(origin_envs), tuple(tail_envs)


def l1_norm_modified(f: TestFunction, cfg: QuadConfig = DEFAULT_CONFIG) -> HalflineResult:
    """int_0^inf |H f(x)| dx, with DIVERGENT as a first-class outcome."""
    m, m_err = total_integral(f, cfg)
    cum = _cumulative(f, cfg)

    def fn(x: float) -> float:
        return abs(cum.value(x) / x - m / (1.0 + x))

    def vdensity(v: float) -> float:
        # |H f(e^v)| e^v = |m/(e^v + 1) - T(e^v)|
        if v > 690.0:
            return abs(math.exp(math.log(abs(m)) - v) - cum.tail_logarg(v)) if m != 0.0 \
                else abs(cum.tail_logarg(v))
        t = math.exp(v)
        return abs(m / (t + 1.0) - cum.tail(t))

    def udensity(w: float) -> float:
        # |H f(e^-w)| e^-w = |F(e^-w) - m e^-w/(1 + e^-w)|
        t_frac = math.exp(-w) if w < 690.0 else 0.0
        return abs(cum.value_logarg(-w) - m * t_frac / (1.0 + t_frac))

    origin_envs, tail_envs = _modified_envelopes(f, m, m_err, cfg)
    integrand = HalflineIntegrand(fn, vdensity, udensity, f.breakpoints)
    return integrate_halfline(integrand, cfg, origin_envs=origin_envs,
                              tail_envs=tail_envs, probe_start=_probe_start(f))


# ---------------------------------------------------------------------------
# mean-limit diagnostics and ratios
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeanLimitReport:
    name: str
    xs: tuple[float, ...]
    scaled_values: tuple[float, ...]          # x * Qf(x) = int_0^x f
    total_integral: float
    total_err: float
    limit_estimate: float                     # certified estimate of lim x Qf(x)
    limit_err: float
    tail_bound_at_last: float
    consistent: bool                          # |last sample - total| within bounds
    probe: ProbeResult | None
    probe_rate_target: float                  # |limit| * ln 2
    probe_rate_ok: bool

    @property
    def limit_is_zero(self) -> bool:
        return abs(self.limit_estimate) <= self.limit_err + 1e-12


def mean_limit_check(f: TestFunction, cfg: QuadConfig = DEFAULT_CONFIG,
                     decades: float = 6.0) -> MeanLimitReport:
    """Samples x Qf(x) across >= 4 decades and checks convergence to the
    total integral within the certified tail bound.

    The limit itself is estimated through the total integral (the identity
    x Qf(x) = int_0^x f makes the two interchangeable); the samples then
    corroborate it within the declared tail remainder.  When the limit is
    nonzero the doubling probe must flag |Qf| as logarithmically divergent
    with increments near |limit| * ln 2.
    """
    if decades < 4.0:
        raise ValueError("need at least four decades of samples")
    m, m_err = total_integral(f, cfg)
    cum = _cumulative(f, cfg)
    n = int(2 * decades) + 1
    xs = tuple(10.0 ** (decades * i / (n - 1)) * 1.0137 for i in range(n))
    values = tuple(cum.value(x) for x in xs)

    x_last = xs[-1]
    tail_cls = f.tail
    if tail_cls.kind == "compact":
        tail_bound = 0.0
    else:
        tail_bound = tail_cls.tail_integral_upper(max(x_last, tail_cls.valid_from))
    consistent = abs(values[-1] - m) <= tail_bound + m_err + 1e-6 * max(1.0, abs(m))

    probe = None
    rate_target = abs(m) * math.log(2.0)
    rate_ok = True
    if abs(m) > max(1e-9, 10.0 * m_err):
        probe = probe_divergence(lambda x: abs(cum.value(x) / x), _probe_start(f), cfg,
                                 breakpoints=f.breakpoints)
        rate_ok = (probe.verdict == "divergent-log"
                   and abs(probe.last_increment - rate_target) <= 0.1 * rate_target)
    return MeanLimitReport(
        name=f.name, xs=xs, scaled_values=values,
        total_integral=m, total_err=m_err,
        limit_estimate=m, limit_err=m_err + 1e-12,
        tail_bound_at_last=tail_bound, consistent=consistent,
        probe=probe, probe_rate_target=rate_target, probe_rate_ok=rate_ok,
    )


def equivalence_ratio(f: TestFunction, cfg: QuadConfig = DEFAULT_CONFIG) -> float:
    """R(f) = (l1 norm of H f + l1 norm of f) / W(f) for nonnegative f.

    The l1 norm of f is added on the left because the correction kernel
    (theta) annihilates under H while carrying W(theta) = 2, so the bare
    quotient admits no universal lower constant.
    """
    if not _is_nonnegative(f):
        raise DomainError("equivalence ratio defined for nonnegative functions")
    wf = log_weight_norm(f, cfg)
    if wf.verdict not in ("converged", "not-converged"):
        raise DomainError(f"{f.name}: weighted norm is {wf.verdict}")
    if wf.value <= wf.total_error:
        raise DomainError(f"{f.name}: weighted norm vanishes; function is a.e. zero")
    hf = l1_norm_modified(f, cfg).require_value()
    l1, _ = total_integral(absolute(f), cfg)
    return (hf + l1) / wf.value


def cont_hardy_ratio(f: TestFunction, p: float,
                     cfg: QuadConfig = DEFAULT_CONFIG) -> float:
    """[int (Qf)^p] / [int f^p] for nonnegative f; bounded by (p/(p-1))^p."""
    if not 1.0 < p < math.inf:
        raise DomainError("exponent must lie in (1, inf)")
    if not _is_nonnegative(f):
        raise DomainError("ratio defined for nonnegative functions")
    org, tl = f.origin, f.tail
    if org.kind == "power_log" or (org.kind == "power" and p * org.alpha >= 1.0):
        raise DomainError(f"{f.name} is not p-integrable near the origin for p={p}")
    m, m_err = total_integral(f, cfg)
    cum = _cumulative(f, cfg)

    def num_fn(x: float) -> float:
        return (cum.value(x) / x) ** p

    def num_vdensity(v: float) -> float:
        F = cum.value_logarg(v)
        if F <= 0.0:
            return 0.0
        return math.exp(p * math.log(F) + (1.0 - p) * v)

    def num_udensity(w: float) -> float:
        F = cum.value_logarg(-w)
        if F <= 0.0:
            return 0.0
        return math.exp(p * (math.log(F) + w) - w)

    env_u = org.envelope_reciprocal()
    if org.kind == "bounded":
        num_origin = Envelope(org.coeff ** p, 2.0, 0.0, env_u.valid_from)
        den_origin = Envelope(org.coeff ** p, 2.0, 0.0, env_u.valid_from)
    else:
        c_avg = (org.coeff / (1.0 - org.alpha)) ** p
        num_origin = Envelope(c_avg, 2.0 - p * org.alpha, 0.0, env_u.valid_from)
        den_origin = Envelope(org.coeff ** p, 2.0 - p * org.alpha, 0.0, env_u.valid_from)
    num_tail = Envelope(max((abs(m) + m_err) ** p, 1e-300), p, 0.0)
    if tl.kind == "compact":
        den_tail = Envelope.compact(tl.support_end)
    elif tl.kind == "power":
        den_tail = Envelope(tl.coeff ** p, p * tl.alpha, 0.0, tl.valid_from)
    else:
        den_tail = Envelope(tl.coeff ** p, p, -p * tl.beta, tl.valid_from)

    num = integrate_halfline(
        HalflineIntegrand(num_fn, num_vdensity, num_udensity, f.breakpoints),
        cfg, origin_envs=(num_origin,), tail_envs=(num_tail,))
    if num.verdict not in ("converged", "not-converged"):
        raise ArithmeticError(
            f"{f.name}: p-norm of the average did not resolve ({num.verdict}); "
            "this contradicts the averaging bound and flags a defect")

    vdensity, udensity = _abs_density_factory(f)
    den = integrate_halfline(
        HalflineIntegrand(lambda t: abs(f.eval(t)) ** p,
                          vdensity=lambda v: math.exp(p * f.log_eval(v)[0] + v),
                          udensity=lambda w: math.exp(p * f.log_eval(-w)[0] - w),
                          breakpoints=f.breakpoints),
        cfg, origin_envs=(den_origin,), tail_envs=(den_tail,))
    den_val = den.require_value()
    if den_val <= den.total_error:
        raise DomainError(f"{f.name}: p-norm denominator vanishes")
    return num.require_value() / den_val


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def _functional_dict(res: HalflineResult) -> dict:
    out = {"verdict": res.verdict}
    if res.verdict in ("converged", "not-converged"):
        out["value"] = res.value
        out["err_est"] = res.err_est
        out["tail_bound"] = res.tail_bound
    if res.divergent_side is not None:
        out["divergent_side"] = res.divergent_side
    return out


@dataclass(frozen=True)
class ContReport:
    name: str
    total_integral: float
    total_err: float
    l1_norm: dict
    weighted_norm: dict
    l1_norm_modified: dict
    i1: dict
    i2: dict
    equivalence_ratio: float | None
    rel_tol: float
    abs_tol: float

    def to_dict(self) -> dict:
        return {
            "function": self.name,
            "total_integral": {"value": self.total_integral, "err_est": self.total_err},
            "l1_norm": self.l1_norm,
            "weighted_norm": self.weighted_norm,
            "l1_norm_modified": self.l1_norm_modified,
            "i1": self.i1,
            "i2": self.i2,
            "equivalence_ratio": self.equivalence_ratio,
            "tolerances": {"rel_tol": self.rel_tol, "abs_tol": self.abs_tol},
        }


def build_report(f: TestFunction, cfg: QuadConfig = DEFAULT_CONFIG) -> ContReport:
    m, m_err = total_integral(f, cfg)
    l1_cum = _cumulative_abs(f, cfg)
    wf = log_weight_norm(f, cfg)
    hf = l1_norm_modified(f, cfg)
    i1 = split_i1(f, cfg)
    i2 = split_i2(f, cfg)
    ratio = None
    if _is_nonnegative(f) and wf.verdict in ("converged", "not-converged") \
            and wf.value > wf.total_error and hf.verdict in ("converged", "not-converged"):
        ratio = (hf.value + l1_cum.total) / wf.value
    return ContReport(
        name=f.name,
        total_integral=m, total_err=m_err,
        l1_norm={"verdict": "converged", "value": l1_cum.total,
                 "err_est": l1_cum.total_err, "tail_bound": 0.0},
        weighted_norm=_functional_dict(wf),
        l1_norm_modified=_functional_dict(hf),
        i1=_functional_dict(i1),
        i2=_functional_dict(i2),
        equivalence_ratio=ratio,
        rel_tol=cfg.rel_tol, abs_tol=cfg.abs_tol,
    )
