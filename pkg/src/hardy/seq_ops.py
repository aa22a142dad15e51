"""Running Cesaro means, the mean-zero corrected sequence operator, and the
log-weighted summability diagnostics, with an exact-rational mode.

Notation:

    (G a)_n  = (1/n) sum_{k<=n} a_k                    (Cesaro mean)
    (Gm a)_n = (G a)_n - (sum_k a_k) / (n+1)           (mean-zero correction)
    J1(n)    = (1/n - 1/(n+1)) sum_{k<=n} a_k
    J2(n)    = (n+1)^-1 sum_{k>n} a_k                  (so Gm a = J1 - J2)
    L(a)     = sum_k |a_k| ln(k+1)

Finite-support sequences are stored as exact rationals and every identity on
them is evaluated with zero tolerance: sum_n J1(n) telescopes to
sum_k a_k / k and sum_n J2(n) rearranges to sum_k a_k (H_k - 1), both as
exact ``Fraction`` equalities.  Generator sequences carry a declared decay
class whose integral-test remainder certifies every truncated tail.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .envelopes import Envelope

__all__ = [
    "Rational", "SeqSpec", "DecayClass", "SumResult", "DiscMeanReport", "DiscReport",
    "SequenceError", "EULER_GAMMA",
    "catalog_seq", "parse_sequence", "finite_sequence", "load_rational_file",
    "cesaro", "modified_cesaro", "j1_term", "j2_term",
    "j1_sum", "j2_sum", "j1_sum_by_weights", "j2_sum_by_weights",
    "l1_log_weight", "l1_norm_mod", "total_sum",
    "harmonic", "gamma_residual", "scan_gamma_residual",
    "lp_norm", "hardy_ratio", "disc_mean_check", "disc_equivalence_ratio",
    "build_report",
]

# Exact rational scalar: always reduced, positive denominator.
Rational = Fraction

# Euler-Mascheroni constant, fixed 20-digit literal (never computed here).
EULER_GAMMA = 0.57721566490153286061

_LN2 = math.log(2.0)


class SequenceError(ValueError):
    """Malformed sequence, parameters, or an operation off its domain."""


# ---------------------------------------------------------------------------
# decay classes (integral-test machinery on the index)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecayClass:
    """Declared bound on |a_k| beyond ``valid_from``.

    kind = "compact":    a_k = 0 for k > support_end
    kind = "power":      |a_k| <= coeff * k**-alpha,          alpha > 1
    kind = "power_log":  |a_k| <= coeff / (k * ln(k)**beta),  beta > 1
    """

    kind: str
    coeff: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    support_end: int = 0
    valid_from: int = 3
    lower: float | None = None

    def __post_init__(self):
        if self.kind not in ("compact", "power", "power_log"):
            raise SequenceError(f"unknown decay kind {self.kind!r}")
        if self.kind == "power" and self.alpha <= 1.0:
            raise SequenceError("decay power exponent must exceed 1")
        if self.kind == "power_log" and self.beta <= 1.0:
            raise SequenceError("decay power-log exponent must exceed 1")
        object.__setattr__(self, "valid_from", max(self.valid_from, 3))

    def envelope(self) -> Envelope:
        if self.kind == "compact":
            return Envelope.compact(float(self.support_end))
        if self.kind == "power":
            return Envelope(self.coeff, self.alpha, 0.0, float(self.valid_from),
                            lower=self.lower)
        return Envelope(self.coeff, 1.0, -self.beta, float(self.valid_from),
                        lower=self.lower)

    def weighted_envelope(self) -> Envelope:
        """Envelope of |a_k| * ln(k+1), using ln k <= ln(k+1) <= (1+ln 2) ln k."""
        return self.envelope().weighted_log()

    def term_bound(self, k: int) -> float:
        if self.kind == "compact":
            return 0.0 if k > self.support_end else math.inf
        if k < self.valid_from:
            raise SequenceError("decay bound queried before its valid range")
        if self.kind == "power":
            return self.coeff * float(k) ** (-self.alpha)
        return self.coeff / (k * math.log(k) ** self.beta)

    def remainder(self, n: int) -> float:
        """Integral-test bound on sum_{k>n} |a_k|, n >= valid_from."""
        env = self.envelope()
        if env.is_compact:
            return 0.0 if n >= self.support_end else math.inf
        return env.remainder(math.log(max(n, self.valid_from)))

    def weighted_remainder(self, n: int) -> float:
        """Integral-test bound on sum_{k>n} |a_k| ln(k+1)."""
        env = self.weighted_envelope()
        if env.is_compact:
            return 0.0 if n >= self.support_end else math.inf
        if not env.integrable():
            return math.inf
        return env.remainder(math.log(max(n, int(env.valid_from) + 1)))

    def weighted_divergent(self) -> bool:
        return self.weighted_envelope().certified_divergent()


# ---------------------------------------------------------------------------
# sequence descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeqSpec:
    """A sequence given either by an exact finite-support list or a rule.

    Finite mode stores a_1..a_N as exact rationals (zero beyond N).
    Generator mode supplies term(k) plus a declared decay class; terms may be
    exact rationals (``is_exact``) or floats.  ``exact_sum`` records a known
    closed-form total.  ``vec`` is an optional vectorized term builder used
    by the large-scale float paths.
    """

    name: str
    values: tuple[Fraction, ...] | None = None
    gen: Callable[[int], Fraction | float] | None = None
    decay: DecayClass | None = None
    exact_sum: Fraction | None = None
    is_exact: bool = False
    vec: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        if (self.values is None) == (self.gen is None):
            raise SequenceError("exactly one of values/gen must be given")
        if self.gen is not None and self.decay is None:
            raise SequenceError("generator sequences must declare a decay class")
        if self.values is not None and not all(isinstance(v, Fraction) for v in self.values):
            raise SequenceError("finite-support values must be exact rationals")
        if self.values is not None:
            object.__setattr__(self, "is_exact", True)
        if self.gen is not None:
            self._spot_check_decay()

    def _spot_check_decay(self, n: int = 64):
        dec = self.decay
        ks = sorted({int(dec.valid_from * 2.0 ** (12.0 * i / (n - 1))) + 1 for i in range(n)})
        for k in ks:
            bound = dec.term_bound(k)
            if abs(float(self.gen(k))) > bound * (1.0 + 1e-9):
                raise SequenceError(f"{self.name}: decay envelope violated at k={k}")
            if dec.lower is not None and dec.kind != "compact":
                floor = bound * dec.lower / dec.coeff
                if abs(float(self.gen(k))) < floor * (1.0 - 1e-9):
                    raise SequenceError(f"{self.name}: decay lower bound violated at k={k}")

    @property
    def finite(self) -> bool:
        return self.values is not None

    @property
    def support_end(self) -> int | None:
        if self.finite:
            return len(self.values)
        if self.decay.kind == "compact":
            return self.decay.support_end
        return None

    def term(self, k: int) -> Fraction | float:
        if k < 1:
            raise SequenceError("indices start at 1")
        if self.finite:
            return self.values[k - 1] if k <= len(self.values) else Fraction(0)
        return self.gen(k)

    def terms_float(self, n: int) -> np.ndarray:
        """a_1..a_n as float64."""
        if self.finite:
            out = np.zeros(n)
            m = min(n, len(self.values))
            out[:m] = [float(v) for v in self.values[:m]]
            return out
        ks = np.arange(1, n + 1, dtype=np.float64)
        if self.vec is not None:
            return np.asarray(self.vec(ks), dtype=np.float64)
        return np.array([float(self.gen(k)) for k in range(1, n + 1)])


@dataclass(frozen=True)
class SumResult:
    value: float
    err: float
    verdict: str  # "converged" | "divergent" | "inconclusive"
    exact: Fraction | None = None  # populated when the value is exact

    def require_value(self) -> float:
        if self.verdict != "converged":
            raise SequenceError(f"no value available, verdict is {self.verdict}")
        return self.value

    @staticmethod
    def from_exact(q: Fraction) -> "SumResult":
        return SumResult(float(q), 0.0, "converged", exact=q)

    @staticmethod
    def divergent() -> "SumResult":
        return SumResult(math.inf, math.inf, "divergent")

    @staticmethod
    def inconclusive() -> "SumResult":
        return SumResult(math.nan, math.inf, "inconclusive")


# ---------------------------------------------------------------------------
# prefix sums
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _prefix_exact_block(seq: SeqSpec, cap: int) -> tuple[Fraction, ...]:
    if not seq.is_exact:
        raise SequenceError(f"{seq.name} has no exact terms")
    out = [Fraction(0)] * (cap + 1)
    acc = Fraction(0)
    for k in range(1, cap + 1):
        acc += seq.term(k)
        out[k] = acc
    return tuple(out)


def _prefix_exact(seq: SeqSpec, n: int) -> tuple[Fraction, ...]:
    """S_0..S_m as exact rationals with m >= n; block-cached so that varying
    n does not recompute the walk."""
    return _prefix_exact_block(seq, 1 << max(6, n.bit_length()))


@lru_cache(maxsize=16)
def _prefix_float(seq: SeqSpec, n: int) -> np.ndarray:
    arr = seq.terms_float(n)
    return np.cumsum(arr)


def total_sum(seq: SeqSpec, horizon: int = 10 ** 6) -> SumResult:
    """sum_k a_k, exact for finite support or a declared closed form,
    tail-bounded through the decay envelope otherwise."""
    if seq.finite:
        return SumResult.from_exact(sum(seq.values, Fraction(0)))
    if seq.exact_sum is not None:
        return SumResult.from_exact(seq.exact_sum)
    end = seq.support_end
    if end is not None:
        total = float(np.sum(seq.terms_float(end)))
        return SumResult(total, abs(total) * 1e-13 * math.log2(end + 2), "converged")
    n = max(horizon, seq.decay.valid_from)
    head = float(np.sum(seq.terms_float(n)))
    rem = seq.decay.remainder(n)
    if math.isinf(rem):
        return SumResult.inconclusive()
    return SumResult(head, rem + abs(head) * 1e-13 * math.log2(n), "converged")


# ---------------------------------------------------------------------------
# the operators
# ---------------------------------------------------------------------------

def cesaro(seq: SeqSpec, n: int) -> Fraction | float:
    """(G a)_n = (1/n) sum_{k<=n} a_k; exact rational in exact mode."""
    if n < 1:
        raise SequenceError("n must be at least 1")
    if seq.is_exact:
        return _prefix_exact(seq, n)[n] / n
    return float(_prefix_float(seq, n)[n - 1]) / n


def modified_cesaro(seq: SeqSpec, n: int, horizon: int = 10 ** 6) -> Fraction | float:
    """(Gm a)_n = (G a)_n - (sum_k a_k)/(n+1)."""
    if n < 1:
        raise SequenceError("n must be at least 1")
    total = total_sum(seq, horizon)
    if total.verdict != "converged":
        raise SequenceError(f"{seq.name}: total sum is {total.verdict}")
    if seq.is_exact and total.exact is not None:
        return cesaro(seq, n) - total.exact / (n + 1)
    return float(cesaro(seq, n)) - total.value / (n + 1)


def j1_term(seq: SeqSpec, n: int) -> Fraction | float:
    s = _prefix_exact(seq, n)[n] if seq.is_exact else float(_prefix_float(seq, n)[n - 1])
    if seq.is_exact:
        return s / (Fraction(n) * (n + 1))
    return s / (n * (n + 1.0))


def j2_term(seq: SeqSpec, n: int, horizon: int = 10 ** 6) -> Fraction | float:
    total = total_sum(seq, horizon)
    if total.verdict != "converged":
        raise SequenceError(f"{seq.name}: total sum is {total.verdict}")
    if seq.is_exact and total.exact is not None:
        return (total.exact - _prefix_exact(seq, n)[n]) / (n + 1)
    return (total.value - float(_prefix_float(seq, n)[n - 1])) / (n + 1.0)


def _require_nonneg_finite(seq: SeqSpec, what: str):
    if seq.finite and any(v < 0 for v in seq.values):
        raise SequenceError(f"{what} requires nonnegative terms")


def j1_sum(seq: SeqSpec, horizon: int = 10 ** 5) -> SumResult:
    """sum_n J1(n), computed on the operator side (the n-sum).

    For finite support the sum beyond the support telescopes exactly:
    sum_{n>N} S_N/(n(n+1)) = S_N/(N+1).
    """
    _require_nonneg_finite(seq, "j1_sum")
    if seq.finite:
        pre = _prefix_exact(seq, len(seq.values))
        n0 = len(seq.values)
        head = sum((pre[n] / (Fraction(n) * (n + 1)) for n in range(1, n0 + 1)),
                   Fraction(0))
        return SumResult.from_exact(head + pre[n0] / (n0 + 1))
    total = total_sum(seq, horizon)
    if total.verdict != "converged":
        return SumResult.inconclusive()
    csum = _prefix_float(seq, horizon)
    ns = np.arange(1, horizon + 1, dtype=np.float64)
    head = float(np.sum(csum / (ns * (ns + 1.0))))
    # S_n <= total on nonnegative sequences, so the tail is at most m/(H+1)
    m_up = abs(total.value) + total.err
    return SumResult(head, m_up / (horizon + 1) + total.err + 1e-12 * abs(head),
                     "converged")


def j2_sum(seq: SeqSpec, horizon: int = 10 ** 5) -> SumResult:
    """sum_n J2(n) on the operator side; DIVERGENT when the log-weighted
    envelope certifies it."""
    _require_nonneg_finite(seq, "j2_sum")
    if seq.finite:
        n0 = len(seq.values)
        pre = _prefix_exact(seq, n0)
        m = pre[n0]
        head = sum(((m - pre[n]) / Fraction(n + 1) for n in range(1, n0)), Fraction(0))
        return SumResult.from_exact(head)
    if seq.decay.weighted_divergent():
        return SumResult.divergent()
    total = total_sum(seq, horizon)
    if total.verdict != "converged":
        return SumResult.inconclusive()
    wrem = seq.decay.weighted_remainder(horizon)
    if math.isinf(wrem):
        return SumResult.inconclusive()
    csum = _prefix_float(seq, horizon)
    ns = np.arange(1, horizon + 1, dtype=np.float64)
    head = float(np.sum((total.value - csum) / (ns + 1.0)))
    # tail: sum_{n>H} T_n/(n+1) = sum_{k>H} a_k (H_k - H_{H+1}) <= weighted remainder
    err = wrem + total.err * math.log(horizon + 1.0) + 1e-12 * abs(head)
    return SumResult(head, err, "converged")


def j1_sum_by_weights(seq: SeqSpec, horizon: int = 10 ** 6) -> SumResult:
    """The rearranged form sum_k a_k / k (independent route for checking)."""
    _require_nonneg_finite(seq, "j1_sum_by_weights")
    if seq.finite:
        return SumResult.from_exact(
            sum((v / Fraction(k) for k, v in enumerate(seq.values, start=1)),
                Fraction(0)))
    n = max(horizon, seq.decay.valid_from)
    ks = np.arange(1, n + 1, dtype=np.float64)
    head = float(np.sum(seq.terms_float(n) / ks))
    rem = seq.decay.remainder(n)  # a_k/k <= a_k
    if math.isinf(rem):
        return SumResult.inconclusive()
    return SumResult(head, rem + 1e-13 * abs(head) * math.log2(n), "converged")


def j2_sum_by_weights(seq: SeqSpec, horizon: int = 10 ** 6) -> SumResult:
    """The rearranged form sum_k a_k (H_k - 1)."""
    _require_nonneg_finite(seq, "j2_sum_by_weights")
    if seq.finite:
        acc = Fraction(0)
        for k, v in enumerate(seq.values, start=1):
            acc += v * (harmonic(k) - 1)
        return SumResult.from_exact(acc)
    if seq.decay.weighted_divergent():
        return SumResult.divergent()
    wrem = seq.decay.weighted_remainder(horizon)
    if math.isinf(wrem):
        return SumResult.inconclusive()
    n = horizon
    ks = np.arange(1, n + 1, dtype=np.float64)
    # float harmonic prefix; adequate against the certified remainder
    hk = np.cumsum(1.0 / ks)
    head = float(np.sum(seq.terms_float(n) * (hk - 1.0)))
    return SumResult(head, wrem + 1e-12 * abs(head), "converged")


def l1_log_weight(seq: SeqSpec, horizon: int = 10 ** 6) -> SumResult:
    """L(a) = sum_k |a_k| ln(k+1) with an integral-test tail bound."""
    if seq.finite:
        vals = [abs(float(v)) * math.log(k + 1.0)
                for k, v in enumerate(seq.values, start=1)]
        total = math.fsum(vals)
        return SumResult(total, 4e-16 * total * max(1, len(vals)).bit_length(),
                         "converged")
    if seq.decay.weighted_divergent():
        return SumResult.divergent()
    end = seq.support_end
    n = end if end is not None else max(horizon, seq.decay.valid_from)
    ks = np.arange(1, n + 1, dtype=np.float64)
    head = float(np.sum(np.abs(seq.terms_float(n)) * np.log(ks + 1.0)))
    if end is not None:
        return SumResult(head, 1e-13 * head * math.log2(n + 2), "converged")
    wrem = seq.decay.weighted_remainder(n)
    if math.isinf(wrem):
        return SumResult.inconclusive()
    return SumResult(head, wrem + 1e-13 * head * math.log2(n + 2), "converged")


def l1_norm_mod(seq: SeqSpec, horizon: int = 10 ** 4) -> SumResult:
    """sum_n |(Gm a)_n| with certified tail handling.

    Finite support is exact: beyond the support (Gm a)_n = m/(n(n+1)), whose
    absolute sum telescopes to |m|/(N+1).  For nonnegative generators the
    tail obeys |Gm a|_n <= J1(n) + J2(n), and sum J2 past the horizon sits
    under the log-weighted remainder; divergence is certified through the
    harmonic comparison H_k - 1 >= ln(k+1)/2 (k >= 7), which turns a
    divergent lower envelope on a_k ln(k+1) into a divergent lower bound on
    sum J2 while sum J1 stays below the finite total.
    """
    if seq.finite:
        n0 = len(seq.values)
        pre = _prefix_exact(seq, n0)
        m = pre[n0]
        head = sum((abs(pre[n] / Fraction(n) - m / Fraction(n + 1))
                    for n in range(1, n0 + 1)), Fraction(0))
        return SumResult.from_exact(head + abs(m) / (n0 + 1))
    _require_nonneg_finite(seq, "l1_norm_mod")
    if seq.decay.weighted_divergent():
        return SumResult.divergent()
    total = total_sum(seq)
    if total.verdict != "converged":
        return SumResult.inconclusive()
    end = seq.support_end
    if end is not None and end <= 10 ** 7:
        arr = seq.terms_float(end)
        csum = np.cumsum(arr)
        ns = np.arange(1, end + 1, dtype=np.float64)
        head = float(np.sum(np.abs(csum / ns - total.value / (ns + 1.0))))
        tail = abs(total.value) / (end + 1)  # exact telescoping beyond support
        return SumResult(head + tail, total.err + 1e-12 * head * math.log2(end + 2),
                         "converged")
    wrem = seq.decay.weighted_remainder(horizon)
    if math.isinf(wrem):
        return SumResult.inconclusive()
    if seq.is_exact and total.exact is not None:
        pre = _prefix_exact(seq, horizon)
        head_q = sum((abs(pre[n] / Fraction(n) - total.exact / Fraction(n + 1))
                      for n in range(1, horizon + 1)), Fraction(0))
        head, head_err = float(head_q), 0.0
    else:
        arr = seq.terms_float(horizon)
        csum = np.cumsum(arr)
        ns = np.arange(1, horizon + 1, dtype=np.float64)
        head = float(np.sum(np.abs(csum / ns - total.value / (ns + 1.0))))
        head_err = total.err * math.log(horizon + 1.0) + 1e-12 * head
    m_up = abs(total.value) + total.err
    tail_bound = m_up / (horizon + 1) + wrem
    return SumResult(head, head_err + tail_bound, "converged")


# ---------------------------------------------------------------------------
# harmonic numbers
# ---------------------------------------------------------------------------

_HARMONIC_CACHE: list[Fraction] = [Fraction(0)]


def harmonic(n: int) -> Fraction:
    """H_n as an exact rational."""
    if n < 1:
        raise SequenceError("harmonic numbers start at n = 1")
    while len(_HARMONIC_CACHE) <= n:
        k = len(_HARMONIC_CACHE)
        _HARMONIC_CACHE.append(_HARMONIC_CACHE[-1] + Fraction(1, k))
    return _HARMONIC_CACHE[n]


def gamma_residual(n: int) -> float:
    """H_n - ln n - gamma, via compensated float summation."""
    if n < 1:
        raise SequenceError("n must be at least 1")
    return _harmonic_float(n) - math.log(n) - EULER_GAMMA


def _harmonic_float(n: int) -> float:
    # Kahan summation: the residual bounds are ~1/(2n), far above the error
    total = 0.0
    comp = 0.0
    for k in range(1, n + 1):
        y = 1.0 / k - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def scan_gamma_residual(lo: int, hi: int) -> tuple[bool, float, float]:
    """Check 1/(2(n+1)) < H_n - ln n - gamma < 1/(2n) for every n in [lo, hi].

    Returns (ok, worst lower margin, worst upper margin); a single Kahan
    sweep keeps the harmonic error near machine precision, far below the
    1/(2n(n+1)) gap between the two bounds.
    """
    if lo < 1 or hi < lo:
        raise SequenceError("bad scan range")
    total = 0.0
    comp = 0.0
    ok = True
    worst_lo = math.inf
    worst_hi = math.inf
    for k in range(1, hi + 1):
        y = 1.0 / k - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if k >= lo:
            resid = total - math.log(k) - EULER_GAMMA
            lo_gap = resid - 1.0 / (2.0 * (k + 1))
            hi_gap = 1.0 / (2.0 * k) - resid
            if lo_gap <= 0.0 or hi_gap <= 0.0:
                ok = False
            worst_lo = min(worst_lo, lo_gap)
            worst_hi = min(worst_hi, hi_gap)
    return ok, worst_lo, worst_hi


# ---------------------------------------------------------------------------
# p-norms, the sharp-constant ratio, and diagnostics
# ---------------------------------------------------------------------------

def lp_norm(seq: SeqSpec, p: float, n: int) -> float:
    """Truncated (sum_{k<=n} |a_k|^p)^(1/p)."""
    if p < 1.0:
        raise SequenceError("p must be at least 1")
    arr = np.abs(seq.terms_float(n))
    return float(np.sum(arr ** p) ** (1.0 / p))


def hardy_ratio(seq: SeqSpec, p: float, n: int) -> float:
    """[sum_{m<=n} (G a)_m^p] / [sum_{k<=n} a_k^p] for nonnegative a.

    Reported at the truncation n and never extrapolated; for nonnegative
    sequences the truncated ratio is itself admissible against the
    (p/(p-1))^p bound.
    """
    if not p > 1.0:
        raise SequenceError("the ratio needs p > 1")
    arr = seq.terms_float(n)
    if np.any(arr < 0.0):
        raise SequenceError("hardy_ratio requires nonnegative terms")
    den = float(np.sum(arr ** p))
    if den == 0.0:
        raise SequenceError("zero denominator in hardy_ratio")
    means = np.cumsum(arr) / np.arange(1, n + 1, dtype=np.float64)
    num = float(np.sum(means ** p))
    return num / den


@dataclass(frozen=True)
class DiscMeanReport:
    name: str
    total: float
    total_err: float
    doubling_ns: tuple[int, ...]
    increments: tuple[float, ...]       # sum_{N<m<=2N} |(G a)_m|
    target: float                       # |sum a| * ln 2
    rate_ok: bool                       # increments within 10% at the top scale

    @property
    def zero_sum(self) -> bool:
        return abs(self.total) <= self.total_err + 1e-12


def disc_mean_check(seq: SeqSpec, max_power: int = 20) -> DiscMeanReport:
    """Witness that a nonzero total forces log-divergent Cesaro partial sums.

    For sum a != 0 the doubling blocks sum_{N<m<=2N} |(G a)_m| must settle
    near |sum a| * ln 2 (checked within 10% at the largest scale); a zero
    total asserts nothing.
    """
    total = total_sum(seq)
    if total.verdict != "converged":
        raise SequenceError(f"{seq.name}: total sum is {total.verdict}")
    n_top = 2 ** max_power
    arr = seq.terms_float(n_top)
    means = np.abs(np.cumsum(arr) / np.arange(1, n_top + 1, dtype=np.float64))
    ns = tuple(2 ** j for j in range(10, max_power))
    increments = tuple(float(np.sum(means[n: 2 * n])) for n in ns)
    target = abs(total.value) * _LN2
    if abs(total.value) <= total.err + 1e-12:
        rate_ok = True
    else:
        rate_ok = abs(increments[-1] - target) <= 0.1 * target
    return DiscMeanReport(seq.name, total.value, total.err, ns, increments,
                          target, rate_ok)


def disc_equivalence_ratio(seq: SeqSpec, horizon: int = 10 ** 4) -> float:
    """R(a) = (l1 norm of Gm a + sum a) / (gamma * sum a + L(a)), a >= 0.

    The plain total enters the numerator because the correction kernel
    lambda_k = 1/(k(k+1)) annihilates under Gm while the right side stays
    positive, so the bare quotient admits no universal lower constant.
    """
    _require_nonneg_finite(seq, "disc_equivalence_ratio")
    weight = l1_log_weight(seq)
    if weight.verdict != "converged":
        raise SequenceError(f"{seq.name}: log-weighted sum is {weight.verdict}")
    total = total_sum(seq)
    norm = l1_norm_mod(seq, horizon)
    denom = EULER_GAMMA * total.value + weight.value
    if denom <= 0.0:
        raise SequenceError("equivalence ratio needs a nonzero sequence")
    return (norm.require_value() + total.value) / denom


# ---------------------------------------------------------------------------
# catalog and parsing
# ---------------------------------------------------------------------------

def finite_sequence(name: str, values) -> SeqSpec:
    vals = tuple(Fraction(v) for v in values)
    while vals and vals[-1] == 0:
        vals = vals[:-1]
    if not vals:
        raise SequenceError("finite sequence must have a nonzero entry")
    return SeqSpec(name=name, values=vals)


def _seq_lambda() -> SeqSpec:
    return SeqSpec(
        name="lambda",
        gen=lambda k: Fraction(1, k * (k + 1)),
        decay=DecayClass("power", coeff=1.0, alpha=2.0, lower=0.5),
        exact_sum=Fraction(1),
        is_exact=True,
        vec=lambda ks: 1.0 / (ks * (ks + 1.0)),
    )


def _seq_em(m: int) -> SeqSpec:
    if m < 1:
        raise SequenceError("em needs m >= 1")
    return finite_sequence(f"em(m={m})", [0] * (m - 1) + [1])


def _seq_powcut(alpha: float, N: int) -> SeqSpec:
    if alpha < 0.0:
        raise SequenceError("powcut needs alpha >= 0")
    if N < 1:
        raise SequenceError("powcut needs N >= 1")
    return SeqSpec(
        name=f"powcut(alpha={alpha:g},N={N})",
        gen=lambda k: float(k) ** (-alpha) if k <= N else 0.0,
        decay=DecayClass("compact", support_end=N),
        vec=lambda ks: np.where(ks <= N, ks ** (-alpha), 0.0),
    )


def _seq_power(alpha: float) -> SeqSpec:
    if alpha <= 1.0:
        raise SequenceError("power needs alpha > 1 for summability")
    return SeqSpec(
        name=f"power(alpha={alpha:g})",
        gen=lambda k: float(k) ** (-alpha),
        decay=DecayClass("power", coeff=1.0, alpha=alpha, lower=1.0),
        vec=lambda ks: ks ** (-alpha),
    )


def _seq_logdecay(beta: float, start: int = 3) -> SeqSpec:
    if beta <= 1.0:
        raise SequenceError("logdecay needs beta > 1 for summability")
    start = max(int(start), 3)
    return SeqSpec(
        name=f"logdecay(beta={beta:g},start={start})",
        gen=lambda k: 1.0 / (k * math.log(k + 1.0) ** beta) if k >= start else 0.0,
        decay=DecayClass("power_log", coeff=1.0, beta=beta, valid_from=start,
                         lower=2.0 ** (-beta)),
        vec=lambda ks: np.where(ks >= start, 1.0 / (ks * np.log(ks + 1.0) ** beta), 0.0),
    )


_SEQ_FIXED = {"lambda": _seq_lambda}
_SEQ_FAMILIES = {
    "em": (_seq_em, ("m",), (int,)),
    "powcut": (_seq_powcut, ("alpha", "N"), (float, int)),
    "power": (_seq_power, ("alpha",), (float,)),
    "logdecay": (_seq_logdecay, ("beta", "start"), (float, int)),
}
_SEQ_DEFAULTS = {"logdecay": {"start": 3}}


def catalog_seq(name: str, **params) -> SeqSpec:
    if name in _SEQ_FIXED:
        if params:
            raise SequenceError(f"{name} takes no parameters")
        return _SEQ_FIXED[name]()
    if name in _SEQ_FAMILIES:
        builder, keys, types = _SEQ_FAMILIES[name]
        merged = dict(_SEQ_DEFAULTS.get(name, {}))
        merged.update(params)
        missing = [k for k in keys if k not in merged]
        unknown = [k for k in merged if k not in keys]
        if missing or unknown:
            raise SequenceError(
                f"{name} expects parameters {keys}; missing {missing}, unknown {unknown}")
        return builder(*(typ(merged[k]) for k, typ in zip(keys, types)))
    raise SequenceError(f"unknown sequence {name!r}")


_SEQ_NAME_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\((.*)\))?\s*$")


def parse_sequence(text: str) -> SeqSpec:
    m = _SEQ_NAME_RE.match(text)
    if not m:
        raise SequenceError(f"cannot parse sequence {text!r}")
    name, argstr = m.group(1), m.group(2)
    params = {}
    if argstr is not None and argstr.strip():
        for item in argstr.split(","):
            if "=" not in item:
                raise SequenceError(f"expected key=value in {text!r}")
            key, val = item.split("=", 1)
            try:
                params[key.strip()] = float(val)
            except ValueError as exc:
                raise SequenceError(f"bad numeric value in {text!r}") from exc
    return catalog_seq(name, **params)


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def load_rational_file(path) -> SeqSpec:
    """One rational per line, `p/q` or integer form; parsed exactly with no
    float round-trip."""
    values = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not _RATIONAL_RE.match(line):
                raise SequenceError(
                    f"{path}:{lineno}: {line!r} is not an integer or p/q rational")
            values.append(Fraction(line))
    return finite_sequence(f"file:{path}", values)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def _sum_dict(res: SumResult) -> dict:
    out = {"verdict": res.verdict}
    if res.verdict == "converged":
        out["value"] = res.value
        out["err"] = res.err
        if res.exact is not None:
            out["exact"] = str(res.exact)
    return out


@dataclass(frozen=True)
class DiscReport:
    name: str
    total: dict
    l1_norm_mod: dict
    log_weight: dict
    j1: dict
    j2: dict
    equivalence_ratio: float | None

    def to_dict(self) -> dict:
        return {
            "sequence": self.name,
            "total_sum": self.total,
            "l1_norm_modified": self.l1_norm_mod,
            "log_weighted_sum": self.log_weight,
            "j1_sum": self.j1,
            "j2_sum": self.j2,
            "equivalence_ratio": self.equivalence_ratio,
        }


def build_report(seq: SeqSpec, horizon: int = 10 ** 4) -> DiscReport:
    total = total_sum(seq)
    norm = l1_norm_mod(seq, horizon)
    weight = l1_log_weight(seq)
    nonneg = not (seq.finite and any(v < 0 for v in seq.values))
    j1 = j1_sum(seq) if nonneg else SumResult.inconclusive()
    j2 = j2_sum(seq) if nonneg else SumResult.inconclusive()
    ratio = None
    if nonneg and weight.verdict == "converged" and norm.verdict == "converged" \
            and total.verdict == "converged" and total.value > 0.0:
        denom = EULER_GAMMA * total.value + weight.value
        ratio = (norm.value + total.value) / denom
    return DiscReport(
        name=seq.name,
        total=_sum_dict(total),
        l1_norm_mod=_sum_dict(norm),
        log_weight=_sum_dict(weight),
        j1=_sum_dict(j1),
        j2=_sum_dict(j2),
        equivalence_ratio=ratio,
    )
