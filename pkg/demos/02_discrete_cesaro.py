"""The discrete story: Cesaro means, the corrected operator, exact rationals.

The sequence lambda_k = 1/(k(k+1)) plays the role of the continuous profile:
it is summable with total 1, its Cesaro means are exactly 1/(n+1) (not
summable), and the corrected operator annihilates it identically.  All of
this is checked in exact rational arithmetic, zero tolerance.

Run:  python demos/02_discrete_cesaro.py
"""

import math
from fractions import Fraction

from hardy import seq_ops as so

lam = so.catalog_seq("lambda")
e1 = so.catalog_seq("em", m=1)

print("== Cesaro means of the kernel sequence, exact ==")
for n in (1, 5, 100, 10 ** 4):
    print(f"  mean at n={n:>6d}: {so.cesaro(lam, n)}   (= 1/(n+1))")

print("\n== a summable sequence with non-summable means forces sum zero ==")
rep = so.disc_mean_check(lam)
print(f"  doubling blocks of sum |means|: last {rep.increments[-1]:.6f}"
      f" vs ln2 = {math.log(2):.6f}")

print("\n== the corrected operator kills the kernel exactly ==")
for n in (1, 7, 1000):
    print(f"  corrected mean at n={n}: {so.modified_cesaro(lam, n)}")

print("\n== exact split identities on a random-looking rational sequence ==")
seq = so.finite_sequence("demo", [Fraction(3, 7), 0, Fraction(1, 2),
                                  Fraction(5, 11), Fraction(2, 9)])
print(f"  sum_n J1(n)        = {so.j1_sum(seq).exact}")
print(f"  sum_k a_k / k      = {so.j1_sum_by_weights(seq).exact}")
print(f"  sum_n J2(n)        = {so.j2_sum(seq).exact}")
print(f"  sum_k a_k (H_k -1) = {so.j2_sum_by_weights(seq).exact}")
print("  (equal as exact rationals, not approximately)")

print("\n== harmonic numbers and their gamma residual ==")
print(f"  H_4 = {so.harmonic(4)}")
for n in (10, 1000, 10 ** 6):
    r = so.gamma_residual(n)
    print(f"  H_n - ln n - gamma at n={n:>7d}: {r:.3e}"
          f"   bracket (1/(2(n+1)), 1/(2n)) = ({0.5 / (n + 1):.3e}, {0.5 / n:.3e})")

print("\n== the weight ln(k+1) decides summability of the corrected image ==")
for name in ("em(m=1)", "lambda", "power(alpha=2)", "logdecay(beta=2)"):
    seq = so.parse_sequence(name)
    L = so.l1_log_weight(seq)
    norm = so.l1_norm_mod(seq)
    ltxt = f"{L.value:.6f}" if L.verdict == "converged" else L.verdict
    ntxt = f"{norm.value:.6f}" if norm.verdict == "converged" else norm.verdict
    print(f"  {seq.name:22s} L(a) = {ltxt:>10s}   ||corrected||_1 = {ntxt:>10s}")

print("\n== the impulse norm is exactly 1 ==")
print(f"  ||corrected e1||_1 = {so.l1_norm_mod(e1).exact}")
