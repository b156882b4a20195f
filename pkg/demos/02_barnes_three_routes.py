"""Three independent evaluations of the Barnes double zeta derivative.

zeta_B'(0; a, 1, 1) drives the whole determinant formula.  The library
computes it through a smooth integral representation, through a truncated
Bernoulli tail with a certified remainder, and (for rational a) through an
exact Dedekind-sum closed form.  This script shows all three side by side.
"""

from fractions import Fraction

from envdet import (
    dedekind_sum,
    zeta_b_prime0,
    zeta_b_prime0_rational,
    zeta_b_prime0_series,
)

print("a = p/q     integral route      exact rational      |difference|")
for p, q in [(1, 1), (1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 6), (5, 6), (5, 7)]:
    integral = zeta_b_prime0(p / q)
    rational = zeta_b_prime0_rational(Fraction(p, q))
    print(
        f"{p}/{q:<6}  {integral.value:>18.15f}  {rational.value:>18.15f}"
        f"  {abs(integral.value - rational.value):.2e}"
    )

print()
print("series route with its certified error bound, at a = 1/3:")
target = zeta_b_prime0(1 / 3).value
print(f"{'N':>3}  {'truncation':>18}  {'certified bound':>16}  {'actual error':>14}")
for n in (2, 3, 4, 5):
    approx = zeta_b_prime0_series(1 / 3, n)
    print(
        f"{n:>3}  {approx.value:>18.15f}  {approx.error_bound:>16.3e}"
        f"  {abs(approx.value - target):>14.3e}"
    )

print()
print("the exact route is powered by Dedekind sums, e.g.")
for q, p in [(1, 3), (5, 7), (7, 5)]:
    print(f"  S({q}, {p}) = {dedekind_sum(q, p)}")
