"""Walkthrough: all critical central masses, mode by mode.

Each mode-l block determinant (l >= 2) is affine in the central mass m,
so it has at most one positive root; the mode-1 determinant factors as
-I0 * m times a quadratic.  This script derives every critical mass for
a few n and reproduces the count pattern over n = 3..30.
"""

import numpy as np

from ngon_degeneracy import count_table, degeneracy_report, predicted_count

for n in (3, 6, 7, 10):
    rep = degeneracy_report(n)
    print(f"n = {n}:")
    for md in rep.modes:
        root = f"m* = {md.m_star:.9f}" if md.m_star is not None \
            else "no positive root"
        print(f"  mode l={md.l}: det = {md.a_l:+.6f} {md.slope:+.6f} m "
              f"(beta = {md.beta_l:+.4f})  ->  {root}")
    q = rep.mode1
    print(f"  mode l=1: reduced quadratic {q.b:+.6f} m^2 {q.c:+.6f} m "
          f"{q.d:+.6f}")
    if q.positive_roots:
        print("    positive roots: "
              + ", ".join(f"{r:.9f}" for r in q.positive_roots))
    else:
        print("    no positive roots (mode 1 never degenerates for n >= 7)")
    print(f"  => {rep.count} distinct critical mass value(s): "
          + ", ".join(f"{v:.9f}" for v in rep.all_m_star))
    print()

# the exact n = 3 value has a closed form
exact = (2.0 * np.sqrt(3.0) + 9.0) / (18.0 * np.sqrt(3.0) - 15.0)
computed = degeneracy_report(3).all_m_star[0]
print(f"n = 3 closed form (2*sqrt(3)+9)/(18*sqrt(3)-15) = {exact:.15f}")
print(f"computed root:                                    {computed:.15f}")
print(f"difference: {abs(exact - computed):.2e}\n")

print("count of distinct critical masses, n = 3..30:")
print("n   computed  predicted")
for n, count in count_table(3, 30):
    print(f"{n:<4}{count:<10}{predicted_count(n)}")
