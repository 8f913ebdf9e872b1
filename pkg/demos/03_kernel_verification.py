"""Walkthrough: brute-force verification that the predicted critical
masses are exactly where the Hessian kernel grows.

At a generic central mass the Hessian has a two-dimensional kernel (the
dilation and rotation invariance fields).  At each predicted critical
mass m* the kernel must grow, and shrink back at m* +- 0.05.  The probe
uses only the full-matrix oracle: analytic assembly plus the dense
Jacobi eigensolver -- none of the block formulas.
"""

from ngon_degeneracy import degeneracy_report, verify_degeneracy

for n in (3, 8, 10):
    rep = degeneracy_report(n)
    print(f"n = {n}: predicted critical masses "
          + ", ".join(f"{v:.9f}" for v in rep.all_m_star))
    for m_star in rep.all_m_star:
        probe = verify_degeneracy(n, m_star)
        below = "skipped (would need m < 0)" if probe.kernel_below is None \
            else str(probe.kernel_below)
        print(f"  m* = {m_star:.9f}: kernel dim {probe.kernel_at_star} "
              f"at m* (extra {probe.extra_at_star}), "
              f"{below} below, {probe.kernel_above} above")
    print()

print("every probe shows the kernel growing beyond the two trivial zero")
print("modes exactly at m* and recovering on both admissible sides.")
