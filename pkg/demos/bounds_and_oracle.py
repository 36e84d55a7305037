"""Walkthrough: closed-form bounds, regimes, and the exact oracle.

The target value is floor(C(n,d+1)/C(n,d)) + d, which collapses to
floor((n-d)/(d+1)) + d.  The layered construction reaches it for all n up
to a threshold that grows like (d+1)*sqrt(d); beyond it the certified
bound is floor((d + sqrt(d^2 + 4(n+1)))/2).  For tiny posets a
backtracking exact-cover oracle computes the true optimum independently
of every construction in the package.
"""

from veronese_sdepth import (
    conjectured_sdepth,
    exact_sdepth,
    lower_bound_large_n,
    regime_of,
    sdepth_report,
    threshold,
)

print("threshold of the exact regime, by d:")
print("  " + "  ".join(f"d={d}: n<={threshold(d)}" for d in range(1, 7)))

print("\nexact oracle vs closed form on every poset with n <= 6:")
for n in range(1, 7):
    row = []
    for d in range(1, n + 1):
        got = exact_sdepth(n, d)
        assert got == conjectured_sdepth(n, d)
        row.append(f"{d}:{got}")
    print(f"  n={n}:  " + "  ".join(row))

print("\nreports across the regimes:")
for n, d in [(4, 2), (5, 2), (9, 2), (23, 5), (12, 1), (29, 1)]:
    rep = sdepth_report(n, d)
    status = "exact" if rep.verified else "bounds only"
    print(
        f"  (n={n:>2}, d={d})  {rep.regime.regime.value:>12}  "
        f"certified {rep.certified_lower} <= sdepth <= {rep.upper_bound_formula}  "
        f"[{status}, via {rep.certification}]"
    )

n, d = 17, 1
print(
    f"\nbeyond the threshold, e.g. (n={n}, d={d}): the construction certifies "
    f"{lower_bound_large_n(n, d)} while the ceiling is {conjectured_sdepth(n, d)} "
    f"(regime {regime_of(n, d).regime.value})"
)
