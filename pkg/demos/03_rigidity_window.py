"""Parameter window for the bounded-solution rigidity argument.

For gradient-dominated reactions with m > q the doubling argument needs
a Hoelder exponent gamma in (1 - 1/(m+1-q), 1) and a decay power alpha
for the modulus r^(-alpha).  This sweep shows how the window opens as m
moves past q.
"""

from pqliouville import il_alpha_window, il_parameter_window

Q = 2.0


def main():
    print(f"q = {Q}")
    print(f"{'m':>6s}  {'feasible':>8s}  {'gamma window':>18s}  alpha window at mid-gamma")
    for m in (1.5, 2.0, 2.25, 2.5, 3.0, 4.0, 6.0):
        window = il_parameter_window(Q, m)
        if not window.feasible:
            print(f"{m:6.2f}  {'no':>8s}  {'-':>18s}  (needs m > q)")
            continue
        mid = 0.5 * (window.gamma_lo + window.gamma_hi)
        lo, hi = il_alpha_window(Q, m, mid)
        print(f"{m:6.2f}  {'yes':>8s}  ({window.gamma_lo:.4f}, {window.gamma_hi:.1f})"
              f"      gamma={mid:.3f}: alpha in ({lo:.4f}, {hi:.4f})")


if __name__ == "__main__":
    main()
