"""Classify representative instances against every applicable theorem.

Walks a handful of instances through the threshold computations and the
full hypothesis trace, printing which regime applies, whether a
Liouville-type conclusion holds, and the predicted gradient-decay rate.
"""

from pqliouville import ProblemInstance, classify, product_thresholds

INSTANCES = [
    ProblemInstance(N=2, p=2.2, q=2.0, kind="product", s=0.5, m=2.0),
    ProblemInstance(N=2, p=3.0, q=2.0, kind="hamilton_jacobi", m=2.5),
    ProblemInstance(N=2, p=3.0, q=2.0, kind="product", s=1.0, m=2.5),
    ProblemInstance(N=2, p=2.5, q=2.0, kind="sum", s=1.5, m=3.5, M=1.0),
    ProblemInstance(N=2, p=2.0, q=2.0, kind="sum", s=2.0, m=1.5, M=1.0),
    ProblemInstance(N=2, p=3.0, q=2.0, kind="hamilton_jacobi", m=1.5),
]


def main():
    for inst in INSTANCES:
        decision = classify(inst)
        print(f"{inst.kind:16s} N={inst.N} p={inst.p:g} q={inst.q:g} "
              f"s={inst.s:g} m={inst.m:g}")
        if inst.kind == "product":
            th = product_thresholds(inst)
            if th.discriminant_ok:
                print(f"  window: Q={th.Q:.4f} in [Q1={th.Q1:.4f}, Q2={th.Q2:.4f}]"
                      f"  (R={th.R:.4f})")
            else:
                print(f"  window: discriminant fails (R={th.R:.4f})")
        print(f"  theorem: {decision.theorem}   liouville: {decision.liouville}")
        if decision.estimate_exponent is not None:
            print(f"  gradient bound ~ dist^(-{decision.estimate_exponent:.4f}) "
                  f"on {decision.estimate_target}")
        failing = [c for c in decision.conditions_for(decision.theorem) if not c.passed]
        if decision.theorem == "none":
            worst = [c for c in decision.conditions if not c.passed][:3]
            for c in worst:
                print(f"  blocked by [{c.theorem}] {c.rendering}")
        assert not failing
        print()


if __name__ == "__main__":
    main()
