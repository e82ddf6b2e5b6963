"""Problem data for gradient-reaction (p,q)-Laplacian equations."""

from __future__ import annotations

from dataclasses import dataclass

KINDS = ("hamilton_jacobi", "product", "sum")


@dataclass(frozen=True)
class ProblemInstance:
    """One equation -Delta_p u - Delta_q u = f(u, grad u) on a domain in R^N.

    The reaction kind selects f:

    ==================  ==========================
    hamilton_jacobi     f = |grad u|^m
    product             f = u^s |grad u|^m
    sum                 f = u^s + M |grad u|^m
    ==================  ==========================

    Requires p >= q > 1 and N >= 2.  q = p is admitted as the
    single-operator reduction mode.  For the Hamilton-Jacobi kind the
    fields s and M are ignored and normalised to 0.
    """

    N: int
    p: float
    q: float
    kind: str
    s: float = 0.0
    m: float = 0.0
    M: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown nonlinearity kind {self.kind!r}")
        if self.N != int(self.N) or int(self.N) < 2:
            raise ValueError("N must be an integer >= 2")
        object.__setattr__(self, "N", int(self.N))
        if not (1.0 < self.q <= self.p):
            raise ValueError("exponents must satisfy p >= q > 1")
        if self.s < 0 or self.m < 0 or self.M < 0:
            raise ValueError("s, m and M must be nonnegative")
        if self.kind == "hamilton_jacobi":
            object.__setattr__(self, "s", 0.0)
            object.__setattr__(self, "M", 0.0)

    @property
    def combined_exponent(self) -> float:
        """Net reaction-vs-operator exponent m + s - q + 1."""
        return self.m + self.s - self.q + 1.0

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "p": self.p,
            "q": self.q,
            "kind": self.kind,
            "s": self.s,
            "m": self.m,
            "M": self.M,
        }
