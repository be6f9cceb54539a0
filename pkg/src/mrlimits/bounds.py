"""Cover bounds g(q), replication-rate lower bounds and population estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Callable, Union

from . import model


@dataclass(frozen=True)
class BoundResult:
    value: float
    exact: bool
    formula_tag: str

    def __float__(self) -> float:
        return float(self.value)


def hd1_cover_bound(q: int) -> BoundResult:
    """Most Hamming-distance-1 pairs a reducer holding ``q`` strings can cover."""
    if q < 1:
        raise ValueError("q must be >= 1")
    return BoundResult(q / 2 * math.log2(q), True, "hd1_cover:(q/2)log2(q)")


def hd1_lower_bound(b: int, q: float) -> BoundResult:
    if q < 2:
        raise ValueError("q must be >= 2 for the HD1 bound (log2(1) = 0)")
    return BoundResult(b / math.log2(q), True, "hd1_rate:b/log2(q)")


def triangle_cover_bound(q: float) -> BoundResult:
    if q < 1:
        raise ValueError("q must be >= 1")
    return BoundResult(math.sqrt(2) / 3 * q ** 1.5, True, "tri_cover:(sqrt2/3)q^1.5")


def triangle_lower_bound(n: int, q: float) -> BoundResult:
    if n < 3 or q < 1:
        raise ValueError("need n >= 3 and q >= 1")
    return BoundResult(n / math.sqrt(2 * q), True, "tri_rate:n/sqrt(2q)")


def universe_counts(problem: "model.Problem") -> tuple[int, int]:
    """Exact (inputs, outputs) counts for a problem's universe."""
    kind = problem.kind
    if kind is model.Kind.HD1:
        b = problem.b
        return 1 << b, b << (b - 1)
    if kind is model.Kind.TRIANGLE:
        n = problem.n
        return comb(n, 2), comb(n, 3)
    if kind is model.Kind.JOIN:
        na, nb, nc = problem.params
        return na * nb + nb * nc, na * nb * nc
    na, nb = problem.params
    return na * nb, na


CoverBound = Callable[[float], Union[BoundResult, float]]


def generic_lower_bound(num_inputs: float, num_outputs: float, g: CoverBound, q: float) -> BoundResult:
    """Replication-rate bound from a cover bound g with g(q)/q nondecreasing.

    Summing g(q_i) <= q_i * g(q)/q over reducers and requiring the total to reach
    ``num_outputs`` gives r >= q * num_outputs / (g(q) * num_inputs).
    """
    gq = float(g(q))
    if gq == 0:
        raise ValueError(f"g({q}) = 0: no reducer of this size covers anything")
    return BoundResult(q * num_outputs / (gq * num_inputs), True, "generic:q|O|/(g(q)|I|)")


def lower_bound(problem: "model.Problem", q: float) -> BoundResult:
    """The replication-rate lower bound for ``problem`` at max load ``q``.

    Join and GroupBy have no nontrivial bound here; every input must reach at
    least one reducer, so 1 is returned.
    """
    kind = problem.kind
    if kind is model.Kind.HD1:
        if q < 2:
            return BoundResult(math.inf, True, "hd1_rate:q<2")
        return hd1_lower_bound(problem.b, q)
    if kind is model.Kind.TRIANGLE:
        return triangle_lower_bound(problem.n, q)
    return BoundResult(1.0, True, "trivial:r>=1")


def stirling_central(n: int) -> BoundResult:
    """Stirling estimate 2^n / sqrt(2 pi n) of the central binomial C(n, n/2)."""
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    return BoundResult(2.0**n / math.sqrt(2 * math.pi * n), False, "stirling:2^n/sqrt(2pi n)")


def weight_cell_estimate(b: int, d: int, k: int) -> BoundResult:
    """Estimated population of the most crowded cell of the weight schema."""
    from .schemas import check_weight_params

    check_weight_params(b, d, k)
    value = k**d * 2.0**b / (b ** (d / 2) * (2 * math.pi / d) ** (d / 2))
    return BoundResult(value, False, "weight_cell:k^d 2^b/(b^(d/2)(2pi/d)^(d/2))")


def multiway_join_bound_estimate(q: float, n: float, m: int, a: int) -> BoundResult:
    """Constant-free q^(1-m/a) n^(m-a); asymptotic shape only."""
    if a < 1 or m < a:
        raise ValueError("need a >= 1 and m >= a")
    return BoundResult(q ** (1 - m / a) * n ** (m - a), False, "asymptotic:q^(1-m/a)n^(m-a)")
