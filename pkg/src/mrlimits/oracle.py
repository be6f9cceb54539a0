"""Brute-force reference computations."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import hd1_cover_bound
from .model import Kind, Problem, enumerate_inputs, iter_outputs, provenance
from .problems import local_solve

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CoverSearchResult:
    best_count: int
    witness: tuple
    visited: int

    def to_dict(self) -> dict:
        return {"best_count": self.best_count, "witness": [list(w) if isinstance(w, tuple) else w
                                                           for w in self.witness],
                "visited": self.visited}


def max_coverable_outputs(problem: Problem, q: int, budget: int = DEFAULT_BUDGET,
                          prune: bool = True) -> CoverSearchResult:
    """Exact maximum number of outputs whose inputs all lie in some q-subset of inputs.

    Depth-first search over subsets in lexicographic index order. With ``prune`` the
    search is cut where an admissible upper bound cannot beat the best so far: an input
    added to a set of size s completes at most min(deg, s) outputs, and for HD1 the
    total never exceeds (q/2)log2(q). HD1 also fixes string 0 as the first member,
    since XOR by any string maps the cube onto itself. Raises ``BudgetExceeded`` after
    ``budget`` search nodes.
    """
    inputs = enumerate_inputs(problem)
    if not 0 <= q <= len(inputs):
        raise ValueError(f"q must be in [0, {len(inputs)}]")
    index = {w: i for i, w in enumerate(inputs)}
    outputs = list(iter_outputs(problem))
    prov = [tuple(index[w] for w in provenance(problem, o)) for o in outputs]
    member_of: list[list[int]] = [[] for _ in inputs]
    for oi, ins in enumerate(prov):
        for i in ins:
            member_of[i].append(oi)
    need = [len(ins) for ins in prov]
    deg = max((len(m) for m in member_of), default=0)
    # an output needing >= 2 inputs is completed only with a distinct earlier member
    pairwise = min(need, default=2) >= 2

    cap = math.inf
    if prune and problem.kind is Kind.HD1 and q >= 1:
        cap = math.floor(hd1_cover_bound(q).value + 1e-9)

    hits = [0] * len(outputs)
    chosen: list[int] = []
    best = [-1, ()]
    visited = [0]
    n = len(inputs)

    def extra_bound(size: int, slots: int) -> int:
        if not pairwise:
            return deg * slots
        return sum(min(deg, size + j) for j in range(slots))

    def dfs(start: int, covered: int) -> bool:
        visited[0] += 1
        if visited[0] > budget:
            raise BudgetExceeded(f"search exceeded budget of {budget} nodes")
        slots = q - len(chosen)
        if slots == 0:
            if covered > best[0]:
                best[0] = covered
                best[1] = tuple(inputs[i] for i in chosen)
            return best[0] >= cap
        if prune and covered + extra_bound(len(chosen), slots) <= best[0]:
            return False
        for i in range(start, n - slots + 1):
            gained = 0
            for oi in member_of[i]:
                hits[oi] += 1
                if hits[oi] == need[oi]:
                    gained += 1
            chosen.append(i)
            done = dfs(i + 1, covered + gained)
            chosen.pop()
            for oi in member_of[i]:
                hits[oi] -= 1
            if done:
                return True
            if prune and problem.kind is Kind.HD1 and not chosen:
                break
        return False

    dfs(0, 0)
    return CoverSearchResult(best[0], best[1], visited[0])


def solve_instance(problem: Problem, instance) -> frozenset:
    """Reference answer: solve the whole instance at a single reducer."""
    present = getattr(instance, "present", instance)
    return local_solve(problem, present)
