"""Per-reducer solvers: what outputs a set of present inputs can produce."""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from .model import Kind, Problem, in_universe


def hd1_neighbors(w: int, b: int) -> list[int]:
    """The ``b`` strings at Hamming distance 1 from ``w``, flipping bit 0 first."""
    if not 0 <= w < (1 << b):
        raise ValueError(f"{w} is not a {b}-bit string")
    return [w ^ (1 << i) for i in range(b)]


def local_solve(problem: Problem, inputs: Iterable) -> frozenset:
    """All outputs producible from ``inputs`` at one reducer.

    HD1, Triangle and Join need every provenance input present. GroupBy emits
    ``(a, sum_of_present_b)`` for each group key with at least one tuple present.
    """
    present = set(inputs)
    for w in present:
        if not in_universe(problem, w):
            raise ValueError(f"input {w!r} is not in the universe of {problem}")

    kind = problem.kind
    if kind is Kind.HD1:
        b = problem.b
        out = set()
        for w in present:
            for i in range(b):
                bit = 1 << i
                if not (w & bit) and (w | bit) in present:
                    out.add((w, i))
        return frozenset(out)

    if kind is Kind.TRIANGLE:
        adj = defaultdict(set)
        for u, v in present:
            adj[u].add(v)
            adj[v].add(u)
        out = set()
        for u, v in present:
            small, large = (adj[u], adj[v]) if len(adj[u]) <= len(adj[v]) else (adj[v], adj[u])
            for w in small:
                if w > v and w in large:
                    out.add((u, v, w))
        return frozenset(out)

    if kind is Kind.JOIN:
        s_by_b = defaultdict(list)
        for rel, x, y in present:
            if rel == "S":
                s_by_b[x].append(y)
        return frozenset(
            (x, y, c) for rel, x, y in present if rel == "R" for c in s_by_b.get(y, ())
        )

    sums: dict[int, int] = defaultdict(int)
    for a, b in present:
        sums[a] += b
    return frozenset(sums.items())
