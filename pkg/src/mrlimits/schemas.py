"""Mapping schemas for HD1, triangle finding, join and group-by.

Reducer keys are small frozen dataclasses so that keys from different schema
families never compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .model import Kind, MappingSchema, Problem, SpecError, parse_kv


@dataclass(frozen=True)
class PairKey:
    output: tuple


@dataclass(frozen=True)
class Single:
    pass


@dataclass(frozen=True)
class GroupKey:
    group: int
    residual: int
    width: int

    def __str__(self) -> str:
        bits = format(self.residual, f"0{self.width}b") if self.width else ""
        return f"G{self.group}:{bits}"


@dataclass(frozen=True)
class WeightCell:
    coords: tuple[int, ...]


@dataclass(frozen=True)
class TriangleTriple:
    groups: tuple[int, int, int]


@dataclass(frozen=True)
class HashKey:
    partition: int


def _require(problem: Problem, kind: Kind) -> None:
    if problem.kind is not kind:
        raise ValueError(f"schema applies to {kind.value} problems, not {problem.kind.value}")


def hd1_pairwise(b: int) -> MappingSchema:
    """One reducer per output; every string goes to its ``b`` incident pairs (q = 2)."""
    problem = Problem.hd1(b)

    def assign(w):
        return tuple(PairKey((w & ~(1 << i), i)) for i in range(b))

    return MappingSchema("pairwise", problem, assign, q=2, analytic_rate=Fraction(b))


def hd1_single(b: int) -> MappingSchema:
    problem = Problem.hd1(b)
    key = (Single(),)
    return MappingSchema("single", problem, lambda w: key, q=1 << b, analytic_rate=Fraction(1))


def hd1_splitting(b: int, r: int) -> MappingSchema:
    """Generalized Splitting: cut ``w`` into ``r`` pieces; group i ignores piece i.

    Piece 1 is the most significant ``b/r`` bits. Each string reaches one reducer
    per group, so the rate is exactly ``r`` and each reducer holds ``2**(b/r)`` strings.
    """
    if r < 2:
        raise ValueError("splitting needs r >= 2")
    if b % r:
        raise ValueError(f"r must divide b (b={b}, r={r})")
    problem = Problem.hd1(b)
    piece = b // r
    width = b - piece

    def assign(w):
        keys = []
        for i in range(1, r + 1):
            shift = (r - i) * piece
            low = w & ((1 << shift) - 1)
            high = w >> (shift + piece)
            keys.append(GroupKey(i, (high << shift) | low, width))
        return tuple(keys)

    return MappingSchema(
        f"splitting:r={r}", problem, assign, q=1 << piece, analytic_rate=Fraction(r),
        params={"r": r},
    )


def check_weight_params(b: int, d: int, k: int) -> None:
    if b < 1 or d < 1 or k < 1:
        raise ValueError("b, d, k must be positive")
    if b % d:
        raise ValueError(f"d must divide b (b={b}, d={d})")
    if (b // d) % k:
        raise ValueError(f"k must divide the piece length b/d={b // d} (k={k})")


def weight_group(weight: int, piece_len: int, k: int) -> int:
    """1-based group of a piece weight; the top group also takes weight ``piece_len``."""
    return min(weight // k, piece_len // k - 1) + 1


def hd1_weight(b: int, d: int, k: int) -> MappingSchema:
    """Assign strings to cells of a d-dimensional grid by the weights of their pieces.

    A piece whose weight is the lowest of its group (outside group 1) sends one
    extra copy to the neighbor cell one step down in that coordinate.
    """
    check_weight_params(b, d, k)
    problem = Problem.hd1(b)
    piece = b // d
    mask = (1 << piece) - 1

    def assign(w):
        coords = []
        lowest = []
        for j in range(d):
            weight = ((w >> ((d - 1 - j) * piece)) & mask).bit_count()
            g = weight_group(weight, piece, k)
            coords.append(g)
            lowest.append(g > 1 and weight == (g - 1) * k)
        home = tuple(coords)
        keys = [WeightCell(home)]
        for j in range(d):
            if lowest[j]:
                keys.append(WeightCell(home[:j] + (home[j] - 1,) + home[j + 1:]))
        return tuple(keys)

    return MappingSchema(
        f"weight:d={d},k={k}", problem, assign, analytic_rate=1 + d / k,
        params={"d": d, "k": k},
    )


def triangle_partition(n: int, rho: int) -> MappingSchema:
    """Nodes grouped by ``node % rho``; one reducer per multiset of three groups.

    Edge {u, v} goes to every multiset containing both endpoint groups, which is
    exactly ``rho`` reducers. A triangle is emitted only by the reducer whose
    multiset equals the triangle's own group multiset.
    """
    if rho < 1:
        raise ValueError("rho must be >= 1")
    problem = Problem.triangle(n)

    def assign(edge):
        u, v = edge
        a, b = sorted((u % rho, v % rho))
        return tuple(TriangleTriple(tuple(sorted((a, b, c)))) for c in range(rho))

    def responsible(key, tri):
        return key.groups == tuple(sorted(x % rho for x in tri))

    return MappingSchema(
        f"tri:rho={rho}", problem, assign, analytic_rate=Fraction(rho),
        responsible=responsible, params={"rho": rho},
    )


def _range_of(value: int, p: int, size: int) -> int:
    return value * p // size


def _max_range(p: int, size: int) -> int:
    return -(-size // p)


def join_hash_b(problem: Problem, p: int) -> MappingSchema:
    """Partition B-values into ``p`` contiguous ranges; each tuple goes to its B range."""
    _require(problem, Kind.JOIN)
    na, nb, nc = problem.params
    if not 1 <= p <= nb:
        raise ValueError(f"p must be in [1, {nb}], got {p}")

    def assign(t):
        rel, x, y = t
        return (HashKey(_range_of(y if rel == "R" else x, p, nb)),)

    return MappingSchema(
        f"hashb:p={p}", problem, assign, q=_max_range(p, nb) * (na + nc),
        analytic_rate=Fraction(1), params={"p": p},
    )


def groupby_hash_a(problem: Problem, p: int) -> MappingSchema:
    _require(problem, Kind.GROUPBY)
    na, nb = problem.params
    if not 1 <= p <= na:
        raise ValueError(f"p must be in [1, {na}], got {p}")

    def assign(t):
        return (HashKey(_range_of(t[0], p, na)),)

    return MappingSchema(
        f"hasha:p={p}", problem, assign, q=_max_range(p, na) * nb,
        analytic_rate=Fraction(1), params={"p": p},
    )


_HD1_ONLY = {"pairwise", "single", "splitting", "weight"}


def parse_schema(spec: str, problem: Problem) -> MappingSchema:
    """Build a schema from ``pairwise``, ``single``, ``splitting:r=3``,
    ``weight:d=2,k=2``, ``tri:rho=5``, ``hashb:p=4`` or ``hasha:p=4``."""
    head, params = parse_kv(spec)
    expected: dict[str, tuple[str, ...]] = {
        "pairwise": (), "single": (), "splitting": ("r",), "weight": ("d", "k"),
        "tri": ("rho",), "hashb": ("p",), "hasha": ("p",),
    }
    if head not in expected:
        raise SpecError(f"unknown schema {head!r}")
    if set(params) != set(expected[head]):
        raise SpecError(f"schema {head} needs parameters {expected[head]}, got {sorted(params)}")
    need: dict[str, Kind] = {"tri": Kind.TRIANGLE, "hashb": Kind.JOIN, "hasha": Kind.GROUPBY}
    want = Kind.HD1 if head in _HD1_ONLY else need[head]
    if problem.kind is not want:
        raise SpecError(f"schema {head} does not apply to {problem.kind.value} problems")
    try:
        return _build(head, params, problem)
    except ValueError as exc:
        raise SpecError(str(exc)) from None


def _build(head: str, params: dict[str, Any], problem: Problem) -> MappingSchema:
    if head == "pairwise":
        return hd1_pairwise(problem.b)
    if head == "single":
        return hd1_single(problem.b)
    if head == "splitting":
        return hd1_splitting(problem.b, params["r"])
    if head == "weight":
        return hd1_weight(problem.b, params["d"], params["k"])
    if head == "tri":
        return triangle_partition(problem.n, params["rho"])
    if head == "hashb":
        return join_hash_b(problem, params["p"])
    return groupby_hash_a(problem, params["p"])
