"""Problems as input/output universes with provenance, and mapping schemas over them.

Input encodings (canonical, hashable):

* HD1: ``int`` in ``[0, 2**b)``; bit 0 is the least significant bit.
* Triangle: ``(u, v)`` with ``u < v``.
* Join: ``("R", a, b)`` or ``("S", b, c)``.
* GroupBy: ``(a, b)``.

Output encodings:

* HD1: ``(w, i)`` where ``w`` has bit ``i`` clear; the pair is ``{w, w | 1 << i}``.
* Triangle: ``(u, v, w)`` sorted.
* Join: ``(a, b, c)``.
* GroupBy: the group key ``a``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterator, Optional, Sequence

from . import bounds

MAX_UNIVERSE = 1 << 24


class SpecError(ValueError):
    """A problem or schema specifier string could not be parsed."""


class UniverseTooLarge(ValueError):
    """The input or output universe exceeds the enumeration cap."""


class Kind(str, Enum):
    HD1 = "hd1"
    TRIANGLE = "tri"
    JOIN = "join"
    GROUPBY = "groupby"


_PARAM_NAMES = {
    Kind.HD1: ("b",),
    Kind.TRIANGLE: ("n",),
    Kind.JOIN: ("na", "nb", "nc"),
    Kind.GROUPBY: ("na", "nb"),
}


@dataclass(frozen=True)
class Problem:
    kind: Kind
    params: tuple[int, ...]

    def __post_init__(self):
        names = _PARAM_NAMES[self.kind]
        if len(self.params) != len(names):
            raise ValueError(f"{self.kind.value} takes parameters {names}")
        if self.kind is Kind.TRIANGLE and self.params[0] < 3:
            raise ValueError("triangle problem needs n >= 3")
        if any(v < 1 for v in self.params):
            raise ValueError(f"parameters must be >= 1, got {self.params}")

    @classmethod
    def hd1(cls, b: int) -> "Problem":
        return cls(Kind.HD1, (b,))

    @classmethod
    def triangle(cls, n: int) -> "Problem":
        return cls(Kind.TRIANGLE, (n,))

    @classmethod
    def join(cls, na: int, nb: int, nc: int) -> "Problem":
        return cls(Kind.JOIN, (na, nb, nc))

    @classmethod
    def groupby(cls, na: int, nb: int) -> "Problem":
        return cls(Kind.GROUPBY, (na, nb))

    def __getattr__(self, name: str) -> int:
        # params are exposed by name: problem.b, problem.n, problem.na, ...
        try:
            idx = _PARAM_NAMES[object.__getattribute__(self, "kind")].index(name)
        except (ValueError, AttributeError):
            raise AttributeError(name) from None
        return self.params[idx]

    def __str__(self) -> str:
        names = _PARAM_NAMES[self.kind]
        return f"{self.kind.value}:" + ",".join(f"{k}={v}" for k, v in zip(names, self.params))


def parse_kv(spec: str) -> tuple[str, dict[str, int]]:
    """Split ``kind:key=value,...`` into the kind and an integer parameter dict."""
    head, _, rest = spec.strip().partition(":")
    params: dict[str, int] = {}
    if rest:
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise SpecError(f"expected key=value in {spec!r}, got {item!r}")
            try:
                params[key.strip()] = int(value)
            except ValueError:
                raise SpecError(f"non-integer value in {spec!r}: {item!r}") from None
    return head.strip(), params


def parse_problem(spec: str) -> Problem:
    head, params = parse_kv(spec)
    try:
        kind = Kind(head)
    except ValueError:
        raise SpecError(f"unknown problem kind {head!r}") from None
    names = _PARAM_NAMES[kind]
    if set(params) != set(names):
        raise SpecError(f"{kind.value} needs parameters {', '.join(names)}")
    try:
        return Problem(kind, tuple(params[n] for n in names))
    except ValueError as exc:
        raise SpecError(str(exc)) from None


def _check_cap(problem: Problem, limit: int) -> None:
    n_in, n_out = bounds.universe_counts(problem)
    if max(n_in, n_out) > limit:
        raise UniverseTooLarge(
            f"universe too large for enumeration: {problem} has {n_in} inputs, "
            f"{n_out} outputs (cap {limit})"
        )


def enumerate_inputs(problem: Problem, limit: int = MAX_UNIVERSE) -> list:
    """Every potential input exactly once, in canonical ascending order."""
    _check_cap(problem, limit)
    kind = problem.kind
    if kind is Kind.HD1:
        return list(range(1 << problem.b))
    if kind is Kind.TRIANGLE:
        return list(itertools.combinations(range(problem.n), 2))
    if kind is Kind.JOIN:
        na, nb, nc = problem.params
        return [("R", a, b) for a in range(na) for b in range(nb)] + [
            ("S", b, c) for b in range(nb) for c in range(nc)
        ]
    na, nb = problem.params
    return [(a, b) for a in range(na) for b in range(nb)]


def provenance(problem: Problem, output) -> tuple:
    """The inputs an output depends on, as a sorted tuple."""
    kind = problem.kind
    if kind is Kind.HD1:
        w, i = output
        return (w, w | (1 << i))
    if kind is Kind.TRIANGLE:
        u, v, w = output
        return ((u, v), (u, w), (v, w))
    if kind is Kind.JOIN:
        a, b, c = output
        return (("R", a, b), ("S", b, c))
    return tuple((output, b) for b in range(problem.nb))


def iter_outputs(problem: Problem) -> Iterator:
    kind = problem.kind
    if kind is Kind.HD1:
        b = problem.b
        for w in range(1 << b):
            for i in range(b):
                if not (w >> i) & 1:
                    yield (w, i)
    elif kind is Kind.TRIANGLE:
        yield from itertools.combinations(range(problem.n), 3)
    elif kind is Kind.JOIN:
        yield from itertools.product(*(range(n) for n in problem.params))
    else:
        yield from range(problem.na)


def enumerate_outputs(problem: Problem, limit: int = MAX_UNIVERSE) -> list[tuple[Any, tuple]]:
    """Every potential output paired with its provenance inputs."""
    _check_cap(problem, limit)
    return [(out, provenance(problem, out)) for out in iter_outputs(problem)]


def in_universe(problem: Problem, inp) -> bool:
    kind = problem.kind
    try:
        if kind is Kind.HD1:
            return isinstance(inp, int) and 0 <= inp < (1 << problem.b)
        if kind is Kind.TRIANGLE:
            u, v = inp
            return 0 <= u < v < problem.n
        if kind is Kind.JOIN:
            rel, x, y = inp
            na, nb, nc = problem.params
            if rel == "R":
                return 0 <= x < na and 0 <= y < nb
            return rel == "S" and 0 <= x < nb and 0 <= y < nc
        a, b = inp
        return 0 <= a < problem.na and 0 <= b < problem.nb
    except (TypeError, ValueError):
        return False


@dataclass(frozen=True, eq=False)
class MappingSchema:
    """A data-independent assignment of every input to a nonempty set of reducer keys.

    ``assign`` must be a pure function of the input alone. ``q`` is the closed-form
    maximum load when one is known; otherwise it is measured by enumeration.
    ``analytic_rate`` is the replication rate the construction promises, which may be
    an estimate (``Fraction`` when exact, ``float`` when approximate). ``responsible``,
    when set, picks the one reducer allowed to emit each output.
    """

    spec: str
    problem: Problem
    assign: Callable[[Any], tuple]
    q: Optional[int] = None
    analytic_rate: Optional[Fraction | float] = None
    responsible: Optional[Callable[[Hashable, Any], bool]] = None
    params: dict = field(default_factory=dict)

    def keys(self, inp) -> tuple:
        return self.assign(inp)

    def __repr__(self) -> str:
        return f"MappingSchema({self.spec!r}, {self.problem})"


def replication_of(schema: MappingSchema, inp) -> int:
    return len(schema.assign(inp))


def replication_rate(schema: MappingSchema, limit: int = MAX_UNIVERSE) -> Fraction:
    """Exact average number of reducers per potential input."""
    inputs = enumerate_inputs(schema.problem, limit)
    return Fraction(sum(len(schema.assign(w)) for w in inputs), len(inputs))


def reducer_inputs(schema: MappingSchema, inputs: Sequence) -> dict[Hashable, list]:
    """Group ``inputs`` by the reducer keys they are assigned to."""
    groups: dict[Hashable, list] = {}
    for w in inputs:
        for key in schema.assign(w):
            groups.setdefault(key, []).append(w)
    return groups


@dataclass(frozen=True)
class SchemaReport:
    schema: str
    problem: str
    p: int
    q_max_observed: int
    q_declared: int
    r: Fraction
    coverage_ok: bool
    uncovered: int
    lower_bound: float
    ratio: float

    @property
    def q_ok(self) -> bool:
        return self.q_max_observed <= self.q_declared

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "problem": self.problem,
            "p": self.p,
            "q_max_observed": self.q_max_observed,
            "q_declared": self.q_declared,
            "q_ok": self.q_ok,
            "r": f"{self.r.numerator}/{self.r.denominator}",
            "r_float": float(self.r),
            "coverage_ok": self.coverage_ok,
            "uncovered": self.uncovered,
            "lower_bound": self.lower_bound,
            "ratio": self.ratio,
        }


def verify_schema(problem: Problem, schema: MappingSchema, limit: int = MAX_UNIVERSE) -> SchemaReport:
    """Enumerate the universe and measure a schema's loads, coverage and replication rate.

    Coverage failures and q violations are reported, not raised.
    """
    if schema.problem != problem:
        raise ValueError(f"schema {schema.spec!r} was built for {schema.problem}, not {problem}")
    inputs = enumerate_inputs(problem, limit)
    loads: Counter = Counter()
    keysets = {}
    total = 0
    for w in inputs:
        ks = frozenset(schema.assign(w))
        keysets[w] = ks
        total += len(ks)
        loads.update(ks)

    uncovered = 0
    for out in iter_outputs(problem):
        prov = provenance(problem, out)
        if len(prov) == 2:
            if keysets[prov[0]].isdisjoint(keysets[prov[1]]):
                uncovered += 1
            continue
        common = keysets[prov[0]]
        for w in prov[1:]:
            common = common & keysets[w]
            if not common:
                break
        if not common:
            uncovered += 1

    q_obs = max(loads.values())
    q_decl = schema.q if schema.q is not None else q_obs
    r = Fraction(total, len(inputs))
    lb = bounds.lower_bound(problem, q_obs).value
    ratio = float(r) / lb if lb > 0 else float("inf")
    return SchemaReport(
        schema=schema.spec,
        problem=str(problem),
        p=len(loads),
        q_max_observed=q_obs,
        q_declared=q_decl,
        r=r,
        coverage_ok=uncovered == 0,
        uncovered=uncovered,
        lower_bound=lb,
        ratio=ratio,
    )
