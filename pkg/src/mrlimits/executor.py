"""Single-round map-reduce simulation over a concrete instance."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Optional

import numpy as np

from .model import Kind, MappingSchema, Problem, enumerate_inputs, in_universe, replication_rate
from .problems import local_solve


@dataclass(frozen=True)
class Instance:
    problem: Problem
    present: frozenset
    x: Optional[float] = None
    seed: Optional[int] = None

    def __len__(self) -> int:
        return len(self.present)

    @classmethod
    def explicit(cls, problem: Problem, inputs: Iterable) -> "Instance":
        present = frozenset(inputs)
        bad = [w for w in present if not in_universe(problem, w)]
        if bad:
            raise ValueError(f"inputs outside the universe of {problem}: {bad[:3]}")
        return cls(problem, present)


def generate_instance(problem: Problem, x: float, seed: int) -> Instance:
    """Include each potential input independently with probability ``x``.

    The draw for the input of rank i is the i-th output of a Philox counter-based
    stream keyed by ``seed``, so the instance depends only on (problem, x, seed).
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must be a probability")
    inputs = enumerate_inputs(problem)
    bitgen = np.random.Philox(key=seed & (2**64 - 1))
    draws = np.random.Generator(bitgen).random(len(inputs))
    keep = np.flatnonzero(draws < x)
    return Instance(problem, frozenset(inputs[i] for i in keep), x, seed)


@dataclass(frozen=True)
class RunReport:
    outputs: frozenset
    communication_cost: int
    reducer_loads: dict = field(repr=False)
    expected_cost: Fraction
    duplicates_suppressed: int

    def to_dict(self) -> dict:
        return {
            "num_outputs": len(self.outputs),
            "outputs": sorted(_jsonable(o) for o in self.outputs),
            "communication_cost": self.communication_cost,
            "expected_cost": float(self.expected_cost),
            "num_reducers_used": len(self.reducer_loads),
            "max_reducer_load": max(self.reducer_loads.values(), default=0),
            "duplicates_suppressed": self.duplicates_suppressed,
        }


def _jsonable(o):
    return list(o) if isinstance(o, tuple) else o


def run(problem: Problem, schema: MappingSchema, instance: Instance,
        rate: Optional[Fraction] = None) -> RunReport:
    """Map present inputs to reducer keys, solve locally at each key, merge outputs.

    Pass ``rate`` to reuse a precomputed universe replication rate.
    """
    if schema.problem != problem or instance.problem != problem:
        raise ValueError(f"schema {schema.spec!r} / instance do not match {problem}")
    groups: dict = {}
    cost = 0
    for w in sorted(instance.present):
        keys = schema.assign(w)
        cost += len(keys)
        for key in keys:
            groups.setdefault(key, []).append(w)

    outputs = set()
    emitted = 0
    for key, ins in groups.items():
        local = local_solve(problem, ins)
        if schema.responsible is not None:
            local = [o for o in local if schema.responsible(key, o)]
        emitted += len(local)
        outputs.update(local)

    if rate is None:
        rate = replication_rate(schema)
    return RunReport(
        outputs=frozenset(outputs),
        communication_cost=cost,
        reducer_loads={k: len(v) for k, v in groups.items()},
        expected_cost=rate * len(instance.present),
        duplicates_suppressed=emitted - len(outputs),
    )


def format_input(problem: Problem, w) -> str:
    kind = problem.kind
    if kind is Kind.HD1:
        return format(w, f"0{problem.b}b")
    if kind is Kind.JOIN:
        return " ".join(str(v) for v in w)
    return f"{w[0]} {w[1]}"


def parse_input(problem: Problem, line: str):
    parts = line.split()
    kind = problem.kind
    try:
        if kind is Kind.HD1:
            if len(parts) != 1 or len(parts[0]) != problem.b or set(parts[0]) - {"0", "1"}:
                raise ValueError
            w = int(parts[0], 2)
        elif kind is Kind.JOIN:
            rel, x, y = parts
            w = (rel, int(x), int(y))
        else:
            a, b = (int(v) for v in parts)
            w = (a, b) if kind is Kind.GROUPBY else (min(a, b), max(a, b))
    except ValueError:
        raise ValueError(f"cannot parse {line!r} as a {kind.value} input") from None
    if not in_universe(problem, w):
        raise ValueError(f"{line!r} is outside the universe of {problem}")
    return w


def write_instance(instance: Instance, fp: IO[str]) -> None:
    """Newline-delimited canonical encodings, in canonical order."""
    for w in sorted(instance.present):
        fp.write(format_input(instance.problem, w) + "\n")


def read_instance(problem: Problem, fp: IO[str]) -> Instance:
    return Instance(problem, frozenset(parse_input(problem, line) for line in fp if line.strip()))

