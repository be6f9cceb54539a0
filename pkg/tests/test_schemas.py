import itertools
from collections import Counter
from fractions import Fraction

import pytest

from mrlimits import Problem, SpecError, enumerate_inputs, replication_of, verify_schema
from mrlimits.model import iter_outputs, provenance, reducer_inputs
from mrlimits.schemas import (
    GroupKey,
    WeightCell,
    groupby_hash_a,
    hd1_pairwise,
    hd1_single,
    hd1_splitting,
    hd1_weight,
    join_hash_b,
    parse_schema,
    triangle_partition,
)

from reference import bitstrings, triangle_loads, weight_cells, weight_rate_formula


def report(schema):
    return verify_schema(schema.problem, schema)


@pytest.mark.parametrize("b", [1, 2, 3, 6])
def test_pairwise(b):
    rep = report(hd1_pairwise(b))
    assert rep.coverage_ok
    assert rep.q_max_observed == 2
    assert rep.r == b
    assert rep.p == b * 2 ** (b - 1)


def test_single():
    for b in (1, 4):
        rep = report(hd1_single(b))
        assert (rep.p, rep.q_max_observed, rep.r) == (1, 2**b, 1)
    assert report(hd1_single(4)).lower_bound == pytest.approx(1.0, abs=1e-12)


def test_splitting_examples():
    s = hd1_splitting(6, 3)
    rep = report(s)
    assert rep.q_max_observed == s.q == 4 and rep.r == 3
    groups = Counter(k.group for k in reducer_inputs(s, range(64)))
    assert groups == {1: 16, 2: 16, 3: 16}
    rep = report(hd1_splitting(4, 2))
    assert (rep.q_max_observed, rep.r, rep.p, rep.lower_bound) == (4, 2, 8, 2.0)
    rep = report(hd1_splitting(4, 4))
    assert (rep.q_max_observed, rep.r) == (2, 4)


def test_splitting_key_deletes_piece():
    s = hd1_splitting(6, 3)
    keys = s.keys(0b101101)
    assert keys == (GroupKey(1, 0b1101, 4), GroupKey(2, 0b1001, 4), GroupKey(3, 0b1011, 4))
    assert str(keys[0]) == "G1:1101"


def test_splitting_errors():
    with pytest.raises(ValueError, match="divide"):
        hd1_splitting(6, 4)
    with pytest.raises(ValueError):
        hd1_splitting(6, 1)


def test_splitting_exact_single_cover_exhaustive():
    for b in range(2, 13):
        for r in range(2, b + 1):
            if b % r:
                continue
            s = hd1_splitting(b, r)
            keysets = {w: set(s.keys(w)) for w in range(1 << b)}
            loads = Counter(k for ks in keysets.values() for k in ks)
            assert max(loads.values()) == 2 ** (b // r)
            for out in iter_outputs(s.problem):
                u, v = provenance(s.problem, out)
                assert len(keysets[u] & keysets[v]) == 1


def test_weight_example_cell_and_replica():
    s = hd1_weight(8, 2, 2)
    # halves 0011 (weight 2) and 0111 (weight 3)
    assert s.keys(0b00110111) == (WeightCell((2, 2)), WeightCell((1, 2)))


def test_weight_matches_string_reference():
    for b, d, k in [(8, 2, 2), (12, 3, 2), (8, 4, 2), (12, 2, 3)]:
        s = hd1_weight(b, d, k)
        for w, text in enumerate(bitstrings(b)):
            assert {c.coords for c in s.keys(w)} == weight_cells(text, d, k)


@pytest.mark.parametrize("b,d,k,expected", [
    (8, 2, 2, Fraction(7, 4)),
    (16, 2, 2, Fraction(127, 64)),
    (16, 2, 4, Fraction(99, 64)),
])
def test_weight_exact_rates(b, d, k, expected):
    rep = report(hd1_weight(b, d, k))
    assert rep.coverage_ok
    assert rep.r == expected
    assert float(rep.r) == pytest.approx(weight_rate_formula(b, d, k), abs=1e-15)


def test_weight_b8_qmax():
    assert report(hd1_weight(8, 2, 2)).q_max_observed == 121


@pytest.mark.parametrize("b,d,k", [
    (b, d, k)
    for b in range(2, 17, 2) for d in (2, 4) if b % d == 0
    for k in range(1, b // d + 1) if (b // d) % k == 0
])
def test_weight_coverage_exhaustive(b, d, k):
    rep = report(hd1_weight(b, d, k))
    assert rep.coverage_ok
    assert 1 <= rep.r
    assert float(rep.r) == pytest.approx(weight_rate_formula(b, d, k), abs=1e-12)


def test_weight_rate_converges_monotonically():
    # b=24 via the binomial closed form; enumerating 2^24 strings is too slow here
    rates = [weight_rate_formula(b, 2, 2) for b in (8, 16, 24)]
    assert rates[0] < rates[1] < rates[2] <= 2
    assert float(report(hd1_weight(8, 2, 2)).r) == rates[0]
    assert float(report(hd1_weight(16, 2, 2)).r) == rates[1]


def test_weight_param_errors():
    with pytest.raises(ValueError):
        hd1_weight(9, 2, 1)
    with pytest.raises(ValueError):
        hd1_weight(12, 2, 4)


def test_triangle_partition_small():
    rep = report(triangle_partition(6, 3))
    assert rep.coverage_ok
    assert rep.p == 10 and rep.r == 3
    loads = triangle_loads(6, 3)
    assert rep.q_max_observed == max(loads.values()) == 12
    rep = report(triangle_partition(6, 1))
    assert (rep.p, rep.r, rep.q_max_observed) == (1, 1, 15)


@pytest.mark.parametrize("n,rho", [(5, 2), (7, 3), (9, 4), (10, 5), (4, 6)])
def test_triangle_partition_loads_and_rate(n, rho):
    s = triangle_partition(n, rho)
    assert all(replication_of(s, e) == rho for e in enumerate_inputs(s.problem))
    groups = reducer_inputs(s, enumerate_inputs(s.problem))
    assert {k.groups: len(v) for k, v in groups.items()} == +triangle_loads(n, rho)
    assert report(s).coverage_ok


def test_triangle_responsibility_unique():
    n, rho = 8, 3
    s = triangle_partition(n, rho)
    keys = {k for e in enumerate_inputs(s.problem) for k in s.keys(e)}
    for tri in itertools.combinations(range(n), 3):
        assert sum(s.responsible(k, tri) for k in keys) == 1


def test_join_hash():
    problem = Problem.join(2, 3, 4)
    rep = report(join_hash_b(problem, 3))
    assert rep.r == 1 and rep.q_max_observed == 6 and rep.coverage_ok
    rep = report(join_hash_b(problem, 1))
    assert rep.q_max_observed == 18 and rep.p == 1
    with pytest.raises(ValueError):
        join_hash_b(problem, 4)


def test_groupby_hash():
    problem = Problem.groupby(2, 3)
    rep = report(groupby_hash_a(problem, 2))
    assert rep.r == 1 and rep.coverage_ok
    assert rep.q_max_observed <= rep.q_declared
    with pytest.raises(ValueError):
        groupby_hash_a(Problem.join(2, 3, 4), 1)


@pytest.mark.parametrize("schema", [
    hd1_pairwise(5), hd1_single(5), hd1_splitting(6, 2), hd1_splitting(6, 3),
    join_hash_b(Problem.join(3, 5, 2), 2), groupby_hash_a(Problem.groupby(7, 2), 3),
])
def test_declared_q_is_exact(schema):
    assert report(schema).q_max_observed == schema.q


def test_parse_schema():
    hd1 = Problem.hd1(8)
    assert parse_schema("splitting:r=4", hd1).q == 4
    assert parse_schema("weight:d=2,k=2", hd1).spec == "weight:d=2,k=2"
    assert parse_schema("tri:rho=5", Problem.triangle(10)).analytic_rate == 5
    assert parse_schema("hashb:p=2", Problem.join(2, 3, 4)).spec == "hashb:p=2"
    assert parse_schema("hasha:p=2", Problem.groupby(2, 3)).spec == "hasha:p=2"
    for bad in ["nosuch", "splitting", "splitting:r=3", "tri:rho=2", "weight:d=2"]:
        with pytest.raises(SpecError):
            parse_schema(bad, hd1)
