"""
Replication rate vs reducer size for Hamming distance 1
=======================================================

Every schema below finds all pairs of 12-bit strings that differ in one bit.
Small reducers force each string to be copied to many reducers; the lower
bound r >= b / log2(q) says how many copies are unavoidable.
"""

import math

from mrlimits import Problem, verify_schema
from mrlimits.schemas import hd1_pairwise, hd1_single, hd1_splitting, hd1_weight

b = 12
problem = Problem.hd1(b)

schemas = [hd1_pairwise(b)] + [hd1_splitting(b, r) for r in (6, 4, 3, 2)]
schemas += [hd1_weight(b, 2, 2), hd1_single(b)]

print(f"{'schema':<16}{'q':>6}{'log2 q':>8}{'r':>9}{'bound':>9}{'ratio':>8}")
for s in schemas:
    rep = verify_schema(problem, s)
    assert rep.coverage_ok
    print(f"{s.spec:<16}{rep.q_max_observed:>6}{math.log2(rep.q_max_observed):>8.2f}"
          f"{float(rep.r):>9.4f}{rep.lower_bound:>9.4f}{rep.ratio:>8.4f}")

# Pairwise, every Splitting variant and the single reducer sit exactly on the
# hyperbola. The weight schema is off the curve: its q is close to 2^b but it
# still pays for copies of the border-weight strings.

# The same table, plus 32 points of the bound curve, is what the CLI writes:
#
#   mrlimits analyze hd1:b=12 --schemas pairwise,splitting:r=2,single --out tradeoff.csv
