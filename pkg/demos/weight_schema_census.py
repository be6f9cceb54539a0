"""
The weight-based schema, counted exactly
========================================

Strings are placed in a grid cell by the weights of their halves (or d pieces).
Only strings whose piece weight sits on the lower border of a cell are copied
to a neighbor. Enumerating every string gives the exact rate, which we set
against the 1 + d/k estimate and against the Stirling-based cell size estimate.
"""

from collections import Counter

from mrlimits import Problem, verify_schema, weight_cell_estimate
from mrlimits.schemas import hd1_weight

for b, d, k in [(8, 2, 2), (16, 2, 2), (16, 2, 4), (16, 4, 2)]:
    rep = verify_schema(Problem.hd1(b), hd1_weight(b, d, k))
    print(f"b={b:2d} d={d} k={k}: r = {rep.r} = {float(rep.r):.6f}   1+d/k = {1 + d / k:.3f}   "
          f"q_max = {rep.q_max_observed} (estimate {weight_cell_estimate(b, d, k).value:.0f})")

# The d=4 case lands well below 1 + d/k: with pieces of length 4 only weight 2
# is a border weight, and C(4,2)/16 = 3/8 is far from 1/k = 1/2. The estimate
# assumes pieces much longer than k.

# Cell populations for b = 16, d = 2, k = 2 (home cells plus incoming copies).
s = hd1_weight(16, 2, 2)
loads = Counter(key.coords for w in range(1 << 16) for key in s.keys(w))
for i in range(1, 5):
    print(" ".join(f"{loads[(i, j)]:6d}" for j in range(1, 5)))
