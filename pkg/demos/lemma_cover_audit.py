"""
How many pairs can one reducer cover?
=====================================

Exhaustive search for the q strings that contain the most Hamming-distance-1
pairs, compared with the (q/2) log2 q ceiling. At powers of two the optimum is
a subcube and the ceiling is reached exactly.
"""

from mrlimits import Problem, hd1_cover_bound, max_coverable_outputs
from mrlimits.executor import format_input

problem = Problem.hd1(4)
for q in range(1, 9):
    res = max_coverable_outputs(problem, q)
    bound = hd1_cover_bound(q).value
    mark = "tight" if res.best_count == bound else ""
    print(f"q={q}  best={res.best_count:2d}  bound={bound:6.3f}  {mark}")

# A witness for q = 8 is a 3-dimensional subcube: one bit is fixed.
best = max_coverable_outputs(problem, 8)
print(" ".join(format_input(problem, w) for w in best.witness))

# Pruning never changes the answer, only how much of the search tree is visited.
plain = max_coverable_outputs(problem, 6, prune=False)
fast = max_coverable_outputs(problem, 6)
print(f"q=6: {plain.best_count} after {plain.visited} nodes unpruned, {fast.visited} pruned")
