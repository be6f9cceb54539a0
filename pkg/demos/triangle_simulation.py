"""
Finding triangles with group-triple reducers
============================================

Nodes are split into rho groups; there is one reducer per multiset of three
groups, and each edge is copied to the rho reducers that could need it. We
check the bound n / sqrt(2q) against the measured q, then run the job on a
random graph and compare with a single-machine answer.
"""

from mrlimits import Problem, generate_instance, run, solve_instance, verify_schema
from mrlimits.schemas import triangle_partition

n = 60
problem = Problem.triangle(n)
for rho in (1, 2, 3, 5, 8):
    rep = verify_schema(problem, triangle_partition(n, rho))
    print(f"rho={rho}: reducers={rep.p:4d}  q={rep.q_max_observed:5d}  r={rep.r}  "
          f"bound={rep.lower_bound:.3f}  ratio={rep.ratio:.3f}")

# Each edge is present with probability x. Every edge has exactly rho copies,
# so the shuffle volume is exactly r times the number of edges present.
schema = triangle_partition(n, 3)
graph = generate_instance(problem, 0.2, seed=2024)
report = run(problem, schema, graph)
assert report.outputs == solve_instance(problem, graph)
print(f"edges={len(graph)}  triangles={len(report.outputs)}  "
      f"shuffled={report.communication_cost}  expected={float(report.expected_cost):.0f}  "
      f"duplicates={report.duplicates_suppressed}")
