"""
Upper bounds by random deletion
===============================

Keep each point with probability p, then break every surviving edge by
dropping one of its points.  What is left is independent, and its expected
size is at least pN - m p^r.
"""

from ramsey_forge.bounds import deletion_experiment, ramsey_upper_estimate, turan_bound
from ramsey_forge.grid import enumerate_edges, h3_spec, h4_spec

# Tight-tree-free hypergraphs are sparse.
print(turan_bound(4, 3, 36), "edges allowed on 36 vertices without a 4-edge tight tree")
print(len(list(enumerate_edges(h3_spec(), 6))), "edges in h3 on [6]^2")

# Plugging that into the deletion method gives a vertex count that forces
# an independent set of the requested size.
for k, r, n in ((4, 3, 10), (2, 3, 1), (5, 4, 6)):
    est = ramsey_upper_estimate(k, r, n)
    print(f"k={k} r={r} n={n}: N={est.N}, p={est.p:.5f}, E|U'| >= {est.expected_size_bound:.2f}")

# On an actual construction we know the exact edge count, so the expectation
# can be checked head on.
for spec, n, p in ((h3_spec(), 6, 0.3), (h3_spec(), 8, 0.2), (h4_spec(), 3, 0.25)):
    s = deletion_experiment(spec, n, p, trials=2000, seed=0)
    print(f"{spec.name} n={n} p={p}: mean {s.mean:.3f} vs bound {s.expectation_bound:.3f}"
          f" (sd {s.stddev:.2f}, {s.edges} edges)")
