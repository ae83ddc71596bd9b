"""
Tight trees and where they fit
==============================

Tight trees are grown one edge at a time, each new edge taking a fresh
vertex plus all but one vertex of an earlier edge.  A tree is trivial when
one vertex is shared by every edge.
"""

from ramsey_forge.grid import h3_spec, h4_spec, symmetric4_spec
from ramsey_forge.trees import (
    AbstractHypergraph,
    embed,
    enumerate_tight_trees,
    is_nontrivial,
    scan_tree_freeness,
    tight_order,
)

# Isomorphism classes of tight 3-trees with up to five edges.
trees = list(enumerate_tight_trees(3, 5))
for t in range(1, 6):
    level = [h for h in trees if h.t == t]
    print(t, "edges:", len(level), "classes,", sum(map(is_nontrivial, level)), "non-trivial")

# The smallest non-trivial ones have four edges.  This one is a star around
# the first edge.
star = AbstractHypergraph.from_edges(["abc", "abd", "ace", "bcf"])
print("tight order:", tight_order(star))
print("embeds in h3 on [5]^2?", embed(star, h3_spec(), 5))

# Trivial trees do embed, all sharing one center.
two = AbstractHypergraph.from_edges(["abc", "abd", "abe"])
print(embed(two, h3_spec(), 5))

# The full scans.
print(scan_tree_freeness(h3_spec(), 5, 4).to_json())
print(scan_tree_freeness(h4_spec(), 3, 5).to_json())

# The symmetric variant lets a non-trivial 4-tree in.
rep = scan_tree_freeness(symmetric4_spec(), 3, 5)
tree, mapping = rep.offending[0]
print(tree.to_text())
print(mapping)
