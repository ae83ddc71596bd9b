"""
The two grid constructions
==========================

Points of [n]^2 and [n]^3, joined by link digraphs that read coordinates
in a signed lexicographic order.
"""

from ramsey_forge.grid import GridTables, enumerate_edges, format_edge_list, h3_spec, h4_spec, is_edge

# The 3-uniform construction: an edge is an "L", a corner with one point
# further up its column and one further along its row.
h3 = h3_spec()
print(format_edge_list(enumerate_edges(h3, 3)), end="")

# There are (n(n-1)/2)^2 of them.
for n in range(2, 7):
    print(n, len(list(enumerate_edges(h3, n))))

# The 4-uniform construction lives in [n]^3.  Every link is a tournament on
# each plane, so a point has a well-defined "later" set in all three links.
h4 = h4_spec()
for link in h4.links:
    print(f"link {link.fixed_index}: order {link.order.encode()}")

e = is_edge(h4, [(2, 2, 1), (2, 3, 1), (3, 2, 1), (1, 1, 1)])
print("edge", e.sorted_vertices(), "center", e.center)

# Edge counts grow fast; [4]^3 already has over ten thousand.
for n in (2, 3, 4):
    print(n, len(list(enumerate_edges(h4, n))))

# Out-neighbour lists per link, as used by the certifiers.
t = GridTables(h4, 2)
c = t.index[(1, 1, 1)]
print({i + 1: [t.points[q] for q in t.out[i][c]] for i in range(3)})
