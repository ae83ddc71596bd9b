"""
Unique centers and what breaks them
===================================

Edges that share all but one vertex should agree on their center.  The
check is exhaustive, and a failure comes back as a certificate anyone can
re-verify.
"""

import json

from ramsey_forge.certifier import (
    check_center_uniqueness,
    corner_witness,
    find_edge_h3,
    find_edge_h4,
    independence_number,
    verify_certificate,
)
from ramsey_forge.grid import grid_points, h3_spec, h4_spec, symmetric4_spec

for n in range(1, 7):
    assert check_center_uniqueness(h3_spec(), n) is None
for n in range(1, 5):
    assert check_center_uniqueness(h4_spec(), n) is None
print("h3 up to n=6 and h4 up to n=4: centers are unique")

# Making the three links symmetric under a cyclic shift looks harmless, but
# it is not.
sym = symmetric4_spec()
cert = check_center_uniqueness(sym, 3)
print(json.dumps(cert.to_json(), indent=1))
print("re-verified:", verify_certificate(sym, cert))

# Dense sets contain edges.  In [n]^2 anything with 2n points has an L, and
# the 2n-1 points of the last row and column show that is tight.
n = 5
w = corner_witness(n)
print(len(w), "points with no edge:", sorted(w))
print("add one point:", find_edge_h3(sorted(w) + [(3, 3)], n))

pts = grid_points(4, 3)
print("40 points of [4]^3:", find_edge_h4(pts[:40], 4))

# Exact independence numbers by branch and bound.
for n in (2, 3, 4):
    res = independence_number(h3_spec(), n)
    print(f"alpha(h3, {n}) = {res.value}  ({res.nodes} nodes)")
for n in (2, 3):
    res = independence_number(h4_spec(), n)
    print(f"alpha(h4, {n}) = {res.value}  ({res.nodes} nodes)")
