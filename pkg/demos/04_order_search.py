"""
Searching the signed-lex families
=================================

Every link of a 4-uniform construction picks one of 8 signed orders and
every link of a 5-uniform one picks one of 48.  Which choices keep centers
unique?
"""

import collections
import time

from ramsey_forge.search import TupleSpace, check_tuple, sampled_indices, search_center_property

space4 = TupleSpace(4)
results = list(search_center_property(4, range(space4.size), 4))
survivors = [t for t in results if t.result != "fail"]
print(len(results), "tuples,", len(survivors), "survive up to n=4")
print(collections.Counter(t.violating_n for t in results if t.result == "fail"))
for t in survivors[:8]:
    print(" ", t.tuple_index, [o.encode() for o in t.orders])

# Coordinate relabelling permutes the family; the reduced search checks one
# tuple per orbit and relabels the certificate back.
reduced = list(search_center_property(4, range(space4.size), 4, symmetry=True))
print("same answers with symmetry reduction:", [t.result for t in reduced] == [t.result for t in results])

# In five dimensions nothing survives, and violations show up at n=2 already.
start = time.perf_counter()
idx = sampled_indices(5, 2000, seed=1)
fails = collections.Counter(t.violating_n for t in search_center_property(5, idx, 4, threads=2))
print(f"{sum(fails.values())} of 2000 sampled 5-uniform tuples fail {dict(fails)}"
      f" in {time.perf_counter() - start:.1f}s")

# A failing tuple and its certificate.
task = check_tuple(5, TupleSpace(5).orders(idx[0]), 4, idx[0])
print(task.line(), end="")
