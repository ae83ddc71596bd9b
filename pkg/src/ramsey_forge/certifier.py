"""Finite certificates for the structural properties of the grid constructions."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .grid import (
    ConstructionSpec,
    GridPoint,
    GridTables,
    HyperEdge,
    edge_centers,
    edges_within,
    format_point,
    h4_spec,
)

SCHEMA_VERSION = 1

DISTINCT_CENTERS = "distinct-centers"
MULTI_CENTER = "multi-center"


class PreconditionError(ValueError):
    """The input is outside the range where the guarantee applies."""


@dataclass(frozen=True)
class ViolationCertificate:
    edge_a: HyperEdge
    edge_b: HyperEdge
    shared: frozenset
    note: str

    def to_json(self) -> dict:
        return {
            "note": self.note,
            "shared": [format_point(p) for p in sorted(self.shared)],
            "edges": [_edge_json(self.edge_a), _edge_json(self.edge_b)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ViolationCertificate":
        a, b = (_edge_from_json(e) for e in data["edges"])
        shared = frozenset(_parse_point(p) for p in data["shared"])
        return cls(a, b, shared, data["note"])


def _edge_json(e: HyperEdge) -> dict:
    return {
        "vertices": [format_point(p) for p in e.sorted_vertices()],
        "centers": [format_point(p) for p in sorted(e.centers)],
    }


def _parse_point(text: str) -> GridPoint:
    return tuple(int(x) for x in text.strip("()").split(","))


def _edge_from_json(data: dict) -> HyperEdge:
    return HyperEdge(
        frozenset(_parse_point(p) for p in data["vertices"]),
        frozenset(_parse_point(p) for p in data["centers"]),
    )


def verify_certificate(spec: ConstructionSpec, cert: ViolationCertificate) -> bool:
    """Recompute everything in ``cert`` from the raw link definitions."""
    r = spec.r
    for e in (cert.edge_a, cert.edge_b):
        if len(e.vertices) != r:
            return False
        centers = edge_centers(spec, e.vertices)
        if not centers or centers != e.centers:
            return False
    if cert.note == MULTI_CENTER:
        return any(len(e.centers) >= 2 for e in (cert.edge_a, cert.edge_b))
    if cert.note != DISTINCT_CENTERS:
        return False
    inter = cert.edge_a.vertices & cert.edge_b.vertices
    if len(inter) != r - 1 or inter != cert.shared:
        return False
    return cert.edge_a.centers != cert.edge_b.centers or len(cert.edge_a.centers) > 1


@dataclass(frozen=True)
class IndependentSetWitness:
    vertices: frozenset
    n: int
    spec_id: str

    def to_json(self) -> dict:
        return {"set": [format_point(p) for p in sorted(self.vertices)], "n": self.n, "spec": self.spec_id}


def first_violation(tables: GridTables):
    """Scan for a center-uniqueness violation on a prepared grid.

    Returns ``(face, (center_a, mask_a), (center_b, mask_b))`` with vertex
    sets as bitmasks over point indices, or ``None``.

    Scan order: centers ascending; for each center, out-neighbour choices
    are taken from the far end of each link order (link 1 varies slowest);
    for each edge the center-free face is checked first.
    """
    d = tables.spec.d
    r = d + 1
    far = tables.out_far
    store: dict[int, tuple[int, int]] = {}
    for c in range(len(tables.points)):
        cbit = 1 << c
        lists = [far[i][c] for i in range(d)]
        if not all(lists):
            continue
        for combo in itertools.product(*lists):
            mask = cbit
            for v in combo:
                mask |= 1 << v
            if mask.bit_count() != r:
                continue
            for v in (c,) + combo:
                face = mask ^ (1 << v)
                prev = store.get(face)
                if prev is None:
                    store[face] = (c, mask)
                elif prev[0] != c:
                    return face, prev, (c, mask)
    return None


def _mask_points(tables: GridTables, mask: int) -> list[int]:
    return [k for k in range(len(tables.points)) if mask >> k & 1]


def build_certificate(tables: GridTables, found) -> ViolationCertificate:
    face, (_, mask_a), (_, mask_b) = found
    edge_a = tables.edge(_mask_points(tables, mask_a))
    edge_b = tables.edge(_mask_points(tables, mask_b))
    shared = frozenset(tables.points[k] for k in _mask_points(tables, face))
    note = MULTI_CENTER if mask_a == mask_b else DISTINCT_CENTERS
    return ViolationCertificate(edge_a, edge_b, shared, note)


def check_center_uniqueness(spec: ConstructionSpec, n: int, tables: GridTables | None = None) -> ViolationCertificate | None:
    """First violation of "codegree-adjacent edges share one center", or ``None``.

    An edge with two valid centers counts as a violation too (note
    ``multi-center``); both edges of such a certificate are that edge.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    tables = tables or GridTables(spec, n)
    found = first_violation(tables)
    return None if found is None else build_certificate(tables, found)


def all_center_conflicts(spec: ConstructionSpec, n: int) -> list[ViolationCertificate]:
    """Every codegree-adjacent pair with differing centers (slow; for tests and reports)."""
    tables = GridTables(spec, n)
    faces: dict[frozenset, list[HyperEdge]] = {}
    edges = {}
    for c in range(len(tables.points)):
        for vs in tables.edges_from(c):
            edges.setdefault(vs, None)
    out = []
    for vs in sorted(edges, key=sorted):
        e = tables.edge(vs)
        if len(e.centers) > 1:
            out.append(ViolationCertificate(e, e, frozenset(), MULTI_CENTER))
        for p in e.vertices:
            faces.setdefault(e.vertices - {p}, []).append(e)
    for shared in sorted(faces, key=sorted):
        for a, b in itertools.combinations(faces[shared], 2):
            if a.centers != b.centers:
                out.append(ViolationCertificate(a, b, shared, DISTINCT_CENTERS))
    return out


# ---------------------------------------------------------------------------
# guaranteed edges in large sets

def _rows_cols_cycle(x: Sequence[GridPoint]) -> list[GridPoint]:
    """A cycle in the row/column incidence graph of ``x``, as a closed list of points.

    Consecutive points in the returned list share a row or a column
    alternately; the list is cyclic (last connects back to first).
    """
    # bipartite graph: ('c', first coord) -- ('r', second coord) per point
    adj: dict[tuple, list[tuple]] = {}
    for p in sorted(x):
        a, b = ("c", p[0]), ("r", p[1])
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    # strip degree-1 vertices so every survivor lies on or between cycles
    degree = {v: len(ns) for v, ns in adj.items()}
    alive = set(adj)
    stack = [v for v in adj if degree[v] < 2]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                degree[w] -= 1
                if degree[w] < 2:
                    stack.append(w)
    if not alive:
        return []
    start = min(alive, key=lambda v: (degree[v], v))
    # walk without immediate backtracking until a vertex repeats
    path = [start]
    pos = {start: 0}
    prev = None
    cur = start
    while True:
        nxt = min(w for w in adj[cur] if w in alive and w != prev)
        if nxt in pos:
            cycle = path[pos[nxt]:]
            break
        pos[nxt] = len(path)
        path.append(nxt)
        prev, cur = cur, nxt
    pts = []
    for u, v in zip(cycle, cycle[1:] + cycle[:1]):
        col, row = (u, v) if u[0] == "c" else (v, u)
        pts.append((col[1], row[1]))
    return pts


def find_edge_h3(x: Iterable[Sequence[int]], n: int | None = None) -> HyperEdge:
    """An L-shaped edge inside ``x``, found through a row/column cycle.

    Every cycle of the incidence graph turns a corner somewhere whose two
    arms both point in the increasing direction; that corner is the center.
    """
    x = sorted({tuple(p) for p in x})
    if n is None:
        n = max((max(p) for p in x), default=0)
    if len(x) < 2 * n:
        raise PreconditionError(f"need at least 2n = {2 * n} points, got {len(x)}")
    cycle = _rows_cols_cycle(x)
    m = len(cycle)
    for k in range(m):
        a, p, b = cycle[k - 1], cycle[k], cycle[(k + 1) % m]
        for up, right in ((a, b), (b, a)):
            if up[0] == p[0] and up[1] > p[1] and right[1] == p[1] and right[0] > p[0]:
                return HyperEdge(frozenset((p, up, right)), frozenset([p]))
    raise AssertionError("cycle without an increasing corner; this is a bug")


def _strip_sparse_planes(x: set, n: int, d: int, threshold: int) -> set:
    x = set(x)
    changed = True
    while changed:
        changed = False
        for i in range(d):
            for j in range(1, n + 1):
                plane = [p for p in x if p[i] == j]
                if 0 < len(plane) <= threshold:
                    x.difference_update(plane)
                    changed = True
    return x


def find_edge_h4(x: Iterable[Sequence[int]], n: int | None = None) -> HyperEdge:
    """An edge of the 4-uniform construction inside a set of at least ``10n`` points.

    Planes meeting the set in at most three points are peeled off; in what
    remains every nonempty plane class is a tournament with at least four
    points, so at most a quarter of the survivors are sinks of any one link.
    """
    x = {tuple(p) for p in x}
    if n is None:
        n = max((max(p) for p in x), default=0)
    if len(x) < 10 * n:
        raise PreconditionError(f"need at least 10n = {10 * n} points, got {len(x)}")
    spec = h4_spec()
    residue = _strip_sparse_planes(x, n, 3, 3)
    if not residue:
        raise AssertionError("empty residue after peeling sparse planes")
    keys = [link.order.key for link in spec.links]
    # best out-neighbour (the class maximum under each link order) per point
    best: list[dict] = []
    for i in range(3):
        classes: dict[int, list[GridPoint]] = {}
        for p in residue:
            classes.setdefault(p[i], []).append(p)
        top = {}
        sinks = 0
        for members in classes.values():
            members.sort(key=keys[i])
            if len(members) < 4:
                raise AssertionError("plane class below four points survived peeling")
            ranks = [keys[i](p) for p in members]
            if any(a >= b for a, b in zip(ranks, ranks[1:])):
                raise AssertionError(f"link {i + 1} is not a tournament on a plane class")
            # in a transitive tournament only the maximum has out-degree zero
            sinks += 1
            for p in members[:-1]:
                top[p] = members[-1]
        if sinks * 4 > len(residue):
            raise AssertionError("more than a quarter of the residue are sinks")
        best.append(top)
    for p0 in sorted(residue):
        if all(p0 in top for top in best):
            q = [top[p0] for top in best]
            if len(set(q)) != 3:
                raise AssertionError(f"out-neighbours of {p0} coincide: {q}")
            return HyperEdge(frozenset([p0, *q]), edge_centers(spec, [p0, *q]))
    raise AssertionError("no point with positive out-degree in all links")


# ---------------------------------------------------------------------------
# independence

def is_independent(spec: ConstructionSpec, n: int, s: Iterable[Sequence[int]]) -> bool:
    s = [tuple(p) for p in s]
    if any(len(p) != spec.d or not all(1 <= x <= n for x in p) for p in s):
        raise ValueError(f"set is not inside [{n}]^{spec.d}")
    return next(edges_within(spec, s), None) is None


def corner_witness(n: int) -> frozenset:
    """Last column plus last row of ``[n]^2``: 2n - 1 points, no L inside."""
    return frozenset({(i, n) for i in range(1, n + 1)} | {(n, j) for j in range(1, n + 1)})


@dataclass
class IndependenceResult:
    value: int
    witness: IndependentSetWitness
    exact: bool
    nodes: int
    upper_bound: int | None = None
    extra: dict = field(default_factory=dict)


def _edge_masks(spec: ConstructionSpec, n: int) -> tuple[GridTables, list[int]]:
    tables = GridTables(spec, n)
    masks = set()
    for c in range(len(tables.points)):
        for vs in tables.edges_from(c):
            masks.add(sum(1 << v for v in vs))
    return tables, sorted(masks)


def independence_number(spec: ConstructionSpec, n: int, budget: int = 5_000_000) -> IndependenceResult:
    """Exact independence number by branch and bound.

    Vertices are branched in descending residual degree (include first).
    The bound is the current size plus the undecided count minus a greedy
    packing of pairwise disjoint edges lying entirely in the undecided
    vertices, each of which must lose at least one vertex.  Exhausting the
    node budget returns the best set found with ``exact=False``.
    """
    if budget <= 0:
        raise ValueError("node budget must be positive")
    tables, edges = _edge_masks(spec, n)
    nv = len(tables.points)
    incident: list[list[int]] = [[] for _ in range(nv)]
    for m in edges:
        for v in range(nv):
            if m >> v & 1:
                incident[v].append(m)

    best_mask = 0
    best_size = 0
    nodes = 0
    exhausted = False

    def greedy(chosen: int, free: int) -> int:
        # complete with any free vertex that does not close an edge
        for v in range(nv):
            if free >> v & 1:
                trial = chosen | 1 << v
                if not any(m & trial == m for m in incident[v]):
                    chosen = trial
        return chosen

    def packing(free: int, live: list[int]) -> int:
        # live edges with pairwise disjoint undecided parts each cost one vertex
        used = 0
        count = 0
        for f in sorted(m & free for m in live):
            if not f & used:
                used |= f
                count += 1
        return count

    def recurse(chosen: int, free: int, live: list[int]):
        # live: edges not yet broken (no excluded vertex), not yet fully chosen
        nonlocal best_mask, best_size, nodes, exhausted
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        size = chosen.bit_count()
        nfree = free.bit_count()
        if size + nfree <= best_size:
            return
        if size + nfree - packing(free, live) <= best_size:
            return
        if nfree == 0:
            best_mask, best_size = chosen, size
            return
        # vertex of largest residual degree
        deg = [0] * nv
        for m in live:
            rest = m & free
            while rest:
                low = rest & -rest
                deg[low.bit_length() - 1] += 1
                rest ^= low
        v = max((k for k in range(nv) if free >> k & 1), key=lambda k: (deg[k], -k))
        bit = 1 << v
        if deg[v] == 0:
            # no live edge touches any free vertex: take everything
            full = chosen | free
            best_mask, best_size = full, full.bit_count()
            return
        # include v, then propagate: an edge with one free vertex left forces it out
        inc = chosen | bit
        inc_free = free & ~bit
        forced = 0
        for m in live:
            if m & bit:
                rest = m & ~inc
                if rest == 0:
                    forced = -1
                    break
                if rest.bit_count() == 1:
                    forced |= rest
        if forced >= 0:
            inc_free &= ~forced
            live_inc = [m for m in live if not m & forced]
            recurse(inc, inc_free, live_inc)
            if exhausted:
                return
        # exclude v
        recurse(chosen, free & ~bit, [m for m in live if not m & bit])

    full = (1 << nv) - 1
    start = greedy(0, full)
    best_mask, best_size = start, start.bit_count()
    recurse(0, full, edges)
    witness = frozenset(tables.points[k] for k in range(nv) if best_mask >> k & 1)
    if not all(m & best_mask != m for m in edges):
        raise AssertionError("branch and bound produced a dependent set")
    return IndependenceResult(
        value=best_size,
        witness=IndependentSetWitness(witness, n, spec.spec_id()),
        exact=not exhausted,
        nodes=nodes,
    )


def certificate_document(prop: str, spec: ConstructionSpec, n: int, status: str, witness: dict, scan_seed=None, **extra) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "property": prop,
        "spec": spec.spec_id(),
        "n": n,
        "status": status,
        "witness": witness,
        "scan_seed": scan_seed,
    }
    doc.update(extra)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def random_subset(points: Sequence, size: int, rng: random.Random) -> list:
    return rng.sample(list(points), size)


