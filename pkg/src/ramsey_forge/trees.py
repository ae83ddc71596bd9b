"""Tight trees: recognition, enumeration up to isomorphism, and embedding into a grid construction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .grid import ConstructionSpec, GridPoint, GridTables


@dataclass(frozen=True)
class AbstractHypergraph:
    """An r-uniform hypergraph on vertices ``0..m-1``; edges are sorted tuples."""

    m: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        edges = tuple(sorted({tuple(sorted(e)) for e in self.edges}))
        object.__setattr__(self, "edges", edges)
        if not edges:
            return
        r = len(edges[0])
        for e in edges:
            if len(e) != r or len(set(e)) != r:
                raise ValueError(f"edge {e} is not a set of {r} vertices")
            if not all(0 <= v < self.m for v in e):
                raise ValueError(f"edge {e} leaves the vertex range 0..{self.m - 1}")

    @classmethod
    def from_edges(cls, edges) -> "AbstractHypergraph":
        """Relabel arbitrary hashable vertices to ``0..m-1`` in sorted order."""
        edges = [tuple(e) for e in edges]
        verts = sorted({v for e in edges for v in e})
        index = {v: k for k, v in enumerate(verts)}
        return cls(len(verts), tuple(tuple(index[v] for v in e) for e in edges))

    @property
    def r(self) -> int:
        return len(self.edges[0]) if self.edges else 0

    @property
    def t(self) -> int:
        return len(self.edges)

    def to_text(self) -> str:
        return "".join(" ".join(str(v) for v in e) + "\n" for e in self.edges)

    @classmethod
    def from_text(cls, text: str) -> "AbstractHypergraph":
        edges = [tuple(int(v) for v in line.split()) for line in text.splitlines() if line.strip()]
        m = 1 + max((v for e in edges for v in e), default=-1)
        return cls(m, tuple(edges))


@dataclass(frozen=True)
class TightTreeWitness:
    """Edge order plus, for each later edge, its new vertex and host position.

    ``steps[k]`` belongs to ``order[k + 1]`` and holds ``(new_vertex, host)``
    where ``host`` is a position in ``order`` smaller than ``k + 1``.
    """

    order: tuple[int, ...]
    steps: tuple[tuple[int, int], ...]

    def check(self, h: AbstractHypergraph) -> bool:
        if sorted(self.order) != list(range(h.t)) or len(self.steps) != max(h.t - 1, 0):
            return False
        seen = set(h.edges[self.order[0]]) if h.t else set()
        for pos, (v, host) in enumerate(self.steps, start=1):
            e = set(h.edges[self.order[pos]])
            if v not in e or v in seen or not 0 <= host < pos:
                return False
            if not e - {v} <= set(h.edges[self.order[host]]):
                return False
            seen |= e
        return True


def tight_order(h: AbstractHypergraph) -> TightTreeWitness | None:
    """A tight ordering of ``h``'s edges, or ``None`` if none exists.

    Backtracks over the next edge; any edge that could extend the current
    prefix is tried, with no assumption that a greedy choice is safe.
    """
    t = h.t
    if t == 0:
        return None
    r = h.r
    if h.m < r + t - 1:
        return None
    edges = [frozenset(e) for e in h.edges]

    def extends(k: int, order: list[int], covered: set):
        new = edges[k] - covered
        if len(new) != 1:
            return None
        v = next(iter(new))
        rest = edges[k] - {v}
        for pos, j in enumerate(order):
            if rest <= edges[j]:
                return v, pos
        return None

    def search(order: list[int], steps: list, covered: set):
        if len(order) == t:
            return TightTreeWitness(tuple(order), tuple(steps))
        placed = set(order)
        for k in range(t):
            if k in placed:
                continue
            step = extends(k, order, covered)
            if step is None:
                continue
            found = search(order + [k], steps + [step], covered | edges[k])
            if found:
                return found
        return None

    for first in range(t):
        found = search([first], [], set(edges[first]))
        if found:
            return found
    return None


def is_nontrivial(h: AbstractHypergraph) -> bool:
    if not h.edges:
        raise ValueError("empty hypergraph")
    common = set(h.edges[0])
    for e in h.edges[1:]:
        common &= set(e)
    return not common


# ---------------------------------------------------------------------------
# canonical labelling

def _refine(h: AbstractHypergraph, colors: list[int]) -> list[int]:
    """Colour refinement; the new colour ids are derived from signatures only."""
    incident = [[] for _ in range(h.m)]
    for e in h.edges:
        for v in e:
            incident[v].append(e)
    while True:
        sigs = []
        for v in range(h.m):
            around = sorted(tuple(sorted(colors[u] for u in e if u != v)) for e in incident[v])
            sigs.append((colors[v], tuple(around)))
        palette = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(palette) == len(set(colors)):
            return new
        colors = new


def canonical_form(h: AbstractHypergraph) -> tuple[tuple[int, ...], ...]:
    """Lexicographically smallest relabelled edge list over all refinement leaves.

    Exact: every individualisation is explored, so isomorphic inputs give the
    same form and non-isomorphic ones differ.
    """
    best = None

    def labelled(colors: list[int]) -> tuple:
        return tuple(sorted(tuple(sorted(colors[v] for v in e)) for e in h.edges))

    def search(colors: list[int]):
        nonlocal best
        colors = _refine(h, colors)
        if len(set(colors)) == h.m:
            form = labelled(colors)
            if best is None or form < best:
                best = form
            return
        sizes = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        for v in range(h.m):
            if colors[v] == target:
                # split v off below the rest of its cell
                nxt = [2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(colors)]
                search(nxt)

    search([0] * h.m)
    return best


def automorphism_count(h: AbstractHypergraph) -> int:
    """Brute force over all vertex permutations (small m only)."""
    edges = set(h.edges)
    return sum(
        1
        for perm in itertools.permutations(range(h.m))
        if all(tuple(sorted(perm[v] for v in e)) in edges for e in h.edges)
    )


def enumerate_tight_trees(r: int, t_max: int) -> Iterator[AbstractHypergraph]:
    """Every tight r-tree with at most ``t_max`` edges, one per isomorphism class.

    Grown level by level: each tree with ``t`` edges is extended by a new
    vertex joined to each (r-1)-subset of each edge.  Yield order is by edge
    count, then canonical form.
    """
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    level = {canonical_form(h): h for h in [AbstractHypergraph(r, (tuple(range(r)),))]}
    for t in range(1, t_max + 1):
        for form in sorted(level):
            yield AbstractHypergraph(r + t - 1, form)
        if t == t_max:
            return
        nxt = {}
        for form in level:
            m = r + t - 1
            faces = {tuple(sorted(f)) for e in form for f in itertools.combinations(e, r - 1)}
            for face in sorted(faces):
                child = AbstractHypergraph(m + 1, form + (face + (m,),))
                nxt.setdefault(canonical_form(child), child)
        level = nxt


# ---------------------------------------------------------------------------
# embedding into a construction

class HostIndex:
    """Edge lookups for one construction on ``[n]^d``, keyed by (r-1)-faces."""

    def __init__(self, spec: ConstructionSpec, n: int):
        self.spec = spec
        self.n = n
        self.tables = GridTables(spec, n)
        self.edges: list[frozenset] = []
        self.completions: dict[frozenset, list[int]] = {}
        seen = set()
        for c in range(len(self.tables.points)):
            for vs in sorted(self.tables.edges_from(c), key=sorted):
                if vs in seen:
                    continue
                seen.add(vs)
                self.edges.append(vs)
                for v in vs:
                    self.completions.setdefault(vs - {v}, []).append(v)
        for face in self.completions:
            self.completions[face].sort()

    def centers(self, vs) -> frozenset:
        return frozenset(self.tables.centers_of(vs))


def embed(t: AbstractHypergraph, spec: ConstructionSpec, n: int, witness: TightTreeWitness | None = None,
          host: HostIndex | None = None) -> dict[int, GridPoint] | None:
    """Injective map of ``t``'s vertices into ``[n]^d`` carrying edges to edges.

    The tight order drives the search: after the first edge is placed, each
    further edge has exactly one unmapped vertex, whose candidates are the
    completions of an already-mapped (r-1)-face.
    """
    if t.r != spec.r:
        raise ValueError(f"tree is {t.r}-uniform, construction is {spec.r}-uniform")
    witness = witness or tight_order(t)
    if witness is None or not witness.check(t):
        raise ValueError("not a tight tree (or witness does not match)")
    host = host or HostIndex(spec, n)
    edges = [t.edges[k] for k in witness.order]
    plan = []
    for pos in range(1, len(edges)):
        v, _ = witness.steps[pos - 1]
        plan.append((v, frozenset(edges[pos]) - {v}))

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(step: int) -> bool:
        if step == len(plan):
            return True
        v, face = plan[step]
        image = frozenset(mapping[u] for u in face)
        for w in host.completions.get(image, ()):
            if w in used:
                continue
            mapping[v] = w
            used.add(w)
            if extend(step + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    first = edges[0]
    for he in host.edges:
        targets = sorted(he)
        for perm in itertools.permutations(targets):
            mapping.clear()
            used.clear()
            mapping.update(zip(first, perm))
            used.update(perm)
            if extend(0):
                return {u: host.tables.points[w] for u, w in sorted(mapping.items())}
    return None


def check_embedding(t: AbstractHypergraph, spec: ConstructionSpec, mapping: dict[int, GridPoint]) -> bool:
    from .grid import edge_centers

    if len(set(mapping.values())) != len(mapping) or set(mapping) != set(range(t.m)):
        return False
    return all(edge_centers(spec, [mapping[v] for v in e]) for e in t.edges)


@dataclass
class TreeScanReport:
    spec_id: str
    n: int
    t_max: int
    trees: int
    nontrivial: int
    embeddable_trivial: int
    offending: list  # (tree, mapping) pairs; empty when the construction is tree-free
    smallest_nontrivial_edges: int | None
    shared_center_ok: bool

    @property
    def holds(self) -> bool:
        return not self.offending

    def to_json(self) -> dict:
        return {
            "trees": self.trees,
            "nontrivial": self.nontrivial,
            "embeddable_trivial": self.embeddable_trivial,
            "smallest_nontrivial_edges": self.smallest_nontrivial_edges,
            "shared_center_ok": self.shared_center_ok,
            "vacuous": self.nontrivial == 0,
            "offending": [
                {"edges": [list(e) for e in tree.edges], "mapping": {str(k): list(p) for k, p in m.items()}}
                for tree, m in self.offending
            ],
        }


def scan_tree_freeness(spec: ConstructionSpec, n: int, t_max: int) -> TreeScanReport:
    """Try to embed every tight tree with at most ``t_max`` edges.

    Non-trivial embeddings are collected as offenders.  For trivial trees
    that do embed, the report also records whether all image edges share a
    single center.
    """
    host = HostIndex(spec, n)
    trees = list(enumerate_tight_trees(spec.r, t_max))
    offending = []
    nontrivial = 0
    embeddable = 0
    shared_ok = True
    smallest = None
    for tree in trees:
        witness = tight_order(tree)
        mapping = embed(tree, spec, n, witness, host)
        if is_nontrivial(tree):
            nontrivial += 1
            if smallest is None:
                smallest = tree.t
            if mapping is not None:
                offending.append((tree, mapping))
        elif mapping is not None:
            embeddable += 1
            index = host.tables.index
            center_sets = [host.centers([index[mapping[v]] for v in e]) for e in tree.edges]
            if any(len(c) != 1 for c in center_sets) or len(set(center_sets)) != 1:
                shared_ok = False
    return TreeScanReport(spec.spec_id(), n, t_max, len(trees), nontrivial, embeddable, offending, smallest, shared_ok)


def codegree_hosts_ok(h: AbstractHypergraph, witness: TightTreeWitness) -> bool:
    """Each later edge meets its recorded host in exactly r-1 vertices."""
    r = h.r
    for pos, (_, host) in enumerate(witness.steps, start=1):
        a = set(h.edges[witness.order[pos]])
        b = set(h.edges[witness.order[host]])
        if len(a & b) != r - 1:
            return False
    return True


def consecutive_codegree_ok(h: AbstractHypergraph, witness: TightTreeWitness) -> bool:
    r = h.r
    es = [set(h.edges[k]) for k in witness.order]
    return all(len(a & b) == r - 1 for a, b in zip(es, es[1:]))


def tree_from_sets(sets: Sequence[Sequence]) -> AbstractHypergraph:
    return AbstractHypergraph.from_edges(sets)
