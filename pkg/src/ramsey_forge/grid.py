"""Grid points, signed lexicographic orders and the fixed-coordinate constructions.

A construction on ``[n]^d`` is described by one link digraph per coordinate.
Link ``i`` joins points that agree in coordinate ``i`` and orients each such
pair by a signed lexicographic order on the remaining coordinates.  An edge is
a center ``c`` together with one out-neighbour of ``c`` in every link, all
points distinct.

Coordinates are 1-based throughout: a point of ``[n]^d`` is a tuple of ``d``
integers in ``1..n``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

GridPoint = tuple[int, ...]

ASC = 1
DESC = -1


class Ordering(enum.IntEnum):
    PRECEDES = -1
    EQUAL = 0
    FOLLOWS = 1


@dataclass(frozen=True)
class SignedLexOrder:
    """Compare tuples on ``perm[0]`` first, then ``perm[1]``, ...

    ``signs[k]`` is ``ASC`` (+1) or ``DESC`` (-1).  Under ``DESC`` a point with
    the *larger* coordinate comes first.  Indices are 1-based coordinates.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))
        object.__setattr__(self, "signs", tuple(self.signs))
        if len(set(self.perm)) != len(self.perm):
            raise ValueError(f"repeated index in perm {self.perm}")
        if len(self.signs) != len(self.perm):
            raise ValueError("signs and perm differ in length")
        if any(s not in (ASC, DESC) for s in self.signs):
            raise ValueError(f"signs must be +1/-1, got {self.signs}")
        if any(i < 1 for i in self.perm):
            raise ValueError(f"coordinate indices are 1-based, got {self.perm}")

    def key(self, p: Sequence[int]) -> tuple[int, ...]:
        """Sort key: ``a`` precedes ``b`` iff ``key(a) < key(b)``."""
        return tuple(s * p[i - 1] for i, s in zip(self.perm, self.signs))

    def encode(self) -> str:
        """Compact text form, e.g. ``+2-3`` for (2 asc, 3 desc)."""
        return "".join(("+" if s == ASC else "-") + str(i) for i, s in zip(self.perm, self.signs))

    @classmethod
    def decode(cls, text: str) -> "SignedLexOrder":
        perm, signs = [], []
        pos = 0
        while pos < len(text):
            sign = text[pos]
            if sign not in "+-":
                raise ValueError(f"bad order encoding {text!r}")
            end = pos + 1
            while end < len(text) and text[end].isdigit():
                end += 1
            if end == pos + 1:
                raise ValueError(f"bad order encoding {text!r}")
            perm.append(int(text[pos + 1:end]))
            signs.append(ASC if sign == "+" else DESC)
            pos = end
        if not perm:
            raise ValueError("empty order encoding")
        return cls(tuple(perm), tuple(signs))

    def __str__(self):
        return self.encode()


def signed_lex_compare(a: Sequence[int], b: Sequence[int], order: SignedLexOrder) -> Ordering:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    if max(order.perm) > len(a):
        raise ValueError(f"order index {max(order.perm)} out of range for dimension {len(a)}")
    for i, s in zip(order.perm, order.signs):
        x, y = a[i - 1], b[i - 1]
        if x != y:
            return Ordering.PRECEDES if s * x < s * y else Ordering.FOLLOWS
    return Ordering.EQUAL


@dataclass(frozen=True)
class LinkDigraphSpec:
    fixed_index: int
    order: SignedLexOrder

    def __post_init__(self):
        if self.fixed_index in self.order.perm:
            raise ValueError(f"fixed index {self.fixed_index} appears in its own order")


@dataclass(frozen=True)
class ConstructionSpec:
    """Uniformity ``r``, dimension ``d = r - 1`` and one link per coordinate."""

    links: tuple[LinkDigraphSpec, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "links", tuple(self.links))
        d = len(self.links)
        if d < 2:
            raise ValueError("need at least two links (r >= 3)")
        for i, link in enumerate(self.links, start=1):
            if link.fixed_index != i:
                raise ValueError(f"link {i} fixes coordinate {link.fixed_index}")
            expected = set(range(1, d + 1)) - {i}
            if set(link.order.perm) != expected:
                raise ValueError(f"link {i} must order exactly the coordinates {sorted(expected)}")

    @property
    def d(self) -> int:
        return len(self.links)

    @property
    def r(self) -> int:
        return len(self.links) + 1

    @property
    def orders(self) -> tuple[SignedLexOrder, ...]:
        return tuple(link.order for link in self.links)

    def spec_id(self) -> str:
        if self.name:
            return self.name
        return "general:" + ",".join(o.encode() for o in self.orders)

    def __eq__(self, other):
        # the display name does not take part in equality
        if not isinstance(other, ConstructionSpec):
            return NotImplemented
        return self.links == other.links

    def __hash__(self):
        return hash(self.links)


@dataclass(frozen=True)
class HyperEdge:
    vertices: frozenset
    centers: frozenset

    @property
    def center(self) -> GridPoint:
        if len(self.centers) != 1:
            raise ValueError(f"edge has {len(self.centers)} centers")
        return next(iter(self.centers))

    def sorted_vertices(self) -> tuple[GridPoint, ...]:
        return tuple(sorted(self.vertices))


def _spec(name: str, *orders: tuple[Sequence[int], Sequence[int]]) -> ConstructionSpec:
    links = [LinkDigraphSpec(i, SignedLexOrder(tuple(p), tuple(s))) for i, (p, s) in enumerate(orders, start=1)]
    return ConstructionSpec(tuple(links), name=name)


def h3_spec() -> ConstructionSpec:
    """Cooper-Mubayi L shapes: column-mate above the center, row-mate to its right."""
    return _spec("h3", ([2], [ASC]), ([1], [ASC]))


def h4_spec() -> ConstructionSpec:
    return _spec(
        "h4",
        ([2, 3], [ASC, DESC]),
        ([1, 3], [ASC, ASC]),
        ([2, 1], [DESC, DESC]),
    )


def symmetric4_spec() -> ConstructionSpec:
    """The cyclically symmetric 4-uniform variant, which breaks center uniqueness."""
    return _spec(
        "sym4",
        ([2, 3], [ASC, DESC]),
        ([3, 1], [ASC, DESC]),
        ([1, 2], [ASC, DESC]),
    )


# The two edges of the symmetric variant sharing three points but not their
# center; the textbook points are 0-based, stored here shifted by one.
SYM4_SHARED = ((1, 2, 3), (3, 1, 2), (2, 3, 1))
SYM4_CENTERS = ((1, 1, 1), (2, 2, 2))


def _check_point(p: Sequence[int], d: int, n: int | None = None) -> None:
    if len(p) != d:
        raise ValueError(f"point {tuple(p)} is not {d}-dimensional")
    if n is not None and not all(1 <= x <= n for x in p):
        raise ValueError(f"point {tuple(p)} lies outside [{n}]^{d}")


def t_edge(i: int, p: Sequence[int], q: Sequence[int], spec: ConstructionSpec) -> bool:
    """Is ``pq`` an arc of link digraph ``i`` (1-based)?"""
    if not 1 <= i <= spec.d:
        raise ValueError(f"invalid link index {i} for a {spec.d}-link spec")
    _check_point(p, spec.d)
    _check_point(q, spec.d)
    if p[i - 1] != q[i - 1]:
        return False
    order = spec.links[i - 1].order
    return order.key(p) < order.key(q)


def _has_labeling(spec: ConstructionSpec, c: GridPoint, others: Sequence[GridPoint]) -> bool:
    # perfect matching of the non-center points onto links; d <= 4 so brute force is fine
    d = spec.d
    ok = [[t_edge(i + 1, c, q, spec) for i in range(d)] for q in others]
    return any(all(ok[k][perm[k]] for k in range(d)) for perm in itertools.permutations(range(d)))


def edge_centers(spec: ConstructionSpec, pts: Iterable[GridPoint]) -> frozenset:
    pts = list(pts)
    return frozenset(c for c in pts if _has_labeling(spec, c, [q for q in pts if q != c]))


def is_edge(spec: ConstructionSpec, pts: Iterable[Sequence[int]]) -> HyperEdge | None:
    """Return the edge on ``pts`` with all its valid centers, or ``None``."""
    pts = [tuple(p) for p in pts]
    vertices = frozenset(pts)
    if len(pts) != spec.r or len(vertices) != spec.r:
        raise ValueError(f"expected {spec.r} distinct points, got {len(vertices)}")
    for p in pts:
        _check_point(p, spec.d)
    centers = edge_centers(spec, pts)
    if not centers:
        return None
    return HyperEdge(vertices, centers)


def grid_points(n: int, d: int) -> list[GridPoint]:
    return list(itertools.product(range(1, n + 1), repeat=d))


class GridTables:
    """Out-neighbourhoods of every point in every link, for one (spec, n).

    Points are numbered in lexicographic order; ``out[i][v]`` lists the
    indices of the link-``i`` out-neighbours of point ``v`` (0-based link),
    sorted by point index.
    """

    def __init__(self, spec: ConstructionSpec, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.spec = spec
        self.n = n
        self.points = grid_points(n, spec.d)
        self.index = {p: k for k, p in enumerate(self.points)}
        self.out: list[list[tuple[int, ...]]] = []
        self.out_sets: list[list[frozenset]] = []
        # out-neighbours ordered from the far end of the link order
        self.out_far: list[list[tuple[int, ...]]] = []
        for i, link in enumerate(spec.links):
            classes: dict[int, list[int]] = {}
            for k, p in enumerate(self.points):
                classes.setdefault(p[i], []).append(k)
            out = [()] * len(self.points)
            far = [()] * len(self.points)
            for members in classes.values():
                ranked = sorted(members, key=lambda k: link.order.key(self.points[k]))
                for pos, k in enumerate(ranked):
                    out[k] = tuple(sorted(ranked[pos + 1:]))
                    far[k] = tuple(reversed(ranked[pos + 1:]))
            self.out.append(out)
            self.out_far.append(far)
            self.out_sets.append([frozenset(o) for o in out])

    def is_arc(self, i: int, u: int, v: int) -> bool:
        return v in self.out_sets[i][u]

    def has_labeling(self, c: int, others: Sequence[int]) -> bool:
        d = self.spec.d
        ok = [[v in self.out_sets[i][c] for i in range(d)] for v in others]
        return any(all(ok[k][perm[k]] for k in range(d)) for perm in itertools.permutations(range(d)))

    def centers_of(self, vs: Iterable[int]) -> list[int]:
        vs = list(vs)
        return [c for c in vs if self.has_labeling(c, [v for v in vs if v != c])]

    def edges_from(self, c: int, allowed: frozenset | None = None) -> set[frozenset]:
        """Vertex sets (as index frozensets) of all edges having ``c`` as a center."""
        outs = [out[c] for out in self.out]
        if allowed is not None:
            outs = [[v for v in o if v in allowed] for o in outs]
        found = set()
        for combo in itertools.product(*outs):
            vs = frozenset(combo)
            if len(vs) == len(combo):
                found.add(vs | {c})
        return found

    def edge(self, vs: Iterable[int]) -> HyperEdge:
        vs = list(vs)
        return HyperEdge(
            frozenset(self.points[v] for v in vs),
            frozenset(self.points[c] for c in self.centers_of(vs)),
        )


def enumerate_edges(spec: ConstructionSpec, n: int) -> Iterator[HyperEdge]:
    """Yield every edge of the construction on ``[n]^d`` exactly once.

    Centers are visited in lexicographic order; an edge is emitted by its
    smallest center only, so memory stays bounded by one center's edges.
    """
    tables = GridTables(spec, n)
    for c in range(len(tables.points)):
        for vs in sorted(tables.edges_from(c), key=sorted):
            centers = tables.centers_of(vs)
            if min(centers) == c:
                yield HyperEdge(
                    frozenset(tables.points[v] for v in vs),
                    frozenset(tables.points[k] for k in centers),
                )


def edges_within(spec: ConstructionSpec, pts: Iterable[Sequence[int]]) -> Iterator[HyperEdge]:
    """Edges whose vertices all lie in ``pts``, found center by center."""
    pts = sorted({tuple(p) for p in pts})
    for p in pts:
        _check_point(p, spec.d)
    d = spec.d
    keys = [link.order.key for link in spec.links]
    for c in pts:
        outs = []
        for i in range(d):
            kc = keys[i](c)
            outs.append([q for q in pts if q[i] == c[i] and keys[i](q) > kc])
        seen = set()
        for combo in itertools.product(*outs):
            vs = frozenset(combo)
            if len(vs) != d or vs in seen:
                continue
            seen.add(vs)
            full = vs | {c}
            centers = edge_centers(spec, full)
            if min(centers) == c:
                yield HyperEdge(full, centers)


def format_point(p: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def parse_point(text: str) -> GridPoint:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"bad point {text!r}")
    return tuple(int(x) for x in text[1:-1].split(","))


def format_edge(edge: HyperEdge) -> str:
    return " ".join(("*" if p in edge.centers else "") + format_point(p) for p in edge.sorted_vertices())


def parse_edge(line: str) -> HyperEdge:
    vertices, centers = [], []
    for token in line.split():
        star = token.startswith("*")
        p = parse_point(token[1:] if star else token)
        vertices.append(p)
        if star:
            centers.append(p)
    return HyperEdge(frozenset(vertices), frozenset(centers))


def format_edge_list(edges: Iterable[HyperEdge]) -> str:
    """Edge-list text: one edge per line, sorted by sorted vertex list, LF endings."""
    lines = sorted((e.sorted_vertices(), format_edge(e)) for e in edges)
    return "".join(line + "\n" for _, line in lines)


def parse_edge_list(text: str) -> list[HyperEdge]:
    return [parse_edge(line) for line in text.splitlines() if line.strip()]
