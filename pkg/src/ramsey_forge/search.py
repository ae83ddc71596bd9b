"""Exhaustive search over constructions built from signed lexicographic orders.

A construction of uniformity ``r`` picks, for each coordinate ``i`` of
``[n]^(r-1)``, one signed lexicographic order over the other coordinates.
Tuples are numbered in mixed radix, link 1 most significant, each digit
indexing :func:`all_signed_lex_orders` of that link's coordinates.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
import multiprocessing
import os
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .certifier import (
    DISTINCT_CENTERS,
    ViolationCertificate,
    build_certificate,
    first_violation,
    verify_certificate,
)
from .grid import ASC, DESC, ConstructionSpec, GridTables, LinkDigraphSpec, SignedLexOrder

log = logging.getLogger(__name__)

CHECKPOINT_EVERY = 1 << 16
STRICT = "strict"
PAIRWISE = "pairwise"


def all_signed_lex_orders(indices: Iterable[int]) -> list[SignedLexOrder]:
    """All 2^k k! orders: permutations lexicographic, signs as a binary counter (first index high bit)."""
    indices = sorted(set(indices))
    if not indices:
        raise ValueError("empty index set")
    k = len(indices)
    out = []
    for perm in itertools.permutations(indices):
        for bits in range(2**k):
            signs = tuple(DESC if bits >> (k - 1 - pos) & 1 else ASC for pos in range(k))
            out.append(SignedLexOrder(perm, signs))
    return out


def link_families(r: int) -> list[list[SignedLexOrder]]:
    d = r - 1
    return [all_signed_lex_orders(j for j in range(1, d + 1) if j != i) for i in range(1, d + 1)]


def build_general_spec(r: int, orders: Sequence[SignedLexOrder], name: str = "") -> ConstructionSpec:
    if r < 3:
        raise ValueError("uniformity must be >= 3")
    if len(orders) != r - 1:
        raise ValueError(f"need {r - 1} orders for r={r}, got {len(orders)}")
    links = tuple(LinkDigraphSpec(i, o) for i, o in enumerate(orders, start=1))
    return ConstructionSpec(links, name=name)


def parse_general_spec(text: str) -> ConstructionSpec:
    """``general:+2-3,+1+3,-2-1`` (the ``general:`` prefix is optional)."""
    body = text.split(":", 1)[1] if text.startswith("general:") else text
    orders = [SignedLexOrder.decode(part) for part in body.split(",")]
    return build_general_spec(len(orders) + 1, orders)


class TupleSpace:
    """Index <-> order tuple for one uniformity."""

    def __init__(self, r: int):
        self.r = r
        self.families = link_families(r)
        self.base = len(self.families[0])
        self.size = self.base ** (r - 1)
        self._position = [{o: k for k, o in enumerate(f)} for f in self.families]

    def orders(self, index: int) -> tuple[SignedLexOrder, ...]:
        if not 0 <= index < self.size:
            raise IndexError(index)
        digits = []
        for _ in range(self.r - 1):
            index, digit = divmod(index, self.base)
            digits.append(digit)
        digits.reverse()
        return tuple(f[k] for f, k in zip(self.families, digits))

    def index(self, orders: Sequence[SignedLexOrder]) -> int:
        value = 0
        for pos, o in zip(self._position, orders):
            value = value * self.base + pos[o]
        return value

    def spec(self, index: int) -> ConstructionSpec:
        return build_general_spec(self.r, self.orders(index))


# ---------------------------------------------------------------------------
# coordinate relabelling

def relabel_orders(orders: Sequence[SignedLexOrder], sigma: Sequence[int]) -> tuple[SignedLexOrder, ...]:
    """The order tuple seen after moving coordinate ``j`` to ``sigma[j-1]``.

    The map ``P -> P'`` with ``P'(sigma(j)) = P(j)`` is an isomorphism from
    the original construction to the relabelled one.
    """
    d = len(orders)
    new = [None] * d
    for i, o in enumerate(orders, start=1):
        new[sigma[i - 1] - 1] = SignedLexOrder(tuple(sigma[j - 1] for j in o.perm), o.signs)
    return tuple(new)


def relabel_point(p: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    q = [0] * len(p)
    for j, x in enumerate(p, start=1):
        q[sigma[j - 1] - 1] = x
    return tuple(q)


def relabel_certificate(cert: ViolationCertificate, sigma: Sequence[int]) -> ViolationCertificate:
    from .grid import HyperEdge

    def move(e: HyperEdge) -> HyperEdge:
        return HyperEdge(frozenset(relabel_point(p, sigma) for p in e.vertices),
                         frozenset(relabel_point(p, sigma) for p in e.centers))

    return ViolationCertificate(move(cert.edge_a), move(cert.edge_b),
                                frozenset(relabel_point(p, sigma) for p in cert.shared), cert.note)


def orbit_representative(space: TupleSpace, index: int) -> tuple[int, tuple[int, ...]]:
    """Smallest index in the coordinate-relabelling orbit, with a ``sigma`` taking it to ``index``."""
    orders = space.orders(index)
    d = space.r - 1
    best = (index, tuple(range(1, d + 1)))
    for sigma in itertools.permutations(range(1, d + 1)):
        image = space.index(relabel_orders(orders, sigma))
        if image < best[0]:
            # sigma maps index -> image, so its inverse maps image -> index
            inverse = [0] * d
            for j, s in enumerate(sigma, start=1):
                inverse[s - 1] = j
            best = (image, tuple(inverse))
    return best


# ---------------------------------------------------------------------------
# per-tuple check

def first_pairwise_violation(tables: GridTables):
    """Lenient reading: only codegree-adjacent edges with no common center count.

    Edges with several centers are tolerated.  Returns a found-tuple in the
    format of :func:`first_violation`, or ``None``.
    """
    d = tables.spec.d
    r = d + 1
    centers: dict[int, int] = {}
    for c in range(len(tables.points)):
        for combo in itertools.product(*(tables.out_far[i][c] for i in range(d))):
            mask = 1 << c
            for v in combo:
                mask |= 1 << v
            if mask.bit_count() == r:
                centers[mask] = centers.get(mask, 0) | 1 << c
    faces: dict[int, list[int]] = {}
    for mask in centers:
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            face = mask ^ low
            seen = faces.setdefault(face, [])
            for prev in seen:
                if not centers[prev] & centers[mask]:
                    ca = (centers[prev] & -centers[prev]).bit_length() - 1
                    cb = (centers[mask] & -centers[mask]).bit_length() - 1
                    return face, (ca, prev), (cb, mask)
            seen.append(mask)
    return None


@dataclass
class SearchTask:
    tuple_index: int
    orders: tuple[SignedLexOrder, ...]
    result: str  # "fail" | "inconclusive-pass"
    violating_n: int | None
    certificate: ViolationCertificate | None
    n_max: int

    def to_json(self) -> dict:
        data = {
            "tuple_index": self.tuple_index,
            "orders": [o.encode() for o in self.orders],
            "result": self.result,
            "violating_n": self.violating_n,
        }
        if self.certificate is not None:
            data["certificate"] = self.certificate.to_json()
        return data

    def line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")) + "\n"


def check_tuple(r: int, orders: Sequence[SignedLexOrder], n_max: int, index: int = -1,
                n_min: int = 2, prop: str = STRICT) -> SearchTask:
    """Escalate n = n_min..n_max, stopping at the first violation."""
    spec = build_general_spec(r, orders)
    finder = first_violation if prop == STRICT else first_pairwise_violation
    for n in range(n_min, n_max + 1):
        tables = GridTables(spec, n)
        found = finder(tables)
        if found is not None:
            cert = build_certificate(tables, found)
            return SearchTask(index, tuple(orders), "fail", n, cert, n_max)
    return SearchTask(index, tuple(orders), "inconclusive-pass", None, None, n_max)


def _worker(job):
    r, index, n_max, prop = job
    space = _space(r)
    return check_tuple(r, space.orders(index), n_max, index, prop=prop)


_SPACES: dict[int, TupleSpace] = {}


def _space(r: int) -> TupleSpace:
    if r not in _SPACES:
        _SPACES[r] = TupleSpace(r)
    return _SPACES[r]


def search_center_property(r: int, indices: Iterable[int], n_max: int, threads: int = 1,
                           prop: str = STRICT, symmetry: bool = False,
                           chunksize: int = 256) -> Iterator[SearchTask]:
    """Check every tuple index in ``indices``; results come back in input order.

    With ``symmetry`` on, each orbit under coordinate relabelling is checked
    once at its smallest index and the certificate is carried over.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    if prop not in (STRICT, PAIRWISE):
        raise ValueError(f"unknown property {prop!r}")
    space = _space(r)
    if symmetry:
        yield from _search_reduced(space, indices, n_max, threads, prop, chunksize)
        return
    jobs = ((r, k, n_max, prop) for k in indices)
    if threads <= 1:
        yield from map(_worker, jobs)
        return
    with multiprocessing.get_context("fork").Pool(threads) as pool:
        yield from pool.imap(_worker, jobs, chunksize=chunksize)


def _search_reduced(space: TupleSpace, indices, n_max, threads, prop, chunksize):
    cache: dict[int, SearchTask] = {}
    for k in indices:
        rep, sigma = orbit_representative(space, k)
        if rep not in cache:
            cache[rep] = _worker((space.r, rep, n_max, prop))
        base = cache[rep]
        cert = None if base.certificate is None else relabel_certificate(base.certificate, sigma)
        yield SearchTask(k, space.orders(k), base.result, base.violating_n, cert, n_max)


def reverify(task: SearchTask, r: int) -> bool:
    if task.certificate is None:
        return task.result != "fail"
    spec = build_general_spec(r, task.orders)
    return verify_certificate(spec, task.certificate)


def sampled_indices(r: int, sample_size: int, seed: int) -> list[int]:
    """Seeded uniform sample without replacement, in increasing index order."""
    size = _space(r).size
    if not 0 < sample_size <= size:
        raise ValueError(f"sample size must lie in 1..{size}")
    return sorted(random.Random(seed).sample(range(size), sample_size))


def task_indices(r: int, mode: str, sample_size: int | None = None, seed: int = 0) -> list[int] | range:
    if mode == "full":
        return range(_space(r).size)
    if mode == "sampled":
        if sample_size is None:
            raise ValueError("sampled mode needs a sample size")
        return sampled_indices(r, sample_size, seed)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# driver with checkpoints

@dataclass
class SearchSummary:
    total: int
    failed: int
    inconclusive: int
    by_n: dict
    reverified: bool

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "failed": self.failed,
            "inconclusive": self.inconclusive,
            "by_violating_n": {str(k): v for k, v in sorted(self.by_n.items())},
            "reverified": self.reverified,
        }


def run_search(r: int, n_max: int, mode: str, out_path: str, sample_size: int | None = None,
               seed: int = 0, checkpoint: str | None = None, threads: int = 1, prop: str = STRICT,
               symmetry: bool = False, checkpoint_every: int = CHECKPOINT_EVERY,
               limit: int | None = None) -> SearchSummary:
    """Write one JSON line per tuple to ``out_path``, resumable through ``checkpoint``.

    The checkpoint records how many tasks are complete and the output size
    at that point; resuming truncates any partial tail and carries on, so
    the final file is byte-identical to an uninterrupted run.  ``limit``
    stops after that many tasks in this invocation (for staged runs).
    """
    indices = task_indices(r, mode, sample_size, seed)
    params = {"r": r, "n_max": n_max, "mode": mode, "sample_size": sample_size, "seed": seed,
              "property": prop, "symmetry": symmetry}
    done, offset = 0, 0
    stats = {"failed": 0, "inconclusive": 0, "by_n": {}, "reverified": True}
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint, encoding="utf-8") as fh:
            state = json.load(fh)
        if state["params"] != params:
            raise ValueError("checkpoint was written for different search parameters")
        done, offset = state["done"], state["offset"]
        stats = state["stats"]
        stats["by_n"] = {int(k): v for k, v in stats["by_n"].items()}
        log.info("resuming at task %d", done)

    mode_flag = "r+b" if done and os.path.exists(out_path) else "wb"
    with open(out_path, mode_flag) as out:
        out.seek(offset)
        out.truncate()
        remaining = indices[done:] if limit is None else indices[done:done + limit]
        for task in search_center_property(r, remaining, n_max, threads, prop, symmetry):
            out.write(task.line().encode("utf-8"))
            done += 1
            if task.result == "fail":
                stats["failed"] += 1
                stats["by_n"][task.violating_n] = stats["by_n"].get(task.violating_n, 0) + 1
                if not reverify(task, r):
                    stats["reverified"] = False
            else:
                stats["inconclusive"] += 1
            if checkpoint and done % checkpoint_every == 0:
                out.flush()
                _write_checkpoint(checkpoint, params, done, out.tell(), stats)
        out.flush()
        if checkpoint:
            _write_checkpoint(checkpoint, params, done, out.tell(), stats)
    return SearchSummary(done, stats["failed"], stats["inconclusive"], dict(stats["by_n"]), stats["reverified"])


def _write_checkpoint(path: str, params: dict, done: int, offset: int, stats: dict) -> None:
    state = {"params": params, "done": done, "offset": offset,
             "stats": {**stats, "by_n": {str(k): v for k, v in stats["by_n"].items()}}}
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(state, fh, sort_keys=True)
    os.replace(tmp, path)


def default_threads() -> int:
    value = os.environ.get("RAMSEY_FORGE_THREADS")
    if value:
        return max(1, int(value))
    return 1


def expected_family_size(r: int) -> int:
    k = r - 2
    return (2**k * math.factorial(k)) ** (r - 1)


__all__ = [
    "DISTINCT_CENTERS",
    "PAIRWISE",
    "STRICT",
    "SearchTask",
    "TupleSpace",
    "all_signed_lex_orders",
    "build_general_spec",
    "check_tuple",
    "parse_general_spec",
    "run_search",
    "search_center_property",
]
