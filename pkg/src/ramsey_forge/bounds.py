"""Upper-bound machinery: the Turán-type edge bound and the random deletion method."""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass
from fractions import Fraction

from .certifier import IndependentSetWitness, is_independent
from .grid import ConstructionSpec, GridTables

E_PRECISION_BITS = 64


def _euler_fraction(bits: int = E_PRECISION_BITS) -> Fraction:
    # partial sum of 1/k!; the tail after term k is below 2/(k+1)!
    total = Fraction(0)
    term = Fraction(1)
    k = 0
    while True:
        total += term
        k += 1
        term /= k
        if 2 * term < Fraction(1, 2**bits):
            return total


EULER = _euler_fraction()


def turan_bound(k: int, r: int, n: int) -> int:
    """Most edges an n-vertex r-graph can have while avoiding a tight tree with k edges."""
    if k < 1 or r < 2 or n < r:
        raise ValueError(f"need k >= 1, r >= 2, n >= r (got k={k}, r={r}, n={n})")
    return (k - 1) * math.comb(n, r - 1)


@dataclass(frozen=True)
class RamseyEstimate:
    k: int
    r: int
    n: int
    N: int
    p: float
    N_exact: Fraction
    rounding: str = "ceil"
    e_precision_bits: int = E_PRECISION_BITS

    @property
    def expected_size_bound(self) -> float:
        """pN - (k-1) C(N, r-1) p^r, the deletion-method lower bound on E|U'|."""
        return self.p * self.N - (self.k - 1) * math.comb(self.N, self.r - 1) * self.p**self.r

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "r": self.r,
            "n": self.n,
            "N": self.N,
            "N_real": float(self.N_exact),
            "p": self.p,
            "expected_size_bound": self.expected_size_bound,
            "rounding": self.rounding,
            "e_precision_bits": self.e_precision_bits,
        }


def ramsey_upper_estimate(k: int, r: int, n: int) -> RamseyEstimate:
    """N = 2(k-1)(2en/(r-1))^(r-1), rounded up, and the matching sampling probability."""
    if k < 2 or r < 3 or n < 1:
        raise ValueError(f"need k >= 2, r >= 3, n >= 1 (got k={k}, r={r}, n={n})")
    exact = 2 * (k - 1) * (2 * EULER * n / (r - 1)) ** (r - 1)
    N = math.ceil(exact)
    ratio = Fraction(N, 2 * (k - 1) * math.comb(N, r - 1))
    p = float(ratio) ** (1.0 / (r - 1))
    if not 0 < p <= 1:
        raise ArithmeticError(f"sampling probability {p} outside (0, 1]")
    return RamseyEstimate(k, r, n, N, p, exact)


class DeletionSampler:
    """Random deletion on one construction; edges are precomputed as bitmasks."""

    def __init__(self, spec: ConstructionSpec, n: int):
        self.spec = spec
        self.n = n
        self.tables = GridTables(spec, n)
        masks = set()
        for c in range(len(self.tables.points)):
            for vs in self.tables.edges_from(c):
                masks.add(sum(1 << v for v in vs))
        # sorted by vertex set: points are numbered lexicographically
        self.edges = sorted(masks, key=lambda m: [k for k in range(m.bit_length()) if m >> k & 1])

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sample(self, p: float, rng: random.Random) -> frozenset:
        if not 0 <= p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {p}")
        u = 0
        for k in range(len(self.tables.points)):
            if rng.random() < p:
                u |= 1 << k
        for m in self.edges:
            if m & u == m:
                # drop the lexicographically largest point of the edge
                u &= ~(1 << (m.bit_length() - 1))
        return frozenset(self.tables.points[k] for k in range(len(self.tables.points)) if u >> k & 1)


def trial_rng(seed: int, trial: int) -> random.Random:
    # string seeds are hashed with SHA-512, so this is stable across runs and platforms
    return random.Random(f"{seed}/{trial}")


def random_delete_independent_set(spec: ConstructionSpec, n: int, p: float, seed: int,
                                  sampler: DeletionSampler | None = None) -> IndependentSetWitness:
    sampler = sampler or DeletionSampler(spec, n)
    s = sampler.sample(p, random.Random(seed))
    if not is_independent(spec, n, s):
        raise AssertionError("deletion left an edge behind")
    return IndependentSetWitness(s, n, spec.spec_id())


@dataclass
class DeletionSummary:
    spec_id: str
    n: int
    p: float
    trials: int
    seed: int
    vertices: int
    edges: int
    mean: float
    stddev: float
    expectation_bound: float
    all_independent: bool

    @property
    def margin(self) -> float:
        return 3 * self.stddev / math.sqrt(self.trials)

    @property
    def passed(self) -> bool:
        return self.all_independent and self.mean >= self.expectation_bound - self.margin

    def to_json(self) -> dict:
        return {
            "spec": self.spec_id,
            "n": self.n,
            "p": self.p,
            "trials": self.trials,
            "seed": self.seed,
            "vertices": self.vertices,
            "edges": self.edges,
            "mean": self.mean,
            "stddev": self.stddev,
            "expectation_bound": self.expectation_bound,
            "margin": self.margin,
            "all_independent": self.all_independent,
            "pass": self.passed,
        }


def deletion_experiment(spec: ConstructionSpec, n: int, p: float, trials: int, seed: int,
                        verify: bool = True) -> DeletionSummary:
    """Run the deletion method ``trials`` times and compare with pN - m p^r.

    ``m`` is the exact edge count of the construction, standing in for the
    Turán bound of the general argument.  The comparison allows three
    standard errors of the mean.
    """
    if trials < 2:
        raise ValueError("need at least two trials")
    sampler = DeletionSampler(spec, n)
    sizes = []
    ok = True
    for trial in range(trials):
        s = sampler.sample(p, trial_rng(seed, trial))
        if verify and not is_independent(spec, n, s):
            ok = False
        sizes.append(len(s))
    nv = len(sampler.tables.points)
    bound = p * nv - sampler.edge_count * p**spec.r
    return DeletionSummary(
        spec.spec_id(), n, p, trials, seed, nv, sampler.edge_count,
        statistics.fmean(sizes), statistics.stdev(sizes), bound, ok,
    )
