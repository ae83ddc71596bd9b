"""Acceptance suite: one PASS/FAIL line per criterion.

Each test records its verdict through the ``acceptance_report`` fixture and
then asserts it, so a failing criterion shows up both in the summary section
and as a failed test.
"""

import itertools
import random
import subprocess
import sys
import time

import pytest

from ramsey_forge.bounds import deletion_experiment
from ramsey_forge.certifier import (
    check_center_uniqueness,
    corner_witness,
    find_edge_h3,
    find_edge_h4,
    independence_number,
    is_independent,
    verify_certificate,
)
from ramsey_forge.grid import (
    SYM4_CENTERS,
    SYM4_SHARED,
    format_edge_list,
    grid_points,
    h3_spec,
    h4_spec,
    is_edge,
    symmetric4_spec,
)
from ramsey_forge.search import TupleSpace, check_tuple, reverify, sampled_indices, search_center_property
from ramsey_forge.trees import enumerate_tight_trees, is_nontrivial, scan_tree_freeness

pytestmark = pytest.mark.acceptance


def test_criterion_01_h3_centers(acceptance_report):
    bad = [n for n in range(1, 7) if check_center_uniqueness(h3_spec(), n) is not None]
    assert acceptance_report(1, "H3 center uniqueness, n <= 6", not bad, f"violating n: {bad or 'none'}")


def test_criterion_02_h4_centers(acceptance_report):
    t0 = time.perf_counter()
    bad = [n for n in range(1, 5) if check_center_uniqueness(h4_spec(), n) is not None]
    dt = time.perf_counter() - t0
    assert acceptance_report(2, "H4 center uniqueness, n <= 4", not bad,
                             f"violating n: {bad or 'none'}, {dt:.1f}s")


def test_criterion_03_symmetric_counterexample(acceptance_report):
    spec = symmetric4_spec()
    cert = check_center_uniqueness(spec, 3)
    want_a = frozenset(((1, 1, 1), (1, 2, 3), (3, 1, 2), (2, 3, 1)))
    want_b = frozenset(((2, 2, 2), (1, 2, 3), (3, 1, 2), (2, 3, 1)))
    ok = (
        cert is not None
        and cert.edge_a.vertices == want_a
        and cert.edge_b.vertices == want_b
        and cert.edge_a.centers == {(1, 1, 1)}
        and cert.edge_b.centers == {(2, 2, 2)}
        and verify_certificate(spec, cert)
    )
    assert want_a == frozenset((SYM4_CENTERS[0],) + SYM4_SHARED)
    if cert is None:
        detail = "no violation"
    else:
        detail = "; ".join(
            format_edge_list([e]).strip() for e in (cert.edge_a, cert.edge_b))
    assert acceptance_report(3, "symmetric variant violates at n = 3 with the exact pair", ok, detail)


def test_criterion_04_h3_edge_in_every_2n_set(acceptance_report):
    counts, failures = {}, 0
    for n in (2, 3, 4):
        pts = grid_points(n, 2)
        counts[n] = 0
        for x in itertools.combinations(pts, 2 * n):
            counts[n] += 1
            try:
                e = find_edge_h3(x, n)
            except Exception:
                failures += 1
                continue
            if not e.vertices <= set(x) or is_edge(h3_spec(), e.vertices) is None:
                failures += 1
    ok = failures == 0 and counts == {2: 1, 3: 84, 4: 12870}
    assert acceptance_report(4, "every 2n-subset of [n]^2 holds an H3 edge", ok,
                             f"subsets {counts}, failures {failures}")


def test_criterion_05_h4_edge_in_random_10n_sets(acceptance_report):
    failures, checked = 0, 0
    for n in range(4, 9):
        pts = grid_points(n, 3)
        rng = random.Random(1000 + n)
        for _ in range(1000):
            x = rng.sample(pts, 10 * n)
            checked += 1
            try:
                e = find_edge_h4(x, n)
            except Exception:
                failures += 1
                continue
            if not e.vertices <= set(x) or is_edge(h4_spec(), e.vertices) is None:
                failures += 1
    assert acceptance_report(5, "random 10n-subsets of [n]^3 hold an H4 edge, n = 4..8", failures == 0,
                             f"{checked} subsets, failures {failures}")


def test_criterion_06_independence_numbers(acceptance_report):
    h3_values, ok = {}, True
    for n in (2, 3, 4):
        res = independence_number(h3_spec(), n)
        h3_values[n] = res.value
        ok &= res.exact and res.value == 2 * n - 1 == len(corner_witness(n))
        ok &= is_independent(h3_spec(), n, res.witness.vertices)
    h4_values = {}
    for n in (2, 3):
        res = independence_number(h4_spec(), n)
        h4_values[n] = res.value
        ok &= res.exact and res.value <= 10 * n - 1
        ok &= is_independent(h4_spec(), n, res.witness.vertices)
    assert acceptance_report(6, "alpha(H3) = 2n-1 for n = 2..4, alpha(H4) <= 10n-1 for n = 2, 3", ok,
                             f"H3 {h3_values}, H4 exact {h4_values}")


def test_criterion_07_tree_freeness(acceptance_report):
    r3 = scan_tree_freeness(h3_spec(), 5, 4)
    r4 = scan_tree_freeness(h4_spec(), 3, 4)
    smallest = min(h.t for h in enumerate_tight_trees(3, 4) if is_nontrivial(h))
    ok = r3.holds and r4.holds and smallest == 4
    detail = (f"H3 n=5: {r3.nontrivial} non-trivial trees, {len(r3.offending)} embeddings; "
              f"H4 n=3: {r4.nontrivial} non-trivial trees with <= 4 edges (vacuous), "
              f"{len(r4.offending)} embeddings; smallest non-trivial 3-tree has {smallest} edges")
    assert acceptance_report(7, "no non-trivial tight tree with <= 4 edges embeds", ok, detail)


def test_criterion_08_r4_family(acceptance_report):
    space = TupleSpace(4)
    results = list(search_center_property(4, range(space.size), 4))
    by_index = {t.tuple_index: t for t in results}
    h4_idx = space.index(tuple(l.order for l in h4_spec().links))
    sym_idx = space.index(tuple(l.order for l in symmetric4_spec().links))
    passes = [t.tuple_index for t in results if t.result != "fail"]
    by_n = {}
    for t in results:
        if t.result == "fail":
            by_n[t.violating_n] = by_n.get(t.violating_n, 0) + 1
    ok = (
        len(results) == 512
        and by_index[h4_idx].result == "inconclusive-pass"
        and by_index[sym_idx].result == "fail"
        and all(reverify(t, 4) for t in results)
    )
    assert acceptance_report(8, "r = 4 search: h4 survives, symmetric variant fails", ok,
                             f"{len(passes)} survive n <= 4, failures by n {dict(sorted(by_n.items()))}")


def test_criterion_09_r5_sampled_negative(acceptance_report):
    t0 = time.perf_counter()
    indices = sampled_indices(5, 10_000, seed=0)
    results = list(search_center_property(5, indices, 4))
    survivors = [t for t in results if t.result != "fail"]
    # anything surviving n = 4 gets one more round at n = 5
    escalated = [check_tuple(5, t.orders, 5, t.tuple_index, n_min=5) for t in survivors]
    still = [t for t in escalated if t.result != "fail"]
    verified = all(reverify(t, 5) for t in results if t.result == "fail") and all(
        reverify(t, 5) for t in escalated if t.result == "fail")
    by_n = {}
    for t in results:
        if t.violating_n is not None:
            by_n[t.violating_n] = by_n.get(t.violating_n, 0) + 1
    ok = not still and verified and len(results) == 10_000
    dt = time.perf_counter() - t0
    assert acceptance_report(9, "10^4 sampled 5-uniform tuples all violate", ok,
                             f"failures by n {by_n}, escalated {len(survivors)}, passing {len(still)}, {dt:.0f}s")


def test_criterion_10_deletion_method(acceptance_report):
    s = deletion_experiment(h3_spec(), 6, 0.3, trials=10_000, seed=0)
    ok = s.passed and s.edges == 225 and s.vertices == 36
    assert acceptance_report(10, "deletion-method mean >= pN - m p^3 - 3 sigma on H3, n = 6", ok,
                             f"mean {s.mean:.4f}, bound {s.expectation_bound:.4f}, margin {s.margin:.4f}, "
                             f"all independent {s.all_independent}")


CLI_RUNS = [
    ["construct", "--spec", "h3", "--n", "4", "--out", "{d}/h3.txt"],
    ["construct", "--spec", "sym4", "--n", "3"],
    ["certify", "centers", "--spec", "h4", "--n", "3"],
    ["certify", "centers", "--spec", "sym4", "--n", "3"],
    ["certify", "edge-in-set", "--spec", "h3", "--n", "3"],
    ["certify", "edge-in-set", "--spec", "h4", "--n", "4", "--trials", "50", "--seed", "3"],
    ["certify", "alpha", "--spec", "h3", "--n", "3"],
    ["certify", "tree-freeness", "--spec", "h3", "--n", "4", "--t-max", "4"],
    ["search", "--r", "5", "--n-max", "4", "--mode", "sampled", "--sample-size", "500", "--seed", "7",
     "--threads", "2", "--out", "{d}/r5.jsonl"],
    ["search", "--r", "4", "--n-max", "3", "--mode", "full", "--symmetry", "--out", "{d}/r4.jsonl"],
    ["bounds", "estimate", "--k", "4", "--r", "3", "--n", "10"],
    ["bounds", "delete-method", "--spec", "h3", "--n", "5", "--p", "0.3", "--trials", "500", "--seed", "11"],
    ["tree-scan", "--r", "3", "--t-max", "4", "--trees-out", "{d}/trees.txt"],
    ["tree-scan", "--r", "4", "--t-max", "3", "--spec", "h4", "--n", "3"],
]


def _run_once(tmp, argv):
    tmp.mkdir()
    args = [a.format(d=tmp) for a in argv]
    res = subprocess.run([sys.executable, "-m", "ramsey_forge", *args], capture_output=True)
    files = {p.name: p.read_bytes() for p in sorted(tmp.iterdir())}
    return res.returncode, res.stdout, files


def test_criterion_11_cli_determinism(acceptance_report, tmp_path):
    differing = []
    for k, argv in enumerate(CLI_RUNS):
        first = _run_once(tmp_path / f"{k}a", argv)
        second = _run_once(tmp_path / f"{k}b", argv)
        if first != second or first[0] == 3:
            differing.append(" ".join(argv[:2]))
    assert acceptance_report(11, "every CLI command is byte-identical across two runs", not differing,
                             f"{len(CLI_RUNS)} invocations, differing: {differing or 'none'}")
