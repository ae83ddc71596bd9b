import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import grid, h3_raw_centers, h4_raw_arc, raw4_centers, sym4_raw_arc
from ramsey_forge.grid import (
    ASC,
    DESC,
    SYM4_CENTERS,
    SYM4_SHARED,
    ConstructionSpec,
    GridTables,
    HyperEdge,
    LinkDigraphSpec,
    Ordering,
    SignedLexOrder,
    edges_within,
    enumerate_edges,
    format_edge_list,
    h3_spec,
    h4_spec,
    is_edge,
    parse_edge_list,
    signed_lex_compare,
    symmetric4_spec,
    t_edge,
)


def test_compare_tie_then_descending():
    order = SignedLexOrder((2, 3), (ASC, DESC))
    assert signed_lex_compare((2, 2, 5), (2, 2, 3), order) is Ordering.PRECEDES
    assert signed_lex_compare((2, 2, 3), (2, 2, 5), order) is Ordering.FOLLOWS


def test_compare_identity():
    for order in (SignedLexOrder((1, 2, 3), (ASC,) * 3), SignedLexOrder((3, 1), (DESC, ASC))):
        assert signed_lex_compare((1, 4, 2), (1, 4, 2), order) is Ordering.EQUAL


def test_compare_antisymmetric_on_cube():
    order = SignedLexOrder((1, 2, 3), (ASC, ASC, ASC))
    pts = grid(2, 3)
    pairs = 0
    for a, b in itertools.product(pts, repeat=2):
        pairs += 1
        ab, ba = signed_lex_compare(a, b, order), signed_lex_compare(b, a, order)
        assert (ab is Ordering.PRECEDES) == (ba is Ordering.FOLLOWS)
        assert (ab is Ordering.EQUAL) == (a == b)
    assert pairs == 64


def test_compare_errors():
    order = SignedLexOrder((2, 3), (ASC, ASC))
    with pytest.raises(ValueError):
        signed_lex_compare((1, 2, 3), (1, 2), order)
    with pytest.raises(ValueError):
        signed_lex_compare((1, 2), (2, 1), order)


orders_3d = st.builds(
    lambda perm, signs: SignedLexOrder(perm, signs),
    st.permutations([1, 2, 3]),
    st.lists(st.sampled_from([ASC, DESC]), min_size=3, max_size=3),
)
points_3d = st.tuples(*[st.integers(1, 4)] * 3)


@given(orders_3d, points_3d, points_3d, points_3d)
def test_compare_is_a_strict_total_order(order, a, b, c):
    ab = signed_lex_compare(a, b, order)
    assert ab == -signed_lex_compare(b, a, order)
    if ab is Ordering.PRECEDES and signed_lex_compare(b, c, order) is Ordering.PRECEDES:
        assert signed_lex_compare(a, c, order) is Ordering.PRECEDES


def test_order_validation():
    with pytest.raises(ValueError):
        SignedLexOrder((1, 1), (ASC, ASC))
    with pytest.raises(ValueError):
        SignedLexOrder((1, 2), (ASC,))
    with pytest.raises(ValueError):
        LinkDigraphSpec(1, SignedLexOrder((1, 2), (ASC, ASC)))
    assert SignedLexOrder.decode("+2-3") == SignedLexOrder((2, 3), (ASC, DESC))
    assert SignedLexOrder((3, 1), (DESC, ASC)).encode() == "-3+1"


def test_t_edge_examples():
    h4 = h4_spec()
    assert t_edge(1, (2, 2, 5), (2, 4, 1), h4)
    for p in grid(2, 3):
        for i in (1, 2, 3):
            assert not t_edge(i, p, p, h4)
    with pytest.raises(ValueError):
        t_edge(4, (1, 1, 1), (1, 1, 2), h4)


@pytest.mark.parametrize("spec", [h4_spec(), symmetric4_spec()], ids=["h4", "sym4"])
def test_links_are_tournaments_within_classes(spec):
    pts = grid(3, 3)
    for i in (1, 2, 3):
        pairs = 0
        for p, q in itertools.combinations(pts, 2):
            if p[i - 1] == q[i - 1]:
                pairs += 1
                assert t_edge(i, p, q, spec) != t_edge(i, q, p, spec)
            else:
                assert not t_edge(i, p, q, spec) and not t_edge(i, q, p, spec)
        # each link: 3 classes of 9 points, C(9,2) pairs each
        assert pairs == 3 * 36


@pytest.mark.parametrize("spec,raw", [(h4_spec(), h4_raw_arc), (symmetric4_spec(), sym4_raw_arc)], ids=["h4", "sym4"])
def test_t_edge_matches_raw_definition(spec, raw):
    pts = grid(3, 3)
    for p, q in itertools.product(pts, repeat=2):
        for i in (1, 2, 3):
            assert t_edge(i, p, q, spec) == raw(i, p, q)


def test_out_neighbours_of_h4_are_distinct():
    spec = h4_spec()
    for n in (2, 3):
        t = GridTables(spec, n)
        for c in range(len(t.points)):
            for q1, q2, q3 in itertools.product(*(t.out[i][c] for i in range(3))):
                assert len({q1, q2, q3}) == 3


def test_h3_examples():
    h3 = h3_spec()
    e = is_edge(h3, [(2, 2), (2, 5), (4, 2)])
    assert e is not None and e.center == (2, 2)
    assert is_edge(h3, [(1, 1), (1, 2), (2, 1)]).center == (1, 1)
    assert is_edge(h3, [(1, 1), (1, 2), (1, 3)]) is None


def test_h4_example_edge():
    e = is_edge(h4_spec(), [(2, 2, 1), (2, 3, 1), (3, 2, 1), (1, 1, 1)])
    assert e is not None and e.centers == {(2, 2, 1)}


def test_symmetric_counterexample_edges():
    spec = symmetric4_spec()
    for c in SYM4_CENTERS:
        e = is_edge(spec, (c,) + SYM4_SHARED)
        assert e is not None and e.centers == {c}


def test_is_edge_errors():
    with pytest.raises(ValueError):
        is_edge(h3_spec(), [(1, 1), (1, 2)])
    with pytest.raises(ValueError):
        is_edge(h3_spec(), [(1, 1), (1, 2), (2, 1, 1)])


@pytest.mark.parametrize("spec,raw", [(h4_spec(), h4_raw_arc), (symmetric4_spec(), sym4_raw_arc)], ids=["h4", "sym4"])
def test_is_edge_matches_raw_oracle(spec, raw):
    subsets = list(itertools.combinations(grid(2, 3), 4))
    assert len(subsets) == 70
    for s in subsets:
        e = is_edge(spec, s)
        expected = raw4_centers(raw, s)
        assert (e.centers if e else set()) == expected


def test_edge_counts():
    assert list(enumerate_edges(h3_spec(), 1)) == []
    assert len(list(enumerate_edges(h3_spec(), 3))) == 9
    # brute force over the 70 four-point subsets of [2]^3
    assert len(list(enumerate_edges(h4_spec(), 2))) == 6
    assert len(list(enumerate_edges(symmetric4_spec(), 2))) == 9


@pytest.mark.parametrize("n", range(1, 7))
def test_h3_count_closed_form(n):
    assert len(list(enumerate_edges(h3_spec(), n))) == (n * (n - 1) // 2) ** 2


@pytest.mark.parametrize("spec,n", [(h3_spec(), 3), (h3_spec(), 4), (h4_spec(), 3), (symmetric4_spec(), 3)],
                         ids=["h3-3", "h3-4", "h4-3", "sym4-3"])
def test_enumeration_agrees_with_is_edge(spec, n):
    found = {}
    for e in enumerate_edges(spec, n):
        assert e.vertices not in found, "edge yielded twice"
        found[e.vertices] = e.centers
    for s in itertools.combinations(grid(n, spec.d), spec.r):
        e = is_edge(spec, s)
        assert (e is not None) == (frozenset(s) in found)
        if e is not None:
            assert e.centers == found[frozenset(s)]


@pytest.mark.parametrize("spec,n", [(h3_spec(), 6), (h4_spec(), 4)], ids=["h3", "h4"])
def test_h3_h4_have_single_centers(spec, n):
    assert all(len(e.centers) == 1 for e in enumerate_edges(spec, n))


def test_h3_centers_match_raw_definition():
    for e in enumerate_edges(h3_spec(), 4):
        assert e.centers == h3_raw_centers(e.vertices)


def test_edges_within_subset():
    spec = h4_spec()
    pts = grid(3, 3)[::2]
    inside = {e.vertices for e in edges_within(spec, pts)}
    expected = {e.vertices for e in enumerate_edges(spec, 3) if e.vertices <= set(pts)}
    assert inside == expected


def test_edge_list_round_trip():
    edges = list(enumerate_edges(symmetric4_spec(), 2))
    text = format_edge_list(edges)
    assert text.endswith("\n") and "\r" not in text
    lines = text.splitlines()
    assert lines == sorted(lines, key=lambda line: parse_edge_list(line)[0].sorted_vertices())
    back = parse_edge_list(text)
    assert {(e.vertices, e.centers) for e in back} == {(e.vertices, e.centers) for e in edges}
    assert "*(1,1,1)" in text


def test_edge_line_format():
    e = HyperEdge(frozenset([(1, 1), (1, 2), (2, 1)]), frozenset([(1, 1)]))
    assert format_edge_list([e]) == "*(1,1) (1,2) (2,1)\n"


def test_spec_validation():
    o = SignedLexOrder((2,), (ASC,))
    with pytest.raises(ValueError):
        ConstructionSpec((LinkDigraphSpec(1, o),))
    with pytest.raises(ValueError):
        ConstructionSpec((LinkDigraphSpec(1, o), LinkDigraphSpec(1, SignedLexOrder((2,), (ASC,)))))
    assert h3_spec().r == 3 and h4_spec().d == 3
