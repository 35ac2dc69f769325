import pytest

from latkit import chain, cube3, find_isomorphism, two_by_chain
from latkit.errors import (
    BadAttachment,
    ChainExhausted,
    NotACover,
    NotALattice,
    SplitObstruction,
)
from latkit.ladder import (
    decorate,
    extend_case,
    extract_ladder,
    ladder_split,
    natural_chains,
    prime_interval_exclusion_scan,
    spanning_candidate,
    window,
)
from latkit.properties import whitman_w
from latkit.serialize import to_json_dict


def dec_elem(W, ident):
    return next(d.element for d in W.decorations if d.ident == ident)


# -- windows ------------------------------------------------------------


def test_window_shape():
    W = window(3)
    assert W.n == 14
    assert W.lattice.width() == 2
    for j in range(-3, 4):
        lo, hi = W.rail(0, j), W.rail(1, j)
        assert (lo, hi) in set(W.lattice.covers)


def test_window_one_is_two_by_three():
    assert find_isomorphism(window(1).lattice, two_by_chain(3)) is not None


def test_window_radius_validation():
    with pytest.raises(ValueError):
        window(0)


# -- decoration ----------------------------------------------------------


def test_decorate_high_rail_subdivision():
    W = decorate(window(3), {"insert": [{"between": [[1, 0], [1, 1]], "id": "x"}]})
    assert W.n == 15
    x = dec_elem(W, "x")
    L = W.lattice
    assert L.le(W.rail(1, 0), x) and L.le(x, W.rail(1, 1))


def test_decorate_low_rail_subdivision():
    W = decorate(window(3), {"insert": [{"between": [[0, 0], [0, 1]], "id": "b"}]})
    assert W.n == 15


def test_decorate_same_gap_twice_gives_diamond():
    # two parallel subdivisions of one edge resolve their bounds at the
    # old endpoints: the result is a lattice (with a width-3 bulge)
    W = decorate(
        window(2),
        {
            "insert": [
                {"between": [[0, 0], [0, 1]], "id": "p"},
                {"between": [[0, 0], [0, 1]], "id": "q"},
            ]
        },
    )
    L = W.lattice
    p, q = dec_elem(W, "p"), dec_elem(W, "q")
    assert L.join(p, q) == W.rail(0, 1)
    assert L.meet(p, q) == W.rail(0, 0)
    assert L.width() == 3


def test_decorate_rejects_non_lattice():
    # two parallel diagonals plus a point above both: the diagonals end
    # up with two minimal common upper bounds
    with pytest.raises(NotALattice) as info:
        decorate(
            window(3),
            {
                "insert": [
                    {"between": [[0, 0], [1, 1]], "id": "p"},
                    {"between": [[0, 0], [1, 1]], "id": "q"},
                    {"between": [[0, 1], [1, 2]], "id": "r", "gt": ["p", "q"]},
                ]
            },
        )
    assert info.value.kind in ("lub", "glb")


def test_decorate_rejects_bad_anchor():
    with pytest.raises(BadAttachment):
        decorate(window(2), {"insert": [{"between": [[0, 5], [0, 6]]}]})
    with pytest.raises(BadAttachment):
        decorate(window(2), {"insert": [{"between": [[1, 0], [0, 1]]}]})
    with pytest.raises(BadAttachment):
        decorate(window(2), {"insert": [{"between": [[0, 0], [0, 1]], "gt": ["ghost"]}]})


# -- extend_case -----------------------------------------------------------


@pytest.mark.parametrize("case,size", [(1, 5), (2, 6), (3, 7)])
def test_extend_case_classification(case, size):
    W = decorate(window(3), {"insert": [{"case": case, "at": 0}]})
    a, c = W.rail(1, 0), W.rail(0, 1)
    report = extend_case(W, a, c, dec_elem(W, "d0:b"))
    assert report.case == case
    assert len(report.generated) == size


def test_extend_case_shapes():
    # case 2 generates the two-by-three picture, case 3 the seven-element one
    W2 = decorate(window(3), {"insert": [{"case": 2, "at": 0}]})
    rep = extend_case(W2, W2.rail(1, 0), W2.rail(0, 1), dec_elem(W2, "d0:b"))
    sub, _ = W2.lattice.restrict(rep.generated)
    assert find_isomorphism(sub, two_by_chain(3)) is not None

    W3 = decorate(window(3), {"insert": [{"case": 3, "at": 0}]})
    rep = extend_case(W3, W3.rail(1, 0), W3.rail(0, 1), dec_elem(W3, "d0:b"))
    sub, _ = W3.lattice.restrict(rep.generated)
    from latkit import FiniteLattice

    # ac=0, a=1, b=2, a+b=3, (a+b)c=4, c=5, a+c=6
    seven = FiniteLattice.from_covers(
        7, [(0, 1), (0, 2), (1, 3), (2, 4), (4, 5), (4, 3), (3, 6), (5, 6)]
    )
    assert find_isomorphism(sub, seven) is not None


def test_extend_case_bad_attachment():
    W = decorate(window(3), {"insert": [{"case": 1, "at": 0}]})
    b = dec_elem(W, "d0:b")
    with pytest.raises(BadAttachment):
        extend_case(W, W.rail(1, 0), W.rail(0, 2), b)  # not a ladder cover
    with pytest.raises(BadAttachment):
        extend_case(W, W.rail(1, 1), W.rail(0, 1), b)  # comparable pair... a < a+c fails
    with pytest.raises(BadAttachment):
        extend_case(W, W.rail(1, 0), W.rail(0, 1), W.rail(0, 2))


# -- spanning covers ---------------------------------------------------------


def test_spanning_examples():
    W = window(3)
    assert spanning_candidate(W, W.rail(0, 0), W.rail(1, 0))
    C = cube3()
    assert not any(spanning_candidate(C, u, v) for u, v in C.covers)
    C5 = chain(5)
    assert not any(spanning_candidate(C5, u, v) for u, v in C5.covers)


def test_spanning_requires_cover():
    W = window(2)
    with pytest.raises(NotACover):
        spanning_candidate(W, W.rail(0, 0), W.rail(1, 1))


def test_spanning_off_center_cover():
    W = window(3)
    # (0,2) < (1,2) is a cover but the descending side cannot reach the
    # boundary while staying parallel
    assert spanning_candidate(W, W.rail(0, 2), W.rail(1, 2))
    assert not spanning_candidate(W, W.rail(0, 3), W.rail(1, 3))


# -- ladder extraction ---------------------------------------------------------


def test_extract_natural_window():
    W = window(3)
    a, b = W.rail(0, 0), W.rail(1, 0)
    up, down = natural_chains(W)
    ladder = extract_ladder(W, a, b, up, down)
    assert ladder.elements == frozenset(range(W.n))
    assert (ladder.neg, ladder.pos) == (3, 3)
    for j in range(-3, 4):
        assert ladder.coords[(0, j)] == W.rail(0, j)
        assert ladder.coords[(1, j)] == W.rail(1, j)


def test_extract_redundant_chain_picks_largest_index():
    # a low-rail subdivision duplicates the join value; the subsequence
    # must pick the rail element (largest index per value)
    W = decorate(window(4), {"insert": [{"between": [[0, 0], [0, 1]], "id": "b"}]})
    a, b = W.rail(0, 0), W.rail(1, 0)
    up, down = natural_chains(W)
    bdec = dec_elem(W, "b")
    assert bdec in up
    ladder = extract_ladder(W, a, b, up, down)
    assert bdec not in ladder.up_selected
    assert ladder.up_selected == tuple(W.rail(0, j) for j in range(1, 5))
    assert bdec not in ladder.elements


def test_extract_decorated_skips_subdivision():
    W = decorate(window(3), {"insert": [{"between": [[0, 1], [0, 2]], "id": "s"}]})
    a, b = W.rail(0, 0), W.rail(1, 0)
    up, down = natural_chains(W)
    ladder = extract_ladder(W, a, b, up, down)
    assert dec_elem(W, "s") not in ladder.elements
    members = sorted(ladder.elements)
    sub, subset = W.lattice.restrict(members)
    assert find_isomorphism(sub, two_by_chain(len(members) // 2)) is not None


def test_extract_requires_cover_and_chains():
    W = window(2)
    with pytest.raises(NotACover):
        extract_ladder(W, W.rail(0, 0), W.rail(1, 1), [], [])
    with pytest.raises(ChainExhausted):
        extract_ladder(W, W.rail(0, 0), W.rail(1, 0), [], [])


def test_extract_sd_invariant_holds():
    W = window(4)
    a, b = W.rail(0, 0), W.rail(1, 0)
    up, down = natural_chains(W)
    ladder = extract_ladder(W, a, b, up, down)
    L = W.lattice
    for idx, elem in enumerate(ladder.up_selected, start=1):
        base = L.join(elem, ladder.coords[(0, idx - 1)])
        assert L.meet(base, b) == a  # (a'_{n} + (0,n-1)) * (1,0) = (0,0)


# -- splitting -------------------------------------------------------------------


def test_split_undecorated():
    W = window(3)
    report = ladder_split(W)
    assert report.side_a == tuple(range(7))
    assert report.side_b == tuple(range(7, 14))
    assert report.prop1_holds
    assert report.stable
    assert report.prop2_band == ()


def test_split_upper_subdivision():
    W = decorate(window(3), {"insert": [{"between": [[1, 0], [1, 1]], "id": "x"}]})
    report = ladder_split(W)
    x = dec_elem(W, "x")
    assert x in report.side_b
    assert report.prop1_holds
    assert report.prop2_band == (("x", 1, 1),)
    assert report.stable


def test_split_lower_subdivision():
    W = decorate(window(3), {"insert": [{"between": [[0, -1], [0, 0]], "id": "s"}]})
    report = ladder_split(W)
    assert dec_elem(W, "s") in report.side_a
    assert report.prop1_holds and report.stable


def test_split_sides_are_sublattices():
    specs = [
        {"insert": [{"case": 1, "at": 0}]},
        {"insert": [{"case": 2, "at": -1}]},
        {"insert": [{"case": 3, "at": 1}]},
        {"insert": [{"between": [[1, -2], [1, -1]], "id": "u"}]},
    ]
    for spec in specs:
        W = decorate(window(3), spec)
        report = ladder_split(W)
        L = W.lattice
        for part in (report.side_a, report.side_b):
            members = set(part)
            for x in members:
                for y in members:
                    assert L.join(x, y) in members
                    assert L.meet(x, y) in members


def test_split_rejects_whitman_violation():
    # (1,0) < x < (1,2) makes (1,0) doubly reducible, defeating (W)
    W = decorate(window(3), {"insert": [{"between": [[1, 0], [1, 2]], "id": "x"}]})
    assert W.lattice.doubly_reducibles()
    assert not whitman_w(W.lattice).verdict
    with pytest.raises(SplitObstruction) as info:
        ladder_split(W)
    assert info.value.reason == "whitman-fails"


def test_split_rejects_sd_violation():
    # a diagonal between the rails breaks join-semidistributivity
    W = decorate(window(3), {"insert": [{"between": [[0, 0], [1, 1]], "id": "d"}]})
    with pytest.raises(SplitObstruction) as info:
        ladder_split(W)
    assert info.value.reason == "semidistributivity-fails"


def test_prime_interval_exclusion_scan_clean():
    for spec in (
        {"insert": []},
        {"insert": [{"case": 2, "at": 0}]},
        {"insert": [{"between": [[0, 1], [0, 2]], "id": "s"}]},
    ):
        W = decorate(window(3), spec)
        up, down = natural_chains(W)
        ladder = extract_ladder(W, W.rail(0, 0), W.rail(1, 0), up, down)
        assert prime_interval_exclusion_scan(W, ladder) == []


def test_split_report_json():
    W = decorate(window(3), {"insert": [{"case": 1, "at": 0}]})
    payload = ladder_split(W).to_json_dict()
    assert set(payload) == {
        "window_radius",
        "H",
        "A",
        "B",
        "prop1_holds",
        "prop1_witnesses",
        "prop2_band",
        "stable",
    }
    assert payload["window_radius"] == 3


def test_decorate_sequentially_with_cross_round_reference():
    W1 = decorate(window(3), {"insert": [{"between": [[0, 0], [0, 1]], "id": "s"}]})
    W2 = decorate(W1, {"insert": [{"between": [[1, 0], [1, 1]], "id": "t", "gt": ["s"]}]})
    L = W2.lattice
    s, t = dec_elem(W2, "s"), dec_elem(W2, "t")
    assert L.le(s, t)
    # one-pass application of the combined spec gives the same lattice
    combined = decorate(window(3), list(W2.spec))
    assert (combined.lattice.leq == L.leq).all()


def test_decorate_rejects_id_reuse_and_bad_anchor_shape():
    W1 = decorate(window(2), {"insert": [{"between": [[0, 0], [0, 1]], "id": "s"}]})
    with pytest.raises(BadAttachment):
        decorate(W1, {"insert": [{"between": [[1, 0], [1, 1]], "id": "s"}]})
    with pytest.raises(BadAttachment):
        decorate(window(2), {"insert": [{"between": [3, [0, 1]]}]})


def test_decorate_auto_ids_do_not_collide_across_rounds():
    W1 = decorate(window(2), {"insert": [{"between": [[0, 0], [0, 1]]}]})
    W2 = decorate(W1, {"insert": [{"between": [[1, 0], [1, 1]]}]})
    assert len({d.ident for d in W2.decorations}) == 2


def test_split_off_center_cover():
    W = window(4)
    a, b = W.rail(0, 1), W.rail(1, 1)
    report = ladder_split(W, a=a, b=b)
    assert set(report.side_a) | set(report.side_b) == set(range(W.n))
    assert W.rail(0, 1) in report.side_a and W.rail(1, 1) in report.side_b
    assert report.prop1_holds


def test_split_radius_one_with_decoration():
    W = decorate(window(1), {"insert": [{"between": [[0, 0], [0, 1]], "id": "s"}]})
    report = ladder_split(W)
    assert report.stable
    assert dec_elem(W, "s") in report.side_a
