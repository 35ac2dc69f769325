from latkit import chain, dual, m3, n5, two_by_chain
from latkit.jonsson import (
    _layers,
    d_sequence,
    join_primes,
    min_join_covers,
    oracle_d_layers,
    oracle_min_join_covers,
    refines,
)
from latkit.properties import is_distributive


def test_refines_examples():
    L = n5()
    # members of {p, q} each lie below a member of {q, r}
    assert refines(L, (1, 2), (2, 3))
    assert refines(L, (1, 2), (1, 2))
    assert not refines(L, (4,), (1,))


def test_min_join_covers_examples():
    M3 = m3()
    assert min_join_covers(M3, 1) == [(2, 3)]
    assert min_join_covers(M3, 4) == [(1, 2), (1, 3), (2, 3)]
    for x in range(5):
        assert min_join_covers(chain(5), x) == []
    assert min_join_covers(n5(), 3) == [(1, 2)]
    assert min_join_covers(n5(), 4) == [(1, 2)]


def test_join_primes_include_bottom(stream6):
    for L in stream6:
        assert L.bottom in join_primes(L)


def test_join_primes_are_irreducible_above_bottom(stream8):
    for L in stream8:
        ji = set(L.join_irreducibles())
        for x in join_primes(L):
            if x != L.bottom:
                assert x in ji


def test_d_sequence_m3():
    ds = d_sequence(m3())
    assert ds.d_full == (0,)
    assert ds.quadrant == "(!=,!=)"
    assert ds.dual_full == (4,)


def test_d_sequence_n5():
    ds = d_sequence(n5())
    assert ds.layers[0] == (0, 1, 2)
    assert ds.layers[1] == (0, 1, 2, 3, 4)
    assert ds.stabilized_at == 1
    assert ds.quadrant == "(=,=)"


def test_layers_monotone_and_bounded(stream7):
    for L in stream7:
        ds = d_sequence(L)
        for small, big in zip(ds.layers, ds.layers[1:]):
            assert set(small) <= set(big)
        assert ds.stabilized_at <= L.n
        assert ds.d_full == ds.layers[-1]


def test_dual_consistency(stream6):
    for L in stream6:
        ds = d_sequence(L)
        flipped = d_sequence(dual(L))
        assert ds.dual_full == flipped.d_full
        assert ds.d_full == flipped.dual_full


def test_distributive_quadrant(stream8):
    for L in stream8:
        if is_distributive(L).verdict:
            ds = d_sequence(L)
            assert ds.quadrant == "(=,=)"
            assert ds.d_full == tuple(range(L.n))
            assert ds.dual_full == tuple(range(L.n))


def test_min_covers_match_subset_oracle(stream7):
    for L in stream7:
        for x in range(L.n):
            assert min_join_covers(L, x) == oracle_min_join_covers(L, x)


def test_layers_match_subset_oracle(stream7):
    for L in stream7:
        fast = [frozenset(layer) for layer in _layers(L)]
        slow = [frozenset(layer) for layer in oracle_d_layers(L)]
        assert fast == slow


def test_quadrants_cover_all_four(stream8):
    seen = {d_sequence(L).quadrant for L in stream8}
    assert seen == {"(=,=)", "(=,!=)", "(!=,=)", "(!=,!=)"}


def test_json_shape():
    payload = d_sequence(two_by_chain(3)).to_json_dict()
    assert set(payload) == {
        "layers",
        "stabilized_at",
        "d_full",
        "dual_layers",
        "dual_stabilized_at",
        "dual_full",
        "quadrant",
    }
