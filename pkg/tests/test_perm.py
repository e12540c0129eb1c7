import pytest
from hypothesis import given, settings

from flagmaj.perm import (
    GroupKind,
    InvalidWindow,
    NotInD,
    RankMismatch,
    RankTooLarge,
    SignedPermutation,
    StatKind,
    compose,
    coxeter_length_table_bfs,
    descent_data_A,
    descent_set_B,
    doubled_window,
    enumerate_group,
    flag_major,
    flag_major_alt,
    flag_major_D,
    generator,
    identity,
    inverse,
    iter_windows_unordered,
    length_B,
    length_B_doubled,
    make,
    negatives,
    parse_window,
    stat_value,
    window_inv,
)
from flagmaj.qseries import LaurentPolynomial

from .oracles import (
    all_signed,
    bfs_lengths,
    brute_inverse,
    length_descents,
    mul,
    same_rank,
    signed_perms,
)

SAMPLE = make([-3, 1, -6, 2, -4, -5])


def test_make_accepts_sample_window():
    assert SAMPLE.n == 6
    assert tuple(SAMPLE) == (-3, 1, -6, 2, -4, -5)
    assert make([1, 2, 3]) == identity(3)
    assert make([]).n == 0


@pytest.mark.parametrize("window, reason", [
    ([1, 1], "duplicate"),
    ([1, -1], "duplicate"),
    ([0, 1], "zero"),
    ([3, 1], "range"),
])
def test_make_rejects(window, reason):
    with pytest.raises(InvalidWindow) as exc:
        make(window)
    assert exc.value.reason == reason


def test_window_text_round_trip():
    assert str(SAMPLE) == "-3,1,-6,2,-4,-5"
    assert parse_window("-3,1,-6,2,-4,-5") == SAMPLE
    assert parse_window(str(SAMPLE)) == SAMPLE
    with pytest.raises(InvalidWindow):
        parse_window("1,x")


@pytest.mark.parametrize("sigma, expected", [
    ([2, -1], (-2, 1)),
    ([1, 2, 3], (1, 2, 3)),
    ([-1], (-1,)),
])
def test_inverse_examples(sigma, expected):
    assert inverse(sigma) == expected
    assert brute_inverse(tuple(sigma)) == expected


def test_compose_examples():
    assert compose([2, -1], [2, 1]) == (-1, 2)
    assert compose(SAMPLE, identity(6)) == SAMPLE
    assert compose([-1], [-1]) == (1,)
    with pytest.raises(RankMismatch):
        compose([1], [1, 2])


def test_sample_window_statistics():
    assert window_inv(SAMPLE) == 9
    assert descent_data_A(SAMPLE) == (frozenset({2, 4, 5}), 3, 11)
    assert negatives(SAMPLE) == (frozenset({1, 3, 5, 6}), 4)
    assert length_B(SAMPLE) == 27
    assert window_inv(doubled_window(SAMPLE)) == 50
    assert length_B_doubled(SAMPLE) == 27
    assert descent_set_B(SAMPLE) == frozenset({0, 2, 4, 5})
    assert flag_major(SAMPLE) == 26


@pytest.mark.parametrize("sigma, inv, desA, neg, fmaj, alt, lenB, desB", [
    ([1, 2, 3], 0, (frozenset(), 0, 0), (frozenset(), 0), 0, 0, 0, frozenset()),
    ([2, -1], 1, (frozenset({1}), 1, 1), (frozenset({2}), 1), 3, 3, 2, frozenset({1})),
    ([-2, -1], 0, (frozenset(), 0, 0), (frozenset({1, 2}), 2), 2, 4, 3, frozenset({0})),
    ([-1, 2], 0, (frozenset(), 0, 0), (frozenset({1}), 1), 1, 1, 1, frozenset({0})),
])
def test_small_statistics(sigma, inv, desA, neg, fmaj, alt, lenB, desB):
    assert window_inv(sigma) == inv
    assert descent_data_A(sigma) == desA
    assert negatives(sigma) == neg
    assert flag_major(sigma) == fmaj
    assert flag_major_alt(sigma) == alt
    assert length_B(sigma) == lenB == bfs_lengths(len(sigma))[tuple(sigma)]
    assert descent_set_B(sigma) == desB == length_descents(tuple(sigma))


def test_length_doubled_small():
    assert doubled_window([-1]) == (1, -1)
    assert length_B_doubled([-1]) == 1
    assert length_B_doubled(identity(4)) == 0


def test_flag_major_D():
    assert flag_major_D([-2, -1]) == 1
    assert flag_major_D(identity(3)) == 0
    assert flag_major_D([2, 1]) == 2
    with pytest.raises(NotInD):
        flag_major_D([-1, 2])


@pytest.mark.parametrize("n, kind, count", [
    (2, GroupKind.TYPE_B, 8),
    (2, GroupKind.TYPE_D, 4),
    (3, GroupKind.TYPE_A, 6),
    (0, GroupKind.TYPE_B, 1),
    (4, GroupKind.TYPE_B, 384),
    (4, GroupKind.TYPE_D, 192),
])
def test_enumerate_group_counts(n, kind, count):
    elems = list(enumerate_group(n, kind))
    assert len(elems) == len(set(elems)) == count
    assert elems == sorted(elems)


def test_enumerate_matches_brute_and_unordered():
    assert set(enumerate_group(4)) == set(all_signed(4)) == set(iter_windows_unordered(4))


def test_bfs_table_examples():
    assert coxeter_length_table_bfs(1) == {(1,): 0, (-1,): 1}
    table = coxeter_length_table_bfs(3)
    assert len(table) == 48
    assert all(length_B(w) == d for w, d in table.items())
    d2 = coxeter_length_table_bfs(2, GroupKind.TYPE_D)
    assert LaurentPolynomial.from_exponents(d2.values()) == LaurentPolynomial([1, 2, 1])
    with pytest.raises(RankTooLarge):
        coxeter_length_table_bfs(8)


def test_bfs_matches_independent_bfs():
    assert coxeter_length_table_bfs(4) == bfs_lengths(4)


def test_stat_lookup_and_dispatch():
    assert StatKind.lookup("len_B") is StatKind.LEN_B
    assert StatKind.lookup("FMAJ") is StatKind.FMAJ
    assert stat_value(StatKind.LEN_B_BFS, (2, -1)) == 2
    assert stat_value(StatKind.LEN_D_BFS, (-2, -1)) == coxeter_length_table_bfs(2, GroupKind.TYPE_D)[(-2, -1)]
    with pytest.raises(NotInD):
        stat_value(StatKind.LEN_D_BFS, (-1, 2))
    with pytest.raises(KeyError):
        StatKind.lookup("nope")


def test_b0_is_trivial():
    e = identity(0)
    assert all(stat_value(k, e) == 0 for k in StatKind)


# properties

@given(signed_perms())
def test_length_formulas_agree(sigma):
    assert length_B(sigma) == length_B_doubled(sigma)


@given(signed_perms(max_n=5))
def test_length_is_cayley_distance(sigma):
    assert length_B(sigma) == bfs_lengths(sigma.n)[tuple(sigma)]


@given(signed_perms(max_n=5))
def test_descent_set_by_length(sigma):
    assert descent_set_B(sigma) == length_descents(tuple(sigma))
    for i in range(sigma.n):
        shorter = length_B(compose(sigma, generator(sigma.n, i))) < length_B(sigma)
        assert (i in descent_set_B(sigma)) == shorter


@given(signed_perms())
def test_type_a_descents_drop_zero(sigma):
    assert descent_data_A(sigma)[0] == descent_set_B(sigma) - {0}


@given(signed_perms())
def test_inverse_is_involution(sigma):
    assert inverse(inverse(sigma)) == sigma
    assert compose(sigma, inverse(sigma)) == identity(sigma.n)
    assert compose(identity(sigma.n), sigma) == sigma
    assert all(sigma(-a) == -sigma(a) for a in range(1, sigma.n + 1))


@given(same_rank(3))
def test_compose_associative(triple):
    a, b, c = triple
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert compose(a, b) == mul(a, b)


@given(same_rank(2))
def test_length_parity_is_a_character(pair):
    a, b = pair
    assert (length_B(compose(a, b)) - length_B(a) - length_B(b)) % 2 == 0


@given(signed_perms())
def test_alt_major_agrees_with_at_most_one_negative(sigma):
    if negatives(sigma)[1] <= 1:
        assert flag_major_alt(sigma) == flag_major(sigma)


@settings(max_examples=50)
@given(signed_perms(min_n=1))
def test_fmaj_D_replaces_last_entry(sigma):
    if negatives(sigma)[1] % 2 == 0:
        last = abs(sigma[-1])
        assert flag_major_D(sigma) == flag_major(SignedPermutation((*sigma[:-1], last)))
