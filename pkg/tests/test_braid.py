import itertools

from hypothesis import given, strategies as st
import pytest

from braidcat.braid import (
    BraidWord,
    ReversingError,
    _reverse,
    _starts_with,
    block_split,
    block_sum,
    cable,
    crossing_letters,
    delta,
    enumerate_elements,
    equal,
    generator,
    in_block_submonoid,
    lcm_right,
    left_divides,
    left_quotient,
    multiply,
    norm,
    normal_form,
    project,
    rev,
    right_divides,
    simple_of,
    support,
)
from braidcat.oracle import Oracle
from braidcat.perm import Permutation, block_perm, identity, transposition

from conftest import blocks, words


def W(text, m):
    return BraidWord.parse(text, m)


def test_parse():
    assert W("e", 3).letters == () and W("", 3).letters == ()
    assert str(W(" 1  2 1", 3)) == "1 2 1" and str(W("e", 2)) == "e"
    for bad in ["1,2", "a", "0", "3"]:
        with pytest.raises(ValueError):
            W(bad, 3)


def test_project_and_norm():
    assert project(W("e", 3)) == identity(3)
    assert project(W("1", 2)) == transposition(2, 1, 2)
    assert project(W("1 2", 3)) == Permutation((2, 3, 1))
    assert norm(W("e", 3)) == 0 and norm(W("1 2 1", 3)) == 3 == norm(W("2 1 2", 3))


def test_normal_form_examples():
    nf = normal_form(W("1 1", 3))
    assert [str(f) for f in nf.factors] == ["[2,1,3]", "[2,1,3]"]
    assert normal_form(W("1 2 1", 3)) == normal_form(W("2 1 2", 3))
    assert normal_form(W("e", 4)).factors == ()
    assert str(normal_form(delta(4))) == "[4,3,2,1]"


def test_equal_examples():
    assert equal(W("1 2 1", 3), W("2 1 2", 3))
    assert not equal(W("1", 3), W("2", 3))
    with pytest.raises(ValueError):
        equal(W("1", 2), W("1", 3))


def test_multiply_and_rev():
    v = W("2 1", 3)
    assert multiply(W("e", 3), v) == v
    assert rev(W("1 2", 3)) == W("2 1", 3)
    assert rev(W("e", 3)) == W("e", 3)


def test_lcm_examples():
    a = W("1 2", 4)
    assert equal(lcm_right(a, a), a) and equal(lcm_right(a, W("e", 4)), a)
    assert lcm_right(W("1", 3), W("2", 3)) == W("1 2 1", 3)
    assert equal(lcm_right(W("1", 4), W("3", 4)), W("1 3", 4))


def test_divisibility_examples():
    b = W("1 2 1", 3)
    assert left_divides(W("e", 3), b) == b
    assert equal(left_divides(W("2", 3), b), W("1 2", 3))
    assert left_divides(W("1", 3), W("2 2", 3)) is None
    assert equal(left_quotient(W("1", 3), b), W("2 1", 3))
    assert right_divides(b, b) == W("e", 3)
    assert right_divides(W("1", 3), W("2 1", 3)) == W("2", 3)
    assert right_divides(W("2", 3), W("2 1", 3)) is None
    with pytest.raises(ValueError):
        left_quotient(W("1", 3), W("2", 3))


def test_support_and_blocks():
    assert support(W("e", 3)) == frozenset()
    assert support(W("1 2 1", 3)) == {1, 2}
    s1 = W("1", 2)
    assert block_sum([W("e", 2), W("e", 2)], (2, 2)) == W("e", 4)
    assert block_sum([s1, s1], (2, 2)) == W("1 3", 4)
    assert in_block_submonoid(W("e", 4), (2, 2)) and in_block_submonoid(W("1 3", 4), (2, 2))
    assert not in_block_submonoid(W("2", 4), (2, 2))
    assert block_split(W("1 3", 4), (2, 2)) == (s1, s1)
    assert block_split(W("3 1", 4), (2, 2)) == (s1, s1)
    with pytest.raises(ValueError):
        block_split(W("2", 4), (2, 2))


def test_cable_examples():
    w = W("1 2 1", 3)
    assert cable(w, (1, 1, 1)) == w
    assert cable(W("1", 2), (2, 1)) == W("1 2", 3)
    assert crossing_letters(2, 1) == (1, 2) and crossing_letters(1, 2) == (2, 1)
    assert crossing_letters(3, 0) == () == crossing_letters(0, 3)


def test_enumerate_examples():
    assert [str(e.word()) for e in enumerate_elements(2, 3)] == ["e", "1", "1 1", "1 1 1"]
    assert len(enumerate_elements(3, 2)) == 7
    assert len(enumerate_elements(4, 0)) == 1
    # counts by norm in B_4^+ as found by the closure oracle
    oracle = Oracle(4)
    for n in range(5):
        classes = {oracle.canonical(w) for w in itertools.product((1, 2, 3), repeat=n)}
        assert sum(1 for e in enumerate_elements(4, 4) if e.norm == n) == len(classes)


def test_reversing_cap():
    with pytest.raises(ReversingError):
        _reverse((1, 2) * 20, (2, 1) * 20, cap=10)


@given(words())
def test_normal_form_is_invariant_and_left_weighted(w):
    nf = normal_form(w)
    assert nf.norm == len(w)
    assert equal(nf.word(), w)
    assert project(nf.word()) == project(w)
    assert not any(f.is_identity() for f in nf.factors)
    for s, t in zip(nf.factors, nf.factors[1:]):
        # no generator can slide from the front of t into s
        for i in range(1, w.strands):
            assert not (_starts_with(t.images, i) and s.images[i - 1] < s.images[i])


def _head(w: BraidWord) -> BraidWord:
    """Largest simple left divisor, grown one generator at a time."""
    head = BraidWord.identity(w.strands)
    grown = True
    while grown:
        grown = False
        p = project(head)
        for i in range(1, w.strands):
            if p.images[i - 1] < p.images[i]:
                candidate = head * generator(w.strands, i)
                if left_divides(candidate, w) is not None:
                    head, grown = candidate, True
                    break
    return head


@given(words(max_len=7))
def test_normal_form_matches_head_growth(w):
    factors = []
    rest = w
    while len(rest):
        h = _head(rest)
        factors.append(project(h))
        rest = left_quotient(h, rest)
    assert tuple(factors) == normal_form(w).factors


@given(words(max_strands=4, max_len=5), st.data())
def test_equal_matches_oracle(u, data):
    v = data.draw(words(strands=u.strands, max_len=5))
    oracle = Oracle(u.strands)
    assert equal(u, v) == oracle.equal(u.letters, v.letters)
    assert (left_divides(u, v) is not None) == oracle.left_divides(u.letters, v.letters)


@given(words(max_len=5), st.data())
def test_lcm_is_common_multiple(a, data):
    b = data.draw(words(strands=a.strands, max_len=5))
    L = lcm_right(a, b)
    qa, qb = left_divides(a, L), left_divides(b, L)
    assert qa is not None and qb is not None
    assert equal(a * qa, L) and equal(b * qb, L)
    assert equal(L, lcm_right(b, a))
    # every common multiple of the form a.x is a multiple of L
    x = data.draw(words(strands=a.strands, max_len=4))
    if left_divides(b, a * x) is not None:
        assert left_divides(L, a * x) is not None


@given(words(max_len=5), st.data())
def test_quotients_round_trip(a, data):
    x = data.draw(words(strands=a.strands, max_len=4))
    assert equal(left_quotient(a, a * x), x)
    assert equal(right_divides(x, a * x), a)


@given(words(max_len=5))
def test_simple_of_projection(w):
    p = project(w)
    s = simple_of(p)
    assert project(s) == p and len(s) == p.inversions()


@given(blocks(max_parts=3), st.data())
def test_block_sum_split_round_trip(r, data):
    parts = [data.draw(words(strands=s, max_len=3)) for s in r.sizes]
    w = block_sum(parts, r)
    assert in_block_submonoid(w, r)
    assert all(equal(x, y) for x, y in zip(block_split(w, r), parts))


@given(blocks(max_parts=3, max_size=2), st.data())
def test_cable_projects_to_block_perm(j, data):
    w = data.draw(words(strands=len(j), max_len=4)) if len(j) else BraidWord(0, ())
    assert project(cable(w, j)) == block_perm(project(w), j)
