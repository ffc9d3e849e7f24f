import itertools

from hypothesis import given, strategies as st
import pytest

from braidcat.braid import BraidWord, block_sum, cable, equal, multiply, project
from braidcat.operad import (
    OperadMorphism,
    OperadObject,
    check_hexagons,
    check_naturality,
    check_operad_axioms,
    check_units,
    compose_morphisms,
    gamma_morphisms,
    gamma_objects,
    hexagon_sides,
    same_morphism,
    sigma_action,
    weak_braiding,
)
from braidcat.perm import Permutation, block_perm, identity

from conftest import permutations, words

P = Permutation.parse


def obj(text):
    return OperadObject(P(text))


def test_morphism_invariant():
    f = OperadMorphism.from_source(BraidWord(2, (1,)), identity(2))
    assert f.target == obj("[2,1]")
    with pytest.raises(ValueError):
        OperadMorphism(BraidWord(2, (1,)), obj("[1,2]"), obj("[1,2]"))


def test_compose_morphisms_example():
    s1 = BraidWord(2, (1,))
    f = OperadMorphism(s1, obj("[1,2]"), obj("[2,1]"))
    g = OperadMorphism(s1, obj("[2,1]"), obj("[1,2]"))
    h = compose_morphisms(g, f)
    assert h.braid == BraidWord(2, (1, 1)) and h.source == h.target == obj("[1,2]")
    with pytest.raises(ValueError):
        compose_morphisms(f, f)


def test_sigma_action_by_identity():
    f = OperadMorphism.from_source(BraidWord(3, (1, 2)), P("[3,1,2]"))
    assert sigma_action(f, identity(3)) == f


def test_gamma_objects_examples():
    B = obj("[2,3,1]")
    assert gamma_objects(OperadObject.identity(1), [B]) == B
    A = obj("[3,1,2]")
    assert gamma_objects(A, [OperadObject.identity(j) for j in (2, 0, 1)]).perm == block_perm(A.perm, (2, 0, 1))
    assert gamma_objects(obj("[2,1]"), [OperadObject.identity(2), OperadObject.identity(1)]) == obj("[2,3,1]")
    with pytest.raises(ValueError):
        gamma_objects(A, [B])


def test_gamma_morphisms_examples():
    A, B1, B2 = obj("[2,1]"), obj("[2,1]"), obj("[1]")
    out = gamma_morphisms(OperadMorphism.identity(A), [OperadMorphism.identity(B1), OperadMorphism.identity(B2)])
    assert same_morphism(out, OperadMorphism.identity(gamma_objects(A, [B1, B2])))
    g = OperadMorphism.from_source(BraidWord(3, (2, 1)), P("[1,3,2]"))
    assert same_morphism(gamma_morphisms(OperadMorphism.identity(OperadObject.identity(1)), [g]), g)


def test_gamma_needs_source_ordering():
    # with a non-identity source the inputs must be laid out in the order A^-1 puts them;
    # the naive layout is not a morphism between the composite source and target
    f = OperadMorphism.identity(obj("[2,1]"))
    g1 = OperadMorphism.from_source(BraidWord(2, (1,)), P("[1,2]"))
    g2 = OperadMorphism.identity(OperadObject.identity(1))
    good = gamma_morphisms(f, [g1, g2])
    naive = multiply(cable(f.braid, (2, 1)), block_sum([g1.braid, g2.braid], (2, 1)))
    assert good.braid == BraidWord(3, (2,))
    assert compose_target(naive, good.source) != good.target.perm


def compose_target(braid, source):
    from braidcat.perm import compose

    return compose(project(braid), source.perm)


def test_weak_braiding_examples():
    assert str(weak_braiding(2, 1)) == "1 2"
    assert str(weak_braiding(1, 2)) == "2 1"
    assert all(check_units(m) for m in range(5))
    assert check_naturality(BraidWord(0, ()), BraidWord(0, ()))
    assert check_naturality(BraidWord(2, (1,)), BraidWord(1, ()))
    lhs, rhs = hexagon_sides(1, 1, 1)[0]
    assert str(lhs) == "2 1" and equal(lhs, rhs)
    with pytest.raises(ValueError):
        weak_braiding(-1, 2)


def test_weak_braiding_projection():
    swap = P("[2,1]")
    for m, n in itertools.product(range(5), repeat=2):
        assert project(weak_braiding(m, n)) == block_perm(swap, (m, n))


def test_hexagons_small():
    assert all(check_hexagons(m, n, p) for m, n, p in itertools.product(range(4), repeat=3))


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_naturality_random(m, n, data):
    a = data.draw(words(strands=m, max_len=4)) if m else BraidWord(0, ())
    b = data.draw(words(strands=n, max_len=4)) if n else BraidWord(0, ())
    assert check_naturality(a, b)


@given(st.data())
def test_gamma_is_a_morphism(data):
    k = data.draw(st.integers(0, 3))
    f = OperadMorphism.from_source(data.draw(words(strands=k, max_len=3)) if k else BraidWord(0, ()),
                                   data.draw(permutations(degree=k)))
    gs = []
    for _ in range(k):
        j = data.draw(st.integers(0, 3))
        w = data.draw(words(strands=j, max_len=3)) if j else BraidWord(0, ())
        gs.append(OperadMorphism.from_source(w, data.draw(permutations(degree=j))))
    out = gamma_morphisms(f, gs)
    assert out.arity == sum(g.arity for g in gs)


def test_axioms_small_bounds():
    rep = check_operad_axioms(2, 2, 1, seed=3, samples=200)
    assert rep.passed
    assert {x["law"] for x in rep.witnesses["laws"]} >= {"objects.associativity", "morphisms.functoriality"}


def test_axioms_report_is_seeded():
    a = check_operad_axioms(2, 1, 1, seed=5, samples=50, limit=10)
    b = check_operad_axioms(2, 1, 1, seed=5, samples=50, limit=10)
    a.elapsed_ms = b.elapsed_ms = 0
    assert a.to_json() == b.to_json()
    assert any(x["mode"] == "sampled" for x in a.witnesses["laws"])
