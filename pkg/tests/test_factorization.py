import random

from hypothesis import given, settings, strategies as st
import pytest

from braidcat.braid import BraidWord, block_sum, normal_form, project
from braidcat.factorization import (
    FactorizationInstance,
    FactorizationObject,
    InstanceC,
    check_block_lcm_lemma,
    check_factorization_condition,
    check_initial,
    enumerate_factorization_objects,
    enumerate_objects_C,
    factorization_instance,
    factorization_morphism,
    identity_instance,
    instance_C,
    is_factorization_object,
    is_minimal,
    is_object_C,
    iso_from_factorization,
    iso_to_factorization,
    minimal_object,
    morphism_C,
    random_instance,
    same_component,
    slice_morphisms_C,
    slice_morphisms_factorization,
    strip_endpoints,
)
from braidcat.perm import BlockStructure, Permutation, compose, identity, in_young, transposition, young_factors

P = Permutation.parse
INST = InstanceC(identity(3), identity(2), BlockStructure((2, 1)))


def W(text, m=3):
    return BraidWord.parse(text, m)


def test_instance_validation():
    assert INST.Btilde == identity(3)
    assert InstanceC(identity(3), P("[2,1]"), BlockStructure((2, 1))).Btilde == P("[2,3,1]")
    with pytest.raises(ValueError):
        InstanceC(identity(3), identity(2), BlockStructure((1, 1)))
    with pytest.raises(ValueError):
        InstanceC(identity(3), identity(3), BlockStructure((2, 1)))


def test_is_object_examples():
    assert is_object_C(INST, W("1"))
    assert not is_object_C(INST, W("2"))
    for A in Permutation.all(3):
        for B in Permutation.all(2):
            inst = InstanceC(A, B, BlockStructure((1, 2)))
            assert is_object_C(inst, W("e")) == in_young(compose(A, inst.Btilde), inst.r)
    with pytest.raises(ValueError):
        is_object_C(INST, W("1", 2))


def test_morphism_examples():
    a = W("2 2 1")
    assert morphism_C(INST, a, a) == (BraidWord(2, ()), BraidWord(1, ()))
    assert morphism_C(INST, W("e"), W("1")) == (BraidWord(2, (1,)), BraidWord(1, ()))
    assert morphism_C(INST, W("2 2"), W("1 2 2")) == (BraidWord(2, (1,)), BraidWord(1, ()))
    assert morphism_C(INST, W("1"), W("e")) is None
    assert morphism_C(INST, W("e"), W("2 2")) is None
    with pytest.raises(ValueError):
        morphism_C(INST, W("2"), W("1"))


def test_minimal_examples():
    assert is_minimal(INST, W("e"))
    assert not is_minimal(INST, W("1"))
    assert is_minimal(INST, W("2 2"))
    assert minimal_object(INST, W("1")) == W("e")
    assert minimal_object(INST, W("1 2 2")) == W("2 2")
    assert minimal_object(INST, W("2 2")) == W("2 2")
    with pytest.raises(ValueError):
        minimal_object(INST, W("2"))


def test_component_examples():
    assert same_component(INST, W("1 2 2"), W("1 2 2"))
    assert same_component(INST, W("e"), W("1"))
    assert not same_component(INST, W("e"), W("2 2"))


def test_enumerate_examples():
    inst = InstanceC(identity(2), identity(2), BlockStructure((1, 1)))
    assert [str(w) for w in enumerate_objects_C(inst, 4)] == ["e", "1 1", "1 1 1 1"]
    assert [str(w) for w in enumerate_objects_C(INST, 0)] == ["e"]
    odd = InstanceC(P("[2,1]"), identity(2), BlockStructure((1, 1)))
    assert enumerate_objects_C(odd, 0) == []
    sizes = [len(enumerate_objects_C(INST, L)) for L in range(6)]
    assert sizes == sorted(sizes)


def test_check_initial_examples():
    cert = check_initial(INST, 4)
    assert cert.verdict
    initials = [c["initial"] for c in cert.components]
    assert "e" in initials and "2 2" in initials
    discrete = identity_instance(3, BlockStructure((1, 1, 1)))
    cert = check_initial(discrete, 4)
    assert cert.verdict and all(len(c["members"]) == 1 for c in cert.components)
    whole = identity_instance(3, BlockStructure((3,)))
    cert = check_initial(whole, 4)
    assert cert.verdict and [c["initial"] for c in cert.components] == ["e"]
    assert len(cert.components[0]["members"]) == len(enumerate_objects_C(whole, 4))


def test_zero_blocks():
    inst = InstanceC(P("[2,1,3]"), P("[3,1,2]"), BlockStructure((0, 2, 1)))
    assert check_initial(inst, 4).verdict
    for a in enumerate_objects_C(inst, 4):
        assert len(strip_endpoints(inst, a)) == 1


def test_factorization_object_examples():
    f = FactorizationInstance(identity(3), identity(2), BlockStructure((2, 1)))
    assert is_factorization_object(f, (identity(2), identity(1)), W("e"))
    assert not is_factorization_object(f, (transposition(2, 1, 2), identity(1)), W("e"))
    with pytest.raises(ValueError):
        is_factorization_object(f, (identity(1), identity(2)), W("e"))


def test_instance_transport_round_trip():
    rng = random.Random(4)
    for _ in range(30):
        inst = random_instance(rng)
        assert instance_C(factorization_instance(inst)) == inst


def test_iso_identity_object():
    inst = InstanceC(P("[3,2,1]"), P("[2,1]"), BlockStructure((2, 1)))
    g = compose(inst.A, inst.Btilde)
    assert in_young(g, inst.r)
    obj = iso_to_factorization(inst, W("e"))
    F = young_factors(g, inst.r)
    assert obj.Cs == (F[1], F[0])


def test_perturbed_object_fails():
    inst = InstanceC(P("[3,2,1]"), P("[2,1]"), BlockStructure((2, 1)))
    f = factorization_instance(inst)
    for a in enumerate_objects_C(inst, 3):
        obj = iso_to_factorization(inst, a)
        assert is_factorization_object(f, obj.Cs, a)
        k = next(i for i, C in enumerate(obj.Cs) if C.degree >= 2)
        bad = list(obj.Cs)
        bad[k] = compose(transposition(bad[k].degree, 1, 2), bad[k])
        assert not is_factorization_object(f, tuple(bad), a)
        with pytest.raises(ValueError):
            iso_from_factorization(f, FactorizationObject(tuple(bad), a))


def test_literal_block_layout_breaks_the_object_equation():
    # gamma_1 + gamma_2 laid out in the order of s does not carry objects to objects;
    # laid out in the order of N~ it does
    f = FactorizationInstance(identity(3), P("[2,1]"), BlockStructure((2, 1)))
    (src,) = [o for o in enumerate_factorization_objects(f, 2) if str(o.alpha) == "1 2"]
    gammas = (BraidWord(2, (1,)), BraidWord(1, ()))
    Cs = tuple(compose(project(g), C) for g, C in zip(gammas, src.Cs))
    literal = block_sum(gammas, f.s) * src.alpha
    assert not is_factorization_object(f, Cs, literal)
    moved = block_sum((gammas[1], gammas[0]), f.s.permuted(f.N)) * src.alpha
    assert is_factorization_object(f, Cs, moved)
    tgt = FactorizationObject(Cs, moved)
    assert factorization_morphism(f, src, tgt) == gammas


def test_block_lcm_examples():
    e2 = BraidWord(2, ())
    s1 = BraidWord(2, (1,))
    assert check_block_lcm_lemma((2, 2), (e2, e2), (e2, e2))
    assert check_block_lcm_lemma((2, 2), (s1, e2), (e2, s1))
    assert check_block_lcm_lemma((3, 0, 2), (BraidWord(3, (1, 2)), BraidWord(0, ()), s1),
                                 (BraidWord(3, (2,)), BraidWord(0, ()), e2))
    with pytest.raises(ValueError):
        check_block_lcm_lemma((2, 2), (s1,), (s1,))


def test_factorization_condition_identity():
    f = FactorizationInstance(identity(3), identity(2), BlockStructure((1, 2)))
    cert = check_factorization_condition(f, 4)
    assert cert.verdict and all(c["initial"] is not None for c in cert.components)
    assert cert.to_dict()["instance"]["transported"] == instance_C(f).to_dict()


seeds = st.integers(0, 10**6)


@settings(max_examples=25)
@given(seeds)
def test_random_instances_are_certified(seed):
    inst = random_instance(random.Random(seed))
    assert check_initial(inst, 4).verdict
    assert check_factorization_condition(factorization_instance(inst), 4).verdict


@settings(max_examples=25)
@given(seeds)
def test_minimal_object_properties(seed):
    inst = random_instance(random.Random(seed))
    for a in enumerate_objects_C(inst, 5):
        nu = minimal_object(inst, a)
        assert is_object_C(inst, nu) and is_minimal(inst, nu)
        assert morphism_C(inst, nu, a) is not None
        assert strip_endpoints(inst, a) == {normal_form(nu).key()}


@settings(max_examples=20)
@given(seeds)
def test_morphisms_respect_components_and_iso(seed):
    inst = random_instance(random.Random(seed))
    objs, morphs, escapes = slice_morphisms_C(inst, 4)
    assert not escapes
    f = factorization_instance(inst)
    fobjs, fmorphs, fescapes = slice_morphisms_factorization(f, 4)
    assert not fescapes and fobjs.keys() == objs.keys() and fmorphs.keys() == morphs.keys()
    for (ka, kb), found in morphs.items():
        assert len(found) == 1
        assert same_component(inst, objs[ka], objs[kb])
        a, b = iso_to_factorization(inst, objs[ka]), iso_to_factorization(inst, objs[kb])
        assert factorization_morphism(f, a, b) is not None
