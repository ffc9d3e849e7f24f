"""The poset categories C(A, B, r), their minimal objects, and the factorization categories.

Objects of C(A, B, r) are positive braids alpha on m strands with
p(alpha) A B~ in the Young subgroup of r, where B~ = B(r_1..r_n).  A morphism
alpha -> beta is a block braid gamma = gamma_1 + ... + gamma_n (block layout r)
with gamma alpha = beta.  Everything here runs on norm-bounded slices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Sequence

from .braid import (
    BraidElement,
    BraidWord,
    block_split,
    block_sum,
    enumerate_elements,
    equal,
    generator,
    in_block_submonoid,
    lcm_right,
    left_divides,
    normal_form,
    project,
    right_divides,
)
from .perm import (
    BlockStructure,
    Permutation,
    block_perm,
    compose,
    direct_sum,
    identity,
    in_young,
    inverse,
    young_factors,
)


@dataclass(frozen=True)
class InstanceC:
    A: Permutation
    B: Permutation
    r: BlockStructure

    def __post_init__(self) -> None:
        if not isinstance(self.r, BlockStructure):
            object.__setattr__(self, "r", BlockStructure(tuple(self.r)))
        if self.A.degree != self.r.total:
            raise ValueError(f"A has degree {self.A.degree} but the blocks total {self.r.total}")
        if self.B.degree != len(self.r):
            raise ValueError(f"B has degree {self.B.degree} but there are {len(self.r)} blocks")

    @property
    def m(self) -> int:
        return self.A.degree

    @property
    def Btilde(self) -> Permutation:
        return block_perm(self.B, self.r)

    def to_dict(self) -> dict[str, Any]:
        return {"m": self.m, "A": str(self.A), "B": str(self.B), "r": str(self.r)}


@dataclass(frozen=True)
class FactorizationInstance:
    M: Permutation
    N: Permutation
    s: BlockStructure

    def __post_init__(self) -> None:
        if not isinstance(self.s, BlockStructure):
            object.__setattr__(self, "s", BlockStructure(tuple(self.s)))
        if self.M.degree != self.s.total:
            raise ValueError(f"M has degree {self.M.degree} but the blocks total {self.s.total}")
        if self.N.degree != len(self.s):
            raise ValueError(f"N has degree {self.N.degree} but there are {len(self.s)} blocks")

    @property
    def m(self) -> int:
        return self.M.degree

    @property
    def Ntilde(self) -> Permutation:
        return block_perm(self.N, self.s)

    def to_dict(self) -> dict[str, Any]:
        return {"m": self.m, "M": str(self.M), "N": str(self.N), "s": str(self.s)}


@dataclass(frozen=True)
class FactorizationObject:
    Cs: tuple[Permutation, ...]
    alpha: BraidWord


@dataclass
class ComponentCertificate:
    instance: dict[str, Any]
    norm_bound: int
    components: list[dict[str, Any]] = field(default_factory=list)
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return not self.failures and all(c["verdict"] for c in self.components)

    def to_dict(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "norm_bound": self.norm_bound,
            "components": self.components,
            "failures": self.failures,
            "verdict": self.verdict,
        }


def _canon(w: BraidWord) -> BraidWord:
    return normal_form(w).word()


def _check_strands(inst: InstanceC, w: BraidWord) -> None:
    if w.strands != inst.m:
        raise ValueError(f"braid on {w.strands} strands, instance has m = {inst.m}")


def is_object_C(inst: InstanceC, alpha: BraidWord) -> bool:
    _check_strands(inst, alpha)
    return in_young(compose(compose(project(alpha), inst.A), inst.Btilde), inst.r)


def _require_object(inst: InstanceC, alpha: BraidWord) -> None:
    if not is_object_C(inst, alpha):
        raise ValueError(f"{alpha} is not an object of C for {inst.to_dict()}")


def morphism_C(inst: InstanceC, alpha: BraidWord, beta: BraidWord) -> tuple[BraidWord, ...] | None:
    """The block components of the unique morphism alpha -> beta, if there is one."""
    _require_object(inst, alpha)
    _require_object(inst, beta)
    gamma = right_divides(alpha, beta)
    if gamma is None or not in_block_submonoid(gamma, inst.r):
        return None
    return block_split(gamma, inst.r)


def _interior_quotients(inst: InstanceC, alpha: BraidWord) -> list[BraidWord]:
    out = []
    for i in inst.r.interior():
        q = left_divides(generator(inst.m, i), alpha)
        if q is not None:
            out.append(q)
    return out


def is_minimal(inst: InstanceC, alpha: BraidWord) -> bool:
    _require_object(inst, alpha)
    return not any(left_divides(generator(inst.m, i), alpha) is not None for i in inst.r.interior())


def minimal_object(inst: InstanceC, alpha: BraidWord) -> BraidWord:
    """Strip interior generators from the left, lowest index first, until none divides."""
    _require_object(inst, alpha)
    current = alpha
    while True:
        for i in inst.r.interior():
            q = left_divides(generator(inst.m, i), current)
            if q is not None:
                current = q
                break
        else:
            return _canon(current)


def strip_endpoints(inst: InstanceC, alpha: BraidWord) -> set[tuple]:
    """Normal-form keys of every braid reachable by some maximal stripping sequence."""
    _require_object(inst, alpha)
    memo: dict[tuple, frozenset] = {}

    def visit(w: BraidWord) -> frozenset:
        key = normal_form(w).key()
        if key not in memo:
            qs = _interior_quotients(inst, w)
            if not qs:
                memo[key] = frozenset([key])
            else:
                memo[key] = frozenset().union(*(visit(q) for q in qs))
        return memo[key]

    return set(visit(alpha))


def same_component(inst: InstanceC, alpha: BraidWord, beta: BraidWord) -> bool:
    return equal(minimal_object(inst, alpha), minimal_object(inst, beta))


@lru_cache(maxsize=32)
def _elements(m: int, bound: int) -> tuple[BraidElement, ...]:
    return tuple(enumerate_elements(m, bound))


def enumerate_objects_C(inst: InstanceC, L: int) -> list[BraidWord]:
    """Objects of norm <= L, one normal-form word per element, by norm then normal form."""
    if L < 0:
        raise ValueError("norm bound must be non-negative")
    return [w for w in (el.word() for el in _elements(inst.m, L)) if is_object_C(inst, w)]


def block_elements(r: BlockStructure, bound: int) -> list[BraidWord]:
    """Normal-form words of every element of the block submonoid of norm <= bound."""
    return [w for w in (el.word() for el in _elements(r.total, bound)) if in_block_submonoid(w, r)]


def slice_morphisms_C(inst: InstanceC, L: int):
    """Every morphism between objects of norm <= L, found by enumerating block braids.

    Returns (objects keyed by normal form, {(alpha key, beta key): [block parts, ...]},
    escapes) where escapes lists gamma.alpha products that are not objects.  The
    enumeration is exhaustive for the slice: gamma.alpha = beta forces
    norm(gamma) = norm(beta) - norm(alpha).
    """
    objects = {normal_form(w).key(): w for w in enumerate_objects_C(inst, L)}
    gammas = block_elements(inst.r, L)
    morphs: dict[tuple[tuple, tuple], list[tuple[BraidWord, ...]]] = {}
    escapes = []
    for a_key, alpha in objects.items():
        room = L - len(alpha)
        for g in gammas:
            if len(g) > room:
                break
            b_key = normal_form(g * alpha).key()
            if b_key not in objects:
                escapes.append({"alpha": str(alpha), "gamma": str(g)})
                continue
            morphs.setdefault((a_key, b_key), []).append(block_split(g, inst.r))
    return objects, morphs, escapes


def check_initial(inst: InstanceC, L: int) -> ComponentCertificate:
    cert = ComponentCertificate(inst.to_dict(), L)
    keys, morphs, escapes = slice_morphisms_C(inst, L)
    cert.failures.extend({"kind": "not_closed", **e} for e in escapes)
    for (a_key, b_key), found in sorted(morphs.items()):
        if len(found) > 1:
            cert.failures.append({"kind": "parallel_morphisms", "alpha": str(keys[a_key]),
                                  "beta": str(keys[b_key]), "count": len(found)})

    groups: dict[tuple, list[BraidWord]] = {}
    for w in keys.values():
        groups.setdefault(normal_form(minimal_object(inst, w)).key(), []).append(w)
    for nu_key in sorted(groups):
        members = groups[nu_key]
        nu = keys.get(nu_key)
        problems = []
        if nu is None:
            problems.append("minimal object missing from slice")
        else:
            if not is_minimal(inst, nu):
                problems.append("minimal object is not minimal")
            for beta in members:
                present = morphism_C(inst, nu, beta) is not None
                if not present:
                    problems.append(f"no morphism to {beta}")
                if present != ((nu_key, normal_form(beta).key()) in morphs):
                    problems.append(f"morphism test disagrees with enumeration for {beta}")
        cert.components.append({
            "initial": str(nu) if nu is not None else None,
            "members": [str(w) for w in members],
            "verdict": not problems,
            "problems": problems,
        })
    return cert


# --- factorization categories ------------------------------------------------------


def is_factorization_object(finst: FactorizationInstance, Cs: Sequence[Permutation], alpha: BraidWord) -> bool:
    if alpha.strands != finst.m:
        raise ValueError(f"braid on {alpha.strands} strands, instance has m = {finst.m}")
    if len(Cs) != len(finst.s) or any(C.degree != s for C, s in zip(Cs, finst.s.sizes)):
        raise ValueError("the degrees of the C_i must match the block sizes s")
    return compose(project(alpha), finst.M) == compose(finst.Ntilde, direct_sum(Cs))


def factorization_instance(inst: InstanceC) -> FactorizationInstance:
    """The instance (A, B^-1, r_{B^-1(1)}, ..., r_{B^-1(n)}) isomorphic to C(A, B, r)."""
    return FactorizationInstance(inst.A, inverse(inst.B), inst.r.permuted(inst.B))


def instance_C(finst: FactorizationInstance) -> InstanceC:
    """Inverse of :func:`factorization_instance`."""
    return InstanceC(finst.M, inverse(finst.N), finst.s.permuted(finst.N))


def iso_to_factorization(inst: InstanceC, alpha: BraidWord) -> FactorizationObject:
    _require_object(inst, alpha)
    g = compose(compose(project(alpha), inst.A), inst.Btilde)
    F = young_factors(g, inst.r)
    Binv = inverse(inst.B)
    Cs = tuple(F[Binv(i) - 1] for i in range(1, inst.B.degree + 1))
    return FactorizationObject(Cs, alpha)


def iso_from_factorization(finst: FactorizationInstance, obj: FactorizationObject) -> BraidWord:
    if not is_factorization_object(finst, obj.Cs, obj.alpha):
        raise ValueError("not an object of the factorization category")
    return obj.alpha


def factorization_morphism(
    finst: FactorizationInstance, source: FactorizationObject, target: FactorizationObject
) -> tuple[BraidWord, ...] | None:
    """The gamma_i (gamma_i on s_i strands) of a morphism source -> target, if one exists.

    The block braid acting on alpha places gamma_i in slot N(i), the slot that
    block i of the C-decomposition occupies after N~, and the C_i transform
    as C_i' = p(gamma_i) C_i.
    """
    for obj in (source, target):
        if not is_factorization_object(finst, obj.Cs, obj.alpha):
            raise ValueError("not an object of the factorization category")
    layout = finst.s.permuted(finst.N)
    gamma = right_divides(source.alpha, target.alpha)
    if gamma is None or not in_block_submonoid(gamma, layout):
        return None
    parts = block_split(gamma, layout)
    gammas = tuple(parts[finst.N(i) - 1] for i in range(1, finst.N.degree + 1))
    for g, C, C2 in zip(gammas, source.Cs, target.Cs):
        if compose(project(g), C) != C2:
            return None
    return gammas


def enumerate_factorization_objects(finst: FactorizationInstance, L: int) -> list[FactorizationObject]:
    """Objects with norm(alpha) <= L; the C_i are read off the equation, which fixes them."""
    if L < 0:
        raise ValueError("norm bound must be non-negative")
    out = []
    Ninv = inverse(finst.Ntilde)
    for el in _elements(finst.m, L):
        alpha = el.word()
        g = compose(compose(Ninv, project(alpha)), finst.M)
        if in_young(g, finst.s):
            out.append(FactorizationObject(young_factors(g, finst.s), alpha))
    return out


def slice_morphisms_factorization(finst: FactorizationInstance, L: int):
    """Every morphism of the factorization category between objects of norm <= L.

    Returns (objects keyed by the normal form of alpha, {(key, key): [gammas, ...]}, escapes).
    """
    objects = {normal_form(o.alpha).key(): o for o in enumerate_factorization_objects(finst, L)}
    layout = finst.s.permuted(finst.N)
    gammas = block_elements(layout, L)
    morphs: dict[tuple[tuple, tuple], list[tuple[BraidWord, ...]]] = {}
    escapes = []
    for a_key, obj in objects.items():
        room = L - len(obj.alpha)
        for g in gammas:
            if len(g) > room:
                break
            parts = block_split(g, layout)
            gs = tuple(parts[finst.N(i) - 1] for i in range(1, finst.N.degree + 1))
            b_key = normal_form(g * obj.alpha).key()
            target = objects.get(b_key)
            Cs = tuple(compose(project(x), C) for x, C in zip(gs, obj.Cs))
            if target is None or target.Cs != Cs:
                escapes.append({"alpha": str(obj.alpha), "gamma": str(g)})
                continue
            morphs.setdefault((a_key, b_key), []).append(gs)
    return objects, morphs, escapes


def check_factorization_condition(finst: FactorizationInstance, L: int) -> ComponentCertificate:
    cert = check_initial(instance_C(finst), L)
    cert.instance = {**finst.to_dict(), "transported": cert.instance}
    return cert


def check_block_lcm_lemma(
    r: BlockStructure | Sequence[int], gammas: Sequence[BraidWord], gammas2: Sequence[BraidWord]
) -> bool:
    r = r if isinstance(r, BlockStructure) else BlockStructure(tuple(r))
    if len(gammas) != len(r) or len(gammas2) != len(r):
        raise ValueError(f"need {len(r)} parts on each side")
    for g, h, size in zip(gammas, gammas2, r.sizes):
        if g.strands != size or h.strands != size:
            raise ValueError(f"part sizes must match the blocks ({r})")
    whole = lcm_right(block_sum(gammas, r), block_sum(gammas2, r))
    parts = block_sum([lcm_right(g, h) for g, h in zip(gammas, gammas2)], r)
    return equal(whole, parts)


# --- random instances --------------------------------------------------------------


def random_permutation(rng: random.Random, degree: int) -> Permutation:
    images = list(range(1, degree + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def random_word(rng: random.Random, strands: int, max_len: int) -> BraidWord:
    if strands < 2:
        return BraidWord.identity(strands)
    n = rng.randint(0, max_len)
    return BraidWord(strands, tuple(rng.randint(1, strands - 1) for _ in range(n)))


def random_instance(rng: random.Random, max_m: int = 5, max_blocks: int = 3, max_block: int = 3) -> InstanceC:
    """Blocks of size 0..max_block, redrawn until the total lies in 1..max_m."""
    while True:
        n = rng.randint(1, max_blocks)
        r = BlockStructure(tuple(rng.randint(0, max_block) for _ in range(n)))
        if 1 <= r.total <= max_m:
            break
    return InstanceC(random_permutation(rng, r.total), random_permutation(rng, n), r)


def random_block_lcm_case(rng: random.Random, max_blocks: int = 3, max_size: int = 3, max_norm: int = 3):
    n = rng.randint(1, max_blocks)
    r = BlockStructure(tuple(rng.randint(0, max_size) for _ in range(n)))
    gammas = tuple(random_word(rng, s, max_norm) for s in r.sizes)
    gammas2 = tuple(random_word(rng, s, max_norm) for s in r.sizes)
    return r, gammas, gammas2


def identity_instance(m: int, r: BlockStructure) -> InstanceC:
    return InstanceC(identity(m), identity(len(r)), r)
