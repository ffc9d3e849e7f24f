"""The Cat-operad Br+ of positive braids and the weak braiding on B+.

Br+(k) has the permutations of k letters as objects; a morphism A -> B is a
positive braid a on k strands with p(a) A = B.  The operad structure map on
objects is ``A(j_1..j_k) o (B_1 + ... + B_k)``.  On morphisms the input
braids are laid side by side in the order the blocks occupy after the source
permutation of the outer morphism, then the outer braid is cabled over them:

    gamma(f; g_1..g_k) = cable(f, r) . (g_{A^-1(1)} + ... + g_{A^-1(k)})

where A is the source of f and r_t = arity(g_{A^-1(t)}).  This is the only
ordering for which the result is a morphism between the images of the
sources and targets.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .braid import (
    BraidWord,
    block_sum,
    cable,
    crossing_letters,
    enumerate_elements,
    equal,
    multiply,
    project,
)
from .perm import (
    BlockStructure,
    Permutation,
    block_perm,
    compose,
    direct_sum,
    identity,
    inverse,
)
from .report import VerificationReport, verdict

GAMMA_CONVENTION = (
    "gamma(f; g_1..g_k) = cable(f, (j_{A^-1(1)},..,j_{A^-1(k)})) . "
    "block_sum(g_{A^-1(1)},..,g_{A^-1(k)}) with A the source of f"
)

EXHAUSTIVE_LIMIT = 10**5


@dataclass(frozen=True)
class OperadObject:
    perm: Permutation

    @property
    def arity(self) -> int:
        return self.perm.degree

    def __str__(self) -> str:
        return str(self.perm)

    @classmethod
    def identity(cls, k: int) -> OperadObject:
        return cls(identity(k))


@dataclass(frozen=True)
class OperadMorphism:
    braid: BraidWord
    source: OperadObject
    target: OperadObject

    def __post_init__(self) -> None:
        k = self.source.arity
        if self.braid.strands != k or self.target.arity != k:
            raise ValueError(
                f"arity mismatch: braid on {self.braid.strands} strands, {self.source} -> {self.target}"
            )
        if compose(project(self.braid), self.source.perm) != self.target.perm:
            raise ValueError(f"p({self.braid}) {self.source} != {self.target}")

    @property
    def arity(self) -> int:
        return self.source.arity

    def __str__(self) -> str:
        return f"{self.braid}: {self.source} -> {self.target}"

    @classmethod
    def from_source(cls, braid: BraidWord, source: OperadObject | Permutation) -> OperadMorphism:
        if isinstance(source, Permutation):
            source = OperadObject(source)
        return cls(braid, source, OperadObject(compose(project(braid), source.perm)))

    @classmethod
    def identity(cls, obj: OperadObject) -> OperadMorphism:
        return cls(BraidWord.identity(obj.arity), obj, obj)


def same_morphism(f: OperadMorphism, g: OperadMorphism) -> bool:
    return f.source == g.source and f.target == g.target and equal(f.braid, g.braid)


def compose_morphisms(second: OperadMorphism, first: OperadMorphism) -> OperadMorphism:
    if first.target != second.source:
        raise ValueError(f"cannot compose: {first.target} is not {second.source}")
    return OperadMorphism(multiply(second.braid, first.braid), first.source, second.target)


def sigma_action(f: OperadMorphism | OperadObject, g: Permutation):
    """Right action of the symmetric group: A -> A g on objects, braids unchanged."""
    if isinstance(f, OperadObject):
        return OperadObject(compose(f.perm, g))
    return OperadMorphism(f.braid, sigma_action(f.source, g), sigma_action(f.target, g))


def gamma_objects(A: OperadObject, Bs: Sequence[OperadObject]) -> OperadObject:
    if len(Bs) != A.arity:
        raise ValueError(f"operation of arity {A.arity} given {len(Bs)} inputs")
    sizes = BlockStructure(tuple(B.arity for B in Bs))
    return OperadObject(compose(block_perm(A.perm, sizes), direct_sum(B.perm for B in Bs)))


def gamma_morphisms(f: OperadMorphism, gs: Sequence[OperadMorphism]) -> OperadMorphism:
    if len(gs) != f.arity:
        raise ValueError(f"operation of arity {f.arity} given {len(gs)} inputs")
    order = inverse(f.source.perm)
    placed = [gs[order(t) - 1] for t in range(1, f.arity + 1)]
    sizes = BlockStructure(tuple(g.arity for g in placed))
    braid = multiply(cable(f.braid, sizes), block_sum([g.braid for g in placed], sizes))
    return OperadMorphism(
        braid,
        gamma_objects(f.source, [g.source for g in gs]),
        gamma_objects(f.target, [g.target for g in gs]),
    )


def weak_braiding(m: int, n: int) -> BraidWord:
    """The braid taking the first m strands over the last n."""
    if m < 0 or n < 0:
        raise ValueError("weak_braiding needs non-negative sizes")
    return BraidWord(m + n, crossing_letters(m, n))


def _id(k: int) -> BraidWord:
    return BraidWord.identity(k)


def check_naturality(alpha: BraidWord, beta: BraidWord) -> bool:
    m, n = alpha.strands, beta.strands
    b = weak_braiding(m, n)
    lhs = multiply(b, block_sum([alpha, beta], (m, n)))
    rhs = multiply(block_sum([beta, alpha], (n, m)), b)
    return equal(lhs, rhs)


def hexagon_sides(m: int, n: int, p: int) -> list[tuple[BraidWord, BraidWord]]:
    first = (
        weak_braiding(m, n + p),
        multiply(
            block_sum([_id(n), weak_braiding(m, p)], (n, m + p)),
            block_sum([weak_braiding(m, n), _id(p)], (m + n, p)),
        ),
    )
    second = (
        weak_braiding(m + n, p),
        multiply(
            block_sum([weak_braiding(m, p), _id(n)], (m + p, n)),
            block_sum([_id(m), weak_braiding(n, p)], (m, n + p)),
        ),
    )
    return [first, second]


def check_hexagons(m: int, n: int, p: int) -> bool:
    return all(equal(lhs, rhs) for lhs, rhs in hexagon_sides(m, n, p))


def check_units(m: int) -> bool:
    return weak_braiding(m, 0) == _id(m) and weak_braiding(0, m) == _id(m)


# --- operad axioms --------------------------------------------------------------


class _Universe:
    """Objects and bounded-norm morphisms of Br+(k), enumerated once per arity."""

    def __init__(self, max_norm: int):
        self.max_norm = max_norm
        self._objects: dict[int, list[OperadObject]] = {}
        self._morphisms: dict[int, list[OperadMorphism]] = {}
        self._braids: dict[int, list[BraidWord]] = {}

    def objects(self, k: int) -> list[OperadObject]:
        if k not in self._objects:
            self._objects[k] = [OperadObject(p) for p in Permutation.all(k)]
        return self._objects[k]

    def braids(self, k: int) -> list[BraidWord]:
        if k not in self._braids:
            self._braids[k] = [el.word() for el in enumerate_elements(k, self.max_norm)]
        return self._braids[k]

    def morphisms(self, k: int) -> list[OperadMorphism]:
        if k not in self._morphisms:
            self._morphisms[k] = [
                OperadMorphism.from_source(w, A) for w in self.braids(k) for A in self.objects(k)
            ]
        return self._morphisms[k]

    def morphisms_from(self, obj: OperadObject) -> list[OperadMorphism]:
        return [OperadMorphism.from_source(w, obj) for w in self.braids(obj.arity)]


@dataclass
class _Law:
    name: str
    exhaustive: Callable[[], Iterator[tuple]]
    sample: Callable[[random.Random], tuple]
    check: Callable[..., bool]
    describe: Callable[..., dict]


def _seq(xs: Iterable) -> list[str]:
    return [str(x) for x in xs]


def _laws(U: _Universe, max_arity: int, max_size: int) -> list[_Law]:
    arities = range(max_arity + 1)
    sizes = range(max_size + 1)

    def obj_tuples(ks: Iterable[int], pool: Callable[[int], list]) -> Iterator[tuple]:
        for ks_ in ks:
            yield from itertools.product(*(pool(k) for k in ks_))

    def rand_k(rng: random.Random, rng_vals: range) -> int:
        return rng.choice(list(rng_vals))

    # objects -------------------------------------------------------------
    def obj_unit_cases():
        for k in arities:
            for A in U.objects(k):
                yield (A,)

    def obj_unit(A):
        one = OperadObject.identity(1)
        return gamma_objects(one, [A]) == A and gamma_objects(A, [one] * A.arity) == A

    def obj_assoc_cases():
        for k in arities:
            for A in U.objects(k):
                for js in itertools.product(sizes, repeat=k):
                    for Bs in itertools.product(*(U.objects(j) for j in js)):
                        inner = sum(js)
                        for ls in itertools.product(sizes, repeat=inner):
                            for Cs in itertools.product(*(U.objects(l) for l in ls)):
                                yield (A, Bs, Cs)

    def obj_assoc_sample(rng):
        k = rand_k(rng, arities)
        A = rng.choice(U.objects(k))
        Bs = tuple(rng.choice(U.objects(rand_k(rng, sizes))) for _ in range(k))
        Cs = tuple(rng.choice(U.objects(rand_k(rng, sizes))) for _ in range(sum(B.arity for B in Bs)))
        return (A, Bs, Cs)

    def obj_assoc(A, Bs, Cs):
        lhs = gamma_objects(gamma_objects(A, Bs), Cs)
        groups, pos = [], 0
        for B in Bs:
            groups.append(gamma_objects(B, Cs[pos : pos + B.arity]))
            pos += B.arity
        return lhs == gamma_objects(A, groups)

    def obj_equiv_top_cases():
        for k in arities:
            for A in U.objects(k):
                for g in Permutation.all(k):
                    for js in itertools.product(sizes, repeat=k):
                        for Bs in itertools.product(*(U.objects(j) for j in js)):
                            yield (A, g, Bs)

    def obj_equiv_top_sample(rng):
        k = rand_k(rng, arities)
        return (
            rng.choice(U.objects(k)),
            rng.choice(U.objects(k)).perm,
            tuple(rng.choice(U.objects(rand_k(rng, sizes))) for _ in range(k)),
        )

    def obj_equiv_top(A, g, Bs):
        ginv = inverse(g)
        moved = [Bs[ginv(t) - 1] for t in range(1, A.arity + 1)]
        j = BlockStructure(tuple(B.arity for B in Bs))
        rhs = compose(gamma_objects(A, moved).perm, block_perm(g, j))
        return gamma_objects(sigma_action(A, g), Bs).perm == rhs

    def obj_equiv_inputs_cases():
        for k in arities:
            for A in U.objects(k):
                for js in itertools.product(sizes, repeat=k):
                    for Bs in itertools.product(*(U.objects(j) for j in js)):
                        for hs in itertools.product(*(Permutation.all(j) for j in js)):
                            yield (A, Bs, hs)

    def obj_equiv_inputs_sample(rng):
        k = rand_k(rng, arities)
        Bs = tuple(rng.choice(U.objects(rand_k(rng, sizes))) for _ in range(k))
        return (rng.choice(U.objects(k)), Bs, tuple(rng.choice(U.objects(B.arity)).perm for B in Bs))

    def obj_equiv_inputs(A, Bs, hs):
        lhs = gamma_objects(A, [sigma_action(B, h) for B, h in zip(Bs, hs)])
        return lhs.perm == compose(gamma_objects(A, Bs).perm, direct_sum(hs))

    # morphisms -----------------------------------------------------------
    def mor_unit_cases():
        for k in arities:
            for f in U.morphisms(k):
                yield (f,)

    def mor_unit(f):
        one = OperadMorphism.identity(OperadObject.identity(1))
        return same_morphism(gamma_morphisms(one, [f]), f) and same_morphism(
            gamma_morphisms(f, [one] * f.arity), f
        )

    def mor_inputs(rng, k):
        return tuple(rng.choice(U.morphisms(rand_k(rng, sizes))) for _ in range(k))

    def mor_assoc_cases():
        for k in arities:
            for f in U.morphisms(k):
                for js in itertools.product(sizes, repeat=k):
                    for gs in itertools.product(*(U.morphisms(j) for j in js)):
                        for ls in itertools.product(sizes, repeat=sum(js)):
                            for hs in itertools.product(*(U.morphisms(l) for l in ls)):
                                yield (f, gs, hs)

    def mor_assoc_sample(rng):
        f = rng.choice(U.morphisms(rand_k(rng, arities)))
        gs = mor_inputs(rng, f.arity)
        return (f, gs, mor_inputs(rng, sum(g.arity for g in gs)))

    def mor_assoc(f, gs, hs):
        lhs = gamma_morphisms(gamma_morphisms(f, gs), hs)
        groups, pos = [], 0
        for g in gs:
            groups.append(gamma_morphisms(g, hs[pos : pos + g.arity]))
            pos += g.arity
        return same_morphism(lhs, gamma_morphisms(f, groups))

    def mor_equiv_top_cases():
        for k in arities:
            for f in U.morphisms(k):
                for g in Permutation.all(k):
                    for js in itertools.product(sizes, repeat=k):
                        for gs in itertools.product(*(U.morphisms(j) for j in js)):
                            yield (f, g, gs)

    def mor_equiv_top_sample(rng):
        f = rng.choice(U.morphisms(rand_k(rng, arities)))
        return (f, rng.choice(U.objects(f.arity)).perm, mor_inputs(rng, f.arity))

    def mor_equiv_top(f, g, gs):
        ginv = inverse(g)
        moved = [gs[ginv(t) - 1] for t in range(1, f.arity + 1)]
        j = BlockStructure(tuple(x.arity for x in gs))
        rhs = sigma_action(gamma_morphisms(f, moved), block_perm(g, j))
        return same_morphism(gamma_morphisms(sigma_action(f, g), gs), rhs)

    def mor_equiv_inputs_cases():
        for k in arities:
            for f in U.morphisms(k):
                for js in itertools.product(sizes, repeat=k):
                    for gs in itertools.product(*(U.morphisms(j) for j in js)):
                        for hs in itertools.product(*(Permutation.all(j) for j in js)):
                            yield (f, gs, hs)

    def mor_equiv_inputs_sample(rng):
        f = rng.choice(U.morphisms(rand_k(rng, arities)))
        gs = mor_inputs(rng, f.arity)
        return (f, gs, tuple(rng.choice(U.objects(g.arity)).perm for g in gs))

    def mor_equiv_inputs(f, gs, hs):
        lhs = gamma_morphisms(f, [sigma_action(g, h) for g, h in zip(gs, hs)])
        return same_morphism(lhs, sigma_action(gamma_morphisms(f, gs), direct_sum(hs)))

    def mor_functor_cases():
        for k in arities:
            for f1 in U.morphisms(k):
                for f2 in U.morphisms_from(f1.target):
                    for js in itertools.product(sizes, repeat=k):
                        for g1s in itertools.product(*(U.morphisms(j) for j in js)):
                            for g2s in itertools.product(*(U.morphisms_from(g.target) for g in g1s)):
                                yield (f1, f2, g1s, g2s)

    def mor_functor_sample(rng):
        f1 = rng.choice(U.morphisms(rand_k(rng, arities)))
        f2 = rng.choice(U.morphisms_from(f1.target))
        g1s = mor_inputs(rng, f1.arity)
        return (f1, f2, g1s, tuple(rng.choice(U.morphisms_from(g.target)) for g in g1s))

    def mor_functor(f1, f2, g1s, g2s):
        lhs = gamma_morphisms(compose_morphisms(f2, f1), [compose_morphisms(b, a) for a, b in zip(g1s, g2s)])
        rhs = compose_morphisms(gamma_morphisms(f2, g2s), gamma_morphisms(f1, g1s))
        return same_morphism(lhs, rhs)

    def mor_identity_cases():
        for k in arities:
            for A in U.objects(k):
                for js in itertools.product(sizes, repeat=k):
                    for Bs in itertools.product(*(U.objects(j) for j in js)):
                        yield (A, Bs)

    def mor_identity_sample(rng):
        k = rand_k(rng, arities)
        return (rng.choice(U.objects(k)), tuple(rng.choice(U.objects(rand_k(rng, sizes))) for _ in range(k)))

    def mor_identity(A, Bs):
        lhs = gamma_morphisms(OperadMorphism.identity(A), [OperadMorphism.identity(B) for B in Bs])
        return same_morphism(lhs, OperadMorphism.identity(gamma_objects(A, Bs)))

    def d_obj_assoc(A, Bs, Cs):
        return {"A": str(A), "B": _seq(Bs), "C": _seq(Cs)}

    return [
        _Law("objects.unit", obj_unit_cases, lambda rng: (rng.choice(U.objects(rand_k(rng, arities))),), obj_unit,
             lambda A: {"A": str(A)}),
        _Law("objects.associativity", obj_assoc_cases, obj_assoc_sample, obj_assoc, d_obj_assoc),
        _Law("objects.equivariance_top", obj_equiv_top_cases, obj_equiv_top_sample, obj_equiv_top,
             lambda A, g, Bs: {"A": str(A), "g": str(g), "B": _seq(Bs)}),
        _Law("objects.equivariance_inputs", obj_equiv_inputs_cases, obj_equiv_inputs_sample, obj_equiv_inputs,
             lambda A, Bs, hs: {"A": str(A), "B": _seq(Bs), "h": _seq(hs)}),
        _Law("morphisms.unit", mor_unit_cases, lambda rng: (rng.choice(U.morphisms(rand_k(rng, arities))),),
             mor_unit, lambda f: {"f": str(f)}),
        _Law("morphisms.associativity", mor_assoc_cases, mor_assoc_sample, mor_assoc,
             lambda f, gs, hs: {"f": str(f), "g": _seq(gs), "h": _seq(hs)}),
        _Law("morphisms.equivariance_top", mor_equiv_top_cases, mor_equiv_top_sample, mor_equiv_top,
             lambda f, g, gs: {"f": str(f), "perm": str(g), "g": _seq(gs)}),
        _Law("morphisms.equivariance_inputs", mor_equiv_inputs_cases, mor_equiv_inputs_sample, mor_equiv_inputs,
             lambda f, gs, hs: {"f": str(f), "g": _seq(gs), "h": _seq(hs)}),
        _Law("morphisms.functoriality", mor_functor_cases, mor_functor_sample, mor_functor,
             lambda f1, f2, g1s, g2s: {"f1": str(f1), "f2": str(f2), "g1": _seq(g1s), "g2": _seq(g2s)}),
        _Law("morphisms.identities", mor_identity_cases, mor_identity_sample, mor_identity,
             lambda A, Bs: {"A": str(A), "B": _seq(Bs)}),
    ]


def _run_law(law: _Law, rng: random.Random, samples: int, limit: int) -> dict:
    cases = list(itertools.islice(law.exhaustive(), limit + 1))
    if len(cases) > limit:
        mode = "sampled"
        cases = [law.sample(rng) for _ in range(samples)]
    else:
        mode = "exhaustive"
    failures = []
    for case in cases:
        try:
            ok = law.check(*case)
            error = None
        except ValueError as exc:
            ok, error = False, str(exc)
        if not ok:
            witness = law.describe(*case)
            if error:
                witness["error"] = error
            failures.append(witness)
    return {"law": law.name, "mode": mode, "cases": len(cases), "failures": len(failures),
            "counterexamples": failures[:5]}


def check_operad_axioms(
    max_arity: int,
    max_size: int,
    max_norm: int,
    *,
    seed: int = 0,
    samples: int = 2000,
    limit: int = EXHAUSTIVE_LIMIT,
) -> VerificationReport:
    """Unit, associativity, equivariance and functoriality of gamma within the bounds.

    Each law runs exhaustively when it has at most ``limit`` cases, otherwise
    on ``samples`` seeded random cases.
    """
    if min(max_arity, max_size, max_norm) < 0:
        raise ValueError("bounds must be non-negative")
    start = time.perf_counter()
    rng = random.Random(seed)
    U = _Universe(max_norm)
    results = [_run_law(law, rng, samples, limit) for law in _laws(U, max_arity, max_size)]
    failed = [r for r in results if r["failures"]]
    return VerificationReport(
        command="operad check axioms",
        instance={"gamma_convention": GAMMA_CONVENTION},
        verdict=verdict(not failed),
        witnesses={"laws": results},
        bounds={"max_arity": max_arity, "max_size": max_size, "max_norm": max_norm,
                "samples": samples, "exhaustive_limit": limit},
        seed=seed,
        elapsed_ms=int((time.perf_counter() - start) * 1000),
    )
