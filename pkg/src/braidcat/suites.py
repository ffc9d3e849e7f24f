"""Seeded verification suites, one per acceptance criterion, and the verify-all driver."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from . import operad
from .braid import (
    BraidWord,
    enumerate_elements,
    equal,
    in_block_submonoid,
    lcm_right,
    left_divides,
    normal_form,
    project,
    support,
)
from .factorization import (
    check_block_lcm_lemma,
    check_initial,
    enumerate_objects_C,
    factorization_instance,
    factorization_morphism,
    is_factorization_object,
    is_minimal,
    is_object_C,
    iso_from_factorization,
    iso_to_factorization,
    minimal_object,
    morphism_C,
    random_block_lcm_case,
    random_instance,
    slice_morphisms_C,
    slice_morphisms_factorization,
    strip_endpoints,
)
from .oracle import Oracle
from .perm import BlockStructure, Permutation, block_perm
from .report import VerificationReport, verdict

SCALES = ("small", "default")
MAX_COUNTEREXAMPLES = 5


@dataclass
class SuiteResult:
    criterion: int
    name: str
    checks: int = 0
    failures: int = 0
    counterexamples: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: int = 0

    def record(self, ok: bool, witness: Callable[[], dict[str, Any]]) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
                self.counterexamples.append(witness())

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "criterion": self.criterion,
            "name": self.name,
            "verdict": verdict(self.passed),
            "checks": self.checks,
            "failures": self.failures,
            "counterexamples": self.counterexamples,
            "details": self.details,
            "elapsed_ms": self.elapsed_ms,
        }


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _words(m: int, max_len: int) -> list[tuple[int, ...]]:
    letters = range(1, m)
    return [w for n in range(max_len + 1) for w in itertools.product(letters, repeat=n)]


def _txt(w: tuple[int, ...] | BraidWord) -> str:
    letters = w.letters if isinstance(w, BraidWord) else w
    return " ".join(map(str, letters)) or "e"


def _timed(fn):
    def run(*args, **kwargs) -> SuiteResult:
        start = time.perf_counter()
        res = fn(*args, **kwargs)
        res.elapsed_ms = int((time.perf_counter() - start) * 1000)
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@_timed
def word_problem_suite(seed: int = 0, scale: str = "default") -> SuiteResult:
    """equal and left_divides against the closure oracle, all words of length <= 5."""
    res = SuiteResult(1, "word_problem_oracle")
    rng = _rng(seed, res.name)
    for m in (2, 3, 4):
        words = _words(m, 5)
        oracle = Oracle(m)
        pairs = list(itertools.product(words, repeat=2))
        if m == 4 and scale == "small":
            pairs = rng.sample(pairs, 2000)
            mode = "sampled"
        else:
            mode = "exhaustive"
        res.details[f"m={m}"] = {"mode": mode, "pairs": len(pairs)}
        bw = {w: BraidWord(m, w) for w in words}
        for u, v in pairs:
            eq = equal(bw[u], bw[v])
            res.record(eq == oracle.equal(u, v), lambda: {"m": m, "op": "equal", "w1": _txt(u), "w2": _txt(v)})
            ld = left_divides(bw[u], bw[v]) is not None
            res.record(ld == oracle.left_divides(u, v),
                       lambda: {"m": m, "op": "left_divides", "w1": _txt(u), "w2": _txt(v)})
    return res


@_timed
def lcm_suite(seed: int = 0, scale: str = "default") -> SuiteResult:
    """lcm_right is a common multiple, minimal, and divides every nearby common multiple."""
    res = SuiteResult(2, "lcm_correctness")
    rng = _rng(seed, res.name)
    for m in (2, 3, 4):
        # the oracle cost on m = 4 is heavy-tailed in the lcm norm, so the small
        # scale samples shorter words there
        max_len = 3 if (m == 4 and scale == "small") else 4
        words = _words(m, max_len)
        oracle = Oracle(m)
        pairs = list(itertools.product(words, repeat=2))
        if m == 4:
            pairs = rng.sample(pairs, 1000 if scale == "default" else 100)
            mode = "sampled"
        else:
            mode = "exhaustive"
        res.details[f"m={m}"] = {"mode": mode, "pairs": len(pairs), "max_word_length": max_len}
        for a, b in pairs:
            L = lcm_right(BraidWord(m, a), BraidWord(m, b)).letters

            def witness(reason: str) -> Callable[[], dict]:
                return lambda: {"m": m, "a": _txt(a), "b": _txt(b), "lcm": _txt(L), "reason": reason}

            res.record(oracle.left_divides(a, L) and oracle.left_divides(b, L), witness("not a common multiple"))
            found = oracle.common_multiples(a, b, len(L) + 2)
            res.record(bool(found) and len(found[0]) >= len(L), witness("shorter common multiple exists"))
            res.record(all(oracle.left_divides(L, c) for c in found), witness("does not divide a common multiple"))
    return res


@_timed
def block_lcm_suite(seed: int = 0, scale: str = "default", trials: int | None = None) -> SuiteResult:
    """lcm of block sums equals the block sum of the blockwise lcms."""
    res = SuiteResult(3, "block_lcm_lemma")
    rng = _rng(seed, res.name)
    trials = trials if trials is not None else (200 if scale == "default" else 50)
    res.details = {"trials": trials, "max_blocks": 3, "max_block_size": 3, "max_part_norm": 3}
    for _ in range(trials):
        r, g1, g2 = random_block_lcm_case(rng)
        res.record(check_block_lcm_lemma(r, g1, g2),
                   lambda: {"r": str(r), "gamma": [_txt(g) for g in g1], "gamma_prime": [_txt(g) for g in g2]})
    return res


@_timed
def support_suite(seed: int = 0, scale: str = "default") -> SuiteResult:
    """Every word in a closure class uses the same generators."""
    res = SuiteResult(4, "support_invariance")
    for m in (2, 3, 4):
        oracle = Oracle(m)
        seen: set[tuple[int, ...]] = set()
        classes = 0
        for w in _words(m, 6):
            if w in seen:
                continue
            cls = oracle.closure(w)
            seen.update(cls.members)
            classes += 1
            expected = set(w)
            ok = all(set(x) == expected for x in cls.members) and support(BraidWord(m, w)) == expected
            res.record(ok, lambda: {"m": m, "word": _txt(w), "class_size": len(cls)})
        res.details[f"m={m}"] = {"classes": classes, "words": len(seen)}
    return res


@_timed
def block_product_suite(seed: int = 0, scale: str = "default") -> SuiteResult:
    """beta.alpha lies in a block submonoid iff both factors do."""
    res = SuiteResult(5, "block_product_factorization")
    for m in (1, 2, 3, 4):
        elements = [el.word() for el in enumerate_elements(m, 6)]
        structures = [
            r for parts in range(1, m + 1) for r in BlockStructure.compositions(m, parts) if 0 not in r.sizes
        ]
        pairs = 0
        for alpha in elements:
            for beta in elements:
                if len(alpha) + len(beta) > 6:
                    continue
                pairs += 1
                product = normal_form(beta * alpha).word()
                for r in structures:
                    whole = in_block_submonoid(product, r)
                    both = in_block_submonoid(alpha, r) and in_block_submonoid(beta, r)
                    res.record(whole == both, lambda: {"m": m, "r": str(r), "alpha": _txt(alpha),
                                                       "beta": _txt(beta), "product": _txt(product)})
        res.details[f"m={m}"] = {"pairs": pairs, "block_structures": len(structures)}
    return res


def _instances(seed: int, scale: str) -> list:
    rng = _rng(seed, "instances")
    return [random_instance(rng) for _ in range(50 if scale == "default" else 10)]


@_timed
def confluence_suite(seed: int = 0, scale: str = "default") -> SuiteResult:
    """Every stripping order reaches the same minimal object, which lies below alpha."""
    res = SuiteResult(6, "minimal_object_confluence")
    instances = _instances(seed, scale)
    total = 0
    for inst in instances:
        for alpha in enumerate_objects_C(inst, 6):
            total += 1
            ends = strip_endpoints(inst, alpha)
            nu = minimal_object(inst, alpha)
            ok = (
                len(ends) == 1
                and normal_form(nu).key() in ends
                and is_object_C(inst, nu)
                and is_minimal(inst, nu)
                and morphism_C(inst, nu, alpha) is not None
            )
            res.record(ok, lambda: {"instance": inst.to_dict(), "alpha": _txt(alpha), "endpoints": len(ends),
                                    "nu": _txt(nu)})
    res.details = {"instances": len(instances), "norm_bound": 6, "objects": total}
    return res


@_timed
def initial_suite(seed: int = 0, scale: str = "default") -> SuiteResult:
    """Component certificates at norm bound 5."""
    res = SuiteResult(7, "initial_objects")
    instances = _instances(seed, scale)
    components = 0
    for inst in instances:
        cert = check_initial(inst, 5)
        components += len(cert.components)
        res.record(cert.verdict, lambda: cert.to_dict())
    res.details = {"instances": len(instances), "norm_bound": 5, "components": components}
    return res


@_timed
def iso_suite(seed: int = 0, scale: str = "default") -> SuiteResult:
    """Round trip through the factorization category and matching morphism sets.

    Both slices are enumerated independently; every morphism in either slice is
    found by enumerating block braids, so comparing the two sets covers all
    ordered pairs.  The pairwise functions are run on every present pair and on
    a seeded sample of absent ones.
    """
    res = SuiteResult(8, "iso_lemma")
    rng = _rng(seed, res.name)
    instances = _instances(seed, scale)
    L = 6
    objects = morphisms = absent_checked = 0
    for inst in instances:
        finst = factorization_instance(inst)
        Binv = finst.N
        c_objs, c_morphs, c_esc = slice_morphisms_C(inst, L)
        f_objs, f_morphs, f_esc = slice_morphisms_factorization(finst, L)
        tag = inst.to_dict()
        res.record(not c_esc and not f_esc, lambda: {"instance": tag, "check": "closure", "escapes": (c_esc + f_esc)[:3]})
        res.record(c_objs.keys() == f_objs.keys(), lambda: {"instance": tag, "check": "object_sets"})
        images = {}
        for key, alpha in c_objs.items():
            objects += 1
            obj = iso_to_factorization(inst, alpha)
            images[key] = obj
            ok = (
                is_factorization_object(finst, obj.Cs, obj.alpha)
                and iso_from_factorization(finst, obj) == alpha
                and key in f_objs
                and f_objs[key].Cs == obj.Cs
            )
            res.record(ok, lambda: {"instance": tag, "alpha": _txt(alpha), "check": "round_trip"})
        res.record(c_morphs.keys() == f_morphs.keys(), lambda: {"instance": tag, "check": "morphism_sets"})
        for pair, found in c_morphs.items():
            morphisms += 1
            a, b = c_objs[pair[0]], c_objs[pair[1]]
            expected = [tuple(parts[Binv(i) - 1] for i in range(1, Binv.degree + 1)) for parts in found]
            direct_c = morphism_C(inst, a, b)
            direct_f = factorization_morphism(finst, images[pair[0]], images[pair[1]])
            ok = (
                len(found) == 1
                and f_morphs.get(pair) == expected
                and direct_c is not None
                and all(equal(x, y) for x, y in zip(direct_c, found[0]))
                and direct_f is not None
                and all(equal(x, y) for x, y in zip(direct_f, expected[0]))
            )
            res.record(ok, lambda: {"instance": tag, "alpha": _txt(a), "beta": _txt(b), "check": "morphism"})
        keys = sorted(c_objs)
        for _ in range(200 if len(keys) > 1 else 0):
            ka, kb = rng.choice(keys), rng.choice(keys)
            if (ka, kb) in c_morphs:
                continue
            absent_checked += 1
            a, b = c_objs[ka], c_objs[kb]
            ok = morphism_C(inst, a, b) is None and factorization_morphism(finst, images[ka], images[kb]) is None
            res.record(ok, lambda: {"instance": tag, "alpha": _txt(a), "beta": _txt(b), "check": "absent"})
    res.details = {"instances": len(instances), "norm_bound": L, "objects": objects, "morphisms": morphisms,
                   "absent_pairs_sampled": absent_checked}
    return res


@_timed
def weak_braiding_suite(seed: int = 0, scale: str = "default") -> SuiteResult:
    """Units, naturality, hexagons and the projection of b_{m,n}."""
    res = SuiteResult(9, "weak_braiding")
    swap = Permutation((2, 1))
    for m in range(5):
        res.record(operad.check_units(m), lambda: {"check": "units", "m": m})
    for m, n in itertools.product(range(5), repeat=2):
        ok = project(operad.weak_braiding(m, n)) == block_perm(swap, (m, n))
        res.record(ok, lambda: {"check": "projection", "m": m, "n": n})
    elements = {k: [el.word() for el in enumerate_elements(k, 3)] for k in range(4)}
    naturality = 0
    for m, n in itertools.product(range(4), repeat=2):
        for a in elements[m]:
            for b in elements[n]:
                naturality += 1
                res.record(operad.check_naturality(a, b),
                           lambda: {"check": "naturality", "alpha": _txt(a), "beta": _txt(b), "m": m, "n": n})
    for m, n, p in itertools.product(range(4), repeat=3):
        res.record(operad.check_hexagons(m, n, p), lambda: {"check": "hexagons", "m": m, "n": n, "p": p})
    res.details = {"naturality_pairs": naturality, "hexagon_triples": 64, "projection_pairs": 25}
    return res


@_timed
def operad_axioms_suite(seed: int = 0, scale: str = "default") -> SuiteResult:
    """Unit, associativity, equivariance and functoriality of gamma."""
    res = SuiteResult(10, "operad_axioms")
    samples = 2000 if scale == "default" else 300
    report = operad.check_operad_axioms(3, 2, 2, seed=seed, samples=samples)
    for law in report.witnesses["laws"]:
        res.checks += law["cases"]
        res.failures += law["failures"]
        res.counterexamples.extend(law["counterexamples"][: MAX_COUNTEREXAMPLES - len(res.counterexamples)])
    res.details = {
        "laws": {law["law"]: {"mode": law["mode"], "cases": law["cases"]} for law in report.witnesses["laws"]},
        "gamma_convention": operad.GAMMA_CONVENTION,
        **report.bounds,
    }
    return res


SUITES = (
    word_problem_suite,
    lcm_suite,
    block_lcm_suite,
    support_suite,
    block_product_suite,
    confluence_suite,
    initial_suite,
    iso_suite,
    weak_braiding_suite,
    operad_axioms_suite,
)


def verify_all(seed: int = 1, scale: str = "default", progress: Callable[[SuiteResult], None] | None = None
               ) -> VerificationReport:
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {SCALES}")
    start = time.perf_counter()
    results = []
    for suite in SUITES:
        res = suite(seed, scale)
        results.append(res)
        if progress:
            progress(res)
    failed = [r for r in results if not r.passed]
    return VerificationReport(
        command="verify-all",
        instance={"scale": scale, "suites": len(results)},
        verdict=verdict(not failed),
        witnesses={"suites": [r.to_dict() for r in results],
                   "failed": [r.criterion for r in failed]},
        bounds={"scale": scale},
        seed=seed,
        elapsed_ms=int((time.perf_counter() - start) * 1000),
    )


def strip_timing(data: Any) -> Any:
    """Drop every elapsed_ms field, for comparing reports across runs."""
    if isinstance(data, dict):
        return {k: strip_timing(v) for k, v in data.items() if k != "elapsed_ms"}
    if isinstance(data, list):
        return [strip_timing(v) for v in data]
    return data
