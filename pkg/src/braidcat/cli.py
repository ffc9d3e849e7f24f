"""Command-line interface.

Exit codes: 0 pass, 1 a check came out false (a witness is printed),
2 malformed or inconsistent input.
"""

from __future__ import annotations

import functools
import itertools
import sys
import time
from pathlib import Path

import click

from . import __version__
from .braid import (
    BraidWord,
    enumerate_elements,
    equal,
    lcm_right,
    left_divides,
    normal_form,
    project,
    right_divides,
    support,
)
from .factorization import (
    FactorizationInstance,
    InstanceC,
    check_factorization_condition,
    check_initial,
    factorization_instance,
    is_object_C,
    minimal_object,
    morphism_C,
    iso_to_factorization,
)
from .operad import (
    OperadMorphism,
    OperadObject,
    check_hexagons,
    check_naturality,
    check_operad_axioms,
    gamma_morphisms,
    gamma_objects,
    weak_braiding,
)
from .perm import BlockStructure, Permutation
from .report import VerificationReport, verdict
from .suites import SCALES, block_lcm_suite, verify_all


class PermType(click.ParamType):
    name = "permutation"

    def convert(self, value, param, ctx):
        if isinstance(value, Permutation):
            return value
        try:
            return Permutation.parse(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class BlocksType(click.ParamType):
    name = "sizes"

    def convert(self, value, param, ctx):
        if isinstance(value, BlockStructure):
            return value
        try:
            return BlockStructure.parse(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


PERM = PermType()
BLOCKS = BlocksType()


def _word(text: str | None, m: int, flag: str) -> BraidWord:
    if text is None:
        raise click.UsageError(f"missing {flag}")
    try:
        return BraidWord.parse(text, m)
    except ValueError as exc:
        raise click.UsageError(f"{flag}: {exc}") from None


def guarded(fn):
    """Turn library ValueErrors into usage errors (exit 2)."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from None

    return wrapper


def emit(report: VerificationReport, as_json: bool, human: str) -> None:
    if as_json:
        click.echo(report.to_json(), nl=False)
    else:
        click.echo(human)
    if not report.passed:
        if not as_json:
            click.echo(f"witness: {report.witnesses}", err=True)
        sys.exit(1)


def _report(command: str, instance: dict, witnesses, ok: bool = True, bounds=None, seed=None, start=None):
    elapsed = int((time.perf_counter() - start) * 1000) if start is not None else 0
    return VerificationReport(command=command, instance=instance, verdict=verdict(ok), witnesses=witnesses,
                              bounds=bounds or {}, seed=seed, elapsed_ms=elapsed)


json_option = click.option("--json", "as_json", is_flag=True, help="Print a JSON report.")


@click.group()
@click.version_option(__version__, prog_name="braidcat")
def main() -> None:
    """Positive braids, the braid Cat-operad, and its factorization categories."""


# --- braid -----------------------------------------------------------------------


@main.group()
def braid() -> None:
    """Arithmetic in the positive braid monoid."""


def braid_options(fn):
    fn = click.option("--m", "m", type=click.IntRange(min=0), required=True, help="Number of strands.")(fn)
    fn = click.option("--w1", default=None, help="First word, e.g. '1 2 1' or 'e'.")(fn)
    fn = click.option("--w2", default=None, help="Second word.")(fn)
    return json_option(fn)


@braid.command("nf")
@braid_options
def braid_nf(m, w1, w2, as_json):
    """Left-greedy normal form of W1."""
    w = _word(w1, m, "--w1")
    nf = normal_form(w)
    rep = _report("braid nf", {"m": m, "w1": str(w)},
                  {"factors": [str(f) for f in nf.factors], "word": str(nf.word())})
    emit(rep, as_json, str(nf))


@braid.command("eq")
@braid_options
def braid_eq(m, w1, w2, as_json):
    """Whether W1 and W2 are the same positive braid."""
    u, v = _word(w1, m, "--w1"), _word(w2, m, "--w2")
    same = equal(u, v)
    rep = _report("braid eq", {"m": m, "w1": str(u), "w2": str(v)}, {"equal": same})
    emit(rep, as_json, "equal" if same else "not equal")


@braid.command("lcm")
@braid_options
@guarded
def braid_lcm(m, w1, w2, as_json):
    """Right least common multiple of W1 and W2."""
    u, v = _word(w1, m, "--w1"), _word(w2, m, "--w2")
    L = lcm_right(u, v)
    rep = _report("braid lcm", {"m": m, "w1": str(u), "w2": str(v)}, {"lcm": str(L)})
    emit(rep, as_json, str(L))


@braid.command("divides")
@braid_options
@click.option("--side", type=click.Choice(["left", "right"]), default="left", show_default=True)
@guarded
def braid_divides(m, w1, w2, as_json, side):
    """Whether W1 divides W2 on the given side; prints the quotient."""
    u, v = _word(w1, m, "--w1"), _word(w2, m, "--w2")
    q = left_divides(u, v) if side == "left" else right_divides(u, v)
    rep = _report("braid divides", {"m": m, "w1": str(u), "w2": str(v), "side": side},
                  {"divides": q is not None, "quotient": None if q is None else str(q)})
    emit(rep, as_json, "does not divide" if q is None else str(q))


@braid.command("support")
@braid_options
def braid_support(m, w1, w2, as_json):
    """Generators used by W1."""
    w = _word(w1, m, "--w1")
    sup = sorted(support(w))
    rep = _report("braid support", {"m": m, "w1": str(w)}, {"support": sup})
    emit(rep, as_json, " ".join(map(str, sup)) or "none")


@braid.command("project")
@braid_options
def braid_project(m, w1, w2, as_json):
    """Underlying permutation of W1."""
    w = _word(w1, m, "--w1")
    p = project(w)
    rep = _report("braid project", {"m": m, "w1": str(w)}, {"permutation": str(p)})
    emit(rep, as_json, str(p))


# --- operad ----------------------------------------------------------------------


@main.group()
def operad() -> None:
    """The Cat-operad of positive braids and the weak braiding."""


@operad.command("gamma")
@click.option("--A", "A", type=PERM, required=True, help="Outer object, e.g. '[2,1]'.")
@click.option("--sizes", type=BLOCKS, default=None, help="Arities of identity inputs, e.g. '2,1'.")
@click.option("--input", "inputs", type=PERM, multiple=True, help="Input object; repeat once per slot.")
@click.option("--braid", "outer", default=None, help="Outer braid with source A; makes this a morphism.")
@click.option("--input-braid", "input_braids", multiple=True, help="Braid of each input morphism, in order.")
@json_option
@guarded
def operad_gamma(A, sizes, inputs, outer, input_braids, as_json):
    """Operad composition of objects, or of morphisms when --braid is given."""
    if sizes is not None and inputs:
        raise click.UsageError("give either --sizes or --input, not both")
    if sizes is not None:
        ins = [OperadObject.identity(k) for k in sizes.sizes]
    else:
        ins = [OperadObject(p) for p in inputs]
    if len(ins) != A.degree:
        raise click.UsageError(f"A has arity {A.degree} but {len(ins)} inputs were given")
    instance = {"A": str(A), "inputs": [str(x) for x in ins]}
    if outer is None and not input_braids:
        out = gamma_objects(OperadObject(A), ins)
        emit(_report("operad gamma", instance, {"object": str(out)}), as_json, str(out))
        return
    if input_braids and len(input_braids) != len(ins):
        raise click.UsageError("give one --input-braid per input")
    f = OperadMorphism.from_source(_word(outer or "e", A.degree, "--braid"), A)
    words = input_braids or ["e"] * len(ins)
    gs = [OperadMorphism.from_source(_word(w, x.arity, "--input-braid"), x) for w, x in zip(words, ins)]
    out = gamma_morphisms(f, gs)
    instance.update({"braid": str(f.braid), "input_braids": [str(g.braid) for g in gs]})
    rep = _report("operad gamma", instance,
                  {"braid": str(out.braid), "source": str(out.source), "target": str(out.target)})
    emit(rep, as_json, str(out))


@operad.command("braiding")
@click.option("--m", "m", type=click.IntRange(min=0), required=True)
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@json_option
def operad_braiding(m, n, as_json):
    """The weak braiding b_{m,n} as a word."""
    b = weak_braiding(m, n)
    rep = _report("operad braiding", {"m": m, "n": n}, {"braid": str(b), "permutation": str(project(b))})
    emit(rep, as_json, str(b))


@operad.command("check")
@click.argument("what", type=click.Choice(["naturality", "hexagons", "axioms"]))
@click.option("--max", "max_", type=click.IntRange(min=0), default=3, show_default=True,
              help="Largest block size (naturality, hexagons) or arity (axioms).")
@click.option("--norm", type=click.IntRange(min=0), default=None,
              help="Norm bound for braids [naturality 3, axioms 2].")
@click.option("--max-size", type=click.IntRange(min=0), default=2, show_default=True,
              help="Largest input arity (axioms).")
@click.option("--samples", type=click.IntRange(min=1), default=2000, show_default=True)
@click.option("--seed", type=int, default=1, show_default=True)
@json_option
def operad_check(what, max_, norm, max_size, samples, seed, as_json):
    """Check naturality, the hexagon identities, or the operad axioms within bounds."""
    start = time.perf_counter()
    if what == "axioms":
        rep = check_operad_axioms(max_, max_size, 2 if norm is None else norm, seed=seed, samples=samples)
        laws = rep.witnesses["laws"]
        lines = [f"{x['law']}: {x['mode']} {x['cases']} cases, {x['failures']} failures" for x in laws]
        emit(rep, as_json, "\n".join(lines + [rep.verdict]))
        return
    failures, cases = [], 0
    if what == "naturality":
        norm = 3 if norm is None else norm
        elements = {k: [el.word() for el in enumerate_elements(k, norm)] for k in range(max_ + 1)}
        for m, n in itertools.product(range(max_ + 1), repeat=2):
            for a in elements[m]:
                for b in elements[n]:
                    cases += 1
                    if not check_naturality(a, b):
                        failures.append({"alpha": str(a), "beta": str(b)})
        bounds = {"max": max_, "norm": norm}
    else:
        for m, n, p in itertools.product(range(max_ + 1), repeat=3):
            cases += 1
            if not check_hexagons(m, n, p):
                failures.append({"m": m, "n": n, "p": p})
        bounds = {"max": max_}
    ok = not failures
    rep = _report(f"operad check {what}", {}, {"cases": cases, "failures": failures[:5]} if not ok else {"cases": cases},
                  ok=ok, bounds=bounds, start=start)
    emit(rep, as_json, f"{rep.verdict} ({cases} cases)")


# --- factor ----------------------------------------------------------------------


@main.group()
def factor() -> None:
    """The poset categories C(A, B, r) and the factorization categories."""


def instance_options(fn):
    fn = click.option("--m", "m", type=click.IntRange(min=0), default=None, help="Strands; checked against A.")(fn)
    fn = click.option("--A", "A", type=PERM, required=True)(fn)
    fn = click.option("--B", "B", type=PERM, required=True)(fn)
    fn = click.option("--r", "r", type=BLOCKS, required=True, help="Block sizes, e.g. '2,1'.")(fn)
    return json_option(fn)


def _instance(m, A, B, r) -> InstanceC:
    if m is not None and A.degree != m:
        raise click.UsageError(f"A has degree {A.degree}, not m = {m}")
    try:
        return InstanceC(A, B, r)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None


def _object(inst: InstanceC, text: str | None, flag: str) -> BraidWord:
    w = _word(text, inst.m, flag)
    if not is_object_C(inst, w):
        raise click.UsageError(f"{flag} {w} is not an object of C")
    return w


@factor.command("minimal")
@instance_options
@click.option("--alpha", required=True)
def factor_minimal(m, A, B, r, as_json, alpha):
    """The minimal object below ALPHA."""
    inst = _instance(m, A, B, r)
    a = _object(inst, alpha, "--alpha")
    nu = minimal_object(inst, a)
    rep = _report("factor minimal", {**inst.to_dict(), "alpha": str(a)}, {"minimal": str(nu)})
    emit(rep, as_json, str(nu))


@factor.command("component")
@instance_options
@click.option("--alpha", required=True)
@click.option("--beta", required=True)
def factor_component(m, A, B, r, as_json, alpha, beta):
    """Whether ALPHA and BETA lie in one connected component."""
    inst = _instance(m, A, B, r)
    a, b = _object(inst, alpha, "--alpha"), _object(inst, beta, "--beta")
    na, nb = minimal_object(inst, a), minimal_object(inst, b)
    same = equal(na, nb)
    rep = _report("factor component", {**inst.to_dict(), "alpha": str(a), "beta": str(b)},
                  {"same_component": same, "minimal_alpha": str(na), "minimal_beta": str(nb)})
    emit(rep, as_json, f"{'same component' if same else 'different components'} ({na} / {nb})")


@factor.command("morphism")
@instance_options
@click.option("--alpha", required=True)
@click.option("--beta", required=True)
def factor_morphism(m, A, B, r, as_json, alpha, beta):
    """The block components of the morphism ALPHA -> BETA, if any."""
    inst = _instance(m, A, B, r)
    a, b = _object(inst, alpha, "--alpha"), _object(inst, beta, "--beta")
    parts = morphism_C(inst, a, b)
    rep = _report("factor morphism", {**inst.to_dict(), "alpha": str(a), "beta": str(b)},
                  {"morphism": None if parts is None else [str(p) for p in parts]})
    emit(rep, as_json, "no morphism" if parts is None else " | ".join(map(str, parts)))


@factor.command("initial")
@instance_options
@click.option("--norm-bound", type=click.IntRange(min=0), default=4, show_default=True)
def factor_initial(m, A, B, r, as_json, norm_bound):
    """Certify that every component of the norm-bounded slice has an initial object."""
    start = time.perf_counter()
    inst = _instance(m, A, B, r)
    cert = check_initial(inst, norm_bound)
    rep = _report("factor initial", inst.to_dict(), cert.to_dict(), ok=cert.verdict,
                  bounds={"norm_bound": norm_bound}, start=start)
    lines = [f"initial {c['initial']}: {len(c['members'])} objects, {'ok' if c['verdict'] else 'FAIL'}"
             for c in cert.components]
    emit(rep, as_json, "\n".join(lines + [rep.verdict]))


@factor.command("iso")
@instance_options
@click.option("--alpha", required=True)
def factor_iso(m, A, B, r, as_json, alpha):
    """The object of the isomorphic factorization category corresponding to ALPHA."""
    inst = _instance(m, A, B, r)
    a = _object(inst, alpha, "--alpha")
    finst = factorization_instance(inst)
    obj = iso_to_factorization(inst, a)
    w = {"factorization_instance": finst.to_dict(), "Cs": [str(C) for C in obj.Cs], "alpha": str(a)}
    rep = _report("factor iso", {**inst.to_dict(), "alpha": str(a)}, w)
    human = f"M={finst.M} N={finst.N} s={finst.s}  C=({', '.join(w['Cs'])})  alpha={a}"
    emit(rep, as_json, human)


@factor.command("lcm-lemma")
@click.option("--trials", type=click.IntRange(min=0), default=200, show_default=True)
@click.option("--seed", type=int, default=1, show_default=True)
@json_option
def factor_lcm_lemma(trials, seed, as_json):
    """Random checks that lcm commutes with block sums."""
    start = time.perf_counter()
    res = block_lcm_suite(seed, trials=trials)
    rep = _report("factor lcm-lemma", {"trials": trials}, res.to_dict(), ok=res.passed,
                  bounds=res.details, seed=seed, start=start)
    emit(rep, as_json, f"{rep.verdict} ({res.checks} trials, {res.failures} failures)")


@factor.command("condition")
@click.option("--M", "M", type=PERM, required=True)
@click.option("--N", "N", type=PERM, required=True)
@click.option("--s", "s", type=BLOCKS, required=True)
@click.option("--norm-bound", type=click.IntRange(min=0), default=4, show_default=True)
@json_option
@guarded
def factor_condition(M, N, s, norm_bound, as_json):
    """Certify initial objects in the factorization category C(M, N, s) on a slice."""
    start = time.perf_counter()
    finst = FactorizationInstance(M, N, s)
    cert = check_factorization_condition(finst, norm_bound)
    rep = _report("factor condition", finst.to_dict(), cert.to_dict(), ok=cert.verdict,
                  bounds={"norm_bound": norm_bound}, start=start)
    lines = [f"initial {c['initial']}: {len(c['members'])} objects, {'ok' if c['verdict'] else 'FAIL'}"
             for c in cert.components]
    emit(rep, as_json, "\n".join(lines + [rep.verdict]))


# --- verify-all ------------------------------------------------------------------


@main.command("verify-all")
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--scale", type=click.Choice(SCALES), default="default", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the report here instead of stdout.")
def verify_all_cmd(seed, scale, out):
    """Run every acceptance suite and write one aggregate JSON report."""

    def progress(res):
        click.echo(f"[{res.criterion:2d}] {res.name}: {'pass' if res.passed else 'FAIL'} "
                   f"({res.checks} checks, {res.elapsed_ms} ms)", err=True)

    rep = verify_all(seed, scale, progress=progress)
    if out is None:
        click.echo(rep.to_json(), nl=False)
    else:
        out.write_text(rep.to_json())
        click.echo(f"{rep.verdict}: report written to {out}", err=True)
    sys.exit(0 if rep.passed else 1)


if __name__ == "__main__":
    main()
