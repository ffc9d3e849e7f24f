"""Positive braid monoids B_m^+.

Words are stored left to right as written; the rightmost letter acts first,
matching :func:`braidcat.perm.compose`.  Equality goes through the
left-greedy normal form, whose factors are permutation braids (simple
elements) stored as their permutations.  Divisibility and right lcms use
subword reversing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .perm import BlockStructure, Permutation, identity

__all__ = [
    "BraidElement",
    "BraidWord",
    "ReversingError",
    "block_split",
    "block_sum",
    "cable",
    "crossing_letters",
    "enumerate_elements",
    "equal",
    "in_block_submonoid",
    "lcm_right",
    "left_divides",
    "left_quotient",
    "multiply",
    "norm",
    "normal_form",
    "project",
    "rev",
    "right_divides",
    "right_quotient",
    "support",
]

STEP_CAP = 10**6

_WORD_RE = re.compile(r"^\s*(e|\d+(\s+\d+)*)?\s*$")


class ReversingError(RuntimeError):
    """Subword reversing exceeded its step cap; never a legitimate outcome."""


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if self.strands < 0:
            raise ValueError(f"negative strand count {self.strands}")
        for i in letters:
            if not 1 <= i <= self.strands - 1:
                raise ValueError(f"generator sigma_{i} does not exist on {self.strands} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return multiply(self, other)

    def __str__(self) -> str:
        return " ".join(map(str, self.letters)) if self.letters else "e"

    @classmethod
    def parse(cls, text: str, strands: int) -> BraidWord:
        """Parse ``"1 2 1"``; ``"e"`` or blank is the empty word."""
        if not _WORD_RE.match(text):
            raise ValueError(f"malformed braid word {text!r}; expected e.g. '1 2 1' or 'e'")
        toks = text.split()
        if toks == ["e"]:
            toks = []
        return cls(strands, tuple(int(t) for t in toks))

    @classmethod
    def identity(cls, strands: int) -> BraidWord:
        return cls(strands, ())


def _check_same(u: BraidWord, v: BraidWord) -> None:
    if u.strands != v.strands:
        raise ValueError(f"strand mismatch: {u.strands} vs {v.strands}")


def project(w: BraidWord) -> Permutation:
    im = list(range(1, w.strands + 1))
    # p(s_1...s_k) = t_{s_1} o ... o t_{s_k}: right-multiplying by t_i swaps positions i, i+1
    for i in w.letters:
        im[i - 1], im[i] = im[i], im[i - 1]
    return Permutation(tuple(im))


def norm(w: BraidWord) -> int:
    return len(w.letters)


def multiply(u: BraidWord, v: BraidWord) -> BraidWord:
    _check_same(u, v)
    return BraidWord(u.strands, u.letters + v.letters)


def rev(w: BraidWord) -> BraidWord:
    return BraidWord(w.strands, w.letters[::-1])


def support(w: BraidWord) -> frozenset[int]:
    return frozenset(w.letters)


# --- simple elements and the left-greedy normal form -------------------------
#
# A simple element is handled as its permutation tuple p (1-based images).
# s.sigma_i stays simple iff p[i-1] < p[i]; it then swaps positions i-1, i.
# sigma_i left-divides a simple t iff value i+1 sits left of value i in t;
# removing it swaps those two values.


def _right_room(s: tuple[int, ...], i: int) -> bool:
    return s[i - 1] < s[i]


def _starts_with(t: tuple[int, ...], i: int) -> bool:
    return t.index(i) > t.index(i + 1)


def _slide(s: tuple[int, ...], t: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Move generators from the front of ``t`` onto ``s`` until (s, t) is left-weighted."""
    n = len(s)
    s_l = list(s)
    t_l = list(t)
    moved = True
    while moved:
        moved = False
        pos = [0] * (n + 1)
        for idx, v in enumerate(t_l):
            pos[v] = idx
        for i in range(1, n):
            if pos[i] > pos[i + 1] and s_l[i - 1] < s_l[i]:
                s_l[i - 1], s_l[i] = s_l[i], s_l[i - 1]
                a, b = pos[i], pos[i + 1]
                t_l[a], t_l[b] = i + 1, i
                moved = True
                break
    return tuple(s_l), tuple(t_l)


def _is_id(p: tuple[int, ...]) -> bool:
    return all(v == k for k, v in enumerate(p, 1))


def _normalize(factors: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Right-to-left sliding passes until every adjacent pair is left-weighted."""
    changed = True
    while changed:
        changed = False
        for k in range(len(factors) - 2, -1, -1):
            s, t = _slide(factors[k], factors[k + 1])
            if s != factors[k]:
                factors[k], factors[k + 1] = s, t
                changed = True
        kept = [f for f in factors if not _is_id(f)]
        if len(kept) != len(factors):
            factors = kept
            changed = True
    return factors


def _append_letter(factors: list[tuple[int, ...]], n: int, i: int) -> list[tuple[int, ...]]:
    if factors and _right_room(factors[-1], i):
        last = list(factors[-1])
        last[i - 1], last[i] = last[i], last[i - 1]
        # sigma_i absorbed into the last factor; earlier pairs may need to re-slide
        return _normalize(factors[:-1] + [tuple(last)])
    gen = list(range(1, n + 1))
    gen[i - 1], gen[i] = gen[i], gen[i - 1]
    return _normalize(factors + [tuple(gen)])


def _simple_word(p: tuple[int, ...]) -> list[int]:
    """A reduced word for the permutation braid of ``p``."""
    p_l = list(p)
    out: list[int] = []
    while True:
        for i in range(1, len(p_l)):
            if p_l[i - 1] > p_l[i]:
                p_l[i - 1], p_l[i] = p_l[i], p_l[i - 1]
                out.append(i)
                break
        else:
            break
    return out[::-1]


@dataclass(frozen=True)
class BraidElement:
    """A positive braid in left-greedy normal form."""

    strands: int
    factors: tuple[Permutation, ...] = ()

    def __str__(self) -> str:
        return ";".join(map(str, self.factors)) if self.factors else "e"

    @property
    def norm(self) -> int:
        return sum(f.inversions() for f in self.factors)

    def word(self) -> BraidWord:
        letters: list[int] = []
        for f in self.factors:
            letters.extend(_simple_word(f.images))
        return BraidWord(self.strands, tuple(letters))

    def key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(f.images for f in self.factors)

    def times_generator(self, i: int) -> BraidElement:
        if not 1 <= i <= self.strands - 1:
            raise ValueError(f"generator sigma_{i} does not exist on {self.strands} strands")
        raw = _append_letter([f.images for f in self.factors], self.strands, i)
        return BraidElement(self.strands, tuple(Permutation(f) for f in raw))


def normal_form(w: BraidWord) -> BraidElement:
    factors: list[tuple[int, ...]] = []
    for i in w.letters:
        factors = _append_letter(factors, w.strands, i)
    return BraidElement(w.strands, tuple(Permutation(f) for f in factors))


def equal(u: BraidWord, v: BraidWord) -> bool:
    _check_same(u, v)
    if len(u.letters) != len(v.letters):
        return False
    return normal_form(u) == normal_form(v)


# --- subword reversing --------------------------------------------------------


def _reverse(neg: Sequence[int], pos: Sequence[int], cap: int = STEP_CAP) -> tuple[list[int], list[int]]:
    """Reverse ``neg^-1 pos`` into ``p q^-1``; returns (p, q) as positive words."""
    w = [-x for x in reversed(neg)] + list(pos)
    steps = 0
    k = 0
    while k < len(w) - 1:
        x, y = w[k], w[k + 1]
        if not (x < 0 < y):
            k += 1
            continue
        steps += 1
        if steps > cap:
            raise ReversingError(f"subword reversing exceeded {cap} steps")
        i = -x
        if i == y:
            w[k : k + 2] = []
        elif abs(i - y) >= 2:
            w[k], w[k + 1] = y, x
        else:
            w[k : k + 2] = [y, i, -y, -i]
        k = max(k - 1, 0)
    split = next((idx for idx, v in enumerate(w) if v < 0), len(w))
    positive = w[:split]
    negative = [-v for v in reversed(w[split:])]
    return positive, negative


def lcm_right(a: BraidWord, b: BraidWord) -> BraidWord:
    _check_same(a, b)
    b_rest, _ = _reverse(a.letters, b.letters)
    return BraidWord(a.strands, a.letters + tuple(b_rest))


def left_divides(a: BraidWord, b: BraidWord) -> BraidWord | None:
    """The q with a.q = b, or None when a does not left-divide b."""
    _check_same(a, b)
    if len(a.letters) > len(b.letters):
        return None
    q, a_rest = _reverse(a.letters, b.letters)
    if a_rest:
        return None
    return BraidWord(a.strands, tuple(q))


def left_quotient(a: BraidWord, b: BraidWord) -> BraidWord:
    q = left_divides(a, b)
    if q is None:
        raise ValueError(f"{a} does not left-divide {b}")
    return q


def right_divides(a: BraidWord, b: BraidWord) -> BraidWord | None:
    """The g with g.a = b, or None when a does not right-divide b."""
    q = left_divides(rev(a), rev(b))
    return None if q is None else rev(q)


def right_quotient(a: BraidWord, b: BraidWord) -> BraidWord:
    g = right_divides(a, b)
    if g is None:
        raise ValueError(f"{a} does not right-divide {b}")
    return g


# --- block structure and cabling ----------------------------------------------


def _blocks(r: BlockStructure | Sequence[int]) -> BlockStructure:
    return r if isinstance(r, BlockStructure) else BlockStructure(tuple(r))


def block_sum(parts: Sequence[BraidWord], r: BlockStructure | Sequence[int]) -> BraidWord:
    r = _blocks(r)
    if len(parts) != len(r):
        raise ValueError(f"{len(parts)} parts for {len(r)} blocks")
    letters: list[int] = []
    for part, size, off in zip(parts, r.sizes, r.offsets()):
        if part.strands != size:
            raise ValueError(f"part on {part.strands} strands in a block of size {size}")
        letters.extend(i + off for i in part.letters)
    return BraidWord(r.total, tuple(letters))


def in_block_submonoid(w: BraidWord, r: BlockStructure | Sequence[int]) -> bool:
    r = _blocks(r)
    if w.strands != r.total:
        raise ValueError(f"word on {w.strands} strands, blocks total {r.total}")
    return not (support(w) & r.boundaries())


def block_split(w: BraidWord, r: BlockStructure | Sequence[int]) -> tuple[BraidWord, ...]:
    r = _blocks(r)
    if not in_block_submonoid(w, r):
        raise ValueError(f"{w} uses a generator on a block boundary of ({r})")
    owner = {}
    for b, (off, size) in enumerate(zip(r.offsets(), r.sizes)):
        for i in range(off + 1, off + size):
            owner[i] = (b, off)
    parts: list[list[int]] = [[] for _ in r.sizes]
    for i in w.letters:
        b, off = owner[i]
        parts[b].append(i - off)
    return tuple(BraidWord(size, tuple(p)) for size, p in zip(r.sizes, parts))


def crossing_letters(m: int, n: int) -> tuple[int, ...]:
    """Letters of (s_n...s_{m+n-1})...(s_2...s_{m+1})(s_1...s_m)."""
    out: list[int] = []
    for k in range(n, 0, -1):
        out.extend(range(k, k + m))
    return tuple(out)


def cable(w: BraidWord, j: BlockStructure | Sequence[int]) -> BraidWord:
    """Replace strand i of ``w`` by a bundle of j_i parallel strands."""
    j = _blocks(j)
    if w.strands != len(j):
        raise ValueError(f"braid on {w.strands} strands cannot be cabled by {len(j)} sizes")
    sizes = list(j.sizes)
    chunks: list[tuple[int, ...]] = []
    for i in reversed(w.letters):
        a, b = sizes[i - 1], sizes[i]
        off = sum(sizes[: i - 1])
        chunks.append(tuple(x + off for x in crossing_letters(a, b)))
        sizes[i - 1], sizes[i] = b, a
    letters = tuple(x for chunk in reversed(chunks) for x in chunk)
    return BraidWord(j.total, letters)


# --- enumeration --------------------------------------------------------------


def enumerate_elements(m: int, max_norm: int) -> list[BraidElement]:
    """All elements of B_m^+ of norm at most ``max_norm``, ordered by norm then factors."""
    if m < 0 or max_norm < 0:
        raise ValueError("strands and norm bound must be non-negative")
    level = {BraidElement(m).key(): BraidElement(m)}
    out = list(level.values())
    for _ in range(max_norm):
        nxt: dict[tuple, BraidElement] = {}
        for el in level.values():
            for i in range(1, m):
                child = el.times_generator(i)
                nxt.setdefault(child.key(), child)
        level = dict(sorted(nxt.items()))
        out.extend(level.values())
    return out


def generator(m: int, i: int) -> BraidWord:
    return BraidWord(m, (i,))


def delta(m: int) -> BraidWord:
    """The half twist, as a word."""
    rev_id = Permutation(tuple(range(m, 0, -1))) if m else identity(0)
    return BraidWord(m, tuple(_simple_word(rev_id.images)))


def simple_of(p: Permutation) -> BraidWord:
    """The permutation braid projecting to ``p``."""
    return BraidWord(p.degree, tuple(_simple_word(p.images)))
