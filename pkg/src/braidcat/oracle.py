"""Brute-force ground truth for positive braid words.

Works directly on sequences of generator indices and never touches
:mod:`braidcat.braid`.  Both defining relations preserve length, so the
class of a word under them is finite and is found by exhaustive search.

Words are packed into int64 codes, three bits per letter with the first
letter most significant, so numeric order on codes of one length is
lexicographic order and a prefix of length k is ``code >> 3 * (n - k)``.
The search kernels are compiled with numba; nothing else about them is
clever.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

__all__ = [
    "ClosureCapExceeded",
    "ClosureClass",
    "Oracle",
    "OracleAmbiguity",
    "closure",
    "oracle_equal",
    "oracle_lcm",
    "oracle_left_divides",
]

DEFAULT_CAP = 10**6
MAX_LETTER = 7
MAX_LENGTH = 21

Word = tuple[int, ...]

class ClosureCapExceeded(RuntimeError):
    pass


class OracleAmbiguity(RuntimeError):
    """Two minimal common multiples that do not divide each other."""


def encode(word: Sequence[int]) -> int:
    code = 0
    for x in word:
        code = (code << 3) | x
    return code


def decode(code: int, length: int) -> Word:
    return tuple((code >> (3 * (length - 1 - p))) & 7 for p in range(length))


@njit(cache=True)
def _slot(key, table, mask):
    h = (np.uint64(key) * np.uint64(0x9E3779B97F4A7C15)) >> np.uint64(32)
    s = np.int64(h) & mask
    while table[s] != -1 and table[s] != key:
        s = (s + 1) & mask
    return s


@njit(cache=True)
def _closure(code, n, cap, table, members, slots):
    """Write the class of ``code`` into ``members``; return its size or -1 past ``cap``.

    ``table`` must be all -1 on entry and is left that way.  Only a prefix of
    it sized to the class is probed, so small classes stay in cache.
    """
    bits = 10
    while True:
        mask = (1 << bits) - 1
        limit = min(1 << (bits - 1), table.shape[0] // 2)
        members[0] = code
        slots[0] = _slot(code, table, mask)
        table[slots[0]] = code
        count = 1
        head = 0
        status = 0
        while head < count and status == 0:
            cur = members[head]
            head += 1
            for p in range(n - 1):
                sa = 3 * (n - 1 - p)
                sb = sa - 3
                a = (cur >> sa) & 7
                b = (cur >> sb) & 7
                d = a - b
                nb = -1
                if d > 1 or d < -1:
                    nb = cur ^ ((a ^ b) << sa) ^ ((a ^ b) << sb)
                elif p + 2 < n and (d == 1 or d == -1):
                    sc = sb - 3
                    if ((cur >> sc) & 7) == a:
                        nb = cur ^ ((a ^ b) << sa) ^ ((a ^ b) << sb) ^ ((a ^ b) << sc)
                if nb >= 0:
                    s = _slot(nb, table, mask)
                    if table[s] == -1:
                        if count >= cap or count >= members.shape[0]:
                            status = -1
                            break
                        if count >= limit:
                            status = 1
                            break
                        table[s] = nb
                        members[count] = nb
                        slots[count] = s
                        count += 1
        for k in range(count):
            table[slots[k]] = -1
        if status == 0:
            return count
        if status < 0 or (1 << bits) >= table.shape[0]:
            return -1
        bits = min(bits + 2, 62)
        while (1 << bits) > table.shape[0]:
            bits -= 1


@njit(cache=True)
def _has_prefix_in(members, count, n, sorted_codes, k):
    shift = 3 * (n - k)
    for idx in range(count):
        pre = members[idx] >> shift
        pos = np.searchsorted(sorted_codes, pre)
        if pos < sorted_codes.shape[0] and sorted_codes[pos] == pre:
            return True
    return False


@njit(cache=True)
def _common_multiples(a_min, len_a, bound, letters, b_codes, len_b, cap, table, members, slots):
    """Minimal codes and lengths of all classes a.x (|a.x| <= bound) that b left-divides.

    Returns (codes, lengths, status); status -1 means a class exceeded ``cap``.
    """
    out_codes = []
    out_lens = []
    count = _closure(a_min, len_a, cap, table, members, slots)
    if count < 0:
        return out_codes, out_lens, -1
    if len_a >= len_b and _has_prefix_in(members, count, len_a, b_codes, len_b):
        out_codes.append(a_min)
        out_lens.append(len_a)
    level = np.array([a_min], dtype=np.int64)
    n = len_a
    while n < bound:
        size = level.shape[0] * letters
        mins = np.empty(size, dtype=np.int64)
        hits = np.zeros(size, dtype=np.bool_)
        filled = 0
        for idx in range(level.shape[0]):
            for i in range(1, letters + 1):
                count = _closure((level[idx] << 3) | i, n + 1, cap, table, members, slots)
                if count < 0:
                    return out_codes, out_lens, -1
                mn = members[0]
                for k in range(1, count):
                    if members[k] < mn:
                        mn = members[k]
                mins[filled] = mn
                if n + 1 >= len_b:
                    hits[filled] = _has_prefix_in(members, count, n + 1, b_codes, len_b)
                filled += 1
        order = np.argsort(mins)
        uniq = []
        last = -1
        for k in order:
            if mins[k] != last:
                last = mins[k]
                uniq.append(last)
                if hits[k]:
                    out_codes.append(last)
                    out_lens.append(n + 1)
        level = np.array(uniq, dtype=np.int64)
        n += 1
    return out_codes, out_lens, 0


@dataclass(frozen=True)
class ClosureClass:
    strands: int
    members: frozenset[Word]

    @property
    def length(self) -> int:
        return len(next(iter(self.members)))

    @property
    def canonical(self) -> Word:
        return min(self.members)

    def __contains__(self, word: Sequence[int]) -> bool:
        return tuple(word) in self.members

    def __len__(self) -> int:
        return len(self.members)


class Oracle:
    """Exhaustive word-problem searches on a fixed strand count."""

    def __init__(self, strands: int, cap: int = DEFAULT_CAP):
        if strands - 1 > MAX_LETTER:
            raise ValueError(f"oracle supports at most {MAX_LETTER + 1} strands")
        self.strands = strands
        self.cap = cap
        size = 1 << max(4, (2 * cap).bit_length())
        self._table = np.full(size, -1, dtype=np.int64)
        self._members = np.empty(cap + 1, dtype=np.int64)
        self._slots = np.empty(cap + 1, dtype=np.int64)

    def _check(self, w: Sequence[int]) -> Word:
        w = tuple(int(x) for x in w)
        if len(w) > MAX_LENGTH:
            raise ValueError(f"oracle words are limited to {MAX_LENGTH} letters")
        for i in w:
            if not 1 <= i <= self.strands - 1:
                raise ValueError(f"generator {i} does not exist on {self.strands} strands")
        return w

    def _codes(self, w: Word) -> np.ndarray:
        if not w:
            return np.zeros(1, dtype=np.int64)
        count = _closure(encode(w), len(w), self.cap, self._table, self._members, self._slots)
        if count < 0:
            raise ClosureCapExceeded(f"class of {w} exceeds {self.cap} words")
        return np.sort(self._members[:count])

    def closure(self, w: Sequence[int]) -> ClosureClass:
        w = self._check(w)
        n = len(w)
        return ClosureClass(self.strands, frozenset(decode(int(c), n) for c in self._codes(w)))

    def canonical(self, w: Sequence[int]) -> Word:
        w = self._check(w)
        return decode(int(self._codes(w)[0]), len(w))

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        u, v = self._check(u), self._check(v)
        if len(u) != len(v):
            return False
        codes = self._codes(u)
        pos = np.searchsorted(codes, encode(v))
        return bool(pos < codes.shape[0] and codes[pos] == encode(v))

    def left_divides(self, a: Sequence[int], b: Sequence[int]) -> bool:
        a, b = self._check(a), self._check(b)
        if len(a) > len(b):
            return False
        if not a:
            return True
        prefixes = self._codes(a)
        members = self._codes(b)
        return bool(_has_prefix_in(members, members.shape[0], len(b), prefixes, len(a)))

    def common_multiples(self, a: Sequence[int], b: Sequence[int], bound: int) -> list[Word]:
        """Minimal words of every right common multiple of a and b of length <= bound, shortest first."""
        a, b = self._check(a), self._check(b)
        if bound > MAX_LENGTH:
            raise ValueError(f"oracle words are limited to {MAX_LENGTH} letters")
        if len(a) > bound:
            return []
        # the search space shrinks with the longer factor as base
        if len(b) > len(a):
            a, b = b, a
        a_min = int(self._codes(a)[0])
        b_codes = self._codes(b) if b else np.zeros(1, dtype=np.int64)
        codes, lens, status = _common_multiples(
            a_min, len(a), bound, self.strands - 1, b_codes, len(b), self.cap, self._table, self._members, self._slots
        )
        if status < 0:
            raise ClosureCapExceeded(f"a class of length <= {bound} exceeds {self.cap} words")
        found = sorted((int(n), int(c)) for c, n in zip(codes, lens))
        return [decode(c, n) for n, c in found]

    def lcm(self, a: Sequence[int], b: Sequence[int], bound: int) -> Word | None:
        found = self.common_multiples(a, b, bound)
        if not found:
            return None
        shortest = len(found[0])
        minimal = [c for c in found if len(c) == shortest]
        if len(minimal) > 1:
            raise OracleAmbiguity(f"minimal common multiples {minimal}")
        best = minimal[0]
        for c in found[1:]:
            if not self.left_divides(best, c):
                raise OracleAmbiguity(f"{best} does not divide common multiple {c}")
        return best


_DEFAULT: dict[tuple[int, int], Oracle] = {}


def _oracle(strands: int, cap: int) -> Oracle:
    key = (strands, cap)
    if key not in _DEFAULT:
        _DEFAULT[key] = Oracle(strands, cap)
    return _DEFAULT[key]


def closure(w: Sequence[int], strands: int, cap: int = DEFAULT_CAP) -> ClosureClass:
    return _oracle(strands, cap).closure(w)


def oracle_equal(u: Sequence[int], v: Sequence[int], strands: int, cap: int = DEFAULT_CAP) -> bool:
    return _oracle(strands, cap).equal(u, v)


def oracle_left_divides(a: Sequence[int], b: Sequence[int], strands: int, cap: int = DEFAULT_CAP) -> bool:
    return _oracle(strands, cap).left_divides(a, b)


def oracle_lcm(a: Sequence[int], b: Sequence[int], bound: int, strands: int, cap: int = DEFAULT_CAP) -> Word | None:
    return _oracle(strands, cap).lcm(a, b, bound)
