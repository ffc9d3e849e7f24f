"""Finite permutations in one-line notation.

A permutation of degree k is stored as the tuple of images of 1..k.
Products follow function composition: ``compose(g, h)(x) == g(h(x))``,
so the right factor acts first.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "BlockStructure",
    "Permutation",
    "block_perm",
    "compose",
    "direct_sum",
    "identity",
    "in_young",
    "inverse",
    "transposition",
    "young_factors",
]

_PERM_RE = re.compile(r"^\[\s*(\d+(\s*,\s*\d+)*)?\s*\]$")


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, 1))

    def inversions(self) -> int:
        im = self.images
        return sum(1 for a, b in itertools.combinations(range(len(im)), 2) if im[a] > im[b])

    @classmethod
    def parse(cls, text: str) -> Permutation:
        """Parse ``"[2,3,1]"``; whitespace is ignored."""
        m = _PERM_RE.match(text.strip())
        if not m:
            raise ValueError(f"malformed permutation {text!r}; expected e.g. [2,3,1]")
        body = text.strip()[1:-1].strip()
        if not body:
            return cls(())
        return cls(tuple(int(tok) for tok in body.split(",")))

    @classmethod
    def all(cls, degree: int) -> Iterator[Permutation]:
        for p in itertools.permutations(range(1, degree + 1)):
            yield cls(p)


def identity(degree: int) -> Permutation:
    return Permutation(tuple(range(1, degree + 1)))


def transposition(degree: int, i: int, j: int) -> Permutation:
    images = list(range(1, degree + 1))
    images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
    return Permutation(tuple(images))


def compose(g: Permutation, h: Permutation) -> Permutation:
    if g.degree != h.degree:
        raise ValueError(f"degree mismatch: {g.degree} vs {h.degree}")
    gi = g.images
    return Permutation(tuple(gi[x - 1] for x in h.images))


def inverse(g: Permutation) -> Permutation:
    out = [0] * g.degree
    for i, v in enumerate(g.images, 1):
        out[v - 1] = i
    return Permutation(tuple(out))


@dataclass(frozen=True)
class BlockStructure:
    """Sizes r_1..r_n of consecutive blocks; zero sizes are allowed."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if any(s < 0 for s in sizes):
            raise ValueError(f"block sizes must be non-negative: {sizes}")

    @property
    def total(self) -> int:
        return sum(self.sizes)

    def __len__(self) -> int:
        return len(self.sizes)

    def offsets(self) -> tuple[int, ...]:
        """Number of positions before each block."""
        return tuple(itertools.accumulate((0,) + self.sizes[:-1])) if self.sizes else ()

    def boundaries(self) -> frozenset[int]:
        """Generator indices that cross between two blocks."""
        total = self.total
        return frozenset(s for s in itertools.accumulate(self.sizes) if 0 < s < total)

    def interior(self) -> tuple[int, ...]:
        """Generator indices acting inside a single block."""
        bounds = self.boundaries()
        return tuple(i for i in range(1, self.total) if i not in bounds)

    def permuted(self, g: Permutation) -> BlockStructure:
        """Sizes as they sit after the blocks are moved by ``g``: slot t gets r_{g^-1(t)}."""
        if g.degree != len(self.sizes):
            raise ValueError(f"permutation of degree {g.degree} cannot move {len(self.sizes)} blocks")
        ginv = inverse(g)
        return BlockStructure(tuple(self.sizes[ginv(t) - 1] for t in range(1, g.degree + 1)))

    def __str__(self) -> str:
        return ",".join(map(str, self.sizes))

    @classmethod
    def parse(cls, text: str) -> BlockStructure:
        body = text.strip().strip("()[]").strip()
        if not body:
            return cls(())
        try:
            return cls(tuple(int(tok) for tok in body.split(",")))
        except ValueError:
            raise ValueError(f"malformed block sizes {text!r}; expected e.g. 2,1") from None

    @classmethod
    def compositions(cls, total: int, parts: int) -> Iterator[BlockStructure]:
        """All size vectors with ``parts`` non-negative entries summing to ``total``."""
        if parts == 0:
            if total == 0:
                yield cls(())
            return
        for cuts in itertools.combinations_with_replacement(range(total + 1), parts - 1):
            bounds = (0,) + cuts + (total,)
            yield cls(tuple(b - a for a, b in zip(bounds, bounds[1:])))


def _as_blocks(j: BlockStructure | Sequence[int]) -> BlockStructure:
    return j if isinstance(j, BlockStructure) else BlockStructure(tuple(j))


def block_perm(A: Permutation, j: BlockStructure | Sequence[int]) -> Permutation:
    """Replace the i-th letter of ``A`` by a block of j_i letters.

    Source block i moves, order preserved, onto target slot A(i).
    """
    j = _as_blocks(j)
    if A.degree != len(j):
        raise ValueError(f"permutation of degree {A.degree} needs {A.degree} block sizes, got {len(j)}")
    src_off = j.offsets()
    tgt_off = j.permuted(A).offsets()
    images = [0] * j.total
    for i, size in enumerate(j.sizes):
        base = tgt_off[A.images[i] - 1]
        for x in range(size):
            images[src_off[i] + x] = base + x + 1
    return Permutation(tuple(images))


def direct_sum(parts: Iterable[Permutation]) -> Permutation:
    images: list[int] = []
    for p in parts:
        shift = len(images)
        images.extend(v + shift for v in p.images)
    return Permutation(tuple(images))


def in_young(g: Permutation, r: BlockStructure | Sequence[int]) -> bool:
    r = _as_blocks(r)
    if g.degree != r.total:
        raise ValueError(f"degree {g.degree} does not match block total {r.total}")
    for off, size in zip(r.offsets(), r.sizes):
        for x in range(off + 1, off + size + 1):
            if not off < g(x) <= off + size:
                return False
    return True


def young_factors(g: Permutation, r: BlockStructure | Sequence[int]) -> tuple[Permutation, ...]:
    r = _as_blocks(r)
    if not in_young(g, r):
        raise ValueError(f"{g} is not in the Young subgroup for sizes ({r})")
    return tuple(
        Permutation(tuple(g(off + x) - off for x in range(1, size + 1)))
        for off, size in zip(r.offsets(), r.sizes)
    )
