"""Split vector bundles on the projective line.

Every bundle here is a direct sum of line bundles O(a_1) >= ... >= O(a_n),
so all invariants reduce to integer bookkeeping on the sorted degree tuple,
plus exact kernel computations for maps given by matrices of binary forms.

A rank-0 splitting type (the empty tuple) stands for the zero bundle; it
shows up as a kernel or quotient even though ambient bundles have rank >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactmath import BinaryForm, FieldMatrix, generic_rank, multiplication_matrix

import numpy as np


@dataclass(frozen=True)
class SplittingType:
    """Sorted multiset of line-bundle degrees (a_1 >= ... >= a_n)."""

    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(self.degrees[i] < self.degrees[i + 1] for i in range(len(self.degrees) - 1)):
            raise ValueError("splitting type must be sorted non-increasing")

    @classmethod
    def of(cls, *degrees: int) -> "SplittingType":
        return cls(tuple(sorted(degrees, reverse=True)))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def dual(self) -> "SplittingType":
        return SplittingType(tuple(-a for a in reversed(self.degrees)))

    def hn_polygon(self) -> "HNPolygon":
        prefix = []
        acc = 0
        for a in self.degrees:
            acc += a
            prefix.append(acc)
        return HNPolygon(tuple(prefix))

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.degrees) + ")"


@dataclass(frozen=True)
class HNPolygon:
    """Prefix sums of a sorted degree tuple; concave by construction."""

    prefix_sums: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.prefix_sums
        for i in range(1, len(p) - 1):
            if p[i + 1] - p[i] > p[i] - p[i - 1]:
                raise ValueError("prefix sums are not concave")

    def dominates(self, other: "HNPolygon") -> bool:
        """Pointwise >= comparison against a polygon of the same rank."""
        if len(self.prefix_sums) != len(other.prefix_sums):
            raise ValueError("polygons of different ranks are not comparable")
        return all(a >= b for a, b in zip(self.prefix_sums, other.prefix_sums))


@dataclass(frozen=True)
class SaturationResult:
    """Numerical invariants of the saturation of a span of sections."""

    rank: int
    degree: int
    quotient_type: SplittingType


def generic_splitting(n: int, d: int) -> SplittingType:
    """The balanced type of rank n and degree d: s copies of a+1, n-s of a."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    a, s = divmod(d, n)
    return SplittingType(tuple([a + 1] * s + [a] * (n - s)))


def cohomology(t: SplittingType, j: int) -> tuple[int, int]:
    """(h0, h1) of the twist t(j); genus-0 line bundle cohomology, summand-wise."""
    h0 = sum(max(0, a + j + 1) for a in t)
    h1 = sum(max(0, -a - j - 1) for a in t)
    return h0, h1


def endomorphism_type(t: SplittingType) -> SplittingType:
    """Splitting type of End = Hom(t, t), i.e. all pairwise differences."""
    diffs = sorted((a - b for a in t for b in t), reverse=True)
    return SplittingType(tuple(diffs))


def max_subbundle_degree(t: SplittingType, r: int) -> int:
    """Largest degree of a rank-r subbundle: the r biggest summand degrees."""
    if r < 0 or r > t.rank:
        raise ValueError(f"rank {r} out of range for a rank-{t.rank} bundle")
    return sum(t.degrees[:r])


def shatz_embedding_exists(e: SplittingType, g: SplittingType, k: int) -> bool:
    """Whether O^k embeds in e with quotient g, by the polygon criterion.

    Tests the two conditions on E = e and F = g + O^k: the polygon of F
    dominates the polygon of E, and b_i > a_i holds exactly for i <= n - k.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    n = e.rank
    if g.rank + k != n:
        raise ValueError(f"rank mismatch: {g.rank} + {k} != {n}")
    f = SplittingType(tuple(sorted(g.degrees + (0,) * k, reverse=True)))
    if not f.hn_polygon().dominates(e.hn_polygon()):
        return False
    return all((f[i] > e[i]) == (i < n - k) for i in range(n))


def _validate_profile(
    source: SplittingType, target: SplittingType, entries: Sequence[Sequence[BinaryForm]]
) -> None:
    if len(entries) != target.rank or any(len(row) != source.rank for row in entries):
        raise ValueError("matrix shape does not match source/target ranks")
    for i, row in enumerate(entries):
        for j, f in enumerate(row):
            slot = target[i] - source[j]
            if f.is_zero:
                continue
            if slot < 0:
                raise ValueError(f"entry ({i},{j}) must be zero: negative slot degree {slot}")
            if f.degree != slot:
                raise ValueError(
                    f"entry ({i},{j}) has degree {f.degree}, profile requires {slot}"
                )


def _twist_kernel_dimension(
    source: SplittingType, target: SplittingType, entries: Sequence[Sequence[BinaryForm]], j: int
) -> int:
    """dim ker of the induced map on global sections after twisting by O(j)."""
    col_dims = [max(0, s + j + 1) for s in source]
    row_dims = [max(0, t + j + 1) for t in target]
    cols = sum(col_dims)
    rows = sum(row_dims)
    if cols == 0:
        return 0
    if rows == 0:
        return cols
    field = entries[0][0].field
    data = np.zeros((rows, cols), dtype=np.int64)
    r0 = 0
    for i in range(target.rank):
        c0 = 0
        for jdx in range(source.rank):
            f = entries[i][jdx]
            if not f.is_zero and col_dims[jdx] and row_dims[i]:
                block = multiplication_matrix(f, source[jdx] + j)
                data[r0 : r0 + row_dims[i], c0 : c0 + col_dims[jdx]] = block.data
            c0 += col_dims[jdx]
        r0 += row_dims[i]
    return FieldMatrix(field, data).kernel_dimension()


def kernel_splitting(
    source: SplittingType, target: SplittingType, entries: Sequence[Sequence[BinaryForm]]
) -> SplittingType:
    """Splitting type of the kernel subbundle of a map given by a form matrix.

    Entry (i, j) must be a form of degree target_i - source_j (or zero).  The
    kernel N = O(b_1) + ... + O(b_r) is recovered from the section counts of
    its twists: with h(j) = dim ker on global sections at twist j, the first
    difference h(j) - h(j-1) counts the summands with b_i >= -j.  Counts are
    monotone in j, start at zero below -max(source), and reach the kernel rank
    (known independently from the generic rank over F_q(t)), so the scan stops
    as soon as every summand is accounted for.  The window bound is a tripwire
    only; reaching it would signal a bug, not bad input.
    """
    _validate_profile(source, target, entries)
    if source.rank == 0:
        return SplittingType(())
    rho = source.rank - generic_rank(entries)
    if rho == 0:
        return SplittingType(())
    bound = sum(abs(s) for s in source) + sum(abs(t) for t in target) + source.rank
    window_hi = 2 * bound + 2
    max_s = max(source.degrees)
    degrees: list[int] = []
    prev_h = 0  # h(-max_s - 1) = 0: every summand degree is <= max_s
    prev_c = 0
    j = -max_s - 1
    while prev_c < rho:
        j += 1
        if j > window_hi:
            raise RuntimeError("kernel probe counts failed to stabilize inside the safe window")
        h = _twist_kernel_dimension(source, target, entries, j)
        c = h - prev_h
        if c < prev_c:
            raise RuntimeError("kernel probe counts are not monotone; elimination bug")
        degrees.extend([-j] * (c - prev_c))
        prev_h = h
        prev_c = c
    return SplittingType(tuple(degrees))


def saturate(e: SplittingType, sections: Sequence[Sequence[BinaryForm]]) -> SaturationResult:
    """Invariants of the minimal subbundle whose sections contain the span.

    Works through the dual: the kernel N of E* -> O^w (pairing against the
    sections) is saturated, and the annihilator F = (E*/N)* is exactly the
    saturation, of rank n - rk N and degree deg E + deg N, with E/F = N*.
    Zero sections are ignored.
    """
    n = e.rank
    live = []
    for s in sections:
        if len(s) != n:
            raise ValueError(f"section has {len(s)} components, expected {n}")
        for i, f in enumerate(s):
            if not f.is_zero and f.degree != e[i]:
                raise ValueError(
                    f"section component {i} has degree {f.degree}, expected {e[i]}"
                )
        if any(not f.is_zero for f in s):
            live.append(s)
    if not live:
        return SaturationResult(0, 0, e)
    w = len(live)
    source = e.dual()
    target = SplittingType((0,) * w)
    # source index j corresponds to original component n-1-j (dual reverses order)
    entries = [[live[i][n - 1 - jdx] for jdx in range(n)] for i in range(w)]
    kern = kernel_splitting(source, target, entries)
    return SaturationResult(
        rank=n - kern.rank,
        degree=e.degree + kern.degree,
        quotient_type=kern.dual(),
    )
