"""The pencil-rank invariant of two-section pairs and its oracles.

Given t pairs of forms (g_i, g'_i) of degree a-1, the invariant is the
minimal rank of the coefficient pencil b*G + c*G' over all points (b : c) of
the projective line.  The closed formula gives its value for a general pair;
two oracles recompute it directly:

* ``delta_bruteforce`` scans the q + 1 rational points.  It can only see
  rational rank drops, so it upper-bounds the true minimum (strictly, when
  the minimizing point lives in a quadratic extension).
* ``delta_closure`` is exact over the algebraic closure: rank <= r at some
  point iff all (r+1)-minors (binary forms in (b, c)) share a projective
  zero, which is a gcd computation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exactmath import (
    BinaryForm,
    FieldMatrix,
    PrimeField,
    form_determinant,
    vanishing_divisor_degree,
)


@dataclass(frozen=True)
class DeltaInput:
    """t pairs of degree-(a-1) forms over a prime field (zero forms allowed)."""

    a: int
    t: int
    g: tuple[BinaryForm, ...]
    g_prime: tuple[BinaryForm, ...]

    def __post_init__(self) -> None:
        if self.a < 1 or self.t < 1:
            raise ValueError("need a >= 1 and t >= 1")
        if len(self.g) != self.t or len(self.g_prime) != self.t:
            raise ValueError(f"expected {self.t} forms in each family")
        for f in self.g + self.g_prime:
            if not f.is_zero and f.degree != self.a - 1:
                raise ValueError(f"form degree {f.degree} != {self.a - 1}")

    @property
    def field(self) -> PrimeField:
        return self.g[0].field


def delta_formula(a: int, t: int) -> int:
    """Generic value: t if a >= t+1, t-1 if a = t, a if 1 <= a < t."""
    if a < 1 or t < 1:
        raise ValueError("need a >= 1 and t >= 1")
    if a >= t + 1:
        return t
    if a == t:
        return t - 1
    return a


def delta_prime_formula(a: int, r: int) -> int:
    """Generic value of the balanced variant: 2r, 2r-1, or a+1 by the size of a."""
    if a < 1 or r < 1:
        raise ValueError("need a >= 1 and r >= 1")
    if a >= 2 * r:
        return 2 * r
    if a == 2 * r - 1:
        return 2 * r - 1
    return a + 1


def _pencil_coefficient_matrices(
    first: Sequence[BinaryForm], second: Sequence[BinaryForm], slot_degree: int
) -> tuple[np.ndarray, np.ndarray]:
    nrows = slot_degree + 1
    ncols = len(first)
    A = np.zeros((nrows, ncols), dtype=np.int64)
    B = np.zeros((nrows, ncols), dtype=np.int64)
    for c, (f, fp) in enumerate(zip(first, second)):
        if not f.is_zero:
            A[:, c] = f.coeffs
        if not fp.is_zero:
            B[:, c] = fp.coeffs
    return A, B


def delta_bruteforce(inp: DeltaInput) -> int:
    """t minus the largest kernel found over the q + 1 rational points.

    For each (b : c) the map sends lambda to sum lambda_i (b g_i + c g'_i);
    its kernel dimension is t - rank of the specialized pencil.
    """
    q = inp.field.q
    A, B = _pencil_coefficient_matrices(inp.g, inp.g_prime, inp.a - 1)
    best = 0
    points = [(1, c) for c in range(q)] + [(0, 1)]
    for b, c in points:
        mat = FieldMatrix(inp.field, (b * A + c * B) % q)
        best = max(best, inp.t - mat.rank())
        if best == inp.t:
            break
    return inp.t - best


def pencil_min_rank(
    first: Sequence[BinaryForm], second: Sequence[BinaryForm], slot_degree: int, field: PrimeField
) -> int:
    """Minimal rank of b*A + c*B over all (b : c) in the closure of P^1.

    A and B are the coefficient matrices of the two form families (columns =
    family members, rows = the slot_degree + 1 coefficient slots).  Rank drops
    below s at some point iff every s x s minor, a degree-s binary form in
    (b, c), vanishes there; minors sharing a projective zero is a gcd test.
    """
    if len(first) != len(second):
        raise ValueError("families must have equal length")
    A, B = _pencil_coefficient_matrices(first, second, slot_degree)
    nrows, ncols = A.shape
    entries = [
        [BinaryForm(field, (int(A[r][c]), int(B[r][c]))) for c in range(ncols)]
        for r in range(nrows)
    ]
    for size in range(1, min(nrows, ncols) + 1):
        minors = []
        for rsel in itertools.combinations(range(nrows), size):
            for csel in itertools.combinations(range(ncols), size):
                det = form_determinant(
                    [[entries[r][c] for c in csel] for r in rsel], field
                )
                if not det.is_zero:
                    minors.append(det)
        if not minors:
            return size - 1
        if vanishing_divisor_degree(minors) >= 1:
            return size - 1
    return min(nrows, ncols)


def delta_closure(inp: DeltaInput) -> int:
    """Exact minimal pencil rank over the algebraic closure."""
    return pencil_min_rank(inp.g, inp.g_prime, inp.a - 1, inp.field)


def sample_delta_input(a: int, t: int, q: int, seed: int) -> DeltaInput:
    """Uniform random coefficient draw, deterministic in the seed."""
    field = PrimeField(q)
    rng = random.Random(((seed * 31 + a) * 31 + t) * 31 + q)
    def draw() -> BinaryForm:
        return BinaryForm(field, tuple(rng.randrange(q) for _ in range(a)))
    return DeltaInput(
        a, t, tuple(draw() for _ in range(t)), tuple(draw() for _ in range(t))
    )
