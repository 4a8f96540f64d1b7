"""Exact arithmetic foundations: prime fields, binary forms, dense matrices.

Conventions used throughout the package:

* Scalars over F_q are plain integers in [0, q); a ``PrimeField`` carries the
  modulus and supplies inverses.  q must be prime (validated once).
* A binary form of degree d is a homogeneous polynomial in (x, y); its
  coefficient tuple has length d + 1 and index i holds the coefficient of
  x**(d-i) * y**i (big-endian in x).  The zero form is the empty tuple,
  reported as degree -1, so matrices of forms can keep fixed per-slot degree
  profiles while allowing zero entries.
* Rationals are ``fractions.Fraction``: exact, always in lowest terms.

Matrix ranks are computed by exact Gaussian elimination with first-nonzero
pivoting; over an exact field there is no stability concern and the pivot
rule keeps runs reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """Prime field F_q; the context object shared by scalars, forms, matrices."""

    q: int

    def __post_init__(self) -> None:
        if not _is_prime(self.q):
            raise ValueError(f"modulus {self.q} is not prime")
        if self.q >= 2**31:
            # int64 row operations hold products of two residues
            raise ValueError("modulus too large for exact int64 elimination")

    def normalize(self, v: int) -> int:
        return v % self.q

    def inv(self, v: int) -> int:
        v %= self.q
        if v == 0:
            raise ZeroDivisionError("inverse of 0 in prime field")
        return pow(v, self.q - 2, self.q)

    def element(self, v: int) -> "PrimeFieldElement":
        return PrimeFieldElement(v % self.q, self)

    def __repr__(self) -> str:
        return f"F_{self.q}"


@dataclass(frozen=True)
class PrimeFieldElement:
    """A residue in [0, q) tied to its field."""

    residue: int
    field: PrimeField

    def _check(self, other: "PrimeFieldElement") -> None:
        if self.field.q != other.field.q:
            raise ValueError("field mismatch")

    def __add__(self, other: "PrimeFieldElement") -> "PrimeFieldElement":
        self._check(other)
        return PrimeFieldElement((self.residue + other.residue) % self.field.q, self.field)

    def __sub__(self, other: "PrimeFieldElement") -> "PrimeFieldElement":
        self._check(other)
        return PrimeFieldElement((self.residue - other.residue) % self.field.q, self.field)

    def __mul__(self, other: "PrimeFieldElement") -> "PrimeFieldElement":
        self._check(other)
        return PrimeFieldElement(self.residue * other.residue % self.field.q, self.field)

    def __truediv__(self, other: "PrimeFieldElement") -> "PrimeFieldElement":
        self._check(other)
        return PrimeFieldElement(
            self.residue * self.field.inv(other.residue) % self.field.q, self.field
        )

    def __neg__(self) -> "PrimeFieldElement":
        return PrimeFieldElement(-self.residue % self.field.q, self.field)

    def __int__(self) -> int:
        return self.residue


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous polynomial in (x, y) over a prime field.

    ``coeffs[i]`` multiplies x**(d-i) * y**i.  The all-zero coefficient vector
    collapses to the canonical zero form ``()`` of degree -1.
    """

    field: PrimeField
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        q = self.field.q
        reduced = tuple(c % q for c in self.coeffs)
        if all(c == 0 for c in reduced):
            reduced = ()
        object.__setattr__(self, "coeffs", reduced)

    @classmethod
    def zero(cls, field: PrimeField) -> "BinaryForm":
        return cls(field, ())

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def add(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        q = self.field.q
        return BinaryForm(self.field, tuple((a + b) % q for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: int) -> "BinaryForm":
        c %= self.field.q
        if c == 0 or self.is_zero:
            return BinaryForm.zero(self.field)
        return BinaryForm(self.field, tuple(c * a % self.field.q for a in self.coeffs))

    def mul(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero or other.is_zero:
            return BinaryForm.zero(self.field)
        q = self.field.q
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + a * b) % q
        return BinaryForm(self.field, tuple(out))

    def evaluate(self, b: int, c: int) -> int:
        """Value at the point (b : c), as a residue."""
        q = self.field.q
        b %= q
        c %= q
        d = self.degree
        acc = 0
        for i, coeff in enumerate(self.coeffs):
            acc = (acc + coeff * pow(b, d - i, q) * pow(c, i, q)) % q
        return acc

    def compose_linear(self, m00: int, m01: int, m10: int, m11: int) -> "BinaryForm":
        """Substitute x -> m00*x + m01*y, y -> m10*x + m11*y."""
        if self.is_zero:
            return self
        u = BinaryForm(self.field, (m00, m01))
        v = BinaryForm(self.field, (m10, m11))
        d = self.degree
        one = BinaryForm(self.field, (1,))
        u_pows = [one]
        v_pows = [one]
        for _ in range(d):
            u_pows.append(u_pows[-1].mul(u))
            v_pows.append(v_pows[-1].mul(v))
        out = [0] * (d + 1)
        q = self.field.q
        for i, coeff in enumerate(self.coeffs):
            if not coeff:
                continue
            term = u_pows[d - i].mul(v_pows[i]).scale(coeff)
            if term.is_zero:
                continue
            # nonzero products of linear forms always occupy the full degree-d slot
            for j, t in enumerate(term.coeffs):
                out[j] = (out[j] + t) % q
        return BinaryForm(self.field, tuple(out))

    def y_valuation(self) -> int:
        """Largest power of y dividing the form (None-free: zero form rejected)."""
        if self.is_zero:
            raise ValueError("zero form has no y-valuation")
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise AssertionError("unreachable: nonzero form with all-zero coefficients")

    def dehomogenize(self) -> tuple[int, ...]:
        """Coefficients of f(t, 1) in ascending powers of t."""
        return tuple(reversed(self.coeffs))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        d = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = []
            if d - i:
                mon.append("x" if d - i == 1 else f"x^{d - i}")
            if i:
                mon.append("y" if i == 1 else f"y^{i}")
            body = "*".join(mon)
            parts.append(f"{c}*{body}" if body and c != 1 else (body or str(c)))
        return " + ".join(parts)


@dataclass(eq=False)
class FieldMatrix:
    """Dense matrix over F_q backed by an int64 array of reduced residues."""

    field: PrimeField
    data: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.data, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("matrix data must be 2-dimensional")
        self.data = arr % self.field.q

    @classmethod
    def from_rows(cls, field: PrimeField, rows: Sequence[Sequence[int]]) -> "FieldMatrix":
        if rows:
            return cls(field, np.array(rows, dtype=np.int64))
        return cls(field, np.zeros((0, 0), dtype=np.int64))

    @classmethod
    def zeros(cls, field: PrimeField, rows: int, cols: int) -> "FieldMatrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: PrimeField, n: int) -> "FieldMatrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def rank(self) -> int:
        a = self.data.copy()
        q = self.field.q
        nrows, ncols = a.shape
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                a[[r, p]] = a[[p, r]]
            inv = pow(int(a[r, c]), q - 2, q)
            a[r] = a[r] * inv % q
            below = np.nonzero(a[r + 1 :, c])[0]
            if below.size:
                idx = below + r + 1
                a[idx] = (a[idx] - np.outer(a[idx, c], a[r])) % q
            r += 1
        return r

    def kernel_dimension(self) -> int:
        return self.cols - self.rank()

    def mul(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return FieldMatrix(self.field, (self.data @ other.data) % self.field.q)

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.field, self.data.T.copy())

    def to_lists(self) -> list[list[int]]:
        return self.data.tolist()


def kernel_dimension(m: FieldMatrix) -> int:
    """cols(m) - rank(m), by exact elimination over F_q."""
    return m.kernel_dimension()


def multiplication_matrix(f: BinaryForm, j: int, slot_degree: int | None = None) -> FieldMatrix:
    """Matrix of multiplication-by-f from forms of degree j to degree j + deg f.

    Bases are the monomials ordered big-endian in x (index i of degree-e forms
    is x**(e-i) y**i).  ``slot_degree`` fixes the target shift when f is the
    zero form, and must equal deg f otherwise; matrices of forms need fixed
    row/column degree profiles even at zero entries.
    """
    if f.is_zero:
        if slot_degree is None:
            raise ValueError("zero form needs an explicit slot degree to fix the shape")
        d = slot_degree
    else:
        if slot_degree is not None and slot_degree != f.degree:
            raise ValueError(f"form degree {f.degree} does not match slot degree {slot_degree}")
        d = f.degree
    cols = max(0, j + 1)
    rows = max(0, j + d + 1)
    data = np.zeros((rows, cols), dtype=np.int64)
    if not f.is_zero and cols and rows:
        for u, cu in enumerate(f.coeffs):
            if cu:
                np.fill_diagonal(data[u : u + cols, :], cu)
    return FieldMatrix(f.field, data)


# -- univariate polynomials over F_q (ascending coefficient lists) -----------

def _ptrim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_rem(a: list[int], b: list[int], q: int) -> list[int]:
    a = _ptrim([x % q for x in a])
    db = len(b) - 1
    inv = pow(b[-1], q - 2, q)
    while a and len(a) - 1 >= db:
        fct = a[-1] * inv % q
        da = len(a) - 1
        for i in range(db + 1):
            a[da - db + i] = (a[da - db + i] - fct * b[i]) % q
        _ptrim(a)
    return a


def _poly_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    a = _ptrim([x % q for x in a])
    b = _ptrim([x % q for x in b])
    while b:
        a, b = b, _poly_rem(a, b, q)
    return a


def _poly_mul(a: list[int], b: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return _ptrim(out)


def _poly_sub(a: list[int], b: list[int], q: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % q
    return _ptrim(out)


def vanishing_divisor_degree(forms: Iterable[BinaryForm]) -> int:
    """Degree of the common vanishing divisor of the forms, over the closure.

    Equals the degree of their homogeneous gcd: the common power of y plus the
    degree of the gcd of the dehomogenizations f(t, 1).  Zero forms are
    ignored; an all-zero input has no well-defined divisor.
    """
    nonzero = [f for f in forms if not f.is_zero]
    if not nonzero:
        raise ValueError("indeterminate divisor: all forms are zero")
    q = nonzero[0].field.q
    y_part = min(f.y_valuation() for f in nonzero)
    g: list[int] = []
    for f in nonzero:
        g = _poly_gcd(g, list(f.dehomogenize()), q)
        if len(g) == 1:
            return y_part
    return y_part + len(g) - 1


def generic_rank(entries: Sequence[Sequence[BinaryForm]]) -> int:
    """Rank of a matrix of binary forms over the function field F_q(t).

    Computed by cross-multiplication elimination on the dehomogenized entries;
    the chart y != 0 is dense, so this is the rank of the associated sheaf map
    at the generic point.
    """
    if not entries or not entries[0]:
        return 0
    q = None
    rows: list[list[list[int]]] = []
    for row in entries:
        prow = []
        for f in row:
            if q is None and not f.is_zero:
                q = f.field.q
            prow.append(_ptrim(list(f.dehomogenize())))
        rows.append(prow)
    if q is None:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        for r in range(rank + 1, nrows):
            if rows[r][col]:
                lead = rows[r][col]
                rows[r] = [
                    _poly_sub(_poly_mul(prow[col], rows[r][c], q), _poly_mul(lead, prow[c], q), q)
                    for c in range(ncols)
                ]
        rank += 1
        if rank == nrows:
            break
    return rank


def form_determinant(entries: Sequence[Sequence[BinaryForm]], field: PrimeField) -> BinaryForm:
    """Determinant of a square matrix of binary forms, by Laplace expansion."""
    n = len(entries)
    if any(len(row) != n for row in entries):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return BinaryForm(field, (1,))

    def expand(rows: tuple[int, ...], cols: tuple[int, ...]) -> BinaryForm:
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        acc = BinaryForm.zero(field)
        r = rows[0]
        rest = rows[1:]
        for idx, c in enumerate(cols):
            e = entries[r][c]
            if e.is_zero:
                continue
            minor = expand(rest, cols[:idx] + cols[idx + 1 :])
            if minor.is_zero:
                continue
            term = e.mul(minor)
            if idx % 2:
                term = term.scale(field.q - 1)
            if acc.is_zero:
                acc = term
            else:
                acc = acc.add(term)
        return acc

    return expand(tuple(range(n)), tuple(range(n)))
