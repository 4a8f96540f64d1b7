"""Non-emptiness classification for moduli of alpha-stable pairs on the line.

``classify`` dispatches on k: the fully solved cases (k = 1; k = 2 with
n >= 3; k = n = 2) return exact open intervals of weights, three families
near k = n return partial knowledge, everything else only the necessary
region.  Exact rules take precedence on overlapping k, and ``cross_check``
asserts the overlaps agree.

All interval endpoints are exact rationals; the half-integer degree bound in
the k = 2 rule makes floating point genuinely unsafe here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar

from .numerology import Numerology, beta_nonnegative_threshold, brill_noether, decompose


@dataclass(frozen=True)
class AlphaInterval:
    """Interval of weights with exact rational endpoints and openness flags.

    ``None`` endpoints mean -infinity / +infinity.  Degenerate open intervals
    normalize to the canonical empty interval.
    """

    lower: Fraction | None
    upper: Fraction | None
    lower_open: bool = True
    upper_open: bool = True
    empty: bool = False

    EMPTY: ClassVar["AlphaInterval"]

    @staticmethod
    def open_interval(lower: Fraction | None, upper: Fraction | None) -> "AlphaInterval":
        if lower is not None and upper is not None and lower >= upper:
            return AlphaInterval.EMPTY
        return AlphaInterval(lower, upper, True, True)

    @staticmethod
    def closed_interval(lower: Fraction, upper: Fraction) -> "AlphaInterval":
        if lower > upper:
            return AlphaInterval.EMPTY
        return AlphaInterval(lower, upper, False, False)

    def contains(self, x: Fraction) -> bool:
        if self.empty:
            return False
        if self.lower is not None:
            if x < self.lower or (self.lower_open and x == self.lower):
                return False
        if self.upper is not None:
            if x > self.upper or (self.upper_open and x == self.upper):
                return False
        return True

    def issubset(self, other: "AlphaInterval") -> bool:
        if self.empty:
            return True
        if other.empty:
            return False
        if other.lower is not None:
            if self.lower is None:
                return False
            if self.lower < other.lower:
                return False
            if self.lower == other.lower and other.lower_open and not self.lower_open:
                return False
        if other.upper is not None:
            if self.upper is None:
                return False
            if self.upper > other.upper:
                return False
            if self.upper == other.upper and other.upper_open and not self.upper_open:
                return False
        return True

    def midpoint(self) -> Fraction:
        """A representative interior point (lower + 1 when unbounded above)."""
        if self.empty:
            raise ValueError("empty interval has no midpoint")
        lo = self.lower if self.lower is not None else Fraction(0)
        if self.upper is None:
            return lo + 1
        if self.lower is None:
            return self.upper - 1
        return (lo + self.upper) / 2

    def to_json_dict(self) -> dict:
        if self.empty:
            return {"empty": True}
        return {
            "empty": False,
            "lower": None if self.lower is None else str(self.lower),
            "lower_open": self.lower_open,
            "upper": None if self.upper is None else str(self.upper),
            "upper_open": self.upper_open,
        }

    def __str__(self) -> str:
        if self.empty:
            return "empty"
        lo = "-inf" if self.lower is None else str(self.lower)
        hi = "inf" if self.upper is None else str(self.upper)
        lb = "(" if self.lower_open or self.lower is None else "["
        rb = ")" if self.upper_open or self.upper is None else "]"
        return f"{lb}{lo}, {hi}{rb}"


AlphaInterval.EMPTY = AlphaInterval(Fraction(0), Fraction(0), True, True, empty=True)


class Status(str, enum.Enum):
    EXACT = "ExactNonEmpty"
    EMPTY = "Empty"
    NECESSARY_ONLY = "NecessaryOnly"
    PARTIALLY_KNOWN = "PartiallyKnown"


@dataclass(frozen=True)
class Verdict:
    """Classification outcome for one triple (n, d, k).

    ``stable_interval`` is the exact non-emptiness interval for EXACT
    verdicts and the proven-sufficient region for PARTIALLY_KNOWN ones
    (possibly empty when only existence is known); ``necessary_region`` always
    holds the intersection of the necessary conditions.
    """

    n: int
    d: int
    k: int
    status: Status
    stable_interval: AlphaInterval
    necessary_region: AlphaInterval
    beta: int
    semistable_notes: tuple[tuple[AlphaInterval, str], ...] = ()
    remarks: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "status": self.status.value,
            "beta": self.beta,
            "stable_interval": self.stable_interval.to_json_dict(),
            "necessary_region": self.necessary_region.to_json_dict(),
            "semistable_notes": [
                {"interval": iv.to_json_dict(), "note": text}
                for iv, text in self.semistable_notes
            ],
            "remarks": list(self.remarks),
        }


def necessary_region(n: int, d: int, k: int) -> AlphaInterval:
    """Intersection of all necessary conditions on the weight.

    alpha > max(0, t/k) always; alpha < d/(n-k) - mn/(k(n-k)) when k < n.
    Empty when d <= 0, beta < 0, or (k < n and the bounds cross, which is
    exactly l <= 0).
    """
    if n < 2:
        raise ValueError("rank n must be >= 2")
    if k < 1:
        raise ValueError("section count k must be >= 1")
    num = decompose(n, d, k)
    if d <= 0 or num.beta < 0:
        return AlphaInterval.EMPTY
    lower = max(Fraction(0), Fraction(num.t, k))
    if k < n:
        if num.l <= 0:
            return AlphaInterval.EMPTY
        upper = Fraction(d, n - k) - Fraction(num.m * n, k * (n - k))
        return AlphaInterval.open_interval(lower, upper)
    return AlphaInterval.open_interval(lower, None)


def _k1_interval(num: Numerology) -> AlphaInterval:
    n = num.n
    upper = Fraction(num.d, n - 1) - Fraction(num.m * n, n - 1)
    return AlphaInterval.open_interval(Fraction(num.t), upper)


def _k2_interval(num: Numerology) -> AlphaInterval:
    n = num.n
    upper = Fraction(num.d, n - 2) - Fraction(num.m * n, 2 * (n - 2))
    return AlphaInterval.open_interval(Fraction(num.t, 2), upper)


def k2_degree_bound(n: int) -> Fraction:
    """Minimal degree for the k = 2 rule: n(n-2)/2 + 3/2."""
    return Fraction(n * (n - 2), 2) + Fraction(3, 2)


def _semistable_notes_k2(n: int, d: int) -> tuple[tuple[AlphaInterval, str], ...]:
    notes = []
    if (n, d) == (4, 6):
        notes.append(
            (
                AlphaInterval.closed_interval(Fraction(1), Fraction(3)),
                "semistable pairs exist exactly for 1 <= alpha <= 3; stable ones never",
            )
        )
    if (n, d) == (3, 2):
        notes.append(
            (
                AlphaInterval.closed_interval(Fraction(2), Fraction(2)),
                "semistable only at alpha = 2; stable pairs never exist",
            )
        )
    if n % 2 == 0 and n >= 4:
        r = n // 2
        if d == 2 * r * (r - 1):
            notes.append(
                (
                    AlphaInterval.closed_interval(Fraction(0), Fraction(r)),
                    f"semistable exactly for 0 <= alpha <= {r}; stable pairs never exist",
                )
            )
    return tuple(notes)


def classify(n: int, d: int, k: int) -> Verdict:
    """Decision procedure for non-emptiness of the stable-pair moduli."""
    if n < 2:
        raise ValueError("rank n must be >= 2")
    if k < 1:
        raise ValueError("section count k must be >= 1")
    num = decompose(n, d, k)
    necessary = necessary_region(n, d, k)
    beta = num.beta

    def verdict(status, stable, notes=(), remarks=()):
        return Verdict(n, d, k, status, stable, necessary, beta, tuple(notes), tuple(remarks))

    if k == 1:
        interval = _k1_interval(num)
        if interval.empty:
            return verdict(Status.EMPTY, AlphaInterval.EMPTY)
        return verdict(Status.EXACT, interval)

    if k == 2 and n >= 3:
        interval = _k2_interval(num) if num.l > 0 else AlphaInterval.EMPTY
        bn_ok = Fraction(d) >= k2_degree_bound(n)
        if not interval.empty and bn_ok and (n, d) != (4, 6):
            return verdict(Status.EXACT, interval)
        return verdict(Status.EMPTY, AlphaInterval.EMPTY, notes=_semistable_notes_k2(n, d))

    if k == 2 and n == 2:
        if d > 2:
            return verdict(
                Status.EXACT, AlphaInterval.open_interval(Fraction(num.t, 2), None)
            )
        return verdict(Status.EMPTY, AlphaInterval.EMPTY)

    if k == n - 1 and k >= 3:
        if d < n:
            return verdict(Status.EMPTY, AlphaInterval.EMPTY)
        return verdict(
            Status.PARTIALLY_KNOWN,
            AlphaInterval.EMPTY,
            remarks=(
                "nonempty for some alpha iff d >= n",
                f"the upper endpoint of the nonempty range is exactly {d}",
                "no explicit proven-sufficient region; the exact lower endpoint is unknown",
            ),
        )

    if k == n and n >= 3:
        if d <= n:
            return verdict(Status.EMPTY, AlphaInterval.EMPTY)
        return verdict(
            Status.PARTIALLY_KNOWN,
            AlphaInterval.EMPTY,
            remarks=(
                "nonempty for some alpha iff d > n",
                "the nonempty range has no upper bound",
                f"the lower endpoint is unknown beyond alpha > {Fraction(num.t, k)}",
            ),
        )

    if k == n + 1:
        if d < n:
            return verdict(Status.EMPTY, AlphaInterval.EMPTY)
        sufficient = AlphaInterval.open_interval(Fraction(num.t), None)
        if num.t == 0:
            remarks = ("the interval (0, inf) is exact here",)
        else:
            remarks = (
                f"proven nonempty for alpha > {num.t}",
                f"the exact lower endpoint lies in [{Fraction(num.t, n + 1)}, {num.t}]",
            )
        return verdict(Status.PARTIALLY_KNOWN, sufficient, remarks=remarks)

    if necessary.empty:
        # the necessary conditions alone rule out every weight
        return verdict(Status.EMPTY, AlphaInterval.EMPTY)
    return verdict(
        Status.NECESSARY_ONLY,
        AlphaInterval.EMPTY,
        remarks=("no exact rule for this k; only the necessary region is known",),
    )


@dataclass(frozen=True)
class CheckEntry:
    name: str
    left: str
    right: str
    agree: bool


@dataclass(frozen=True)
class CrossCheckReport:
    n: int
    d: int
    entries: tuple[CheckEntry, ...]
    exceptional_pair: bool

    @property
    def all_agree(self) -> bool:
        return all(e.agree for e in self.entries)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "all_agree": self.all_agree,
            "exceptional_pair": self.exceptional_pair,
            "checks": [
                {"name": e.name, "left": e.left, "right": e.right, "agree": e.agree}
                for e in self.entries
            ],
        }


def cross_check(n: int, d: int) -> CrossCheckReport:
    """Consistency of the overlapping case rules on a fixed (n, d).

    Where the exact k = 2 rule overlaps the k = n - 1 family (n = 3), their
    upper bounds must coincide at d; the degree thresholds of the dimension
    count and the k = 2 rule are one identity in disguise; (4, 6) is flagged
    as the exceptional pair.
    """
    if n < 2:
        raise ValueError("rank n must be >= 2")
    entries = []
    lhs = beta_nonnegative_threshold(n, 2)
    rhs = k2_degree_bound(n)
    entries.append(
        CheckEntry("k2-degree-thresholds", str(lhs), str(rhs), lhs == rhs)
    )
    if n == 3:
        num = decompose(3, d, 2)
        upper = Fraction(d, 1) - Fraction(num.m * 3, 2)
        entries.append(
            CheckEntry(
                "k2-upper-vs-k-eq-n-minus-1", str(upper), str(Fraction(d)), upper == Fraction(d)
            )
        )
    if n == 2:
        num = decompose(2, d, 1)
        upper = Fraction(d) - Fraction(num.m * 2, 1)
        entries.append(
            CheckEntry(
                "k1-upper-vs-k-eq-n-minus-1", str(upper), str(Fraction(d)), upper == Fraction(d)
            )
        )
    return CrossCheckReport(n, d, tuple(entries), exceptional_pair=(n, d) == (4, 6))
