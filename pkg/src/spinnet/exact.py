"""Exact number types: half-integer spins, canonical radicals q*sqrt(r), and
finite sums of such radicals.

All values are immutable and every operation is pure, so everything here can
be shared freely between threads.  Spins are stored as doubled integers
(``twice`` = 2j), which turns every triangle/parity selection rule into plain
integer arithmetic.  Radicals are kept in a canonical form: square factors of
the radicand are absorbed into the rational coefficient, so equal values have
equal representations and equality is a tuple comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DomainError

#: Trial-division bound for extracting square factors from radicands.  The
#: radicands produced by recoupling coefficients factor into primes bounded by
#: a few times the largest spin, so the bound is never reached in practice.
SQUAREFREE_TRIAL_BOUND = 10**6

RationalLike = Union[int, Fraction, str]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ints, strings like '3/4', and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


# ---------------------------------------------------------------------------
# Spin
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Spin:
    """A non-negative half-integer angular momentum label, stored as 2j."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise DomainError(f"spin must store an integer 2j, got {self.twice!r}")
        if self.twice < 0:
            raise DomainError(f"spin must be non-negative, got 2j = {self.twice}")

    @classmethod
    def of(cls, value) -> "Spin":
        """Build a Spin from an int, Fraction, 'p/2' string, or Spin."""
        if isinstance(value, Spin):
            return value
        q = as_fraction(value) if not isinstance(value, int) else Fraction(value)
        twice = q * 2
        if twice.denominator != 1:
            raise DomainError(f"{value!r} is not a half-integer")
        return cls(int(twice))

    @property
    def j(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def twice_of(value) -> int:
    """Doubled value of a half-integer given as Spin, int, Fraction or 'p/q'."""
    if isinstance(value, Spin):
        return value.twice
    if isinstance(value, int):
        return 2 * value
    q = as_fraction(value)
    t = q * 2
    if t.denominator != 1:
        raise DomainError(f"{value!r} is not a half-integer")
    return int(t)


# ---------------------------------------------------------------------------
# square-free decomposition
# ---------------------------------------------------------------------------


def _square_free_split(n: int, bound: int = SQUAREFREE_TRIAL_BOUND) -> tuple[int, int]:
    """Split n > 0 as a*a*b with b square-free (up to the trial bound).

    Primes above ``bound`` are not factored out individually, but a remaining
    cofactor that is itself a perfect square is still extracted.
    """
    if n <= 0:
        raise ValueError("need a positive integer")
    a, b = 1, 1
    # Strip 2s, then odd trial divisors.
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    a <<= e // 2
    if e % 2:
        b <<= 1
    p = 3
    while p * p <= n and p <= bound:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            a *= p ** (e // 2)
            if e % 2:
                b *= p
        p += 2
    if n > 1:
        r = math.isqrt(n)
        if r * r == n:
            a *= r
        else:
            b *= n
    return a, b


def sqrt_rational(q: Fraction) -> tuple[Fraction, Fraction]:
    """Write sqrt(q) = c*sqrt(r) with r a canonical square-free rational."""
    if q < 0:
        raise DomainError("radicand must be non-negative")
    if q == 0:
        return Fraction(0), Fraction(0)
    # sqrt(p/q) = sqrt(p*q)/q; factor the integer p*q.
    m = q.numerator * q.denominator
    a, b = _square_free_split(m)
    return Fraction(a, q.denominator), Fraction(b)


# ---------------------------------------------------------------------------
# ExactRadical
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactRadical:
    """An exact value coeff*sqrt(radicand), kept canonical.

    Canonical form: the radicand is a square-free positive rational (square
    factors absorbed into the coefficient), and the value zero is stored as
    (0, 0).  Two radicals are equal iff their fields are equal.
    """

    coeff: Fraction
    radicand: Fraction

    @staticmethod
    def of(coeff: RationalLike, radicand: RationalLike = 1) -> "ExactRadical":
        c = as_fraction(coeff)
        r = as_fraction(radicand)
        if r < 0:
            raise DomainError("radicand must be non-negative")
        if c == 0 or r == 0:
            return ExactRadical(Fraction(0), Fraction(0))
        extra, squarefree = sqrt_rational(r)
        return ExactRadical(c * extra, squarefree)

    @staticmethod
    def zero() -> "ExactRadical":
        return ExactRadical(Fraction(0), Fraction(0))

    @staticmethod
    def one() -> "ExactRadical":
        return ExactRadical(Fraction(1), Fraction(1))

    @staticmethod
    def sqrt(q: RationalLike) -> "ExactRadical":
        """sqrt of a non-negative rational as a canonical radical."""
        return ExactRadical.of(1, q)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def is_rational(self) -> bool:
        return self.radicand in (0, 1)

    def square(self) -> Fraction:
        """Exact square, always rational."""
        return self.coeff * self.coeff * self.radicand

    def __mul__(self, other):
        if isinstance(other, ExactRadical):
            if self.is_zero or other.is_zero:
                return ExactRadical.zero()
            return ExactRadical.of(self.coeff * other.coeff,
                                   self.radicand * other.radicand)
        return ExactRadical.of(self.coeff * as_fraction(other), self.radicand)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ExactRadical):
            if other.is_zero:
                raise ZeroDivisionError("division by zero radical")
            # 1/sqrt(r) = sqrt(r)/r
            return ExactRadical.of(self.coeff / (other.coeff * other.radicand),
                                   self.radicand * other.radicand)
        return ExactRadical.of(self.coeff / as_fraction(other), self.radicand)

    def __neg__(self):
        return ExactRadical(-self.coeff, self.radicand)

    def __add__(self, other):
        return RadicalSum.of(self) + other

    __radd__ = __add__

    def __sub__(self, other):
        return RadicalSum.of(self) - other

    def evaluate(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational approximation and rigorous error bound, see RadicalSum."""
        return RadicalSum.of(self).evaluate(bits)

    def to_float(self) -> float:
        approx, _ = self.evaluate(96)
        return float(approx)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if self.radicand == 1:
            return str(self.coeff)
        return f"{self.coeff}*sqrt({self.radicand})"


def radical_mul(a: ExactRadical, b: ExactRadical) -> ExactRadical:
    """Product of two radicals, canonical."""
    return a * b


# ---------------------------------------------------------------------------
# RadicalSum
# ---------------------------------------------------------------------------


def _approx_sqrt(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """(approximation, bound) with |approx - sqrt(q)| <= bound <= 2**-bits."""
    if q == 0:
        return Fraction(0), Fraction(0)
    num, den = q.numerator, q.denominator
    # sqrt(num/den) = sqrt(num*den)/den; floor integer sqrt at 2**bits scale.
    scaled = num * den << (2 * bits)
    root = math.isqrt(scaled)
    approx = Fraction(root, den << bits)
    return approx, Fraction(1, den << bits)


@dataclass(frozen=True)
class RadicalSum:
    """A finite sum of ExactRadical terms with pairwise distinct radicands.

    Terms are merged by radicand and sorted, so the representation is
    canonical and equality is structural.
    """

    terms: tuple[ExactRadical, ...]

    @staticmethod
    def of(*values) -> "RadicalSum":
        terms: list[ExactRadical] = []
        for v in values:
            if isinstance(v, RadicalSum):
                terms.extend(v.terms)
            elif isinstance(v, ExactRadical):
                terms.append(v)
            else:
                terms.append(ExactRadical.of(as_fraction(v)))
        return RadicalSum._merge(terms)

    @staticmethod
    def zero() -> "RadicalSum":
        return RadicalSum(())

    @staticmethod
    def _merge(terms: Iterable[ExactRadical]) -> "RadicalSum":
        acc: dict[Fraction, Fraction] = {}
        for t in terms:
            if t.is_zero:
                continue
            acc[t.radicand] = acc.get(t.radicand, Fraction(0)) + t.coeff
        merged = tuple(
            ExactRadical(c, r)
            for r, c in sorted(acc.items())
            if c != 0
        )
        return RadicalSum(merged)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_rational(self) -> bool:
        return all(t.is_rational for t in self.terms)

    def as_rational(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if len(self.terms) == 1 and self.terms[0].radicand == 1:
            return self.terms[0].coeff
        raise DomainError(f"{self} is not rational")

    def __add__(self, other):
        other = other if isinstance(other, RadicalSum) else RadicalSum.of(other)
        return RadicalSum._merge(self.terms + other.terms)

    __radd__ = __add__

    def __sub__(self, other):
        other = other if isinstance(other, RadicalSum) else RadicalSum.of(other)
        return self + (-other)

    def __neg__(self):
        return RadicalSum(tuple(-t for t in self.terms))

    def __mul__(self, other):
        if isinstance(other, RadicalSum):
            return RadicalSum._merge(
                a * b for a in self.terms for b in other.terms
            )
        if isinstance(other, ExactRadical):
            return RadicalSum._merge(t * other for t in self.terms)
        q = as_fraction(other)
        return RadicalSum(tuple(ExactRadical(t.coeff * q, t.radicand)
                                for t in self.terms)) if q else RadicalSum.zero()

    __rmul__ = __mul__

    def evaluate(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational approximation of the value plus a rigorous error bound.

        The bound covers the sqrt approximations only; the returned
        approximation itself is an exact rational, so callers converting to
        float must add their own rounding slack (see to_float).
        """
        if bits < 32:
            raise DomainError("precision must be at least 32 bits")
        total = Fraction(0)
        bound = Fraction(0)
        for t in self.terms:
            approx, err = _approx_sqrt(t.radicand, bits)
            total += t.coeff * approx
            bound += abs(t.coeff) * err
        return total, bound

    def to_float(self, bits: int = 96) -> tuple[float, float]:
        """Double approximation and an error bound valid for the double."""
        approx, bound = self.evaluate(bits)
        value = float(approx)
        # float() rounds correctly, so the extra error is at most half an ulp.
        ulp = math.ulp(value) if value else 5e-324
        total_bound = float(bound + Fraction(ulp)) * (1 + 2**-50) + 5e-324
        return value, total_bound

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(str(t) for t in self.terms)


def radical_sum_eval(s: RadicalSum, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Approximate a radical sum: (value, bound) with |value - exact| <= bound."""
    return s.evaluate(bits)


def radical_eq(a, b) -> bool:
    """Exact equality of radicals/radical sums via canonical comparison."""
    sa = a if isinstance(a, RadicalSum) else RadicalSum.of(a)
    sb = b if isinstance(b, RadicalSum) else RadicalSum.of(b)
    return sa.terms == sb.terms
