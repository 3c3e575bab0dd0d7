"""Exact angular-momentum recoupling coefficients.

3j symbols and Clebsch-Gordan coefficients come from the Van der Waerden
single-sum formula.  6j symbols are computed along two fully independent
routes:

* ``six_j_oracle`` -- the classical single-sum formula with triangle
  coefficients; no dependency on the polynomial machinery.
* ``six_j_racah`` -- through the correspondence with Racah polynomials on
  the quadratic lattice x(s) = s(s+1), s = j23.  The parameter map used here
  is the symmetry-canonicalized closed form

      alpha = |j1-j2-j3+j|            beta = |j1-j2+j3-j|
      a     = max(|j1-j|, |j3-j2|)    b    = min(j1+j, j3+j2) + 1
      n     = j12 - max(|j1-j2|, |j3-j|)

  which reduces to the one-orientation map (a = j3-j2, b = j+j3+1,
  alpha = j1-j2-j3+j, beta = j1-j2+j3-j, n = j12-j1+j2) exposed by
  ``param_map`` whenever that orientation is valid, and extends it to every
  admissible label set.  The value is

      {6j} = (-1)^E u_n(x(s)) sqrt(rho(s) dx(s-1/2))
             / (d_n sqrt((2 j12 + 1)(2 j23 + 1))),
      E = (j1+j2+j3+j) + (s - a) + (b - a - 1).

9j symbols and 12j symbols of the second kind are finite contractions of
6j factors over one internal spin.

Everything is exact: values are ExactRadical / RadicalSum objects.  Spins
enter as doubled integers internally.  The factorial cache and the 6j memo
tables are insert-once dictionaries: concurrent readers may race to insert
the same immutable value, which is harmless under the GIL.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import orthopoly
from .errors import DomainError, ReflectionNeededError
from .exact import ExactRadical, RadicalSum, Spin, twice_of
from .orthopoly import FamilySpec

# ---------------------------------------------------------------------------
# factorial cache (exact integers, append-only)
# ---------------------------------------------------------------------------

_FACT: list[int] = [1, 1]


def _fact(n: int) -> int:
    while n >= len(_FACT):
        _FACT.append(_FACT[-1] * len(_FACT))
    return _FACT[n]


def _tri_ok(ta: int, tb: int, tc: int) -> bool:
    return abs(ta - tb) <= tc <= ta + tb and (ta + tb + tc) % 2 == 0


def _delta_sq(ta: int, tb: int, tc: int) -> Fraction:
    """Squared triangle coefficient of three doubled spins."""
    return Fraction(
        _fact((ta + tb - tc) // 2) * _fact((ta - tb + tc) // 2)
        * _fact((-ta + tb + tc) // 2),
        _fact((ta + tb + tc) // 2 + 1))


# ---------------------------------------------------------------------------
# labels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SixJLabels:
    """Labels of a 6j symbol laid out as {j1 j2 j12 / j3 j j23}."""

    j1: Spin
    j2: Spin
    j12: Spin
    j3: Spin
    j: Spin
    j23: Spin

    @staticmethod
    def of(j1, j2, j12, j3, j, j23) -> "SixJLabels":
        return SixJLabels(*(Spin.of(v) for v in (j1, j2, j12, j3, j, j23)))

    @property
    def doubled(self) -> tuple[int, int, int, int, int, int]:
        return (self.j1.twice, self.j2.twice, self.j12.twice,
                self.j3.twice, self.j.twice, self.j23.twice)

    @property
    def admissible(self) -> bool:
        t1, t2, t12, t3, tj, t23 = self.doubled
        return (_tri_ok(t1, t2, t12) and _tri_ok(t3, tj, t12)
                and _tri_ok(t1, tj, t23) and _tri_ok(t3, t2, t23))


@dataclass(frozen=True)
class RacahParams:
    """Parameter bundle linking a 6j symbol to a Racah polynomial."""

    alpha: Fraction
    beta: Fraction
    a: Fraction
    b: Fraction
    n: int
    s: Fraction

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("Racah degree n must be non-negative")
        if not (self.a <= self.s <= self.b - 1):
            raise DomainError("lattice point s outside [a, b-1]")


# ---------------------------------------------------------------------------
# 3j / Clebsch-Gordan
# ---------------------------------------------------------------------------


def _three_j_t(t1: int, t2: int, t3: int, m1: int, m2: int, m3: int) -> ExactRadical:
    """3j symbol from doubled spins and doubled projections."""
    if m1 + m2 + m3 != 0 or not _tri_ok(t1, t2, t3):
        return ExactRadical.zero()
    if abs(m1) > t1 or abs(m2) > t2 or abs(m3) > t3:
        return ExactRadical.zero()
    if (t1 + m1) % 2 or (t2 + m2) % 2 or (t3 + m3) % 2:
        raise DomainError("projection must differ from its spin by an integer")
    radicand = _delta_sq(t1, t2, t3)
    for t, m in ((t1, m1), (t2, m2), (t3, m3)):
        radicand *= _fact((t + m) // 2) * _fact((t - m) // 2)
    k_lo = max(0, (t2 - t3 - m1) // 2, (t1 - t3 + m2) // 2)
    k_hi = min((t1 + t2 - t3) // 2, (t1 - m1) // 2, (t2 + m2) // 2)
    total = Fraction(0)
    for k in range(k_lo, k_hi + 1):
        den = (_fact(k)
               * _fact((t1 + t2 - t3) // 2 - k)
               * _fact((t1 - m1) // 2 - k)
               * _fact((t2 + m2) // 2 - k)
               * _fact((t3 - t2 + m1) // 2 + k)
               * _fact((t3 - t1 - m2) // 2 + k))
        total += Fraction(-1 if k % 2 else 1, den)
    phase_t = t1 - t2 - m3
    assert phase_t % 2 == 0
    sign = -1 if (phase_t // 2) % 2 else 1
    return ExactRadical.of(sign * total, radicand)


def three_j(j1, j2, j3, m1, m2, m3) -> ExactRadical:
    """Wigner 3j symbol (j1 j2 j3 / m1 m2 m3), exact.

    Inadmissible arguments give an exact 0 (selection rules are semantics,
    not errors).
    """
    t1, t2, t3 = (Spin.of(j).twice for j in (j1, j2, j3))
    tm1, tm2, tm3 = (twice_of(m) for m in (m1, m2, m3))
    return _three_j_t(t1, t2, t3, tm1, tm2, tm3)


def clebsch_gordan(j1, j2, m1, m2, j, m) -> ExactRadical:
    """<j1 j2 m1 m2 | j1 j2 j m> with the Condon-Shortley phase."""
    t1, t2, tj = (Spin.of(x).twice for x in (j1, j2, j))
    tm1, tm2, tm = (twice_of(x) for x in (m1, m2, m))
    base = _three_j_t(t1, t2, tj, tm1, tm2, -tm)
    if base.is_zero:
        return base
    phase_t = t1 - t2 + tm
    assert phase_t % 2 == 0
    sign = -1 if (phase_t // 2) % 2 else 1
    return base * ExactRadical.of(sign, tj + 1)


# ---------------------------------------------------------------------------
# 6j: single-sum oracle
# ---------------------------------------------------------------------------

_ORACLE_CACHE: dict[tuple, tuple[Fraction, Fraction]] = {}

# The 24 classical symmetries: permute columns, swap upper/lower rows in an
# even number of columns.  Expressed as index permutations on the tuple
# (j1, j2, j12, j3, j, j23) whose columns are (0,3), (1,4), (2,5).
_SYMMETRY_INDEX: list[tuple[int, ...]] = []
for _perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
    for _flips in ((0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)):
        up, lo = [], []
        for col, fl in zip(_perm, _flips):
            up.append(col + 3 if fl else col)
            lo.append(col if fl else col + 3)
        _SYMMETRY_INDEX.append(tuple(up + lo))


def _orbit_min(t: tuple) -> tuple:
    return min(tuple(t[i] for i in idx) for idx in _SYMMETRY_INDEX)


def _six_j_oracle_t(t: tuple) -> tuple[Fraction, Fraction]:
    """(coeff, radicand) of the 6j via the single-sum formula; not canonical."""
    t1, t2, t12, t3, tj, t23 = t
    if not (_tri_ok(t1, t2, t12) and _tri_ok(t3, tj, t12)
            and _tri_ok(t1, tj, t23) and _tri_ok(t3, t2, t23)):
        return Fraction(0), Fraction(0)
    key = _orbit_min(t)
    hit = _ORACLE_CACHE.get(key)
    if hit is not None:
        return hit
    k1, k2, k12, k3, kj, k23 = key
    radicand = (_delta_sq(k1, k2, k12) * _delta_sq(k1, kj, k23)
                * _delta_sq(k3, k2, k23) * _delta_sq(k3, kj, k12))
    T = ((k1 + k2 + k12) // 2, (k1 + kj + k23) // 2,
         (k3 + k2 + k23) // 2, (k3 + kj + k12) // 2)
    Q = ((k1 + k2 + k3 + kj) // 2, (k2 + k12 + kj + k23) // 2,
         (k1 + k12 + k3 + k23) // 2)
    total = Fraction(0)
    for z in range(max(T), min(Q) + 1):
        den = 1
        for Ti in T:
            den *= _fact(z - Ti)
        for Qi in Q:
            den *= _fact(Qi - z)
        total += Fraction(-_fact(z + 1) if z % 2 else _fact(z + 1), den)
    value = (total, radicand)
    _ORACLE_CACHE[key] = value
    return value


def six_j_oracle(labels: SixJLabels) -> ExactRadical:
    """6j symbol via the classical single-sum formula (verification path)."""
    coeff, radicand = _six_j_oracle_t(labels.doubled)
    return ExactRadical.of(coeff, radicand)


# ---------------------------------------------------------------------------
# 6j: Racah-polynomial path
# ---------------------------------------------------------------------------


class _RacahFamilyTable:
    """Lazy per-family table of polynomial values, weights and norms."""

    __slots__ = ("spec", "ta", "tb", "size", "rho", "_rows")

    def __init__(self, tal: int, tbe: int, ta: int, tb: int):
        self.spec = FamilySpec.racah(Fraction(tal, 2), Fraction(tbe, 2),
                                     Fraction(ta, 2), Fraction(tb, 2))
        self.ta, self.tb = ta, tb
        self.size = (tb - ta) // 2
        a = Fraction(ta, 2)
        rho = [Fraction(1)]
        for i in range(self.size - 1):
            rho.append(rho[-1] * orthopoly._pearson_ratio(self.spec, a + i))
        self.rho = rho
        self._rows: dict[int, tuple[list[Fraction], Fraction]] = {}

    def row(self, n: int) -> tuple[list[Fraction], Fraction]:
        """Values of u_n over the support and the squared norm d_n^2."""
        hit = self._rows.get(n)
        if hit is not None:
            return hit
        a = Fraction(self.ta, 2)
        values = [orthopoly.eval_poly_unchecked(self.spec, n, a + i)
                  for i in range(self.size)]
        dn2 = Fraction(0)
        for i, (u, w) in enumerate(zip(values, self.rho)):
            dn2 += u * u * w * (self.ta + 2 * i + 1)
        row = (values, dn2)
        self._rows[n] = row
        return row


_FAMILY_CACHE: dict[tuple, _RacahFamilyTable] = {}


def _general_params_t(t: tuple) -> tuple[int, int, int, int, int, int]:
    """(tal, tbe, ta, tb, n, ts) of the canonical parameter map, doubled."""
    t1, t2, t12, t3, tj, t23 = t
    ta = max(abs(t1 - tj), abs(t3 - t2))
    tb = min(t1 + tj, t3 + t2) + 2
    tal = abs(t1 - t2 - t3 + tj)
    tbe = abs(t1 - t2 + t3 - tj)
    tn = t12 - max(abs(t1 - t2), abs(t3 - tj))
    return tal, tbe, ta, tb, tn, t23


def _six_j_racah_t(t: tuple) -> tuple[Fraction, Fraction]:
    """(coeff, radicand) via the Racah-polynomial correspondence."""
    t1, t2, t12, t3, tj, t23 = t
    if not (_tri_ok(t1, t2, t12) and _tri_ok(t3, tj, t12)
            and _tri_ok(t1, tj, t23) and _tri_ok(t3, t2, t23)):
        return Fraction(0), Fraction(0)
    tal, tbe, ta, tb, tn, ts = _general_params_t(t)
    if tn < 0 or tn % 2 or (tb - ta) % 2 or tn > tb - ta - 2 \
            or not (ta <= ts <= tb - 2) or (ts - ta) % 2:
        raise DomainError(f"canonical Racah map failed for {t}")  # unreachable
    key = (tal, tbe, ta, tb)
    table = _FAMILY_CACHE.get(key)
    if table is None:
        table = _RacahFamilyTable(*key)
        _FAMILY_CACHE[key] = table
    n = tn // 2
    i = (ts - ta) // 2
    values, dn2 = table.row(n)
    u = values[i]
    rho = table.rho[i]
    exp_t = (t1 + t2 + t3 + tj) + (ts - ta) + (tb - ta - 2)
    assert exp_t % 2 == 0
    sign = -1 if (exp_t // 2) % 2 else 1
    coeff = sign * u
    radicand = rho * (ts + 1) / (dn2 * (t12 + 1) * (t23 + 1))
    return coeff, radicand


def six_j_racah(labels: SixJLabels) -> ExactRadical:
    """6j symbol via the Racah-polynomial correspondence (primary path)."""
    coeff, radicand = _six_j_racah_t(labels.doubled)
    return ExactRadical.of(coeff, radicand)


def param_map(labels: SixJLabels) -> RacahParams:
    """The one-orientation parameter map of the correspondence.

    Returns a = j3-j2, b = j+j3+1, alpha = j1-j2-j3+j, beta = j1-j2+j3-j,
    s = j23 and the degree n = j12 - j1 + j2.  Raises ReflectionNeededError
    when this orientation is invalid (the canonical map used by six_j_racah
    is then a symmetry reflection of it).
    """
    if not labels.admissible:
        raise DomainError("labels are not admissible")
    t1, t2, t12, t3, tj, t23 = labels.doubled
    lit = (t1 - t2 - t3 + tj, t1 - t2 + t3 - tj,
           t3 - t2, tj + t3 + 2, t12 - t1 + t2, t23)
    if lit != _general_params_t(labels.doubled):
        raise ReflectionNeededError(
            "direct parameter map invalid for this orientation; "
            "a symmetry reflection is required")
    tal, tbe, ta, tb, tn, ts = lit
    return RacahParams(alpha=Fraction(tal, 2), beta=Fraction(tbe, 2),
                       a=Fraction(ta, 2), b=Fraction(tb, 2),
                       n=tn // 2, s=Fraction(ts, 2))


def racah_params_canonical(labels: SixJLabels) -> RacahParams:
    """Parameters actually used by six_j_racah (valid for any admissible labels)."""
    if not labels.admissible:
        raise DomainError("labels are not admissible")
    tal, tbe, ta, tb, tn, ts = _general_params_t(labels.doubled)
    return RacahParams(alpha=Fraction(tal, 2), beta=Fraction(tbe, 2),
                       a=Fraction(ta, 2), b=Fraction(tb, 2),
                       n=tn // 2, s=Fraction(ts, 2))


# ---------------------------------------------------------------------------
# recoupling matrix U
# ---------------------------------------------------------------------------


def recoupling_u(j1, j2, j3, j, j12, j23, path: str = "oracle") -> ExactRadical:
    """Recoupling bracket U(j12, j23) between (j1 j2) j3 and j1 (j2 j3) bases."""
    labels = SixJLabels.of(j1, j2, j12, j3, j, j23)
    t1, t2, t12, t3, tj, t23 = labels.doubled
    value = _SIX_J_PATHS[path](labels)
    if value.is_zero:
        return value
    phase_t = t1 + t2 + t3 + tj
    assert phase_t % 2 == 0
    sign = -1 if (phase_t // 2) % 2 else 1
    return value * ExactRadical.of(sign, (t12 + 1) * (t23 + 1))


# ---------------------------------------------------------------------------
# 9j
# ---------------------------------------------------------------------------


def _six_j_value(t: tuple, path: str) -> ExactRadical:
    if path == "oracle":
        return ExactRadical.of(*_six_j_oracle_t(t))
    if path == "racah":
        c, r = _six_j_racah_t(t) if SixJLabels(*map(Spin, t)).admissible \
            else (Fraction(0), Fraction(0))
        return ExactRadical.of(c, r)
    raise DomainError(f"unknown 6j path {path!r}")


def nine_j(labels: Iterable, path: str = "oracle") -> RadicalSum:
    """9j symbol via the single-sum contraction of three 6j factors.

    ``labels`` is a 3x3 row-major iterable (a b c / d e f / g h i).
    """
    flat = [Spin.of(x).twice for row in labels for x in row]
    if len(flat) != 9:
        raise DomainError("nine_j needs a 3x3 array of spins")
    a, b, c, d, e, f, g, h, i = flat
    if not (_tri_ok(a, b, c) and _tri_ok(d, e, f) and _tri_ok(g, h, i)
            and _tri_ok(a, d, g) and _tri_ok(b, e, h) and _tri_ok(c, f, i)):
        return RadicalSum.zero()
    lo = max(abs(a - i), abs(f - b), abs(d - h))
    hi = min(a + i, f + b, d + h)
    total = RadicalSum.zero()
    for x in range(lo, hi + 1, 2):
        term = (_six_j_value((a, b, c, f, i, x), path)
                * _six_j_value((d, e, f, b, x, h), path)
                * _six_j_value((g, h, i, x, a, d), path))
        if term.is_zero:
            continue
        # (-1)^{2x} (2x+1): doubled exponent 2x is the stored integer x-doubled
        weight = (x + 1) * (-1 if x % 2 else 1)
        total = total + term * weight
    return total


# ---------------------------------------------------------------------------
# 12j of the second kind
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwelveJLabels:
    """Labels of the 12j symbol of the second kind: rows j[4], l[4], k[4]."""

    j: tuple[Spin, Spin, Spin, Spin]
    l: tuple[Spin, Spin, Spin, Spin]
    k: tuple[Spin, Spin, Spin, Spin]

    @staticmethod
    def of(j, l, k) -> "TwelveJLabels":
        mk = lambda row: tuple(Spin.of(x) for x in row)
        j, l, k = mk(j), mk(l), mk(k)
        if not (len(j) == len(l) == len(k) == 4):
            raise DomainError("twelve_j needs three rows of four spins")
        return TwelveJLabels(j, l, k)

    def factor_tuples(self, tx: int) -> list[tuple]:
        """The four 6j label tuples at internal doubled spin tx."""
        tj = [s.twice for s in self.j]
        tl = [s.twice for s in self.l]
        tk = [s.twice for s in self.k]
        return [
            (tj[i], tk[i], tx, tk[(i + 1) % 4], tj[(i + 1) % 4], tl[i])
            for i in range(4)
        ]

    @property
    def phase_r_doubled(self) -> int:
        return sum(s.twice for s in self.j + self.l + self.k)


def _twelve_j_x_range(labels: TwelveJLabels) -> range:
    tj = [s.twice for s in labels.j]
    tk = [s.twice for s in labels.k]
    lo, hi = 0, 10**9
    parity = None
    for i in range(4):
        for ta, tb in ((tj[i], tk[i]), (tk[(i + 1) % 4], tj[(i + 1) % 4])):
            lo = max(lo, abs(ta - tb))
            hi = min(hi, ta + tb)
            p = (ta + tb) % 2
            if parity is None:
                parity = p
            elif parity != p:
                return range(0)
    if parity is None:
        return range(0)
    if lo % 2 != parity:
        lo += 1
    if lo > hi:
        return range(0)
    return range(lo, hi + 1, 2)


def twelve_j_second_kind(labels: TwelveJLabels, path: str = "oracle") -> RadicalSum:
    """12j symbol of the second kind as a sum over one internal spin.

    S = sum_x (2x+1) (-1)^(R + 4x) prod_i {j_i k_i x / k_(i+1) j_(i+1) l_i},
    R = sum_i (j_i + l_i + k_i).  Inadmissible x terms vanish; an empty
    range gives exact 0.
    """
    total = RadicalSum.zero()
    r2 = labels.phase_r_doubled
    for tx in _twelve_j_x_range(labels):
        term: Optional[ExactRadical] = None
        for ft in labels.factor_tuples(tx):
            val = _six_j_value(ft, path)
            if val.is_zero:
                term = None
                break
            term = val if term is None else term * val
        if term is None:
            continue
        exp_t = r2 + 4 * tx  # doubled exponent of (-1)^(R+4x)
        assert exp_t % 2 == 0
        sign = -1 if (exp_t // 2) % 2 else 1
        total = total + term * (sign * (tx + 1))
    return total


@dataclass(frozen=True)
class RacahFactor:
    """One Racah-polynomial factor of the 12j multivariable expansion."""

    params: RacahParams
    value: ExactRadical          # u_n(x(s)) sqrt(rho dx) / d_n
    six_j: ExactRadical          # the underlying 6j factor
    labels: SixJLabels


@dataclass(frozen=True)
class MultiPolyTerm:
    x: Spin
    factors: tuple[RacahFactor, ...]


@dataclass(frozen=True)
class MultiPolyExpansion:
    """Per-x decomposition of a 12j symbol into four Racah factors."""

    labels: TwelveJLabels
    terms: tuple[MultiPolyTerm, ...]

    def total(self) -> RadicalSum:
        """Recombine with the (2x+1)(-1)^(R+4x) convention; equals the 12j."""
        out = RadicalSum.zero()
        r2 = self.labels.phase_r_doubled
        for term in self.terms:
            prod: Optional[ExactRadical] = None
            for f in term.factors:
                prod = f.six_j if prod is None else prod * f.six_j
            exp_t = r2 + 4 * term.x.twice
            sign = -1 if (exp_t // 2) % 2 else 1
            out = out + prod * (sign * (term.x.twice + 1))
        return out


def twelve_j_as_multipoly(labels: TwelveJLabels) -> MultiPolyExpansion:
    """Expose the 12j as a polynomial of four discrete variables.

    Each term carries, for every 6j factor, the Racah parameters of the
    canonical map together with the orthonormal factor
    u_n sqrt(rho dx)/d_n; dividing that factor by its correspondence
    prefactor recovers the plain 6j, so ``total()`` reproduces
    twelve_j_second_kind exactly.
    """
    terms = []
    for tx in _twelve_j_x_range(labels):
        factors = []
        for ft in labels.factor_tuples(tx):
            lab = SixJLabels(*map(Spin, ft))
            if not lab.admissible:
                factors = None
                break
            sj = ExactRadical.of(*_six_j_racah_t(ft))
            if sj.is_zero:
                factors = None
                break
            params = racah_params_canonical(lab)
            # orthonormal factor = (-1)^E sqrt((2 j12 + 1)(2 j23 + 1)) {6j}
            t1, t2, t12, t3, tj, t23 = ft
            _, _, ta, tb, _, ts = _general_params_t(ft)
            exp_t = (t1 + t2 + t3 + tj) + (ts - ta) + (tb - ta - 2)
            sign = -1 if (exp_t // 2) % 2 else 1
            ortho = sj * ExactRadical.of(sign, (t12 + 1) * (t23 + 1))
            factors.append(RacahFactor(params=params, value=ortho,
                                       six_j=sj, labels=lab))
        if factors:
            terms.append(MultiPolyTerm(x=Spin(tx), factors=tuple(factors)))
    return MultiPolyExpansion(labels=labels, terms=tuple(terms))


_SIX_J_PATHS = {"oracle": six_j_oracle, "racah": six_j_racah}


def six_j(labels: SixJLabels, path: str = "racah") -> ExactRadical:
    """6j symbol; ``path`` selects 'racah' or 'oracle'."""
    try:
        return _SIX_J_PATHS[path](labels)
    except KeyError:
        raise DomainError(f"unknown 6j path {path!r}") from None
