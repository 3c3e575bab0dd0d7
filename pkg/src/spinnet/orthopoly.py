"""Classical discrete orthogonal polynomials, evaluated exactly.

Six families are provided.  On the linear lattice x(s) = s: Hahn, Kravchuk,
Meixner, Charlier.  On the quadratic lattice x(s) = s(s+1): Racah and dual
Hahn.  Every evaluation is an exact rational computed from the terminating
hypergeometric series; no floating point is involved anywhere.

Conventions (documented because several are convention-dependent):

* Normalization follows the classical difference-equation treatment in which
  the degree-0 member is identically 1 and the hypergeometric prefactors are

    hahn      h_n(x)  = (-1)^n (b+1)_n (N-n)_n / n! * 3F2(-n, n+a+b+1, -x; b+1, 1-N; 1)
    kravchuk  k_n(x)  = (-p)^n C(N,n) * 2F1(-n, -x; -N; 1/p)
    meixner   m_n(x)  = (g)_n * 2F1(-n, -x; g; 1 - 1/mu)
    charlier  c_n(x)  = 2F0(-n, -x; -; -1/mu)
    racah     u_n(x(s)) = (a-b+1)_n (b+1)_n (a+b+al+1)_n / n!
                          * 4F3(-n, al+be+n+1, a-s, a+s+1; be+1, a-b+1, a+b+al+1; 1)
    dual hahn w_n(x(s)) = (a-b+1)_n (a+c+1)_n / n! * 3F2(-n, a-s, a+s+1; a-b+1, a+c+1; 1)

* Weights: Kravchuk uses the probability weight C(N,x) p^x (1-p)^(N-x);
  Charlier uses mu^x/x!; Meixner uses (g)_x mu^x/x!; Hahn is anchored at
  rho(0) = 1 and Racah/dual Hahn at rho(a) = 1, with the ratio
  rho(s+1)/rho(s) determined by the Pearson pair (sigma, tau).  Rescaling a
  weight rescales the squared norms identically, so orthogonality statements
  are scale-free.

* Orthogonality on the quadratic lattice carries the measure factor
  dx(s-1/2) = 2s+1.

* Meixner and Charlier live on the infinite lattice x = 0, 1, 2, ...; their
  orthogonality sums are evaluated exactly through factorial moments of the
  weight and are normalized by the total mass of the weight (so norm_sq
  returns sum(p_n^2 rho)/sum(rho), an exact rational).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import DomainError
from .exact import as_fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class LatticeKind(enum.Enum):
    LINEAR = "linear"      # x(s) = s
    QUADRATIC = "quadratic"  # x(s) = s(s+1), s >= 0


class Family(enum.Enum):
    HAHN = "hahn"
    KRAVCHUK = "kravchuk"
    MEIXNER = "meixner"
    CHARLIER = "charlier"
    RACAH = "racah"
    DUAL_HAHN = "dual-hahn"


def lattice_x(kind: LatticeKind, s: Fraction) -> Fraction:
    if kind is LatticeKind.LINEAR:
        return s
    if s < 0 and s != -1:
        # x(s) = s(s+1) is only monotone for s >= 0; -1 appears transiently
        # in difference quotients and maps to x = 0.
        raise DomainError(f"quadratic lattice index must be >= 0, got {s}")
    return s * (s + 1)


# ---------------------------------------------------------------------------
# difference operators
# ---------------------------------------------------------------------------


def delta(f: Callable[[Fraction], Fraction], s, support: Optional[range] = None) -> Fraction:
    """Forward difference f(s+1) - f(s); errors if s or s+1 leaves support."""
    s = as_fraction(s)
    if support is not None and (s < support.start or s + 1 > support.stop - 1):
        raise DomainError(f"forward difference at {s} leaves the support")
    return f(s + 1) - f(s)


def nabla(f: Callable[[Fraction], Fraction], s, support: Optional[range] = None) -> Fraction:
    """Backward difference f(s) - f(s-1); errors if s-1 leaves support."""
    s = as_fraction(s)
    if support is not None and (s - 1 < support.start or s > support.stop - 1):
        raise DomainError(f"backward difference at {s} leaves the support")
    return f(s) - f(s - 1)


def delta_x(kind: LatticeKind, s) -> Fraction:
    """dx(s) = x(s+1) - x(s)."""
    s = as_fraction(s)
    if kind is LatticeKind.LINEAR:
        return ONE
    return 2 * s + 2


def nabla_x(kind: LatticeKind, s) -> Fraction:
    """x(s) - x(s-1)."""
    s = as_fraction(s)
    if kind is LatticeKind.LINEAR:
        return ONE
    return 2 * s


def delta_divided(f, s, kind: LatticeKind) -> Fraction:
    """Divided forward difference (f(s+1)-f(s)) / (x(s+1)-x(s))."""
    s = as_fraction(s)
    return (f(s + 1) - f(s)) / delta_x(kind, s)


def nabla_divided(f, s, kind: LatticeKind) -> Fraction:
    """Divided backward difference (f(s)-f(s-1)) / (x(s)-x(s-1))."""
    s = as_fraction(s)
    dx = nabla_x(kind, s)
    if dx == 0:
        raise DomainError(f"lattice step vanishes at s={s}")
    return (f(s) - f(s - 1)) / dx


# ---------------------------------------------------------------------------
# family specification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """A concrete member of one of the six families with exact parameters.

    Use the per-family constructors (FamilySpec.hahn etc.); they validate the
    parameter domain so the weight is positive over the whole support.
    """

    family: Family
    lattice: LatticeKind
    params: tuple[tuple[str, Fraction], ...]

    # -- constructors -------------------------------------------------------

    @staticmethod
    def hahn(alpha, beta, N) -> "FamilySpec":
        alpha, beta = as_fraction(alpha), as_fraction(beta)
        N = as_fraction(N)
        if N.denominator != 1 or N < 1:
            raise DomainError("hahn: N must be a positive integer")
        if alpha <= -1 or beta <= -1:
            raise DomainError("hahn: need alpha > -1 and beta > -1")
        return FamilySpec(Family.HAHN, LatticeKind.LINEAR,
                          (("alpha", alpha), ("beta", beta), ("N", N)))

    @staticmethod
    def kravchuk(p, N) -> "FamilySpec":
        p, N = as_fraction(p), as_fraction(N)
        if N.denominator != 1 or N < 1:
            raise DomainError("kravchuk: N must be a positive integer")
        if not (0 < p < 1):
            raise DomainError("kravchuk: need 0 < p < 1")
        return FamilySpec(Family.KRAVCHUK, LatticeKind.LINEAR,
                          (("p", p), ("N", N)))

    @staticmethod
    def meixner(gamma, mu) -> "FamilySpec":
        gamma, mu = as_fraction(gamma), as_fraction(mu)
        if gamma <= 0:
            raise DomainError("meixner: need gamma > 0")
        if not (0 < mu < 1):
            raise DomainError("meixner: need 0 < mu < 1")
        return FamilySpec(Family.MEIXNER, LatticeKind.LINEAR,
                          (("gamma", gamma), ("mu", mu)))

    @staticmethod
    def charlier(mu) -> "FamilySpec":
        mu = as_fraction(mu)
        if mu <= 0:
            raise DomainError("charlier: need mu > 0")
        return FamilySpec(Family.CHARLIER, LatticeKind.LINEAR, (("mu", mu),))

    @staticmethod
    def racah(alpha, beta, a, b) -> "FamilySpec":
        alpha, beta = as_fraction(alpha), as_fraction(beta)
        a, b = as_fraction(a), as_fraction(b)
        spec = FamilySpec(Family.RACAH, LatticeKind.QUADRATIC,
                          (("alpha", alpha), ("beta", beta), ("a", a), ("b", b)))
        _validate_quadratic(spec)
        return spec

    @staticmethod
    def dual_hahn(c, a, b) -> "FamilySpec":
        c, a, b = as_fraction(c), as_fraction(a), as_fraction(b)
        spec = FamilySpec(Family.DUAL_HAHN, LatticeKind.QUADRATIC,
                          (("c", c), ("a", a), ("b", b)))
        _validate_quadratic(spec)
        return spec

    # -- accessors ----------------------------------------------------------

    def param(self, name: str) -> Fraction:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    @property
    def support_start(self) -> Fraction:
        if self.family in (Family.RACAH, Family.DUAL_HAHN):
            return self.param("a")
        return ZERO

    @property
    def support_size(self) -> Optional[int]:
        """Number of lattice points, or None for the infinite families."""
        if self.family is Family.HAHN:
            return int(self.param("N"))
        if self.family is Family.KRAVCHUK:
            return int(self.param("N")) + 1
        if self.family in (Family.RACAH, Family.DUAL_HAHN):
            return int(self.param("b") - self.param("a"))
        return None

    @property
    def max_degree(self) -> Optional[int]:
        """Largest admissible degree, or None when unbounded."""
        if self.family is Family.KRAVCHUK:
            return int(self.param("N")) - 1
        size = self.support_size
        return None if size is None else size - 1

    def support_points(self, count: Optional[int] = None) -> list[Fraction]:
        """The lattice indices s of the support (first `count` for infinite)."""
        size = self.support_size
        if size is None:
            if count is None:
                raise DomainError(f"{self.family.value} has infinite support")
            size = count
        start = self.support_start
        return [start + i for i in range(size)]

    def check_degree(self, n: int) -> None:
        if n < 0:
            raise DomainError("degree must be non-negative")
        limit = self.max_degree
        if limit is not None and n > limit:
            raise DomainError(
                f"{self.family.value}: degree {n} outside family range 0..{limit}")

    def check_support(self, s: Fraction) -> None:
        start = self.support_start
        if (s - start).denominator != 1 or s < start:
            raise DomainError(f"{s} is not a lattice point of the support")
        size = self.support_size
        if size is not None and s > start + size - 1:
            raise DomainError(f"lattice point {s} outside support")


def _validate_quadratic(spec: FamilySpec) -> None:
    a, b = spec.param("a"), spec.param("b")
    if a < 0:
        raise DomainError("quadratic lattice requires support start a >= 0")
    size = b - a
    if size.denominator != 1 or size < 1:
        raise DomainError("need b - a a positive integer")
    # Weight positivity over the support, checked step by step.
    rho = ONE
    for i in range(int(size)):
        if rho <= 0:
            raise DomainError("weight is not positive over the support")
        if i < int(size) - 1:
            rho *= _pearson_ratio(spec, a + i)
    if rho <= 0:
        raise DomainError("weight is not positive over the support")


# ---------------------------------------------------------------------------
# sigma / tau / lambda tables
# ---------------------------------------------------------------------------


def sigma(spec: FamilySpec, s) -> Fraction:
    """Coefficient sigma of the lattice difference equation.

    Linear lattice: a polynomial in x evaluated at x = s.  Quadratic lattice:
    the quartic in s whose symmetrized combination is a polynomial in x(s).
    """
    s = as_fraction(s)
    f = spec.family
    if f is Family.HAHN:
        return s * (spec.param("N") + spec.param("alpha") - s)
    if f in (Family.KRAVCHUK, Family.MEIXNER, Family.CHARLIER):
        return s
    if f is Family.RACAH:
        a, b = spec.param("a"), spec.param("b")
        al, be = spec.param("alpha"), spec.param("beta")
        return (s - a) * (s + b) * (s + a - be) * (b + al - s)
    if f is Family.DUAL_HAHN:
        a, b, c = spec.param("a"), spec.param("b"), spec.param("c")
        return (s - a) * (s + b) * (s - c)
    raise DomainError(f"unknown family {f}")


def tau(spec: FamilySpec, s) -> Fraction:
    """Coefficient tau evaluated at x(s); linear in x for every family."""
    s = as_fraction(s)
    f = spec.family
    if f is Family.HAHN:
        al, be, N = spec.param("alpha"), spec.param("beta"), spec.param("N")
        return (be + 1) * (N - 1) - (al + be + 2) * s
    if f is Family.KRAVCHUK:
        p, N = spec.param("p"), spec.param("N")
        return (N * p - s) / (1 - p)
    if f is Family.MEIXNER:
        g, mu = spec.param("gamma"), spec.param("mu")
        return g * mu - (1 - mu) * s
    if f is Family.CHARLIER:
        return spec.param("mu") - s
    # Quadratic lattice: tau(x(s)) = (sigma(-s-1) - sigma(s)) / dx(s-1/2).
    return (sigma(spec, -s - 1) - sigma(spec, s)) / (2 * s + 1)


def sigma_symmetric(spec: FamilySpec, s) -> Fraction:
    """The symmetrized sigma, a function of x(s) alone on both lattices."""
    s = as_fraction(s)
    if spec.lattice is LatticeKind.LINEAR:
        return sigma(spec, s) + tau(spec, s) / 2
    return (sigma(spec, s) + sigma(spec, -s - 1)) / 2


def eigenvalue(spec: FamilySpec, n: int) -> Fraction:
    """Closed-form eigenvalue lambda_n of the difference equation."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    f = spec.family
    if f is Family.HAHN or f is Family.RACAH:
        return n * (n + spec.param("alpha") + spec.param("beta") + 1)
    if f is Family.KRAVCHUK:
        return Fraction(n) / (1 - spec.param("p"))
    if f is Family.MEIXNER:
        return n * (1 - spec.param("mu"))
    return Fraction(n)  # Charlier, dual Hahn


# ---------------------------------------------------------------------------
# weight
# ---------------------------------------------------------------------------


def _pearson_ratio(spec: FamilySpec, s: Fraction) -> Fraction:
    """rho(s+1)/rho(s)."""
    if spec.lattice is LatticeKind.QUADRATIC:
        num = sigma(spec, -s - 1)
        den = sigma(spec, s + 1)
    else:
        num = sigma(spec, s) + tau(spec, s)
        den = sigma(spec, s + 1)
    if den == 0:
        raise DomainError(f"weight ratio undefined at s={s}")
    return num / den


def _weight_anchor(spec: FamilySpec) -> Fraction:
    if spec.family is Family.KRAVCHUK:
        return (1 - spec.param("p")) ** int(spec.param("N"))
    return ONE  # Hahn, Meixner, Charlier anchored at 1; quadratic at rho(a)=1


def weight(spec: FamilySpec, s) -> Fraction:
    """Exact weight rho(s) at a support point (see module docstring)."""
    s = as_fraction(s)
    spec.check_support(s)
    rho = _weight_anchor(spec)
    point = spec.support_start
    while point < s:
        rho *= _pearson_ratio(spec, point)
        point += 1
    return rho


# ---------------------------------------------------------------------------
# polynomial evaluation (terminating hypergeometric series, exact)
# ---------------------------------------------------------------------------


def _poch(x: Fraction, k: int) -> Fraction:
    out = ONE
    for i in range(k):
        out *= x + i
    return out


def eval_poly(spec: FamilySpec, n: int, s) -> Fraction:
    """Exact value of the degree-n member at lattice index s."""
    s = as_fraction(s)
    spec.check_degree(n)
    spec.check_support(s)
    return eval_poly_unchecked(spec, n, s)


def eval_poly_unchecked(spec: FamilySpec, n: int, s: Fraction) -> Fraction:
    """eval_poly without the support check (polynomials extend off-lattice)."""
    f = spec.family
    if f is Family.HAHN:
        al, be, N = spec.param("alpha"), spec.param("beta"), spec.param("N")
        pref = (-1) ** n * _poch(be + 1, n) * _poch(N - n, n) / _factorial(n)
        return pref * _hyper(( -n, n + al + be + 1, -s), (be + 1, 1 - N), n)
    if f is Family.KRAVCHUK:
        p, N = spec.param("p"), spec.param("N")
        pref = (-p) ** n * _binom(int(N), n)
        return pref * _hyper((-n, -s), (-N,), n, z=1 / p)
    if f is Family.MEIXNER:
        g, mu = spec.param("gamma"), spec.param("mu")
        return _poch(g, n) * _hyper((-n, -s), (g,), n, z=1 - 1 / mu)
    if f is Family.CHARLIER:
        mu = spec.param("mu")
        return _hyper((-n, -s), (), n, z=-1 / mu)
    if f is Family.RACAH:
        al, be = spec.param("alpha"), spec.param("beta")
        a, b = spec.param("a"), spec.param("b")
        pref = (_poch(a - b + 1, n) * _poch(be + 1, n) * _poch(a + b + al + 1, n)
                / _factorial(n))
        return pref * _hyper((-n, al + be + n + 1, a - s, a + s + 1),
                             (be + 1, a - b + 1, a + b + al + 1), n)
    if f is Family.DUAL_HAHN:
        a, b, c = spec.param("a"), spec.param("b"), spec.param("c")
        pref = _poch(a - b + 1, n) * _poch(a + c + 1, n) / _factorial(n)
        return pref * _hyper((-n, a - s, a + s + 1), (a - b + 1, a + c + 1), n)
    raise DomainError(f"unknown family {f}")


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _hyper(num: tuple, den: tuple, nmax: int, z: Fraction = ONE) -> Fraction:
    """Terminating hypergeometric sum_k prod(num)_k / prod(den)_k * z^k / k!.

    The first numerator parameter is -n, so the series stops at k = nmax.
    """
    total = ONE
    term = ONE
    for k in range(nmax):
        for p in num:
            term *= p + k
        for q in den:
            term /= q + k
        term = term * z / (k + 1)
        total += term
        if term == 0:
            break
    return total


# ---------------------------------------------------------------------------
# norms and orthogonality
# ---------------------------------------------------------------------------

_INFINITE_MOMENT_DEGREE_GUARD = 64


def _falling_moment_over_mass(spec: FamilySpec, j: int) -> Fraction:
    """E[(x)_j] = sum_x x(x-1)...(x-j+1) rho(x) / sum_x rho(x), exact.

    Only the infinite families need this; both have elementary factorial
    moments.
    """
    if spec.family is Family.CHARLIER:
        return spec.param("mu") ** j
    if spec.family is Family.MEIXNER:
        g, mu = spec.param("gamma"), spec.param("mu")
        return (mu ** j) * _poch(g, j) / (1 - mu) ** j
    raise DomainError("factorial moments only for the infinite families")


def _poly_coefficients(spec: FamilySpec, n: int) -> list[Fraction]:
    """Power-basis coefficients of the degree-n member (exact interpolation)."""
    pts = [Fraction(i) for i in range(n + 1)]
    vals = [eval_poly_unchecked(spec, n, x) for x in pts]
    # Newton forward differences on unit-spaced points 0..n.
    coeffs_newton = list(vals)
    for level in range(1, n + 1):
        for i in range(n, level - 1, -1):
            coeffs_newton[i] = (coeffs_newton[i] - coeffs_newton[i - 1]) / level
    # Expand sum_k newton[k] * (x)(x-1)..(x-k+1) into powers.
    power = [ZERO] * (n + 1)
    basis = [ONE]  # falling factorial (x)_0 = 1 in power basis
    for k in range(n + 1):
        for d, c in enumerate(basis):
            power[d] += coeffs_newton[k] * c
        if k < n:
            # (x)_{k+1} = (x)_k * (x - k)
            new = [ZERO] * (len(basis) + 1)
            for d, c in enumerate(basis):
                new[d + 1] += c
                new[d] -= c * k
            basis = new
    return power


def _power_to_falling(coeffs: list[Fraction]) -> list[Fraction]:
    """Rewrite sum c_d x^d as sum f_j (x)_j using Stirling numbers (2nd kind)."""
    deg = len(coeffs) - 1
    stirling = [[ZERO] * (deg + 1) for _ in range(deg + 1)]
    stirling[0][0] = ONE
    for d in range(1, deg + 1):
        for j in range(1, d + 1):
            stirling[d][j] = stirling[d - 1][j - 1] + j * stirling[d - 1][j]
    out = [ZERO] * (deg + 1)
    for d, c in enumerate(coeffs):
        if c == 0:
            continue
        for j in range(d + 1):
            out[j] += c * stirling[d][j]
    return out


def _orthogonality_sum_infinite(spec: FamilySpec, n: int, m: int) -> Fraction:
    """Mass-normalized sum over the full infinite lattice, exact.

    The product p_n p_m is expanded in falling factorials, whose expectations
    against the weight are elementary; the infinite sum is therefore a finite
    rational computation.
    """
    if n + m > _INFINITE_MOMENT_DEGREE_GUARD:
        raise DomainError("degree too large for the moment engine")
    cn = _poly_coefficients(spec, n)
    cm = _poly_coefficients(spec, m)
    prod = [ZERO] * (n + m + 1)
    for i, a in enumerate(cn):
        if a == 0:
            continue
        for j, b in enumerate(cm):
            prod[i + j] += a * b
    falling = _power_to_falling(prod)
    return sum((c * _falling_moment_over_mass(spec, j)
                for j, c in enumerate(falling) if c != 0), ZERO)


def check_orthogonality(spec: FamilySpec, n: int, m: int) -> Fraction:
    """Exact orthogonality sum; equals 0 for n != m and norm_sq(n) for n == m."""
    spec.check_degree(n)
    spec.check_degree(m)
    if spec.support_size is None:
        return _orthogonality_sum_infinite(spec, n, m)
    total = ZERO
    for s in spec.support_points():
        measure = delta_x(spec.lattice, s - Fraction(1, 2)) \
            if spec.lattice is LatticeKind.QUADRATIC else ONE
        total += (eval_poly_unchecked(spec, n, s) * eval_poly_unchecked(spec, m, s)
                  * weight(spec, s) * measure)
    return total


def norm_sq(spec: FamilySpec, n: int) -> Fraction:
    """Squared norm d_n^2 as the exact diagonal orthogonality sum."""
    value = check_orthogonality(spec, n, n)
    if value <= 0:
        raise DomainError(f"non-positive squared norm for degree {n}")
    return value


# ---------------------------------------------------------------------------
# difference-equation residuals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidualReport:
    """Residuals of the lattice difference equation over interior points."""

    residuals: tuple[Fraction, ...]
    points: tuple[Fraction, ...]

    @property
    def max_abs(self) -> Fraction:
        return max((abs(r) for r in self.residuals), default=ZERO)

    @property
    def exact_zero(self) -> bool:
        return all(r == 0 for r in self.residuals)


def difference_equation_residual(spec: FamilySpec, values: Callable[[Fraction], Fraction],
                                 lam: Fraction, s) -> Fraction:
    """Residual of the symmetric-form difference equation at lattice index s.

    Linear lattice:  sigma(x) D∇y + tau(x) Dy + lam y.
    Quadratic:       sigma~(x) [Dy/Dx - ∇y/∇x]/dx(s-1/2)
                     + tau(x)/2 [Dy/Dx + ∇y/∇x] + lam y.
    """
    s = as_fraction(s)
    if spec.lattice is LatticeKind.LINEAR:
        fwd = values(s + 1) - values(s)
        bwd = values(s) - values(s - 1)
        return sigma(spec, s) * (fwd - bwd) + tau(spec, s) * fwd + lam * values(s)
    fwd = (values(s + 1) - values(s)) / delta_x(spec.lattice, s)
    bwd = (values(s) - values(s - 1)) / nabla_x(spec.lattice, s)
    mid = delta_x(spec.lattice, s - Fraction(1, 2))
    return (sigma_symmetric(spec, s) * (fwd - bwd) / mid
            + tau(spec, s) / 2 * (fwd + bwd)
            + lam * values(s))


def check_difference_equation(spec: FamilySpec, n: int,
                              values: Optional[Callable[[Fraction], Fraction]] = None,
                              interior_count: int = 12) -> ResidualReport:
    """Residuals at every interior support point (exactly zero when correct).

    ``values`` overrides the polynomial (used by perturbation tests).  For the
    infinite families the first ``interior_count`` interior points are used;
    the residual is a polynomial in x, so vanishing on more than deg+1 points
    already proves it vanishes identically.
    """
    spec.check_degree(n)
    if values is None:
        values = lambda s: eval_poly_unchecked(spec, n, s)
    lam = eigenvalue(spec, n)
    start = spec.support_start
    size = spec.support_size
    if size is None:
        points = [start + 1 + i for i in range(max(interior_count, n + 3))]
    else:
        points = [start + i for i in range(1, size - 1)]
    residuals = tuple(difference_equation_residual(spec, values, lam, s)
                      for s in points)
    return ResidualReport(residuals=residuals, points=tuple(points))


def recovered_eigenvalue(spec: FamilySpec, n: int) -> Fraction:
    """Solve the difference equation for lambda_n at an interior point."""
    spec.check_degree(n)
    values = lambda s: eval_poly_unchecked(spec, n, s)
    start = spec.support_start
    size = spec.support_size
    candidates = [start + 1 + i for i in range(size - 2 if size else n + 3)]
    for s in candidates:
        y = values(s)
        if y == 0:
            continue
        residual_without = difference_equation_residual(spec, values, ZERO, s)
        return -residual_without / y
    raise DomainError("polynomial vanishes at every interior point")
