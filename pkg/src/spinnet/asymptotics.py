"""Semiclassical approximations for rotation matrix elements and 6j symbols.

Contains the exact Wigner little-d function (finite sum with exact-rational
coefficient staging, used as the reference for every asymptotic claim), its
large-j cosine approximation, the small-j12 6j approximation through a
little-d factor, and the stationary-phase 6j approximation built from the
geometry of the tetrahedron with edge lengths j_i + 1/2.

Edge/slot convention: the labels {j1 j2 j12 / j3 j j23} are placed on a
tetrahedron ABCD as

    j1 = AB, j2 = BC, j12 = CA, j3 = CD, j = AD, j23 = BD,

so each admissibility triad is a face and opposite edges sit in the same
column of the symbol.  Dihedral angles are taken in (0, pi) via the
principal arccos of face-normal cosines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, GeometryError
from .exact import Spin, twice_of, _approx_sqrt
from .wigner import SixJLabels, _fact, six_j_oracle

#: Explicit regime thresholds (never silently applied).
SIN_THETA_SMALL = 0.1
J_OVER_M_SMALL = 10
EQ1_J12_RATIO = 5


@dataclass(frozen=True)
class AsymptoticValue:
    """A floating approximation plus flags for the validity conditions."""

    value: float
    flags: dict[str, bool]


# ---------------------------------------------------------------------------
# Wigner little-d
# ---------------------------------------------------------------------------


def wigner_d_exact(j, m, mp, theta: float) -> float:
    """d^j_{m,mp}(theta) = <j m| exp(-i theta J_y) |j mp>, double precision.

    The half-angle cosine and sine are frozen as exact rationals and the
    homogeneous degree-2j sum is accumulated in exact arithmetic, so the
    enormous cancellation between terms happens exactly; only the global
    square-root prefactor and the trig arguments carry floating error.
    """
    tj, tm, tmp = Spin.of(j).twice, twice_of(m), twice_of(mp)
    if abs(tm) > tj or abs(tmp) > tj:
        raise DomainError("projections must satisfy |m|, |mp| <= j")
    if (tj + tm) % 2 or (tj + tmp) % 2:
        raise DomainError("projections must differ from j by integers")
    pref_sq = (_fact((tj + tm) // 2) * _fact((tj - tm) // 2)
               * _fact((tj + tmp) // 2) * _fact((tj - tmp) // 2))
    c = Fraction(math.cos(theta / 2.0))
    s = Fraction(math.sin(theta / 2.0))
    powers_c = [Fraction(1)]
    powers_s = [Fraction(1)]
    for _ in range(tj):
        powers_c.append(powers_c[-1] * c)
        powers_s.append(powers_s[-1] * s)
    k_lo = max(0, (tmp - tm) // 2)
    k_hi = min((tj + tmp) // 2, (tj - tm) // 2)
    total = Fraction(0)
    for k in range(k_lo, k_hi + 1):
        den = (_fact((tj + tmp) // 2 - k) * _fact(k)
               * _fact((tm - tmp) // 2 + k) * _fact((tj - tm) // 2 - k))
        cos_pow = (2 * tj + tmp - tm) // 2 - 2 * k
        sin_pow = (tm - tmp) // 2 + 2 * k
        term = powers_c[cos_pow] * powers_s[sin_pow] / den
        total += -term if ((tm - tmp) // 2 + k) % 2 else term
    if total == 0:
        return 0.0
    approx, _ = _approx_sqrt(pref_sq * total * total, 64)
    return float(approx) if total > 0 else -float(approx)


def wigner_d_asymptotic(j, m, mp, theta: float) -> AsymptoticValue:
    """Large-j cosine approximation of d^j_{m,mp}(theta).

    value = (-1)^(m-mp) sqrt(2/(pi (j-m)))
            ((2j+m-mp+1)/(2j-m+mp+1))^((m+mp)/2)
            cos[(j+1/2) theta - (m-mp+1/2) pi/2] / sqrt(sin theta)

    Flags: ``sin_theta_small`` when sin(theta) < 0.1, ``j_small`` when
    j < 10 max(|m|, |mp|, 1).
    """
    tj, tm, tmp = Spin.of(j).twice, twice_of(m), twice_of(mp)
    if not (0.0 < theta < math.pi):
        raise DomainError("theta must lie strictly inside (0, pi)")
    if tj <= abs(tm) or tj <= abs(tmp):
        raise DomainError("need j > |m| and j > |mp|")
    jf, mf, mpf = tj / 2.0, tm / 2.0, tmp / 2.0
    sin_t = math.sin(theta)
    sign = -1.0 if ((tm - tmp) // 2) % 2 else 1.0
    ratio = (2 * jf + mf - mpf + 1) / (2 * jf - mf + mpf + 1)
    value = (sign
             * math.sqrt(2.0 / (math.pi * (jf - mf)))
             * ratio ** ((mf + mpf) / 2.0)
             * math.cos((jf + 0.5) * theta - (mf - mpf + 0.5) * math.pi / 2.0)
             / math.sqrt(sin_t))
    flags = {
        "sin_theta_small": sin_t < SIN_THETA_SMALL,
        "j_small": jf < J_OVER_M_SMALL * max(abs(mf), abs(mpf), 1.0),
    }
    return AsymptoticValue(value=value, flags=flags)


# ---------------------------------------------------------------------------
# 6j approximation via a little-d factor (small j12)
# ---------------------------------------------------------------------------


def eq1_cos_theta(labels: SixJLabels) -> Fraction:
    """Exact rational cos(theta) of the small-j12 approximation."""
    t1, t2, _, t3, tj, t23 = labels.doubled
    num = 4 * (t23 + 1) ** 2 - (t1 + t2 + 2) ** 2 - (t3 + tj + 2) ** 2
    den = 2 * (t1 + t2 + 2) * (t3 + tj + 2)
    return Fraction(num, den)


def six_j_asymptotic_eq1(labels: SixJLabels) -> AsymptoticValue:
    """6j approximation for j1 ~ j2 ~ j3 ~ j >> j12:

        {6j} ~= (-1)^(j2+j3+j23) / (sqrt(j1+j2+1) sqrt(j3+j+1))
                * d^j12_{j1-j2, j3-j}(theta)

    with cos(theta) given by eq1_cos_theta.  The d factor is evaluated
    exactly.  Raises DomainError when |cos theta| >= 1 (classically
    forbidden configuration).
    """
    t1, t2, t12, t3, tj, t23 = labels.doubled
    cos_t = eq1_cos_theta(labels)
    if not (-1 < cos_t < 1):
        raise DomainError(f"classically forbidden: cos(theta) = {cos_t}")
    theta = math.acos(float(cos_t))
    phase_t = t2 + t3 + t23
    if phase_t % 2:
        raise DomainError("labels violate the triad parity rules")
    sign = -1.0 if (phase_t // 2) % 2 else 1.0
    d = wigner_d_exact(Spin(t12), Fraction(t1 - t2, 2), Fraction(t3 - tj, 2),
                       theta)
    value = sign * d / math.sqrt((t1 + t2 + 2) * (t3 + tj + 2) / 4.0)
    jmin = min(t1, t2, t3, tj)
    flags = {
        "j12_not_small": t12 * EQ1_J12_RATIO > jmin,
        "cos_theta_near_edge": min(1 - float(cos_t), 1 + float(cos_t)) < 0.05,
    }
    return AsymptoticValue(value=value, flags=flags)


# ---------------------------------------------------------------------------
# tetrahedron geometry
# ---------------------------------------------------------------------------

_EDGE_VERTICES = ((0, 1), (1, 2), (2, 0), (2, 3), (0, 3), (1, 3))
_EDGE_NAMES = ("AB", "BC", "CA", "CD", "AD", "BD")


@dataclass(frozen=True)
class TetGeometry:
    """Euclidean tetrahedron data for six edge lengths in slot order."""

    lengths: tuple[float, float, float, float, float, float]
    dihedral: tuple[float, float, float, float, float, float]
    volume: float
    cayley_menger: Fraction

    def phase_sum(self, spins_doubled: tuple[int, ...]) -> float:
        """sum_i (j_i + 1/2) theta_i over the exterior dihedral angles.

        The stored ``dihedral`` angles are the interior ones; the
        stationary-phase formula is stated with the angles between outward
        face normals, i.e. pi - interior.
        """
        return sum((t + 1) / 2.0 * (math.pi - th)
                   for t, th in zip(spins_doubled, self.dihedral))


def _cayley_menger(d: list[Fraction]) -> Fraction:
    """Cayley-Menger determinant from squared lengths in slot order."""
    dAB, dBC, dCA, dCD, dAD, dBD = d
    m = [
        [Fraction(0), Fraction(1), Fraction(1), Fraction(1), Fraction(1)],
        [Fraction(1), Fraction(0), dAB, dCA, dAD],
        [Fraction(1), dAB, Fraction(0), dBC, dBD],
        [Fraction(1), dCA, dBC, Fraction(0), dCD],
        [Fraction(1), dAD, dBD, dCD, Fraction(0)],
    ]
    # fraction-exact Gaussian elimination (5x5)
    det = Fraction(1)
    for col in range(5):
        piv = next((r for r in range(col, 5) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, 5):
            factor = m[r][col] * inv
            if factor:
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


def tet_geometry(lengths) -> TetGeometry:
    """Dihedral angles and volume of the tetrahedron with the six lengths.

    Lengths follow the slot order (AB, BC, CA, CD, AD, BD).  Degenerate or
    non-Euclidean lengths raise GeometryError carrying the Cayley-Menger
    determinant.
    """
    ls = [Fraction(x) if not isinstance(x, float) else Fraction(x) for x in lengths]
    if len(ls) != 6:
        raise DomainError("need exactly six edge lengths")
    if any(x <= 0 for x in ls):
        raise GeometryError("edge lengths must be positive")
    cm = _cayley_menger([x * x for x in ls])
    if cm <= 0:
        raise GeometryError(
            f"lengths do not span a Euclidean tetrahedron (determinant {float(cm):.3g})",
            determinant=cm)
    volume = math.sqrt(float(cm) / 288.0)

    lAB, lBC, lCA, lCD, lAD, lBD = (float(x) for x in ls)
    ax = (lAB * lAB + lCA * lCA - lBC * lBC) / (2 * lAB)
    cy = math.sqrt(max(lCA * lCA - ax * ax, 0.0))
    dx = (lAB * lAB + lAD * lAD - lBD * lBD) / (2 * lAB)
    dy = (lCA * lCA + lAD * lAD - lCD * lCD - 2 * ax * dx) / (2 * cy)
    dz2 = lAD * lAD - dx * dx - dy * dy
    dz = math.sqrt(max(dz2, 0.0))
    pts = [(0.0, 0.0, 0.0), (lAB, 0.0, 0.0), (ax, cy, 0.0), (dx, dy, dz)]

    def sub(p, q):
        return (p[0] - q[0], p[1] - q[1], p[2] - q[2])

    def dot(p, q):
        return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]

    angles = []
    for (i, k) in _EDGE_VERTICES:
        rest = [v for v in range(4) if v not in (i, k)]
        axis = sub(pts[k], pts[i])
        an = dot(axis, axis)
        legs = []
        for r in rest:
            w = sub(pts[r], pts[i])
            proj = dot(w, axis) / an
            legs.append(tuple(wc - proj * ac for wc, ac in zip(w, axis)))
        v1, v2 = legs
        cosang = dot(v1, v2) / math.sqrt(dot(v1, v1) * dot(v2, v2))
        angles.append(math.acos(min(1.0, max(-1.0, cosang))))

    return TetGeometry(lengths=tuple(float(x) for x in ls),
                       dihedral=tuple(angles), volume=volume,
                       cayley_menger=cm)


def path_volume_product(geom: TetGeometry) -> float:
    """Volume from the edge path A-B-D-C: (1/6) |AB||BD||DC| times the sines
    of the two planar path angles and of the dihedral angle at BD.

    With right planar angles this reduces to (1/6) L_AB L_CD L_BD sin(theta_BD).
    """
    lAB, lBC, lCA, lCD, lAD, lBD = geom.lengths
    # planar angle at B between BA and BD, and at D between DB and DC
    cos_b = (lAB * lAB + lBD * lBD - lAD * lAD) / (2 * lAB * lBD)
    cos_d = (lBD * lBD + lCD * lCD - lBC * lBC) / (2 * lBD * lCD)
    sin_b = math.sqrt(max(1 - cos_b * cos_b, 0.0))
    sin_d = math.sqrt(max(1 - cos_d * cos_d, 0.0))
    theta_bd = geom.dihedral[5]
    return lAB * lBD * lCD * sin_b * sin_d * math.sin(theta_bd) / 6.0


# ---------------------------------------------------------------------------
# stationary-phase 6j approximation
# ---------------------------------------------------------------------------


def six_j_ponzano_regge(labels: SixJLabels) -> AsymptoticValue:
    """Stationary-phase approximation of the 6j symbol:

        {6j} ~= cos( sum_i (j_i + 1/2) theta_i + pi/4 ) / sqrt(12 pi V)

    where theta_i are the dihedral angles and V the volume of the
    tetrahedron with edge lengths j_i + 1/2.  Geometrically forbidden
    configurations raise GeometryError.
    """
    t = labels.doubled
    geom = tet_geometry([Fraction(ti + 1, 2) for ti in t])
    phase = geom.phase_sum(t) + math.pi / 4.0
    amplitude = 1.0 / math.sqrt(12.0 * math.pi * geom.volume)
    value = amplitude * math.cos(phase)
    flags = {"volume_small": geom.volume < 1.0}
    return AsymptoticValue(value=value, flags=flags)


def ponzano_regge_amplitude(labels: SixJLabels) -> float:
    """The envelope 1/sqrt(12 pi V) of the stationary-phase approximation."""
    t = labels.doubled
    geom = tet_geometry([Fraction(ti + 1, 2) for ti in t])
    return 1.0 / math.sqrt(12.0 * math.pi * geom.volume)


def six_j_exact_float(labels: SixJLabels) -> float:
    """Float value of the exact 6j (reference for asymptotic comparisons)."""
    value, _ = six_j_oracle(labels).evaluate(96)
    return float(value)
