"""Real-argument elliptic special functions.

This module is the numerical backbone of the package: Carlson's symmetric
integral R_F, the complete and incomplete elliptic integrals of the first
kind, the Jacobi elliptic functions sn/cn/dn with their inverse arcsn, and
the Weierstrass P function with real invariants.

Algorithms
----------
* ``carlson_rf`` uses Carlson's duplication theorem (Carlson 1995,
  "Numerical computation of real or complex elliptic integrals"): the
  arguments are repeatedly replaced by (x + lam)/4 until they agree to
  within a spread tolerance, after which a fifth-order Taylor correction
  is applied.  The truncation error scales like spread^6, so stopping at
  spread < 1e-16^(1/6) keeps the relative error near machine epsilon.
* ``jacobi_sn`` runs the arithmetic-geometric-mean / descending Landen
  recursion of DLMF 22.20(ii).  The degenerate moduli are exact:
  sn(u, 0) = sin u and sn(u, 1) = tanh u.
* ``weierstrass_p`` reduces P to Jacobi functions through the real roots
  of 4 t^3 - g2 t - g3 (Abramowitz & Stegun 18.9.11/18.9.12): a
  three-real-root reduction when the discriminant is positive and a
  one-real-root (cn-based) reduction when it is negative.  Near the
  origin the three-term Laurent expansion is used instead.

Everything here is a pure function of floats; there is no shared state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._cubic import depressed_real_roots
from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "Modulus",
    "EllipticValue",
    "WeierstrassInvariants",
    "carlson_rf",
    "complete_k",
    "incomplete_f",
    "arcsn",
    "jacobi_sn",
    "weierstrass_p",
    "weierstrass_p_with_derivative",
]

#: Elliptic modulus k.  Valid range is 0 <= k <= 1; k = 1 is admitted only
#: where the hyperbolic degeneration makes sense (jacobi_sn), never for the
#: complete integral, which diverges there.
Modulus = float

# Duplication stops once the relative spread of the arguments is below this;
# the series tail is O(spread^6) ~ 1e-16.
_RF_SPREAD_TOL = 1e-16 ** (1.0 / 6.0)
_RF_MAX_ITER = 500

# AGM stop criterion |a_n - b_n| and its iteration cap.
_AGM_TOL = 1e-15
_AGM_MAX_ITER = 60

# A Weierstrass argument closer than this to a lattice point (measured in
# the reduced Jacobi argument) is reported as a pole.
_POLE_TOL = 1e-9

# Inside this radius the three-term Laurent series is more accurate than
# the Jacobi reduction (series error ~ |z|^6 ~ 1e-18 for invariants of
# order one).
_LAURENT_RADIUS = 1e-3


@dataclass(frozen=True)
class EllipticValue:
    """Jacobi function triplet (sn, cn, dn) at one point, with its modulus.

    Satisfies sn^2 + cn^2 = 1 and dn^2 + k^2 sn^2 = 1 to evaluation
    tolerance.
    """

    sn: float
    cn: float
    dn: float
    k: Modulus


@dataclass(frozen=True)
class WeierstrassInvariants:
    """Invariant pair (g2, g3) of the Weierstrass P function."""

    g2: float
    g3: float

    @property
    def discriminant(self) -> float:
        """g2^3 - 27 g3^2; its sign fixes the real-root structure of
        4 t^3 - g2 t - g3."""
        return self.g2**3 - 27.0 * self.g3**2


def _check_modulus(k: float, *, allow_one: bool) -> None:
    if not 0.0 <= k <= 1.0:  # also rejects nan
        raise DomainError(f"elliptic modulus must satisfy 0 <= k <= 1, got {k!r}")
    if k == 1.0 and not allow_one:
        raise DomainError("k = 1: complete integral diverges logarithmically")


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson symmetric elliptic integral of the first kind,

        R_F(x, y, z) = (1/2) * integral_0^inf dt / sqrt((t+x)(t+y)(t+z)).

    Symmetric in its arguments and homogeneous of degree -1/2.  At most
    one argument may be zero; all must be nonnegative.
    """
    if x < 0.0 or y < 0.0 or z < 0.0 or math.isnan(x + y + z):
        raise DomainError(f"carlson_rf needs nonnegative arguments, got {(x, y, z)}")
    if (x == 0.0) + (y == 0.0) + (z == 0.0) >= 2:
        raise DomainError("carlson_rf diverges when two or more arguments are zero")
    xt, yt, zt = x, y, z
    for _ in range(_RF_MAX_ITER):
        sx, sy, sz = math.sqrt(xt), math.sqrt(yt), math.sqrt(zt)
        lam = sx * (sy + sz) + sy * sz
        xt = 0.25 * (xt + lam)
        yt = 0.25 * (yt + lam)
        zt = 0.25 * (zt + lam)
        ave = (xt + yt + zt) / 3.0
        if max(abs(xt - ave), abs(yt - ave), abs(zt - ave)) <= _RF_SPREAD_TOL * ave:
            dx = (ave - xt) / ave
            dy = (ave - yt) / ave
            dz = -(dx + dy)
            e2 = dx * dy - dz * dz
            e3 = dx * dy * dz
            series = 1.0 + e3 * (1.0 / 14.0 + 3.0 * e3 / 104.0) + e2 * (
                -0.1 + e2 / 24.0 - 3.0 * e3 / 44.0 - 5.0 * e2 * e2 / 208.0 + e2 * e3 / 16.0
            )
            return series / math.sqrt(ave)
    raise ConvergenceError("carlson_rf duplication failed to contract")


def complete_k(k: Modulus) -> float:
    """Complete elliptic integral of the first kind, K(k) = R_F(0, 1-k^2, 1).

    Strictly increasing in k; diverges at k = 1 (DomainError).
    """
    _check_modulus(k, allow_one=False)
    return carlson_rf(0.0, (1.0 - k) * (1.0 + k), 1.0)


def incomplete_f(phi: float, k: Modulus) -> float:
    """Incomplete elliptic integral of the first kind F(phi, k).

    On the principal range |phi| <= pi/2 this is
    sin(phi) * R_F(cos^2 phi, 1 - k^2 sin^2 phi, 1); larger amplitudes are
    reduced through the quasi-periodicity F(phi + pi, k) = F(phi, k) + 2K(k).
    Odd in phi.
    """
    _check_modulus(k, allow_one=False)
    if not math.isfinite(phi):
        raise DomainError(f"amplitude must be finite, got {phi!r}")
    if phi == 0.0:
        return 0.0
    n = math.floor(phi / math.pi + 0.5)
    phi_r = phi - n * math.pi
    s = math.sin(phi_r)
    c = math.cos(phi_r)
    value = s * carlson_rf(c * c, (1.0 - k * s) * (1.0 + k * s), 1.0)
    if n:
        value += 2.0 * n * complete_k(k)
    return value


def arcsn(s: float, k: Modulus) -> float:
    """Inverse of sn on the principal branch: arcsn(s, k) = F(arcsin s, k).

    Requires |s| <= 1; satisfies sn(arcsn(s, k), k) = s.
    """
    if not -1.0 <= s <= 1.0:
        raise DomainError(f"arcsn needs |s| <= 1, got {s!r}")
    return incomplete_f(math.asin(s), k)


def jacobi_sn(u: float, k: Modulus) -> EllipticValue:
    """Jacobi elliptic functions sn, cn, dn at real argument u.

    Uses the descending-Landen/AGM recursion (DLMF 22.20(ii)): the scales
    a_n, b_n, c_n are iterated until |a_n - b_n| < 1e-15, the amplitude
    phi_N = 2^N a_N u is recurred back down, and then sn = sin(phi_0),
    cn = cos(phi_0).  dn is recovered from dn^2 = 1 - k^2 sn^2, which
    determines it completely since dn >= sqrt(1 - k^2) > 0 on the real
    line (and the direct phi-chain formula degenerates at the quarter
    periods).  The degenerate moduli bypass the recursion:
    sn(u, 0) = sin u, sn(u, 1) = tanh u.
    """
    _check_modulus(k, allow_one=True)
    if not math.isfinite(u):
        raise DomainError(f"jacobi_sn needs finite argument, got {u!r}")
    if k == 0.0:
        return EllipticValue(math.sin(u), math.cos(u), 1.0, k)
    if k == 1.0:
        e = math.exp(-abs(u))  # sech without overflow for large |u|
        sech = 2.0 * e / (1.0 + e * e)
        return EllipticValue(math.tanh(u), sech, sech, k)
    a = [1.0]
    b = [math.sqrt((1.0 - k) * (1.0 + k))]
    c = [k]
    for _ in range(_AGM_MAX_ITER):
        if abs(a[-1] - b[-1]) <= _AGM_TOL:
            break
        an, bn = a[-1], b[-1]
        a.append(0.5 * (an + bn))
        b.append(math.sqrt(an * bn))
        c.append(0.5 * (an - bn))
    else:
        raise ConvergenceError("AGM failed to contract in jacobi_sn")
    n = len(a) - 1
    phi = math.ldexp(a[n] * u, n)
    for m in range(n, 0, -1):
        t = c[m] / a[m] * math.sin(phi)
        phi = 0.5 * (phi + math.asin(max(-1.0, min(1.0, t))))
    sn = math.sin(phi)
    cn = math.cos(phi)
    dn = math.sqrt(max(0.0, (1.0 - k * sn) * (1.0 + k * sn)))
    return EllipticValue(sn, cn, dn, k)


def weierstrass_p(z: float, inv: WeierstrassInvariants) -> float:
    """Weierstrass P function at real z for real invariants (g2, g3).

    Even in z and satisfies (P')^2 = 4 P^3 - g2 P - g3.  Raises PoleError
    within 1e-9 (in the reduced Jacobi argument) of a lattice point.
    """
    return weierstrass_p_with_derivative(z, inv)[0]


def weierstrass_p_with_derivative(
    z: float, inv: WeierstrassInvariants
) -> tuple[float, float]:
    """(P(z), P'(z)) in one evaluation.

    The derivative comes from the same Jacobi reduction as the value
    (d/du of sn/cn/dn), so the pair satisfies the defining first-order
    equation to the accuracy of the reduction itself.
    """
    g2, g3 = inv.g2, inv.g3
    if not (math.isfinite(g2) and math.isfinite(g3)):
        raise DomainError(f"invariants must be finite, got {(g2, g3)}")
    if not math.isfinite(z):
        raise DomainError(f"argument must be finite, got {z!r}")
    if abs(z) < _POLE_TOL:
        raise PoleError(f"z = {z!r} is within tolerance of the origin lattice point")
    if abs(z) < _LAURENT_RADIUS:
        z2 = z * z
        p = 1.0 / z2 + g2 / 20.0 * z2 + g3 / 28.0 * z2 * z2
        dp = -2.0 / (z2 * z) + g2 / 10.0 * z + g3 / 7.0 * z2 * z
        return p, dp
    # roots of 4 t^3 - g2 t - g3 = 4 (t^3 - (g2/4) t - (g3/4))
    kind, roots = depressed_real_roots(-0.25 * g2, -0.25 * g3)
    if kind == "triple":
        # g2 = g3 = 0: fully degenerate lattice, P(z) = z^-2 exactly
        return 1.0 / (z * z), -2.0 / (z * z * z)
    if kind == "one":
        return _p_one_real_root(z, g2, roots[0])
    if kind == "double":
        e = sorted((roots[0], roots[0], roots[1]), reverse=True)
    else:
        e = list(roots)
    return _p_three_real_roots(z, e[0], e[1], e[2])


def _reduce_to_cell(w: float, period: float) -> float:
    """Distance-signed representative of w modulo period, in [-p/2, p/2]."""
    return w - period * round(w / period)


def _p_three_real_roots(z: float, e1: float, e2: float, e3: float) -> tuple[float, float]:
    # P(z) = e3 + (e1 - e3)/sn^2(z sqrt(e1 - e3), k),  k^2 = (e2 - e3)/(e1 - e3)
    big_m = e1 - e3
    m_root = math.sqrt(big_m)
    k = math.sqrt(min(1.0, max(0.0, (e2 - e3) / big_m)))
    w = z * m_root
    if k < 1.0:
        half_period = 2.0 * complete_k(k)
        w_red = _reduce_to_cell(w, half_period)
    else:
        w_red = w  # hyperbolic limit: the real period is infinite
    if abs(w_red) < _POLE_TOL:
        raise PoleError(f"z = {z!r} is within tolerance of a lattice point")
    val = jacobi_sn(w, k)
    sn2 = val.sn * val.sn
    if sn2 == 0.0:
        raise PoleError(f"z = {z!r} lies on a lattice point")
    p = e3 + big_m / sn2
    dp = -2.0 * big_m * m_root * val.cn * val.dn / (sn2 * val.sn)
    return p, dp


def _p_one_real_root(z: float, g2: float, gamma: float) -> tuple[float, float]:
    # P(z) = gamma + H (1 + cn(v, k))/(1 - cn(v, k)),  v = 2 z sqrt(H),
    # H^2 = 3 gamma^2 - g2/4,  k^2 = 1/2 - 3 gamma/(4 H)
    big_h = math.sqrt(3.0 * gamma * gamma - 0.25 * g2)
    k = math.sqrt(min(1.0, max(0.0, 0.5 - 0.75 * gamma / big_h)))
    sqrt_h = math.sqrt(big_h)
    v = 2.0 * z * sqrt_h
    if k < 1.0:
        period = 4.0 * complete_k(k)
        v_red = _reduce_to_cell(v, period)
    else:
        v_red = v
    if abs(v_red) < _POLE_TOL:
        raise PoleError(f"z = {z!r} is within tolerance of a lattice point")
    val = jacobi_sn(v, k)
    sn2 = val.sn * val.sn
    if val.cn > 0.0:
        # 1 - cn = sn^2/(1 + cn) avoids cancellation near the poles and ties
        # the errors of P and P' to the same power of sn
        one_minus_cn = sn2 / (1.0 + val.cn)
    else:
        one_minus_cn = 1.0 - val.cn
    if one_minus_cn == 0.0:
        raise PoleError(f"z = {z!r} lies on a lattice point")
    p = gamma + big_h * (1.0 + val.cn) / one_minus_cn
    dp = -4.0 * big_h * sqrt_h * val.sn * val.dn / (one_minus_cn * one_minus_cn)
    return p, dp
