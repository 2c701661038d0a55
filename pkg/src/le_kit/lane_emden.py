"""The critical Lane-Emden problem and its autonomous reduction.

The radial equation on the positive semiline is

    theta'' + (d-1)/x * theta' + theta^p = 0,

with scaling symmetry theta_lam(x) = lam^(-alpha) theta(x/lam),
alpha = 2/(p-1).  The exponent is critical when p = (d+2)/(d-2), which is
a natural number only for d in {3, 4, 6}.  Two exact solutions exist for
every critical case: the power law theta = b_inf * x^(-alpha) (singular at
the origin) and the regular bump theta = (1 + a x^2)^(-alpha) with
a = (p-1)/(4d).

Substituting theta = b_inf * z * x^(-alpha), y = -ln x turns the radial
equation into an autonomous one whose friction term vanishes exactly at
criticality:

    z'' - (d-2)^2/4 * (z - z^p) = 0,

with conserved first integral

    C = 2 z'^2/(d-2)^2 - z^2/2 + z^(p+1)/(p+1).

Coefficients are kept in exact rational arithmetic so criticality checks
are exact, converting to float only at the evaluation boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import DomainError, NotCriticalError

__all__ = [
    "CriticalCase",
    "AutonomousCoefficients",
    "PhasePoint",
    "critical_case",
    "autonomous_coefficients",
    "singular_solution",
    "singular_solution_with_derivatives",
    "talenti_aubin",
    "talenti_aubin_with_derivatives",
    "scale_solution",
    "to_autonomous",
    "from_autonomous",
    "first_integral",
]


@dataclass(frozen=True)
class CriticalCase:
    """One critical Lane-Emden problem, fixed by the space dimension.

    b_inf_pow holds b_inf^(p-1) = (d-2)^2/4 exactly; b_inf itself is its
    (p-1)-th root and irrational for d = 3.
    """

    d: int
    p: int
    alpha: Fraction  # decay exponent 2/(p-1) = (d-2)/2
    b_inf: float  # amplitude of the exact power-law solution
    b_inf_pow: Fraction  # b_inf^(p-1), exact
    a_ta: Fraction  # (p-1)/(4d)


@dataclass(frozen=True)
class AutonomousCoefficients:
    """Friction and force coefficients of the autonomous equation

        z'' + friction * z' + force * (z - z^p) = 0.

    friction = (2p - dp + d + 2)/(p-1) vanishes exactly iff p is critical
    for d; force = (2(2-d)p + 2d)/(p-1)^2.
    """

    friction: Fraction
    force: Fraction


@dataclass(frozen=True)
class PhasePoint:
    """State in the autonomous coordinates: z(y), optionally z'(y), and
    the logarithmic coordinate y = -ln x."""

    z: float
    y: float
    zp: float | None = None


def critical_case(d: int) -> CriticalCase:
    """The critical case for space dimension d.

    Requires d >= 3 and (d-2) | 4, i.e. d in {3, 4, 6}; otherwise
    (d+2)/(d-2) is not a natural number and NotCriticalError is raised.
    """
    if d < 3:
        raise DomainError(f"space dimension must be >= 3, got {d}")
    if (d + 2) % (d - 2) != 0:
        raise NotCriticalError(f"(d+2)/(d-2) is not integral for d = {d}")
    p = (d + 2) // (d - 2)
    alpha = Fraction(2, p - 1)
    b_inf_pow = Fraction(2 * (p * (d - 2) - d), (p - 1) ** 2)
    b_inf = float(b_inf_pow) ** (1.0 / (p - 1))
    return CriticalCase(
        d=d,
        p=p,
        alpha=alpha,
        b_inf=b_inf,
        b_inf_pow=b_inf_pow,
        a_ta=Fraction(p - 1, 4 * d),
    )


def autonomous_coefficients(d: int, p: int) -> AutonomousCoefficients:
    """Exact coefficients of the autonomous equation for any (d, p)."""
    if p == 1:
        raise DomainError("p = 1 makes the substitution exponent 2/(p-1) blow up")
    if p < 2 or d < 3:
        raise DomainError(f"need p >= 2 and d >= 3, got (d, p) = {(d, p)}")
    return AutonomousCoefficients(
        friction=Fraction(2 * p - d * p + d + 2, p - 1),
        force=Fraction(2 * (2 - d) * p + 2 * d, (p - 1) ** 2),
    )


def singular_solution(case: CriticalCase, x: float) -> float:
    """The exact power-law solution b_inf * x^(-alpha); singular at x = 0."""
    if x <= 0.0:
        raise DomainError(f"power-law solution needs x > 0, got {x!r}")
    return case.b_inf * x ** (-float(case.alpha))


def singular_solution_with_derivatives(
    case: CriticalCase, x: float
) -> tuple[float, float, float]:
    """(theta, theta', theta'') of the power-law solution at x > 0."""
    if x <= 0.0:
        raise DomainError(f"power-law solution needs x > 0, got {x!r}")
    al = float(case.alpha)
    th = case.b_inf * x ** (-al)
    d1 = -al * th / x
    d2 = al * (al + 1.0) * th / (x * x)
    return th, d1, d2


def talenti_aubin(case: CriticalCase, x: float) -> float:
    """The regular bump solution (1 + a x^2)^(-alpha) with theta(0) = 1,
    theta'(0) = 0."""
    a = float(case.a_ta)
    return (1.0 + a * x * x) ** (-float(case.alpha))


def talenti_aubin_with_derivatives(
    case: CriticalCase, x: float
) -> tuple[float, float, float]:
    """(theta, theta', theta'') of the bump solution."""
    a = float(case.a_ta)
    al = float(case.alpha)
    base = 1.0 + a * x * x
    th = base ** (-al)
    d1 = -2.0 * a * al * x * base ** (-al - 1.0)
    d2 = -2.0 * a * al * base ** (-al - 1.0) + 4.0 * a * a * al * (al + 1.0) * x * x * base ** (
        -al - 2.0
    )
    return th, d1, d2


def scale_solution(
    theta: Callable[[float], float], case: CriticalCase, lam: float
) -> Callable[[float], float]:
    """The scaled solution x -> lam^(-alpha) * theta(x/lam); solutions map
    to solutions."""
    if lam <= 0.0:
        raise DomainError(f"scaling parameter must be positive, got {lam!r}")
    al = float(case.alpha)
    prefactor = lam ** (-al)

    def scaled(x: float) -> float:
        return prefactor * theta(x / lam)

    return scaled


def to_autonomous(
    case: CriticalCase, theta: float, x: float, dtheta: float | None = None
) -> PhasePoint:
    """Map (theta, x) to the autonomous coordinates:

        z = theta * x^alpha / b_inf,   y = -ln x.

    When the radial derivative dtheta is supplied, z' = dz/dy is filled in
    via dz/dy = -x^alpha (x theta' + alpha theta)/b_inf.
    """
    if x <= 0.0:
        raise DomainError(f"substitution needs x > 0, got {x!r}")
    al = float(case.alpha)
    xa = x**al
    z = theta * xa / case.b_inf
    zp = None
    if dtheta is not None:
        zp = -xa * (x * dtheta + al * theta) / case.b_inf
    return PhasePoint(z=z, y=-math.log(x), zp=zp)


def from_autonomous(case: CriticalCase, pt: PhasePoint) -> tuple[float, float]:
    """Inverse substitution: (theta, x) with x = exp(-y),
    theta = b_inf * z * x^(-alpha)."""
    x = math.exp(-pt.y)
    theta = case.b_inf * pt.z * x ** (-float(case.alpha))
    return theta, x


def first_integral(case: CriticalCase, z: float, zp: float) -> float:
    """Conserved constant of the critical autonomous equation,

        C = 2 z'^2/(d-2)^2 - z^2/2 + z^(p+1)/(p+1).

    Constant along exact trajectories.  Note this is the un-rescaled
    constant; the per-dimension rescaling that matches the potential
    polynomials lives in the regimes module.
    """
    dd = (case.d - 2) ** 2
    return 2.0 * zp * zp / dd - 0.5 * z * z + z ** (case.p + 1) / (case.p + 1)
