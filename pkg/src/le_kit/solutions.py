"""Closed-form solution families of the critical Lane-Emden equation.

Every real solution family for d = 4 and d = 6 is represented as a small
frozen dataclass; `build` picks the family a constant C belongs to
(mirroring `regimes.classify`), `evaluate` computes theta(x), and
`evaluate_with_derivatives` additionally returns the exact first and
second radial derivatives via the chain rule through sn/cn/dn and P.

Families (s = sqrt(1+C) throughout):

* d=4, -1 < C < 0 (band):
      theta = +/- (1/x) sqrt((1+s) (1 - k^2 sn^2(u, k)))
            = +/- (1/x) sqrt(1+s) dn(u, k),
      u = sqrt(1+s) ln(Bx)/sqrt(2),  k = sqrt(2s/(1+s)).
  The amplitude enters as (1+s), not sqrt(1+s): it is the square of the
  band's outer edge z = sqrt(1+s), and the dn form makes the radicand
  1 - k^2 sn^2 = dn^2 manifestly nonnegative.
* d=4, C > 0 (unbounded, sign changing):
      theta = +/- (1/x) sqrt((1+s)(1 - sn^2(u, k)))
            = +/- (1/x) sqrt(1+s) cn(u, k),
      u = sqrt(2s) ln(Bx)/sqrt(2),  k = sqrt((1+s)/(2s)).
  The signed cn is the smooth continuation of the square-root form
  through its zeros.
* d=6 (half line z <= z0):
      theta = 4 x^-2 (1/2 - 2 P((2/sqrt 3) ln(Bx); 3/4, -(C + 1/2)/4)).
* C = 0 (both d): the scaled regular bump, lambda = 1/(2 sqrt(2) B) for
  d=4 and lambda = 1/(2 sqrt(3) B) for d=6.
* C = -1: the exact power law b_inf x^(-alpha).

B > 0 is required so ln(Bx) is real.  Solutions in different fundamental
period cells of sn coincide after B -> B * exp(4K sqrt(2)/sqrt(1+s)); the
principal periodic extension is used.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

from .elliptic import (
    Modulus,
    WeierstrassInvariants,
    jacobi_sn,
    weierstrass_p_with_derivative,
)
from .errors import (
    BranchEndError,
    DomainError,
    NoRealSolutionError,
    PoleError,
    UnsupportedBranchError,
    UnsupportedCaseError,
)
from .lane_emden import (
    CriticalCase,
    singular_solution_with_derivatives,
    talenti_aubin_with_derivatives,
)
from .regimes import DEGENERATE_C_TOL

__all__ = [
    "Singular",
    "TalentiAubinScaled",
    "JacobiBand",
    "JacobiUnbounded",
    "WeierstrassFamily",
    "ClosedFormSolution",
    "SolutionTrace",
    "band_modulus",
    "unbounded_modulus",
    "lambda_from_b",
    "build",
    "evaluate",
    "evaluate_with_derivatives",
    "trace",
]

_SQRT2 = math.sqrt(2.0)
_WEIER_ARG_SCALE = 2.0 / math.sqrt(3.0)


def band_modulus(C: float) -> Modulus:
    """Modulus of the d=4 band family: k = sqrt(2s/(1+s)), s = sqrt(1+C).
    Lies in (0, 1) for C in (-1, 0)."""
    s = math.sqrt(1.0 + C)
    return math.sqrt(2.0 * s / (1.0 + s))


def unbounded_modulus(C: float) -> Modulus:
    """Modulus of the d=4 unbounded family: k = sqrt((1+s)/(2s)).
    Lies in (sqrt(1/2), 1) for C > 0."""
    s = math.sqrt(1.0 + C)
    return math.sqrt((1.0 + s) / (2.0 * s))


def lambda_from_b(case: CriticalCase, B: float) -> float:
    """Scaling parameter identified at C = 0: 2 sqrt(2) B = 1/lambda for
    d=4 and 2 sqrt(3) B = 1/lambda for d=6."""
    if case.d == 4:
        return 1.0 / (2.0 * _SQRT2 * B)
    if case.d == 6:
        return 1.0 / (2.0 * math.sqrt(3.0) * B)
    raise UnsupportedCaseError(f"no C = 0 identification for d = {case.d}")


def _check_sign(sign: int, name: str) -> None:
    if sign not in (-1, 1):
        raise DomainError(f"{name} must be +1 or -1, got {sign!r}")


def _check_positive_b(B: float) -> None:
    if not B > 0.0:
        raise DomainError(f"integration constant B must be positive, got {B!r}")


@dataclass(frozen=True)
class Singular:
    """The exact power law theta = sign * b_inf * x^(-alpha); lives on the
    constant level C = -1 (the double root of the potential)."""

    case: CriticalCase
    sign: int = 1

    def __post_init__(self):
        _check_sign(self.sign, "sign")
        if self.sign == -1 and self.case.p % 2 == 0:
            raise DomainError("-theta is not a solution for even p")

    @property
    def constant(self) -> float:
        return -1.0


@dataclass(frozen=True)
class TalentiAubinScaled:
    """The scaled regular bump sign * lam^(-alpha) (1 + a (x/lam)^2)^(-alpha);
    the C = 0 member of every family."""

    case: CriticalCase
    lam: float
    sign: int = 1

    def __post_init__(self):
        _check_sign(self.sign, "sign")
        if self.sign == -1 and self.case.p % 2 == 0:
            raise DomainError("-theta is not a solution for even p")
        if not self.lam > 0.0:
            raise DomainError(f"scaling parameter must be positive, got {self.lam!r}")

    @property
    def constant(self) -> float:
        return 0.0


@dataclass(frozen=True)
class JacobiBand:
    """d=4 band family for C in (-1, 0); z stays inside one band of the
    potential.  Distinct sn period cells correspond to
    B -> B exp(4 K(k) sqrt(2)/sqrt(1+s))."""

    case: CriticalCase
    C: float
    B: float
    sign_outer: int = 1
    sign_arg: int = 1
    k: Modulus = 0.0

    def __post_init__(self):
        if self.case.d != 4:
            raise UnsupportedCaseError("band family exists only for d = 4")
        if not -1.0 < self.C < 0.0:
            raise DomainError(f"band family needs C in (-1, 0), got {self.C!r}")
        _check_positive_b(self.B)
        _check_sign(self.sign_outer, "sign_outer")
        _check_sign(self.sign_arg, "sign_arg")
        expected = band_modulus(self.C)
        if not 0.0 < self.k < 1.0 or abs(self.k - expected) > 1e-12:
            raise DomainError(
                f"modulus {self.k!r} inconsistent with C = {self.C!r}"
            )

    @property
    def constant(self) -> float:
        return self.C


@dataclass(frozen=True)
class JacobiUnbounded:
    """d=4 sign-changing family for C > 0; z sweeps the full interval
    [-z0, z0]."""

    case: CriticalCase
    C: float
    B: float
    sign_outer: int = 1
    sign_arg: int = 1
    k: Modulus = 0.0

    def __post_init__(self):
        if self.case.d != 4:
            raise UnsupportedCaseError("unbounded family exists only for d = 4")
        if not self.C > 0.0:
            raise DomainError(f"unbounded family needs C > 0, got {self.C!r}")
        _check_positive_b(self.B)
        _check_sign(self.sign_outer, "sign_outer")
        _check_sign(self.sign_arg, "sign_arg")
        expected = unbounded_modulus(self.C)
        if not 0.0 < self.k < 1.0 or abs(self.k - expected) > 1e-12:
            raise DomainError(
                f"modulus {self.k!r} inconsistent with C = {self.C!r}"
            )

    @property
    def constant(self) -> float:
        return self.C


@dataclass(frozen=True)
class WeierstrassFamily:
    """d=6 family on the half line z <= z0, parametrized by the real
    branch of P with g2 = 3/4, g3 = -(C + 1/2)/4."""

    case: CriticalCase
    C: float
    B: float
    g: WeierstrassInvariants = WeierstrassInvariants(0.0, 0.0)

    def __post_init__(self):
        if self.case.d != 6:
            raise UnsupportedCaseError("the P-function family exists only for d = 6")
        _check_positive_b(self.B)
        if abs(self.g.g2 - 0.75) > 1e-12 or abs(
            self.g.g3 + 0.25 * (self.C + 0.5)
        ) > 1e-12:
            raise DomainError(
                f"invariants {self.g!r} inconsistent with C = {self.C!r}"
            )

    @property
    def constant(self) -> float:
        return self.C


ClosedFormSolution = Union[
    Singular, TalentiAubinScaled, JacobiBand, JacobiUnbounded, WeierstrassFamily
]


def build(
    case: CriticalCase,
    C: float,
    B: float = 1.0,
    sign_outer: int = 1,
    sign_arg: int = 1,
    branch: str = "auto",
) -> ClosedFormSolution:
    """Construct the closed-form family the constant C belongs to.

    C within 1e-10 of the bifurcation values -1 and 0 snaps to the
    degenerate family (power law resp. scaled bump), matching the
    classifier's thresholds.  For d=6 with -1 < C < 0 only the half-line
    branch is real; requesting branch="middle_band" raises
    UnsupportedBranchError.
    """
    if case.d not in (4, 6):
        raise UnsupportedCaseError(f"families are built for d in {{4, 6}}, got {case.d}")
    _check_positive_b(B)
    _check_sign(sign_outer, "sign_outer")
    _check_sign(sign_arg, "sign_arg")
    if branch not in ("auto", "half_line", "middle_band"):
        raise DomainError(f"unknown branch {branch!r}")
    if branch == "middle_band":
        raise UnsupportedBranchError(
            "the middle-band branch is complex-valued and not provided"
        )
    if case.d == 4:
        if branch != "auto":
            raise DomainError("branch selection applies to d = 6 only")
        if abs(1.0 + C) <= DEGENERATE_C_TOL:
            return Singular(case=case, sign=sign_outer)
        if C < -1.0:
            raise NoRealSolutionError(
                f"no real solutions for d = 4 with C = {C!r} < -1"
            )
        if abs(C) <= DEGENERATE_C_TOL:
            return TalentiAubinScaled(case=case, lam=lambda_from_b(case, B), sign=sign_outer)
        if C < 0.0:
            return JacobiBand(
                case=case, C=C, B=B, sign_outer=sign_outer, sign_arg=sign_arg,
                k=band_modulus(C),
            )
        return JacobiUnbounded(
            case=case, C=C, B=B, sign_outer=sign_outer, sign_arg=sign_arg,
            k=unbounded_modulus(C),
        )
    # d == 6: the equation is not odd in theta, so there is no -theta branch
    if sign_outer == -1:
        raise DomainError("-theta is not a solution for even p (d = 6)")
    if abs(1.0 + C) <= DEGENERATE_C_TOL:
        return Singular(case=case, sign=1)
    if abs(C) <= DEGENERATE_C_TOL:
        return TalentiAubinScaled(case=case, lam=lambda_from_b(case, B), sign=1)
    return WeierstrassFamily(
        case=case, C=C, B=B,
        g=WeierstrassInvariants(g2=0.75, g3=-0.25 * (C + 0.5)),
    )


def evaluate(sol: ClosedFormSolution, x: float) -> float:
    """theta(x) for x > 0.  Raises PoleError near movable singularities of
    the d=6 family and BranchEndError if an sn radicand leaves [0, 1]
    beyond tolerance (not expected for a consistently built family)."""
    return evaluate_with_derivatives(sol, x)[0]


def evaluate_with_derivatives(
    sol: ClosedFormSolution, x: float
) -> tuple[float, float, float]:
    """(theta, theta', theta'') with exact chain-rule derivatives."""
    if not x > 0.0:
        raise DomainError(f"solutions are evaluated on x > 0, got {x!r}")
    if isinstance(sol, Singular):
        th, d1, d2 = singular_solution_with_derivatives(sol.case, x)
        return sol.sign * th, sol.sign * d1, sol.sign * d2
    if isinstance(sol, TalentiAubinScaled):
        al = float(sol.case.alpha)
        xi = x / sol.lam
        f, f1, f2 = talenti_aubin_with_derivatives(sol.case, xi)
        pref = sol.sign * sol.lam ** (-al)
        return pref * f, pref * f1 / sol.lam, pref * f2 / (sol.lam * sol.lam)
    if isinstance(sol, JacobiBand):
        return _eval_band(sol, x)
    if isinstance(sol, JacobiUnbounded):
        return _eval_unbounded(sol, x)
    if isinstance(sol, WeierstrassFamily):
        return _eval_weierstrass(sol, x)
    raise TypeError(f"not a closed-form solution: {sol!r}")


def _radicand_guard(sn: float) -> None:
    if sn * sn > 1.0 + 1e-12:
        raise BranchEndError(f"sn radicand negative beyond tolerance (sn = {sn!r})")


def _eval_band(sol: JacobiBand, x: float) -> tuple[float, float, float]:
    s = math.sqrt(1.0 + sol.C)
    amp = math.sqrt(1.0 + s)  # band edge; also the amplitude of z
    a = amp / _SQRT2  # du/d(ln x)
    u = sol.sign_arg * a * math.log(sol.B * x)
    val = jacobi_sn(u, sol.k)
    _radicand_guard(val.sn)
    k2 = sol.k * sol.k
    dn1 = -k2 * val.sn * val.cn
    dn2 = -k2 * val.dn * (val.cn * val.cn - val.sn * val.sn)
    sig = float(sol.sign_outer)
    ea = sol.sign_arg * a
    th = sig * amp * val.dn / x
    d1 = sig * amp * (ea * dn1 - val.dn) / (x * x)
    d2 = sig * amp * (a * a * dn2 - 3.0 * ea * dn1 + 2.0 * val.dn) / (x * x * x)
    return th, d1, d2


def _eval_unbounded(sol: JacobiUnbounded, x: float) -> tuple[float, float, float]:
    s = math.sqrt(1.0 + sol.C)
    amp = math.sqrt(1.0 + s)
    g = math.sqrt(s)  # sqrt(2s)/sqrt(2)
    u = sol.sign_arg * g * math.log(sol.B * x)
    val = jacobi_sn(u, sol.k)
    _radicand_guard(val.sn)
    k2 = sol.k * sol.k
    cn1 = -val.sn * val.dn
    cn2 = -val.cn * (val.dn * val.dn - k2 * val.sn * val.sn)
    sig = float(sol.sign_outer)
    eg = sol.sign_arg * g
    th = sig * amp * val.cn / x
    d1 = sig * amp * (eg * cn1 - val.cn) / (x * x)
    d2 = sig * amp * (g * g * cn2 - 3.0 * eg * cn1 + 2.0 * val.cn) / (x * x * x)
    return th, d1, d2


def _eval_weierstrass(sol: WeierstrassFamily, x: float) -> tuple[float, float, float]:
    c = _WEIER_ARG_SCALE
    v = c * math.log(sol.B * x)
    p, dp = weierstrass_p_with_derivative(v, sol.g)
    ddp = 6.0 * p * p - 0.5 * sol.g.g2  # P'' = 6 P^2 - g2/2
    phi = 0.5 - 2.0 * p
    x2 = x * x
    th = 4.0 * phi / x2
    d1 = -8.0 * (phi + c * dp) / (x2 * x)
    d2 = 4.0 * (6.0 * phi + 10.0 * c * dp - 2.0 * c * c * ddp) / (x2 * x2)
    return th, d1, d2


@dataclass(frozen=True)
class SolutionTrace:
    """Sampled (x, theta) arrays; None marks a gap (pole or branch end).

    xs is strictly increasing and positive; thetas has the same length.
    """

    xs: tuple[float, ...]
    thetas: tuple[float | None, ...]
    meta: dict

    def to_csv(self) -> str:
        lines = ["x,theta"]
        for x, th in zip(self.xs, self.thetas):
            lines.append(f"{x!r}," if th is None else f"{x!r},{th!r}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "meta": self.meta,
                "xs": list(self.xs),
                "thetas": list(self.thetas),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "SolutionTrace":
        data = json.loads(text)
        return cls(
            xs=tuple(float(x) for x in data["xs"]),
            thetas=tuple(None if t is None else float(t) for t in data["thetas"]),
            meta=data["meta"],
        )


def describe(sol: ClosedFormSolution) -> dict:
    """Stable descriptor of a solution for trace metadata."""
    base = {"family": type(sol).__name__, "d": sol.case.d, "p": sol.case.p}
    if isinstance(sol, Singular):
        base["sign"] = sol.sign
    elif isinstance(sol, TalentiAubinScaled):
        base["lambda"] = sol.lam
        base["sign"] = sol.sign
    elif isinstance(sol, (JacobiBand, JacobiUnbounded)):
        base.update(
            C=sol.C, B=sol.B, sign_outer=sol.sign_outer, sign_arg=sol.sign_arg, k=sol.k
        )
    elif isinstance(sol, WeierstrassFamily):
        base.update(C=sol.C, B=sol.B, g2=sol.g.g2, g3=sol.g.g3)
    return base


def trace(
    sol: ClosedFormSolution,
    x_min: float,
    x_max: float,
    n: int,
    spacing: str = "log",
) -> SolutionTrace:
    """Sample theta on a log- or linearly-spaced grid.

    Poles and branch ends become explicit gaps (None); they are never
    interpolated and never abort the trace.
    """
    if not 0.0 < x_min < x_max:
        raise DomainError(f"need 0 < x_min < x_max, got {(x_min, x_max)}")
    if n < 2:
        raise DomainError(f"need at least two samples, got n = {n}")
    if spacing == "log":
        lo, hi = math.log(x_min), math.log(x_max)
        xs = tuple(math.exp(lo + (hi - lo) * i / (n - 1)) for i in range(n))
    elif spacing == "linear":
        xs = tuple(x_min + (x_max - x_min) * i / (n - 1) for i in range(n))
    else:
        raise DomainError(f"spacing must be 'log' or 'linear', got {spacing!r}")
    thetas: list[float | None] = []
    for x in xs:
        try:
            val = evaluate(sol, x)
            thetas.append(val if math.isfinite(val) else None)
        except (PoleError, BranchEndError, OverflowError):
            thetas.append(None)
    return SolutionTrace(xs=xs, thetas=tuple(thetas), meta=describe(sol))
