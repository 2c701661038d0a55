"""Potential polynomials and regime classification.

Rescaling the first integral turns the phase-space constraint into

    (z')^2 = (1/2) * w43(z),   w43(z) = -z^4 + 2 z^2 + C     (d = 4)
    (z')^2 = (4/3) * w62(z),   w62(z) = -2 z^3 + 3 z^2 + C   (d = 6)

so real solutions exist exactly where the potential polynomial is
nonnegative.  This module builds the polynomials, finds their real roots
(closed form for the quartic-in-z^2, Cardano with a Newton polish for the
cubic), reports the admissible closed z-intervals, and labels the regime.

The constant C used here is the rescaled one: C = scale * C0 where C0 is
lane_emden.first_integral and scale is 4 (d=4) or 6 (d=6), obtained by
matching the two displays of (z')^2 coefficient by coefficient.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

from ._cubic import depressed_real_roots
from .errors import UnsupportedCaseError
from .lane_emden import CriticalCase

__all__ = [
    "DEGENERATE_C_TOL",
    "PotentialPolynomial",
    "RegimeLabel",
    "RegimeReport",
    "potential",
    "real_roots",
    "classify",
    "first_integral_scale",
]

# |C| or |C + 1| below this is treated as the exact bifurcation value, so
# users hitting C = 0 / C = -1 numerically get the degenerate
# classification deterministically.
DEGENERATE_C_TOL = 1e-10

_NEG_INF = float("-inf")


class RegimeLabel(str, enum.Enum):
    NO_REAL_SOLUTION = "NoRealSolution"
    CONSTANT_ONLY = "ConstantOnly"
    TWO_BANDS = "TwoBands"
    TALENTI_AUBIN = "TalentiAubin"
    UNBOUNDED_BELOW_ROOT = "UnboundedBelowRoot"
    THREE_ROOTS = "ThreeRoots"
    SINGLE_ROOT_HALF_LINE = "SingleRootHalfLine"
    DOUBLE_ROOT_DEGENERATE = "DoubleRootDegenerate"


@dataclass(frozen=True)
class PotentialPolynomial:
    """The potential polynomial for one (case, C), coefficients in
    ascending degree.  Leading coefficient is negative for both cases."""

    case: CriticalCase
    C: float
    coeffs: tuple[float, ...]

    def __call__(self, z: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self, z: float) -> float:
        acc = 0.0
        for i in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * z + i * self.coeffs[i]
        return acc


@dataclass(frozen=True)
class RegimeReport:
    """Classification of one constant C: roots with multiplicities
    (sorted ascending), closed intervals of nonnegativity (lower bound
    -inf means a half-line), and the regime label."""

    case: CriticalCase
    C: float
    label: RegimeLabel
    roots: tuple[tuple[float, int], ...]
    intervals: tuple[tuple[float, float], ...]

    def to_dict(self) -> dict:
        return {
            "d": self.case.d,
            "p": self.case.p,
            "C": self.C,
            "label": self.label.value,
            "roots": [[r, m] for r, m in self.roots],
            # JSON has no -inf: an unbounded lower endpoint serializes as null
            "intervals": [
                [None if lo == _NEG_INF else lo, hi] for lo, hi in self.intervals
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def parse_dict(data: dict, case: CriticalCase) -> "RegimeReport":
        return RegimeReport(
            case=case,
            C=float(data["C"]),
            label=RegimeLabel(data["label"]),
            roots=tuple((float(r), int(m)) for r, m in data["roots"]),
            intervals=tuple(
                (_NEG_INF if lo is None else float(lo), float(hi))
                for lo, hi in data["intervals"]
            ),
        )


def first_integral_scale(case: CriticalCase) -> float:
    """Factor turning lane_emden.first_integral into the C of the
    potential polynomials: 4 for d=4, 6 for d=6."""
    _require_supported(case)
    return {4: 4.0, 6: 6.0}[case.d]


def _require_supported(case: CriticalCase) -> None:
    if case.d not in (4, 6):
        raise UnsupportedCaseError(
            f"regime analysis covers d in {{4, 6}}, got d = {case.d}"
        )


def potential(case: CriticalCase, C: float) -> PotentialPolynomial:
    """The potential polynomial w43 (d=4) or w62 (d=6)."""
    _require_supported(case)
    if case.d == 4:
        coeffs = (C, 0.0, 2.0, 0.0, -1.0)
    else:
        coeffs = (C, 0.0, 3.0, -2.0)
    return PotentialPolynomial(case=case, C=C, coeffs=coeffs)


def real_roots(poly: PotentialPolynomial) -> list[tuple[float, int]]:
    """Sorted (root, multiplicity) pairs of the potential polynomial.

    d=4 uses the closed form z^2 = 1 +/- sqrt(1+C); d=6 goes through the
    depressed cubic with a Newton polish.  Double roots are detected via
    |1+C| (d=4) resp. |C|, |1+C| (d=6), the exact bifurcation values.
    """
    C = poly.C
    if poly.case.d == 4:
        return _roots_d4(C)
    return _roots_d6(poly, C)


def _roots_d4(C: float) -> list[tuple[float, int]]:
    t = 1.0 + C
    if abs(t) <= DEGENERATE_C_TOL:
        return [(-1.0, 2), (1.0, 2)]
    if t < 0.0:
        return []
    s = math.sqrt(t)
    out: list[tuple[float, int]] = []
    hi = math.sqrt(1.0 + s)
    out.append((-hi, 1))
    out.append((hi, 1))
    if abs(C) <= DEGENERATE_C_TOL:
        out.append((0.0, 2))
    elif C < 0.0:
        lo = math.sqrt(1.0 - s)
        out.append((-lo, 1))
        out.append((lo, 1))
    return sorted(out)


def _roots_d6(poly: PotentialPolynomial, C: float) -> list[tuple[float, int]]:
    if abs(1.0 + C) <= DEGENERATE_C_TOL:
        return [(-0.5, 1), (1.0, 2)]
    if abs(C) <= DEGENERATE_C_TOL:
        return [(0.0, 2), (1.5, 1)]
    # -2z^3 + 3z^2 + C = 0 depressed by z = w + 1/2:
    #   w^3 - (3/4) w - (1 + 2C)/4 = 0
    kind, ws = depressed_real_roots(-0.75, -(1.0 + 2.0 * C) / 4.0)
    roots = sorted(_polish_d6(w + 0.5, poly) for w in ws)
    if kind == "one":
        return [(roots[0], 1)]
    if kind == "double":
        # only reachable for C within rounding of 0 or -1; keep the algebra
        double = -1.5 * (-(1.0 + 2.0 * C) / 4.0) / (-0.75) + 0.5
        simple = [r for r in roots if abs(r - double) > 1e-8][0]
        return sorted([(double, 2), (simple, 1)])
    return [(r, 1) for r in roots]


def _polish_d6(z: float, poly: PotentialPolynomial) -> float:
    for _ in range(2):
        f = poly(z)
        df = poly.derivative(z)
        if df == 0.0:
            break
        z -= f / df
    return z


def classify(case: CriticalCase, C: float) -> RegimeReport:
    """Regime of the constant C: labels, roots, and the closed z-intervals
    where the potential polynomial is nonnegative.

    d = 4:
      C < -1          NoRealSolution (w43 < 0 everywhere)
      C = -1          ConstantOnly (isolated points z = +/-1)
      -1 < C < 0      TwoBands, symmetric pair of bounded bands
      C = 0           TalentiAubin, z in [-sqrt 2, sqrt 2]
      C > 0           UnboundedBelowRoot, z in [-z0, z0], z0 = sqrt(1+sqrt(1+C))

    d = 6:
      C < -1          SingleRootHalfLine, z <= z0 < 0
      C = -1          DoubleRootDegenerate, z <= -1/2 plus the point z = 1
      -1 < C < 0      ThreeRoots a < b < c, z in (-inf, a] u [b, c]
      C = 0           TalentiAubin, z <= 3/2
      C > 0           SingleRootHalfLine, z <= z0, z0 > 3/2
    """
    _require_supported(case)
    poly = potential(case, C)
    roots = tuple(real_roots(poly))
    if case.d == 4:
        label, intervals = _classify_d4(C, roots)
    else:
        label, intervals = _classify_d6(C, roots)
    return RegimeReport(case=case, C=C, label=label, roots=roots, intervals=intervals)


def _classify_d4(C, roots):
    if abs(1.0 + C) <= DEGENERATE_C_TOL:
        return RegimeLabel.CONSTANT_ONLY, ((-1.0, -1.0), (1.0, 1.0))
    if C < -1.0:
        return RegimeLabel.NO_REAL_SOLUTION, ()
    if abs(C) <= DEGENERATE_C_TOL:
        s2 = math.sqrt(2.0)
        return RegimeLabel.TALENTI_AUBIN, ((-s2, s2),)
    if C < 0.0:
        (a, _), (b, _), (c, _), (d, _) = roots
        return RegimeLabel.TWO_BANDS, ((a, b), (c, d))
    z0 = roots[-1][0]
    return RegimeLabel.UNBOUNDED_BELOW_ROOT, ((-z0, z0),)


def _classify_d6(C, roots):
    if abs(1.0 + C) <= DEGENERATE_C_TOL:
        return RegimeLabel.DOUBLE_ROOT_DEGENERATE, ((_NEG_INF, -0.5), (1.0, 1.0))
    if abs(C) <= DEGENERATE_C_TOL:
        return RegimeLabel.TALENTI_AUBIN, ((_NEG_INF, 1.5),)
    if C < -1.0 or C > 0.0:
        z0 = roots[0][0]
        return RegimeLabel.SINGLE_ROOT_HALF_LINE, ((_NEG_INF, z0),)
    (a, _), (b, _), (c, _) = roots
    return RegimeLabel.THREE_ROOTS, ((_NEG_INF, a), (b, c))
