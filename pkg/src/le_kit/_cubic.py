"""Real roots of the depressed cubic t^3 + p t + q.

Cardano's formula for one real root, the trigonometric form for three,
and exact algebra for the degenerate (double / triple root) cases. The
discriminant-like quantity used throughout is

    disc = (q/2)^2 + (p/3)^3

with disc > 0 giving one real root, disc < 0 three distinct real roots,
and disc = 0 a repeated root.
"""

from __future__ import annotations

import math
import sys

_EPS = sys.float_info.epsilon


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def depressed_real_roots(p: float, q: float) -> tuple[str, tuple[float, ...]]:
    """Return (kind, roots) for t^3 + p t + q = 0.

    kind is one of:
      "one"    -- roots = (t,), the single real root
      "three"  -- roots = (t1, t2, t3) in descending order, all distinct
      "double" -- roots = (double, simple)
      "triple" -- roots = (0.0,)

    Degeneracy is decided from |disc| against rounding noise in its two
    addends, so exactly representable inputs land on the exact branch.
    """
    if p == 0.0 and q == 0.0:
        return "triple", (0.0,)
    half_q = 0.5 * q
    third_p = p / 3.0
    disc = half_q * half_q + third_p**3
    scale = half_q * half_q + abs(third_p) ** 3
    if abs(disc) <= 16.0 * _EPS * scale:
        # t^3 + p t + q = (t - r)^2 (t + 2r) with p = -3r^2, q = 2r^3
        r = -1.5 * q / p
        return "double", (r, -2.0 * r)
    if disc > 0.0:
        root = math.sqrt(disc)
        t = _cbrt(-half_q + root) + _cbrt(-half_q - root)
        t = _polish(t, p, q)
        return "one", (t,)
    m = 2.0 * math.sqrt(-third_p)
    arg = 3.0 * q / (p * m)  # cos(3 psi); roots are m cos(psi - 2 pi j/3)
    arg = max(-1.0, min(1.0, arg))
    psi = math.acos(arg) / 3.0
    roots = sorted(
        (_polish(m * math.cos(psi - 2.0 * math.pi * j / 3.0), p, q) for j in range(3)),
        reverse=True,
    )
    return "three", tuple(roots)


def _polish(t: float, p: float, q: float) -> float:
    # two Newton steps; enough to reach machine precision from the trig form
    for _ in range(2):
        f = t * (t * t + p) + q
        df = 3.0 * t * t + p
        if df == 0.0:
            break
        t -= f / df
    return t
