"""Adaptive Simpson quadrature.

Used for the radial volume integrals of cones and trapezoidal balls.  The
integrands are smooth on closed intervals, so plain interval bisection with
the classical ``|S2 - S1| / 15`` error estimate and Richardson correction is
accurate and cheap.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

from .errors import InvalidArgument

__all__ = ["QuadResult", "adaptive_simpson"]


class QuadResult(NamedTuple):
    value: float
    error: float
    evaluations: int


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 48,
    min_depth: int = 3,
) -> QuadResult:
    """Integrate ``f`` over ``[a, b]`` to absolute tolerance ``tol``.

    Returns the integral, the accumulated error estimate and the number of
    integrand evaluations.  ``a > b`` gives the negated integral.
    """
    if not tol > 0:
        raise InvalidArgument(f"tolerance must be positive, got {tol}")
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    nevals = 3

    total = 0.0
    err = 0.0
    # explicit stack: (a, b, fa, fm, fb, whole, tol, depth)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, s, eps, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        flm, frm = f(lm), f(rm)
        nevals += 2
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        delta = left + right - s
        if depth >= max_depth or (depth >= min_depth and abs(delta) <= 15.0 * eps):
            total += left + right + delta / 15.0
            err += abs(delta) / 15.0
        else:
            half = 0.5 * eps
            stack.append((mid, hi, fmid, frm, fhi, right, half, depth + 1))
            stack.append((lo, mid, flo, flm, fmid, left, half, depth + 1))
    if not math.isfinite(total):
        raise InvalidArgument("integrand produced a non-finite value")
    return QuadResult(sign * total, err, nevals)
