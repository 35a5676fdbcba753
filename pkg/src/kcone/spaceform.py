"""Trigonometry of the model planes of constant curvature kappa.

All functions take the curvature ``kappa`` as a plain float and accept
scalars or numpy arrays for the length/angle arguments.  Lengths are in model
units and angles in radians.

For ``kappa > 0`` every radial argument must lie in ``[0, pi / sqrt(kappa)]``.
Triangles whose two sides exceed a quarter great circle are still valid; the
cosine law then returns the shorter of the two arcs, which is the true model
distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleTriangle, InvalidArgument

__all__ = [
    "TriangleData",
    "sn",
    "cs",
    "asn",
    "diameter_bound",
    "cosine_law_side",
    "half_chord_value",
    "comparison_angle",
    "trig_inequality_margin",
    "sn_power_integral",
]

# |kappa| t^2 below this switches sn / asn to their Taylor branches
TAYLOR_THRESHOLD = 1e-8
_DOMAIN_SLACK = 1e-12


def diameter_bound(kappa: float) -> float:
    """Largest admissible radial argument: ``pi / sqrt(kappa)`` or ``inf``."""
    return math.pi / math.sqrt(kappa) if kappa > 0 else math.inf


def _check_kappa(kappa: float) -> float:
    kappa = float(kappa)
    if not math.isfinite(kappa):
        raise InvalidArgument(f"curvature must be finite, got {kappa}")
    return kappa


def _check_lengths(kappa: float, *ts) -> None:
    bound = diameter_bound(kappa)
    for t in ts:
        t = np.asarray(t, dtype=float)
        if np.any(~np.isfinite(t)) or np.any(t < 0):
            raise InvalidArgument("lengths must be finite and non-negative")
        if kappa > 0 and np.any(t > bound * (1 + _DOMAIN_SLACK)):
            raise InvalidArgument(
                f"length exceeds pi/sqrt(kappa) = {bound} for kappa = {kappa}"
            )


def _check_angles(theta) -> None:
    theta = np.asarray(theta, dtype=float)
    if np.any(~np.isfinite(theta)) or np.any(theta < 0) or np.any(theta > math.pi * (1 + _DOMAIN_SLACK)):
        raise InvalidArgument("angles must lie in [0, pi]")


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def _sn(kappa: float, t):
    """Unchecked model sine; works for any real t."""
    t = np.asarray(t, dtype=float)
    if kappa == 0.0:
        return t.copy()
    small = abs(kappa) * t * t < TAYLOR_THRESHOLD
    t2 = t * t
    taylor = t * (1.0 - kappa * t2 / 6.0 + kappa * kappa * t2 * t2 / 120.0)
    rk = math.sqrt(abs(kappa))
    if kappa > 0:
        full = np.sin(rk * t) / rk
    else:
        full = np.sinh(rk * t) / rk
    return np.where(small, taylor, full)


def _asn(kappa: float, y):
    y = np.asarray(y, dtype=float)
    if kappa == 0.0:
        return y.copy()
    y2 = y * y
    small = abs(kappa) * y2 < TAYLOR_THRESHOLD
    taylor = y * (1.0 + kappa * y2 / 6.0 + 3.0 * kappa * kappa * y2 * y2 / 40.0)
    rk = math.sqrt(abs(kappa))
    if kappa > 0:
        full = np.arcsin(np.clip(rk * y, -1.0, 1.0)) / rk
    else:
        full = np.arcsinh(rk * y) / rk
    return np.where(small, taylor, full)


def sn(kappa: float, t):
    """Model sine ``sn_kappa(t)``.

    ``t`` for ``kappa = 0``, ``sin(sqrt(kappa) t) / sqrt(kappa)`` for
    ``kappa > 0`` and ``sinh(sqrt(-kappa) t) / sqrt(-kappa)`` for
    ``kappa < 0``.  Near ``kappa = 0`` a Taylor branch keeps the function
    continuous in ``kappa``.

    >>> sn(0.0, 2.0)
    2.0
    >>> round(sn(1.0, math.pi / 2), 12)
    1.0
    """
    kappa = _check_kappa(kappa)
    _check_lengths(kappa, t)
    return _out(_sn(kappa, t))


def cs(kappa: float, t):
    """Model cosine: ``cos(sqrt(kappa) t)``, ``1`` or ``cosh(sqrt(-kappa) t)``."""
    kappa = _check_kappa(kappa)
    t = np.asarray(t, dtype=float)
    rk = math.sqrt(abs(kappa))
    if kappa > 0:
        return _out(np.cos(rk * t))
    if kappa < 0:
        return _out(np.cosh(rk * t))
    return _out(np.ones_like(t))


def asn(kappa: float, y):
    """Inverse of ``sn`` on ``[0, pi / (2 sqrt(kappa))]`` (all of ``[0, inf)`` if ``kappa <= 0``)."""
    kappa = _check_kappa(kappa)
    y = np.asarray(y, dtype=float)
    if np.any(y < 0) or (kappa > 0 and np.any(y * math.sqrt(kappa) > 1 + _DOMAIN_SLACK)):
        raise InvalidArgument("argument outside the range of sn")
    return _out(_asn(kappa, y))


@dataclass(frozen=True)
class TriangleData:
    """Two sides and their included angle of a model triangle."""

    side_a: float
    side_b: float
    angle: float

    def validate(self, kappa: float) -> "TriangleData":
        _check_lengths(kappa, self.side_a, self.side_b)
        _check_angles(self.angle)
        return self


def _half_chord(kappa, s, t, theta):
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    half = np.sin(0.5 * np.asarray(theta, dtype=float))
    d = _sn(kappa, 0.5 * (s - t))
    return d * d + half * half * _sn(kappa, s) * _sn(kappa, t)


def half_chord_value(kappa: float, side_a, side_b=None, angle=None):
    """Right-hand side of the half-chord form of the cosine law.

    ``sn^2((a - b)/2) + sin^2(angle/2) sn(a) sn(b)``, which equals
    ``sn^2(c/2)`` for the side ``c`` opposite ``angle``.  Accepts either a
    :class:`TriangleData` or the three numbers.
    """
    kappa = _check_kappa(kappa)
    if isinstance(side_a, TriangleData):
        tri = side_a
        side_a, side_b, angle = tri.side_a, tri.side_b, tri.angle
    _check_lengths(kappa, side_a, side_b)
    _check_angles(angle)
    return _out(_half_chord(kappa, side_a, side_b, angle))


def _cosine_law_side(kappa, s, t, theta):
    h = np.maximum(_half_chord(kappa, s, t, theta), 0.0)
    return 2.0 * _asn(kappa, np.sqrt(h))


def cosine_law_side(kappa: float, s, t, theta):
    """Side opposite ``theta`` in the model triangle with sides ``s``, ``t``.

    Evaluated through the half-chord identity, which has no cancellation for
    thin triangles.

    >>> round(cosine_law_side(0.0, 1.0, 1.0, math.pi / 2) ** 2, 12)
    2.0
    """
    kappa = _check_kappa(kappa)
    _check_lengths(kappa, s, t)
    _check_angles(theta)
    return _out(_cosine_law_side(kappa, s, t, theta))


def comparison_angle(kappa: float, a, b, c):
    """Angle between sides ``a`` and ``b`` of the model triangle with third side ``c``.

    Uses the half-angle form ``tan^2(theta/2) = P / Q`` with
    ``P = sn((c+|a-b|)/2) sn((c-|a-b|)/2)`` and
    ``Q = sn((a+b+c)/2) sn((a+b-c)/2)``; both factors are products of
    differences that stay accurate at degenerate triangles.
    """
    kappa = _check_kappa(kappa)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    _check_lengths(kappa, a, b, c)
    if np.any(a <= 0) or np.any(b <= 0):
        raise InfeasibleTriangle("comparison angle needs positive sides a, b")
    scale = np.maximum(a + b, 1.0)
    slack = 1e-12 * scale
    gap = np.abs(a - b)
    if np.any(c < gap - slack) or np.any(c > a + b + slack):
        raise InfeasibleTriangle("lengths violate the triangle inequality")
    if kappa > 0:
        if np.any(a + b + c > 2.0 * diameter_bound(kappa) + slack):
            raise InfeasibleTriangle("perimeter exceeds 2 pi / sqrt(kappa)")
    p = _sn(kappa, 0.5 * (c + gap)) * _sn(kappa, np.maximum(0.5 * (c - gap), 0.0))
    q = _sn(kappa, np.minimum(0.5 * (a + b + c), diameter_bound(kappa))) * _sn(
        kappa, np.maximum(0.5 * (a + b - c), 0.0)
    )
    p = np.maximum(p, 0.0)
    q = np.maximum(q, 0.0)
    if np.any((p == 0) & (q == 0)):
        raise InfeasibleTriangle("angle is undetermined for this triangle")
    return _out(2.0 * np.arctan2(np.sqrt(p), np.sqrt(q)))


def _sinc(u):
    # sin(u)/u with the removable singularity filled in
    return np.sinc(np.asarray(u, dtype=float) / math.pi)


def _shc(u):
    u = np.asarray(u, dtype=float)
    safe = np.where(u == 0, 1.0, u)
    return np.where(np.abs(u) < 1e-8, 1.0 + u * u / 6.0, np.sinh(safe) / safe)


def trig_inequality_margin(case: int, lam, x):
    """Signed margin of one of four elementary sine/sinh inequalities.

    Non-negative whenever the inequality holds:

    1. ``sin(lam x) - lam sin(x)`` for ``lam in [0, 1]``, ``x in [0, pi]``
    2. ``lam sinh(x) - sinh(lam x)`` for ``lam in [0, 1]``, ``x >= 0``
    3. ``sin(lam x)/(lam sin x) - (1 - (lam x)^2/6)`` for ``lam >= 0``,
       ``x in [0, pi)``, ``lam x <= pi``
    4. ``sinh(lam x)/(lam sinh x) - (1 - x)`` for ``lam >= 0``, ``x >= 0``

    Ratios at ``x = 0`` or ``lam = 0`` take their limiting values.
    """
    lam = np.asarray(lam, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.any(lam < 0) or np.any(x < 0) or np.any(~np.isfinite(lam)) or np.any(~np.isfinite(x)):
        raise InvalidArgument("lam and x must be finite and non-negative")
    if case == 1:
        if np.any(lam > 1) or np.any(x > math.pi):
            raise InvalidArgument("case 1 needs lam in [0, 1] and x in [0, pi]")
        out = np.sin(lam * x) - lam * np.sin(x)
    elif case == 2:
        if np.any(lam > 1):
            raise InvalidArgument("case 2 needs lam in [0, 1]")
        out = lam * np.sinh(x) - np.sinh(lam * x)
    elif case == 3:
        if np.any(x >= math.pi) or np.any(lam * x > math.pi):
            raise InvalidArgument("case 3 needs x in [0, pi) and lam x <= pi")
        out = _sinc(lam * x) / _sinc(x) - (1.0 - (lam * x) ** 2 / 6.0)
    elif case == 4:
        out = _shc(lam * x) / _shc(x) - (1.0 - x)
    else:
        raise InvalidArgument(f"unknown inequality case {case!r}")
    return _out(out)


def _sin_power_antiderivative(m: int, u: float, hyperbolic: bool) -> float:
    """Antiderivative of sin^m (or sinh^m) at u, vanishing at u = 0."""
    if hyperbolic:
        s, c = math.sinh(u), math.cosh(u)
    else:
        s, c = math.sin(u), math.cos(u)
    # F_0 = u; F_1 = 1 - cos u  (resp. cosh u - 1), both zero at 0
    if m % 2 == 0:
        val, k = u, 0
    else:
        # 1 - cos u (resp. cosh u - 1) written without cancellation
        half = math.sinh(0.5 * u) if hyperbolic else math.sin(0.5 * u)
        val, k = 2.0 * half * half, 1
    while k + 2 <= m:
        k += 2
        boundary = s ** (k - 1) * c / k
        if hyperbolic:
            val = boundary - (k - 1) / k * val
        else:
            val = -boundary + (k - 1) / k * val
    return val


def sn_power_integral(kappa: float, m: int, a: float, b: float) -> float:
    """Closed form of ``int_a^b sn_kappa(t)^m dt`` for integer ``m >= 0``.

    Uses the reduction formula for powers of sin / sinh; independent of the
    adaptive quadrature used by the cone module.
    """
    kappa = _check_kappa(kappa)
    m = int(m)
    if m < 0:
        raise InvalidArgument("power must be a non-negative integer")
    _check_lengths(kappa, a, b)
    if kappa == 0.0:
        return (b ** (m + 1) - a ** (m + 1)) / (m + 1)
    if abs(kappa) * max(a, b) ** 2 < 1e-4:
        # sn^m = t^m (1 - m k t^2/6 + (m/120 + m(m-1)/72) k^2 t^4 + O(k^3 t^6))
        c2 = -m * kappa / 6.0
        c4 = (m / 120.0 + m * (m - 1) / 72.0) * kappa * kappa

        def poly(t):
            return t ** (m + 1) / (m + 1) + c2 * t ** (m + 3) / (m + 3) + c4 * t ** (m + 5) / (m + 5)

        return poly(b) - poly(a)
    rk = math.sqrt(abs(kappa))
    hyper = kappa < 0
    fb = _sin_power_antiderivative(m, rk * b, hyper)
    fa = _sin_power_antiderivative(m, rk * a, hyper)
    return (fb - fa) / rk ** (m + 1)
