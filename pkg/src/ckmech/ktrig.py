"""Curvature-labelled trigonometry.

``ck``, ``sk`` and ``tk`` interpolate between the circular (kappa > 0),
parabolic (kappa = 0) and hyperbolic (kappa < 0) cosine, sine and tangent:

    ck(kappa, x) = sum_l (-kappa)^l x^(2l) / (2l)!
    sk(kappa, x) = sum_l (-kappa)^l x^(2l+1) / (2l+1)!

so that ``ck**2 + kappa * sk**2 == 1``, ``d ck/dx = -kappa * sk`` and
``d sk/dx = ck``. All functions take plain Python floats.
"""

import math

from .errors import BranchError, PoleError

#: |ck| (or |sk| for the cotangent) at or below this value is treated as a pole.
POLE_TOL = 1e-12

#: |kappa * x**2| below this value switches to the truncated power series.
SERIES_THRESHOLD = 1e-8

_SERIES_TERMS = 6


def _series(kappa, x, odd):
    u = -kappa * x * x
    term = x if odd else 1.0
    total = term
    for l in range(1, _SERIES_TERMS):
        n = 2 * l + (1 if odd else 0)
        term *= u / ((n - 1) * n)
        total += term
    return total


def ck(kappa, x):
    """kappa-cosine: cos(sqrt(kappa) x), 1 or cosh(sqrt(-kappa) x)."""
    if kappa == 0.0:
        return 1.0
    if abs(kappa * x * x) < SERIES_THRESHOLD:
        return _series(kappa, x, odd=False)
    if kappa > 0.0:
        return math.cos(math.sqrt(kappa) * x)
    return math.cosh(math.sqrt(-kappa) * x)


def sk(kappa, x):
    """kappa-sine: sin(sqrt(kappa) x)/sqrt(kappa), x or the hyperbolic analogue."""
    if kappa == 0.0:
        return x
    if abs(kappa * x * x) < SERIES_THRESHOLD:
        return _series(kappa, x, odd=True)
    if kappa > 0.0:
        s = math.sqrt(kappa)
        return math.sin(s * x) / s
    s = math.sqrt(-kappa)
    return math.sinh(s * x) / s


def tk(kappa, x, tol=POLE_TOL):
    """kappa-tangent ``sk/ck``; raises :class:`PoleError` where ``|ck| <= tol``."""
    c = ck(kappa, x)
    if abs(c) <= tol:
        raise PoleError(f"tk({kappa}, {x}): kappa-cosine vanishes")
    return sk(kappa, x) / c


def ctk(kappa, x, tol=POLE_TOL):
    """Reciprocal kappa-tangent ``ck/sk``; raises :class:`PoleError` where ``|sk| <= tol``."""
    s = sk(kappa, x)
    if abs(s) <= tol:
        raise PoleError(f"1/tk({kappa}, {x}): kappa-sine vanishes")
    return ck(kappa, x) / s


def dck(kappa, x):
    return -kappa * sk(kappa, x)


def dsk(kappa, x):
    return ck(kappa, x)


def arcsk(kappa, s):
    """Principal-branch solution ``x`` of ``sk(kappa, x) == s``.

    For kappa > 0 the branch is |x| <= pi/(2 sqrt(kappa)) and a
    :class:`BranchError` is raised when ``|s| > 1/sqrt(kappa)``.
    """
    if kappa == 0.0:
        return s
    if kappa > 0.0:
        root = math.sqrt(kappa)
        u = root * s
        if abs(u) > 1.0:
            if abs(u) - 1.0 > 1e-12:
                raise BranchError(f"|{s}| exceeds 1/sqrt({kappa})")
            u = math.copysign(1.0, u)
        return math.asin(u) / root
    root = math.sqrt(-kappa)
    return math.asinh(root * s) / root


def arc_cs(kappa, c, s):
    """Solve ``ck(kappa, x) == c`` and ``sk(kappa, x) == s`` for x.

    Two-argument inverse: for kappa > 0 the result lies in
    (-pi/sqrt(kappa), pi/sqrt(kappa)]; otherwise ``c`` must be positive
    (single sheet) and the result is ``arcsk(kappa, s)``.
    """
    if kappa > 0.0:
        root = math.sqrt(kappa)
        return math.atan2(root * s, c) / root
    if c <= 0.0:
        raise BranchError(f"kappa-cosine {c} <= 0 has no preimage for kappa={kappa}")
    return arcsk(kappa, s)
