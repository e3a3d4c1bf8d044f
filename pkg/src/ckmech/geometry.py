"""Charts, metric and curvature of the Cayley-Klein spaces.

Coordinates are ordered ``(r, theta, phi)`` throughout; tensors are numpy
arrays indexed in that order, e.g. ``gamma[k, i, j]`` is the Christoffel
symbol with upper index ``k``.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BranchError, ChartError, DegenerateMetric
from .ktrig import POLE_TOL, arc_cs, arcsk, ck, sk
from .liealg import one_param_subgroup

COORDS = ("r", "theta", "phi")

#: Maximum |Sigma residual| accepted by :func:`ambient_to_polar`.
SIGMA_TOL = 1e-9


class PolarPoint(NamedTuple):
    r: float
    theta: float
    phi: float


class AmbientPoint(NamedTuple):
    x0: float
    x1: float
    x2: float
    x3: float


class DistanceTriple(NamedTuple):
    x: float
    y: float
    z: float


def polar_to_ambient(q, params):
    r, theta, phi = q
    s1 = sk(params.kappa1, r)
    s2 = sk(params.kappa2, theta)
    return AmbientPoint(
        ck(params.kappa1, r),
        s1 * ck(params.kappa2, theta),
        s1 * s2 * math.cos(phi),
        s1 * s2 * math.sin(phi),
    )


def polar_to_ambient_by_group(q, params):
    """Same map computed as exp(phi J23) exp(theta J12) exp(r J01) O."""
    r, theta, phi = q
    m = (one_param_subgroup((2, 3), phi, params)
         @ one_param_subgroup((1, 2), theta, params)
         @ one_param_subgroup((0, 1), r, params))
    return AmbientPoint(*m[:, 0])


def sigma_residual(x, params):
    x0, x1, x2, x3 = x
    k1, k12 = params.kappa1, params.kappa12
    return x0 * x0 + k1 * x1 * x1 + k12 * (x2 * x2 + x3 * x3) - 1.0


def ambient_to_polar(x, params):
    """Inverse chart on the canonical branch.

    ``r`` in [0, pi/sqrt(k1)] (or [0, inf)), ``theta`` from the pair
    (x1, sqrt(x2^2 + x3^2)), ``phi = atan2(x3, x2)``. Points on the r = 0
    fibre (and the antipode for k1 > 0) return ``theta = phi = 0``.
    """
    x0, x1, x2, x3 = (float(v) for v in x)
    if abs(sigma_residual((x0, x1, x2, x3), params)) > SIGMA_TOL:
        raise ChartError("point does not lie on the sphere Sigma")
    k1, k2 = params.kappa1, params.kappa2
    rho2 = x2 * x2 + x3 * x3
    s1_sq = x1 * x1 + k2 * rho2
    on_axis = max(abs(x1), abs(x2), abs(x3)) <= POLE_TOL
    if not on_axis and (s1_sq <= 0.0 or (k2 < 0.0 and x1 <= 0.0)):
        raise ChartError("point lies outside the time-like region covered by the chart")
    s1 = math.sqrt(max(s1_sq, 0.0))
    try:
        r = arc_cs(k1, x0, s1)
    except BranchError as exc:
        raise ChartError(str(exc)) from None
    if on_axis:
        return PolarPoint(r, 0.0, 0.0)
    try:
        theta = arc_cs(k2, x1 / s1, math.sqrt(rho2) / s1)
    except BranchError as exc:
        raise ChartError(str(exc)) from None
    phi = math.atan2(x3, x2) if rho2 > 0.0 else 0.0
    return PolarPoint(r, theta, phi)


def _chart_factors(q, params, tol=POLE_TOL):
    r, theta, _ = q
    s1 = sk(params.kappa1, r)
    s2 = sk(params.kappa2, theta)
    if abs(s1) <= tol or abs(s2) <= tol:
        raise DegenerateMetric(f"polar chart singular at r={r}, theta={theta}")
    return s1, ck(params.kappa1, r), s2, ck(params.kappa2, theta)


def metric_polar(q, params):
    """diag(1, k2 S1^2, k2 S1^2 S2^2) with S1 = S_{k1}(r), S2 = S_{k2}(theta)."""
    s1, _, s2, _ = _chart_factors(q, params)
    g = params.kappa2 * s1 * s1
    return np.diag([1.0, g, g * s2 * s2])


def christoffel(q, params):
    """Levi-Civita connection ``gamma[k, i, j]`` of the polar metric."""
    k2 = params.kappa2
    s1, c1, s2, c2 = _chart_factors(q, params)
    g = np.zeros((3, 3, 3))
    R, TH, PH = 0, 1, 2
    g[TH, TH, R] = g[TH, R, TH] = c1 / s1
    g[PH, PH, R] = g[PH, R, PH] = c1 / s1
    g[PH, PH, TH] = g[PH, TH, PH] = c2 / s2
    g[R, TH, TH] = -k2 * s1 * c1
    g[R, PH, PH] = -k2 * s1 * c1 * s2 * s2
    g[TH, PH, PH] = -s2 * c2
    return g


@dataclass(frozen=True)
class Curvature:
    riemann: np.ndarray      # riemann[i, j, k, l] = R^i_{jkl}
    ricci: np.ndarray        # ricci[i, j] = R_{ij}
    sectional: dict          # {(i, j): K_ij} for i < j
    scalar: float


def _assemble(riemann, metric):
    ricci = np.einsum("kikj->ij", riemann)
    inv = np.diag(1.0 / np.diag(metric))
    lowered = np.einsum("im,mjkl->ijkl", metric, riemann)
    sectional = {}
    for i in range(3):
        for j in range(i + 1, 3):
            area = metric[i, i] * metric[j, j] - metric[i, j] ** 2
            sectional[COORDS[i], COORDS[j]] = lowered[i, j, i, j] / area
    return Curvature(riemann, ricci, sectional, float(np.einsum("ij,ij->", inv, ricci)))


def riemann_ricci(q, params):
    """Closed-form curvature tensors; every sectional curvature equals k1."""
    k1, k2 = params.kappa1, params.kappa2
    s1, _, s2, _ = _chart_factors(q, params)
    rm = np.zeros((3, 3, 3, 3))
    R, TH, PH = 0, 1, 2

    def put(i, j, k, l, value):
        rm[i, j, k, l] = value
        rm[i, j, l, k] = -value

    a = k1 * k2 * s1 * s1
    b = a * s2 * s2
    put(R, TH, R, TH, a)
    put(PH, TH, PH, TH, a)
    put(R, PH, R, PH, b)
    put(TH, PH, TH, PH, b)
    put(TH, R, TH, R, k1)
    put(PH, R, PH, R, k1)
    return _assemble(rm, metric_polar(q, params))


def _shift(q, axis, h):
    q = list(q)
    q[axis] += h
    return q


def _central(f, q, axis, h):
    """Five-point central difference of ``f`` along one coordinate.

    The step shrinks with the distance to the chart singularities r = 0 and
    theta = 0, where the metric factors vary fastest.
    """
    h *= min(1.0, abs(q[0]), abs(q[1]))
    return (8.0 * (f(_shift(q, axis, h)) - f(_shift(q, axis, -h)))
            - (f(_shift(q, axis, 2 * h)) - f(_shift(q, axis, -2 * h)))) / (12.0 * h)


def christoffel_fd(q, params, h=1e-3):
    """Christoffel symbols from central differences of :func:`metric_polar`."""
    metric = lambda p: metric_polar(p, params)  # noqa: E731
    inv = np.linalg.inv(metric(q))
    dg = np.array([_central(metric, q, a, h) for a in range(3)])  # dg[a, i, j] = d_a g_ij
    # gamma_{l,ij} = (d_i g_lj + d_j g_li - d_l g_ij) / 2
    lower = 0.5 * (np.einsum("ilj->lij", dg) + np.einsum("jli->lij", dg) - dg)
    return np.einsum("kl,lij->kij", inv, lower)


def riemann_fd(q, params, h=2e-3):
    """Curvature from finite differences only (metric -> connection -> Riemann)."""
    conn = lambda p: christoffel_fd(p, params, h)  # noqa: E731
    gam = conn(q)
    dgam = np.array([_central(conn, q, a, h) for a in range(3)])  # dgam[a, i, j, k] = d_a gamma^i_{jk}
    # R^i_{jkl} = d_k G^i_{lj} - d_l G^i_{kj} + G^i_{km} G^m_{lj} - G^i_{lm} G^m_{kj}
    rm = (np.einsum("kilj->ijkl", dgam) - np.einsum("likj->ijkl", dgam)
          + np.einsum("ikm,mlj->ijkl", gam, gam) - np.einsum("ilm,mkj->ijkl", gam, gam))
    return _assemble(rm, metric_polar(q, params))


def distances(q, params):
    """Geodesic distances (x, y, z) from the point to the three reference 2-planes.

    Solves S_{k1}(x) = x1, S_{k1 k2}(y) = x2, S_{k1 k2}(z) = x3 on the
    principal branch; raises :class:`BranchError` when no solution exists.
    """
    _, x1, x2, x3 = polar_to_ambient(q, params)
    k1, k12 = params.kappa1, params.kappa12
    return DistanceTriple(arcsk(k1, x1), arcsk(k12, x2), arcsk(k12, x3))


def transverse_distance(q, params):
    """Distance h to the time-like axis: S_{k1 k2}(h) = S_{k1}(r) S_{k2}(theta)."""
    r, theta, _ = q
    return arcsk(params.kappa12, sk(params.kappa1, r) * sk(params.kappa2, theta))
