"""Canonical phase space in geodesic polar coordinates.

A phase-space point is any length-6 sequence ``(r, theta, phi, p_r,
p_theta, p_phi)``. Scalar functions on phase space are :class:`Observable`
objects carrying an analytic gradient; the Poisson bracket is computed from
those gradients, never from finite differences.
"""

import math
from typing import NamedTuple

import numpy as np

from .errors import DegenerateMetric, PoleError
from .ktrig import POLE_TOL, ck, sk
from .liealg import GENERATOR_NAMES, GENERATORS, generator_index


class PhasePoint(NamedTuple):
    r: float
    theta: float
    phi: float
    p_r: float
    p_theta: float
    p_phi: float

    @property
    def q(self):
        return (self.r, self.theta, self.phi)

    @property
    def p(self):
        return (self.p_r, self.p_theta, self.p_phi)


class AmbientMomenta(NamedTuple):
    p0: float
    p1: float
    p2: float
    p3: float


_INF = math.inf


def _no_guard(z):
    return _INF


class Observable:
    """Named phase-space function with analytic gradient.

    ``value(z)`` returns a float, ``grad(z)`` the 6 partial derivatives in
    the order (r, theta, phi, p_r, p_theta, p_phi). ``guard(z)`` returns the
    smallest active denominator magnitude (``inf`` if there is none); the
    integrator uses it to stop before a singular locus.

    Sums, differences, products and integer powers of observables are
    observables again, with sum/product-rule gradients.
    """

    __slots__ = ("name", "params", "_value", "_grad", "_guard")

    def __init__(self, name, params, value, grad, guard=None):
        self.name = name
        self.params = params
        self._value = value
        self._grad = grad
        self._guard = guard or _no_guard

    def __repr__(self):
        return f"Observable({self.name!r}, kappa1={self.params.kappa1}, kappa2={self.params.kappa2})"

    def __call__(self, z):
        return self._value(z)

    def value(self, z):
        return self._value(z)

    def grad(self, z):
        return np.asarray(self._grad(z), dtype=float)

    def guard(self, z):
        return self._guard(z)

    def renamed(self, name):
        return Observable(name, self.params, self._value, self._grad, self._guard)

    # -- algebra -----------------------------------------------------------

    def _check(self, other):
        if other.params != self.params:
            raise ValueError(f"cannot combine observables on {self.params} and {other.params}")

    def _joint_guard(self, other):
        a, b = self._guard, other._guard
        if b is _no_guard:
            return a
        if a is _no_guard:
            return b
        return lambda z: min(a(z), b(z))

    def __add__(self, other):
        if isinstance(other, Observable):
            self._check(other)
            f, g = self, other
            return Observable(
                f"({f.name} + {g.name})", f.params,
                lambda z: f._value(z) + g._value(z),
                lambda z: f.grad(z) + g.grad(z),
                f._joint_guard(g),
            )
        c = float(other)
        f = self
        return Observable(f"({f.name} + {c:g})", f.params,
                          lambda z: f._value(z) + c, f._grad, f._guard)

    __radd__ = __add__

    def __neg__(self):
        return -1.0 * self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Observable):
            self._check(other)
            f, g = self, other

            def grad(z):
                return f.grad(z) * g._value(z) + f._value(z) * g.grad(z)

            return Observable(f"{f.name}*{g.name}", f.params,
                              lambda z: f._value(z) * g._value(z), grad, f._joint_guard(g))
        c = float(other)
        f = self
        return Observable(f"{c:g}*{f.name}", f.params,
                          lambda z: c * f._value(z), lambda z: c * f.grad(z), f._guard)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 1:
            raise ValueError("only positive integer powers are supported")
        f = self
        return Observable(f"{f.name}^{n}", f.params,
                          lambda z: f._value(z) ** n,
                          lambda z: n * f._value(z) ** (n - 1) * f.grad(z),
                          f._guard)


def constant(c, params, name=None):
    c = float(c)
    zero = np.zeros(6)
    return Observable(name or f"{c:g}", params, lambda z: c, lambda z: zero)


def poisson_bracket(f, g, z):
    """Canonical bracket sum_i (df/dq_i dg/dp_i - dg/dq_i df/dp_i)."""
    a = f.grad(z)
    b = g.grad(z)
    return float(a[0] * b[3] + a[1] * b[4] + a[2] * b[5]
                 - b[0] * a[3] - b[1] * a[4] - b[2] * a[5])


def fd_gradient(obs, z, h=1e-6):
    """Central-difference gradient, used only to audit analytic gradients."""
    z = np.asarray(z, dtype=float)
    out = np.empty(6)
    for i in range(6):
        zp = z.copy()
        zm = z.copy()
        zp[i] += h
        zm[i] -= h
        out[i] = (obs.value(zp) - obs.value(zm)) / (2.0 * h)
    return out


# -- point-wise trigonometric frame ----------------------------------------

class Frame:
    """kappa-trig factors of one phase-space point, computed once."""

    __slots__ = ("r", "theta", "phi", "pr", "pt", "pp", "k1", "k2",
                 "s1", "c1", "s2", "c2", "cp", "sp")

    def __init__(self, z, params):
        self.r, self.theta, self.phi, self.pr, self.pt, self.pp = (float(v) for v in z)
        self.k1 = k1 = params.kappa1
        self.k2 = k2 = params.kappa2
        self.s1 = sk(k1, self.r)
        self.c1 = ck(k1, self.r)
        self.s2 = sk(k2, self.theta)
        self.c2 = ck(k2, self.theta)
        self.cp = math.cos(self.phi)
        self.sp = math.sin(self.phi)

    def cot1(self):
        """1/T_{k1}(r) = C1/S1."""
        if abs(self.s1) <= POLE_TOL:
            raise PoleError(f"1/T_k1(r) has a pole at r={self.r}")
        return self.c1 / self.s1

    def cot2(self):
        if abs(self.s2) <= POLE_TOL:
            raise PoleError(f"1/T_k2(theta) has a pole at theta={self.theta}")
        return self.c2 / self.s2

    def inv_s2(self):
        if abs(self.s2) <= POLE_TOL:
            raise PoleError(f"1/S_k2(theta) has a pole at theta={self.theta}")
        return 1.0 / self.s2


# -- generator realisation -------------------------------------------------

def _j01(f):
    a = f.cot1()
    return (f.c2 * f.pr - f.s2 * a * f.pt,
            (f.s2 * f.pt / (f.s1 * f.s1),
             -f.k2 * f.s2 * f.pr - f.c2 * a * f.pt,
             0.0,
             f.c2, -f.s2 * a, 0.0))


def _j02(f):
    a, u = f.cot1(), f.inv_s2()
    k2, cp, sp = f.k2, f.cp, f.sp
    ang = f.c2 * cp * f.pt - sp * u * f.pp
    val = k2 * f.s2 * cp * f.pr + a * ang
    return (val,
            (-ang / (f.s1 * f.s1),
             k2 * f.c2 * cp * f.pr + a * (-k2 * f.s2 * cp * f.pt + sp * f.pp * f.c2 * u * u),
             -k2 * f.s2 * sp * f.pr + a * (-f.c2 * sp * f.pt - cp * u * f.pp),
             k2 * f.s2 * cp, a * f.c2 * cp, -a * sp * u))


def _j03(f):
    a, u = f.cot1(), f.inv_s2()
    k2, cp, sp = f.k2, f.cp, f.sp
    ang = f.c2 * sp * f.pt + cp * u * f.pp
    val = k2 * f.s2 * sp * f.pr + a * ang
    return (val,
            (-ang / (f.s1 * f.s1),
             k2 * f.c2 * sp * f.pr + a * (-k2 * f.s2 * sp * f.pt - cp * f.pp * f.c2 * u * u),
             k2 * f.s2 * cp * f.pr + a * (f.c2 * cp * f.pt - sp * u * f.pp),
             k2 * f.s2 * sp, a * f.c2 * sp, a * cp * u))


def _j12(f):
    b = f.cot2()
    u = 1.0 / f.s2
    cp, sp = f.cp, f.sp
    return (cp * f.pt - sp * b * f.pp,
            (0.0, sp * f.pp * u * u, -sp * f.pt - cp * b * f.pp,
             0.0, cp, -sp * b))


def _j13(f):
    b = f.cot2()
    u = 1.0 / f.s2
    cp, sp = f.cp, f.sp
    return (sp * f.pt + cp * b * f.pp,
            (0.0, -cp * f.pp * u * u, cp * f.pt - sp * b * f.pp,
             0.0, sp, cp * b))


def _j23(f):
    return f.pp, (0.0, 0.0, 0.0, 0.0, 0.0, 1.0)


_GENERATOR_IMPL = {
    (0, 1): _j01, (0, 2): _j02, (0, 3): _j03,
    (1, 2): _j12, (1, 3): _j13, (2, 3): _j23,
}


def _guard_s1s2(params):
    def guard(z):
        return min(abs(sk(params.kappa1, z[0])), abs(sk(params.kappa2, z[1])))
    return guard


def _guard_s2(params):
    return lambda z: abs(sk(params.kappa2, z[1]))


def frame_observable(name, params, impl, guard=None):
    """Wrap ``impl(frame) -> (value, gradient)`` as an :class:`Observable`."""
    def value(z):
        return impl(Frame(z, params))[0]

    def grad(z):
        return impl(Frame(z, params))[1]

    return Observable(name, params, value, grad, guard)


def generator(idx, params):
    """Phase-space realisation of ``J_{mu nu}`` in geodesic polar variables."""
    idx = generator_index(idx)
    name = GENERATOR_NAMES[GENERATORS.index(idx)]
    if idx[0] == 0:
        guard = _guard_s1s2(params)
    elif idx == (2, 3):
        guard = None
    else:
        guard = _guard_s2(params)
    return frame_observable(name, params, _GENERATOR_IMPL[idx], guard)


def generators(params):
    """All six generators in the order J01, J02, J03, J12, J13, J23."""
    return tuple(generator(idx, params) for idx in GENERATORS)


def _kinetic(f):
    if abs(f.s1) <= POLE_TOL or abs(f.s2) <= POLE_TOL:
        raise DegenerateMetric(f"kinetic energy singular at r={f.r}, theta={f.theta}")
    k2 = f.k2
    g1 = k2 * f.s1 * f.s1
    g2 = g1 * f.s2 * f.s2
    ang = f.pt * f.pt + f.pp * f.pp / (f.s2 * f.s2)
    val = 0.5 * (f.pr * f.pr + f.pt * f.pt / g1 + f.pp * f.pp / g2)
    return (val,
            (-f.c1 * ang / (k2 * f.s1 ** 3),
             -f.pp * f.pp * f.c2 / (g1 * f.s2 ** 3),
             0.0,
             f.pr, f.pt / g1, f.pp / g2))


def kinetic_energy(params):
    """Free Hamiltonian T = (p_r^2 + p_theta^2/g_theta + p_phi^2/g_phi)/2."""
    return frame_observable("T", params, _kinetic, _guard_s1s2(params))


def lagrangian(q, qdot, params):
    """Kinetic Lagrangian of geodesic motion at position ``q`` and velocity ``qdot``."""
    r, theta, _ = q
    rd, td, fd = qdot
    s1 = sk(params.kappa1, r)
    s2 = sk(params.kappa2, theta)
    return 0.5 * (rd * rd + params.kappa2 * s1 * s1 * (td * td + s2 * s2 * fd * fd))


def momenta_from_velocities(q, qdot, params):
    r, theta, _ = q
    rd, td, fd = qdot
    g1 = params.kappa2 * sk(params.kappa1, r) ** 2
    return (rd, g1 * td, g1 * sk(params.kappa2, theta) ** 2 * fd)


def velocities_from_momenta(q, p, params):
    r, theta, _ = q
    pr, pt, pp = p
    g1 = params.kappa2 * sk(params.kappa1, r) ** 2
    if abs(g1) <= POLE_TOL:
        raise DegenerateMetric(f"polar chart singular at r={r}")
    g2 = g1 * sk(params.kappa2, theta) ** 2
    if abs(g2) <= POLE_TOL:
        raise DegenerateMetric(f"polar chart singular at theta={theta}")
    return (pr, pt / g1, pp / g2)


def ambient_momenta(z, params):
    """Ambient momenta (p0, p1, p2, p3) of a polar phase-space point."""
    f = Frame(z, params)
    if abs(f.s1 * f.s2) <= POLE_TOL:
        raise PoleError("ambient momenta undefined where S_k1(r) S_k2(theta) = 0")
    k2, s1, c1, s2, c2, cp, sp = f.k2, f.s1, f.c1, f.s2, f.c2, f.cp, f.sp
    pr, pt, pp = f.pr, f.pt, f.pp
    return AmbientMomenta(
        -s1 * pr,
        c1 * c2 * pr - s2 / s1 * pt,
        k2 * c1 * s2 * cp * pr + c2 * cp / s1 * pt - sp / (s1 * s2) * pp,
        k2 * c1 * s2 * sp * pr + c2 * sp / s1 * pt + cp / (s1 * s2) * pp,
    )


def ambient_generators(x, p, params):
    """Generator values from ambient coordinates and momenta (vector-field route)."""
    x0, x1, x2, x3 = x
    p0, p1, p2, p3 = p
    k1, k2 = params.kappa1, params.kappa2
    return np.array([
        x0 * p1 - k1 * x1 * p0,
        x0 * p2 - k1 * k2 * x2 * p0,
        x0 * p3 - k1 * k2 * x3 * p0,
        x1 * p2 - k2 * x2 * p1,
        x1 * p3 - k2 * x3 * p1,
        x2 * p3 - x3 * p2,
    ])


# -- deterministic sampling ------------------------------------------------

#: Safe sampling box (r, theta, phi ranges and |p| bound) shared by all six spaces.
SAMPLE_BOX = {"r": (0.2, 1.4), "theta": (0.2, 1.3), "phi": (0.2, 1.3), "p": 2.0}


def sample_point(seed, index):
    """The ``index``-th point of the stream for ``seed``; independent of other indices."""
    rng = np.random.default_rng([int(seed), int(index)])
    lo_hi = SAMPLE_BOX
    pmax = lo_hi["p"]
    return PhasePoint(
        rng.uniform(*lo_hi["r"]),
        rng.uniform(*lo_hi["theta"]),
        rng.uniform(*lo_hi["phi"]),
        rng.uniform(-pmax, pmax),
        rng.uniform(-pmax, pmax),
        rng.uniform(-pmax, pmax),
    )


def sample_points(n, seed=0):
    """``n`` seeded phase-space points as an (n, 6) array."""
    return np.array([sample_point(seed, i) for i in range(n)])
