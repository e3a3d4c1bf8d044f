"""Hamiltonians and integrals of motion of the superintegrable family.

The potential of the family is a radial function plus three barrier terms
``beta_i / x_i**2`` in the ambient coordinates x_i of the point. Special
radial choices give the curved Smorodinsky-Winternitz oscillator
(``beta0 * T_{k1}(r)**2``) and the Kepler-Coulomb potential
(``-k / T_{k1}(r)``); each has one further quadratic integral.
"""

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

from .errors import PoleError, SingularPotential
from .geometry import distances
from .ktrig import POLE_TOL, ck, sk
from .phasespace import Frame, Observable, frame_observable, generator, kinetic_energy

KINDS = ("family", "sw", "gkc1", "gkc2", "gkc3", "kc")

#: Generic, non-symmetric parameter values used by the verification sweeps.
DEFAULT_BETAS = (0.7, 0.3, 0.45, 0.6)
DEFAULT_K = 1.2


@dataclass(frozen=True)
class PotentialSpec:
    """Choice of radial function and coupling constants.

    ``kind`` is one of :data:`KINDS`. ``family`` needs ``radial`` and
    ``radial_derivative`` (plain functions of r). For ``gkc<i>`` the
    coupling ``beta_i`` is forced to zero and ``beta0`` ignored; ``kc``
    forces every beta to zero; ``sw`` ignores ``k``.
    """

    kind: str
    beta0: float = 0.0
    beta1: float = 0.0
    beta2: float = 0.0
    beta3: float = 0.0
    k: float = 0.0
    radial: Optional[Callable[[float], float]] = None
    radial_derivative: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown potential kind {self.kind!r}; choose from {KINDS}")
        if self.kind == "family" and (self.radial is None or self.radial_derivative is None):
            raise ValueError("the family potential needs a radial function and its derivative")

    @property
    def gkc_index(self):
        return int(self.kind[-1]) if self.kind.startswith("gkc") else None

    @property
    def barriers(self):
        """Effective (beta1, beta2, beta3) after the kind's constraints."""
        b = [self.beta1, self.beta2, self.beta3]
        if self.kind == "kc":
            return (0.0, 0.0, 0.0)
        if self.gkc_index:
            b[self.gkc_index - 1] = 0.0
        return tuple(float(v) for v in b)

    @property
    def oscillator(self):
        return float(self.beta0) if self.kind == "sw" else 0.0

    @property
    def coulomb(self):
        return float(self.k) if self.kind in ("gkc1", "gkc2", "gkc3", "kc") else 0.0

    def radial_value(self, r, params):
        """The radial function F(r) together with dF/dr."""
        k1 = params.kappa1
        if self.kind == "family":
            return self.radial(r), self.radial_derivative(r)
        if self.kind == "sw":
            c = ck(k1, r)
            if abs(c) <= POLE_TOL:
                raise PoleError(f"T_k1(r) has a pole at r={r}")
            t = sk(k1, r) / c
            return self.beta0 * t * t, 2.0 * self.beta0 * t / (c * c)
        s = sk(k1, r)
        if abs(s) <= POLE_TOL:
            raise PoleError(f"1/T_k1(r) has a pole at r={r}")
        return -self.k * ck(k1, r) / s, self.k / (s * s)

    @classmethod
    def family(cls, radial, radial_derivative, beta1=0.0, beta2=0.0, beta3=0.0):
        return cls("family", beta1=beta1, beta2=beta2, beta3=beta3,
                   radial=radial, radial_derivative=radial_derivative)

    @classmethod
    def sw(cls, beta0, beta1, beta2, beta3):
        return cls("sw", beta0, beta1, beta2, beta3)

    @classmethod
    def gkc(cls, i, k, beta1=0.0, beta2=0.0, beta3=0.0):
        return cls(f"gkc{i}", 0.0, beta1, beta2, beta3, k)

    @classmethod
    def kc(cls, k):
        return cls("kc", k=k)


# -- coordinate building blocks --------------------------------------------

def _ambient(f):
    """Ambient coordinates x0..x3 with their (r, theta, phi) gradients."""
    s1, c1, s2, c2, cp, sp = f.s1, f.c1, f.s2, f.c2, f.cp, f.sp
    return (
        (c1, (-f.k1 * s1, 0.0, 0.0)),
        (s1 * c2, (c1 * c2, -f.k2 * s1 * s2, 0.0)),
        (s1 * s2 * cp, (c1 * s2 * cp, s1 * c2 * cp, -s1 * s2 * sp)),
        (s1 * s2 * sp, (c1 * s2 * sp, s1 * c2 * sp, s1 * s2 * cp)),
    )


def _direction(f):
    """Unit directions u_i = x_i / S_{k1}(r) (index 0 unused)."""
    s2, c2, cp, sp = f.s2, f.c2, f.cp, f.sp
    return (
        None,
        (c2, (0.0, -f.k2 * s2, 0.0)),
        (s2 * cp, (0.0, c2 * cp, -s2 * sp)),
        (s2 * sp, (0.0, c2 * sp, s2 * cp)),
    )


def _check_denominator(value, what):
    if abs(value) <= POLE_TOL:
        raise SingularPotential(f"active barrier denominator {what} vanishes")


def _pad(g3):
    return (g3[0], g3[1], g3[2], 0.0, 0.0, 0.0)


def radial_potential(spec, params):
    def impl(f):
        value, deriv = spec.radial_value(f.r, params)
        return value, (deriv, 0.0, 0.0, 0.0, 0.0, 0.0)

    guard = None
    if spec.kind == "sw" and spec.beta0 != 0.0:
        guard = lambda z: abs(ck(params.kappa1, z[0]))  # noqa: E731
    elif spec.coulomb != 0.0:
        guard = lambda z: abs(sk(params.kappa1, z[0]))  # noqa: E731
    return frame_observable("F", params, impl, guard)


def barrier_potential(betas, params):
    """sum_i beta_i / x_i^2 over the nonzero couplings."""
    active = [(i + 1, b) for i, b in enumerate(betas) if b != 0.0]

    def impl(f):
        xs = _ambient(f)
        value = 0.0
        g = [0.0, 0.0, 0.0]
        for i, b in active:
            x, dx = xs[i]
            _check_denominator(x, f"x{i}")
            value += b / (x * x)
            c = -2.0 * b / (x * x * x)
            g[0] += c * dx[0]
            g[1] += c * dx[1]
            g[2] += c * dx[2]
        return value, _pad(g)

    def guard(z):
        xs = _ambient(Frame(z, params))
        return min((abs(xs[i][0]) for i, _ in active), default=math.inf)

    return frame_observable("U_barrier", params, impl, guard if active else None)


def potential(spec, params):
    """Full potential U = F(r) + barriers."""
    u = radial_potential(spec, params) + barrier_potential(spec.barriers, params)
    return u.renamed("U")


def hamiltonian(spec, params):
    return (kinetic_energy(params) + potential(spec, params)).renamed("H")


def family_hamiltonian(spec, params):
    return hamiltonian(spec, params)


def sw_hamiltonian(spec, params):
    if spec.kind != "sw":
        spec = replace(spec, kind="sw")
    return hamiltonian(spec, params)


def gkc_hamiltonian(i, spec, params):
    if spec.kind != f"gkc{i}":
        spec = replace(spec, kind=f"gkc{i}")
    return hamiltonian(spec, params)


# -- quadratic integrals ---------------------------------------------------

def _ratio_sq(params, coeff, a, b, use_direction):
    """``coeff * (w_a / w_b)**2`` with w = u (directions) or x (ambient)."""
    pick = _direction if use_direction else _ambient

    def impl(f):
        w = pick(f)
        (na, da), (nb, db) = w[a], w[b]
        _check_denominator(nb, f"x{b}")
        ratio = na / nb
        value = coeff * ratio * ratio
        c = 2.0 * coeff * ratio / nb
        return value, _pad([c * (da[m] - ratio * db[m]) for m in range(3)])

    def guard(z):
        return abs(pick(Frame(z, params))[b][0])

    return frame_observable(f"({a}/{b})^2", params, impl, guard)


def _with_terms(base, terms, name):
    out = base
    for coeff, a, b, use_direction in terms:
        if coeff != 0.0:
            out = out + _ratio_sq(out.params, coeff, a, b, use_direction)
    return out.renamed(name)


def integrals_rotation(spec, params):
    """The integrals (I12, I13, I23) attached to the rotation generators."""
    b1, b2, b3 = spec.barriers
    k2 = params.kappa2
    j12, j13, j23 = (generator(idx, params) for idx in ((1, 2), (1, 3), (2, 3)))
    i12 = _with_terms(j12 ** 2, [(2 * b1 * k2 * k2, 2, 1, True), (2 * b2 * k2, 1, 2, True)], "I12")
    i13 = _with_terms(j13 ** 2, [(2 * b1 * k2 * k2, 3, 1, True), (2 * b3 * k2, 1, 3, True)], "I13")
    i23 = _with_terms(j23 ** 2, [(2 * b2 * k2, 3, 2, True), (2 * b3 * k2, 2, 3, True)], "I23")
    return i12, i13, i23


def integral_i123(spec, params):
    """I123 = p_theta^2 + p_phi^2/S2^2 + 2 k2 (b1/C2^2 + b2/(S2 cos phi)^2 + b3/(S2 sin phi)^2)."""
    b1, b2, b3 = spec.barriers
    k2 = params.kappa2

    def impl(f):
        s2, c2, cp, sp = f.s2, f.c2, f.cp, f.sp
        if abs(s2) <= POLE_TOL:
            raise PoleError(f"1/S_k2(theta) has a pole at theta={f.theta}")
        inv_s2 = 1.0 / (s2 * s2)
        value = f.pt * f.pt + f.pp * f.pp * inv_s2
        d_theta = -2.0 * f.pp * f.pp * c2 * inv_s2 / s2
        d_phi = 0.0
        if b1 != 0.0:
            _check_denominator(c2, "x1")
            value += 2 * b1 * k2 / (c2 * c2)
            d_theta += 4 * b1 * k2 * k2 * s2 / c2 ** 3
        if b2 != 0.0:
            _check_denominator(s2 * cp, "x2")
            value += 2 * b2 * k2 * inv_s2 / (cp * cp)
            d_theta += -4 * b2 * k2 * c2 / (s2 ** 3 * cp * cp)
            d_phi += 4 * b2 * k2 * inv_s2 * sp / cp ** 3
        if b3 != 0.0:
            _check_denominator(s2 * sp, "x3")
            value += 2 * b3 * k2 * inv_s2 / (sp * sp)
            d_theta += -4 * b3 * k2 * c2 / (s2 ** 3 * sp * sp)
            d_phi += -4 * b3 * k2 * inv_s2 * cp / sp ** 3
        return value, (0.0, d_theta, d_phi, 0.0, 2 * f.pt, 2 * f.pp * inv_s2)

    def guard(z):
        u = _direction(Frame(z, params))
        vals = [abs(u[i][0]) for i, b in zip((1, 2, 3), (b1, b2, b3)) if b != 0.0]
        return min(vals + [abs(sk(params.kappa2, z[1]))])

    return frame_observable("I123", params, impl, guard)


def integral_i123_combination(spec, params):
    """I12 + I13 + k2 I23 + 2 k2 (b1 + k2 b2 + k2 b3), the defining combination."""
    b1, b2, b3 = spec.barriers
    k2 = params.kappa2
    i12, i13, i23 = integrals_rotation(spec, params)
    return (i12 + i13 + k2 * i23 + 2 * k2 * (b1 + k2 * b2 + k2 * b3)).renamed("I123_comb")


def separation_values(spec, params, z):
    """Separated chain (I23(phi), I123(theta; I23), H(r; I123)) at one point."""
    b1, b2, b3 = spec.barriers
    k2 = params.kappa2
    f = Frame(z, params)
    terms = f.pp * f.pp
    if b2 != 0.0:
        _check_denominator(f.cp, "x2")
        terms += 2 * b2 * k2 * (f.sp / f.cp) ** 2
    if b3 != 0.0:
        _check_denominator(f.sp, "x3")
        terms += 2 * b3 * k2 * (f.cp / f.sp) ** 2
    i23 = terms
    if abs(f.s2) <= POLE_TOL:
        raise PoleError(f"1/S_k2(theta) has a pole at theta={f.theta}")
    i123 = f.pt * f.pt + (i23 + 2 * k2 * (b2 + b3)) / (f.s2 * f.s2)
    if b1 != 0.0:
        _check_denominator(f.c2, "x1")
        i123 += 2 * b1 * k2 / (f.c2 * f.c2)
    if abs(f.s1) <= POLE_TOL:
        raise PoleError(f"1/S_k1(r) has a pole at r={f.r}")
    radial, _ = spec.radial_value(f.r, params)
    h = 0.5 * f.pr * f.pr + radial + i123 / (2 * k2 * f.s1 * f.s1)
    return i23, i123, h


def integrals_sw(spec, params):
    """The translation integrals (I01, I02, I03) of the oscillator potential."""
    b0 = spec.beta0
    b1, b2, b3 = spec.barriers
    k2 = params.kappa2
    j01, j02, j03 = (generator(idx, params) for idx in ((0, 1), (0, 2), (0, 3)))
    i01 = _with_terms(j01 ** 2, [(2 * b0, 1, 0, False), (2 * b1, 0, 1, False)], "I01")
    i02 = _with_terms(j02 ** 2, [(2 * b0 * k2 * k2, 2, 0, False), (2 * b2 * k2, 0, 2, False)], "I02")
    i03 = _with_terms(j03 ** 2, [(2 * b0 * k2 * k2, 3, 0, False), (2 * b3 * k2, 0, 3, False)], "I03")
    return i01, i02, i03


def _lrl_barrier(params, i, l):
    """(1/T_{k1}(r)) * u_i / u_l^2."""
    def impl(f):
        a = f.cot1()
        u = _direction(f)
        (ui, dui), (ul, dul) = u[i], u[l]
        _check_denominator(ul, f"x{l}")
        q = ui / (ul * ul)
        return a * q, (-q / (f.s1 * f.s1),
                       a * (dui[1] / (ul * ul) - 2 * ui * dul[1] / ul ** 3),
                       a * (dui[2] / (ul * ul) - 2 * ui * dul[2] / ul ** 3),
                       0.0, 0.0, 0.0)

    def guard(z):
        f = Frame(z, params)
        return min(abs(f.s1), abs(_direction(f)[l][0]))

    return frame_observable(f"u{i}/(T u{l}^2)", params, impl, guard)


def _direction_obs(params, i):
    def impl(f):
        u, du = _direction(f)[i]
        return u, _pad(du)
    return frame_observable(f"u{i}", params, impl)


def _rotation_generator(params, l, i):
    """J_{li} with the convention J_{li} = -J_{il} for l > i."""
    if l < i:
        return generator((l, i), params)
    return -1.0 * generator((i, l), params)


def integral_L(i, spec, params):
    """Extra Kepler-Coulomb integral L_i built from generator products.

    L_i = sum_{l != i} J_{0l} J_{li} + k k2 u_i - 2 k2 / T_{k1}(r) sum_{l != i} beta_l u_i / u_l^2
    with u the unit direction of the point.
    """
    if i not in (1, 2, 3):
        raise ValueError("L_i needs i in {1, 2, 3}")
    k2 = params.kappa2
    betas = spec.barriers
    out = None
    for l in (1, 2, 3):
        if l == i:
            continue
        term = generator((0, l), params) * _rotation_generator(params, l, i)
        out = term if out is None else out + term
    if spec.coulomb != 0.0:
        out = out + (spec.coulomb * k2) * _direction_obs(params, i)
    for l in (1, 2, 3):
        if l != i and betas[l - 1] != 0.0:
            out = out + (-2.0 * k2 * betas[l - 1]) * _lrl_barrier(params, i, l)
    return out.renamed(f"L{i}")


def lrl_vector(spec, params):
    """Laplace-Runge-Lenz components (L1, L2, L3) of the pure Kepler-Coulomb system."""
    if any(spec.barriers) and spec.kind != "kc":
        raise ValueError("the Laplace-Runge-Lenz vector needs all beta_i = 0")
    kc = PotentialSpec.kc(spec.k)
    return tuple(integral_L(i, kc, params) for i in (1, 2, 3))


def integrals(spec, params):
    """Every integral of motion known for ``spec``, keyed by name (H first)."""
    out = {"H": hamiltonian(spec, params)}
    i12, i13, i23 = integrals_rotation(spec, params)
    out.update(I12=i12, I13=i13, I23=i23, I123=integral_i123(spec, params))
    if spec.kind == "sw":
        out.update(zip(("I01", "I02", "I03"), integrals_sw(spec, params)))
    elif spec.kind == "kc":
        out.update(zip(("L1", "L2", "L3"), lrl_vector(spec, params)))
    elif spec.gkc_index:
        i = spec.gkc_index
        for j in (1, 2, 3):
            if j == i or spec.barriers[j - 1] == 0.0:
                out[f"L{j}"] = integral_L(j, spec, params)
    return out


# -- alternative expressions of the potential ------------------------------

def _labels(params):
    return (params.kappa1, params.kappa12, params.kappa12)


def potential_distance_form(spec, params, q):
    """F(r) + b1/S_{k1}(x)^2 + b2/S_{k1k2}(y)^2 + b3/S_{k1k2}(z)^2."""
    value, _ = spec.radial_value(q[0], params)
    dist = distances(q, params)
    for b, kappa, d in zip(spec.barriers, _labels(params), dist):
        if b != 0.0:
            s = sk(kappa, d)
            _check_denominator(s, "S(distance)")
            value += b / (s * s)
    return value


def center_distances(q, params):
    """Distances r_i from the point to the centres O_i a quadrant away on each axis.

    Defined only for axes whose curvature label is positive; ``None`` elsewhere.
    """
    out = []
    for kappa, d in zip(_labels(params), distances(q, params)):
        out.append(math.pi / (2.0 * math.sqrt(kappa)) - d if kappa > 0.0 else None)
    return tuple(out)


def potential_center_form(spec, params, q):
    """Potential with each compact-axis barrier rewritten as an oscillator.

    On an axis with positive label kappa, b / S_kappa(d)^2 equals
    kappa b T_kappa(r_i)^2 + kappa b with r_i the distance to the centre O_i.
    Other axes keep the barrier form.
    """
    value, _ = spec.radial_value(q[0], params)
    dist = distances(q, params)
    centres = center_distances(q, params)
    for b, kappa, d, ri in zip(spec.barriers, _labels(params), dist, centres):
        if b == 0.0:
            continue
        if ri is None:
            s = sk(kappa, d)
            _check_denominator(s, "S(distance)")
            value += b / (s * s)
        else:
            c = ck(kappa, ri)
            _check_denominator(c, "C(r_i)")
            t = sk(kappa, ri) / c
            value += kappa * b * t * t + kappa * b
    return value
