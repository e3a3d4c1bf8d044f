"""Numerical checks of the algebraic and dynamical claims.

Every check samples seeded phase-space points, evaluates residuals with the
analytic gradients of :mod:`ckmech.phasespace`, and reduces them by max into
a :class:`CheckRecord`. Points where an observable hits a pole or an active
barrier are skipped and counted; a check with more than half of its points
skipped fails.
"""

import itertools
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import observables as obs
from .errors import EVALUATION_ERRORS
from .geometry import christoffel, christoffel_fd, riemann_fd, riemann_ricci
from .liealg import (GENERATORS, SPACES, CKParams, casimir_c1, casimir_c2,
                     commutator, generator_matrix, structure_constants)
from .phasespace import (fd_gradient, generators, kinetic_energy, poisson_bracket,
                         sample_point)


@dataclass(frozen=True)
class CheckSpec:
    """Where and how strictly to check: space, potential, sampling, tolerances."""

    space: CKParams
    potential: obs.PotentialSpec = None
    points: int = 200
    seed: int = 0
    tol_bracket: float = 1e-8
    tol_rank: float = 1e-9
    tol_identity: float = 1e-10
    tol_gradient: float = 1e-7

    def __post_init__(self):
        if self.points < 1:
            raise ValueError("points must be >= 1")
        for name in ("tol_bracket", "tol_rank", "tol_identity", "tol_gradient"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive")

    def sample(self):
        for i in range(self.points):
            yield np.asarray(sample_point(self.seed, i))


@dataclass
class CheckRecord:
    """Outcome of one check.

    ``mode`` says how ``value`` is compared with ``threshold``: ``"max"``
    (residual must not exceed it), ``"min"`` (witness must exceed it),
    ``"equal"`` (rank must equal it) or ``"at_most"`` (rank bound).
    """

    name: str
    value: float
    threshold: float
    mode: str = "max"
    points_used: int = 0
    skipped: int = 0
    passed: bool = field(init=False)

    def __post_init__(self):
        v, t = self.value, self.threshold
        ok = {
            "max": lambda: v <= t,
            "min": lambda: v > t,
            "equal": lambda: v == t,
            "at_most": lambda: v <= t,
        }[self.mode]()
        total = self.points_used + self.skipped
        enough = self.points_used > 0 and (total == 0 or self.skipped <= 0.5 * total)
        self.passed = bool(ok and enough and math.isfinite(v))

    def to_dict(self):
        return asdict(self)


@dataclass
class VerificationReport:
    records: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.records)

    @property
    def failures(self):
        return [r for r in self.records if not r.passed]

    def add(self, other):
        if isinstance(other, CheckRecord):
            self.records.append(other)
        else:
            self.records.extend(other.records)
        return self

    def __getitem__(self, name):
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self):
        return {"passed": self.passed, "checks": [r.to_dict() for r in self.records]}


def _sweep(spec, residual):
    """Max of ``residual(z)`` over the sampled points, skipping singular ones."""
    worst, used, skipped = 0.0, 0, 0
    for z in spec.sample():
        try:
            value = residual(z)
        except EVALUATION_ERRORS:
            skipped += 1
            continue
        worst = max(worst, value)
        used += 1
    return worst, used, skipped


def _names(observables):
    return "{" + ", ".join(o.name for o in observables) + "}"


# -- core operations -------------------------------------------------------

def involution_sweep(observables, spec, name=None):
    """Max |{f, g}| over all pairs of ``observables`` and sampled points."""
    pairs = list(itertools.combinations(observables, 2))

    def residual(z):
        return max((abs(poisson_bracket(f, g, z)) for f, g in pairs), default=0.0)

    worst, used, skipped = _sweep(spec, residual)
    return CheckRecord(name or f"involution {_names(observables)}", worst,
                       spec.tol_bracket, "max", used, skipped)


def non_involution_witness(f, g, spec, threshold=1e-4, name=None):
    """Passes when |{f, g}| exceeds ``threshold`` somewhere: the pair does not commute."""
    worst, used, skipped = _sweep(spec, lambda z: abs(poisson_bracket(f, g, z)))
    return CheckRecord(name or f"non-involution {{{f.name}, {g.name}}}", worst,
                       threshold, "min", used, skipped)


def rank_at(observables, z, tol_rank):
    jac = np.array([o.grad(z) for o in observables])
    sv = np.linalg.svd(jac, compute_uv=False)
    if sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol_rank * sv[0]))


def _rank_sweep(observables, spec):
    ranks, skipped = [], 0
    for z in spec.sample():
        try:
            ranks.append(rank_at(observables, z, spec.tol_rank))
        except EVALUATION_ERRORS:
            skipped += 1
    return ranks, skipped


def independence_rank(observables, spec):
    """Numerical rank of the gradient matrix, maximised over sampled points."""
    ranks, _ = _rank_sweep(observables, spec)
    return max(ranks, default=0)


def rank_check(observables, spec, expected, name=None):
    ranks, skipped = _rank_sweep(observables, spec)
    return CheckRecord(name or f"rank {_names(observables)}", max(ranks, default=0),
                       expected, "equal", len(ranks), skipped)


def rank_bound_check(observables, spec, bound, name=None):
    """Rank must not exceed ``bound`` at any sampled point."""
    ranks, skipped = _rank_sweep(observables, spec)
    return CheckRecord(name or f"rank bound {_names(observables)}", max(ranks, default=0),
                       bound, "at_most", len(ranks), skipped)


def gradient_deviation(observable, z, h=1e-6):
    """Max |analytic - central difference| scaled by max(1, |grad|_inf)."""
    g = observable.grad(z)
    return float(np.max(np.abs(g - fd_gradient(observable, z, h))) / max(1.0, np.max(np.abs(g))))


def gradient_audit(observable, spec):
    worst, used, skipped = _sweep(spec, lambda z: gradient_deviation(observable, z))
    return CheckRecord(f"gradient {observable.name}", worst, spec.tol_gradient, "max",
                       used, skipped)


def identity_check(name, residual, spec):
    """Max residual of an identity; points outside its domain (poles, branch cuts) are skipped."""
    worst, used, skipped = _sweep(spec, residual)
    return CheckRecord(name, worst, spec.tol_identity, "max", used, skipped)


# -- suites ----------------------------------------------------------------

def structure_constant_check(params, tol=1e-14):
    """Matrix commutators of the 4x4 generators against the bracket table."""
    table = structure_constants(params)
    mats = {idx: generator_matrix(idx, params) for idx in GENERATORS}
    worst = 0.0
    for a in GENERATORS:
        for b in GENERATORS:
            expected = sum(c * mats[idx] for c, idx in zip(table[a, b], GENERATORS))
            worst = max(worst, float(np.max(np.abs(commutator(mats[a], mats[b]) - expected))))
    return CheckRecord("structure constants (matrix commutators)", worst, tol, "max", 1, 0)


def generator_bracket_check(spec):
    """Poisson brackets of the realised generators reproduce the algebra; {T, J} = 0."""
    params = spec.space
    gens = generators(params)
    t = kinetic_energy(params)
    table = structure_constants(params)
    pairs = list(itertools.combinations(range(6), 2))

    def algebra(z):
        values = np.array([g(z) for g in gens])
        return max(abs(poisson_bracket(gens[a], gens[b], z)
                       - float(table[GENERATORS[a], GENERATORS[b]] @ values))
                   for a, b in pairs)

    def free(z):
        return max(abs(poisson_bracket(t, g, z)) for g in gens)

    w1, u1, s1 = _sweep(spec, algebra)
    w2, u2, s2 = _sweep(spec, free)
    return VerificationReport([
        CheckRecord("generator Poisson brackets", w1, spec.tol_bracket, "max", u1, s1),
        CheckRecord("{T, J} = 0", w2, spec.tol_bracket, "max", u2, s2),
    ])


def casimir_check(spec):
    params = spec.space
    gens = generators(params)
    t = kinetic_energy(params)

    def c1(z):
        return abs(2 * params.kappa2 * t(z) - casimir_c1([g(z) for g in gens], params))

    def c2(z):
        return abs(casimir_c2([g(z) for g in gens], params))

    return VerificationReport([identity_check("2 k2 T - C1 = 0", c1, spec),
                               identity_check("C2 = 0", c2, spec)])


def curvature_check(spec, tol=1e-6):
    """Sectional curvatures equal k1, scalar 6 k1; FD route agrees with closed form."""
    params = spec.space
    k1 = params.kappa1

    def exact(z):
        cur = riemann_ricci(z[:3], params)
        return max([abs(cur.scalar - 6 * k1)] + [abs(v - k1) for v in cur.sectional.values()])

    def routes(z):
        q = z[:3]
        a, b = riemann_ricci(q, params), riemann_fd(q, params)
        return max(float(np.max(np.abs(christoffel(q, params) - christoffel_fd(q, params)))),
                   float(np.max(np.abs(a.riemann - b.riemann))),
                   abs(a.scalar - b.scalar),
                   max(abs(a.sectional[key] - b.sectional[key]) for key in a.sectional))

    w1, u1, s1 = _sweep(spec, exact)
    w2, u2, s2 = _sweep(spec, routes)
    return VerificationReport([
        CheckRecord("sectional = k1, K = 6 k1", w1, spec.tol_identity, "max", u1, s1),
        CheckRecord("curvature analytic vs FD", w2, tol, "max", u2, s2),
    ])


def identity_suite(spec):
    """Algebraic identities of the potential in ``spec`` (plus the Casimir relations)."""
    params = spec.space
    pot = spec.potential
    report = casimir_check(spec)
    i123 = obs.integral_i123(pot, params)
    comb = obs.integral_i123_combination(pot, params)
    h = obs.hamiltonian(pot, params)
    ints = obs.integrals(pot, params)
    report.add(identity_check("I123 = I12 + I13 + k2 I23 + const",
                              lambda z: abs(i123(z) - comb(z)), spec))

    def chain(z):
        i23v, i123v, hv = obs.separation_values(pot, params, z)
        return max(abs(i23v - ints["I23"](z)), abs(i123v - i123(z)), abs(hv - h(z)))

    report.add(identity_check("separated chain reproduces I23, I123, H", chain, spec))

    if pot.kind == "sw":
        k1, k2 = params.kappa1, params.kappa2

        def constraint(z):
            return abs(2 * k2 * h(z) - (k2 * ints["I01"](z) + ints["I02"](z)
                                        + ints["I03"](z) + k1 * ints["I123"](z)))

        report.add(identity_check("2 k2 H = k2 I01 + I02 + I03 + k1 I123", constraint, spec))

    u = obs.potential(pot, params)

    def at_rest(z):
        return [z[0], z[1], z[2], 0.0, 0.0, 0.0]

    report.add(identity_check(
        "potential: polar form = distance form",
        lambda z: abs(u(at_rest(z)) - obs.potential_distance_form(pot, params, z[:3])), spec))
    report.add(identity_check(
        "potential: barrier form = centred-oscillator form",
        lambda z: abs(u(at_rest(z)) - obs.potential_center_form(pot, params, z[:3])), spec))
    return report


def _five_sets(pot, ints):
    """(name, set) pairs whose rank should be 5 for ``pot``."""
    base = [ints["I12"], ints["I23"], ints["I123"], ints["H"]]
    if pot.kind == "sw":
        return [("I01", [ints["I01"]] + base)]
    return [(n, base + [ints[n]]) for n in ("L1", "L2", "L3") if n in ints]


def potential_suite(spec):
    """Involution, independence and gradient checks for one (space, potential) cell."""
    params = spec.space
    pot = spec.potential
    ints = obs.integrals(pot, params)
    h = ints["H"]
    report = VerificationReport()
    report.add(involution_sweep([ints["I12"], ints["I123"], h], spec))
    report.add(involution_sweep([ints["I23"], ints["I123"], h], spec))
    report.add(involution_sweep([ints["I13"], ints["I123"], h], spec))
    report.add(rank_check([ints["I12"], ints["I23"], ints["I123"], h], spec, 4))
    if any(pot.barriers):
        report.add(non_involution_witness(ints["I12"], ints["I23"], spec))

    extra = [n for n in ints if n[0] == "L" or n in ("I01", "I02", "I03")]
    for n in extra:
        report.add(involution_sweep([ints[n], h], spec))
    if pot.kind == "sw":
        for a, b in (("I01", "I23"), ("I02", "I13"), ("I03", "I12")):
            report.add(involution_sweep([ints[a], ints[b]], spec))
        seven = [ints[n] for n in ("I01", "I02", "I03", "I12", "I23", "I123", "H")]
        report.add(rank_bound_check(seven, spec, 5))
    for label, five in _five_sets(pot, ints):
        report.add(rank_check(five, spec, 5, name=f"rank {_names(five)}"))

    for o in ints.values():
        report.add(gradient_audit(o, spec))
    return report


def full_suite(spec, include_space_checks=True):
    """Everything checkable for one (space, potential) cell."""
    report = VerificationReport()
    if include_space_checks:
        report.add(structure_constant_check(spec.space))
        report.add(generator_bracket_check(spec))
        report.add(curvature_check(spec))
    report.add(identity_suite(spec))
    report.add(potential_suite(spec))
    return report


def default_potential(kind, betas=obs.DEFAULT_BETAS, k=obs.DEFAULT_K):
    """Potential of ``kind`` with the generic sweep constants.

    The family uses the smooth radial function F(r) = beta0 r^4, which is
    neither the oscillator nor the Coulomb choice.
    """
    b0, b1, b2, b3 = betas
    if kind == "family":
        return obs.PotentialSpec.family(lambda r: b0 * r ** 4, lambda r: 4 * b0 * r ** 3,
                                        b1, b2, b3)
    if kind == "sw":
        return obs.PotentialSpec.sw(b0, b1, b2, b3)
    if kind == "kc":
        return obs.PotentialSpec.kc(k)
    return obs.PotentialSpec(kind, b0, b1, b2, b3, k)


def canonical_spaces():
    return dict(SPACES)
