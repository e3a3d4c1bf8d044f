"""Integration of Hamilton's equations with conserved-quantity monitoring.

The default integrator is the adaptive Dormand-Prince 5(4) pair from
scipy, stepped one accepted step at a time so every step can be checked
against the singularity guard and the watched observables recorded. A
fixed-step implicit midpoint rule is available for long runs.
"""

import csv
import math
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np
from scipy.integrate import RK45

from .errors import EVALUATION_ERRORS, SingularityApproach, StepFailure
from .phasespace import PhasePoint

#: Stop once an active denominator drops below this value.
GUARD_MARGIN = 1e-6
MIN_STEP = 1e-14

CSV_COORDS = ("t", "r", "theta", "phi", "p_r", "p_theta", "p_phi")


def hamiltons_rhs(h, z):
    """(dq/dt, dp/dt) = (dH/dp, -dH/dq)."""
    g = h.grad(z)
    return np.array([g[3], g[4], g[5], -g[0], -g[1], -g[2]])


@dataclass
class Sample:
    t: float
    point: PhasePoint
    conserved: Dict[str, float]


@dataclass
class Trajectory:
    """Accepted steps of one integration run.

    ``status`` is ``"complete"`` when ``t_end`` was reached, ``"singular"``
    when the run stopped at the singularity guard and ``"failed"`` for the
    partial trajectory carried by :class:`StepFailure`. ``message`` says
    why a run ended early.
    """

    samples: List[Sample] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    status: str = "complete"
    message: str = ""

    @property
    def complete(self):
        return self.status == "complete"

    @property
    def times(self):
        return np.array([s.t for s in self.samples])

    @property
    def points(self):
        return np.array([s.point for s in self.samples])

    @property
    def watched(self):
        return list(self.samples[0].conserved) if self.samples else []

    def series(self, name):
        return np.array([s.conserved[name] for s in self.samples])

    def drift(self, name):
        """max |I(t) - I(0)| / max(|I(0)|, 1)."""
        values = self.series(name)
        return float(np.max(np.abs(values - values[0])) / max(abs(values[0]), 1.0))

    def drifts(self):
        return {name: self.drift(name) for name in self.watched}

    def to_csv(self, path):
        names = self.watched
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(list(CSV_COORDS) + names)
            for s in self.samples:
                row = [s.t, *s.point] + [s.conserved[n] for n in names]
                writer.writerow(["%.17g" % v for v in row])


def _guard(observables, z):
    return min(o.guard(z) for o in observables)


def check_initial_point(h, z0, watch=(), margin=GUARD_MARGIN):
    """Raise :class:`SingularityApproach` unless ``z0`` is safely regular."""
    observables = [h, *watch]
    try:
        for o in observables:
            o.grad(z0)
        g = _guard(observables, z0)
    except EVALUATION_ERRORS as exc:
        raise SingularityApproach(f"initial point singular: {exc}") from None
    if g < margin:
        raise SingularityApproach(f"initial point singular: denominator {g:.3g} below {margin:g}")


def _failure(traj, message):
    traj.status = "failed"
    traj.message = message
    return StepFailure(message, traj)


def _record(traj, t, z, watch):
    traj.samples.append(Sample(float(t), PhasePoint(*(float(v) for v in z)),
                               {o.name: float(o(z)) for o in watch}))


def integrate(h, z0, t_end, watch=(), rtol=1e-10, atol=1e-12, method="rk45",
              step=None, margin=GUARD_MARGIN, max_steps=1_000_000):
    """Integrate from ``z0`` to ``t_end``, recording ``watch`` on accepted steps.

    ``method`` is ``"rk45"`` (adaptive, tolerances ``rtol``/``atol``) or
    ``"midpoint"`` (implicit midpoint with fixed ``step``). Returns a
    :class:`Trajectory`; a run that reaches the singularity guard returns
    the partial trajectory with status ``"singular"``. Raises
    :class:`StepFailure` if the adaptive step drops below 1e-14.
    """
    if not t_end > 0.0:
        raise ValueError("t_end must be positive")
    z0 = np.asarray(z0, dtype=float)
    watch = list(watch)
    check_initial_point(h, z0, watch, margin)
    guarded = [h, *watch]
    meta = {"integrator": method, "t_end": float(t_end), "guard_margin": margin}
    if method == "rk45":
        meta.update(step_policy="adaptive", rtol=rtol, atol=atol)
    elif method == "midpoint":
        if step is None or not step > 0.0:
            raise ValueError("the midpoint method needs a positive fixed step")
        meta.update(step_policy="fixed", step=step)
    else:
        raise ValueError(f"unknown method {method!r}")
    traj = Trajectory(meta=meta)
    _record(traj, 0.0, z0, watch)

    def stop(reason):
        traj.status = "singular"
        traj.message = reason
        return traj

    if method == "midpoint":
        return _midpoint(h, z0, t_end, step, watch, guarded, margin, traj, stop)

    solver = RK45(lambda t, y: hamiltons_rhs(h, y), 0.0, z0, t_end, rtol=rtol, atol=atol)
    for _ in range(max_steps):
        if solver.status != "running":
            break
        try:
            message = solver.step()
        except EVALUATION_ERRORS as exc:
            return stop(f"evaluation failed near t={solver.t:.6g}: {exc}")
        if solver.status == "failed":
            raise _failure(traj, f"integrator failed at t={solver.t:.6g}: {message}")
        if solver.t < t_end and solver.step_size < MIN_STEP:
            raise _failure(traj, f"step size {solver.step_size:.3g} underflow at t={solver.t:.6g}")
        try:
            g = _guard(guarded, solver.y)
            if g < margin:
                return stop(f"denominator {g:.3g} below {margin:g} at t={solver.t:.6g}")
            _record(traj, solver.t, solver.y, watch)
        except EVALUATION_ERRORS as exc:
            return stop(f"evaluation failed at t={solver.t:.6g}: {exc}")
    else:
        raise _failure(traj, f"exceeded {max_steps} steps")
    return traj


def _midpoint(h, z0, t_end, step, watch, guarded, margin, traj, stop):
    n = max(1, math.ceil(t_end / step - 1e-9))
    dt = t_end / n
    z = z0
    for i in range(1, n + 1):
        try:
            nxt = z + dt * hamiltons_rhs(h, z)
            for _ in range(100):
                new = z + dt * hamiltons_rhs(h, 0.5 * (z + nxt))
                done = np.max(np.abs(new - nxt)) <= 1e-15 * max(1.0, np.max(np.abs(new)))
                nxt = new
                if done:
                    break
            else:
                raise _failure(traj, f"midpoint iteration did not converge at t={i * dt:.6g}")
            g = _guard(guarded, nxt)
            if g < margin:
                return stop(f"denominator {g:.3g} below {margin:g} at t={i * dt:.6g}")
            z = nxt
            _record(traj, i * dt, z, watch)
        except EVALUATION_ERRORS as exc:
            return stop(f"evaluation failed at t={i * dt:.6g}: {exc}")
    return traj
