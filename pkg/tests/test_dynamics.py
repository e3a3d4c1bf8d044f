import csv
import math

import numpy as np
import pytest

from ckmech import observables as ob
from ckmech.dynamics import check_initial_point, hamiltons_rhs, integrate
from ckmech.errors import SingularityApproach, StepFailure
from ckmech.geometry import polar_to_ambient, sigma_residual
from ckmech.liealg import SPACES
from ckmech.phasespace import (Observable, fd_gradient, generators, kinetic_energy,
                               sample_point)

CIRCULAR = (1.0, math.pi / 2, 0.0, 0.0, 0.0, 1.0)


def kc_circular():
    p = SPACES["e3"]
    spec = ob.PotentialSpec.kc(1.0)
    ints = ob.integrals(spec, p)
    watch = [ints[n] for n in ("H", "I23", "I123", "L3")]
    return ints["H"], watch


def test_rhs_flat_free_motion():
    p = SPACES["e3"]
    z = np.array([1.3, 0.7, 0.2, 0.4, -0.6, 0.9])
    r, th, _, pr, pt, pp = z
    rhs = hamiltons_rhs(kinetic_energy(p), z)
    assert rhs[0] == pytest.approx(pr)
    assert rhs[3] == pytest.approx(pt ** 2 / r ** 3 + pp ** 2 / (r ** 3 * math.sin(th) ** 2))


def test_rhs_matches_fd_of_hamiltonian():
    p = SPACES["ads"]
    h = ob.hamiltonian(ob.PotentialSpec.sw(*ob.DEFAULT_BETAS), p)
    z = np.asarray(sample_point(0, 4))
    g = fd_gradient(h, z)
    assert np.allclose(hamiltons_rhs(h, z), [g[3], g[4], g[5], -g[0], -g[1], -g[2]], atol=1e-7)


def test_kc_circular_orbit():
    h, watch = kc_circular()
    traj = integrate(h, CIRCULAR, 10.0, watch)
    assert traj.complete
    assert traj.samples[-1].t == pytest.approx(10.0)
    assert np.max(np.abs(traj.points[:, 0] - 1.0)) <= 1e-8
    for name, d in traj.drifts().items():
        assert d <= 1e-6, name
    assert np.all(np.diff(traj.times) > 0)
    assert traj.meta["integrator"] == "rk45"


def test_geodesic_flow_on_sphere():
    p = SPACES["s3"]
    t = kinetic_energy(p)
    traj = integrate(t, sample_point(0, 1), 5.0, list(generators(p)))
    assert traj.complete
    for s in traj.samples:
        assert abs(sigma_residual(polar_to_ambient(s.point.q, p), p)) <= 1e-8
    assert max(traj.drifts().values()) <= 1e-6


def test_time_reversal():
    p = SPACES["h3"]
    h = ob.hamiltonian(ob.PotentialSpec.sw(*ob.DEFAULT_BETAS), p)
    z0 = np.asarray(sample_point(0, 0))
    fwd = integrate(h, z0, 10.0)
    z1 = np.asarray(fwd.samples[-1].point)
    z1[3:] *= -1
    back = integrate(h, z1, 10.0)
    z2 = np.asarray(back.samples[-1].point)
    z2[3:] *= -1
    assert np.max(np.abs(z2 - z0)) <= 1e-6


def test_singular_start_rejected():
    p = SPACES["s3"]
    h = ob.hamiltonian(ob.PotentialSpec.sw(*ob.DEFAULT_BETAS), p)
    with pytest.raises(SingularityApproach, match="initial point singular"):
        check_initial_point(h, (0.8, 0.5, 0.0, 0.1, 0.1, 0.1))
    with pytest.raises(SingularityApproach):
        integrate(h, (0.8, 0.5, 0.0, 0.1, 0.1, 0.1), 1.0)


def test_stops_at_singularity_with_partial_trajectory():
    # On Minkowski space positive barriers attract the azimuth, which then
    # falls into phi = pi/2 in finite time.
    p = SPACES["m"]
    h = ob.hamiltonian(ob.PotentialSpec.sw(*ob.DEFAULT_BETAS), p)
    traj = integrate(h, sample_point(0, 0), 10.0, [h])
    assert traj.status == "singular"
    assert traj.samples[-1].t < 10.0
    assert "below" in traj.message or "failed" in traj.message


def test_step_failure_carries_trajectory():
    # Unguarded Hamiltonian with a finite-time blow-up at r = 0.5.
    p = SPACES["e3"]

    def value(z):
        return 0.5 * z[3] ** 2 - 1.0 / (z[0] - 0.5)

    def grad(z):
        return np.array([1.0 / (z[0] - 0.5) ** 2, 0, 0, z[3], 0, 0])

    h = Observable("H", p, value, grad)
    with pytest.raises(StepFailure) as info:
        integrate(h, (1.0, 0.5, 0.5, -1.0, 0.0, 0.0), 5.0, [h])
    traj = info.value.trajectory
    assert len(traj.samples) > 1
    assert traj.status == "failed" and not traj.complete
    assert "underflow" in traj.message


def test_midpoint_mode():
    h, watch = kc_circular()
    traj = integrate(h, CIRCULAR, 2.0, watch, method="midpoint", step=0.01)
    assert traj.complete
    assert len(traj.samples) == 201
    assert traj.drift("H") <= 1e-10
    assert np.max(np.abs(traj.points[:, 0] - 1.0)) <= 1e-8
    with pytest.raises(ValueError):
        integrate(h, CIRCULAR, 1.0, method="midpoint")
    with pytest.raises(ValueError):
        integrate(h, CIRCULAR, 1.0, method="euler")
    with pytest.raises(ValueError):
        integrate(h, CIRCULAR, 0.0)


def test_csv_export(tmp_path):
    h, watch = kc_circular()
    traj = integrate(h, CIRCULAR, 0.5, watch)
    out = tmp_path / "traj.csv"
    traj.to_csv(out)
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "r", "theta", "phi", "p_r", "p_theta", "p_phi", "H", "I23", "I123", "L3"]
    assert len(rows) == len(traj.samples) + 1
    last = traj.samples[-1]
    assert float(rows[-1][2]) == last.point.theta
    assert float(rows[-1][7]) == last.conserved["H"]
