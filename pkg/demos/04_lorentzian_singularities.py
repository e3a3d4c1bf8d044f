"""Trajectories on the three spacetimes run into the potential's singular set.

With every coupling positive, a Lorentzian signature turns the angular
barriers into wells: the azimuth is pulled onto the plane where a
barrier diverges, or the orbit falls onto the light cone of the origin
where sinh-type factors vanish. The integrator stops at the guard and
reports where; near the light cone the momentum grows like 1/r^2 and the
adaptive step can underflow first. For comparison the same starts are run on the Riemannian
space with the same curvature.
"""
from ckmech import observables as ob
from ckmech.dynamics import integrate
from ckmech.errors import StepFailure
from ckmech.liealg import SPACES
from ckmech.phasespace import sample_point
from ckmech.verify import default_potential

PAIRS = (("ads", "s3"), ("m", "e3"), ("ds", "h3"))
STARTS = 6


def run(space, kind, index):
    ints = ob.integrals(default_potential(kind), SPACES[space])
    try:
        traj = integrate(ints["H"], sample_point(0, index), 10.0, [ints["H"]])
    except StepFailure as exc:
        traj = exc.trajectory
    return traj


def describe(traj):
    last = traj.samples[-1]
    if traj.complete:
        return f"reached t=10, H drift {traj.drift('H'):.0e}"
    r, th, ph = last.point.q
    how = "stopped" if traj.status == "singular" else "step underflow"
    return f"{how} t={last.t:5.2f} at (r, theta, phi)=({r:.2f}, {th:.2f}, {ph:.2f})"


def main(kind="sw"):
    for lorentzian, riemannian in PAIRS:
        print(f"{kind} on {lorentzian} vs {riemannian}")
        for i in range(STARTS):
            print(f"  start #{i}: {lorentzian:>3} {describe(run(lorentzian, kind, i)):<64}"
                  f"| {riemannian}: {describe(run(riemannian, kind, i))}")
        print()


if __name__ == "__main__":
    main("sw")
    # Without barriers the azimuth is free, and what remains is the fall
    # towards the light cone of the origin.
    main("kc")
