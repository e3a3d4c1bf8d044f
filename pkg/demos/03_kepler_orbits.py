"""Kepler-Coulomb orbits on the flat, spherical and hyperbolic spaces.

The same initial condition is integrated on E3, S3 and H3. Energy, the
angular-momentum integrals and all three Laplace-Runge-Lenz components
stay constant to integrator accuracy; on E3 a circular orbit keeps r = 1.

Pass a directory as the first argument to also write each trajectory as CSV.
"""
import math
import sys
from pathlib import Path

import numpy as np

from ckmech import observables as ob
from ckmech.dynamics import integrate
from ckmech.liealg import SPACES

K = 1.0


def circular():
    ints = ob.integrals(ob.PotentialSpec.kc(K), SPACES["e3"])
    # For V = -k/r a unit-radius circle needs p_phi^2 = k r.
    traj = integrate(ints["H"], (1.0, math.pi / 2, 0.0, 0.0, 0.0, 1.0), 10.0)
    dev = np.max(np.abs(traj.points[:, 0] - 1.0))
    print(f"E3 circular orbit: max |r - 1| over t in [0, 10] = {dev:.1e}\n")


def orbit(space, out_dir=None):
    params = SPACES[space]
    spec = ob.PotentialSpec.kc(K)
    ints = ob.integrals(spec, params)
    z0 = (0.8, 1.1, 0.6, 0.1, 0.3, 0.5)
    traj = integrate(ints["H"], z0, 10.0, list(ints.values()))
    r = traj.points[:, 0]
    print(f"{space}: {len(traj.samples)} steps, r in [{r.min():.3f}, {r.max():.3f}]")
    for name, drift in traj.drifts().items():
        print(f"    {name:>4} = {traj.series(name)[0]:+.6f}   drift {drift:.1e}")
    if out_dir:
        traj.to_csv(Path(out_dir) / f"kepler_{space}.csv")


def main(out_dir=None):
    circular()
    for space in ("e3", "s3", "h3"):
        orbit(space, out_dir)


if __name__ == "__main__":
    main(*sys.argv[1:2])
