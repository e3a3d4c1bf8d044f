"""Which integrals commute with which: a bracket table for one cell.

Usage: ``python demos/02_superintegrability.py [space] [potential]``,
for instance ``ads sw`` or ``s3 kc`` (defaults: ``h3 sw``).
"""
import sys

import numpy as np

from ckmech import observables as ob
from ckmech.liealg import SPACES
from ckmech.phasespace import poisson_bracket, sample_points
from ckmech.verify import CheckSpec, default_potential, independence_rank


def bracket_table(ints, points):
    names = list(ints)
    table = np.zeros((len(names), len(names)))
    for z in points:
        for a, f in enumerate(names):
            for b, g in enumerate(names[a + 1:], a + 1):
                v = abs(poisson_bracket(ints[f], ints[g], z))
                table[a, b] = table[b, a] = max(table[a, b], v)
    return names, table


def main(space="h3", kind="sw"):
    params = SPACES[space]
    pot = default_potential(kind)
    ints = ob.integrals(pot, params)
    names, table = bracket_table(ints, sample_points(20, seed=3))

    print(f"max |{{A, B}}| over 20 points, {kind} on {space}; '.' means below 1e-8\n")
    print("      " + "".join(f"{n:>9}" for n in names))
    for n, row in zip(names, table):
        cells = "".join(f"{'.':>9}" if v < 1e-8 else f"{v:>9.1e}" for v in row)
        print(f"{n:>6}{cells}")

    # Everything commutes with H; the Hamiltonian has 2N - 1 = 5 functionally
    # independent integrals when it is maximally superintegrable.
    spec = CheckSpec(params, pot, points=20, seed=3)
    everything = independence_rank(list(ints.values()), spec)
    print(f"\nrank of all {len(ints)} gradients: {everything}")


if __name__ == "__main__":
    main(*sys.argv[1:3])
