"""The Cayley-Klein algebra so_{k1,k2}(4): brackets, matrices, subgroups, Casimirs.

Generators ``J_{mu nu}`` (0 <= mu < nu <= 3) are addressed by index pairs in
the fixed order of :data:`GENERATORS`. Algebra elements are length-6 numpy
arrays of coefficients in that basis.
"""

from dataclasses import dataclass

import numpy as np

from .ktrig import ck, sk

GENERATORS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
GENERATOR_NAMES = tuple(f"J{mu}{nu}" for mu, nu in GENERATORS)
_POSITION = {idx: n for n, idx in enumerate(GENERATORS)}


@dataclass(frozen=True)
class CKParams:
    """Curvature ``kappa1`` and signature parameter ``kappa2`` of a space.

    ``kappa2 == 0`` gives a degenerate metric and is rejected.
    """

    kappa1: float
    kappa2: float

    def __post_init__(self):
        object.__setattr__(self, "kappa1", float(self.kappa1))
        object.__setattr__(self, "kappa2", float(self.kappa2))
        if self.kappa2 == 0.0:
            raise ValueError("kappa2 = 0 gives a degenerate metric")
        if not (np.isfinite(self.kappa1) and np.isfinite(self.kappa2)):
            raise ValueError("curvature parameters must be finite")

    @property
    def kappa12(self):
        return self.kappa1 * self.kappa2

    @property
    def bilinear_form(self):
        """diag(1, k1, k1 k2, k1 k2), preserved by the group."""
        k1, k12 = self.kappa1, self.kappa12
        return np.diag([1.0, k1, k12, k12])

    @classmethod
    def preset(cls, name):
        try:
            return SPACES[name]
        except KeyError:
            raise ValueError(f"unknown space {name!r}; choose from {sorted(SPACES)}") from None


#: The six canonical spaces in units R = tau = c = 1.
SPACES = {
    "s3": CKParams(1, 1),
    "e3": CKParams(0, 1),
    "h3": CKParams(-1, 1),
    "ads": CKParams(1, -1),
    "m": CKParams(0, -1),
    "ds": CKParams(-1, -1),
}

SPACE_LABELS = {
    "s3": "spherical S^3",
    "e3": "Euclidean E^3",
    "h3": "hyperbolic H^3",
    "ads": "anti-de Sitter AdS^{2+1}",
    "m": "Minkowskian M^{2+1}",
    "ds": "de Sitter dS^{2+1}",
}


def generator_index(name_or_pair):
    """Normalise ``"J01"``, ``"01"`` or ``(0, 1)`` to an index pair."""
    if isinstance(name_or_pair, str):
        digits = name_or_pair.upper().removeprefix("J")
        pair = (int(digits[0]), int(digits[1]))
    else:
        pair = tuple(int(v) for v in name_or_pair)
    if pair not in _POSITION:
        raise ValueError(f"no generator J{pair}; need 0 <= mu < nu <= 3")
    return pair


def basis_element(idx):
    out = np.zeros(6)
    out[_POSITION[generator_index(idx)]] = 1.0
    return out


def _bracket_table(k1, k2):
    # [a, b] = coeff * c, one entry per bracket; the rest follow by antisymmetry.
    return [
        ((1, 2), (1, 3), k2, (2, 3)),
        ((1, 2), (2, 3), -1.0, (1, 3)),
        ((1, 3), (2, 3), 1.0, (1, 2)),
        ((1, 2), (0, 1), 1.0, (0, 2)),
        ((1, 3), (0, 1), 1.0, (0, 3)),
        ((2, 3), (0, 2), 1.0, (0, 3)),
        ((1, 2), (0, 2), -k2, (0, 1)),
        ((1, 3), (0, 3), -k2, (0, 1)),
        ((2, 3), (0, 3), -1.0, (0, 2)),
        ((0, 1), (0, 2), k1, (1, 2)),
        ((0, 1), (0, 3), k1, (1, 3)),
        ((0, 2), (0, 3), k1 * k2, (2, 3)),
        ((0, 1), (2, 3), 0.0, None),
        ((0, 2), (1, 3), 0.0, None),
        ((0, 3), (1, 2), 0.0, None),
    ]


def structure_constants(params):
    """Return ``{(a, b): element}`` for every ordered pair of generators.

    ``element`` is the length-6 coefficient vector of ``[J_a, J_b]``.
    """
    table = {(a, b): np.zeros(6) for a in GENERATORS for b in GENERATORS}
    for a, b, coeff, c in _bracket_table(params.kappa1, params.kappa2):
        if c is None:
            continue
        table[a, b] = coeff * basis_element(c)
        table[b, a] = -coeff * basis_element(c)
    return table


def lie_bracket(x, y, params):
    """Bracket of two algebra elements given as coefficient vectors."""
    table = structure_constants(params)
    out = np.zeros(6)
    for i, a in enumerate(GENERATORS):
        if x[i] == 0.0:
            continue
        for j, b in enumerate(GENERATORS):
            if y[j] != 0.0:
                out += x[i] * y[j] * table[a, b]
    return out


def generator_matrix(idx, params):
    """4x4 matrix of ``J_{mu nu}`` in the vector representation."""
    mu, nu = generator_index(idx)
    m = np.zeros((4, 4))
    # Entry (mu, nu) carries the product of the kappas "between" mu and nu.
    k = (1.0, params.kappa1, params.kappa2, 1.0)
    factor = 1.0
    for step in range(mu + 1, nu + 1):
        factor *= k[step]
    m[mu, nu] = -factor
    m[nu, mu] = 1.0
    return m


def one_param_subgroup(idx, x, params):
    """Closed-form ``exp(x J_{mu nu})``."""
    mu, nu = generator_index(idx)
    k1, k2 = params.kappa1, params.kappa2
    label = {
        (0, 1): k1, (0, 2): k1 * k2, (0, 3): k1 * k2,
        (1, 2): k2, (1, 3): k2, (2, 3): 1.0,
    }[mu, nu]
    c, s = ck(label, x), sk(label, x)
    y = np.eye(4)
    y[mu, mu] = c
    y[nu, nu] = c
    y[mu, nu] = -label * s
    y[nu, mu] = s
    return y


def commutator(a, b):
    return a @ b - b @ a


def casimir_c1(values, params):
    """Quadratic Casimir evaluated on numbers assigned to J01..J23."""
    j01, j02, j03, j12, j13, j23 = values
    k1, k2 = params.kappa1, params.kappa2
    return (k2 * j01**2 + j02**2 + j03**2
            + k1 * j12**2 + k1 * j13**2 + k1 * k2 * j23**2)


def casimir_c2(values, params):
    j01, j02, j03, j12, j13, j23 = values
    return params.kappa2 * j01 * j23 - j02 * j13 + j03 * j12


#: Kinematical names of the generators when kappa2 = -1/c^2.
KINEMATICAL = {
    "P0": (0, 1),
    "P1": (0, 2),
    "P2": (0, 3),
    "K1": (1, 2),
    "K2": (1, 3),
    "J": (2, 3),
}


def kinematical_labels():
    """Bijection between kinematical names and generator index pairs."""
    return dict(KINEMATICAL)


def from_kinematical(name):
    return KINEMATICAL[name]


def to_kinematical(idx):
    idx = generator_index(idx)
    for name, pair in KINEMATICAL.items():
        if pair == idx:
            return name
    raise ValueError(idx)
