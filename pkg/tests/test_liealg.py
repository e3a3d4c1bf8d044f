import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ckmech.liealg import (GENERATORS, SPACES, CKParams, basis_element, casimir_c1,
                           casimir_c2, commutator, from_kinematical, generator_index,
                           generator_matrix, kinematical_labels, lie_bracket,
                           one_param_subgroup, structure_constants, to_kinematical)

SPACE_IDS = list(SPACES)
kappa_pairs = st.tuples(st.floats(-2, 2), st.floats(-2, 2).filter(lambda v: abs(v) > 1e-3))


def expm_series(m, terms=40):
    out, term = np.eye(4), np.eye(4)
    for n in range(1, terms):
        term = term @ m / n
        out = out + term
    return out


def test_params_validation():
    with pytest.raises(ValueError):
        CKParams(1, 0)
    with pytest.raises(ValueError):
        CKParams(float("nan"), 1)
    assert CKParams.preset("ads") == CKParams(1, -1)
    with pytest.raises(ValueError):
        CKParams.preset("nope")


def test_generator_index_forms():
    assert generator_index("J01") == generator_index("01") == generator_index((0, 1)) == (0, 1)
    with pytest.raises(ValueError):
        generator_index((1, 0))


@pytest.mark.parametrize("name", SPACE_IDS)
def test_commutators_match_bracket_table(name):
    params = SPACES[name]
    table = structure_constants(params)
    for a, b in itertools.product(GENERATORS, repeat=2):
        got = commutator(generator_matrix(a, params), generator_matrix(b, params))
        want = sum(c * generator_matrix(g, params) for c, g in zip(table[a, b], GENERATORS))
        assert np.max(np.abs(got - want)) <= 1e-14


def test_named_brackets():
    p = CKParams(0.7, -1.3)
    t = structure_constants(p)
    assert np.allclose(t[(1, 2), (1, 3)], p.kappa2 * basis_element((2, 3)))
    assert np.allclose(t[(0, 2), (0, 3)], p.kappa1 * p.kappa2 * basis_element((2, 3)))
    assert np.allclose(t[(0, 1), (2, 3)], 0.0)


@settings(max_examples=30)
@given(kappa_pairs)
def test_jacobi_identity(k):
    p = CKParams(*k)
    e = [basis_element(g) for g in GENERATORS]
    for a, b, c in itertools.combinations(e, 3):
        total = (lie_bracket(a, lie_bracket(b, c, p), p) + lie_bracket(b, lie_bracket(c, a, p), p)
                 + lie_bracket(c, lie_bracket(a, b, p), p))
        assert np.max(np.abs(total)) <= 1e-12


@settings(max_examples=30)
@given(kappa_pairs, st.floats(-1.2, 1.2))
def test_subgroup_closed_form_matches_series(k, x):
    p = CKParams(*k)
    for g in GENERATORS:
        closed = one_param_subgroup(g, x, p)
        assert np.max(np.abs(closed - expm_series(x * generator_matrix(g, p)))) <= 1e-11


@settings(max_examples=30)
@given(kappa_pairs, st.floats(-1, 1), st.floats(-1, 1))
def test_subgroup_isometry_and_group_law(k, x, y):
    p = CKParams(*k)
    form = p.bilinear_form
    for g in GENERATORS:
        m = one_param_subgroup(g, x, p)
        assert np.max(np.abs(m.T @ form @ m - form)) <= 1e-11
        prod = one_param_subgroup(g, x, p) @ one_param_subgroup(g, y, p)
        assert np.max(np.abs(prod - one_param_subgroup(g, x + y, p))) <= 1e-11


@pytest.mark.parametrize("name", SPACE_IDS)
def test_casimirs_are_central(name):
    # Casimirs as quadratic elements of the enveloping algebra: check that
    # their matrix images commute with every generator.
    p = SPACES[name]
    m = [generator_matrix(g, p) for g in GENERATORS]
    k1, k2 = p.kappa1, p.kappa2
    c1 = (k2 * m[0] @ m[0] + m[1] @ m[1] + m[2] @ m[2] + k1 * m[3] @ m[3]
          + k1 * m[4] @ m[4] + k1 * k2 * m[5] @ m[5])
    for g in m:
        assert np.max(np.abs(commutator(c1, g))) <= 1e-14


def test_casimir_evaluators():
    p = CKParams(1, 1)
    values = [1, 2, 3, 4, 5, 6]
    assert casimir_c1(values, p) == 1 + 4 + 9 + 16 + 25 + 36
    assert casimir_c2(values, p) == 1 * 6 - 2 * 5 + 3 * 4


def test_kinematical_relabeling():
    labels = kinematical_labels()
    assert sorted(labels.values()) == sorted(GENERATORS)
    for name, idx in labels.items():
        assert from_kinematical(name) == idx
        assert to_kinematical(idx) == name
    # [K1, K2] = k2 J and [P0, P1] = k1 K1 in kinematical notation.
    p = CKParams(-1, -0.5)
    t = structure_constants(p)
    assert np.allclose(t[labels["K1"], labels["K2"]], p.kappa2 * basis_element(labels["J"]))
    assert np.allclose(t[labels["P0"], labels["P1"]], p.kappa1 * basis_element(labels["K1"]))
