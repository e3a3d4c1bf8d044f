import numpy as np
import pytest

from ckmech import observables as ob
from ckmech.liealg import SPACES
from ckmech.phasespace import Observable, kinetic_energy
from ckmech.verify import (CheckRecord, CheckSpec, VerificationReport, default_potential,
                           full_suite, gradient_audit, identity_suite, independence_rank,
                           involution_sweep, rank_check, structure_constant_check)


def spec_for(space, kind, points=60, seed=0):
    return CheckSpec(SPACES[space], default_potential(kind), points=points, seed=seed)


def test_checkspec_validation():
    with pytest.raises(ValueError):
        CheckSpec(SPACES["s3"], points=0)
    with pytest.raises(ValueError):
        CheckSpec(SPACES["s3"], tol_bracket=0.0)


def test_record_modes():
    assert CheckRecord("a", 1e-9, 1e-8, "max", 10, 0).passed
    assert not CheckRecord("a", 1e-7, 1e-8, "max", 10, 0).passed
    assert CheckRecord("w", 1.0, 1e-4, "min", 10, 0).passed
    assert CheckRecord("r", 4, 4, "equal", 10, 0).passed
    assert not CheckRecord("r", 3, 4, "equal", 10, 0).passed
    assert CheckRecord("b", 5, 5, "at_most", 10, 0).passed
    # Too many skipped points fails even with a tiny residual.
    assert not CheckRecord("s", 0.0, 1e-8, "max", 4, 6).passed
    assert not CheckRecord("n", float("nan"), 1e-8, "max", 10, 0).passed


def test_involution_sweep_examples():
    s = spec_for("h3", "family")
    ints = ob.integrals(s.potential, s.space)
    assert involution_sweep([ints["I23"], ints["I123"], ints["H"]], s).passed
    pair = involution_sweep([ints["I12"], ints["I23"]], s)
    assert not pair.passed
    assert pair.value > 1e-4
    assert involution_sweep([ints["H"]], s).passed


@pytest.mark.parametrize("space", list(SPACES))
def test_ranks(space):
    fam = spec_for(space, "family", points=20)
    ints = ob.integrals(fam.potential, fam.space)
    assert independence_rank([ints["I12"], ints["I23"], ints["I123"], ints["H"]], fam) == 4
    sw = spec_for(space, "sw", points=20)
    ints = ob.integrals(sw.potential, sw.space)
    five = [ints[n] for n in ("I01", "I12", "I23", "I123", "H")]
    assert independence_rank(five, sw) == 5
    seven = [ints[n] for n in ("I01", "I02", "I03", "I12", "I23", "I123", "H")]
    assert independence_rank(seven, sw) <= 5


def test_rank_stable_across_seeds():
    results = set()
    for seed in range(10):
        s = spec_for("ads", "sw", points=5, seed=seed)
        ints = ob.integrals(s.potential, s.space)
        results.add(independence_rank([ints[n] for n in ("I01", "I12", "I23", "I123", "H")], s))
    assert results == {5}


def test_gradient_audit_detects_corruption():
    s = spec_for("s3", "family", points=10)
    t = kinetic_energy(s.space)
    assert gradient_audit(t, s).passed
    i123 = ob.integral_i123(s.potential, s.space)
    assert gradient_audit(i123, s).passed
    broken = Observable("broken", s.space, t.value, lambda z: t.grad(z) + np.array([0, 1e-3, 0, 0, 0, 0]))
    assert not gradient_audit(broken, s).passed


def test_identity_suite_sw():
    report = identity_suite(spec_for("s3", "sw"))
    assert report.passed
    names = [r.name for r in report.records]
    assert "2 k2 T - C1 = 0" in names
    assert "2 k2 H = k2 I01 + I02 + I03 + k1 I123" in names
    assert report["potential: barrier form = centred-oscillator form"].value <= 1e-10


def test_structure_constants_all_spaces():
    for p in SPACES.values():
        assert structure_constant_check(p).value <= 1e-14


@pytest.mark.parametrize("kind", ["family", "sw", "gkc1", "gkc2", "gkc3", "kc"])
def test_full_suite_cells(kind):
    for space in ("e3", "ds"):
        report = full_suite(spec_for(space, kind, points=25))
        assert report.passed, [(r.name, r.value) for r in report.failures]


def test_report_serialises():
    r = VerificationReport().add(CheckRecord("x", 0.0, 1.0, "max", 1, 0))
    r.add(rank_check([kinetic_energy(SPACES["e3"])], spec_for("e3", "kc", points=2), 1))
    d = r.to_dict()
    assert d["passed"] is True
    assert [c["name"] for c in d["checks"]][0] == "x"
