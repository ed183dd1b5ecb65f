import numpy as np
import pytest

from membranelab import (
    BoundaryCircle,
    ModelParams,
    StopCondition,
    integrate_profile,
    family_sweep,
    shoot_family_member,
    shoot_sigma0,
)
from membranelab.errors import NoConvergence
import membranelab.shooting as shooting_mod

from _oracles import MEMBER_ANGLES_05_3, SIGMA0_05_3, polyline_distance


def test_boundary_circle_validation():
    with pytest.raises(ValueError):
        BoundaryCircle(-1.0, -2.0)
    with pytest.raises(ValueError):
        BoundaryCircle(1.0, 2.0)


def test_sigma0_fig2_circle(sig053):
    assert 1.45 <= sig053.params.c_o <= 1.55
    assert abs(sig053.boundary_phi) < 1e-8
    assert sig053.match_residual < 1e-10
    assert sig053.params.c_o == pytest.approx(SIGMA0_05_3["c_o"], abs=1e-9)
    assert sig053.params.z_o == pytest.approx(SIGMA0_05_3["z_o"], abs=1e-9)
    assert sig053.params.sigma0_admissible


def test_sigma0_unit_circle():
    sig = shoot_sigma0(BoundaryCircle(1.0, -2.0))
    assert abs(sig.boundary_phi) < 1e-8
    assert sig.match_residual < 1e-10
    # re-verify the endpoint independently of the solver at 10x tighter tol
    check = integrate_profile(
        sig.params,
        StopCondition.phi_reaches(0.0),
        rtol=sig.curve.rtol / 10,
        atol=sig.curve.atol / 10,
    )
    r_end, z_end, _ = check.state_at(check.ell)
    assert np.hypot(r_end - 1.0, z_end + 2.0) < 1e-8 * 1.0


def test_sigma0_scaling_equivariance(sig053):
    mu = 2.0
    scaled = shoot_sigma0(BoundaryCircle(0.5 * mu, -3.0 * mu))
    assert scaled.params.c_o == pytest.approx(sig053.params.c_o / mu, abs=1e-8)
    assert scaled.params.z_o == pytest.approx(mu * sig053.params.z_o, abs=1e-8)


def test_sigma0_converges_from_far_seed(circle053, sig053):
    far = ModelParams(20.0, -5.0)
    sig = shoot_sigma0(circle053, seed=far)
    assert sig.params.c_o == pytest.approx(sig053.params.c_o, abs=1e-8)


def test_member_reproduces_sigma0(circle053, sig053):
    m = shoot_family_member(sig053.params.c_o, circle053, sig053)
    assert abs(m.contact_angle) < 1e-6
    assert m.match_residual < 1e-10
    assert m.z_o == pytest.approx(sig053.params.z_o, abs=1e-8)


@pytest.mark.parametrize("c", sorted(MEMBER_ANGLES_05_3))
def test_member_angles_match_continuation_oracle(c, circle053, sig053):
    m = shoot_family_member(c, circle053, sig053)
    assert m.contact_angle == pytest.approx(MEMBER_ANGLES_05_3[c], abs=1e-8)


def test_member_small_step_continuity(circle053, sig053, lin053):
    d = 1e-6
    m = shoot_family_member(sig053.params.c_o + d, circle053, sig053)
    # contact angle responds with slope -h_prime_boundary, the apex with h(0)
    assert m.contact_angle == pytest.approx(-lin053.h_prime_boundary * d, rel=1e-3)
    assert m.z_o - sig053.params.z_o == pytest.approx(
        float(lin053.h_at(0.0)) * d, rel=1e-3
    )


def test_member_first_passage(circle053, sig053):
    m = shoot_family_member(1.8, circle053, sig053)
    taus = np.linspace(0.0, m.curve.ell * (1.0 - 1e-6), 4000)
    r, z, _ = m.curve.state_at(taus)
    d2 = (r - circle053.R) ** 2 + (z - circle053.Z) ** 2
    interior_min = np.min(d2[:-50])
    # no earlier passage: the distance stays bounded away from zero until
    # the terminal match point
    assert np.sqrt(interior_min) > 1e-4 * circle053.R


def test_sweep_13_members(circle053, sig053):
    sw = family_sweep(circle053, 1.2, 1.8, 13, sigma0=sig053)
    assert len(sw.members) == 13 and not sw.failures
    angles = np.array([m.contact_angle for m in sw.members])
    cs = np.array([m.c for m in sw.members])
    assert np.all(np.diff(cs) > 0)
    assert np.all(np.diff(angles) > 0)
    assert np.sum(np.diff(np.sign(angles)) != 0) == 1
    assert not any(m.left_admissible_region for m in sw.members)
    for m in sw.members:
        check = integrate_profile(
            ModelParams(m.c, m.z_o),
            StopCondition.at_arc_length(m.curve.ell),
            rtol=m.curve.rtol / 10,
            atol=m.curve.atol / 10,
        )
        r_end, z_end, _ = check.state_at(check.ell)
        assert np.hypot(r_end - circle053.R, z_end - circle053.Z) < 1e-8 * circle053.R


def test_sweep_refinement_interleaves(circle053, sig053):
    coarse = family_sweep(circle053, 1.2, 1.8, 13, sigma0=sig053)
    fine = family_sweep(circle053, 1.2, 1.8, 25, sigma0=sig053)
    fine_by_c = {round(m.c, 12): m for m in fine.members}
    matched = 0
    for m in coarse.members:
        key = round(m.c, 12)
        if key in fine_by_c:
            assert fine_by_c[key].z_o == pytest.approx(m.z_o, abs=1e-8)
            assert fine_by_c[key].contact_angle == pytest.approx(
                m.contact_angle, abs=1e-8
            )
            matched += 1
    assert matched == 13  # the coarse grid is a subset of the fine grid

    def max_consecutive_distance(members):
        worst = 0.0
        for a, b in zip(members[:-1], members[1:]):
            ta = np.linspace(0.0, a.curve.ell, 300)
            ra, za, _ = a.curve.state_at(ta)
            tb = np.linspace(0.0, b.curve.ell, 900)
            rb, zb, _ = b.curve.state_at(tb)
            worst = max(worst, float(polyline_distance(ra, za, rb, zb).max()))
        return worst

    d_coarse = max_consecutive_distance(coarse.members)
    d_fine = max_consecutive_distance(fine.members)
    # observed order >= 1 in the grid spacing
    assert d_fine < 0.7 * d_coarse


def test_sweep_range_must_bracket(circle053, sig053):
    with pytest.raises(ValueError):
        family_sweep(circle053, 1.6, 1.8, 5, sigma0=sig053)


def test_sweep_collapsed_range_returns_sigma0(circle053, sig053):
    c0 = sig053.params.c_o
    sw = family_sweep(circle053, c0, c0, 1, sigma0=sig053)
    assert len(sw.members) == 1
    assert abs(sw.members[0].contact_angle) < 1e-6


def test_sweep_records_partial_failures(circle053, sig053, monkeypatch):
    real = shooting_mod.shoot_family_member

    def flaky(c, circle, seed, **kw):
        if abs(c - 1.25) < 1e-9:
            raise NoConvergence("synthetic failure")
        return real(c, circle, seed, **kw)

    monkeypatch.setattr(shooting_mod, "shoot_family_member", flaky)
    sw = shooting_mod.family_sweep(circle053, 1.2, 1.8, 13, sigma0=sig053)
    assert len(sw.failures) == 1 and abs(sw.failures[0][0] - 1.25) < 1e-9
    assert len(sw.members) == 12
