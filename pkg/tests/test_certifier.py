import json
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

import points
from agencygame import beliefs as bl, certifier as C
from agencygame.model_core import (
    EndpointError, EquilibriumClass as EC, X, make_params,
)

unit = st.floats(0.02, 0.98)
FIG4 = dict(E=0.85, pi=0.7, rho=0.85, beta=0.9)
FIG3 = dict(E=1.0, v_xx=500.0, pi=0.5, rho=0.5, beta=0.5)

CONDITIONS = {
    EC.PECB: ["office_rent", "mismatch_ratio", "rent_support", "bureaucrat_rent_ceiling"],
    EC.PEPB: ["office_rent", "mismatch_ratio", "rent_support", "bureaucrat_rent_ceiling"],
    EC.NPE_SF: ["office_rent", "mismatch_ratio", "rent_support", "state_likelihood",
                "mixing_ceiling", "state_x_proposal"],
    EC.NPE_FSV: ["office_rent", "mismatch_ratio", "rent_support", "state_likelihood",
                 "influence_cap", "mixing_window", "state_x_proposal"],
    EC.NPE_ASV: ["office_rent", "mismatch_ratio", "influence_floor", "rent_support",
                 "mixing_ceiling", "state_x_proposal", "state_y_proposal"],
}


def test_mu_bar_pe_example():
    p = make_params(lam=0.8, beta=0.5, pi=0.5, rho=0.5)
    t = C.thresholds(EC.PECB, p)
    # quantile of the bound 0.5 under U[0,2] is 1; delta pi rho (1 - lambda) = 0.05
    assert t.mu_bar_pe == pytest.approx(20.0, abs=1e-12)
    # cross-check: mu_2^B just below 20 keeps xi under its bound, just above breaks it
    bound = (1 - 0.8) / (0.8 * 0.5)
    assert bl.xi(p.replace(rent_b2_upper=2 * 19.999)) < bound
    assert bl.xi(p.replace(rent_b2_upper=2 * 20.001)) > bound


def test_mu_bar_pe_is_unbounded_when_the_mixing_bound_exceeds_one():
    assert C.mu_bar_pe(make_params(lam=0.3, beta=0.5)) == math.inf


def test_ell_example():
    p = make_params(**FIG4, lam=0.5)
    assert C.ell(p) == pytest.approx(1 - 0.15 / (0.85 * 0.3), abs=1e-15)
    assert C.ell(p) == pytest.approx(0.41176, abs=1e-5)


def test_delta_cb_example():
    p = make_params(rho=0.5, lam=0.5, pi=0.5)
    b = bl.pe_profile_from(EC.PECB, p, bl.xi(p), 0.5)
    delta_cb = p.delta * p.rho * (1 - p.lam) * (b.pi_b[(X, X)] - p.pi)
    assert delta_cb == pytest.approx(1 / 24, abs=1e-15)


def test_threshold_set_fields():
    t = C.thresholds(EC.NPE_SF, make_params(**FIG4, lam=0.6))
    assert t.ell == pytest.approx(0.4117647058823529)
    assert t.extra["rho_hat"] == pytest.approx(0.6938, abs=1e-4)
    assert t.delta_cb >= 0
    assert t.p_value == pytest.approx(t.pandering_rhs - 0.85)


def test_pecb_certified_across_the_unit_configuration():
    rng = np.random.default_rng(1)
    for rho, pi, beta, lam in rng.uniform(0.001, 0.999, (2000, 4)):
        p = make_params(rho=rho, pi=pi, beta=beta, lam=lam, E=1.0)
        assert C.certify(EC.PECB, p).verdict


def test_stand_firm_examples():
    below = C.certify(EC.NPE_SF, make_params(**FIG4, lam=0.3))
    assert not below.verdict
    assert "office_rent" in below.failed
    assert below.condition("office_rent").slack < 0
    assert C.certify(EC.NPE_SF, make_params(**FIG4, lam=0.6)).verdict


@pytest.mark.parametrize("ec", list(EC))
def test_certificate_shape(ec):
    cert = C.certify(ec, make_params(**FIG4, lam=0.6))
    assert [c.name for c in cert.conditions] == CONDITIONS[ec]
    assert cert.verdict == all(c.satisfied for c in cert.conditions)
    d = json.loads(json.dumps(cert.to_dict()))
    assert d["class"] == ec.value and set(d["conditions"][0]) == {
        "name", "anchor", "satisfied", "slack"}
    for c in cert.conditions:
        if math.isfinite(c.slack) and c.slack != 0 and c.name != "mixing_window":
            # positive slack means satisfied
            assert c.satisfied == (c.slack > 0)


def test_fig3_coexistence_band():
    p = make_params(**FIG3, lam=0.9)
    assert {EC.PECB, EC.PEPB} <= set(C.certified_classes(p))
    for lam in (0.01, 0.99):
        assert not C.certify(EC.PEPB, p.replace(lam=lam)).verdict


def test_unit_configuration_has_no_non_pandering_equilibrium():
    rng = np.random.default_rng(4)
    for rho, pi, beta, lam in rng.uniform(0.01, 0.99, (300, 4)):
        p = make_params(rho=rho, pi=pi, beta=beta, lam=lam, E=1.0)
        for ec in (EC.NPE_SF, EC.NPE_FSV, EC.NPE_ASV):
            assert not C.certify(ec, p).verdict


def test_high_influence_switches_to_stand_firm():
    p = make_params(**FIG4, lam=1 - 1e-6)
    assert not C.certify(EC.PECB, p).verdict
    assert C.certify(EC.NPE_SF, p).verdict


def test_pecb_knife_edge_is_certified():
    p = make_params(pi=0.5, rho=0.5, beta=0.5, lam=0.5)
    delta_cb = C.thresholds(EC.PECB, p).delta_cb
    edge = p.replace(v_yy=delta_cb)
    cond = C.certify(EC.PECB, edge).condition("mismatch_ratio")
    assert cond.slack == 0.0 and cond.satisfied


def test_endpoint_lambda_is_rejected_and_the_limit_slack_vanishes():
    p = make_params(pi=0.5, rho=0.5, beta=0.5, lam=0.0, E=1.0)
    with pytest.raises(EndpointError):
        C.certify(EC.PECB, p)
    slacks = [C.certify(EC.PECB, p.replace(lam=lam)).condition("rent_support").slack
              for lam in (1e-2, 1e-4, 1e-6)]
    assert all(s > 0 for s in slacks)
    assert slacks[0] > slacks[1] > slacks[2]
    assert slacks[2] < 1e-6


def test_completeness_note_is_exposed():
    assert "small lambda" in C.COMPLETENESS_NOTE


@settings(max_examples=300)
@given(unit, unit, unit, unit, st.floats(-3, 3), st.floats(1.001, 100))
def test_pandering_conditions_are_mutually_exclusive(rho, pi, beta, lam, office, v_xx):
    p = make_params(rho=rho, pi=pi, beta=beta, lam=lam, E=office, v_xx=v_xx)
    pandering = C.certify(EC.PECB, p).condition("office_rent").slack
    non_pandering = C.certify(EC.NPE_SF, p).condition("office_rent").slack
    assert not (pandering > 0 and non_pandering > 0)


@settings(max_examples=300)
@given(unit, unit, unit, unit, st.floats(0.01, 0.99), st.floats(0, 1))
def test_pecb_mismatch_condition_holds_for_costly_y_mistakes(rho, pi, beta, lam, delta, extra):
    p = make_params(rho=rho, pi=pi, beta=beta, lam=lam, delta=delta, v_yy=1.0 + extra)
    assert C.certify(EC.PECB, p).condition("mismatch_ratio").satisfied


@settings(max_examples=300)
@given(unit, unit, unit, st.floats(0.02, 0.98).filter(lambda v: abs(v - 0.5) > 1e-6),
       st.floats(0, 3), st.floats(0.1, 10))
def test_subversive_window_order_flips_at_half(rho, pi, beta, lam, office, r_bar):
    p = make_params(rho=rho, pi=pi, beta=beta, lam=lam, E=office, rent_p2_upper=r_bar)
    assert (C.psi_star(p) < C.psi_tilde(p)) == (lam > 0.5)


@settings(max_examples=300)
@given(unit, unit, unit, unit, st.floats(0, 3), st.floats(0.1, 10))
def test_subversive_influence_roots(rho, pi, beta, lam, office, r_bar):
    # the roots need mu_2^P + E > 0, which E >= 0 guarantees
    p = make_params(rho=rho, pi=pi, beta=beta, lam=lam, E=office, rent_p2_upper=r_bar)
    low, high = C.lambda_star(p), C.lambda_prime(p)
    assume(math.isfinite(low))
    assert 0.5 < low < 1
    if math.isfinite(high):
        assert low < high < 1


def test_boundary_bisection_locates_ell():
    p = make_params(**FIG4, lam=0.5)
    found = C.condition_boundary(EC.NPE_SF, "office_rent", p, 0.2, 0.8)
    assert found == pytest.approx(C.ell(p), abs=1e-10)


def test_boundary_bisection_on_pepb_mismatch():
    p = make_params(**FIG3, lam=0.5)
    edge = C.condition_boundary(EC.PEPB, "mismatch_ratio", p, 0.05, 0.2)
    slack = lambda lam: C.certify(EC.PEPB, p.replace(lam=lam)).condition("mismatch_ratio").slack
    assert slack(edge - 1e-8) * slack(edge + 1e-8) < 0
    assert edge == pytest.approx(0.13571, abs=1e-5)


def test_vectorized_curve_matches_scalar_thresholds():
    p = make_params(**FIG4, lam=0.5)
    lams = np.linspace(0.42, 0.98, 15)
    curve = C.npe_sf_bound_curve(p, lams)
    for lam, rho_hat, mu in zip(lams, curve["rho_hat"], curve["mu_hat"]):
        t = C.thresholds(EC.NPE_SF, p.replace(lam=lam))
        assert rho_hat == pytest.approx(t.extra["rho_hat"], abs=1e-14)
        assert mu == pytest.approx(t.mu_hat, rel=1e-13)
    with pytest.raises(EndpointError):
        C.npe_sf_bound_curve(p, [0.0, 0.5])


@pytest.mark.parametrize("ec", list(EC))
def test_generated_points_are_certified(ec):
    cfgs = points.certified_configs()[ec]
    assert len(cfgs) == 40
    for cfg in cfgs:
        assert C.certify(ec, make_params(**cfg)).verdict
