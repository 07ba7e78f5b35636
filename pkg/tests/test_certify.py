"""Certification engine and the individual inequality certificates."""

import dataclasses
import json
from fractions import Fraction

import numpy as np
import pytest

from repulse import certify as cert
from repulse.auxfn import build_coefficients, psi_float
from repulse.certify import (
    BnbPolicy,
    certify_L,
    certify_L_large,
    certify_T,
    certify_T_large,
    certify_all,
    certify_allthestars_large,
    certify_eta0,
    certify_eta1,
    certify_eta_ge2,
    certify_psi4_le_F4,
    certify_psihat_nonneg,
    certify_w_inequality,
    certificates_to_json,
    mean_value_L_term,
    prove_nonneg,
)
from repulse.interval import Interval, PI, pow_int, sin
from repulse.potential import F_alpha_second


# -- engine ------------------------------------------------------------------

def test_engine_square_is_nonnegative():
    c = prove_nonneg(lambda x: pow_int(x, 2), Interval(-1, 1))
    assert c.status == "verified"
    assert c.min_lower_bound >= 0.0


def test_engine_failure_attaches_valid_witness():
    f = lambda x: x - 10.0
    c = prove_nonneg(f, Interval(0, 1))
    assert c.status == "failed"
    assert c.witness is not None
    assert f(Interval(c.witness)).hi < 0.0


def test_engine_sine_positive_piece():
    c = prove_nonneg(sin, Interval(0.1, 3.0))
    assert c.status == "verified"


def test_engine_budget_exhaustion_is_inconclusive():
    c = prove_nonneg(lambda x: x, Interval(-1e-9, 1.0), BnbPolicy(max_depth=4))
    assert c.status == "inconclusive"


def test_engine_zero_depth_policy():
    c = prove_nonneg(lambda x: Interval(1.0), Interval(0, 1), BnbPolicy(max_depth=0))
    assert c.status == "inconclusive"


# -- T and L -----------------------------------------------------------------

def test_T_small_alphas(ctx_by_alpha):
    for a in (4, 6, 8, 10):
        c = certify_T(ctx_by_alpha[a])
        assert c.status == "verified" and c.min_lower_bound > 0.0


def test_T_detects_perturbation(ctx4):
    # inflating the first coefficient eats the margin: doubling F(1) costs
    # exactly 2 F(1) ~ 0.4 of slack and 4x pushes the constant negative
    coeffs = build_coefficients(ctx4, 64)
    base = cert._T_value(coeffs)
    doubled = dataclasses.replace(
        coeffs, Fn=(coeffs.Fn[0], 2.0 * coeffs.Fn[1], *coeffs.Fn[2:]))
    assert cert._T_value(doubled).hi < base.lo
    quadrupled = dataclasses.replace(
        coeffs, Fn=(coeffs.Fn[0], 4.0 * coeffs.Fn[1], *coeffs.Fn[2:]))
    assert cert._T_value(quadrupled).hi < 0.0


def test_T_large_examples():
    assert certify_T_large(12).status == "verified"
    assert certify_T_large(100).status == "verified"
    with pytest.raises(ValueError):
        certify_T_large(4)


def test_L_small_alphas(ctx_by_alpha):
    for a in (6, 8, 10):
        c = certify_L(ctx_by_alpha[a])
        assert c.status == "verified" and c.min_lower_bound > 0.0


def test_L_rejects_alpha4(ctx4):
    with pytest.raises(ValueError):
        certify_L(ctx4)


def test_L_sensitive_to_remainder_kernel(ctx6):
    # replacing R(pi n) by its limit 1/6 flips the sign at alpha = 6:
    # float recomputation documents that the kernel term carries the margin
    coeffs = build_coefficients(ctx6, 64)
    total = 0.0
    for n in range(1, 65):
        total += 2.0 * (n ** 3 * coeffs.dFn[n].mid * (4.0 / 6.0 - 2.0 / 3.0)
                        - 2.0 * n * n * coeffs.Fn[n].mid)
    assert total < 0.0
    assert cert._L_value(coeffs).lo > 0.0


def test_L_large_examples():
    assert certify_L_large(12).status == "verified"
    assert certify_L_large(40).status == "verified"


# -- the w inequality ---------------------------------------------------------

def test_w_inequality_displayed_form():
    c = certify_w_inequality()
    assert c.status == "verified"
    assert c.boxes_processed <= 10_000


def test_w_inequality_tail_piece():
    # 3(pi/2) - 4 > 0 is what absorbs w >= pi/2 in the displayed form
    v = 3.0 * (PI / 2.0) - 4.0
    assert v.lo > 0.0


def test_w_inequality_context_variant(ctx4):
    c = certify_w_inequality(ctx4)
    assert c.status == "verified"


# -- composite transform positivity -------------------------------------------

def test_psihat_nonneg_alpha4(coeffs4):
    c = certify_psihat_nonneg(coeffs4)
    assert c.status == "verified"


def test_psihat_nonneg_alpha8(ctx8):
    c = certify_psihat_nonneg(build_coefficients(ctx8, 64))
    assert c.status == "verified"


# -- psi4 <= F4 ----------------------------------------------------------------

def test_mean_value_term_examples(ctx4):
    at9 = mean_value_L_term(ctx4, Interval(9.0), 9)
    ref = 0.5 * F_alpha_second(ctx4, Interval(9.0))
    assert at9.overlaps(ref) and at9.lo > 0.0
    at0 = mean_value_L_term(ctx4, Interval(0.5), 0)
    assert at0.contains(Fraction(-4, 5))  # (F(1/2) - 1)/(1/4) at the exact spacing
    far = mean_value_L_term(ctx4, Interval(0.25), 40)
    d = 40.0 - 0.25
    bound = (2.0 + abs(ctx4.dF1.lo) * d) / (d * d)
    assert abs(far.lo) <= bound and abs(far.hi) <= bound


def test_psi4_certificate(ctx4):
    c = certify_psi4_le_F4(ctx4)
    assert c.status == "verified"
    assert c.min_lower_bound >= 0.0


def test_psi4_thin_point_at_zero(ctx4):
    # at x = 0 the n and -n terms coincide, so the full sum is
    # L(0, 0) + 2 sum_{n >= 1} L(0, n), every piece evaluable directly
    total = mean_value_L_term(ctx4, Interval(0.0), 0)
    for n in range(1, 65):
        total = total + 2.0 * mean_value_L_term(ctx4, Interval(0.0), n)
    assert total.lo > 0.0


def test_psi4_grid_corroboration(coeffs4):
    xs = np.linspace(0.0, 12.0, 10001)
    vals = psi_float(coeffs4, xs)
    F = 1.0 / (1.0 + coeffs4.ctx.s_pow_alpha.mid * xs ** 4)
    assert bool((vals <= F + 1e-12).all())


# -- the nearest-integer cases -------------------------------------------------

def test_eta0(ctx6, ctx8):
    assert certify_eta0(ctx6).status == "verified"
    assert certify_eta0(ctx8).status == "verified"


def test_eta0_large_route():
    from repulse.potential import solve_s_alpha

    c = certify_eta0(solve_s_alpha(12, 1e-10))
    assert c.status == "verified"
    assert "large" in c.domain


def test_eta1(ctx6, ctx8):
    for ctx in (ctx6, ctx8):
        c = certify_eta1(ctx)
        assert c.status == "verified"
        assert c.min_lower_bound > 0.0


def test_eta1_rejects_alpha4(ctx4):
    with pytest.raises(ValueError):
        certify_eta1(ctx4)


def test_eta_ge2(ctx6):
    c = certify_eta_ge2(ctx6)
    assert c.status == "verified"


def test_allthestars_large():
    for a in (16, 50, 100):
        assert certify_allthestars_large(a).status == "verified"
    with pytest.raises(ValueError):
        certify_allthestars_large(14)


# -- invariants ----------------------------------------------------------------

def test_soundness_rerun_double_budget(ctx6):
    a = certify_eta1(ctx6, N=64)
    b = certify_eta1(ctx6, N=128, policy=BnbPolicy(max_depth=96))
    assert a.status == b.status == "verified"


def test_min_lower_bound_monotone_in_depth():
    a = certify_w_inequality(policy=BnbPolicy(max_depth=48))
    b = certify_w_inequality(policy=BnbPolicy(max_depth=60))
    assert b.min_lower_bound >= a.min_lower_bound


def test_certificate_determinism(ctx6):
    a = certify_L(ctx6).to_json_dict()
    b = certify_L(ctx6).to_json_dict()
    a.pop("wall_time_ms")
    b.pop("wall_time_ms")
    assert json.dumps(a) == json.dumps(b)


def test_json_field_order(ctx6):
    d = certify_T(ctx6).to_json_dict()
    assert list(d.keys()) == [
        "inequality_id", "alpha", "domain", "status", "boxes_processed",
        "max_depth", "min_lower_bound", "wall_time_ms", "witness",
        "paper_anchor", "policy",
    ]
    text = certificates_to_json([certify_T(ctx6)])
    parsed = json.loads(text)
    assert parsed[0]["inequality_id"] == "T_alpha"


def test_certify_all_rejects_odd():
    with pytest.raises(ValueError):
        certify_all(5)


def test_certify_all_alpha4(ctx4):
    certs = certify_all(4, ctx=ctx4)
    assert all(c.status == "verified" for c in certs)
    ids = {c.inequality_id for c in certs}
    assert {"psihat_nonneg", "w_inequality", "psi4_le_F4"} <= ids
