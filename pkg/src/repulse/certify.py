"""Branch-and-bound interval proofs of the positivity inequalities.

Every certificate is produced by sign-certified interval evaluation: a box
is discharged only when the enclosure's lower bound is >= 0 exactly (no
epsilon), infinite sums carry rigorous tails pushed in the unfavorable
direction, and failures attach a point witness with a rigorously negative
enclosure.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .auxfn import AuxCoefficients, build_coefficients
from .interval import Interval, PI, PI_SQ, hull, pow_int, remainder_R, s3_kernel, sinc
from .potential import (
    F_alpha,
    F_alpha_second,
    F_deficit_over_x_sq,
    PotentialContext,
    power_sum_tail,
    solve_s_alpha,
)

__all__ = [
    "BnbPolicy",
    "Certificate",
    "prove_nonneg",
    "certify_T",
    "certify_T_large",
    "certify_L",
    "certify_L_large",
    "certify_w_inequality",
    "certify_psihat_nonneg",
    "mean_value_L_term",
    "certify_psi4_le_F4",
    "certify_eta0",
    "certify_eta1",
    "certify_eta_ge2",
    "certify_allthestars_large",
    "certify_all",
    "certificates_to_json",
]

VERIFIED = "verified"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"

_ONE = Interval(1.0)
_ZERO = Interval(0.0)
_TWO_THIRDS = Interval.from_fraction(Fraction(2, 3))

_SMALL_ALPHA_T = (4, 6, 8, 10)
_SMALL_ALPHA_L = (6, 8, 10)
_ETA_BNB_ALPHA = (6, 8, 10, 12, 14)


@dataclass(frozen=True)
class BnbPolicy:
    """Branch-and-bound budget; boxes split by bisecting the widest side."""

    max_depth: int = 48
    budget: int = 10_000_000

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be >= 1")


@dataclass
class Certificate:
    inequality_id: str
    alpha: int
    domain: str
    status: str
    boxes_processed: int
    max_depth: int
    min_lower_bound: float
    wall_time_ms: int
    witness: float | None
    paper_anchor: str
    policy: BnbPolicy

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    def to_json_dict(self) -> dict:
        mlb = self.min_lower_bound
        return {
            "inequality_id": self.inequality_id,
            "alpha": self.alpha,
            "domain": self.domain,
            "status": self.status,
            "boxes_processed": self.boxes_processed,
            "max_depth": self.max_depth,
            "min_lower_bound": None if math.isnan(mlb) else mlb,
            "wall_time_ms": self.wall_time_ms,
            "witness": self.witness,
            "paper_anchor": self.paper_anchor,
            "policy": {"max_depth": self.policy.max_depth, "budget": self.policy.budget},
        }


def certificates_to_json(certs) -> str:
    return json.dumps([c.to_json_dict() for c in certs], indent=2)


# ---------------------------------------------------------------------------
# The generic engine.
# ---------------------------------------------------------------------------

@dataclass
class _Run:
    """Mutable accumulator shared by the pieces of one certificate."""

    boxes: int = 0
    max_depth: int = 0
    min_lb: float = math.inf
    status: str = VERIFIED
    witness: float | None = None

    def merge_value(self, v: Interval, at: float) -> bool:
        """Account a direct (non-subdivided) evaluation; True if discharged."""
        self.boxes += 1
        if v.lo >= 0.0:
            self.min_lb = min(self.min_lb, v.lo)
            return True
        if v.hi < 0.0:
            self.status = FAILED
            self.witness = at
            self.min_lb = min(self.min_lb, v.lo)
        elif self.status == VERIFIED:
            self.status = INCONCLUSIVE
        return False


def _bnb(run: _Run, f, lo: float, hi: float, policy: BnbPolicy) -> None:
    """Discharge f >= 0 on [lo, hi] into `run`; stops early on failure."""
    if policy.max_depth < 1:
        run.status = INCONCLUSIVE
        return
    stack = [(lo, hi, 0)]
    while stack:
        if run.status == FAILED:
            return
        a, b, depth = stack.pop()
        run.boxes += 1
        run.max_depth = max(run.max_depth, depth)
        if run.boxes > policy.budget:
            run.status = INCONCLUSIVE
            return
        v = f(Interval(a, b))
        if v.lo >= 0.0:
            run.min_lb = min(run.min_lb, v.lo)
            continue
        m = 0.5 * (a + b)
        vm = f(Interval(m, m))
        if vm.hi < 0.0:
            run.status = FAILED
            run.witness = m
            run.min_lb = min(run.min_lb, vm.lo)
            return
        if depth >= policy.max_depth or m <= a or m >= b:
            run.status = INCONCLUSIVE
            return
        stack.append((m, b, depth + 1))
        stack.append((a, m, depth + 1))


def _finish(run: _Run, *, inequality_id: str, alpha: int, domain: str,
            paper_anchor: str, policy: BnbPolicy, t0: float) -> Certificate:
    return Certificate(
        inequality_id=inequality_id,
        alpha=alpha,
        domain=domain,
        status=run.status,
        boxes_processed=run.boxes,
        max_depth=run.max_depth,
        min_lower_bound=run.min_lb if math.isfinite(run.min_lb) else math.nan,
        wall_time_ms=int((time.perf_counter() - t0) * 1000),
        witness=run.witness,
        paper_anchor=paper_anchor,
        policy=policy,
    )


def prove_nonneg(f, domain: Interval, policy: BnbPolicy | None = None, *,
                 inequality_id: str = "custom", alpha: int = 0,
                 domain_desc: str | None = None, paper_anchor: str = "") -> Certificate:
    """Certify f(x) >= 0 on the domain by branch-and-bound subdivision."""
    policy = policy or BnbPolicy()
    t0 = time.perf_counter()
    run = _Run()
    _bnb(run, f, domain.lo, domain.hi, policy)
    return _finish(
        run,
        inequality_id=inequality_id,
        alpha=alpha,
        domain=domain_desc or f"[{domain.lo!r}, {domain.hi!r}]",
        paper_anchor=paper_anchor,
        policy=policy,
        t0=t0,
    )


def _constant_certificate(value: Interval, *, inequality_id: str, alpha: int,
                          domain: str, paper_anchor: str,
                          policy: BnbPolicy | None = None) -> Certificate:
    policy = policy or BnbPolicy()
    t0 = time.perf_counter()
    run = _Run()
    if policy.max_depth < 1:
        run.status = INCONCLUSIVE
    else:
        run.merge_value(value, at=0.0)
    return _finish(run, inequality_id=inequality_id, alpha=alpha, domain=domain,
                   paper_anchor=paper_anchor, policy=policy, t0=t0)


# ---------------------------------------------------------------------------
# The transform-positivity constants T(alpha) and L(alpha).
# ---------------------------------------------------------------------------

def _T_value(coeffs: AuxCoefficients) -> Interval:
    """T = (1/2)(1 - 2 sum_{n>=1} F(n)) - (1/pi) sum_{n>=2} |F'(n)|."""
    SF = _ZERO
    SdF = _ZERO
    for n in range(1, coeffs.N + 1):
        SF = SF + coeffs.Fn[n]
        if n >= 2:
            SdF = SdF + abs(coeffs.dFn[n])
    SF = SF + coeffs.tail_F
    SdF = SdF + coeffs.tail_dF
    return 0.5 * (_ONE - 2.0 * SF) - SdF / PI


def certify_T(ctx: PotentialContext, N: int = 64,
              policy: BnbPolicy | None = None) -> Certificate:
    """Single-constant proof of the transform's positivity on [0, 1/2]."""
    if ctx.alpha not in _SMALL_ALPHA_T:
        raise ValueError("interval route for T covers alpha in {4, 6, 8, 10}")
    coeffs = build_coefficients(ctx, N)
    return _constant_certificate(
        _T_value(coeffs),
        inequality_id="T_alpha",
        alpha=ctx.alpha,
        domain=f"constant check, head N={N}",
        paper_anchor="T(alpha) = (1/2)(1 - 2*sum F(n)) - (1/pi)*sum_{n>=2}|F'(n)| >= 0",
        policy=policy,
    )


def certify_T_large(alpha: int, policy: BnbPolicy | None = None) -> Certificate:
    """Closed lower bound for T(alpha), valid for alpha >= 12."""
    if alpha < 12 or alpha % 2:
        raise ValueError("closed T bound requires even alpha >= 12")
    p2 = pow_int(Interval(2.0), alpha)
    val = 0.5 * (_ONE - _ONE / (alpha - 2)
                 - Interval(2.0) / alpha * (alpha + 1) / (p2 * (alpha - 1))) \
        - (_ONE / PI) * (alpha + 2) / (alpha * 2.0 * p2)
    return _constant_certificate(
        val,
        inequality_id="T_alpha",
        alpha=alpha,
        domain="closed-bound evaluation (large alpha)",
        paper_anchor="(1/2)(1 - 1/(a-2) - (2/a)(a+1)/(2^a(a-1))) - (1/pi)(a+2)/(a 2^(a+1)) >= 0",
        policy=policy,
    )


def _L_value(coeffs: AuxCoefficients) -> Interval:
    """L = sum_n n^3 F'(n)(-2/3 + 4R(pi n)) - sum_n 2 n^2 F(n), over Z."""
    acc = _ZERO
    for n in range(1, coeffs.N + 1):
        kern = 4.0 * remainder_R(PI * n) - _TWO_THIRDS
        acc = acc + float(n) ** 3 * coeffs.dFn[n] * kern - (2.0 * n * n) * coeffs.Fn[n]
    total = 2.0 * acc
    t2 = coeffs.tail_n2F.hi
    return total + Interval(-4.0 * t2, (4.0 * coeffs.ctx.alpha / 3.0) * t2)


def certify_L(ctx: PotentialContext, N: int = 64,
              policy: BnbPolicy | None = None) -> Certificate:
    """Single-constant proof of the transform's positivity on [1/2, 1].

    alpha in {6, 8, 10} evaluates the kernel-weighted sum directly;
    alpha >= 12 takes the closed lower-bound route.
    """
    if ctx.alpha >= 12:
        return certify_L_large(ctx.alpha, policy)
    if ctx.alpha not in _SMALL_ALPHA_L:
        raise ValueError("the L route needs alpha >= 6 (alpha = 4 goes through the w inequality)")
    coeffs = build_coefficients(ctx, N)
    return _constant_certificate(
        _L_value(coeffs),
        inequality_id="L_alpha",
        alpha=ctx.alpha,
        domain=f"constant check, head N={N}",
        paper_anchor="L(alpha) = sum n^3 F'(n)(-2/3+4R(pi n)) - sum 2 n^2 F(n) >= 0",
        policy=policy,
    )


def certify_L_large(alpha: int, policy: BnbPolicy | None = None) -> Certificate:
    """Closed lower bound for L(alpha), valid for alpha >= 12."""
    if alpha < 12 or alpha % 2:
        raise ValueError("closed L bound requires even alpha >= 12")
    r_pi = remainder_R(PI)
    lead = (_ONE - _ONE / (2 * alpha - 4)) * (_TWO_THIRDS - 4.0 * r_pi)
    mid = Interval(4.0) * (alpha - 1) / (pow_int(Interval(2.0), alpha - 2)
                                         * (2 * alpha - 5) * (alpha - 3))
    val = lead - mid - Interval(2.0) / (alpha - 2)
    return _constant_certificate(
        val,
        inequality_id="L_alpha",
        alpha=alpha,
        domain="closed-bound evaluation (large alpha)",
        paper_anchor="(1-1/(2a-4))(2/3-4R(pi)) - 4(a-1)/(2^(a-2)(2a-5)(a-3)) - 2/(a-2) >= 0",
        policy=policy,
    )


# ---------------------------------------------------------------------------
# The alpha = 4 scalar inequality in w (cancellation-free kernel form).
# ---------------------------------------------------------------------------

def certify_w_inequality(ctx: PotentialContext | None = None,
                         policy: BnbPolicy | None = None) -> Certificate:
    """8w - 4 sin 2w - 5 w sin^2 w >= 0, certified as c*S3(2w) - 2 sinc(w)^2 >= 0.

    With no context the displayed constant 5 is used (c = 64/5); with an
    alpha = 4 context the constant becomes 4*(1 - F(1)) from its enclosure,
    which is what the transform-positivity reduction actually consumes.
    Covers [0, pi/2] by branch-and-bound; for w >= pi/2 the scaled form is
    bounded below by (c1 - 2) w - c1/2, checked at w = pi/2 and increasing.
    """
    policy = policy or BnbPolicy()
    t0 = time.perf_counter()
    if ctx is None:
        c1 = Interval.from_fraction(Fraction(16, 5))
        tag = "8w - 4 sin(2w) - 5 w sin(w)^2 >= 0, via 32 S3(2w) - 5 sinc(w)^2 >= 0"
    else:
        if ctx.alpha != 4:
            raise ValueError("the w inequality is the alpha = 4 route")
        c1 = Interval(4.0 * (_ONE - ctx.F1).lo)
        tag = "4(1-F4(1)) S3-form of the half-angle inequality"
    four_c1 = 4.0 * c1

    def f(w: Interval) -> Interval:
        return four_c1 * s3_kernel(2.0 * w) - 2.0 * pow_int(sinc(w), 2)

    run = _Run()
    if policy.max_depth < 1:
        run.status = INCONCLUSIVE
    else:
        # w >= pi/2 piece: the w^3-scaled form is >= (c1-2) w - c1/2, which
        # increases in w only when c1 > 2, so that slope is certified first
        slope_ok = run.merge_value(c1 - 2.0, at=0.0)
        tail_val = (c1 - 2.0) * Interval(PI.lo / 2.0) - 0.5 * c1
        if slope_ok and run.merge_value(tail_val, at=math.pi / 2.0):
            _bnb(run, f, 0.0, (PI / 2.0).hi, policy)
    return _finish(
        run,
        inequality_id="w_inequality",
        alpha=4,
        domain="[0, pi/2] branch-and-bound + analytic piece for w >= pi/2",
        paper_anchor=tag,
        policy=policy,
        t0=t0,
    )


# ---------------------------------------------------------------------------
# Composite transform positivity.
# ---------------------------------------------------------------------------

def _combine(parts, *, inequality_id: str, alpha: int, domain: str,
             paper_anchor: str, policy: BnbPolicy, t0: float) -> Certificate:
    status = VERIFIED
    if any(p.status == FAILED for p in parts):
        status = FAILED
    elif any(p.status == INCONCLUSIVE for p in parts):
        status = INCONCLUSIVE
    witness = next((p.witness for p in parts if p.status == FAILED), None)
    lbs = [p.min_lower_bound for p in parts if not math.isnan(p.min_lower_bound)]
    return Certificate(
        inequality_id=inequality_id,
        alpha=alpha,
        domain=domain,
        status=status,
        boxes_processed=sum(p.boxes_processed for p in parts),
        max_depth=max((p.max_depth for p in parts), default=0),
        min_lower_bound=min(lbs) if lbs else math.nan,
        wall_time_ms=int((time.perf_counter() - t0) * 1000),
        witness=witness,
        paper_anchor=paper_anchor,
        policy=policy,
    )


def _monotone_coefficient_check(coeffs: AuxCoefficients) -> Interval:
    """min over n >= 2 of F(1) - F(n), which must be certifiably >= 0."""
    worst = Interval(1.0)
    F1 = coeffs.Fn[1]
    for n in range(2, coeffs.N + 1):
        d = F1 - coeffs.Fn[n]
        if d.lo < worst.lo:
            worst = d
    return worst


def certify_psihat_nonneg(coeffs: AuxCoefficients,
                          policy: BnbPolicy | None = None) -> Certificate:
    """Composite proof that the transform is nonnegative everywhere.

    [0, 1/2] is discharged by the T constant; [1/2, 1] by the L constant
    (alpha >= 6) or the w-inequality route (alpha = 4, with the constant
    taken from the F(1) enclosure and the coefficient monotonicity checked
    rather than assumed); |xi| >= 1 is the support condition.
    """
    policy = policy or BnbPolicy()
    t0 = time.perf_counter()
    ctx = coeffs.ctx
    alpha = ctx.alpha
    parts = []
    if alpha in _SMALL_ALPHA_T:
        parts.append(certify_T(ctx, coeffs.N, policy))
    else:
        parts.append(certify_T_large(alpha, policy))
    if alpha == 4:
        parts.append(certify_w_inequality(ctx, policy))
        parts.append(_constant_certificate(
            _monotone_coefficient_check(coeffs),
            inequality_id="w_inequality", alpha=4,
            domain="reduction side condition: F(n) <= F(1) for n >= 2",
            paper_anchor="1 - F4(n) >= 1 - F4(1) for n >= 1",
            policy=policy))
    elif alpha in _SMALL_ALPHA_L:
        parts.append(certify_L(ctx, coeffs.N, policy))
    else:
        parts.append(certify_L_large(alpha, policy))
    return _combine(
        parts,
        inequality_id="psihat_nonneg",
        alpha=alpha,
        domain="[0,1/2] via T, [1/2,1] via L or the w route, 0 beyond support",
        paper_anchor="transform of psi nonnegative on the whole line",
        policy=policy,
        t0=t0,
    )


# ---------------------------------------------------------------------------
# psi_4 <= F_4 on [0, 9] (plus the displayed constant for x >= 9).
# ---------------------------------------------------------------------------

def mean_value_L_term(ctx: PotentialContext, x: Interval, n: int) -> Interval:
    """Enclosure of L(x, n) = (F(x) - F(n) - F'(n)(x - n))/(x - n)^2.

    n = 0 uses the exact closed form (F(x) - 1)/x^2 = -s^a x^(a-2) F(x);
    boxes at distance >= 0.25 from n use the quotient; nearer boxes use the
    mean-value enclosure (1/2) F''(hull(x, n)), intersected with the
    quotient whenever the box still excludes n (the hull alone cannot
    shrink with subdivision right at the switchover distance).
    """
    if n == 0:
        return F_deficit_over_x_sq(ctx, x)
    nf = float(n)
    dist = max(x.lo - nf, nf - x.hi)
    Fx = F_alpha(ctx, x)

    def quotient() -> Interval:
        Fn = F_alpha(ctx, Interval(nf))
        dFn = -ctx.alpha * Fn * (_ONE - Fn) / nf
        d = x - nf
        return (Fx - Fn - dFn * d) / pow_int(d, 2)

    if dist >= 0.25:
        return quotient()
    out = 0.5 * _second_derivative_any(ctx, hull(x, Interval(nf)))
    if dist > 0.0:
        out = out.intersect(quotient())
    return out


def _second_derivative_any(ctx: PotentialContext, x: Interval) -> Interval:
    """F'' enclosure valid on any x >= 0 (free form when 0 is inside)."""
    F = F_alpha(ctx, x)
    bracket = ctx.alpha * (_ONE - 2.0 * F) + 1.0
    if x.lo > 0.0:
        return ctx.alpha * F * (_ONE - F) * bracket / pow_int(x, 2)
    return ctx.alpha * ctx.s_pow_alpha * pow_int(x, ctx.alpha - 2) * pow_int(F, 2) * bracket


def _sum_3n2F_n3dF(coeffs: AuxCoefficients) -> Interval:
    """Enclosure of sum_{n in Z} (3 n^2 F(n) + n^3 F'(n))."""
    acc = _ZERO
    for n in range(1, coeffs.N + 1):
        acc = acc + (3.0 * n * n) * coeffs.Fn[n] + float(n) ** 3 * coeffs.dFn[n]
    b = ((3.0 + coeffs.ctx.alpha) * coeffs.tail_n2F).hi
    return 2.0 * acc + Interval(-2.0 * b, 2.0 * b)


def certify_psi4_le_F4(ctx: PotentialContext | None = None, N: int = 64,
                       policy: BnbPolicy | None = None) -> Certificate:
    """sum_{n in Z} L4(x, n) >= 0 on [0, 9] by branch-and-bound.

    The x >= 9 range is discharged by the displayed constant inequality
    -sum(3n^2 F + n^3 F') >= 10/81 + 1/81 + (5/2) F(9), evaluated in
    interval arithmetic (the surrounding hand derivation is trusted).
    """
    policy = policy or BnbPolicy()
    t0 = time.perf_counter()
    if ctx is None:
        ctx = solve_s_alpha(4)
    if ctx.alpha != 4:
        raise ValueError("this route is specific to alpha = 4")
    if N < 16:
        raise ValueError("need N >= 16 for the tail bounds")
    coeffs = build_coefficients(ctx, N)
    Fn, dFn = coeffs.Fn, coeffs.dFn
    alpha = 4
    tail_lo = ((8.0 + 4.0 * alpha) * power_sum_tail(alpha + 2, N + 1) / ctx.s_pow_alpha).hi
    geo = power_sum_tail(2, N - 8).hi + power_sum_tail(2, N + 1).hi

    def lsum(x: Interval) -> Interval:
        Fx = F_alpha(ctx, x)
        acc = F_deficit_over_x_sq(ctx, x)
        for n in range(1, N + 1):
            nf = float(n)
            dist = max(x.lo - nf, nf - x.hi)
            if dist >= 0.25:
                d = x - nf
                acc = acc + (Fx - Fn[n] - dFn[n] * d) / pow_int(d, 2)
            else:
                term = 0.5 * _second_derivative_any(ctx, hull(x, Interval(nf)))
                if dist > 0.0:
                    d = x - nf
                    term = term.intersect((Fx - Fn[n] - dFn[n] * d) / pow_int(d, 2))
                acc = acc + term
            dm = x + nf
            acc = acc + (Fx - Fn[n] + dFn[n] * dm) / pow_int(dm, 2)
        tail_hi = Fx.hi * geo + tail_lo
        return acc + Interval(-tail_lo, tail_hi)

    run = _Run()
    if policy.max_depth < 1:
        run.status = INCONCLUSIVE
    else:
        far = -_sum_3n2F_n3dF(coeffs) - Interval.from_fraction(Fraction(11, 81)) \
            - 2.5 * Fn[9]
        if run.merge_value(far, at=9.0):
            _bnb(run, lsum, 0.0, 9.0, policy)
    return _finish(
        run,
        inequality_id="psi4_le_F4",
        alpha=4,
        domain="[0, 9] branch-and-bound + displayed constant for x >= 9 (assumption recorded)",
        paper_anchor="sum_n (F4(x) - F4(n) - F4'(n)(x-n))/(x-n)^2 >= 0",
        policy=policy,
        t0=t0,
    )


# ---------------------------------------------------------------------------
# The three nearest-integer cases of psi <= F for alpha >= 6.
# ---------------------------------------------------------------------------

def certify_eta0(ctx: PotentialContext, N: int = 64,
                 policy: BnbPolicy | None = None) -> Certificate:
    """Constant check covering 0 <= x <= 1/2 of psi <= F.

    4(F(1/2) - 1) + sum_{n!=0}(F(1/2) - F(n))/n^2 >= sum_{n!=0} n F'(n)/(1/4 - n^2),
    with the side condition F(1/2) >= 2/alpha that the reduction uses.
    """
    alpha = ctx.alpha
    policy = policy or BnbPolicy()
    t0 = time.perf_counter()
    if alpha >= 12:
        rhs = Interval(4.0 * alpha) / (3.0 * alpha - 6.0) \
            + Interval(float(alpha + 1)) / (pow_int(Interval(2.0), alpha) * (alpha - 1))
        lhs = Interval.from_fraction(Fraction(-4, 100)) \
            + Interval.from_fraction(Fraction(94, 100)) * PI_SQ / 3.0
        val = lhs - rhs
        run = _Run()
        run.merge_value(val, at=0.0)
        return _finish(run, inequality_id="eta0", alpha=alpha,
                       domain="closed-bound evaluation (large alpha)",
                       paper_anchor="-0.04 + 0.94 pi^2/3 >= 4a/(3a-6) + 2^-a (a+1)/(a-1)",
                       policy=policy, t0=t0)
    if alpha not in _SMALL_ALPHA_L:
        raise ValueError("eta0 interval route covers alpha in {6, 8, 10}")
    coeffs = build_coefficients(ctx, N)
    F_half = F_alpha(ctx, Interval(0.5))
    lhs = 4.0 * (F_half - 1.0) + F_half * PI_SQ / 3.0
    s = _ZERO
    r = _ZERO
    for n in range(1, N + 1):
        s = s + coeffs.Fn[n] / (n * n)
        r = r + (n * coeffs.dFn[n]) / (0.25 - n * n)
    tail_q = (power_sum_tail(alpha + 2, N + 1) / ctx.s_pow_alpha).hi
    lhs = lhs - 2.0 * (s + Interval(0.0, tail_q))
    rhs = 2.0 * (r + Interval(0.0, (16.0 * alpha / 15.0) * tail_q))
    side = F_half - Interval(2.0) / alpha
    parts = [
        _constant_certificate(lhs - rhs, inequality_id="eta0", alpha=alpha,
                              domain=f"constant check, head N={N}",
                              paper_anchor="4(F(1/2)-1) + sum (F(1/2)-F(n))/n^2 "
                                           ">= sum n F'(n)/(1/4-n^2)",
                              policy=policy),
        _constant_certificate(side, inequality_id="eta0", alpha=alpha,
                              domain="reduction side condition F(1/2) >= 2/alpha",
                              paper_anchor="F(1/2) >= 2/alpha",
                              policy=policy),
    ]
    return _combine(parts, inequality_id="eta0", alpha=alpha,
                    domain=f"constant check + side condition, head N={N}",
                    paper_anchor="4(F(1/2)-1) + sum (F(1/2)-F(n))/n^2 >= sum n F'(n)/(1/4-n^2)",
                    policy=policy, t0=t0)


def _sum_inv_sq_offset(t: Interval, N: int) -> Interval:
    """Enclosure of sum_{n != 0} 1/(n - t)^2 for t within (-1, 1).

    Head |n| <= N plus integral sandwich tails on both sides.
    """
    acc = _ZERO
    for n in range(1, N + 1):
        acc = acc + _ONE / pow_int(n - t, 2) + _ONE / pow_int(n + t, 2)
    lo_tail = (_ONE / (N + 1 - t)).lo + (_ONE / (N + 1 + t)).lo
    hi_tail = (_ONE / (N - t)).hi + (_ONE / (N + t)).hi
    return acc + Interval(lo_tail, hi_tail)


def certify_eta1(ctx: PotentialContext, N: int = 64,
                 policy: BnbPolicy | None = None) -> Certificate:
    """Branch-and-bound in t over [-1/2, 1/2] covering 1/2 <= x <= 3/2.

    The removable-singularity quotient (F(1+t)-F(1)-tF'(1))/t^2 is enclosed
    by the mean-value form intersected with the direct quotient whenever the
    box excludes 0 (the mean-value hull alone cannot shrink with the box).
    """
    alpha = ctx.alpha
    if alpha not in _ETA_BNB_ALPHA and not 6 <= alpha <= 1000:
        raise ValueError("eta1 route requires even alpha in [6, 1000]")
    if alpha < 6:
        raise ValueError("eta1 route requires alpha >= 6")
    policy = policy or BnbPolicy()
    t0 = time.perf_counter()
    coeffs = build_coefficients(ctx, N)
    Fn, dFn = coeffs.Fn, coeffs.dFn
    F1, dF1 = ctx.F1, ctx.dF1
    tail_B = ((32.0 + 8.0 * alpha) * power_sum_tail(alpha + 1, N + 1) / ctx.s_pow_alpha).hi

    def expr(t: Interval) -> Interval:
        x = 1.0 + t
        Fx = F_alpha(ctx, x)
        q = 0.5 * F_alpha_second(ctx, hull(Interval(1.0), x))
        if t.lo > 0.0 or t.hi < 0.0:
            q = q.intersect((Fx - F1 - t * dF1) / pow_int(t, 2))
        lhs = q + Fx * _sum_inv_sq_offset(t, N)
        rhs = _ONE / pow_int(x, 2) + F1 / pow_int(2.0 + t, 2) - dF1 / (2.0 + t)
        B = _ZERO
        for n in range(2, N + 1):
            d = x - n
            B = B + Fn[n] / pow_int(d, 2) + dFn[n] / d
            dm = x + n
            B = B + Fn[n] / pow_int(dm, 2) - dFn[n] / dm
        rhs = rhs + B + Interval(-tail_B, tail_B)
        return lhs - rhs

    return prove_nonneg(
        expr, Interval(-0.5, 0.5), policy,
        inequality_id="eta1", alpha=alpha,
        domain_desc="t in [-1/2, 1/2] (x = 1 + t)",
        paper_anchor="(F(1+t)-F(1)-tF'(1))/t^2 + F(1+t) sum 1/(n-t)^2 >= "
                     "1/(1+t)^2 + F(1)/(2+t)^2 - F'(1)/(2+t) + B(alpha,t)",
    )


def certify_eta_ge2(ctx: PotentialContext, N: int = 64,
                    policy: BnbPolicy | None = None) -> Certificate:
    """x in [1.5, 10] by branch-and-bound plus the displayed x >= 10 constant.

    Certifies sum_{n != eta(x)} (F(n)/(x-n)^2 + F'(n)/(x-n)) <= 0 on segments
    of constant nearest integer, plus the reduction's side condition
    F(3/2) < 1/2 (which makes the pulled-out diagonal nonnegative).
    """
    alpha = ctx.alpha
    if alpha not in (6, 8, 10, 12, 14):
        raise ValueError("eta>=2 interval route covers alpha in {6, ..., 14}")
    policy = policy or BnbPolicy()
    t0 = time.perf_counter()
    coeffs = build_coefficients(ctx, N)
    Fn, dFn = coeffs.Fn, coeffs.dFn
    tail = (2.0 * (1.4 + 1.19 * alpha) * power_sum_tail(alpha + 2, N + 1)
            / ctx.s_pow_alpha).hi

    def seg_expr(eta: int):
        def expr(x: Interval) -> Interval:
            acc = _ONE / pow_int(x, 2)  # n = 0
            for n in range(1, N + 1):
                if n != eta:
                    d = x - n
                    acc = acc + Fn[n] / pow_int(d, 2) + dFn[n] / d
                dm = x + n
                acc = acc + Fn[n] / pow_int(dm, 2) - dFn[n] / dm
            return -(acc + Interval(-tail, tail))
        return expr

    run = _Run()
    if policy.max_depth < 1:
        run.status = INCONCLUSIVE
    else:
        side = 0.5 - F_alpha(ctx, Interval(1.5))
        if run.merge_value(side, at=1.5):
            const_ok = run.merge_value(_allthestars_small_value(coeffs), at=10.0)
            if const_ok:
                for eta in range(2, 11):
                    lo = max(1.5, eta - 0.5)
                    hi = min(10.0, eta + 0.5)
                    if hi <= lo:
                        continue
                    _bnb(run, seg_expr(eta), lo, hi, policy)
                    if run.status != VERIFIED:
                        break
    return _finish(
        run,
        inequality_id="eta_ge2",
        alpha=alpha,
        domain="x in [1.5, 10] segmented at half-integers + displayed constant for x >= 10",
        paper_anchor="sum_{n != eta(x)} (F(n)/(x-n)^2 + F'(n)/(x-n)) <= 0",
        policy=policy,
        t0=t0,
    )


def _allthestars_small_value(coeffs: AuxCoefficients) -> Interval:
    """-(displayed x >= 10 constant), which must be >= 0 for 6 <= alpha <= 14."""
    ctx = coeffs.ctx
    alpha = ctx.alpha
    N = coeffs.N
    s3n = _sum_3n2F_n3dF(coeffs)
    big = _ZERO
    for n in range(2, N + 1):
        inner = (10.0 * float(n) ** 4) * coeffs.Fn[n] + (2.0 * float(n) ** 5) * coeffs.dFn[n]
        big = big + abs(inner)
    tail4 = ((10.0 + 2.0 * alpha) * power_sum_tail(alpha - 4, N + 1) / ctx.s_pow_alpha).hi
    big = big + Interval(0.0, tail4)
    F1, dF1 = ctx.F1, ctx.dF1
    val = s3n + 16.0 / (100.0 * ctx.s_pow_alpha) + (10.0 * F1 + 2.0 * dF1) / 99.0 \
        + big / 5.0 + Interval(8.0 * alpha + 2.0) / pow_int(Interval(10.0), alpha - 2)
    return -val


def certify_allthestars_large(alpha: int, policy: BnbPolicy | None = None) -> Certificate:
    """Closed chain for the x >= 1.5 far constant, valid for alpha >= 16."""
    if alpha < 16 or alpha % 2:
        raise ValueError("closed far-constant bound requires even alpha >= 16")
    p = pow_int(Interval(2.0), alpha - 4)  # 2^(a-4); 2^(a-2) = 4p
    val = Interval(-1.0) + Interval(7.0) / (2 * alpha - 4) + _ONE / p \
        + (Interval(11.0) / (2 * alpha - 4) - 1.0) / 1.25 \
        + Interval(16.0) / (2.25 * Interval(float(2 * alpha - 5))) \
        + Interval(4.0) / (1.5 * p) \
        + Interval(8.0 * alpha + 2.0) / (4.0 * p)
    return _constant_certificate(
        -val,
        inequality_id="allthestars_const",
        alpha=alpha,
        domain="closed-bound evaluation (large alpha)",
        paper_anchor="-1 + 7/(2a-4) + 2^(4-a) + (11/(2a-4)-1)/1.25 + "
                     "16/(2.25(2a-5)) + 4/(1.5 2^(a-4)) <= -(8a+2)/2^(a-2)",
        policy=policy,
    )


# ---------------------------------------------------------------------------
# Orchestration.
# ---------------------------------------------------------------------------

def certify_all(alpha: int, tol: float = 1e-12, N: int = 64,
                policy: BnbPolicy | None = None,
                ctx: PotentialContext | None = None) -> list[Certificate]:
    """Run the full certificate suite for one alpha.

    The interpolation, support and decay conditions hold by construction and
    are exercised by the property tests rather than certified here.
    """
    if alpha % 2 or alpha < 4:
        raise ValueError("certificates require an even alpha >= 4")
    if alpha > 14:
        if ctx is not None:
            raise ValueError("large-alpha routes do not consume a context")
        return [
            certify_T_large(alpha, policy),
            certify_L_large(alpha, policy),
            certify_allthestars_large(alpha, policy),
        ]
    policy = policy or BnbPolicy()
    if ctx is None:
        ctx = solve_s_alpha(alpha, tol)
    coeffs = build_coefficients(ctx, N)
    certs = [certify_psihat_nonneg(coeffs, policy)]
    if alpha == 4:
        certs.append(certify_w_inequality(ctx, policy))
        certs.append(certify_psi4_le_F4(ctx, N, policy))
    else:
        certs.append(certify_eta0(ctx, N, policy))
        certs.append(certify_eta1(ctx, N, policy))
        certs.append(certify_eta_ge2(ctx, N, policy))
    return certs
