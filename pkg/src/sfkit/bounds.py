"""Bound functions and machine verification of their inequality chains.

Three lower-bound functions on the family size guarantee a k-sunflower
among sets of cardinality at most s:

* ``phi0``  (k-1)^s * s!                          (classic bound, exact int)
* ``phi1``  (sqrt(10)-2)^2 * (k/(sqrt(10)-2))^s * s!
* ``phi2``  k^s * s! / (p_1 ... p_s)  with  p_j = eps * ln(min(j, k)) for
            j >= 2 and p_1 = eps, for a fixed eps in (0, 1/8)

phi1/phi2 values overflow machine integers long before the interesting
range, so they live in :class:`~sfkit.logvalue.LogValue` (natural-log
space, certified error radius).  Both functions vanish off positive
integer arguments by convention; the distinguished zero value carries
that case.

The ``check_*`` functions machine-verify individual inequalities from
the supporting chain (Stirling's double inequality, the binomial chain,
the phi2 step lemma, the product lower bound on ln 2 * ln 3 ... ln s,
and the closed-form upper bound on phi2); the ``sweep_*`` companions
run them over documented finite ranges with shared prefix tables so the
full ranges finish in seconds.  A sweep failure is surfaced in the
outcome record, never swallowed: it falsifies either this module's
precision handling or the inequality itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
from mpmath import mpf

from .errors import InvalidParams
from .logvalue import LogValue, workprec

ULP = mpf(2) ** -236


@dataclass(frozen=True)
class BoundParams:
    """Shared parameter triple; epsilon must lie strictly inside (0, 1/8)."""

    k: int
    s: int
    epsilon: float

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise InvalidParams("k must be a positive integer")
        if not isinstance(self.s, int) or self.s < 1:
            raise InvalidParams("s must be a positive integer")
        _validate_epsilon(self.epsilon)


@dataclass(frozen=True)
class DerivedConstants:
    """Constants driving the two improvement arguments.

    delta is the positive root of d^2 + 6d = 1; x1 = k/(1+delta) is the
    first argument's petal-count target; p = ln(min(k,s))/8 and x2 = k/p
    drive the second; c1 is the least integer threshold on min(k, s)
    that satisfies the four fixed-coefficient inequalities, and
    epsilon_star = min(1/(2 ln c1), 1/9).
    """

    k: int
    s: int
    delta: mpf
    x1: mpf
    p: mpf
    x2: mpf
    y: int
    c1: int
    epsilon_star: mpf
    p_star: mpf


def _validate_epsilon(epsilon) -> None:
    if not (0 < epsilon < 0.125):
        raise InvalidParams(f"epsilon must lie in (0, 1/8), got {epsilon}")


# ---------------------------------------------------------------------------
# shared 256-bit prefix tables (built lazily, only ever under workprec)

_LNFACT: list[mpf] = []
_LNLN_PREFIX: list[mpf] = []
_LN_CACHE: dict[int, mpf] = {}
_LNLN_CACHE: dict[int, mpf] = {}


def _ln(n: int) -> mpf:
    v = _LN_CACHE.get(n)
    if v is None:
        v = mpmath.log(mpf(n))
        _LN_CACHE[n] = v
    return v


def _lnln(n: int) -> mpf:
    v = _LNLN_CACHE.get(n)
    if v is None:
        v = mpmath.log(_ln(n))
        _LNLN_CACHE[n] = v
    return v


def _lnfact(n: int) -> mpf:
    if not _LNFACT:
        _LNFACT.append(mpf(0))
    while len(_LNFACT) <= n:
        i = len(_LNFACT)
        _LNFACT.append(_LNFACT[i - 1] + _ln(i))
    return _LNFACT[n]


def _lnfact_rad(n: int) -> mpf:
    return (2 * n + 4) * ULP


def _lnln_prefix(i: int) -> mpf:
    """Sum of ln(ln(j)) for j = 2..i (0 when i < 2)."""
    if not _LNLN_PREFIX:
        _LNLN_PREFIX.extend([mpf(0), mpf(0)])
    while len(_LNLN_PREFIX) <= i:
        j = len(_LNLN_PREFIX)
        _LNLN_PREFIX.append(_LNLN_PREFIX[j - 1] + _lnln(j))
    return _LNLN_PREFIX[i]


def _lnln_prefix_rad(i: int) -> mpf:
    return (3 * i + 4) * ULP


# ---------------------------------------------------------------------------
# bound functions


def phi0(k: int, s: int) -> int:
    """Exact classic bound (k-1)^s * s! as an arbitrary-precision integer."""
    if not isinstance(k, int) or k < 1:
        raise InvalidParams("k must be a positive integer")
    if not isinstance(s, int) or s < 0:
        raise InvalidParams("s must be a nonnegative integer")
    return (k - 1) ** s * math.factorial(s)


def phi1(k: int, s: int) -> LogValue:
    """First improved bound in log space; zero off positive integer s."""
    if not isinstance(k, int) or k < 1:
        raise InvalidParams("k must be a positive integer")
    if not isinstance(s, int):
        raise InvalidParams("s must be an integer")
    if s < 1:
        return LogValue.zero()
    with workprec():
        base = mpmath.log(mpmath.sqrt(mpf(10)) - 2)
        log = (2 - s) * base + s * _ln(k) + _lnfact(s)
        return LogValue(log, _lnfact_rad(s) + 8 * ULP)


def p_value(j: int, k: int, epsilon: float) -> mpf:
    """Denominator factor p_j: epsilon for j = 1, epsilon*ln(min(j,k)) after."""
    if not isinstance(j, int) or j < 1:
        raise InvalidParams("j must be a positive integer")
    if not isinstance(k, int) or k < 1:
        raise InvalidParams("k must be a positive integer")
    _validate_epsilon(epsilon)
    with workprec():
        if j == 1:
            return mpf(epsilon)
        return mpf(epsilon) * _ln(min(j, k))


def phi2(k: int, s: int, epsilon: float) -> LogValue:
    """Second improved bound in log space; zero off positive integer s.

    Undefined for k = 1 with s >= 2 (the denominator factors vanish).
    """
    if not isinstance(k, int) or k < 1:
        raise InvalidParams("k must be a positive integer")
    if not isinstance(s, int):
        raise InvalidParams("s must be an integer")
    _validate_epsilon(epsilon)
    if s < 1:
        return LogValue.zero()
    if k == 1 and s >= 2:
        raise InvalidParams("phi2 undefined for k = 1 and s >= 2 (p_j = 0)")
    with workprec():
        log = s * _ln(k) + _lnfact(s) - s * mpmath.log(mpf(epsilon))
        if s >= 2:
            log -= _lnln_prefix(min(s, k)) + max(0, s - k) * _lnln(k)
        rad = _lnfact_rad(s) + _lnln_prefix_rad(min(s, k)) + 16 * ULP
        return LogValue(log, rad)


# ---------------------------------------------------------------------------
# inequality checkers


def check_stirling_double(n: int) -> bool:
    """sqrt(2 pi n) n^n e^-n < n! <= sqrt(n) n^n e^(-n+1), certified.

    At n = 1 the upper bound holds with equality (1 <= 1 exactly), which
    no numeric certificate can decide, so that point is compared exactly.
    """
    ok, _ = _stirling_margin(n)
    return ok


def _stirling_margin(n: int) -> tuple[bool, float]:
    if not isinstance(n, int) or n < 1:
        raise InvalidParams("n must be a positive integer")
    with workprec():
        lnf = _lnfact(n)
        rad = _lnfact_rad(n) + 8 * ULP
        lower = (mpmath.log(2 * mpmath.pi) + _ln(n)) / 2 + n * _ln(n) - n
        low_ok = lower + rad < lnf - rad
        low_margin = float(lnf - lower)
        if n == 1:
            # upper bound: 1! = 1 and sqrt(1)*1^1*e^0 = 1, an exact equality
            return low_ok, low_margin
        upper = _ln(n) / 2 + n * _ln(n) - n + 1
        up_ok = lnf + rad < upper - rad
        return low_ok and up_ok, min(low_margin, float(upper - lnf))


def check_binomial_bound(n: int, m: int) -> bool:
    """C(n,m) < n^m/m! < exp(m ln(n/m) + m - ln sqrt(2 pi m)) < exp(...+m).

    The first comparison is exact integer arithmetic; it degenerates to
    an equality at m = 1 (C(n,1)*1! = n = n^1), which is accepted there
    and strict everywhere else.  The remaining links are certified in
    256-bit log space.
    """
    ok, _ = _binomial_margin(n, m)
    return ok


def _binomial_margin(n: int, m: int) -> tuple[bool, float | None]:
    if not isinstance(n, int) or not isinstance(m, int) or not (n >= m >= 1):
        raise InvalidParams("need integers n >= m >= 1")
    falling = 1
    for i in range(m):
        falling *= n - i
    power = n**m
    if m == 1:
        link1 = falling == power
        margin1 = None
    else:
        link1 = falling < power
        margin1 = math.log(power) - math.log(falling)
    link23, margin23 = _binomial_m_margin(m)
    margins = [x for x in (margin1, margin23) if x is not None]
    return link1 and link23, (min(margins) if margins else None)


def _binomial_m_margin(m: int) -> tuple[bool, float]:
    """Links 2 and 3 of the chain depend on m alone."""
    with workprec():
        lnf = _lnfact(m)
        rad = _lnfact_rad(m) + 8 * ULP
        half_ln2pim = (mpmath.log(2 * mpmath.pi) + _ln(m)) / 2
        # link 2 reduces to the lower Stirling bound: ln m! > m ln m - m + ln sqrt(2 pi m)
        margin2 = lnf - (m * _ln(m) - m + half_ln2pim)
        # link 3 is ln sqrt(2 pi m) > 0
        margin3 = half_ln2pim
        ok = margin2 > rad and margin3 > rad
        return ok, float(min(margin2, margin3))


def check_stirling2_lemma(k: int, s: int, epsilon: float, j: int) -> bool:
    """phi2(s) > phi2(s-j) * exp(j ln(ks/p_s) - j^2/s - 1), certified in log space."""
    ok, _ = _stirling2_margin(k, s, epsilon, j)
    return ok


def _stirling2_margin(k: int, s: int, epsilon: float, j: int) -> tuple[bool, float]:
    if not isinstance(j, int) or not isinstance(s, int) or not (1 <= j < s):
        raise InvalidParams("need integers 1 <= j < s")
    if not isinstance(k, int) or k < 2:
        raise InvalidParams("k must be an integer >= 2")
    _validate_epsilon(epsilon)
    with workprec():
        # ln phi2(s) - ln phi2(s-j), expanded so the sweep stays O(1) per point
        lhs = j * _ln(k) + (_lnfact(s) - _lnfact(s - j)) - j * mpmath.log(mpf(epsilon))
        lhs -= _lnln_prefix(min(s, k)) - _lnln_prefix(min(s - j, k))
        lhs -= (max(0, s - k) - max(0, s - j - k)) * _lnln(k)
        p_s = mpf(epsilon) * _ln(min(s, k))
        rhs = j * (_ln(k) + _ln(s) - mpmath.log(p_s)) - mpf(j) ** 2 / s - 1
        rad = 2 * (_lnfact_rad(s) + _lnln_prefix_rad(min(s, k))) + 16 * ULP
        return lhs - rad > rhs + rad, float(lhs - rhs)


def check_phi2bound_product(s: int) -> bool:
    """ln2 * ln3 ... ln s >= (ln s / e^2)^s, as sum ln ln i >= s ln ln s - 2 s."""
    ok, _ = _product_margin(s)
    return ok


def _product_margin(s: int) -> tuple[bool, float]:
    if not isinstance(s, int) or s < 3:
        raise InvalidParams("s must be an integer >= 3")
    with workprec():
        lhs = _lnln_prefix(s)
        rhs = s * _lnln(s) - 2 * s
        rad = _lnln_prefix_rad(s) + 8 * ULP
        return lhs - rad > rhs + rad, float(lhs - rhs)


def check_phi2_upper(k: int, s: int, epsilon: float, c) -> bool:
    """phi2(s) <= (c k / ln min(k,s))^s * s!, certified in log space.

    The chain's explicit constant is c = e^2/epsilon; any c <= 0 makes
    the right side vanish and the answer False.
    """
    ok, _ = _phi2_upper_margin(k, s, epsilon, c)
    return ok


def _phi2_upper_margin(k: int, s: int, epsilon: float, c) -> tuple[bool, float | None]:
    if not isinstance(k, int) or not isinstance(s, int) or k < 2 or s < 2:
        raise InvalidParams("need integers k >= 2 and s >= 2")
    _validate_epsilon(epsilon)
    if c <= 0:
        return False, None
    lhs = phi2(k, s, epsilon)
    with workprec():
        rhs = s * (mpmath.log(mpf(c)) + _ln(k) - _lnln(min(k, s))) + _lnfact(s)
        rad = lhs.error_radius + _lnfact_rad(s) + 8 * ULP
        return lhs.log_value + rad < rhs - rad, float(rhs - lhs.log_value)


# ---------------------------------------------------------------------------
# derived constants


def _bisect(f, lo: mpf, hi: mpf, iters: int = 300) -> mpf:
    flo = f(lo)
    fhi = f(hi)
    if not (flo > 0) != (fhi > 0):
        raise InvalidParams("bisection bracket does not change sign")
    for _ in range(iters):
        mid = (lo + hi) / 2
        if (f(mid) > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def derive_constants(k: int, s: int) -> DerivedConstants:
    """Numeric instantiation of every constant in the improvement proofs.

    p_star is the least real p from which the four fixed-coefficient
    requirements all hold: 2p ln2 > 1 + ln 8p, ln 2p < p, p >= 1 and
    8 p^3 e^-p < 1/2 (the last one binds, with its root in (9, 10));
    c1 = ceil(e^(8 p_star)), nudged upward until ln k / (k/ln k - ln k + 1)
    falls below 1/2 at k = c1.
    """
    if not isinstance(k, int) or k < 1 or not isinstance(s, int) or s < 1:
        raise InvalidParams("k and s must be positive integers")
    with workprec():
        delta = mpmath.sqrt(mpf(10)) - 3
        x1 = k / (1 + delta)
        y = min(s, k)
        p = _ln(y) / 8 if y >= 2 else mpf(0)
        x2 = k / p if p > 0 else mpf("inf")

        root_decay = _bisect(lambda q: 8 * q**3 * mpmath.exp(-q) - mpf(1) / 2, mpf(9), mpf(10))
        root_log = _bisect(lambda q: 2 * q * mpmath.log(2) - 1 - mpmath.log(8 * q), mpf(2), mpf(4))
        p_star = max(root_decay, root_log, mpf(1))

        c1 = int(mpmath.ceil(mpmath.exp(8 * p_star)))
        for _ in range(64):
            lnk = mpmath.log(mpf(c1))
            if lnk / (c1 / lnk - lnk + 1) < mpf(1) / 2:
                break
            c1 *= 2
        else:
            raise AssertionError("c1 adjustment did not settle")

        epsilon_star = min(1 / (2 * mpmath.log(mpf(c1))), mpf(1) / 9)
        return DerivedConstants(
            k=k, s=s, delta=delta, x1=x1, p=p, x2=x2, y=y,
            c1=c1, epsilon_star=epsilon_star, p_star=p_star,
        )


# ---------------------------------------------------------------------------
# bound comparison


@dataclass(frozen=True)
class BoundComparison:
    """Log values of all bounds at one parameter point plus pairwise ratios."""

    k: int
    s: int
    epsilon: float
    c_used: float
    phi0_exact: int
    phi0_log: LogValue
    phi1_log: LogValue
    phi2_log: LogValue
    composite_log: LogValue
    log_ratios: dict = field(default_factory=dict)


def compare_bounds(k: int, s: int, epsilon: float) -> BoundComparison:
    """Evaluate phi0/phi1/phi2 and the composite headline bound.

    The composite is (sqrt(10)-2)^2 * [k * min(1/(sqrt(10)-2),
    c/ln min(k,s))]^s * s! with the explicit constant c = e^2/epsilon
    standing in for the existential one.
    """
    if not isinstance(k, int) or k < 2 or not isinstance(s, int) or s < 2:
        raise InvalidParams("need integers k >= 2 and s >= 2")
    _validate_epsilon(epsilon)
    p0 = phi0(k, s)
    lv0 = LogValue.from_int(p0)
    lv1 = phi1(k, s)
    lv2 = phi2(k, s, epsilon)
    with workprec():
        c_used = mpmath.exp(mpf(2)) / mpf(epsilon)
        base = mpmath.sqrt(mpf(10)) - 2
        factor = min(1 / base, c_used / _ln(min(k, s)))
        comp_log = 2 * mpmath.log(base) + s * (_ln(k) + mpmath.log(factor)) + _lnfact(s)
        comp = LogValue(comp_log, _lnfact_rad(s) + 12 * ULP)
        ratios = {
            "phi1_over_phi0": float(lv1.log_value - lv0.log_value),
            "phi2_over_phi0": float(lv2.log_value - lv0.log_value),
            "phi2_over_phi1": float(lv2.log_value - lv1.log_value),
            "composite_over_phi1": float(comp.log_value - lv1.log_value),
        }
    return BoundComparison(
        k=k, s=s, epsilon=epsilon, c_used=float(c_used),
        phi0_exact=p0, phi0_log=lv0, phi1_log=lv1, phi2_log=lv2,
        composite_log=comp, log_ratios=ratios,
    )


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class SweepOutcome:
    """Aggregate of one inequality sweep; ``failures`` lists parameter
    tuples whose check came back false (expected empty)."""

    name: str
    params: dict
    checked: int
    all_true: bool
    failures: list
    min_margin: float | None

    def record(self) -> dict:
        return {
            "suite": self.name,
            "params": self.params,
            "checked": self.checked,
            "all_true": self.all_true,
            "failures": self.failures[:32],
            "min_margin": self.min_margin,
        }


def _fold(outcome: SweepOutcome, key, ok: bool, margin: float | None) -> None:
    outcome.checked += 1
    if not ok:
        outcome.all_true = False
        outcome.failures.append(key)
    if margin is not None and (outcome.min_margin is None or margin < outcome.min_margin):
        outcome.min_margin = margin


def sweep_stirling(max_n: int) -> SweepOutcome:
    out = SweepOutcome("stirling", {"max_n": max_n}, 0, True, [], None)
    with workprec():
        _lnfact(max_n)
    for n in range(1, max_n + 1):
        ok, margin = _stirling_margin(n)
        _fold(out, n, ok, margin)
    return out


def sweep_binomial(max_n: int) -> SweepOutcome:
    """Exact falling-factorial comparison for every pair, plus the
    m-only certified links once per m."""
    out = SweepOutcome("binomial", {"max_n": max_n}, 0, True, [], None)
    m_ok: list[bool] = [True, True]
    with workprec():
        _lnfact(max_n)
    for m in range(2, max_n + 1):
        ok, margin = _binomial_m_margin(m)
        m_ok.append(ok)
        if margin is not None and (out.min_margin is None or margin < out.min_margin):
            out.min_margin = margin
    for n in range(1, max_n + 1):
        power = 1
        falling = 1
        for m in range(1, n + 1):
            power *= n
            falling *= n - m + 1
            link1 = falling == power if m == 1 else falling < power
            _fold(out, (n, m), link1 and m_ok[m], None)
    return out


def sweep_phi2_recurrence(max_k: int, max_s: int, epsilons, tol: float = 1e-20) -> SweepOutcome:
    """|log phi2(k,s) - log phi2(k,s-1) - ln(ks/p_s)| <= tol, with both
    phi2 values evaluated independently."""
    out = SweepOutcome(
        "phi2-recurrence",
        {"max_k": max_k, "max_s": max_s, "epsilons": list(epsilons), "tol": tol},
        0, True, [], None,
    )
    with workprec():
        tol_mp = mpf(tol)
        for epsilon in epsilons:
            ln_eps = mpmath.log(mpf(epsilon))
            for k in range(2, max_k + 1):
                prev = phi2(k, 1, epsilon)
                for s in range(2, max_s + 1):
                    cur = phi2(k, s, epsilon)
                    p_s = ln_eps + _lnln(min(s, k))
                    residual = abs(cur.log_value - prev.log_value - (_ln(k) + _ln(s) - p_s))
                    ok = residual <= tol_mp
                    _fold(out, (k, s, epsilon), ok, float(tol_mp - residual))
                    prev = cur
    return out


def sweep_stirling2(max_k: int, max_s: int, epsilon: float) -> SweepOutcome:
    out = SweepOutcome(
        "stirling2", {"max_k": max_k, "max_s": max_s, "epsilon": epsilon}, 0, True, [], None
    )
    with workprec():
        _lnfact(max_s)
        _lnln_prefix(max_s)
    for k in range(2, max_k + 1):
        for s in range(2, max_s + 1):
            for j in sorted({1, s // 2, s - 1}):
                if not 1 <= j < s:
                    continue
                ok, margin = _stirling2_margin(k, s, epsilon, j)
                _fold(out, (k, s, j), ok, margin)
    return out


def sweep_product(max_s: int) -> SweepOutcome:
    out = SweepOutcome("product", {"max_s": max_s}, 0, True, [], None)
    with workprec():
        _lnln_prefix(max_s)
    for s in range(3, max_s + 1):
        ok, margin = _product_margin(s)
        _fold(out, s, ok, margin)
    return out


def sweep_phi2_upper(max_k: int, max_s: int, epsilon: float) -> SweepOutcome:
    """Lemma upper bound with the chain's explicit constant c = e^2/epsilon."""
    with workprec():
        c = float(mpmath.exp(mpf(2)) / mpf(epsilon))
        _lnfact(max_s)
        _lnln_prefix(max_s)
    out = SweepOutcome(
        "phi2-upper",
        {"max_k": max_k, "max_s": max_s, "epsilon": epsilon, "c": c},
        0, True, [], None,
    )
    for k in range(2, max_k + 1):
        for s in range(2, max_s + 1):
            ok, margin = _phi2_upper_margin(k, s, epsilon, c)
            _fold(out, (k, s), ok, margin)
    return out
