"""Exact decision procedures for the sufficient criterion and its proof machinery.

Every inequality is evaluated as a margin (right side minus left side) in exact
arithmetic.  A strict inequality passes on a positive margin, a non-strict one
on a nonnegative margin.  Positive definiteness of the tridiagonal matrices is
decided through the quotients u_n = t_n / D, which only involve alpha_n^2.
"""
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Tuple, Union

from core.sequences import HALF, ONE, CoefficientSequence, SSequence

Witness = Tuple[int, ...]


@dataclass(frozen=True)
class CheckResult:
    label: str
    n_range: Optional[Tuple[int, int]]
    passed: bool
    margin: Optional[Fraction] = None
    witness: Witness = ()
    required: bool = True
    note: str = ""


@dataclass
class CriterionReport:
    title: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(check.passed for check in self.checks if check.required)


def _scan(
    label: str,
    indices: Iterable[Witness],
    margin: Callable[..., Fraction],
    strict: bool,
    n_range: Optional[Tuple[int, int]] = None,
    required: bool = True,
) -> CheckResult:
    """Stop at the first failing index, otherwise report the smallest margin"""
    smallest: Optional[Fraction] = None
    smallest_at: Witness = ()
    for index in indices:
        value = margin(*index)
        failed = value <= 0 if strict else value < 0
        if failed:
            return CheckResult(label, n_range, False, value, index, required)
        if smallest is None or value < smallest:
            smallest, smallest_at = value, index
    note = "" if smallest is not None else "vacuous: empty range"
    return CheckResult(label, n_range, True, smallest, smallest_at, required, note)


# -- s-sequence hypotheses --------------------------------------------------

def check_s_criterion(s: SSequence, N: int) -> CriterionReport:
    """s_n in (0,1), s_2 < 1 - s_1/(1-s_1), and s_n <= s_{n-2}/2 - 2 s_{n-1} for 3 <= n <= N"""
    if N < 3:
        raise ValueError(f"N must be at least 3, got {N}")
    report = CriterionReport("s-criterion")
    report.checks.append(_scan(
        "s_n in (0,1)", ((n,) for n in range(1, N + 1)),
        lambda n: min(s.raw(n), ONE - s.raw(n)), strict=True, n_range=(1, N)))
    if not report.overall:
        return report

    report.checks.append(_scan(
        "s_2 < 1 - s_1/(1-s_1)", [(2,)],
        lambda n: ONE - s(1) / (ONE - s(1)) - s(2), strict=True, n_range=(2, 2)))
    report.checks.append(_scan(
        "s_n <= s_{n-2}/2 - 2 s_{n-1}", ((n,) for n in range(3, N + 1)),
        lambda n: s(n - 2) / 2 - 2 * s(n - 1) - s(n), strict=False, n_range=(3, N)))
    return report


def check_lemma_bounds(s: SSequence, N: int) -> CriterionReport:
    """Growth and monotonicity consequences of the s-criterion"""
    report = CriterionReport("lemma-bounds")
    report.checks.append(_scan(
        "s_1 < 1/2", [(1,)], lambda n: HALF - s(1), strict=True, n_range=(1, 1)))
    report.checks.append(_scan(
        "s_n < s_1/4^(n-1)", ((n,) for n in range(2, N + 1)),
        lambda n: s(1) / 4 ** (n - 1) - s(n), strict=True, n_range=(2, N)))
    report.checks.append(_scan(
        "strictly decreasing", ((n,) for n in range(1, N)),
        lambda n: s(n) - s(n + 1), strict=True, n_range=(1, N - 1)))

    def s3_margin(_n: int) -> Fraction:
        s1, s2, s3 = s(1), s(2), s(3)
        return (s1 - s2) / (1 - s2) - s2 / (1 - s2) ** 2 - s3

    def s4_margin(_n: int) -> Fraction:
        s1, s2, s3, s4 = s(1), s(2), s(3), s(4)
        return 1 - s1 * s2 / (1 - s3) - (1 - s2 + s2 * s3) / (1 - s3) ** 2 - s4

    report.checks.append(_scan(
        "s_3 < (s_1-s_2)/(1-s_2) - s_2/(1-s_2)^2", [(3,)], s3_margin, strict=True, n_range=(3, 3)))
    report.checks.append(_scan(
        "s_4 < 1 - s_1 s_2/(1-s_3) - (1-s_2+s_2 s_3)/(1-s_3)^2", [(4,)], s4_margin, strict=True, n_range=(4, 4)))
    return report


def build_cn(s: SSequence, variant: str) -> CoefficientSequence:
    """c_n from s_n: 'first' is 1-s on odd / s on even, 'second' the reverse"""
    if variant not in ("first", "second"):
        raise ValueError(f"variant must be 'first' or 'second', got {variant!r}")
    odd_gets_complement = variant == "first"

    def rule(n: int) -> Fraction:
        value = s(n)
        return ONE - value if (n % 2 == 1) == odd_gets_complement else value

    params = dict(s.params)
    params["variant"] = variant
    return CoefficientSequence(s.family, params, rule)


# -- positive definiteness ---------------------------------------------------

@dataclass(frozen=True)
class TridiagonalSpec:
    """Tridiagonal matrix with constant diagonal alpha_d, normalized by alpha_d"""

    size: int
    diag_index: int
    normalized_offdiag_sq: Tuple[Fraction, ...]


@dataclass(frozen=True)
class _ScaledMinors:
    """Leading minors as integers H_n with u_n = H_n / (H_{n-1} r_{n-1}).

    r_n is the reduced denominator of q_n (r_0 = 1); the u_n are only reduced
    to lowest terms when read.
    """

    minors: Tuple[int, ...]
    scales: Tuple[int, ...]

    def u_at(self, n: int) -> Fraction:
        return Fraction(self.minors[n], self.minors[n - 1] * self.scales[n - 1])

    @cached_property
    def u(self) -> Tuple[Fraction, ...]:
        return tuple(self.u_at(n) for n in range(1, len(self.minors)))


@dataclass(frozen=True)
class PDCertificate(_ScaledMinors):
    pass


@dataclass(frozen=True)
class PDFailure(_ScaledMinors):
    index: int = 0

    @property
    def u_value(self) -> Fraction:
        return self.u_at(self.index)


PDResult = Union[PDCertificate, PDFailure]


def ms_matrix(seq: CoefficientSequence, variant: str, N: int) -> TridiagonalSpec:
    """Even: size 2N with diagonal alpha_{2N}; odd: size 2N+1 with diagonal alpha_{2N+1}"""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    if variant == "even":
        size = 2 * N
    elif variant == "odd":
        size = 2 * N + 1
    else:
        raise ValueError(f"variant must be 'even' or 'odd', got {variant!r}")
    diag_sq = seq.alpha_sq(size)
    q = tuple(seq.alpha_sq(n) / diag_sq for n in range(1, size))
    return TridiagonalSpec(size, size, q)


def pd_check(spec: TridiagonalSpec) -> PDResult:
    """u_1 = 1, u_{n+1} = 1 - q_n/u_n; positive definite iff every u_n > 0.

    Runs the equivalent integer recursion H_n = r_{n-1} H_{n-1} - p_{n-1} r_{n-2} H_{n-2}
    for q_n = p_n/r_n; while earlier minors are positive, u_n > 0 iff H_n > 0.
    """
    minors = [1, 1]
    scales = [1]
    for q in spec.normalized_offdiag_sq:
        scales.append(q.denominator)
        minors.append(q.denominator * minors[-1] - q.numerator * scales[-2] * minors[-2])
        if minors[-1] <= 0:
            return PDFailure(tuple(minors), tuple(scales), len(minors) - 1)
    return PDCertificate(tuple(minors), tuple(scales))


def proof_sequence(s: Optional[SSequence], seq: CoefficientSequence) -> CoefficientSequence:
    """The first-variant sequence the proof bounds and pairing refer to.

    Documents may hold either construction (or its switch); with an s-sequence at
    hand the bounds always run on build_cn(s, "first").
    """
    return build_cn(s, "first") if s is not None else seq


def verify_proof_bounds(seq: CoefficientSequence, variant: str, N: int) -> CriterionReport:
    """Certificate lower bounds used in the proof of the sufficient criterion.

    P:      u_{2n+1} > alpha_{2N+1}^2 a_{2n}          on ms_matrix(seq, odd, N), n = 1..N
    Ptilde: u_{2n+2} > alpha~_{2N}^2 c_{2n+1}         on ms_matrix(switch(seq), even, N), n = 1..N-1

    seq is the first-variant sequence in both cases.
    """
    if variant == "P":
        target, matrix_variant = seq, "odd"
    elif variant == "Ptilde":
        target, matrix_variant = seq.switch(), "even"
    else:
        raise ValueError(f"variant must be 'P' or 'Ptilde', got {variant!r}")

    report = CriterionReport(f"proof-bounds-{variant}")
    spec = ms_matrix(target, matrix_variant, N)
    result = pd_check(spec)
    if isinstance(result, PDFailure):
        report.checks.append(CheckResult(
            f"{variant}: positive definite precondition", (1, spec.size), False,
            result.u_value, (result.index,), note="not applicable: pd_check failed"))
        return report

    u = result.u_at
    diag_sq = target.alpha_sq(spec.size)
    if variant == "P":
        report.checks.append(_scan(
            "u_{2n+1} > alpha_{2N+1}^2 a_{2n}", ((n,) for n in range(1, N + 1)),
            lambda n: u(2 * n + 1) - diag_sq * seq.a(2 * n), strict=True, n_range=(1, N)))
    else:
        report.checks.append(_scan(
            "u_{2n+2} > alpha~_{2N}^2 c_{2n+1}", ((n,) for n in range(1, N)),
            lambda n: u(2 * n + 2) - diag_sq * seq.c(2 * n + 1), strict=True, n_range=(1, N - 1)))
    return report


def check_lemma3(seq: CoefficientSequence, N: int) -> CriterionReport:
    """Auxiliary inequalities for every matrix parameter N' <= N, plus alpha monotonicity"""
    switched = seq.switch()
    report = CriterionReport("chain-inequalities")

    def p_pairs() -> Iterable[Witness]:
        return ((big, n) for big in range(2, N + 1) for n in range(1, big))

    def q_pairs() -> Iterable[Witness]:
        return ((big, n) for big in range(3, N + 1) for n in range(1, big - 1))

    def odd_step(big: int, n: int) -> Fraction:
        A = seq.alpha_sq(2 * big + 1)
        lhs = (1 - A * seq.a(2 * n + 2)) * seq.alpha_sq(2 * n + 1)
        rhs = A * seq.a(2 * n) * (A - A ** 2 * seq.a(2 * n + 2) - seq.alpha_sq(2 * n + 2))
        return rhs - lhs

    def odd_denominator(big: int, n: int) -> Fraction:
        A = seq.alpha_sq(2 * big + 1)
        return A ** 2 * seq.a(2 * n) - seq.alpha_sq(2 * n + 1)

    def even_step(big: int, n: int) -> Fraction:
        A = switched.alpha_sq(2 * big)
        lhs = (1 - A * seq.c(2 * n + 3)) * switched.alpha_sq(2 * n + 2)
        rhs = A * seq.c(2 * n + 1) * (A - A ** 2 * seq.c(2 * n + 3) - switched.alpha_sq(2 * n + 3))
        return rhs - lhs

    def even_denominator(big: int, n: int) -> Fraction:
        A = switched.alpha_sq(2 * big)
        return A ** 2 * seq.c(2 * n + 1) - switched.alpha_sq(2 * n + 2)

    report.checks.append(_scan("odd chain step (P)", p_pairs(), odd_step, strict=True, n_range=(2, N)))
    report.checks.append(_scan("odd chain denominator (P)", p_pairs(), odd_denominator, strict=True, n_range=(2, N)))
    report.checks.append(_scan("even chain step (P~)", q_pairs(), even_step, strict=True, n_range=(3, N)))
    report.checks.append(_scan("even chain denominator (P~)", q_pairs(), even_denominator, strict=True, n_range=(3, N)))
    report.checks.append(_scan(
        "alpha_{2n-1}^2 strictly increasing", ((n,) for n in range(1, N)),
        lambda n: seq.alpha_sq(2 * n + 1) - seq.alpha_sq(2 * n - 1), strict=True, n_range=(1, N - 1)))
    report.checks.append(_scan(
        "alpha~_{2n}^2 strictly increasing", ((n,) for n in range(1, N)),
        lambda n: switched.alpha_sq(2 * n + 2) - switched.alpha_sq(2 * n), strict=True,
        n_range=(1, N - 1)))
    return report


def ms_pairing_report(seq: CoefficientSequence, N: int) -> CriterionReport:
    """Certificates for the proof's pairing; the opposite pairing is recorded only"""
    switched = seq.switch()
    report = CriterionReport("ms-pairing")
    pairings = [
        ("odd matrices of P", seq, "odd", True),
        ("even matrices of P~", switched, "even", True),
        ("even matrices of P", seq, "even", False),
        ("odd matrices of P~", switched, "odd", False),
    ]
    for label, target, variant, required in pairings:
        failure: Optional[PDFailure] = None
        failed_at = 0
        for big in range(1, N + 1):
            result = pd_check(ms_matrix(target, variant, big))
            if isinstance(result, PDFailure):
                failure, failed_at = result, big
                break
        if failure is None:
            report.checks.append(CheckResult(label, (1, N), True, required=required))
        else:
            report.checks.append(CheckResult(
                label, (1, N), False, failure.u_value, (failed_at, failure.index),
                required=required))
    return report


# -- necessary alternation condition -----------------------------------------

@dataclass(frozen=True)
class NecessaryConditionVerdict:
    kind: str
    up_to: int
    index: Optional[int] = None

    @property
    def violated(self) -> bool:
        return self.kind == "violated"


def necessary_condition(seq: CoefficientSequence, N: int) -> NecessaryConditionVerdict:
    """Classify c_1..c_N against the alternation pattern required for both P and P~"""
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    c1 = seq.c(1)
    if c1 == HALF:
        for n in range(2, N + 1):
            if seq.c(n) != HALF:
                return NecessaryConditionVerdict("violated", N, n)
        return NecessaryConditionVerdict("chebyshev-consistent", N)

    high_first = c1 > HALF
    for n in range(2, N + 1):
        cn = seq.c(n)
        if n % 2:
            ok = cn > c1 if high_first else cn < c1
        else:
            ok = cn < HALF if high_first else cn > HALF
        if not ok:
            return NecessaryConditionVerdict("violated", N, n)
    return NecessaryConditionVerdict("alternating-high-low" if high_first else "alternating-low-high", N)
