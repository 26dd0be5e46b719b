"""Acceptance suite: every headline claim reproduced in one run."""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from core.config import settings
from core.criteria import (
    PDCertificate,
    PDFailure,
    build_cn,
    check_lemma3,
    check_lemma_bounds,
    check_s_criterion,
    ms_matrix,
    necessary_condition,
    pd_check,
    verify_proof_bounds,
)
from core.families import (
    chebyshev,
    coefficients_from_alpha,
    geometric_family,
    haar_eps_family,
    alternating_alpha_sq,
    ks_counterexample,
    power_s,
    standard_s,
)
from core.linearization import linearization_table, linearize, linearize_oracle, scan_nonnegativity
from core.logger import logger
from core.performance_monitor import verification_monitor
from core.sequences import HALF, CoefficientSequence
from core.spectrum import dual_membership_zero, haar_profile, jacobi_eigenvalues, quadratic_transform

KS_WITNESS_VALUE = Fraction(-128, 135)


@dataclass
class ItemResult:
    number: int
    title: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    duration: float = 0.0


@dataclass
class SuiteResult:
    items: List[ItemResult]

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)

    def failures(self) -> List[ItemResult]:
        return [item for item in self.items if not item.passed]


def _first_variant_geometric() -> CoefficientSequence:
    s, _ = geometric_family(Fraction(1, 3), 5)
    return build_cn(s, "first")


class VerificationSuite:
    """Runs the acceptance items in order; each item returns (passed, details)"""

    def __init__(self, ks_prefix: Optional[Sequence[Fraction]] = None,
                 pd_max: int = 100, bounds_max: int = 50, spectrum_size: int = 200):
        ks = ks_counterexample()
        self.ks = ks.with_prefix(ks_prefix) if ks_prefix else ks
        self.pd_max = pd_max
        self.bounds_max = bounds_max
        self.spectrum_size = spectrum_size

    @property
    def items(self) -> List[Tuple[int, str, Callable[[], Tuple[bool, Dict[str, Any]]]]]:
        return [
            (1, "counterexample constant", self.item_counterexample),
            (2, "Chebyshev linearization", self.item_chebyshev),
            (3, "sufficient-criterion witness", self.item_power5_linearization),
            (4, "positive definiteness machinery", self.item_pd),
            (5, "Haar anomalies", self.item_haar),
            (6, "criterion suite", self.item_criteria),
            (7, "necessary condition", self.item_necessary),
            (8, "dual membership of 0", self.item_dual),
            (9, "spectrum diagnostics", self.item_spectrum),
            (10, "orthonormal weight round trip", self.item_round_trip),
        ]

    def run(self, only: Optional[Sequence[int]] = None) -> SuiteResult:
        results = []
        for number, title, item in self.items:
            if only and number not in only:
                continue
            start = verification_monitor.start_check()
            try:
                passed, details = item()
            except Exception as exc:
                logger.log_error(exc, f"acceptance item {number}")
                passed, details = False, {"error": f"{type(exc).__name__}: {exc}"}
            duration = verification_monitor.end_check(f"item-{number}", start, passed)
            logger.log_check(f"item-{number} {title}", passed, duration)
            results.append(ItemResult(number, title, passed, details, duration))
        return SuiteResult(results)

    # -- items -------------------------------------------------------------

    def item_counterexample(self):
        value = dict(linearize(self.ks.switch(), 3, 3)).get(4, Fraction(0))
        verdict = scan_nonnegativity(self.ks.switch(), 4)
        return value == KS_WITNESS_VALUE, {
            "g~(3,3;4)": value,
            "expected": KS_WITNESS_VALUE,
            "first_negative": list(verdict.witness) if verdict.witness else None,
        }

    def item_chebyshev(self, max_degree: int = 20):
        table = linearization_table(chebyshev(), max_degree)
        for n in range(1, max_degree + 1):
            for m in range(1, n + 1):
                for k in range(0, m + n + 1):
                    expected = HALF if k in (n - m, n + m) else Fraction(0)
                    if table.get(m, n, k) != expected:
                        return False, {"m": m, "n": n, "k": k, "value": table.get(m, n, k)}
        return True, {"max_degree": max_degree}

    def item_power5_linearization(self, max_degree: int = 25, oracle_degree: int = 12):
        s = standard_s("power5")
        details: Dict[str, Any] = {}
        passed = True
        for variant in ("first", "second"):
            seq = build_cn(s, variant)
            for target, label in ((seq, variant), (seq.switch(), f"{variant}~")):
                verdict = scan_nonnegativity(target, max_degree)
                details[f"{label} nonnegative to {max_degree}"] = verdict.all_nonnegative
                passed &= verdict.all_nonnegative
                mismatch = next(
                    ((m, n) for n in range(oracle_degree + 1) for m in range(n + 1)
                     if linearize(target, m, n) != linearize_oracle(target, m, n)),
                    None,
                )
                details[f"{label} oracle mismatch"] = list(mismatch) if mismatch else None
                passed &= mismatch is None
        return passed, details

    def item_pd(self):
        seq = _first_variant_geometric()
        switched = seq.switch()
        details: Dict[str, Any] = {}
        passed = True
        for label, target, variant in (("odd on P", seq, "odd"), ("even on P~", switched, "even")):
            failed_at = next(
                (big for big in range(1, self.pd_max + 1)
                 if not isinstance(pd_check(ms_matrix(target, variant, big)), PDCertificate)),
                None,
            )
            details[f"{label} certified to {self.pd_max}"] = failed_at is None
            passed &= failed_at is None
        for variant in ("P", "Ptilde"):
            failed_at = next(
                (big for big in range(1, self.bounds_max + 1)
                 if not verify_proof_bounds(seq, variant, big).overall),
                None,
            )
            details[f"bounds {variant} to {self.bounds_max}"] = failed_at is None
            passed &= failed_at is None

        control = pd_check(ms_matrix(chebyshev(), "even", 1))
        control_ok = isinstance(control, PDFailure) and control.index == 2 and control.u_value == -1
        details["Chebyshev even N=1 u_2"] = control.u[-1]
        return passed and control_ok, details

    def item_haar(self):
        _, eps_seq = haar_eps_family(HALF, 5)
        _, geo_seq = geometric_family(Fraction(1, 3))
        s = standard_s("power5")
        first = haar_profile(build_cn(s, "first"), 50).classification
        second = haar_profile(build_cn(s, "second"), 50).classification
        details = {
            "haar_eps h(1)": eps_seq.haar(1),
            "haar_eps h(2)": eps_seq.haar(2),
            "geometric h(1)": geo_seq.haar(1),
            "power5 first": first,
            "power5 second": second,
        }
        passed = (
            eps_seq.haar(2) == Fraction(3, 2)
            and eps_seq.haar(1) == Fraction(61, 25)
            and geo_seq.haar(1) == 3
            and first == "odd-drop"
            and second == "even-drop"
        )
        return passed, details

    def item_criteria(self, N: int = 20):
        details: Dict[str, Any] = {}
        passed = True
        for tag in ("power5", "factorial"):
            s = standard_s(tag)
            reports = (check_s_criterion(s, N), check_lemma_bounds(s, N),
                       check_lemma3(build_cn(s, "first"), N))
            ok = all(report.overall for report in reports)
            details[tag] = ok
            passed &= ok

        failing = check_s_criterion(power_s(2), 3)
        recurrence = next(c for c in failing.checks if c.label.startswith("s_n <= "))
        details["1/2^n margin"] = recurrence.margin
        details["1/2^n index"] = list(recurrence.witness)
        control_ok = (not recurrence.passed and recurrence.witness == (3,)
                      and recurrence.margin == Fraction(-3, 8))
        return passed and control_ok, details

    def item_necessary(self, N: int = 50):
        _, geo = geometric_family(Fraction(1, 3), 5, "second")
        geometric = necessary_condition(geo, N).kind
        cheb = necessary_condition(chebyshev(), N).kind
        return (geometric == "alternating-low-high" and cheb == "chebyshev-consistent",
                {"geometric second": geometric, "chebyshev": cheb})

    def item_dual(self, N: int = 50):
        _, geo = geometric_family(Fraction(1, 3), 5, "second")
        report = dual_membership_zero(geo, N, include_switched=True)
        switched = report.switched
        passed = (report.certified and switched is not None
                  and switched.first_exceeding is not None and switched.first_exceeding <= 2)
        return passed, {
            "certified": report.certified,
            "switched first exceeding": switched.first_exceeding if switched else None,
        }

    def item_spectrum(self):
        seq = build_cn(standard_s("power5"), "first")
        sizes = [self.spectrum_size // 4, self.spectrum_size // 2, self.spectrum_size]
        reports = [jacobi_eigenvalues(seq, size) for size in sizes]
        final = reports[-1]
        gaps = [report.top_gap for report in reports]
        gaps_ok = all(later <= earlier + 1e-9 for earlier, later in zip(gaps, gaps[1:]))

        rows = [quadratic_transform(seq, n) for n in range(1, 101)]
        b30 = rows[29].bR
        passed = (
            final.symmetry_defect < settings.SYMMETRY_TOLERANCE
            and final.range_defect < settings.RANGE_TOLERANCE
            and final.top_gap < settings.TOP_GAP_THRESHOLD
            and gaps_ok
            and all(row.balanced for row in rows)
            and abs(float(b30) - 1) < 1e-6
        )
        return passed, {
            "symmetry_defect": final.symmetry_defect,
            "range_defect": final.range_defect,
            "top_gaps": dict(zip(map(str, sizes), gaps)),
            "bR(30)": b30,
        }

    def item_round_trip(self, count: int = 20):
        recovered = coefficients_from_alpha(self.ks.alpha_sq).prefix(count)
        from_weights = coefficients_from_alpha(alternating_alpha_sq(2, 5)).prefix(count)
        original = self.ks.prefix(count)
        return recovered == original and from_weights == ks_counterexample().prefix(count), {
            "round trip": recovered == original,
            "alpha=2, beta=5 weights": from_weights == ks_counterexample().prefix(count),
        }
