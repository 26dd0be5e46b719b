"""Floating-point diagnostics for the orthogonalization measure.

Truncated Jacobi spectra, compactness indicators, the quadratic transform, and
the Haar and dual-set reports.  Only the eigenvalue code uses floats; every
other quantity here stays exact.
"""
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from core.config import settings
from core.logger import logger
from core.sequences import HALF, ONE, CoefficientSequence, p_at_zero_abs


@dataclass
class SpectrumReport:
    size: int
    eigenvalues: List[float]
    symmetry_defect: float
    range_defect: float
    top_gap: float
    tolerance: float = settings.EIGENVALUE_TOLERANCE

    @property
    def symmetric(self) -> bool:
        return self.symmetry_defect < settings.SYMMETRY_TOLERANCE

    @property
    def in_range(self) -> bool:
        return self.range_defect < settings.RANGE_TOLERANCE

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "symmetry_defect": self.symmetry_defect,
            "range_defect": self.range_defect,
            "top_gap": self.top_gap,
            "tolerance": self.tolerance,
            "eigenvalues": list(self.eigenvalues),
        }


def jacobi_offdiagonal_sq(seq: CoefficientSequence, size: int) -> np.ndarray:
    """float(alpha_n^2) for n = 1..size-1"""
    return np.array([float(seq.alpha_sq(n)) for n in range(1, size)], dtype=float)


def tridiagonal_eigenvalues(offdiag_sq: np.ndarray, tolerance: float) -> np.ndarray:
    """All eigenvalues of the zero-diagonal matrix, ascending.

    LAPACK stebz bisects on Sturm counts, so each eigenvalue is located to within
    an interval of width tolerance.
    """
    size = len(offdiag_sq) + 1
    return eigvalsh_tridiagonal(np.zeros(size), np.sqrt(offdiag_sq),
                                lapack_driver="stebz", tol=tolerance)


def jacobi_eigenvalues(seq: CoefficientSequence, N: int,
                       tolerance: Optional[float] = None) -> SpectrumReport:
    """Eigenvalues of the N x N truncation with zero diagonal and off-diagonals sqrt(alpha_n^2)"""
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    tolerance = settings.EIGENVALUE_TOLERANCE if tolerance is None else tolerance
    started = time.perf_counter()
    values = tridiagonal_eigenvalues(jacobi_offdiagonal_sq(seq, N), tolerance)
    report = SpectrumReport(
        size=N,
        eigenvalues=[float(v) for v in values],
        symmetry_defect=float(np.max(np.abs(values + values[::-1]))),
        range_defect=max(0.0, float(np.max(np.abs(values))) - 1.0),
        top_gap=1.0 - float(values[-1]),
        tolerance=tolerance,
    )
    logger.log_system_event("spectrum_computed", {
        "family": seq.family, "switched": seq.switched, "N": N,
        "top_gap": report.top_gap, "duration": time.perf_counter() - started,
    })
    return report


def eigenvalue_histogram(report: SpectrumReport,
                         bins: Optional[int] = None) -> Tuple[List[float], List[int]]:
    """(bin edges, counts) over [-1, 1]; values are clipped into the range first"""
    bins = settings.HISTOGRAM_BINS if bins is None else bins
    clipped = np.clip(np.asarray(report.eigenvalues), -1.0, 1.0)
    counts, edges = np.histogram(clipped, bins=bins, range=(-1.0, 1.0))
    return [float(e) for e in edges], [int(c) for c in counts]


# -- compactness of T_1^2 - id ---------------------------------------------

@dataclass
class CompactnessProfile:
    rows: List[Tuple[int, Fraction, Fraction]]
    threshold: float
    vanishing: bool
    below_from: Optional[int] = None


def compactness_profile(seq: CoefficientSequence, N: int,
                        threshold: Optional[float] = None) -> CompactnessProfile:
    """(m, a_{m+1} a_m, c_m c_{m-1}) for m = 2..N with a tail verdict"""
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    threshold = settings.COMPACTNESS_THRESHOLD if threshold is None else threshold
    rows = [(m, seq.a(m + 1) * seq.a(m), seq.c(m) * seq.c(m - 1)) for m in range(2, N + 1)]

    below_from: Optional[int] = None
    for m, upper, lower in reversed(rows):
        if float(upper) < threshold and float(lower) < threshold:
            below_from = m
        else:
            break
    return CompactnessProfile(rows, threshold, below_from is not None, below_from)


# -- quadratic transform R_n(x^2) = P_{2n}(x) --------------------------------

@dataclass(frozen=True)
class QuadraticTransformRow:
    n: int
    aR: Fraction
    bR: Fraction
    cR: Fraction

    @property
    def balanced(self) -> bool:
        return self.aR + self.bR + self.cR == 1


def quadratic_transform(seq: CoefficientSequence, n: int) -> QuadraticTransformRow:
    """Recurrence coefficients of R_1 R_n = aR R_{n+1} + bR R_n + cR R_{n-1}"""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    a1, c1 = seq.a(1), seq.c(1)
    row = QuadraticTransformRow(
        n,
        seq.a(2 * n) * seq.a(2 * n + 1) / a1,
        (seq.a(2 * n) * seq.c(2 * n + 1) + seq.c(2 * n) * seq.a(2 * n - 1) - c1) / a1,
        seq.c(2 * n) * seq.c(2 * n - 1) / a1,
    )
    if not row.balanced:
        raise ArithmeticError(f"aR + bR + cR != 1 at n={n}")
    return row


def eval_R(seq: CoefficientSequence, n: int, y: Fraction) -> Fraction:
    """R_n(y) with R_0 = 1 and R_1(y) = (y - c_1)/a_1"""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    y = Fraction(y)
    r1 = (y - seq.c(1)) / seq.a(1)
    previous, current = ONE, r1
    if n == 0:
        return previous
    for k in range(1, n):
        row = quadratic_transform(seq, k)
        previous, current = current, ((r1 - row.bR) * current - row.cR * previous) / row.aR
    return current


# -- dual set membership of 0 ------------------------------------------------

@dataclass
class DualMembershipReport:
    up_to: int
    factors: List[Fraction]
    products: List[Fraction]
    supremum: Fraction
    monotonicity: str
    bounded: bool
    certified: bool
    first_exceeding: Optional[int] = None
    switched: Optional["DualMembershipReport"] = None

    @property
    def verdict(self) -> str:
        if self.certified:
            return "certified bounded"
        if self.bounded:
            return f"bounded-by-1 up to {self.up_to}"
        return f"unbounded-trend up to {self.up_to}"


def _monotonicity(values: List[Fraction]) -> str:
    steps = [b - a for a, b in zip(values, values[1:])]
    if all(step == 0 for step in steps):
        return "constant"
    if all(step <= 0 for step in steps):
        return "nonincreasing"
    if all(step >= 0 for step in steps):
        return "nondecreasing"
    return "mixed"


def dual_membership_zero(seq: CoefficientSequence, N: int,
                         include_switched: bool = False) -> DualMembershipReport:
    """|P_{2n}(0)| = prod_{k<=n} c_{2k-1}/a_{2k-1} for n = 1..N"""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    factors = [seq.c(2 * k - 1) / seq.a(2 * k - 1) for k in range(1, N + 1)]
    products: List[Fraction] = []
    running = ONE
    for factor in factors:
        running *= factor
        products.append(running)
    if products[-1] != p_at_zero_abs(seq, 2 * N):
        raise ArithmeticError(f"product of factors differs from |P_{2 * N}(0)|")

    first_exceeding = next((n for n, value in enumerate(products, start=1) if value > 1), None)
    report = DualMembershipReport(
        up_to=N,
        factors=factors,
        products=products,
        supremum=max(products),
        monotonicity=_monotonicity(products),
        bounded=first_exceeding is None,
        certified=all(factor <= 1 for factor in factors),
        first_exceeding=first_exceeding,
    )
    if include_switched:
        report.switched = dual_membership_zero(seq.switch(), N)
    return report


# -- Haar function ------------------------------------------------------------

@dataclass
class HaarProfile:
    up_to: int
    values: List[Fraction]
    drops: List[int]
    classification: str


def haar_profile(seq: CoefficientSequence, N: int) -> HaarProfile:
    """h(0..N), the indices n with h(n) < h(n-1), and the drop pattern"""
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    values = [seq.haar(n) for n in range(N + 1)]
    drops = [n for n in range(1, N + 1) if values[n] < values[n - 1]]
    dropped = set(drops)

    if not drops:
        classification = "nondecreasing"
    elif all(n in dropped for n in range(2, N + 1, 2)):
        classification = "even-drop"
    elif N >= 3 and all(n in dropped for n in range(3, N + 1, 2)):
        classification = "odd-drop"
    else:
        classification = "irregular"
    return HaarProfile(N, values, drops, classification)


@dataclass
class HaarCharacterization:
    up_to: int
    nondecreasing: bool
    switched_nondecreasing: bool
    complementary: bool
    chebyshev: bool

    @property
    def both_nondecreasing(self) -> bool:
        return self.nondecreasing and self.switched_nondecreasing


def haar_characterization(seq: CoefficientSequence, N: int) -> HaarCharacterization:
    """Whether h and h~ are both nondecreasing up to N.

    Both being nondecreasing forces c_n + c_{n+1} = 1, which for a sequence with
    nonnegative linearization on both sides only leaves c_n = 1/2.
    """
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    switched = seq.switch()
    result = HaarCharacterization(
        up_to=N,
        nondecreasing=haar_profile(seq, N).classification == "nondecreasing",
        switched_nondecreasing=haar_profile(switched, N).classification == "nondecreasing",
        complementary=all(seq.c(n) + seq.c(n + 1) == 1 for n in range(1, N)),
        chebyshev=all(seq.c(n) == HALF for n in range(1, N + 1)),
    )
    if result.both_nondecreasing and not result.complementary:
        raise ArithmeticError("both Haar functions nondecreasing without c_n + c_{n+1} = 1")
    return result
