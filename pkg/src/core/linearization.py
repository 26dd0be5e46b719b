"""Linearization coefficients g(m,n;k) of P_m P_n = sum_k g(m,n;k) P_k."""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

from core.config import settings
from core.exceptions import DegreeBoundError
from core.logger import logger
from core.sequences import CoefficientSequence, monomial_basis

Row = List[Fraction]


def _multiply_by_x(seq: CoefficientSequence, row: Row) -> Row:
    """x * sum_k v_k P_k in the P-basis, using x P_k = a_k P_{k+1} + c_k P_{k-1}"""
    result = [Fraction(0)] * (len(row) + 1)
    for k, value in enumerate(row):
        if not value:
            continue
        if k == 0:
            result[1] += value
        else:
            result[k + 1] += seq.a(k) * value
            result[k - 1] += seq.c(k) * value
    return result


def product_rows(seq: CoefficientSequence, n: int, m_max: int) -> List[Row]:
    """Dense rows of P_m P_n for m = 0..m_max; row m has length m+n+1"""
    rows: List[Row] = [[Fraction(0)] * n + [Fraction(1)]]
    if m_max >= 1:
        rows.append(_multiply_by_x(seq, rows[0]))
    for m in range(1, m_max):
        shifted = _multiply_by_x(seq, rows[m])
        for k, value in enumerate(rows[m - 1]):
            shifted[k] -= seq.c(m) * value
        a_m = seq.a(m)
        rows.append([value / a_m for value in shifted])
    return rows


def product_row(seq: CoefficientSequence, m: int, n: int) -> Row:
    """Dense coefficients g(m,n;0..m+n)"""
    if m < 0 or n < 0:
        raise ValueError(f"indices must be nonnegative, got ({m}, {n})")
    small, large = min(m, n), max(m, n)
    return product_rows(seq, large, small)[small]


def _sparse(row: Row) -> List[Tuple[int, Fraction]]:
    return [(k, value) for k, value in enumerate(row) if value]


def linearize(seq: CoefficientSequence, m: int, n: int) -> List[Tuple[int, Fraction]]:
    """Nonzero (k, g(m,n;k)) pairs, ascending in k"""
    return _sparse(product_row(seq, m, n))


def linearize_oracle(
    seq: CoefficientSequence, m: int, n: int, bound: Optional[int] = None
) -> List[Tuple[int, Fraction]]:
    """Same coefficients via monomial multiplication and triangular back-substitution"""
    bound = settings.ORACLE_MAX_DEGREE if bound is None else bound
    if m < 0 or n < 0:
        raise ValueError(f"indices must be nonnegative, got ({m}, {n})")
    degree = m + n
    if degree > bound:
        raise DegreeBoundError(degree, bound)

    basis = monomial_basis(seq, degree)
    product = [Fraction(0)] * (degree + 1)
    for i, left in enumerate(basis[m]):
        if not left:
            continue
        for j, right in enumerate(basis[n]):
            if right:
                product[i + j] += left * right

    coefficients = [Fraction(0)] * (degree + 1)
    for k in range(degree, -1, -1):
        polynomial = basis[k]
        weight = product[k] / polynomial[k]
        coefficients[k] = weight
        if weight:
            for power, value in enumerate(polynomial):
                product[power] -= weight * value
    return _sparse(coefficients)


def haar_from_g(seq: CoefficientSequence, n: int) -> Fraction:
    """h(n) as 1/g(n,n;0)"""
    return 1 / product_row(seq, n, n)[0]


@dataclass
class LinearizationTable:
    """All g(m,n;k) with m <= n <= M; g(n,m;k) is read through symmetry"""

    max_degree: int
    rows: Dict[Tuple[int, int], Row] = field(default_factory=dict)

    def get(self, m: int, n: int, k: int) -> Fraction:
        if m > n:
            m, n = n, m
        if not (0 <= m <= n <= self.max_degree):
            raise KeyError((m, n))
        row = self.rows[(m, n)]
        if k < n - m or k > m + n:
            return Fraction(0)
        return row[k]

    def entries(self) -> Iterator[Tuple[int, int, int, Fraction]]:
        """(m, n, k, value) over the stored support, lexicographic in (n, m, k)"""
        for n in range(self.max_degree + 1):
            for m in range(n + 1):
                row = self.rows[(m, n)]
                for k in range(n - m, m + n + 1):
                    yield m, n, k, row[k]


@lru_cache(maxsize=16)
def linearization_table(seq: CoefficientSequence, max_degree: int) -> LinearizationTable:
    """Build (and cache per sequence and M) the full table"""
    table = LinearizationTable(max_degree=max_degree)
    for n in range(max_degree + 1):
        for m, row in enumerate(product_rows(seq, n, n)):
            table.rows[(m, n)] = row
    logger.log_system_event("linearization_table_built", {
        "family": seq.family, "switched": seq.switched, "max_degree": max_degree
    })
    return table


@dataclass(frozen=True)
class NonnegativityVerdict:
    max_degree: int
    all_nonnegative: bool
    witness: Optional[Tuple[int, int, int, Fraction]] = None


def scan_nonnegativity(seq: CoefficientSequence, max_degree: int) -> NonnegativityVerdict:
    """First negative g(m,n;k), m <= n <= M, scanning lexicographically in (n, m, k)"""
    table = linearization_table(seq, max_degree)
    for m, n, k, value in table.entries():
        if value < 0:
            logger.log_system_event("negative_linearization_coefficient", {
                "family": seq.family, "m": m, "n": n, "k": k, "value": str(value)
            })
            return NonnegativityVerdict(max_degree, False, (m, n, k, value))
    return NonnegativityVerdict(max_degree, True)
