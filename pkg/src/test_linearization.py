from fractions import Fraction

import pytest

from core.criteria import build_cn
from core.exceptions import DegreeBoundError
from core.families import chebyshev, geometric_family, ks_counterexample, standard_s
from core.linearization import (
    haar_from_g,
    linearization_table,
    linearize,
    linearize_oracle,
    product_row,
    scan_nonnegativity,
)

F = Fraction


def test_chebyshev_product_formula():
    cheb = chebyshev()
    assert linearize(cheb, 2, 3) == [(1, F(1, 2)), (5, F(1, 2))]
    assert linearize(cheb, 0, 4) == [(4, F(1))]
    assert linearize(cheb, 3, 3) == [(0, F(1, 2)), (6, F(1, 2))]

    table = linearization_table(cheb, 12)
    for n in range(1, 13):
        for m in range(1, n + 1):
            for k in range(m + n + 1):
                expected = F(1, 2) if k in (n - m, n + m) else 0
                assert table.get(m, n, k) == expected
                assert table.get(n, m, k) == expected
    print("✅ Chebyshev products split into two halves")


def test_counterexample_negative_coefficient():
    ks = ks_counterexample()
    switched = ks.switch()
    assert dict(linearize(switched, 3, 3))[4] == F(-128, 135)
    assert product_row(switched, 3, 3)[2] == F(7, 27)

    verdict = scan_nonnegativity(switched, 4)
    assert not verdict.all_nonnegative
    assert verdict.witness == (3, 3, 4, F(-128, 135))

    assert scan_nonnegativity(ks, 10).all_nonnegative
    print("✅ Switched counterexample: g(3,3;4) = -128/135")


def test_structural_invariants():
    ks = ks_counterexample()
    for seq in (ks, ks.switch()):
        for n in range(7):
            for m in range(n + 1):
                row = product_row(seq, m, n)
                assert len(row) == m + n + 1
                assert sum(row) == 1
                assert row[m + n] > 0
                assert row[n - m] != 0
                for k, value in enumerate(row):
                    if k < n - m or (m + n - k) % 2:
                        assert value == 0
            assert haar_from_g(seq, n) == seq.haar(n)
    print("✅ Support, parity, normalization and Haar weights")


def test_oracle_agrees():
    ks = ks_counterexample()
    power5 = build_cn(standard_s("power5"), "first")
    for seq in (ks, ks.switch(), power5):
        for n in range(9):
            for m in range(n + 1):
                assert linearize(seq, m, n) == linearize_oracle(seq, m, n)
                assert linearize(seq, n, m) == linearize(seq, m, n)

    with pytest.raises(DegreeBoundError):
        linearize_oracle(ks, 20, 20, bound=30)
    print("✅ Recurrence and monomial oracle agree")


def test_geometric_both_sides_nonnegative():
    s, _ = geometric_family(F(1, 3), 5)
    seq = build_cn(s, "first")
    assert scan_nonnegativity(seq, 15).all_nonnegative
    assert scan_nonnegativity(seq.switch(), 15).all_nonnegative
    print("✅ geometric(1/3, 5): both sides nonnegative to M=15")


if __name__ == "__main__":
    test_chebyshev_product_formula()
    test_counterexample_negative_coefficient()
    test_structural_invariants()
    test_oracle_agrees()
    test_geometric_both_sides_nonnegative()
