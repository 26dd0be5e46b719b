from fractions import Fraction
from math import sqrt

import numpy as np

from core.config import settings
from core.criteria import build_cn
from core.families import chebyshev, geometric_family, ks_counterexample, standard_s
from core.sequences import eval_p
from core.spectrum import (
    compactness_profile,
    dual_membership_zero,
    eigenvalue_histogram,
    eval_R,
    haar_characterization,
    haar_profile,
    jacobi_eigenvalues,
    quadratic_transform,
)

F = Fraction


def _dense(seq, size):
    offdiag = np.sqrt([float(seq.alpha_sq(n)) for n in range(1, size)])
    return np.diag(offdiag, 1) + np.diag(offdiag, -1)


def test_small_truncations():
    report = jacobi_eigenvalues(chebyshev(), 3)
    expected = [-sqrt(3) / 2, 0.0, sqrt(3) / 2]
    assert np.allclose(report.eigenvalues, expected, atol=1e-11)
    assert report.symmetry_defect < 1e-10

    ks = ks_counterexample()
    pair = jacobi_eigenvalues(ks, 2).eigenvalues
    assert np.allclose(pair, [-sqrt(5 / 9), sqrt(5 / 9)], atol=1e-11)
    print("✅ Closed-form spectra for N = 2, 3")


def test_bisection_matches_dense_solver():
    for seq in (ks_counterexample(), build_cn(standard_s("factorial"), "second")):
        report = jacobi_eigenvalues(seq, 40)
        reference = np.linalg.eigvalsh(_dense(seq, 40))
        assert report.eigenvalues == sorted(report.eigenvalues)
        assert np.max(np.abs(np.array(report.eigenvalues) - reference)) < 1e-9
    print("✅ Sturm bisection agrees with numpy.linalg.eigvalsh")


def test_power5_accumulates_at_one():
    seq = build_cn(standard_s("power5"), "first")
    reports = [jacobi_eigenvalues(seq, size) for size in (50, 100, 200)]
    final = reports[-1]
    assert final.symmetry_defect < settings.SYMMETRY_TOLERANCE
    assert final.range_defect < settings.RANGE_TOLERANCE
    assert final.top_gap < settings.TOP_GAP_THRESHOLD
    gaps = [report.top_gap for report in reports]
    assert all(later <= earlier + 1e-9 for earlier, later in zip(gaps, gaps[1:]))

    edges, counts = eigenvalue_histogram(final, 10)
    assert len(edges) == 11 and sum(counts) == 200
    assert counts[0] + counts[-1] > counts[5]
    print(f"✅ power5 spectrum: top gap {final.top_gap:.3e}")


def test_compactness_profile():
    cheb = compactness_profile(chebyshev(), 10)
    assert all(upper == F(1, 4) and lower == F(1, 4) for _, upper, lower in cheb.rows)
    assert not cheb.vanishing

    factorial = compactness_profile(build_cn(standard_s("factorial"), "first"), 20)
    assert factorial.vanishing and factorial.below_from == 8

    power5 = compactness_profile(build_cn(standard_s("power5"), "first"), 12)
    m, _, lower = power5.rows[8]
    assert m == 10
    assert lower == F(1, 5 ** 10) * (1 - F(1, 5 ** 9))
    print("✅ a_{m+1} a_m and c_m c_{m-1} tails")


def test_quadratic_transform():
    seq = build_cn(standard_s("power5"), "first")
    first = quadratic_transform(seq, 1)
    assert first.bR == F(501, 625)
    assert abs(float(first.bR) - 0.8016) < 1e-12
    for n in range(1, 101):
        row = quadratic_transform(seq, n)
        assert row.aR > 0 and row.cR > 0 and row.aR + row.bR + row.cR == 1
    assert abs(float(quadratic_transform(seq, 30).bR) - 1) < 1e-6

    x = F(2, 7)
    for target in (seq, ks_counterexample(), ks_counterexample().switch()):
        for n in range(6):
            assert eval_R(target, n, x * x) == eval_p(target, 2 * n, x)
    print("✅ Quadratic transform: R_n(x^2) = P_2n(x)")


def test_dual_membership_zero():
    cheb = dual_membership_zero(chebyshev(), 10)
    assert all(value == 1 for value in cheb.products)
    assert cheb.certified and cheb.monotonicity == "constant"

    _, geo = geometric_family(F(1, 3), 5, "second")
    report = dual_membership_zero(geo, 50, include_switched=True)
    assert report.certified and report.bounded
    assert report.verdict == "certified bounded"
    assert report.switched.first_exceeding == 1
    assert report.switched.verdict == "unbounded-trend up to 50"
    print("✅ 0 in the dual set for geometric(1/3, 5), not for its switch")


def test_haar_profiles():
    cheb = haar_profile(chebyshev(), 10)
    assert cheb.values[:4] == [1, 2, 2, 2]
    assert cheb.classification == "nondecreasing"

    s = standard_s("power5")
    first, second = build_cn(s, "first"), build_cn(s, "second")
    assert haar_profile(first, 50).classification == "odd-drop"
    assert haar_profile(second, 50).classification == "even-drop"
    for seq in (first, second, ks_counterexample()):
        even_drop = haar_profile(seq, 30).classification == "even-drop"
        assert even_drop == all(seq.a(2 * n - 1) < seq.c(2 * n) for n in range(1, 16))

    assert haar_characterization(chebyshev(), 20).both_nondecreasing
    geometric = haar_characterization(geometric_family(F(1, 3), 5)[1], 20)
    assert not geometric.both_nondecreasing and not geometric.chebyshev
    print("✅ Haar drop patterns")


if __name__ == "__main__":
    test_small_truncations()
    test_bisection_matches_dense_solver()
    test_power5_accumulates_at_one()
    test_compactness_profile()
    test_quadratic_transform()
    test_dual_membership_zero()
    test_haar_profiles()
