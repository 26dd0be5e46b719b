import random
from fractions import Fraction

from core.criteria import (
    PDCertificate,
    PDFailure,
    TridiagonalSpec,
    build_cn,
    check_lemma3,
    check_lemma_bounds,
    check_s_criterion,
    ms_matrix,
    ms_pairing_report,
    necessary_condition,
    pd_check,
    verify_proof_bounds,
)
from core.families import (
    chebyshev,
    constant_family,
    geometric_family,
    ks_counterexample,
    power_s,
    standard_s,
)
from core.sequences import SSequence

F = Fraction


def _first_variant_geometric():
    s, _ = geometric_family(F(1, 3), 5)
    return build_cn(s, "first")


def _check(report, label_prefix):
    return next(check for check in report.checks if check.label.startswith(label_prefix))


def test_s_criterion():
    for tag in ("power5", "factorial"):
        s = standard_s(tag)
        assert check_s_criterion(s, 20).overall, tag
        assert check_lemma_bounds(s, 20).overall, tag
        assert check_lemma3(build_cn(s, "first"), 20).overall, tag

    report = check_s_criterion(power_s(2), 6)
    assert not report.overall
    recurrence = _check(report, "s_n <= ")
    assert not recurrence.passed
    assert recurrence.witness == (3,)
    assert recurrence.margin == F(-3, 8)
    print("✅ s-criterion: 1/5^n and 1/(n+3)! pass, 1/2^n fails at n=3 by -3/8")


def _random_admissible_prefix(rng, length):
    """s_1..s_length satisfying the s-criterion, each term a random fraction of its bound"""
    def shrink(bound):
        return bound * F(rng.randint(1, 99), 100)

    s1 = F(rng.randint(1, 49), 100)
    prefix = [s1, shrink(min((1 - 2 * s1) / (1 - s1), s1 / 4))]
    while len(prefix) < length:
        before, last = prefix[-2], prefix[-1]
        prefix.append(shrink(min(before / 2 - 2 * last, last / 4)))
    return prefix


def test_criterion_implies_lemma_bounds():
    rng = random.Random(20240611)
    for trial in range(40):
        prefix = _random_admissible_prefix(rng, 9)
        s = SSequence("random", {"trial": trial}, lambda n: F(0), prefix)
        assert check_s_criterion(s, 9).overall, prefix
        assert check_lemma_bounds(s, 8).overall, prefix

        # s_{N+1} > 0 is what bounds s_N, so the criterion runs one step further
        perturbed = SSequence("random", {"trial": trial}, lambda n: F(0),
                              [value * F(rng.randint(50, 150), 100) for value in prefix])
        if check_s_criterion(perturbed, 9).overall:
            assert check_lemma_bounds(perturbed, 8).overall
    print("✅ Randomized admissible prefixes satisfy the derived bounds")


def test_lemma_bounds_boundary():
    s = SSequence("prefixed", {}, lambda n: F(1, 5 ** n), [F(1, 2)])
    report = check_lemma_bounds(s, 6)
    first = _check(report, "s_1 < 1/2")
    assert not first.passed and first.margin == 0
    print("✅ s_1 = 1/2 fails the strict bound with margin 0")


def test_build_cn_variants():
    s = standard_s("power5")
    first, second = build_cn(s, "first"), build_cn(s, "second")
    assert first.c(1) == F(4, 5)
    assert second.c(1) == F(1, 5)
    assert second.prefix(10) == first.switch().prefix(10)
    assert first.params["variant"] == "first"
    print("✅ Both constructions, related by switching")


def test_ms_matrix_and_pd_check():
    spec = ms_matrix(chebyshev(), "even", 1)
    assert spec.size == 2
    assert spec.normalized_offdiag_sq == (F(2),)
    failure = pd_check(spec)
    assert isinstance(failure, PDFailure)
    assert failure.index == 2
    assert failure.u_value == -1
    assert failure.u == (F(1), F(-1))

    odd = ms_matrix(_first_variant_geometric(), "odd", 2)
    assert odd.size == 5 and len(odd.normalized_offdiag_sq) == 4
    assert all(0 < q < 1 for q in odd.normalized_offdiag_sq)
    assert ms_matrix(ks_counterexample(), "odd", 1).size == 3

    dominant = TridiagonalSpec(6, 6, (F(1, 5),) * 5)
    certificate = pd_check(dominant)
    assert isinstance(certificate, PDCertificate)
    assert all(u > F(1, 2) for u in certificate.u)
    print("✅ MS matrices and the u-recursion")


def test_certificates_match_fraction_recursion():
    spec = ms_matrix(_first_variant_geometric(), "odd", 4)
    u = [F(1)]
    for q in spec.normalized_offdiag_sq:
        u.append(1 - q / u[-1])
    result = pd_check(spec)
    assert isinstance(result, PDCertificate)
    assert list(result.u) == u
    print("✅ Integer minors reproduce u_{n+1} = 1 - q_n/u_n")


def test_pairing_and_proof_bounds():
    seq = _first_variant_geometric()
    for big in range(1, 21):
        assert isinstance(pd_check(ms_matrix(seq, "odd", big)), PDCertificate)
        assert isinstance(pd_check(ms_matrix(seq.switch(), "even", big)), PDCertificate)
    for big in range(1, 11):
        assert verify_proof_bounds(seq, "P", big).overall
        assert verify_proof_bounds(seq, "Ptilde", big).overall
    assert ms_pairing_report(seq, 10).overall
    assert check_lemma3(seq, 12).overall

    precondition = verify_proof_bounds(chebyshev(), "P", 1)
    assert not precondition.overall
    assert "not applicable" in precondition.checks[0].note
    print("✅ Certificates and proof bounds for geometric(1/3, 5)")


def test_necessary_condition():
    _, second = geometric_family(F(1, 3), 5, "second")
    assert necessary_condition(second, 50).kind == "alternating-low-high"
    assert necessary_condition(_first_variant_geometric(), 50).kind == "alternating-high-low"
    assert necessary_condition(chebyshev(), 50).kind == "chebyshev-consistent"
    assert necessary_condition(ks_counterexample(), 30).kind == "alternating-high-low"

    violated = necessary_condition(constant_family(F(1, 3)), 10)
    assert violated.violated and violated.index == 2
    print("✅ Alternation patterns classified")


if __name__ == "__main__":
    test_s_criterion()
    test_criterion_implies_lemma_bounds()
    test_lemma_bounds_boundary()
    test_build_cn_variants()
    test_ms_matrix_and_pd_check()
    test_certificates_match_fraction_recursion()
    test_pairing_and_proof_bounds()
    test_necessary_condition()
