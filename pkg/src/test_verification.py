from fractions import Fraction

from core.verification import KS_WITNESS_VALUE, VerificationSuite


def test_full_suite_passes():
    """Every acceptance item reproduces on the default families"""
    print("🧪 Running the acceptance suite")
    result = VerificationSuite().run()
    for item in result.items:
        print(f"   {'✅' if item.passed else '❌'} {item.number:2d} {item.title} ({item.duration:.2f}s)")
    assert [item.number for item in result.items] == list(range(1, 11))
    assert result.passed, [(item.number, item.details) for item in result.failures()]


def test_counterexample_details():
    result = VerificationSuite().run([1])
    item = result.items[0]
    assert item.passed
    assert item.details["g~(3,3;4)"] == KS_WITNESS_VALUE
    assert item.details["first_negative"] is not None
    print("✅ g~(3,3;4) = -128/135")


def test_tampered_prefix_fails_only_the_counterexample():
    suite = VerificationSuite(ks_prefix=[Fraction(5, 9), Fraction(1, 5)])
    result = suite.run([1, 2, 7])
    assert [item.number for item in result.failures()] == [1]
    assert result.items[0].details["g~(3,3;4)"] != KS_WITNESS_VALUE
    print("✅ Tampered coefficients are caught")


def test_item_errors_are_recorded_not_raised():
    suite = VerificationSuite()
    suite.item_chebyshev = lambda: 1 / 0
    result = suite.run([2])
    assert not result.passed
    assert result.items[0].details["error"].startswith("ZeroDivisionError")
    print("✅ Failing items are reported")


if __name__ == "__main__":
    test_full_suite_passes()
    test_counterexample_details()
    test_tampered_prefix_fails_only_the_counterexample()
    test_item_errors_are_recorded_not_raised()
