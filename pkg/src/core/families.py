"""Generators for every concrete sequence the verifier knows about."""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from math import factorial
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from core.criteria import build_cn
from core.exceptions import DocumentError, DomainViolationError, InadmissibleParameterError
from core.logger import logger
from core.rationals import parse_rational, rational_sqrt
from core.sequences import HALF, CoefficientSequence, SSequence

FAMILY_TAGS = (
    "chebyshev", "geometric", "haar_eps", "ks_counterexample", "power5", "factorial",
    "explicit", "power", "constant", "ks_alpha",
)

FORMULAS = {
    "chebyshev": {"c_n": "1/2"},
    "ks_counterexample": {"c_{2n-1}": "(6n+4)/(9n+9)", "c_{2n}": "(n+1)/(3n+5)"},
    "geometric": {"s_n": "C'/K^(n-1)", "C'": "min(C, 1-C)"},
    "haar_eps": {"s_1": "K^2/((2+eps)K^2 - (1+eps))", "s_n": "1/K^n (n >= 2)"},
    "power5": {"s_n": "1/5^n"},
    "factorial": {"s_n": "1/(n+3)!"},
}


def _chebyshev_rule(n: int) -> Fraction:
    return HALF


def _ks_rule(n: int) -> Fraction:
    if n % 2:
        k = (n + 1) // 2
        return Fraction(6 * k + 4, 9 * k + 9)
    k = n // 2
    return Fraction(k + 1, 3 * k + 5)


def _power5_rule(n: int) -> Fraction:
    return Fraction(1, 5 ** n)


def _factorial_rule(n: int) -> Fraction:
    return Fraction(1, factorial(n + 3))


def chebyshev() -> CoefficientSequence:
    """c_n = 1/2: Chebyshev polynomials of the first kind"""
    return CoefficientSequence("chebyshev", {}, _chebyshev_rule)


def ks_counterexample() -> CoefficientSequence:
    """c_{2n-1} = (6n+4)/(9n+9), c_{2n} = (n+1)/(3n+5)"""
    return CoefficientSequence("ks_counterexample", {}, _ks_rule)


def constant_family(value) -> CoefficientSequence:
    value = parse_rational(value)
    if not 0 < value < 1:
        raise InadmissibleParameterError(f"constant value must lie in (0,1), got {value}")
    return CoefficientSequence("constant", {"value": value}, lambda n: value)


def explicit_family(values) -> CoefficientSequence:
    """Finite sequence; querying past the end raises DocumentError"""
    return CoefficientSequence("explicit", {}, None, [parse_rational(v) for v in values])


def standard_s(tag: str) -> SSequence:
    """s_n = 1/5^n ('power5') or s_n = 1/(n+3)! ('factorial')"""
    if tag == "power5":
        return SSequence("power5", {}, _power5_rule)
    if tag == "factorial":
        return SSequence("factorial", {}, _factorial_rule)
    raise InadmissibleParameterError(f"unknown standard s-sequence {tag!r}")


def power_s(base: int) -> SSequence:
    """s_n = 1/base^n"""
    if base == 5:
        return standard_s("power5")
    if int(base) != base or base < 2:
        raise InadmissibleParameterError(f"base must be an integer >= 2, got {base}")
    base = int(base)
    return SSequence("power", {"base": base}, lambda n: Fraction(1, base ** n))


# -- parameterized constructions -------------------------------------------

def _geometric_expressions(c_prime: Fraction, K: int) -> List[Fraction]:
    return [
        (1 - 2 * c_prime) * K + c_prime ** 2 - c_prime,
        Fraction(K * K - 4 * K - 2),
    ]


def _haar_eps_s1(eps: Fraction, K: int) -> Fraction:
    return Fraction(K * K) / ((2 + eps) * K * K - (1 + eps))


def _haar_eps_expressions(eps: Fraction, K: int) -> List[Fraction]:
    s1 = _haar_eps_s1(eps, K)
    return [
        eps * K ** 4 - (1 + eps) * (2 * K * K - 1),
        s1 / 2 - Fraction(2, K ** 2) - Fraction(1, K ** 3),
        Fraction(K * K - 4 * K - 2),
        min(s1, 1 - s1),
        Fraction(K - 1),
    ]


def _admissible(tag: str, params: Mapping[str, Fraction], K: int) -> bool:
    if tag == "geometric":
        expressions = _geometric_expressions(params["C_prime"], K)
    elif tag == "haar_eps":
        expressions = _haar_eps_expressions(params["eps"], K)
    else:
        raise InadmissibleParameterError(f"minimal_K is defined for geometric and haar_eps, not {tag!r}")
    return all(value > 0 for value in expressions)


def _validated_c(C) -> Tuple[Fraction, Fraction]:
    C = parse_rational(C)
    if not 0 < C < 1 or C == HALF:
        raise InadmissibleParameterError(f"C must lie in (0,1) and differ from 1/2, got {C}")
    return C, min(C, 1 - C)


def _validated_eps(eps) -> Fraction:
    eps = parse_rational(eps)
    if not 0 < eps < 1:
        raise InadmissibleParameterError(f"eps must lie in (0,1), got {eps}")
    return eps


def minimal_K(tag: str, params: Mapping[str, object]) -> int:
    """Smallest positive integer K making every construction expression positive.

    Each expression is a polynomial in K with positive leading coefficient
    (or tends to a positive limit), so the search terminates.
    """
    if tag == "geometric":
        _, c_prime = _validated_c(params["C"])
        normalized = {"C_prime": c_prime}
    elif tag == "haar_eps":
        normalized = {"eps": _validated_eps(params["eps"])}
    else:
        raise InadmissibleParameterError(f"minimal_K is defined for geometric and haar_eps, not {tag!r}")
    for K in count(1):
        if _admissible(tag, normalized, K):
            logger.log_system_event("minimal_K_found", {"tag": tag, "K": K})
            return K
    raise AssertionError("unreachable")


def _resolve_K(tag: str, params: Mapping[str, object], K: Optional[int],
               normalized: Mapping[str, Fraction]) -> int:
    if K is None or K == "auto":
        return minimal_K(tag, params)
    if int(K) != K or K < 1:
        raise InadmissibleParameterError(f"K must be a positive integer, got {K}")
    K = int(K)
    if not _admissible(tag, normalized, K):
        raise InadmissibleParameterError(f"K={K} is inadmissible for {tag} with {dict(params)}")
    return K


def geometric_family(C, K: Optional[int] = None,
                     variant: Optional[str] = None) -> Tuple[SSequence, CoefficientSequence]:
    """s_n = C'/K^(n-1) with C' = min(C, 1-C); variant chosen so that c_1 = C"""
    C, c_prime = _validated_c(C)
    K = _resolve_K("geometric", {"C": C}, K, {"C_prime": c_prime})
    s = SSequence("geometric", {"C": C, "K": K}, lambda n: c_prime / K ** (n - 1))
    expected = "first" if C > HALF else "second"
    if variant is not None and variant != expected:
        raise InadmissibleParameterError(
            f"variant {variant!r} gives c_1 = {1 - C}, not C = {C}; use variant {expected!r}")
    return s, build_cn(s, expected)


def haar_eps_family(eps, K: Optional[int] = None,
                    variant: str = "second") -> Tuple[SSequence, CoefficientSequence]:
    """s_1 = K^2/((2+eps)K^2 - (1+eps)), s_n = 1/K^n (n >= 2); second variant gives h(2) = 1+eps"""
    eps = _validated_eps(eps)
    K = _resolve_K("haar_eps", {"eps": eps}, K, {"eps": eps})
    s1 = _haar_eps_s1(eps, K)
    s = SSequence("haar_eps", {"eps": eps, "K": K},
                  lambda n: s1 if n == 1 else Fraction(1, K ** n))
    return s, build_cn(s, variant)


# -- orthonormal weights -> coefficients --------------------------------------

def coefficients_from_alpha(
    alpha_sq_rule: Callable[[int], Fraction],
    family: str = "from_alpha",
    params: Optional[Mapping[str, object]] = None,
) -> CoefficientSequence:
    """Recover c_1 = alpha_1^2, c_n = alpha_n^2 / (1 - c_{n-1})"""
    recovered: Dict[int, Fraction] = {}

    def rule(n: int) -> Fraction:
        for k in range(len(recovered) + 1, n + 1):
            weight = Fraction(alpha_sq_rule(k))
            value = weight if k == 1 else weight / (1 - recovered[k - 1])
            if not 0 < value < 1:
                raise DomainViolationError(k, value)
            recovered[k] = value
        return recovered[n]

    return CoefficientSequence(family, params or {}, rule)


def alternating_alpha_sq(alpha, beta) -> Callable[[int], Fraction]:
    """Piecewise-constant squared weights for parameters alpha, beta >= 2.

    alpha_1 = sqrt(beta)/D, alpha_even = sqrt(alpha-1)/D, alpha_odd = sqrt(beta-1)/D with
    D = sqrt(alpha-1) + sqrt(beta-1); only rational squares are accepted.
    """
    alpha, beta = parse_rational(alpha), parse_rational(beta)
    if alpha < 2 or beta < 2:
        raise InadmissibleParameterError(f"alpha and beta must be >= 2, got {alpha}, {beta}")
    try:
        root_alpha, root_beta = rational_sqrt(alpha - 1), rational_sqrt(beta - 1)
    except ValueError as exc:
        raise InadmissibleParameterError(f"irrational weights: {exc}") from exc
    denominator = (root_alpha + root_beta) ** 2
    first, even, odd = beta / denominator, (alpha - 1) / denominator, (beta - 1) / denominator

    def rule(n: int) -> Fraction:
        if n == 1:
            return first
        return even if n % 2 == 0 else odd

    return rule


def ks_alpha_family(alpha, beta) -> CoefficientSequence:
    alpha, beta = parse_rational(alpha), parse_rational(beta)
    return coefficients_from_alpha(
        alternating_alpha_sq(alpha, beta), "ks_alpha", {"alpha": alpha, "beta": beta})


# -- documents -------------------------------------------------------------

def _optional_K(value: object) -> Optional[int]:
    if value is None or value == "auto":
        return None
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"K must be an integer or 'auto', got {value!r}", field="params.K") from exc


@dataclass
class FamilySpec:
    """Tag plus parameter record addressing one family instance"""

    tag: str
    params: Dict[str, object] = field(default_factory=dict)
    explicit_prefix: List[Fraction] = field(default_factory=list)
    switched: bool = False

    @classmethod
    def from_document(cls, document: Mapping[str, object]) -> "FamilySpec":
        if not isinstance(document, Mapping) or "family" not in document:
            raise DocumentError("sequence document needs a 'family' field")
        tag = document["family"]
        if tag not in FAMILY_TAGS:
            raise DocumentError(f"unknown family {tag!r}", field="family")
        params = document.get("params") or {}
        if not isinstance(params, Mapping):
            raise DocumentError("params must be an object", field="params")
        prefix = [parse_rational(v) for v in document.get("explicit_prefix") or []]
        switched = document.get("switched", False)
        if not isinstance(switched, bool):
            raise DocumentError(f"switched must be true or false, got {switched!r}", field="switched")
        return cls(tag, dict(params), prefix, switched)

    def build(self) -> Tuple[Optional[SSequence], CoefficientSequence]:
        """(s-sequence or None, coefficient sequence)"""
        s, seq = self._build_base()
        if self.explicit_prefix:
            seq = seq.with_prefix(self.explicit_prefix)
        if self.switched:
            seq = seq.switch()
        return s, seq

    def _build_base(self) -> Tuple[Optional[SSequence], CoefficientSequence]:
        p = self.params
        variant = p.get("variant")
        if self.tag == "chebyshev":
            return None, chebyshev()
        if self.tag == "ks_counterexample":
            return None, ks_counterexample()
        if self.tag == "geometric":
            return geometric_family(p.get("C"), _optional_K(p.get("K")), variant)
        if self.tag == "haar_eps":
            return haar_eps_family(p.get("eps"), _optional_K(p.get("K")), variant or "second")
        if self.tag in ("power5", "factorial"):
            s = standard_s(self.tag)
            return s, build_cn(s, variant or "first")
        if self.tag == "power":
            s = power_s(int(p.get("base", 5)))
            return s, build_cn(s, variant or "first")
        if self.tag == "constant":
            return None, constant_family(p.get("value"))
        if self.tag == "ks_alpha":
            return None, ks_alpha_family(p.get("alpha", 2), p.get("beta", 5))
        if self.tag == "explicit":
            if not self.explicit_prefix:
                raise DocumentError("explicit family needs explicit_prefix", field="explicit_prefix")
            return None, explicit_family(self.explicit_prefix)
        raise DocumentError(f"unknown family {self.tag!r}", field="family")


def sequence_from_document(document: Mapping[str, object]) -> Tuple[Optional[SSequence], CoefficientSequence]:
    return FamilySpec.from_document(document).build()
