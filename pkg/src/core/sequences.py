"""Random walk polynomial sequences in exact arithmetic.

A sequence is a lazy rule n -> c_n with a_n = 1 - c_n.  Values are validated
on access and memoized per instance; an instance is meant to be used from one
thread at a time (the memo is a plain dict).
"""
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from core.exceptions import DocumentError, DomainViolationError
from core.rationals import format_rational

Rule = Callable[[int], Fraction]

ONE = Fraction(1)
HALF = Fraction(1, 2)


def _in_unit_interval(value: Fraction) -> bool:
    return 0 < value < 1


def _params_key(params: Mapping[str, object]) -> Tuple:
    return tuple(sorted((key, str(value)) for key, value in params.items()))


class CoefficientSequence:
    """Recurrence coefficients c_n of x P_n = a_n P_{n+1} + c_n P_{n-1}"""

    def __init__(
        self,
        family: str,
        params: Optional[Mapping[str, object]] = None,
        rule: Optional[Rule] = None,
        explicit_prefix: Iterable[Fraction] = (),
        switched: bool = False,
    ):
        self.family = family
        self.params: Dict[str, object] = dict(params or {})
        self.explicit_prefix: Tuple[Fraction, ...] = tuple(Fraction(v) for v in explicit_prefix)
        self.switched = switched
        self._rule = rule
        self._cache: Dict[int, Fraction] = {}
        self._haar: List[Fraction] = [ONE]
        self._monomials: List[List[Fraction]] = []

    # -- coefficients ---------------------------------------------------

    def _raw(self, n: int) -> Fraction:
        if n <= len(self.explicit_prefix):
            return self.explicit_prefix[n - 1]
        if self._rule is None:
            raise DocumentError(f"no coefficient defined for n={n}", field="explicit_prefix")
        return Fraction(self._rule(n))

    def c(self, n: int) -> Fraction:
        """c_n, validated to lie in (0,1)"""
        if n < 1:
            raise ValueError(f"c_n is defined for n >= 1, got {n}")
        value = self._cache.get(n)
        if value is None:
            raw = self._raw(n)
            if not _in_unit_interval(raw):
                raise DomainViolationError(n, raw)
            value = ONE - raw if self.switched else raw
            self._cache[n] = value
        return value

    def a(self, n: int) -> Fraction:
        """a_n = 1 - c_n"""
        return ONE - self.c(n)

    def a0(self, n: int) -> Fraction:
        """a_n with the convention a_0 = 1 used by the Haar product"""
        return ONE if n == 0 else self.a(n)

    def switch(self) -> "CoefficientSequence":
        """Companion with the roles of a_n and c_n exchanged"""
        return CoefficientSequence(
            self.family, self.params, self._rule, self.explicit_prefix, not self.switched
        )

    def with_prefix(self, explicit_prefix: Iterable[Fraction]) -> "CoefficientSequence":
        """Same rule with the first values overridden (values are pre-switch)"""
        return CoefficientSequence(
            self.family, self.params, self._rule, explicit_prefix, self.switched
        )

    def alpha_sq(self, n: int) -> Fraction:
        """Squared orthonormal recurrence weight: c_1 for n=1, c_n a_{n-1} otherwise"""
        if n < 1:
            raise ValueError(f"alpha_n is defined for n >= 1, got {n}")
        if n == 1:
            return self.c(1)
        return self.c(n) * self.a(n - 1)

    def haar(self, n: int) -> Fraction:
        """Haar weight h(n) = prod_{k=1}^n a_{k-1}/c_k"""
        if n < 0:
            raise ValueError(f"h(n) is defined for n >= 0, got {n}")
        while len(self._haar) <= n:
            k = len(self._haar)
            self._haar.append(self._haar[-1] * self.a0(k - 1) / self.c(k))
        return self._haar[n]

    def prefix(self, count: int) -> List[Fraction]:
        """c_1..c_count"""
        return [self.c(n) for n in range(1, count + 1)]

    # -- identity -------------------------------------------------------

    def _key(self) -> Tuple:
        return (self.family, _params_key(self.params), self.explicit_prefix,
                self.switched, id(self._rule))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoefficientSequence):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        tilde = "~" if self.switched else ""
        return f"CoefficientSequence({tilde}{self.family}, {self.params})"

    def to_document(self) -> dict:
        """Serializable description {family, params, explicit_prefix, switched}"""
        return {
            "family": self.family,
            "params": {key: _encode_param(value) for key, value in sorted(self.params.items())},
            "explicit_prefix": [format_rational(v) for v in self.explicit_prefix],
            "switched": self.switched,
        }


class SSequence:
    """Auxiliary sequence s_n in (0,1) feeding the two build_cn constructions"""

    def __init__(
        self,
        family: str,
        params: Optional[Mapping[str, object]] = None,
        rule: Optional[Rule] = None,
        explicit_prefix: Iterable[Fraction] = (),
    ):
        self.family = family
        self.params: Dict[str, object] = dict(params or {})
        self.explicit_prefix: Tuple[Fraction, ...] = tuple(Fraction(v) for v in explicit_prefix)
        self._rule = rule
        self._cache: Dict[int, Fraction] = {}

    def raw(self, n: int) -> Fraction:
        """s_n without range validation"""
        if n < 1:
            raise ValueError(f"s_n is defined for n >= 1, got {n}")
        if n <= len(self.explicit_prefix):
            return self.explicit_prefix[n - 1]
        if self._rule is None:
            raise DocumentError(f"no s value defined for n={n}", field="explicit_prefix")
        return Fraction(self._rule(n))

    def __call__(self, n: int) -> Fraction:
        value = self._cache.get(n)
        if value is None:
            value = self.raw(n)
            if not _in_unit_interval(value):
                raise DomainViolationError(n, value, what="s")
            self._cache[n] = value
        return value

    def __repr__(self) -> str:
        return f"SSequence({self.family}, {self.params})"

    def to_document(self) -> dict:
        return {
            "family": self.family,
            "params": {key: _encode_param(value) for key, value in sorted(self.params.items())},
            "explicit_prefix": [format_rational(v) for v in self.explicit_prefix],
        }


def _encode_param(value: object) -> object:
    if isinstance(value, Fraction):
        return format_rational(value)
    return value


# -- polynomial evaluation ----------------------------------------------

def eval_p(seq: CoefficientSequence, n: int, x: Fraction) -> Fraction:
    """P_n(x) by the forward recurrence P_{k+1} = (x P_k - c_k P_{k-1}) / a_k"""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    x = Fraction(x)
    previous, current = ONE, x
    if n == 0:
        return previous
    for k in range(1, n):
        previous, current = current, (x * current - seq.c(k) * previous) / seq.a(k)
    return current


def monomial_basis(seq: CoefficientSequence, n: int) -> List[List[Fraction]]:
    """Monomial coefficient lists of P_0..P_n (index = power of x)"""
    basis = seq._monomials
    if not basis:
        basis.append([ONE])
        basis.append([Fraction(0), ONE])
    while len(basis) <= n:
        k = len(basis) - 1
        a_k, c_k = seq.a(k), seq.c(k)
        current, previous = basis[k], basis[k - 1]
        shifted = [Fraction(0)] + current
        for power, coefficient in enumerate(previous):
            shifted[power] -= c_k * coefficient
        basis.append([value / a_k for value in shifted])
    return basis[: n + 1]


def monomial_coeffs(seq: CoefficientSequence, n: int) -> List[Fraction]:
    """Coefficients of P_n in the monomial basis, length n+1"""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    return list(monomial_basis(seq, n)[n])


def p_at_zero_abs(seq: CoefficientSequence, n: int) -> Fraction:
    """|P_n(0)|: 0 for odd n, prod_{k=1}^{n/2} c_{2k-1}/a_{2k-1} for even n"""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    if n % 2:
        return Fraction(0)
    value = ONE
    for k in range(1, n // 2 + 1):
        value *= seq.c(2 * k - 1) / seq.a(2 * k - 1)
    return value


def evaluate_polynomial(coefficients: Sequence[Fraction], x: Fraction) -> Fraction:
    """Horner evaluation of a monomial coefficient list"""
    value = Fraction(0)
    for coefficient in reversed(coefficients):
        value = value * x + coefficient
    return value
