"""Exact Laurent polynomials in q over the integers, and q-analogs.

Storage is dense: ``coeffs[k]`` is the coefficient of ``q**(min_exp + k)``.
The zero polynomial has no coefficients and ``min_exp == 0``.
"""
from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from operator import add
from typing import Iterable, Sequence


class NotDivisible(ArithmeticError):
    pass


class ZeroPolynomial(ValueError):
    pass


class BadSet(ValueError):
    pass


class LaurentPolynomial:
    __slots__ = ("min_exp", "coeffs")

    def __init__(self, coeffs: Iterable[int] = (), min_exp: int = 0):
        c = [int(x) for x in coeffs]
        lo = 0
        while lo < len(c) and c[lo] == 0:
            lo += 1
        hi = len(c)
        while hi > lo and c[hi - 1] == 0:
            hi -= 1
        object.__setattr__(self, "coeffs", tuple(c[lo:hi]))
        object.__setattr__(self, "min_exp", min_exp + lo if hi > lo else 0)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls((coeff,), exp)

    @classmethod
    def from_exponents(cls, exps) -> "LaurentPolynomial":
        """Sum of ``q**e`` over ``exps``; also accepts a Counter of exponents."""
        counts = exps if isinstance(exps, Counter) else Counter(exps)
        return cls.from_terms(counts.items())

    @classmethod
    def from_terms(cls, terms) -> "LaurentPolynomial":
        terms = [(e, c) for e, c in terms if c]
        if not terms:
            return ZERO
        lo = min(e for e, _ in terms)
        hi = max(e for e, _ in terms)
        c = [0] * (hi - lo + 1)
        for e, v in terms:
            c[e - lo] += v
        return cls(c, lo)

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, exp: int) -> int:
        k = exp - self.min_exp
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def terms(self):
        """(exponent, coefficient) pairs with nonzero coefficient, ascending."""
        return [(self.min_exp + k, c) for k, c in enumerate(self.coeffs) if c]

    def shift(self, k: int) -> "LaurentPolynomial":
        """Multiply by ``q**k``."""
        if not self.coeffs:
            return self
        return LaurentPolynomial(self.coeffs, self.min_exp + k)

    def __call__(self, x):
        if not self.coeffs:
            return 0
        total = 0
        for k, c in enumerate(self.coeffs):
            total += c * Fraction(x) ** (self.min_exp + k)
        return int(total) if total.denominator == 1 else total

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial((other,))
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.min_exp == other.min_exp and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.min_exp, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return LaurentPolynomial([-c for c in self.coeffs], self.min_exp)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        c = [0] * (hi - lo + 1)
        for k, v in enumerate(self.coeffs, self.min_exp - lo):
            c[k] += v
        for k, v in enumerate(other.coeffs, other.min_exp - lo):
            c[k] += v
        return LaurentPolynomial(c, lo)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        if len(a) > len(b):
            a, b = b, a
        # schoolbook, one shifted row of b per coefficient of the shorter factor
        lb = len(b)
        res = [0] * (len(a) + lb - 1)
        for i, x in enumerate(a):
            if x:
                row = b if x == 1 else [x * y for y in b]
                res[i:i + lb] = map(add, res[i:i + lb], row)
        return LaurentPolynomial(res, self.min_exp + other.min_exp)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self):
        return f"LaurentPolynomial({list(self.coeffs)}, min_exp={self.min_exp})"

    def __str__(self):
        return format_poly(self)

    def to_json(self) -> dict:
        return {"min_exp": self.min_exp, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPolynomial":
        return cls([int(c) for c in data["coeffs"]], int(data["min_exp"]))

    @classmethod
    def parse(cls, text: str) -> "LaurentPolynomial":
        return parse_poly(text)


def _coerce(x):
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial((x,))
    return NotImplemented


ZERO = LaurentPolynomial()
ONE = LaurentPolynomial((1,))
Q = LaurentPolynomial((1,), 1)


def format_poly(p: LaurentPolynomial) -> str:
    """Ascending exponents, e.g. ``q^-2 + 3 + 2*q^5``."""
    if not p.coeffs:
        return "0"
    out = []
    for e, c in p.terms():
        mag = abs(c)
        if e == 0:
            body = str(mag)
        elif mag == 1:
            body = f"q^{e}"
        else:
            body = f"{mag}*q^{e}"
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


_TERM = re.compile(r"^(\d+)?\*?(q(?:\^(-?\d+))?)?$")


def parse_poly(text: str) -> LaurentPolynomial:
    """Inverse of :func:`format_poly`; also accepts ``q`` for ``q^1``."""
    s = text.replace(" ", "").replace("^-", "^~")
    if s in ("", "0"):
        return ZERO
    terms = []
    for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
        m = _TERM.match(body.replace("~", "-"))
        if not m or not (m.group(1) or m.group(2)):
            raise ValueError(f"cannot parse term {body!r} in {text!r}")
        coeff_txt, q_txt, exp_txt = m.groups()
        coeff = int(coeff_txt) if coeff_txt else 1
        exp = int(exp_txt) if exp_txt else (1 if q_txt else 0)
        terms.append((exp, -coeff if sign == "-" else coeff))
    return LaurentPolynomial.from_terms(terms)


def exact_div(p: LaurentPolynomial, d: LaurentPolynomial) -> LaurentPolynomial:
    """Quotient ``r`` with ``p == d * r``; raises NotDivisible otherwise."""
    if not d.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.coeffs:
        return ZERO
    # d's coefficient list has nonzero constant term, so divisibility in the
    # Laurent ring reduces to divisibility of coefficient lists in Z[q].
    rem = list(p.coeffs)
    dc = d.coeffs
    lead = dc[-1]
    nq = len(rem) - len(dc) + 1
    if nq <= 0:
        raise NotDivisible(f"{p} is not divisible by {d}")
    quot = [0] * nq
    for k in range(nq - 1, -1, -1):
        top = rem[k + len(dc) - 1]
        if top % lead:
            raise NotDivisible(f"{p} is not divisible by {d}")
        c = top // lead
        quot[k] = c
        if c:
            for j, v in enumerate(dc):
                rem[k + j] -= c * v
    if any(rem):
        raise NotDivisible(f"{p} is not divisible by {d}")
    return LaurentPolynomial(quot, p.min_exp - d.min_exp)


def shape(p: LaurentPolynomial) -> tuple[bool, bool]:
    """(symmetric, unimodal) over the full support, interior zeros included."""
    if not p.coeffs:
        raise ZeroPolynomial("shape of the zero polynomial is undefined")
    c = p.coeffs
    symmetric = c == c[::-1]
    k = 0
    while k + 1 < len(c) and c[k] <= c[k + 1]:
        k += 1
    while k + 1 < len(c) and c[k] >= c[k + 1]:
        k += 1
    return symmetric, k == len(c) - 1


def q_int(n: int) -> LaurentPolynomial:
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    return LaurentPolynomial([1] * n)


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentPolynomial:
    if n < 0:
        raise ValueError("q_factorial needs n >= 0")
    if n == 0:
        return ONE
    return q_factorial(n - 1) * q_int(n)


@lru_cache(maxsize=None)
def _multinomial_sorted(parts: tuple) -> LaurentPolynomial:
    denom = ONE
    for k in parts:
        denom = denom * q_factorial(k)
    return exact_div(q_factorial(sum(parts)), denom)


def q_multinomial(parts: Sequence[int]) -> LaurentPolynomial:
    if any(k < 0 for k in parts):
        raise ValueError(f"negative part in {list(parts)}")
    # symmetric in its parts; zero parts contribute [0]_q! = 1
    return _multinomial_sorted(tuple(sorted(k for k in parts if k)))


def q_binomial(n: int, k: int) -> LaurentPolynomial:
    if not 0 <= k <= n:
        raise ValueError(f"q_binomial needs 0 <= k <= n, got n={n}, k={k}")
    return q_multinomial((k, n - k))


def delta_parts(n: int, M) -> list[int]:
    """Consecutive differences of ``{0} | M | {n}`` (with m_0 = 0, m_{t+1} = n)."""
    ms = sorted(M)
    if any(not 0 <= m < n for m in ms) or len(set(ms)) != len(ms):
        raise BadSet(f"{sorted(M)} is not a subset of [0, {n - 1}]")
    bounds = [0, *ms, n]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def delta_multinomial(n: int, M) -> LaurentPolynomial:
    return q_multinomial(delta_parts(n, M))


@lru_cache(maxsize=None)
def one_plus_q_product(a: int, b: int) -> LaurentPolynomial:
    """prod_{j=a}^{b} (1 + q^j); empty product when a > b."""
    result = ONE
    for j in range(a, b + 1):
        result = result * (ONE + LaurentPolynomial.monomial(j))
    return result


def substitute_power(p: LaurentPolynomial, k: int) -> LaurentPolynomial:
    """p(q^k)."""
    if k < 1:
        raise ValueError("substitute_power needs k >= 1")
    return LaurentPolynomial.from_terms((k * e, c) for e, c in p.terms())
