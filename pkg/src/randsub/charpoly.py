"""Integer polynomials and the characteristic polynomial of a subtraction set.

For ``S = {k_1 < ... < k_t}`` the recurrence has characteristic polynomial

    chi_S(x) = t x^{k_t} + sum_i x^{k_t - k_i}

Everything here is exact integer arithmetic.  Whether ``-1`` is a root, and
whether all roots are simple, are decided without floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import IdentityCheckError
from .recurrence import SubtractionSet


def _trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(int(x) for x in c)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients in ascending degree order.

    The zero polynomial has ``coeffs == ()`` and degree -1.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> IntPolynomial:
        if not terms:
            return cls()
        c = [0] * (max(terms) + 1)
        for e, v in terms.items():
            c[e] += v
        return cls(c)

    @classmethod
    def from_text(cls, text: str) -> IntPolynomial:
        """Parse space-separated ascending coefficients, e.g. ``"1 0 1 0 0 2"``."""
        return cls(int(tok) for tok in text.split())

    def to_text(self) -> str:
        return " ".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> IntPolynomial:
        """Divide by the content; leading coefficient made positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mag = abs(c)
            body = {0: f"{mag}", 1: f"{'' if mag == 1 else mag}x"}.get(
                e, f"{'' if mag == 1 else mag}x^{e}"
            )
            terms.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


X_PLUS_ONE = IntPolynomial((1, 1))


def characteristic_poly(S: SubtractionSet) -> IntPolynomial:
    """``t x^{k_t} + sum_i x^{k_t - k_i}`` (the ``i = t`` term is the constant 1)."""
    terms = {S.k_max: S.t}
    for k in S.elements:
        terms[S.k_max - k] = terms.get(S.k_max - k, 0) + 1
    return IntPolynomial.from_terms(terms)


def eval_integer(p: IntPolynomial, x: int) -> int:
    return p(x)


def derivative(p: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(i * c for i, c in enumerate(p.coeffs) if i > 0)


def divide_by_x_plus_one(p: IntPolynomial) -> tuple[IntPolynomial, int]:
    """Synthetic division: returns ``(q, r)`` with ``p = (x + 1) q + r``."""
    if p.degree < 1:
        return IntPolynomial(), p(0) if p.coeffs else 0
    c = p.coeffs
    q = [0] * p.degree
    carry = 0
    for i in range(p.degree, 0, -1):
        carry = c[i] - carry if i < p.degree else c[i]
        q[i - 1] = carry
    r = c[0] - q[0]
    return IntPolynomial(q), r


def quotient_closed_form(S: SubtractionSet) -> IntPolynomial:
    """Closed form of ``chi_S / (x + 1)`` for an all-odd set.

    Let ``0 = s_0 < s_1 < ... < s_t = k_t`` be the exponents carrying nonzero
    coefficients in ``chi_S``.  The quotient has coefficient ``(m+1)(-1)^i`` at
    ``x^i`` for ``s_m <= i < s_{m+1}``.  The identity ``(x+1) Q = chi_S`` is
    checked exactly before returning.
    """
    if not S.all_odd:
        raise ValueError(f"{S} has an even element; -1 is not a root")
    support = sorted(set(S.d_values) | {0})
    coeffs = [0] * S.k_max
    for m in range(len(support) - 1):
        for i in range(support[m], support[m + 1]):
            coeffs[i] = (m + 1) * (-1) ** i
    Q = IntPolynomial(coeffs)
    if X_PLUS_ONE * Q != characteristic_poly(S):
        raise IdentityCheckError(f"(x+1)*Q != chi_S for {S}")
    return Q


def pseudo_remainder(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """``prem(a, b)``: remainder of ``lc(b)^(deg a - deg b + 1) * a`` by ``b``."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by the zero polynomial")
    r = list(a.coeffs)
    db = b.degree
    lb = b.leading
    bc = b.coeffs
    e = a.degree - db + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j, y in enumerate(bc):
            r[shift + j] -= lr * y
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e > 0:
        r = [x * lb**e for x in r]
    return IntPolynomial(r)


def _exact_div(p: IntPolynomial, d: int) -> IntPolynomial:
    out = []
    for c in p.coeffs:
        q, rem = divmod(c, d)
        if rem:
            raise IdentityCheckError("subresultant division was not exact")
        out.append(q)
    return IntPolynomial(out)


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Z[x] by the subresultant remainder sequence."""
    if a.degree < b.degree:
        a, b = b, a
    if b.is_zero():
        return a.primitive()
    ca, cb = a.content(), b.content()
    d = math.gcd(ca, cb)
    A, B = a.primitive(), b.primitive()
    g = h = 1
    while True:
        delta = A.degree - B.degree
        R = pseudo_remainder(A, B)
        if R.is_zero():
            break
        if R.degree == 0:
            return IntPolynomial((d,)).primitive()
        A = B
        B = _exact_div(R, g * h**delta)
        g = A.leading
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)
    return B.primitive() * d if d != 1 else B.primitive()


def square_free_test(p: IntPolynomial) -> bool:
    """True iff ``gcd(p, p')`` is constant, i.e. every complex root is simple."""
    if p.degree < 1:
        raise ValueError("square-free test needs degree >= 1")
    return poly_gcd(p, derivative(p)).degree == 0


def lagrange_bound(p: IntPolynomial) -> float:
    """``max(1, sum |c_i / c_d|)`` over the non-leading coefficients."""
    lead = abs(p.leading)
    return max(1.0, sum(abs(c) for c in p.coeffs[:-1]) / lead)
