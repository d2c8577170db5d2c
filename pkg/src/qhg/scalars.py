"""Exact scalar arithmetic: Laurent polynomials in the metric parameter.

Every number in this package is a Laurent polynomial in the metric
parameter (printed ``l``) with arbitrary-precision rational coefficients.
All geometric identities we verify are polynomial identities in that
parameter, so keeping it formal proves them for every positive value at
once.  Specializing the parameter to a rational is supported for report
output.
"""

from __future__ import annotations

from fractions import Fraction

Rat = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


class Scalar:
    """Sparse Laurent polynomial, exponent -> nonzero rational coefficient.

    Instances are immutable.  Division is defined only by monomials
    ``c*l^k`` (the units of the Laurent ring); anything else raises
    ValueError rather than silently leaving the ring.
    """

    __slots__ = ("_c",)

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self._c = value._c
        elif isinstance(value, dict):
            self._c = {e: _as_fraction(c) for e, c in value.items() if c != 0}
        else:
            q = _as_fraction(value)
            self._c = {0: q} if q != 0 else {}

    @staticmethod
    def monomial(coeff, exp: int) -> "Scalar":
        return Scalar({exp: _as_fraction(coeff)})

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._c

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_rational(self) -> bool:
        """True when the scalar is a plain rational (no parameter)."""
        return not self._c or set(self._c) == {0}

    def rational_value(self) -> Fraction:
        if not self._c:
            return Fraction(0)
        if set(self._c) != {0}:
            raise ValueError(f"{self} is not parameter-free")
        return self._c[0]

    def coeff(self, exp: int) -> Fraction:
        return self._c.get(exp, Fraction(0))

    def terms(self):
        """(exponent, coefficient) pairs, descending exponent."""
        return sorted(self._c.items(), reverse=True)

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, Fraction(0)) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return _wrap(c)

    __radd__ = __add__

    def __neg__(self):
        return _wrap({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                s = c.get(e, Fraction(0)) + v1 * v2
                if s:
                    c[e] = s
                else:
                    c.pop(e, None)
        return _wrap(c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        if not other.is_monomial():
            raise ValueError(f"division only by monomials, got divisor {other}")
        ((de, dv),) = other._c.items()
        return _wrap({e - de: v / dv for e, v in self._c.items()})

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only of monomials")
            ((e, v),) = self._c.items()
            return Scalar({e * n: v**n})
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    # -- evaluation and printing -----------------------------------------

    def specialize(self, value) -> Fraction:
        """Evaluate at a concrete rational parameter value."""
        v = _as_fraction(value)
        if v == 0 and any(e < 0 for e in self._c):
            raise ZeroDivisionError("negative exponent at parameter 0")
        return sum((c * v**e for e, c in self._c.items()), Fraction(0))

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, c in self.terms():
            if e == 0:
                body = str(c)
            else:
                var = "l" if e == 1 else f"l^{e}"
                if c == 1:
                    body = var
                elif c == -1:
                    body = f"-{var}"
                else:
                    body = f"{c}*{var}"
            if not parts:
                parts.append(body)
            elif body.startswith("-"):
                parts.append(f"- {body[1:]}")
            else:
                parts.append(f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Scalar({self})"


def _wrap(c: dict[int, Fraction]) -> Scalar:
    s = object.__new__(Scalar)
    s._c = {e: v for e, v in c.items() if v}
    return s


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)
LAM = Scalar({1: Fraction(1)})  # the formal metric parameter
