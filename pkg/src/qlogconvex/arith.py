"""Exact scalars, dense univariate polynomials and sparse polynomials in n, t, x.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`.
Coefficients are normalized so that integral rationals are stored as ``int``;
this keeps the hot loops (products of integer polynomials) in native ints
while leaving room for the half-integers that substitutions like x := t/2
produce.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Scalar = Union[int, Fraction]


def as_scalar(value) -> Scalar:
    """Coerce ``value`` to an exact scalar; integral rationals become ``int``."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return as_scalar(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return as_scalar(Fraction(value))
    raise TypeError(f"inexact or unsupported scalar: {value!r}")


def scalar_str(value: Scalar) -> str:
    """Exact decimal string: ``'12'`` or ``'-7/4'``."""
    value = as_scalar(value)
    return str(value)


def binomial(n: int, k: int) -> int:
    """C(n, k) with the out-of-range convention C(n, k) = 0 unless 0 <= k <= n.

    >>> binomial(10, 5)
    252
    >>> binomial(3, 4), binomial(3, -1)
    (0, 0)
    """
    if n < 0:
        raise ValueError(f"binomial: n must be nonnegative, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# Univariate
# ---------------------------------------------------------------------------


class Poly:
    """Dense polynomial in q with exact coefficients.

    ``coeffs[i]`` is the coefficient of q**i.  Trailing zeros are stripped at
    construction so two polynomials are equal iff their coefficient tuples are.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_scalar(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c: Tuple[Scalar, ...] = tuple(c)

    @classmethod
    def _raw(cls, coeffs: list) -> "Poly":
        # caller guarantees normalized scalars
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = cls.__new__(cls)
        p._c = tuple(coeffs)
        return p

    @property
    def coeffs(self) -> Tuple[Scalar, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with deg(0) = -1."""
        return len(self._c) - 1

    def __getitem__(self, i: int) -> Scalar:
        if 0 <= i < len(self._c):
            return self._c[i]
        return 0

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def leading_coefficient(self) -> Scalar:
        return self._c[-1] if self._c else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Poly([other])._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly", self._c))

    def __repr__(self) -> str:
        return f"Poly({list(self._c)!r})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i, c in enumerate(self._c):
            if c == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts).replace("+ -", "- ")

    def __neg__(self) -> "Poly":
        return Poly._raw([-c for c in self._c])

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = as_scalar(out[i] + c)
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return poly_sub(self, other)

    def __rsub__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return poly_sub(other, self)

    def __mul__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("Poly exponent must be a nonnegative int")
        result, base = Poly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, q) -> Scalar:
        acc: Scalar = 0
        for c in reversed(self._c):
            acc = acc * q + c
        return as_scalar(acc)

    def reversal(self, n: int) -> "Poly":
        """q**n * p(1/q); requires n >= deg(p)."""
        if n < self.degree:
            raise ValueError("reversal degree smaller than polynomial degree")
        padded = list(self._c) + [0] * (n + 1 - len(self._c))
        return Poly._raw(padded[::-1])


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Poly([value])
    return NotImplemented


def poly_mul(p: Poly, r: Poly) -> Poly:
    """Exact convolution of two polynomials."""
    a, b = p.coeffs, r.coeffs
    if not a or not b:
        return Poly()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return Poly._raw([as_scalar(c) for c in out])


def poly_sub(p: Poly, r: Poly) -> Poly:
    """Coefficientwise difference p - r."""
    a, b = p.coeffs, r.coeffs
    size = max(len(a), len(b))
    out = [
        as_scalar((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0))
        for i in range(size)
    ]
    return Poly._raw(out)


# ---------------------------------------------------------------------------
# Multivariate in (n, t, x)
# ---------------------------------------------------------------------------

VARIABLES: Tuple[str, str, str] = ("n", "t", "x")
_VAR_INDEX = {v: i for i, v in enumerate(VARIABLES)}

Exponents = Tuple[int, int, int]


def _var_index(var: str) -> int:
    try:
        return _VAR_INDEX[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}; expected one of {VARIABLES}") from None


class MultiPoly:
    """Sparse polynomial in the variables n, t, x with exact coefficients.

    Terms map exponent triples ``(e_n, e_t, e_x)`` to nonzero coefficients.
    Instances are immutable; arithmetic returns new canonical instances.

    >>> n, t, x = MultiPoly.gens()
    >>> (x + 1) ** 2
    MultiPoly('x^2 + 2*x + 1')
    >>> ((n + x) * (n - x)).derivative("x")
    MultiPoly('-2*x')
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, object] | None = None):
        clean: Dict[Exponents, Scalar] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != 3 or min(exps) < 0:
                raise ValueError(f"bad exponent tuple {exps!r}")
            c = as_scalar(c)
            if c != 0:
                clean[exps] = as_scalar(clean.get(exps, 0) + c)
                if clean[exps] == 0:
                    del clean[exps]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponents, Scalar]) -> "MultiPoly":
        p = cls.__new__(cls)
        p._terms = {e: as_scalar(c) for e, c in terms.items() if c != 0}
        p._hash = None
        return p

    @classmethod
    def const(cls, value) -> "MultiPoly":
        return cls({(0, 0, 0): value})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        e = [0, 0, 0]
        e[_var_index(name)] = 1
        return cls({tuple(e): 1})

    @classmethod
    def gens(cls) -> Tuple["MultiPoly", "MultiPoly", "MultiPoly"]:
        return cls.var("n"), cls.var("t"), cls.var("x")

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponents, Scalar]:
        return dict(self._terms)

    def sorted_terms(self) -> list:
        """Terms in descending (total degree, exponents) order."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == (0, 0, 0) for e in self._terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0, 0, 0), 0)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for e in self._terms:
            used.update(VARIABLES[i] for i in range(3) if e[i])
        return tuple(v for v in VARIABLES if v in used)

    def degree(self, var: str) -> int:
        i = _var_index(var)
        return max((e[i] for e in self._terms), default=-1)

    def coefficient(self, var: str, power: int) -> "MultiPoly":
        """Coefficient of ``var**power`` as a polynomial in the other variables."""
        i = _var_index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i] == power:
                e2 = list(e)
                e2[i] = 0
                out[tuple(e2)] = c
        return MultiPoly._raw(out)

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _as_multi(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                VARIABLES[i] if e[i] == 1 else f"{VARIABLES[i]}^{e[i]}"
                for i in range(3)
                if e[i]
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- ring operations ---------------------------------------------------

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self) -> "MultiPoly":
        return self

    def __add__(self, other) -> "MultiPoly":
        other = _as_multi(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "MultiPoly":
        other = _as_multi(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        other = _as_multi(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "MultiPoly":
        other = _as_multi(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Exponents, Scalar] = {}
        for (a0, a1, a2), ca in self._terms.items():
            for (b0, b1, b2), cb in other._terms.items():
                key = (a0 + b0, a1 + b1, a2 + b2)
                out[key] = out.get(key, 0) + ca * cb
        return MultiPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MultiPoly":
        """Division by a nonzero scalar only."""
        if isinstance(other, MultiPoly):
            other = other.constant_value()
        other = as_scalar(other)
        if other == 0:
            raise ZeroDivisionError("MultiPoly division by zero")
        return MultiPoly._raw({e: Fraction(c) / other for e, c in self._terms.items()})

    def __pow__(self, e: int) -> "MultiPoly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("MultiPoly exponent must be a nonnegative int")
        result, base = MultiPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- calculus / composition -------------------------------------------

    def derivative(self, var: str, order: int = 1) -> "MultiPoly":
        return mp_derivative(self, var, order)

    def subs(self, var: str, replacement) -> "MultiPoly":
        return mp_substitute(self, var, replacement)

    def __call__(self, n=0, t=0, x=0) -> Scalar:
        return mp_eval(self, n, t, x)


def _as_multi(value):
    if isinstance(value, MultiPoly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return MultiPoly.const(value)
    return NotImplemented


def mp_derivative(p: MultiPoly, var: str, order: int = 1) -> MultiPoly:
    """Formal partial derivative of ``p`` with respect to ``var``."""
    i = _var_index(var)
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    terms = p.terms
    for _ in range(order):
        out: Dict[Exponents, Scalar] = {}
        for e, c in terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = c * e[i]
        terms = out
    return MultiPoly._raw(terms)


def mp_substitute(p: MultiPoly, var: str, replacement) -> MultiPoly:
    """Replace ``var`` by ``replacement`` everywhere in ``p`` and expand."""
    i = _var_index(var)
    rep = _as_multi(replacement)
    if rep is NotImplemented:
        raise TypeError(f"cannot substitute {replacement!r}")
    powers = [MultiPoly.const(1)]
    out = MultiPoly()
    for e, c in p.terms.items():
        k = e[i]
        while len(powers) <= k:
            powers.append(powers[-1] * rep)
        rest = list(e)
        rest[i] = 0
        out = out + MultiPoly._raw({tuple(rest): c}) * powers[k]
    return out


def mp_eval(p: MultiPoly, n=0, t=0, x=0) -> Scalar:
    """Exact value of ``p`` at the point (n, t, x)."""
    point = (as_scalar(n), as_scalar(t), as_scalar(x))
    total: Scalar = 0
    for (a, b, c), coef in p.terms.items():
        total += coef * point[0] ** a * point[1] ** b * point[2] ** c
    return as_scalar(total)


def poly_in_x(p: MultiPoly, n, t) -> Poly:
    """Specialize n and t, returning the remaining univariate polynomial in x."""
    deg = p.degree("x")
    coeffs = [0] * (deg + 1)
    nn, tt = as_scalar(n), as_scalar(t)
    for (a, b, c), coef in p.terms.items():
        coeffs[c] += coef * nn**a * tt**b
    return Poly(coeffs)


def sign(value) -> int:
    return (value > 0) - (value < 0)

