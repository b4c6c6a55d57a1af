"""Exact univariate and bivariate polynomials over the rationals.

Coefficients are :class:`fractions.Fraction` throughout. ``Poly1`` is dense
(lowest degree first), ``Poly2`` is a sparse map from exponent pairs to
coefficients. Both are immutable; every operation returns a new object.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence

from ..errors import NonzeroRemainder

Scalar = Fraction


def as_scalar(value) -> Fraction:
    """Read ``value`` as an exact rational.

    Strings may be integers, fractions (``"-25/101"``) or decimals
    (``"0.149717"``); decimals are read as exact base-10 fractions. Floats go
    through their shortest ``repr`` so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite scalar {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip().replace(" ", ""))
    raise TypeError(f"cannot read {type(value).__name__} as an exact scalar")


def _lcm_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = out * v.denominator // math.gcd(out, v.denominator)
    return out


def integer_content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, v)
        if g == 1:
            break
    return g


# ---------------------------------------------------------------------------
# univariate


class Poly1:
    """Dense univariate polynomial with rational coefficients."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Sequence = (), var: str = "y"):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var

    @classmethod
    def _raw(cls, coeffs: list[Fraction], var: str) -> "Poly1":
        # trusted constructor: coefficients already Fractions
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj.var = var
        return obj

    @classmethod
    def constant(cls, c, var: str = "y") -> "Poly1":
        return cls([c], var)

    @classmethod
    def variable(cls, var: str = "y") -> "Poly1":
        return cls([0, 1], var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "y") -> "Poly1":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-as_scalar(r), 1], var)
        return p

    # -- basic properties -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly1):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly1([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs,))

    def _coerce(self, other) -> "Poly1":
        if isinstance(other, Poly1):
            if other.var != self.var and other.degree > 0 and self.degree > 0:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        return Poly1([other], self.var)

    # -- ring operations --------------------------------------------------
    def __add__(self, other) -> "Poly1":
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        out = [
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        ]
        return Poly1._raw([Fraction(c) for c in out], self.var)

    __radd__ = __add__

    def __neg__(self) -> "Poly1":
        return Poly1._raw([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> "Poly1":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly1":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly1":
        if not isinstance(other, Poly1):
            c = as_scalar(other)
            return Poly1._raw([c * a for a in self.coeffs], self.var)
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return Poly1._raw([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return Poly1._raw(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly1":
        if n < 0:
            raise ValueError("negative power")
        result = Poly1([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, value):
        """Horner evaluation; exact for rationals, floating for floats."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc if self.coeffs else value * 0

    def derivative(self) -> "Poly1":
        return Poly1._raw([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def divmod(self, other: "Poly1") -> tuple["Poly1", "Poly1"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        lead = other.lc
        if len(r) - 1 < d:
            return Poly1._raw([], self.var), self
        q = [Fraction(0)] * (len(r) - d)
        for k in range(len(r) - 1 - d, -1, -1):
            c = r[k + d] / lead
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return Poly1._raw(q, self.var), Poly1._raw(r[:d], self.var)

    def exact_div(self, other: "Poly1") -> "Poly1":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise NonzeroRemainder(f"{other} does not divide {self}")
        return q

    def monic(self) -> "Poly1":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def integer_coeffs(self) -> list[int]:
        """Primitive integer coefficients proportional (positively) to ``self``."""
        if not self.coeffs:
            return []
        m = _lcm_denominators(self.coeffs)
        ints = [int(c * m) for c in self.coeffs]
        g = integer_content(ints)
        return [v // g for v in ints]

    def rename(self, var: str) -> "Poly1":
        return Poly1._raw(list(self.coeffs), var)

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self.coeffs), default=Fraction(0))

    def to_float_coeffs(self) -> list[float]:
        return [float(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"Poly1({format_poly1(self)!r})"

    def __str__(self) -> str:
        return format_poly1(self)


def poly_gcd(a: Poly1, b: Poly1) -> Poly1:
    """Monic gcd over Q, computed with a primitive integer remainder sequence."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    x, y = a.integer_coeffs(), b.integer_coeffs()
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = int_prem(x, y)
        x, y = y, primitive(r)
    return Poly1([Fraction(c) for c in x], a.var).monic()


def primitive(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return []
    g = integer_content(coeffs)
    return [c // g for c in coeffs]


def int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b`` over Z."""
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(r) - 1 < db:
        return r
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        r = [v * lead for v in r]
        if c:
            for j, bj in enumerate(b):
                r[k + j] -= c * bj
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r


def format_poly1(p: Poly1) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (p.var if i == 1 else f"{p.var}^{i}")
        parts.append(_term(c, mono))
    return _join(parts)


def _term(c: Fraction, mono: str) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if mono and a == 1:
        body = mono
    elif mono:
        body = f"{a}*{mono}"
    else:
        body = str(a)
    return sign + body


def _join(parts: list[str]) -> str:
    s = " ".join(p[0] + " " + p[1:] for p in parts)
    if s.startswith("+ "):
        s = s[2:]
    elif s.startswith("- "):
        s = "-" + s[2:]
    return s


# ---------------------------------------------------------------------------
# bivariate

Exponent = tuple[int, int]


class Poly2:
    """Sparse bivariate polynomial with rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[Exponent, object] | None = None, vars=("y1", "y2")):
        clean: dict[Exponent, Fraction] = {}
        for (i, j), c in (terms or {}).items():
            c = as_scalar(c)
            if c != 0:
                clean[(int(i), int(j))] = clean.get((int(i), int(j)), Fraction(0)) + c
        self.terms: dict[Exponent, Fraction] = {k: v for k, v in clean.items() if v != 0}
        self.vars: tuple[str, str] = tuple(vars)

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction], vars) -> "Poly2":
        obj = cls.__new__(cls)
        obj.terms = {k: v for k, v in terms.items() if v != 0}
        obj.vars = vars
        return obj

    @classmethod
    def constant(cls, c, vars=("y1", "y2")) -> "Poly2":
        return cls({(0, 0): c}, vars)

    @classmethod
    def variable(cls, name: str, vars=("y1", "y2")) -> "Poly2":
        if name not in vars:
            raise ValueError(f"{name!r} not one of {vars}")
        return cls({(1, 0) if name == vars[0] else (0, 1): 1}, vars)

    @classmethod
    def linear(cls, a, b, c, vars=("x", "y")) -> "Poly2":
        """``a*v0 + b*v1 + c``."""
        return cls({(1, 0): a, (0, 1): b, (0, 0): c}, vars)

    @classmethod
    def from_poly1(cls, p: Poly1, var: str, vars) -> "Poly2":
        idx = vars.index(var)
        return cls._raw(
            {((k, 0) if idx == 0 else (0, k)): c for k, c in enumerate(p.coeffs)}, tuple(vars)
        )

    # -- properties -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        idx = self._index(var)
        return max((e[idx] for e in self.terms), default=-1)

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValueError(f"{var!r} is not a variable of {self.vars}") from None

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly2):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly2.constant(other, self.vars).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def _coerce(self, other) -> "Poly2":
        if isinstance(other, Poly2):
            if other.vars != self.vars:
                if other.total_degree <= 0:
                    return Poly2._raw(dict(other.terms), self.vars)
                if self.total_degree <= 0:
                    raise _SwapVars()
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        return Poly2._raw({(0, 0): as_scalar(other)}, self.vars)

    # -- ring operations --------------------------------------------------
    def __add__(self, other) -> "Poly2":
        try:
            o = self._coerce(other)
        except _SwapVars:
            return other + self
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return Poly2._raw(out, self.vars)

    __radd__ = __add__

    def __neg__(self) -> "Poly2":
        return Poly2._raw({k: -v for k, v in self.terms.items()}, self.vars)

    def __sub__(self, other) -> "Poly2":
        try:
            o = self._coerce(other)
        except _SwapVars:
            return -(other - self)
        return self + (-o)

    def __rsub__(self, other) -> "Poly2":
        return (-self) + other

    def __mul__(self, other) -> "Poly2":
        if not isinstance(other, Poly2):
            c = as_scalar(other)
            return Poly2._raw({k: v * c for k, v in self.terms.items()}, self.vars)
        try:
            o = self._coerce(other)
        except _SwapVars:
            return other * self
        out: dict[Exponent, Fraction] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in o.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return Poly2._raw(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly2":
        if n < 0:
            raise ValueError("negative power")
        result = Poly2.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- calculus and evaluation -----------------------------------------
    def derivative(self, var: str) -> "Poly2":
        idx = self._index(var)
        out = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[idx]
            if e:
                out[(i - 1, j) if idx == 0 else (i, j - 1)] = c * e
        return Poly2._raw(out, self.vars)

    def evaluate(self, point):
        """Substitute both variables; ``point`` is a pair or a ``{var: value}`` dict."""
        if isinstance(point, Mapping):
            a, b = point[self.vars[0]], point[self.vars[1]]
        else:
            a, b = point
        if not isinstance(a, float):
            a = as_scalar(a)
        if not isinstance(b, float):
            b = as_scalar(b)
        total = 0
        for (i, j), c in self.terms.items():
            total += c * a**i * b**j
        return total if self.terms else Fraction(0)

    def __call__(self, a, b):
        return self.evaluate((a, b))

    def coefficients_in(self, var: str) -> list[Poly1]:
        """``self = sum_k c_k * var**k`` with ``c_k`` polynomials in the other variable."""
        idx = self._index(var)
        other = self.vars[1 - idx]
        d = self.degree_in(var)
        buckets: list[dict[int, Fraction]] = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            buckets[e[idx]][e[1 - idx]] = c
        out = []
        for b in buckets:
            n = max(b, default=-1) + 1
            out.append(Poly1._raw([b.get(k, Fraction(0)) for k in range(n)], other))
        return out

    def substitute(self, var: str, value) -> Poly1:
        """Fix ``var = value`` (a scalar); the result is a polynomial in the other variable."""
        value = as_scalar(value)
        idx = self._index(var)
        other = self.vars[1 - idx]
        out: dict[int, Fraction] = {}
        for e, c in self.terms.items():
            out[e[1 - idx]] = out.get(e[1 - idx], 0) + c * value ** e[idx]
        n = max(out, default=-1) + 1
        return Poly1._raw([Fraction(out.get(k, 0)) for k in range(n)], other)

    def swap(self) -> "Poly2":
        """Exchange the two arguments: ``p(v0, v1) -> p(v1, v0)`` on the same variables."""
        return Poly2._raw({(j, i): c for (i, j), c in self.terms.items()}, self.vars)

    def is_symmetric(self) -> bool:
        return self.terms == self.swap().terms

    def max_abs_coeff(self) -> Fraction:
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    def exact_div(self, other: "Poly2") -> "Poly2":
        return exact_divide(self, other)

    def rename(self, vars) -> "Poly2":
        return Poly2._raw(dict(self.terms), tuple(vars))

    def float_terms(self) -> list[tuple[int, int, float]]:
        return [(i, j, float(c)) for (i, j), c in self.terms.items()]

    def compile(self) -> Callable[[float, float], float]:
        """Return a fast float evaluator ``f(a, b)``."""
        return _compile_terms(self.float_terms())

    def __repr__(self) -> str:
        return f"Poly2({format_poly2(self)!r})"

    def __str__(self) -> str:
        return format_poly2(self)


class _SwapVars(Exception):
    pass


def _compile_terms(terms: list[tuple[int, int, float]]) -> Callable[[float, float], float]:
    if not terms:
        return lambda a, b: 0.0
    di = max(t[0] for t in terms)
    dj = max(t[1] for t in terms)
    # rows[i] = dense coefficients in b for a**i, evaluated by nested Horner
    rows = [[0.0] * (dj + 1) for _ in range(di + 1)]
    for i, j, c in terms:
        rows[i][j] += c
    rows = [tuple(reversed(r)) for r in rows]
    rows.reverse()

    def f(a: float, b: float) -> float:
        acc = 0.0
        for row in rows:
            s = 0.0
            for c in row:
                s = s * b + c
            acc = acc * a + s
        return acc

    return f


def format_poly2(p: Poly2) -> str:
    if p.is_zero():
        return "0"
    v0, v1 = p.vars
    parts = []
    for (i, j) in sorted(p.terms, key=lambda e: (-(e[0] + e[1]), -e[0])):
        c = p.terms[(i, j)]
        m = []
        if i:
            m.append(v0 if i == 1 else f"{v0}^{i}")
        if j:
            m.append(v1 if j == 1 else f"{v1}^{j}")
        parts.append(_term(c, "*".join(m)))
    return _join(parts)


def _lex_key(e: Exponent) -> Exponent:
    return e


def exact_divide(p: Poly2, q: Poly2) -> Poly2:
    """Return ``p / q``, raising :class:`NonzeroRemainder` unless ``q`` divides ``p``.

    Single-divisor lex division: whenever ``q | r`` the leading term of ``q``
    divides the leading term of ``r``, so failure at any step proves inexactness.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    q = p._coerce(q) if q.vars != p.vars else q
    lt_q = max(q.terms, key=_lex_key)
    lc_q = q.terms[lt_q]
    r = dict(p.terms)
    quot: dict[Exponent, Fraction] = {}
    while r:
        lt_r = max(r, key=_lex_key)
        di, dj = lt_r[0] - lt_q[0], lt_r[1] - lt_q[1]
        if di < 0 or dj < 0:
            raise NonzeroRemainder(f"({q}) does not divide ({p})")
        c = r[lt_r] / lc_q
        quot[(di, dj)] = c
        for (i, j), b in q.terms.items():
            k = (i + di, j + dj)
            v = r.get(k, 0) - c * b
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return Poly2._raw(quot, p.vars)


def substitute_rational(p: Poly2, var: str, num: Poly1, den: Poly1) -> Poly1:
    """Clear denominators after ``var <- num/den``.

    Returns ``den**d * p(num/den, other)`` with ``d`` the degree of ``p`` in
    ``var``; ``num`` and ``den`` are polynomials in the other variable.
    """
    if den.is_zero():
        raise ZeroDivisionError("substitution with zero denominator")
    other = p.vars[1 - p._index(var)]
    num, den = num.rename(other), den.rename(other)
    cs = p.coefficients_in(var)
    d = len(cs) - 1
    if d < 0:
        return Poly1._raw([], other)
    num_pows = [Poly1([1], other)]
    for _ in range(d):
        num_pows.append(num_pows[-1] * num)
    den_pows = [Poly1([1], other)]
    for _ in range(d):
        den_pows.append(den_pows[-1] * den)
    out = Poly1._raw([], other)
    for k, c in enumerate(cs):
        if not c.is_zero():
            out = out + c * num_pows[k] * den_pows[d - k]
    return out


class RationalFn:
    """Quotient of two polynomials (``Poly1`` or ``Poly2``); denominator nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = type(num).constant(1, num.var if isinstance(num, Poly1) else num.vars)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den

    def __call__(self, *args):
        if isinstance(self.num, Poly1):
            (a,) = args
            return self.num(a) / self.den(a)
        return self.num(*args) / self.den(*args)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFn):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        raise TypeError("RationalFn is unhashable")

    def __repr__(self) -> str:
        return f"RationalFn(({self.num}) / ({self.den}))"
