"""Certified real-root isolation with Sturm sequences.

Everything here works on primitive integer coefficient lists so sign tests
are exact. Bisection points are dyadic rationals; a polynomial is evaluated at
``n/d`` through the homogeneous form ``sum c_i n^i d^(deg-i)``, whose sign
matches ``p(n/d)`` because ``d > 0``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from ..errors import ZeroPolynomial
from .polynomials import Poly1, int_prem, primitive

try:  # GMP integers make the Sturm chain several times faster
    from gmpy2 import mpz as _bigint
except ImportError:  # pragma: no cover
    _bigint = int

REL_WIDTH = 1e-14


class IsolatedRoot(NamedTuple):
    interval: tuple[Fraction, Fraction]
    value: float


def squarefree(p: Poly1) -> Poly1:
    """Squarefree part ``p / gcd(p, p')`` with primitive integer coefficients."""
    if p.is_zero():
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    coeffs, _ = _squarefree_chain(p)
    return Poly1(coeffs, p.var)


def _squarefree_chain(p: Poly1) -> tuple[list[int], list[list[int]]]:
    """Primitive squarefree part (positive leading coefficient) and its Sturm chain."""
    ints = p.integer_coeffs()
    if ints[-1] < 0:
        ints = [-c for c in ints]
    if len(ints) <= 1:
        return [1], [[1]]
    seq = sturm_sequence([_bigint(c) for c in ints])
    if len(seq[-1]) > 1:
        # the last member is proportional to gcd(p, p')
        q = Poly1(ints).exact_div(Poly1([int(c) for c in seq[-1]]))
        ints = q.integer_coeffs()
        if ints[-1] < 0:
            ints = [-c for c in ints]
        seq = sturm_sequence([_bigint(c) for c in ints])
    return ints, seq


def sign_at(coeffs: list[int], x: Fraction) -> int:
    n, d = x.numerator, x.denominator
    acc = coeffs[-1]
    dpow = 1
    for c in reversed(coeffs[:-1]):
        dpow *= d
        acc = acc * n + c * dpow
    return (acc > 0) - (acc < 0)


def sturm_sequence(coeffs: list[int]) -> list[list[int]]:
    """Sturm chain of an integer polynomial.

    Members are positive multiples of the classical chain ``p, p', -rem, ...``.
    Coefficient growth is kept in check with the subresultant divisors, used
    in absolute value so that no sign is disturbed; the divisions are exact.
    """
    f = primitive(list(coeffs))
    g = primitive([i * c for i, c in enumerate(f)][1:])
    seq = [f]
    if not g:
        return seq
    seq.append(g)
    lc_prev = None  # leading coefficient magnitude of the member before g
    c = None
    while len(g) > 1:
        d = len(f) - len(g)
        r = int_prem(f, g)
        if not r:
            break
        # prem = lc(g)^(d+1) * rem; the chain needs a positive multiple of -rem
        if g[-1] > 0 or (d + 1) % 2 == 0:
            r = [-v for v in r]
        if c is None:
            c = abs(g[-1]) ** d
        else:
            div = lc_prev * c**d
            r = [v // div for v in r]
            lc = abs(g[-1])
            c = lc**d // c ** (d - 1) if d > 1 else lc
        lc_prev = abs(g[-1])
        f, g = g, r
        seq.append(r)
    return seq


def _variations(signs: list[int]) -> int:
    v = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            v += 1
        last = s
    return v


def _var_at(seq: list[list[int]], x: Fraction) -> int:
    return _variations([sign_at(s, x) for s in seq])


def _var_at_inf(seq: list[list[int]], positive: bool) -> int:
    signs = []
    for s in seq:
        lead = (s[-1] > 0) - (s[-1] < 0)
        if not positive and (len(s) - 1) % 2 == 1:
            lead = -lead
        signs.append(lead)
    return _variations(signs)


def root_bound(coeffs: list[int]) -> Fraction:
    """A power of two strictly larger than every root's modulus (Cauchy)."""
    lead = abs(coeffs[-1])
    m = max((abs(c) for c in coeffs[:-1]), default=0)
    bound = 1 + -(-m // lead)
    k = 1
    while k <= bound:
        k *= 2
    return Fraction(k)


def count_real_roots(p: Poly1, lo=None, hi=None) -> int:
    """Distinct real roots of ``p`` in ``(lo, hi]`` (whole line by default)."""
    if p.is_zero():
        raise ZeroPolynomial("root count of the zero polynomial")
    _, seq = _squarefree_chain(p)
    vlo = _var_at_inf(seq, False) if lo is None else _var_at(seq, Fraction(lo))
    vhi = _var_at_inf(seq, True) if hi is None else _var_at(seq, Fraction(hi))
    return vlo - vhi


def _isolate(seq, coeffs) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals; open intervals ``(a, b)`` or exact points ``(r, r)``."""
    bound = root_bound(coeffs)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, _var_at(seq, -bound), _var_at(seq, bound))]
    while stack:
        a, b, va, vb = stack.pop()
        count = va - vb
        if count == 0:
            continue
        if count == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        if sign_at(coeffs, mid) == 0:
            out.append((mid, mid))
            # step away from the exact root until the gap holds nothing else
            eps = (b - a) / 4
            while True:
                left, right = mid - eps, mid + eps
                if (
                    sign_at(coeffs, left) != 0
                    and sign_at(coeffs, right) != 0
                    and _var_at(seq, left) - _var_at(seq, right) == 1
                ):
                    break
                eps /= 2
            stack.append((a, left, va, _var_at(seq, left)))
            stack.append((right, b, _var_at(seq, right), vb))
        else:
            vm = _var_at(seq, mid)
            stack.append((a, mid, va, vm))
            stack.append((mid, b, vm, vb))
    out.sort()
    return out


def _round_dyadic(x: Fraction, step: Fraction) -> Fraction:
    return round(x / step) * step


def _narrow(a: Fraction, b: Fraction) -> bool:
    scale = max(abs(a), abs(b))
    return b - a <= Fraction(REL_WIDTH) * scale or b - a <= Fraction(1, 2**1070)


def _dyadic_below(w: Fraction) -> Fraction:
    """Largest power of two not exceeding ``w`` (``w > 0``)."""
    k = w.numerator.bit_length() - w.denominator.bit_length()
    step = Fraction(2) ** k
    while step > w:
        step /= 2
    while step * 2 <= w:
        step *= 2
    return step


def refine_root(coeffs: list[int], a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink a sign-changing bracket until its relative width is at most 1e-14.

    Each round tries an exact Newton step from the midpoint, rounded to a
    dyadic grid; if a tiny bracket around it shows the sign change we stop,
    otherwise the round falls back to bisection.
    """
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    sa = sign_at(coeffs, a)
    if sa == 0:
        return a, a
    while not _narrow(a, b):
        mid = (a + b) / 2
        sm = sign_at(coeffs, mid)
        if sm == 0:
            return mid, mid
        pm = _eval(coeffs, mid)
        dm = _eval(deriv, mid)
        if dm != 0:
            x = mid - pm / dm
            if a < x < b:
                half = _dyadic_below(Fraction(max(REL_WIDTH * abs(float(x)), 1e-300)) / 4)
                x = _round_dyadic(x, half)
                lo, hi = max(a, x - half), min(b, x + half)
                slo, shi = sign_at(coeffs, lo), sign_at(coeffs, hi)
                if slo == 0:
                    return lo, lo
                if shi == 0:
                    return hi, hi
                if slo == sa and shi != sa:
                    a, b = lo, hi
                    continue
                # Newton point missed; still use it to tighten the bracket
                if slo == sa:
                    a = hi if shi == sa else a
                else:
                    b = lo
        if a < mid < b:
            if sm == sa:
                a = mid
            else:
                b = mid
    return a, b


def _eval(coeffs: list[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def isolate_real_roots(p: Poly1) -> list[IsolatedRoot]:
    """All distinct real roots of ``p``, ascending, each with a certified bracket.

    Brackets are pairwise disjoint. An open bracket ``(lo, hi)`` holds exactly
    one root and the squarefree part changes sign across it; a degenerate
    bracket ``(r, r)`` is an exact dyadic root.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot isolate roots of the zero polynomial")
    coeffs, seq = _squarefree_chain(p)
    if len(coeffs) <= 1:
        return []
    roots = []
    for a, b in _isolate(seq, coeffs):
        if a != b:
            a, b = refine_root(coeffs, a, b)
        roots.append(IsolatedRoot((a, b), float((a + b) / 2)))
    return roots


def real_roots(p: Poly1) -> list[float]:
    return [r.value for r in isolate_real_roots(p)]


__all__ = [
    "IsolatedRoot",
    "count_real_roots",
    "isolate_real_roots",
    "real_roots",
    "refine_root",
    "root_bound",
    "sign_at",
    "squarefree",
    "sturm_sequence",
]
