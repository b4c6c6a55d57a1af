"""Sylvester resultants of bivariate polynomials.

The resultant is a polynomial in the remaining variable. Rather than
expanding a determinant with polynomial entries, we scale both inputs to
integer coefficients, evaluate the Sylvester matrix at integer nodes, take
exact integer determinants (fraction-free Bareiss elimination) and rebuild the
polynomial by Newton interpolation on the nodes ``0, 1, ..., n``.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DegreeZero
from .polynomials import Poly1, Poly2, _lcm_denominators

# extra nodes beyond the degree bound; they must interpolate to zero
_CHECK_NODES = 2


def sylvester_matrix(f: list, g: list) -> list[list]:
    """Sylvester matrix of ``f`` and ``g`` given as coefficient lists, lowest degree first."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fr = list(reversed(f))
    gr = list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _integer_columns(p: Poly2, var: str) -> tuple[list[list[int]], int]:
    """Coefficients of ``p`` in ``var`` as integer polynomials, plus the scale used."""
    cols = p.coefficients_in(var)
    scale = _lcm_denominators(c for col in cols for c in col.coeffs)
    return [[int(c * scale) for c in col.coeffs] for col in cols], scale


def _horner_int(coeffs: list[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _newton_to_monomial(values: list[int]) -> list[Fraction]:
    """Interpolate ``values`` taken at ``0..n-1``; returns monomial coefficients."""
    n = len(values)
    # forward differences; with unit spacing the divided differences are d_k / k!
    diffs = list(values)
    newton = [Fraction(diffs[0])]
    fact = 1
    for k in range(1, n):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        fact *= k
        newton.append(Fraction(diffs[0], fact))
    # sum_k newton[k] * x(x-1)...(x-k+1), expanded by Horner from the top
    coeffs: list[Fraction] = [Fraction(0)]
    for k in range(n - 1, -1, -1):
        # coeffs <- coeffs * (x - k) + newton[k]
        shifted = [Fraction(0)] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] -= k * c
        shifted[0] += newton[k]
        coeffs = shifted
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def resultant_degree_bound(p: Poly2, q: Poly2, eliminate: str) -> int:
    """Upper bound on the degree of the resultant in the remaining variable."""
    cp = p.coefficients_in(eliminate)
    cq = q.coefficients_in(eliminate)
    m, n = len(cp) - 1, len(cq) - 1
    rows = n * max(c.degree for c in cp) + m * max(c.degree for c in cq)
    bezout = p.total_degree * q.total_degree
    return max(0, min(rows, bezout))


def resultant(p: Poly2, q: Poly2, eliminate: str) -> Poly1:
    """Resultant of ``p`` and ``q`` with respect to ``eliminate``.

    The result is the Sylvester determinant built from the formal degrees of
    both inputs in ``eliminate``, as an exact polynomial in the other variable.
    """
    if p.vars != q.vars:
        raise ValueError(f"variable mismatch: {p.vars} vs {q.vars}")
    other = p.vars[1 - p._index(eliminate)]
    m, n = p.degree_in(eliminate), q.degree_in(eliminate)
    if m <= 0 or n <= 0:
        raise DegreeZero(f"input has degree {min(m, n)} in {eliminate}")

    fcols, fscale = _integer_columns(p, eliminate)
    gcols, gscale = _integer_columns(q, eliminate)
    bound = resultant_degree_bound(p, q, eliminate)

    values = []
    for node in range(bound + 1 + _CHECK_NODES):
        f = [_horner_int(c, node) for c in fcols]
        g = [_horner_int(c, node) for c in gcols]
        values.append(bareiss_det(sylvester_matrix(f, g)))

    coeffs = _newton_to_monomial(values)
    if len(coeffs) - 1 > bound:
        raise ArithmeticError("resultant interpolation exceeded its degree bound")
    # undo the integer scaling: Res(s*f, t*g) = s^n t^m Res(f, g)
    factor = Fraction(1, fscale**n * gscale**m)
    return Poly1([c * factor for c in coeffs], other)


def univariate_resultant(f: Poly1, g: Poly1) -> Fraction:
    """Resultant of two univariate polynomials (a scalar)."""
    if f.degree <= 0 or g.degree <= 0:
        raise DegreeZero("univariate resultant needs positive degrees")
    scale_f = _lcm_denominators(f.coeffs)
    scale_g = _lcm_denominators(g.coeffs)
    fi = [int(c * scale_f) for c in f.coeffs]
    gi = [int(c * scale_g) for c in g.coeffs]
    det = bareiss_det(sylvester_matrix(fi, gi))
    return Fraction(det, scale_f**g.degree * scale_g**f.degree)


__all__ = [
    "bareiss_det",
    "resultant",
    "resultant_degree_bound",
    "sylvester_matrix",
    "univariate_resultant",
]
