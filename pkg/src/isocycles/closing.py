"""Closing conditions on the switching line and their elimination.

A crossing periodic orbit meets x = 0 at (0, y1) and (0, y2). Each half of
it lies on a level set of that side's first integral, so

    H+(0, y1) = H+(0, y2),    H-(0, y1) = H-(0, y2).

After clearing denominators each difference is divisible by y1 - y2; the
quotients ``Pplus`` and ``Pminus`` are symmetric polynomials in (y1, y2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .algebra import Poly1, Poly2, exact_divide, poly_gcd, resultant, substitute_rational
from .centers import (
    FAMILIES,
    PiecewiseSystem,
    first_integral,
    pairing_label,
    restrict_to_sigma,
)
from .errors import UnknownPairing

Y12 = ("y1", "y2")

LINEAR = "linear solve"
RATIONAL = "rational solve"
RESULTANT = "resultant"

TABLE_BOUNDS: dict[str, Optional[int]] = {
    "Lc-Lc": 0,
    "Lc-S1": 1,
    "Lc-S2": 2,
    "Lc-S3": 3,
    "Lc-S4": 3,
    "S1-S1": 1,
    "S1-S2": 3,
    "S1-S3": 5,
    "S1-S4": 5,
    "S2-S2": 8,
    "S2-S3": 13,
    "S2-S4": 13,
    "S3-S3": None,
    "S3-S4": None,
    "S4-S4": None,
}


@dataclass(frozen=True)
class SigmaIntegral:
    """A first integral restricted to x = 0 and reduced to lowest terms."""

    num: Poly1
    den: Poly1

    def __call__(self, y):
        return self.num(y) / self.den(y)


@dataclass(frozen=True)
class ClosingSystem:
    Pplus: Poly2
    Pminus: Poly2
    excluded_sets: tuple[Poly1, ...]
    plus_family: str
    minus_family: str
    hplus: SigmaIntegral
    hminus: SigmaIntegral

    @property
    def pairing(self) -> str:
        return pairing_label(self.plus_family, self.minus_family)

    def side(self, which: str) -> Poly2:
        return {"plus": self.Pplus, "minus": self.Pminus}[which]


@dataclass(frozen=True)
class BoundReport:
    pairing: str
    strategy: str
    degree: int
    pair_bound: int
    table_bound: Optional[int]


class Elimination(NamedTuple):
    poly: Poly1
    strategy: str


def sigma_integral(spec) -> SigmaIntegral:
    r = restrict_to_sigma(first_integral(spec))
    num, den = r.num.rename("y"), r.den.rename("y")
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num.exact_div(g), den.exact_div(g)
    # normalise so the denominator is monic
    lead = den.lc
    return SigmaIntegral(num * (1 / lead), den * (1 / lead))


def _lift(p: Poly1, var: str) -> Poly2:
    return Poly2.from_poly1(p, var, Y12)


def closing_polynomial(h: SigmaIntegral) -> Poly2:
    """(N(y1) D(y2) - N(y2) D(y1)) / (y1 - y2) for h = N/D."""
    n1, n2 = _lift(h.num, "y1"), _lift(h.num, "y2")
    d1, d2 = _lift(h.den, "y1"), _lift(h.den, "y2")
    diff = n1 * d2 - n2 * d1
    return exact_divide(diff, Poly2.variable("y1", Y12) - Poly2.variable("y2", Y12))


def build_closing_system(pw: PiecewiseSystem) -> ClosingSystem:
    hp = sigma_integral(pw.plus)
    hm = sigma_integral(pw.minus)
    excluded = tuple(h.den for h in (hp, hm) if h.den.degree > 0)
    return ClosingSystem(
        Pplus=closing_polynomial(hp),
        Pminus=closing_polynomial(hm),
        excluded_sets=excluded,
        plus_family=pw.plus.family,
        minus_family=pw.minus.family,
        hplus=hp,
        hminus=hm,
    )


class SolvedSide(NamedTuple):
    """y1 = num(y2) / den(y2) read off one closing polynomial."""

    side: str
    num: Poly1
    den: Poly1
    strategy: str


def _solve_for_y1(P: Poly2) -> Optional[tuple[Poly1, Poly1]]:
    if P.degree_in("y1") != 1:
        return None
    c0, c1 = P.coefficients_in("y1")
    if c1.is_zero():
        return None
    return -c0, c1


def solved_side(cs: ClosingSystem) -> Optional[SolvedSide]:
    """The side used for an explicit solve, preferring a linear one."""
    order = [("plus", cs.plus_family), ("minus", cs.minus_family)]
    for family, strategy in (("Lc", LINEAR), ("S1", RATIONAL)):
        for side, fam in order:
            if fam != family:
                continue
            sol = _solve_for_y1(cs.side(side))
            if sol is not None:
                return SolvedSide(side, sol[0], sol[1], strategy)
    return None


def eliminate(cs: ClosingSystem) -> Elimination:
    """Reduce the closing system to one polynomial in y2 (y1 is eliminated)."""
    s = solved_side(cs)
    if s is not None:
        other = cs.side("minus" if s.side == "plus" else "plus")
        return Elimination(substitute_rational(other, "y1", s.num, s.den).rename("y2"), s.strategy)
    return Elimination(resultant(cs.Pplus, cs.Pminus, "y1"), RESULTANT)


def normalize_pairing(pairing) -> str:
    """Accept ``"Lc-S3"``, ``"S3–Lc"``, ``("S3", "Lc")`` and return the canonical label."""
    if isinstance(pairing, str):
        parts = pairing.replace("–", "-").replace("—", "-").split("-")
    else:
        parts = list(pairing)
    parts = [str(p).strip() for p in parts]
    if len(parts) != 2 or any(p not in FAMILIES for p in parts):
        raise UnknownPairing(pairing)
    return pairing_label(*parts)


def max_cycles_bound(pairing) -> Optional[int]:
    """Upper bound on crossing limit cycles for a family pairing; None where open."""
    return TABLE_BOUNDS[normalize_pairing(pairing)]


def bound_report(cs: ClosingSystem, elim: Optional[Elimination] = None) -> BoundReport:
    elim = elim or eliminate(cs)
    degree = max(elim.poly.degree, 0)
    return BoundReport(
        pairing=cs.pairing,
        strategy=elim.strategy,
        degree=degree,
        pair_bound=degree // 2,
        table_bound=max_cycles_bound(cs.pairing),
    )


__all__ = [
    "BoundReport",
    "ClosingSystem",
    "Elimination",
    "LINEAR",
    "RATIONAL",
    "RESULTANT",
    "SigmaIntegral",
    "TABLE_BOUNDS",
    "bound_report",
    "build_closing_system",
    "closing_polynomial",
    "eliminate",
    "max_cycles_bound",
    "normalize_pairing",
    "sigma_integral",
    "solved_side",
]
