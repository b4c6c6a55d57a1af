"""Center families, affine conjugation and first integrals.

The four cubic isochronous centers are

    S1: x' = -y + x^3 - x y^2,    y' = x + x^2 y - y^3
    S2: x' = -y + x^3 - 3 x y^2,  y' = x + 3 x^2 y - y^3
    S3: x' = -y + 3 x^2 y,        y' = x - 2 x^3 + 9 x y^2
    S4: x' = -y - 3 x^2 y,        y' = x + 2 x^3 - 9 x y^2

and the linear center Lc is x' = -A x - (4A^2 + w^2)/(4D) y + B,
y' = D x + A y + C with D, w > 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Union

from .algebra import Poly2, RationalFn, as_scalar
from .errors import ConfigError, DenominatorVanishesOnSigma, SingularMap

FAMILIES = ("Lc", "S1", "S2", "S3", "S4")
XY = ("x", "y")


@dataclass(frozen=True)
class AffineMap:
    """T(x, y) = (a x + b y + c, alpha x + beta y + gamma)."""

    a: Fraction
    b: Fraction
    c: Fraction
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c", "alpha", "beta", "gamma"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.det == 0:
            raise SingularMap(f"b*alpha - a*beta = 0 for {self}")

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(1, 0, 0, 0, 1, 0)

    @property
    def det(self) -> Fraction:
        """The quantity b*alpha - a*beta; nonzero for an invertible map."""
        return self.b * self.alpha - self.a * self.beta

    def u(self, vars=XY) -> Poly2:
        return Poly2.linear(self.a, self.b, self.c, vars)

    def v(self, vars=XY) -> Poly2:
        return Poly2.linear(self.alpha, self.beta, self.gamma, vars)

    def __call__(self, x, y):
        return (self.a * x + self.b * y + self.c, self.alpha * x + self.beta * y + self.gamma)

    def inverse(self) -> "AffineMap":
        m = self.a * self.beta - self.b * self.alpha
        ia, ib = self.beta / m, -self.b / m
        ial, ibe = -self.alpha / m, self.a / m
        return AffineMap(
            ia, ib, -(ia * self.c + ib * self.gamma),
            ial, ibe, -(ial * self.c + ibe * self.gamma),
        )

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """``self`` after ``inner``."""
        u, v = inner.u(), inner.v()
        U = u * self.a + v * self.b + self.c
        V = u * self.alpha + v * self.beta + self.gamma
        t = lambda p, e: p.terms.get(e, Fraction(0))  # noqa: E731
        return AffineMap(
            t(U, (1, 0)), t(U, (0, 1)), t(U, (0, 0)),
            t(V, (1, 0)), t(V, (0, 1)), t(V, (0, 0)),
        )

    def as_dict(self) -> dict[str, Fraction]:
        return {k: getattr(self, k) for k in ("a", "b", "c", "alpha", "beta", "gamma")}


@dataclass(frozen=True)
class LinearCenterParams:
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    omega: Fraction

    def __post_init__(self):
        for name in ("A", "B", "C", "D", "omega"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.D <= 0:
            raise ConfigError(f"linear center needs D > 0, got D = {self.D}")
        if self.omega <= 0:
            raise ConfigError(f"linear center needs omega > 0, got omega = {self.omega}")

    def as_dict(self) -> dict[str, Fraction]:
        return {k: getattr(self, k) for k in ("A", "B", "C", "D", "omega")}


Params = Union[LinearCenterParams, AffineMap]


@dataclass(frozen=True)
class CenterSpec:
    family: str
    params: Params

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        want = LinearCenterParams if self.family == "Lc" else AffineMap
        if not isinstance(self.params, want):
            raise ConfigError(f"family {self.family} needs {want.__name__} parameters")


@dataclass(frozen=True)
class VectorField:
    """Polynomial vector field (P, Q) in the variables x, y."""

    P: Poly2
    Q: Poly2

    def __call__(self, x, y):
        return self.P(x, y), self.Q(x, y)

    @property
    def degree(self) -> int:
        return max(self.P.total_degree, self.Q.total_degree)

    def compile(self) -> Callable[[float, float], tuple[float, float]]:
        fp, fq = self.P.compile(), self.Q.compile()
        return lambda x, y: (fp(x, y), fq(x, y))


@dataclass(frozen=True)
class PiecewiseSystem:
    """``plus`` governs x >= 0, ``minus`` governs x <= 0."""

    plus: CenterSpec
    minus: CenterSpec
    name: str = field(default="", compare=False)

    @property
    def pairing(self) -> str:
        return pairing_label(self.plus.family, self.minus.family)


def pairing_label(f1: str, f2: str) -> str:
    """Unordered label such as ``"Lc-S3"`` (Lc first, then by index)."""
    a, b = sorted((f1, f2), key=FAMILIES.index)
    return f"{a}-{b}"


def _xy():
    return Poly2.variable("x", XY), Poly2.variable("y", XY)


def _cubic(family: str, X: Poly2, Y: Poly2) -> tuple[Poly2, Poly2]:
    if family == "S1":
        return -Y + X**3 - X * Y**2, X + X**2 * Y - Y**3
    if family == "S2":
        return -Y + X**3 - 3 * X * Y**2, X + 3 * X**2 * Y - Y**3
    if family == "S3":
        return -Y + 3 * X**2 * Y, X - 2 * X**3 + 9 * X * Y**2
    if family == "S4":
        return -Y - 3 * X**2 * Y, X + 2 * X**3 - 9 * X * Y**2
    raise ConfigError(f"{family!r} is not a cubic family")


def canonical_field(family: str, params: LinearCenterParams | None = None) -> VectorField:
    """Canonical field of a family; the linear center needs its parameters."""
    x, y = _xy()
    if family == "Lc":
        if params is None:
            raise ConfigError("the linear center needs LinearCenterParams")
        p = params
        P = -p.A * x - (4 * p.A**2 + p.omega**2) / (4 * p.D) * y + p.B
        Q = p.D * x + p.A * y + p.C
        return VectorField(P, Q)
    return VectorField(*_cubic(family, x, y))


def transform_field(F: VectorField, T: AffineMap) -> VectorField:
    """M^-1 F(T(x, y)) with M the linear part of T: the field F in new coordinates."""
    if T.det == 0:
        raise SingularMap("cannot conjugate by a singular map")
    u, v = T.u(), T.v()
    Fu, Fv = _compose(F.P, u, v), _compose(F.Q, u, v)
    m = T.a * T.beta - T.b * T.alpha
    P = (Fu * T.beta - Fv * T.b) * (1 / m)
    Q = (Fv * T.a - Fu * T.alpha) * (1 / m)
    return VectorField(P, Q)


def _compose(p: Poly2, u: Poly2, v: Poly2) -> Poly2:
    out = Poly2.constant(0, XY)
    upow, vpow = {0: Poly2.constant(1, XY)}, {0: Poly2.constant(1, XY)}
    for (i, j), c in p.terms.items():
        for pows, base, k in ((upow, u, i), (vpow, v, j)):
            if k not in pows:
                pows[k] = base**k
        out = out + upow[i] * vpow[j] * c
    return out


def conjugate(family: str, T: AffineMap) -> VectorField:
    """The canonical field expressed in the coordinates (x, y) with (u, v) = T(x, y)."""
    if family == "Lc":
        raise ConfigError("linear centers are parametrised directly, not through a map")
    return transform_field(canonical_field(family), T)


@lru_cache(maxsize=256)
def vector_field(spec: CenterSpec) -> VectorField:
    if spec.family == "Lc":
        return canonical_field("Lc", spec.params)
    return conjugate(spec.family, spec.params)


def canonical_integral(family: str, u: Poly2, v: Poly2) -> tuple[Poly2, Poly2]:
    """Numerator and denominator of the family's integral evaluated at (u, v)."""
    one = Poly2.constant(1, u.vars)
    r2 = u**2 + v**2
    if family == "S1":
        return r2, one + 2 * u * v
    if family == "S2":
        return r2**2, one + 4 * u * v
    if family == "S3":
        return r2 - 4 * u**4 + 4 * u**6, (3 * u**2 - 1) ** 3
    if family == "S4":
        return r2 + 4 * u**4 + 4 * u**6, (one + 3 * u**2) ** 3
    raise ConfigError(f"{family!r} is not a cubic family")


@lru_cache(maxsize=256)
def first_integral(spec: CenterSpec) -> RationalFn:
    """Expanded first integral in x, y; the linear center's has denominator 1."""
    if spec.family == "Lc":
        p = spec.params
        x, y = _xy()
        H = 4 * (p.D * x + p.A * y) ** 2 + 8 * p.D * (p.C * x - p.B * y) + p.omega**2 * y**2
        return RationalFn(H, Poly2.constant(1, XY))
    T = spec.params
    num, den = canonical_integral(spec.family, T.u(), T.v())
    return RationalFn(num, den)


def integral_evaluator(spec: CenterSpec) -> Callable[[float, float], float]:
    """Float H(x, y) evaluated in factored form through u and v.

    The expanded integral cancels badly away from the origin, so numerical
    conservation checks should use this instead.
    """
    if spec.family == "Lc":
        A, B, C, D, w = (float(v) for v in spec.params.as_dict().values())
        return lambda x, y: 4 * (D * x + A * y) ** 2 + 8 * D * (C * x - B * y) + w * w * y * y
    a, b, c, al, be, ga = (float(v) for v in spec.params.as_dict().values())
    fam = spec.family

    def H(x: float, y: float) -> float:
        u = a * x + b * y + c
        v = al * x + be * y + ga
        r2 = u * u + v * v
        if fam == "S1":
            return r2 / (1 + 2 * u * v)
        if fam == "S2":
            return r2 * r2 / (1 + 4 * u * v)
        u2 = u * u
        if fam == "S3":
            return (r2 - 4 * u2 * u2 + 4 * u2 * u2 * u2) / (3 * u2 - 1) ** 3
        return (r2 + 4 * u2 * u2 + 4 * u2 * u2 * u2) / (1 + 3 * u2) ** 3

    return H


def invariance_residual(spec: CenterSpec) -> Poly2:
    """Numerator of grad(H) . F after clearing H's denominator; zero for a true integral."""
    H = first_integral(spec)
    F = vector_field(spec)
    N, D = H.num, H.den
    hx = N.derivative("x") * D - N * D.derivative("x")
    hy = N.derivative("y") * D - N * D.derivative("y")
    return hx * F.P + hy * F.Q


def restrict_to_sigma(H: RationalFn) -> RationalFn:
    """Set x = 0; the result is a rational function of y alone."""
    num = H.num.substitute("x", 0)
    den = H.den.substitute("x", 0)
    if den.is_zero():
        raise DenominatorVanishesOnSigma("first-integral denominator vanishes on x = 0")
    return RationalFn(num, den)


__all__ = [
    "AffineMap",
    "CenterSpec",
    "FAMILIES",
    "LinearCenterParams",
    "PiecewiseSystem",
    "VectorField",
    "canonical_field",
    "canonical_integral",
    "conjugate",
    "first_integral",
    "integral_evaluator",
    "invariance_residual",
    "pairing_label",
    "restrict_to_sigma",
    "transform_field",
    "vector_field",
]
