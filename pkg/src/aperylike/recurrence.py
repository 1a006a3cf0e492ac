"""Recurrences with polynomial coefficients and exact term streams.

The central constructor is :func:`recurrence_from_gh`: given polynomials
G (constant term 1) and H (constant term 0) of degree <= k, it builds the
(k+1)-term relation

    (n+1)^3 T(n+1) + (n+1) sum_j g_j (n+1-j/2)(n+1-j) T(n+1-j)
        = 2 sum_j h_j (n+1-j/2) T(n+1-j)

whose solution with T(0) = 1 is the coefficient sequence of the power
series Z = sum T(n) X^n attached to (G, H).  Terms at negative index are
zero by convention.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .rings import (
    RingTag,
    RING_Z,
    Scalar,
    scalar_denominator,
    scalar_from_str,
    scalar_to_str,
)


class InexactDivision(ArithmeticError):
    """Division by (n+1)^3 left a remainder while streaming a Z-ring sequence."""

    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or "inexact division at index %d" % index)


# ---------------------------------------------------------------------------
# Polynomials in one variable over the exact scalars
# ---------------------------------------------------------------------------


class Poly:
    """Dense polynomial c0 + c1 x + ... with exact scalar coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        cs = list(coeffs)
        while len(cs) > 1 and not cs[-1]:
            cs.pop()
        if not cs:
            cs = [0]
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *args):
        raise AttributeError("Poly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and not self.coeffs[0]

    def __call__(self, x: Scalar) -> Scalar:
        out = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            out = out * x + c
        return out

    def __getitem__(self, j: int) -> Scalar:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([a[i] + (b[i] if i < len(b) else 0) for i in range(len(a))])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Poly(out)
        return Poly([c * other for c in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        out = Poly([1])
        for _ in range(e):
            out = out * self
        return out

    def scale_arg(self, c: Scalar) -> "Poly":
        """p(c*x) as a polynomial in x."""
        out, power = [], 1
        for coef in self.coeffs:
            out.append(coef * power)
            power = power * c
        return Poly(out)

    def derivative(self) -> "Poly":
        if self.degree == 0:
            return Poly([0])
        return Poly([j * c for j, c in enumerate(self.coeffs)][1:])

    def __repr__(self):
        return "Poly(%r)" % (list(self.coeffs),)


def poly_product(factors: Sequence[Sequence[Scalar]]) -> Poly:
    """Multiply out a factored polynomial given as coefficient lists."""
    out = Poly([1])
    for f in factors:
        out = out * Poly(f)
    return out


# ---------------------------------------------------------------------------
# Recurrence specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RecurrenceSpec:
    """Homogeneous relation  sum_j coeff_polys[j](n) * T(n+1-j) = 0.

    coeff_polys[0] multiplies T(n+1); it is (n+1)^3 for the cubic family
    and (n+1)^2 for the weight-one family.  Coefficients are exact and may
    involve half-integers; denominators are cleared once inside the term
    stream, never per step.
    """

    coeff_polys: Tuple[Poly, ...]

    @property
    def order(self) -> int:
        """Number of back terms k; the relation has k+1 terms."""
        return len(self.coeff_polys) - 1

    def trimmed(self) -> "RecurrenceSpec":
        """Drop identically-zero trailing coefficient polynomials."""
        polys = list(self.coeff_polys)
        while len(polys) > 1 and polys[-1].is_zero():
            polys.pop()
        return RecurrenceSpec(tuple(polys))

    def solved_coeff(self, j: int) -> Poly:
        """Coefficient of T(n+1-j) with the relation solved for T(n+1)."""
        return -self.coeff_polys[j]


_N_PLUS_1 = Poly([1, 1])


def recurrence_from_gh(G: Poly, H: Poly) -> RecurrenceSpec:
    """Build the (k+1)-term relation attached to the polynomial pair (G, H)."""
    if G[0] != 1:
        raise ValueError("G must have constant term 1")
    if H[0] != 0:
        raise ValueError("H must have constant term 0")
    k = max(G.degree, H.degree)
    half = Fraction(1, 2)
    polys = [_N_PLUS_1 ** 3]
    for j in range(1, k + 1):
        gj, hj = G[j], H[j]
        # (n+1) g_j (n+1-j/2)(n+1-j) - 2 h_j (n+1-j/2)
        mid = Poly([1 - j * half, 1])
        p = (_N_PLUS_1 * mid * Poly([1 - j, 1])) * gj - (2 * hj) * mid
        polys.append(p)
    return RecurrenceSpec(tuple(polys))


def recurrence_from_quadratic(alpha: Scalar, beta: Scalar, gamma: Scalar) -> RecurrenceSpec:
    """Weight-one relation (n+1)^2 t(n+1) = (a n^2 + a n + b) t(n) + c n^2 t(n-1)."""
    return RecurrenceSpec((
        _N_PLUS_1 ** 2,
        -Poly([beta, alpha, alpha]),
        -Poly([0, 0, gamma]),
    ))


def cubic_from_quadratic_asz(alpha: Scalar, beta: Scalar, gamma: Scalar) -> RecurrenceSpec:
    """Cubic companion of the weight-one relation:

    (n+1)^3 s(n+1) = -(2n+1)(a n^2 + a n + a - 2b) s(n) - (a^2 + 4c) n^3 s(n-1).
    """
    return RecurrenceSpec((
        _N_PLUS_1 ** 3,
        Poly([1, 2]) * Poly([alpha - 2 * beta, alpha, alpha]),
        Poly([0, 0, 0, alpha * alpha + 4 * gamma]),
    ))


def cubic_from_quadratic_ctyz(alpha: Scalar, beta: Scalar, gamma: Scalar) -> RecurrenceSpec:
    """Central-binomial companion:

    (n+1)^3 T(n+1) = 2(2n+1)(a n^2 + a n + b) T(n) + 4c n(4n^2 - 1) T(n-1),
    solved by T(n) = binom(2n, n) t(n) for t from the weight-one relation.
    """
    return RecurrenceSpec((
        _N_PLUS_1 ** 3,
        -2 * (Poly([1, 2]) * Poly([beta, alpha, alpha])),
        (-4 * gamma) * Poly([0, -1, 0, 4]),
    ))


def asz_gh(alpha: Scalar, beta: Scalar, gamma: Scalar) -> Tuple[Poly, Poly]:
    """(G, H) whose generalT relation is the cubic ASZ companion."""
    disc = alpha * alpha + 4 * gamma
    G = Poly([1, 2 * alpha, disc])
    H = Poly([0, 2 * beta - alpha, -Fraction(1, 2) * disc])
    return G, H


def ctyz_gh(alpha: Scalar, beta: Scalar, gamma: Scalar) -> Tuple[Poly, Poly]:
    """(G, H) whose generalT relation is the central-binomial companion."""
    G = Poly([1, -4 * alpha, -16 * gamma])
    H = Poly([0, 2 * beta, 6 * gamma])
    return G, H


def fourterm_params(G: Poly, H: Poly) -> Tuple[Scalar, Scalar, Scalar, Scalar, Scalar]:
    """Parameters (a, b, c, d, e) of the self-starting four-term normal form

        (n+1)^3 T(n+1) = (2n+1)(a n^2 + a n + b) T(n)
                          + n(c n^2 + d) T(n-1) + e n(2n-1)(n-1) T(n-2)

    for cubic (G, H) with g3 = -h3.
    """
    if G.degree != 3 or H.degree != 3:
        raise ValueError("fourterm_params needs deg G = deg H = 3")
    if G[3] != -H[3]:
        raise ValueError("not self-starting form: g3 != -h3")
    half = Fraction(1, 2)
    return (
        _norm(-half * G[1]),
        _norm(H[1]),
        _norm(-G[2]),
        _norm(G[2] + 2 * H[2]),
        _norm(-half * G[3]),
    )


def _norm(x: Scalar) -> Scalar:
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def is_self_starting(spec: RecurrenceSpec) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """Whether T(0) = 1 alone determines the stream.

    True iff for every j >= 2 the coefficient of T(n+1-j) vanishes at each
    n in 0..j-2, i.e. wherever the referenced index would be negative.
    Returns (flag, witness), with the first failing (j, n) as witness.
    """
    for j in range(2, spec.order + 1):
        p = spec.coeff_polys[j]
        for n in range(j - 1):
            if p(n) != 0:
                return False, (j, n)
    return True, None


# ---------------------------------------------------------------------------
# Term streams
# ---------------------------------------------------------------------------


def _clear_denominators(spec: RecurrenceSpec) -> Tuple[int, List[Tuple[Scalar, ...]]]:
    L = 1
    for p in spec.coeff_polys:
        for c in p.coeffs:
            L = lcm(L, scalar_denominator(c))
    cleared = []
    for p in spec.coeff_polys:
        cleared.append(tuple(_norm(c * L) for c in p.coeffs))
    return L, cleared


def _eval_int_poly(coeffs: Tuple[Scalar, ...], n: int) -> Scalar:
    out = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        out = out * n + c
    return out


def term_iterator(spec: RecurrenceSpec, ring: RingTag = RING_Z,
                  initial: Sequence[Scalar] = (1,)) -> Iterator[Scalar]:
    """Yield T(0), T(1), ... exactly, keeping only a k-term window.

    Under ring Z every division by the leading coefficient must be exact,
    otherwise InexactDivision carries the offending index.  Under Q and
    Quad(d) the division happens in the fraction field.
    """
    k = spec.order
    L, cleared = _clear_denominators(spec)
    lead, backs = cleared[0], cleared[1:]
    zero = ring.zero()
    window = [zero] * k  # window[j-1] = T(n+1-j) while producing T(n+1)
    n = 0
    for t in initial:
        t = ring.coerce(t)
        yield t
        if k:
            window = [t] + window[:-1]
        n += 1
    is_z = ring.kind == "Z"
    is_q = ring.kind == "Q"
    while True:
        m = n - 1  # relation index producing T(m+1) = T(n)
        s = zero
        for j in range(1, k + 1):
            w = window[j - 1]
            if w:
                s = s + _eval_int_poly(backs[j - 1], m) * w
        den = _eval_int_poly(lead, m)
        if is_z:
            q, r = divmod(-s, den)
            if r:
                raise InexactDivision(n)
            t = q
        elif is_q:
            t = Fraction(-s) / den
        else:
            t = (-s) / den
        yield t
        if k:
            window = [t] + window[:-1]
        n += 1


def generate_terms(spec: RecurrenceSpec, n_max: int, ring: RingTag = RING_Z,
                   initial: Sequence[Scalar] = (1,)) -> List[Scalar]:
    """T(0..n_max) as a list."""
    out = []
    for n, t in enumerate(term_iterator(spec, ring, initial)):
        out.append(t)
        if n == n_max:
            return out
    raise AssertionError("unreachable")


@dataclass
class IntegralityReport:
    base: int
    n_max: int
    ok: bool
    first_failure: Optional[int]
    scaled_terms: List[Scalar] = field(default_factory=list)


def scaled_integrality_check(terms: Sequence[Scalar], base: int,
                             n_max: Optional[int] = None) -> IntegralityReport:
    """Check base^n * T(n) in Z for n <= n_max over a rational term list."""
    if n_max is None:
        n_max = len(terms) - 1
    scaled: List[Scalar] = []
    power = 1
    for n in range(n_max + 1):
        v = Fraction(terms[n]) * power
        if v.denominator != 1:
            return IntegralityReport(base, n_max, False, n, scaled)
        scaled.append(int(v))
        power *= base
    return IntegralityReport(base, n_max, True, None, scaled)


# ---------------------------------------------------------------------------
# Sequence definitions and their JSON file format
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceDef:
    """A sequence given by (G, H) data over a tagged ring.

    The JSON schema is
    {"name", "ring": "Z"|"Q"|"quad:d", "G": [...], "H": [...], "level"?}
    with coefficients as scalar strings.
    """

    name: str
    ring: RingTag
    G: Poly
    H: Poly
    level: Optional[str] = None
    oracle_id: Optional[str] = None

    def spec(self) -> RecurrenceSpec:
        return recurrence_from_gh(self.G, self.H)

    def terms(self, n_max: int) -> List[Scalar]:
        return generate_terms(self.spec(), n_max, self.ring)

    def iter_terms(self) -> Iterator[Scalar]:
        return term_iterator(self.spec(), self.ring)

    def to_json(self) -> dict:
        doc = {
            "name": self.name,
            "ring": self.ring.serialize(),
            "G": [scalar_to_str(c) for c in self.G.coeffs],
            "H": [scalar_to_str(c) for c in self.H.coeffs],
        }
        if self.level is not None:
            doc["level"] = self.level
        return doc

    @staticmethod
    def from_json(doc: dict) -> "SequenceDef":
        ring = RingTag.parse(doc["ring"])
        G = Poly([scalar_from_str(s) for s in doc["G"]])
        H = Poly([scalar_from_str(s) for s in doc["H"]])
        return SequenceDef(doc["name"], ring, G, H, doc.get("level"))

    @staticmethod
    def load(path: str) -> "SequenceDef":
        with open(path, "r", encoding="utf-8") as fh:
            return SequenceDef.from_json(json.load(fh))
