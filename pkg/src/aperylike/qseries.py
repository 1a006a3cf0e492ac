"""Truncated q-expansions: eta products, theta series of binary quadratic
forms, Eisenstein series, and the (X, Z) pairs of the level catalog, with
machine verification of the differentiation formulas, the nonlinear ODE,
and a bank of named q-series identities.

A QExpansion is q^offset * (c0 + c1 q + c2 q^2 + ...) with exact rational
coefficients and a rational offset (eta products live on the q^(1/24)
grid).  Every operation tracks how far the result is actually known, and
comparisons refuse to answer beyond that point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import catalog
from .catalog import LevelRow, Weight1Row, ORACLES
from .recurrence import Poly, generate_terms, recurrence_from_quadratic
from .rings import RING_Z, Scalar

F = Fraction


class QSeriesError(ArithmeticError):
    pass


class QExpansion:
    """q^offset * sum(coeffs[i] q^i), known exactly below q^(offset+len)."""

    __slots__ = ("offset", "coeffs")

    def __init__(self, offset, coeffs: Sequence):
        object.__setattr__(self, "offset", F(offset))
        object.__setattr__(self, "coeffs", [F(c) for c in coeffs])
        if not self.coeffs:
            raise QSeriesError("empty coefficient list")

    def __setattr__(self, *args):
        raise AttributeError("QExpansion is immutable")

    # -- structure ------------------------------------------------------

    @property
    def prec(self) -> Fraction:
        """First exponent at which the expansion is unknown."""
        return self.offset + len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def normalized(self) -> "QExpansion":
        """Strip leading zero coefficients into the offset."""
        i = 0
        while i < len(self.coeffs) and self.coeffs[i] == 0:
            i += 1
        if i == 0:
            return self
        if i == len(self.coeffs):
            raise QSeriesError("series is zero to working precision")
        return QExpansion(self.offset + i, self.coeffs[i:])

    def coefficient(self, exponent) -> Fraction:
        """Exact coefficient of q^exponent; exponent must be below prec."""
        e = F(exponent)
        if e >= self.prec:
            raise QSeriesError("coefficient of q^%s is beyond precision" % e)
        rel = e - self.offset
        if rel.denominator != 1 or rel < 0:
            return F(0)
        return self.coeffs[int(rel)]

    # -- arithmetic -------------------------------------------------------

    def __neg__(self):
        return QExpansion(self.offset, [-c for c in self.coeffs])

    def _add(self, other: "QExpansion", sign: int) -> "QExpansion":
        shift = other.offset - self.offset
        if shift.denominator != 1:
            raise QSeriesError("offsets differ by a non-integer: %s vs %s"
                               % (self.offset, other.offset))
        shift = int(shift)
        off = min(self.offset, other.offset)
        prec = min(self.prec, other.prec)
        n = int(prec - off)
        out = [F(0)] * n
        base = int(self.offset - off)
        for i, c in enumerate(self.coeffs):
            if 0 <= base + i < n:
                out[base + i] += c
        base = int(other.offset - off)
        for i, c in enumerate(other.coeffs):
            if 0 <= base + i < n:
                out[base + i] += sign * c
        if not out:
            raise QSeriesError("empty overlap in addition")
        return QExpansion(off, out)

    def __add__(self, other):
        if isinstance(other, QExpansion):
            return self._add(other, +1)
        return self._add(_embed_scalar(other, self.prec), +1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, QExpansion):
            return self._add(other, -1)
        return self._add(_embed_scalar(other, self.prec), -1)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QExpansion):
            return QExpansion(self.offset, [c * other for c in self.coeffs])
        a, b = self.normalized(), other.normalized()
        n = min(len(a.coeffs), len(b.coeffs))
        out = [F(0)] * n
        for i, x in enumerate(a.coeffs[:n]):
            if not x:
                continue
            for j, y in enumerate(b.coeffs[: n - i]):
                if y:
                    out[i + j] += x * y
        return QExpansion(a.offset + b.offset, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, QExpansion):
            inv = F(1) / F(other)
            return QExpansion(self.offset, [c * inv for c in self.coeffs])
        a, b = self.normalized(), other.normalized()
        n = min(len(a.coeffs), len(b.coeffs))
        lead = b.coeffs[0]
        out: List[Fraction] = []
        for i in range(n):
            acc = a.coeffs[i] if i < len(a.coeffs) else F(0)
            for j in range(1, i + 1):
                acc -= b.coeffs[j] * out[i - j]
            out.append(acc / lead)
        return QExpansion(a.offset - b.offset, out)

    def __rtruediv__(self, other):
        a = self.normalized()
        return _embed_scalar(other, a.offset + len(a.coeffs)) / self

    def __pow__(self, e: int):
        if e < 0:
            return (_one_like(self) / self) ** (-e)
        a = self.normalized()
        out = QExpansion(0, [F(1)] + [F(0)] * (len(a.coeffs) - 1))
        base = a
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def pow_fraction(self, r) -> "QExpansion":
        """f^r for rational r; needs leading coefficient exactly 1."""
        a = self.normalized()
        r = F(r)
        if a.coeffs[0] != 1:
            raise QSeriesError("rational power needs leading coefficient 1")
        n = len(a.coeffs)
        out = [F(1)] + [F(0)] * (n - 1)
        # k P_k = sum_{j=1..k} (r j - (k - j)) u_j P_{k-j}
        for k in range(1, n):
            acc = F(0)
            for j in range(1, k + 1):
                if a.coeffs[j] if j < n else 0:
                    acc += (r * j - (k - j)) * a.coeffs[j] * out[k - j]
            out[k] = acc / k
        return QExpansion(a.offset * r, out)

    def q_derivative(self) -> "QExpansion":
        """q d/dq, exact on the fractional exponent grid."""
        return QExpansion(self.offset,
                          [(self.offset + i) * c for i, c in enumerate(self.coeffs)])

    def shift(self, k) -> "QExpansion":
        """Multiply by q^k."""
        return QExpansion(self.offset + F(k), self.coeffs)

    def subs_q_power(self, m: int) -> "QExpansion":
        """f(q^m); the gaps are known zeros, so precision scales by m."""
        if m < 1:
            raise QSeriesError("substitution power must be >= 1")
        out = [F(0)] * (m * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            out[m * i] = c
        return QExpansion(self.offset * m, out)

    def subs_q_negated(self) -> "QExpansion":
        """f(-q); requires integer offset."""
        if self.offset.denominator != 1:
            raise QSeriesError("f(-q) needs an integer exponent grid")
        base = int(self.offset)
        return QExpansion(self.offset,
                          [c if (base + i) % 2 == 0 else -c
                           for i, c in enumerate(self.coeffs)])

    def truncate_abs(self, exponent) -> "QExpansion":
        """Drop knowledge above q^exponent (inclusive)."""
        n = int(F(exponent) - self.offset) + 1
        if n <= 0:
            raise QSeriesError("truncation removes every known coefficient")
        return QExpansion(self.offset, self.coeffs[: n])

    def __repr__(self):
        a = self.normalized() if not self.is_zero() else self
        parts = []
        for i, c in enumerate(a.coeffs[:6]):
            if c:
                parts.append("%s*q^%s" % (c, a.offset + i))
        return "QExpansion(%s%s)" % (" + ".join(parts) or "0",
                                     " + O(q^%s)" % a.prec)


def _embed_scalar(c, prec_abs) -> QExpansion:
    n = int(F(prec_abs))
    if n <= 0:
        raise QSeriesError("cannot embed a constant at nonpositive precision")
    return QExpansion(0, [F(c)] + [F(0)] * (n - 1))


def _one_like(f: QExpansion) -> QExpansion:
    return QExpansion(0, [F(1)] + [F(0)] * (len(f.coeffs) - 1))


def qexp_equal(a: QExpansion, b: QExpansion, through: int) -> Tuple[bool, Optional[Fraction]]:
    """Compare two expansions coefficientwise up to q^through.

    Raises if either side is not known that far; returns (ok, exponent of
    the first mismatch).
    """
    if a.prec <= through or b.prec <= through:
        raise QSeriesError("known only to q^%s and q^%s, need q^%d"
                           % (a.prec, b.prec, through))
    diff = a - b
    for i, c in enumerate(diff.coeffs):
        e = diff.offset + i
        if e > through:
            break
        if c != 0:
            return False, e
    return True, None


# ---------------------------------------------------------------------------
# Building blocks
# ---------------------------------------------------------------------------


def poch_unit(a: int, m: int, rel: int) -> List[Fraction]:
    """Unit-part coefficients of prod_{j>=0} (1 - q^(a+j m)) to q^rel."""
    out = [F(0)] * (rel + 1)
    out[0] = F(1)
    e = a
    while e <= rel:
        # multiply by (1 - q^e) in place
        for i in range(rel, e - 1, -1):
            out[i] -= out[i - e]
        e += m
    return out


def eta_expand(N: int, order: int) -> QExpansion:
    """eta_N = q^(N/24) prod (1 - q^(jN)), known through q^(N/24 + order)."""
    if N < 1:
        raise QSeriesError("eta level must be >= 1")
    return QExpansion(F(N, 24), poch_unit(N, N, order))


def eta_quotient(factors: Sequence[Tuple[int, int]], order: int) -> QExpansion:
    out = QExpansion(0, [F(1)] + [F(0)] * order)
    for N, e in factors:
        f = eta_expand(N, order)
        if e > 0:
            out = out * f ** e
        elif e < 0:
            out = out / f ** (-e)
    return out


def poch_quotient(offset, factors: Sequence[Tuple[int, int, int]], order: int) -> QExpansion:
    out = QExpansion(F(offset), [F(1)] + [F(0)] * order)
    for a, m, e in factors:
        unit = QExpansion(0, poch_unit(a, m, order))
        if e > 0:
            out = out * unit ** e
        else:
            out = out / unit ** (-e)
    return out


def theta_expand(spec: Tuple[int, int, int], order: int) -> QExpansion:
    """theta_{a,b,c} = sum over (j,k) in Z^2 of q^(a j^2 + b j k + c k^2)."""
    a, b, c = spec
    if a <= 0 or 4 * a * c - b * b <= 0:
        raise QSeriesError("form (%d,%d,%d) is not positive definite" % spec)
    disc = 4 * a * c - b * b
    out = [0] * (order + 1)
    jmax = int((4 * c * order / disc) ** 0.5) + 2
    kmax = int((4 * a * order / disc) ** 0.5) + 2
    for j in range(-jmax, jmax + 1):
        for k in range(-kmax, kmax + 1):
            v = a * j * j + b * j * k + c * k * k
            if 0 <= v <= order:
                out[v] += 1
    return QExpansion(0, out)


def phi_expand(order: int) -> QExpansion:
    """phi(q) = sum_{j in Z} q^(j^2)."""
    out = [0] * (order + 1)
    out[0] = 1
    j = 1
    while j * j <= order:
        out[j * j] += 2
        j += 1
    return QExpansion(0, out)


def psi_expand(order: int) -> QExpansion:
    """psi(q) = sum_{j >= 0} q^(j(j+1)/2)."""
    out = [0] * (order + 1)
    j = 0
    while j * (j + 1) // 2 <= order:
        out[j * (j + 1) // 2] += 1
        j += 1
    return QExpansion(0, out)


def _legendre13(j: int) -> int:
    r = j % 13
    if r == 0:
        return 0
    return 1 if r in (1, 3, 4, 9, 10, 12) else -1


def eisenstein_expand(kind: str, order: int) -> QExpansion:
    """P, Q, R with the classical normalizations, or the level-13 series U."""
    out = [F(0)] * (order + 1)
    if kind == "P":
        out[0], mult, power = F(1), -24, 1
    elif kind == "Q":
        out[0], mult, power = F(1), 240, 3
    elif kind == "R":
        out[0], mult, power = F(1), -504, 5
    elif kind == "U13":
        out[0] = F(1)
        for n in range(1, order + 1):
            s = 0
            for d in range(1, n + 1):
                if n % d == 0:
                    s += _legendre13(d) * d
            out[n] = F(-s)
        return QExpansion(0, out)
    else:
        raise QSeriesError("unknown Eisenstein kind %r" % (kind,))
    for n in range(1, order + 1):
        s = 0
        for d in range(1, n + 1):
            if n % d == 0:
                s += d ** power
        out[n] = F(mult * s)
    return QExpansion(0, out)


def build_product(spec: tuple, order: int) -> QExpansion:
    kind = spec[0]
    if kind == "eta":
        return eta_quotient(spec[1], order)
    if kind == "poch":
        return poch_quotient(spec[1], spec[2], order)
    if kind == "theta":
        return theta_expand(spec[1], order)
    if kind == "eisenstein13":
        P = eisenstein_expand("P", order)
        return (13 * P.subs_q_power(13).truncate_abs(order) - P) / 12
    if kind == "level1w":
        Qs = eisenstein_expand("Q", order)
        Rs = eisenstein_expand("R", order)
        q32 = Qs.pow_fraction(F(3, 2))
        return (q32 - Rs) / ((q32 + Rs) * 432)
    raise QSeriesError("unknown product spec %r" % (kind,))


def poly_at_series(p: Poly, X: QExpansion) -> QExpansion:
    """p(X) by Horner; X must have positive valuation."""
    Xn = X.normalized()
    if Xn.offset <= 0:
        raise QSeriesError("polynomial substitution needs valuation >= 1")
    prec = Xn.prec
    acc = _embed_scalar(p.coeffs[-1], prec)
    for c in reversed(p.coeffs[:-1]):
        acc = acc * X + _embed_scalar(c, prec)
    return acc


def series_pow_rational(f: QExpansion, r) -> QExpansion:
    return f.pow_fraction(r)


# ---------------------------------------------------------------------------
# (X, Z) construction and the coefficient extraction
# ---------------------------------------------------------------------------


def build_w(row: LevelRow, order: int) -> QExpansion:
    if row.w is None:
        raise QSeriesError("level %s has no Hauptmodul w in the tables" % row.key)
    return build_product(row.w, order)


def build_x(row: LevelRow, order: int) -> QExpansion:
    if row.x_special is not None:
        kind = row.x_special[0]
        if kind == "eta_theta_sq":
            _, eta, theta = row.x_special
            num = eta_quotient(eta, order)
            den = theta_expand(theta, order)
            return (num / den) ** 2
        if kind == "eta_over_theta_sum":
            _, eta, th1, th2, scale = row.x_special
            num = eta_quotient(eta, order) * scale
            den = theta_expand(th1, order) + theta_expand(th2, order)
            return num / den
        raise QSeriesError("unknown X spec %r" % (kind,))
    w = build_w(row, order)
    return w / _poly_in_w(row.x_denom, w)


def _poly_in_w(coeffs: Sequence, w: QExpansion) -> QExpansion:
    acc = _embed_scalar(coeffs[-1], w.prec)
    for c in reversed(list(coeffs)[:-1]):
        acc = acc * w + _embed_scalar(c, w.prec)
    return acc


def build_xz(row: LevelRow, order: int) -> Tuple[QExpansion, QExpansion]:
    """The pair (X, Z) for a catalog level, verified to have X = q + O(q^2)
    and Z = 1 + O(q); raises "definition inconsistent" otherwise."""
    X = build_x(row, order + 4).normalized()
    if X.offset != 1 or X.coeffs[0] != 1:
        raise QSeriesError("definition inconsistent: X of %s starts %s q^%s"
                           % (row.key, X.coeffs[0], X.offset))
    if row.z_eta and row.z_eta[0] == "eisenstein13":
        Z = build_product(("eisenstein13",), order + 4)
    else:
        num = eta_quotient(row.z_eta, order + 4)
        Z = num / X.pow_fraction(row.z_xexp) if row.z_xexp else num
    Z = Z.normalized()
    if Z.offset != 0 or Z.coeffs[0] != 1:
        raise QSeriesError("definition inconsistent: Z of %s starts %s q^%s"
                           % (row.key, Z.coeffs[0], Z.offset))
    return X.truncate_abs(order + 1), Z.truncate_abs(order)


def expansion_coefficients(Z: QExpansion, X: QExpansion, n_max: int) -> List[Scalar]:
    """Solve Z = sum T(n) X^n for T(0..n_max) by successive subtraction."""
    Xn = X.normalized()
    if Xn.offset != 1:
        raise QSeriesError("X must have valuation exactly 1")
    if Z.prec <= n_max or X.prec <= n_max + 1:
        raise QSeriesError("need q-precision beyond %d to extract %d coefficients"
                           % (n_max, n_max + 1))
    out: List[Scalar] = []
    rem = Z
    xpow = _embed_scalar(1, Z.prec)  # X^n, with leading coefficient lead^n
    lead = Xn.coeffs[0]
    leadpow = F(1)
    for n in range(n_max + 1):
        c = rem.coefficient(n) / leadpow
        out.append(int(c) if c.denominator == 1 else c)
        rem = rem - xpow * c
        xpow = xpow * X
        leadpow *= lead
    return out


# ---------------------------------------------------------------------------
# Verifiers
# ---------------------------------------------------------------------------


def verify_diff_formula(row: LevelRow, order: int = 30) -> Tuple[bool, Optional[Fraction]]:
    """(q dX/dq)^2 == Z^2 X^2 G(X) through q^order (squared form, no roots)."""
    X, Z = build_xz(row, order + 2)
    lhs = X.q_derivative()
    lhs = lhs * lhs
    G = poly_at_series(row.G(), X)
    rhs = Z * Z * X * X * G
    return qexp_equal(lhs, rhs, order)


def verify_ode(row: LevelRow, order: int = 30) -> Tuple[bool, Optional[Fraction]]:
    """D^2 Z - (DZ)^2/(2Z) == H(X) Z with D = (1/Z) q d/dq, through q^order."""
    X, Z = build_xz(row, order + 4)
    DZ = Z.q_derivative() / Z
    D2Z = DZ.q_derivative() / Z
    lhs = D2Z - (DZ * DZ) / (2 * Z)
    hnum, hden = row.H_parts()
    rhs = poly_at_series(hnum, X) * Z
    if hden.degree > 0 or hden[0] != 1:
        lhs = lhs * poly_at_series(hden, X)
    return qexp_equal(lhs, rhs, order)


def verify_weight_one(row: Weight1Row, order: int = 30) -> Tuple[bool, Optional[Fraction]]:
    """z == sum t(n) x^n and q dx/dq == z^2 x (1 - a x - c x^2), through q^order."""
    a, b, g = row.triple
    x = build_product(row.x, order + 4).normalized()
    z = build_product(row.z, order + 4).normalized()
    if x.offset != 1 or x.coeffs[0] != 1:
        raise QSeriesError("x of %s is not q + O(q^2)" % row.key)
    t = generate_terms(recurrence_from_quadratic(a, b, g), order, RING_Z)
    got = expansion_coefficients(z, x, order)
    for n, (u, v) in enumerate(zip(t, got)):
        if u != v:
            return False, F(n)
    lhs = x.q_derivative()
    rhs = z * z * x * poly_at_series(Poly([1, -a, -g]), x)
    return qexp_equal(lhs, rhs, order)


def verify_weight_two(row, order: int = 20) -> Tuple[bool, Optional[Fraction]]:
    """y == sum s(n) w^n for a cubic-companion table row, through q^order."""
    from .recurrence import cubic_from_quadratic_asz
    a, b, g = row.triple
    w = build_product(row.w, order + 4).normalized()
    y = build_product(row.y, order + 4).normalized()
    s = generate_terms(cubic_from_quadratic_asz(a, b, g), order, RING_Z)
    got = expansion_coefficients(y, w, order)
    for n, (u, v) in enumerate(zip(s, got)):
        if u != v:
            return False, F(n)
    return True, None


# -- the identity bank ------------------------------------------------------


def _bank_beukers_apery(order: int):
    row = catalog.WEIGHT2_ROWS["weight2-6A"]
    w = build_product(row.w, order + 4).normalized()
    y = build_product(row.y, order + 4).normalized()
    apery = ORACLES["apery"]
    got = expansion_coefficients(y, w, order)
    for n, v in enumerate(got):
        if v != apery(n):
            return False, F(n)
    return True, None


def _bank_jacobi_phi4(order: int):
    phi = phi_expand(order)
    psi2 = psi_expand(order)
    lhs = phi ** 4
    rhs = phi.subs_q_negated() ** 4 + (psi2.subs_q_power(2) ** 4).shift(1) * 16
    return qexp_equal(lhs, rhs, order)


def _bank_phi_eta(order: int):
    lhs = phi_expand(order)
    rhs = eta_quotient(((2, 5), (1, -2), (4, -2)), order)
    return qexp_equal(lhs, rhs, order)


def _bank_psi_eta(order: int):
    lhs = psi_expand(order).shift(F(1, 8))
    rhs = eta_quotient(((2, 2), (1, -1)), order)
    return qexp_equal(lhs, rhs, order)


def _bank_phi4_eisenstein(order: int):
    P = eisenstein_expand("P", order)
    lhs = phi_expand(order) ** 4
    rhs = (4 * P.subs_q_power(4).truncate_abs(order) - P) / 3
    return qexp_equal(lhs, rhs, order)


def _bank_p_derivative(order: int):
    P = eisenstein_expand("P", order + 2)
    Q = eisenstein_expand("Q", order + 2)
    lhs = P.q_derivative()
    rhs = (P * P - Q) / 12
    return qexp_equal(lhs, rhs, order)


def _w14(symbol: str, order: int) -> QExpansion:
    specs = {
        "+2": ((7, 4), (14, 4), (1, -4), (2, -4)),
        "+7": ((2, 3), (14, 3), (1, -3), (7, -3)),
        "+14": ((1, 4), (14, 4), (2, -4), (7, -4)),
    }
    return eta_quotient(specs[symbol], order).normalized()


def _w15(symbol: str, order: int) -> QExpansion:
    specs = {
        "+3": ((5, 3), (15, 3), (1, -3), (3, -3)),
        "+5": ((3, 2), (15, 2), (1, -2), (5, -2)),
        "+15": ((1, 3), (15, 3), (3, -3), (5, -3)),
    }
    return eta_quotient(specs[symbol], order).normalized()


def _bank_level14_wbwc(order: int):
    w7 = _w14("+7", order + 4)
    w14 = _w14("+14", order + 4)
    one = _embed_scalar(1, order + 2)
    lhs = one / w7 + 8 * w7
    rhs = one / w14 + w14 - 7
    return qexp_equal(lhs, rhs, order)


def _bank_level14_wawb(order: int):
    w2 = _w14("+2", order + 10)
    w14 = _w14("+14", order + 10)
    one = _embed_scalar(1, order + 8)
    lhs = one / w2 + 2401 * w2
    inv = one / w14
    rhs = (inv ** 3 - 16 * inv ** 2 + 48 * inv + _embed_scalar(32, order + 4)
           + 48 * w14 - 16 * w14 ** 2 + w14 ** 3)
    return qexp_equal(lhs, rhs, order)


def _bank_level15_wbwc(order: int):
    w5 = _w15("+5", order + 4)
    w15 = _w15("+15", order + 4)
    one = _embed_scalar(1, order + 2)
    lhs = one / w5 + 9 * w5 + 5
    rhs = one / w15 - w15
    return qexp_equal(lhs, rhs, order)


def _bank_level15_wawb(order: int):
    w3 = _w15("+3", order + 8)
    w5 = _w15("+5", order + 8)
    one = _embed_scalar(1, order + 6)
    lhs = one / w3 - 125 * w3
    inv = one / w5
    rhs = inv ** 2 + inv - 9 * w5 - 81 * w5 ** 2
    return qexp_equal(lhs, rhs, order)


def _level13_w_u(order: int):
    w = eta_quotient(((13, 2), (1, -2)), order).normalized()
    U = eisenstein_expand("U13", order)
    return w, U


def _bank_level13_eta1(order: int):
    w, U = _level13_w_u(order + 6)
    lhs = eta_quotient(((1, 24),), order + 6)
    den = _poly_in_w((1, 5, 13), w) ** 4
    rhs = U ** 6 * w / den
    return qexp_equal(lhs, rhs, order)


def _bank_level13_eta13(order: int):
    w, U = _level13_w_u(order + 16)
    lhs = eta_quotient(((13, 24),), order + 16)
    den = _poly_in_w((1, 5, 13), w) ** 4
    rhs = U ** 6 * w ** 13 / den
    return qexp_equal(lhs, rhs, order)


def _bank_level13_zsquared(order: int):
    w, U = _level13_w_u(order + 6)
    X, Z = build_xz(catalog.LEVEL_ROWS["level13"], order + 4)
    lhs = Z * Z
    rhs = U * U * _poly_in_w((1, 5, 13), w)
    return qexp_equal(lhs, rhs, order)


def _bank_level13_zstar_eta(order: int):
    row = catalog.LEVEL_ROWS["level13star"]
    X, Z = build_xz(row, order + 6)
    one = _embed_scalar(1, X.prec)
    lhs = Z
    rhs = (eta_quotient(((1, 2), (13, 2)), order + 6)
           * (one - X).pow_fraction(F(2, 3)) / X.pow_fraction(F(7, 6)))
    return qexp_equal(lhs, rhs, order)


def _bank_sum_eight_squares(order: int):
    Qs = eisenstein_expand("Q", order)
    phi = phi_expand(order)
    psi = psi_expand(order)
    lhs = 16 * Qs.subs_q_power(4).truncate_abs(order) + Qs
    rhs = (16 * phi ** 8 + phi.subs_q_negated() ** 8
           + 256 * (psi.subs_q_power(2) ** 8).shift(2))
    return qexp_equal(lhs, rhs, order)


IDENTITY_BANK: Dict[str, Callable[[int], Tuple[bool, Optional[Fraction]]]] = {
    "beukers-apery": _bank_beukers_apery,
    "jacobi-phi4": _bank_jacobi_phi4,
    "phi-eta": _bank_phi_eta,
    "psi-eta": _bank_psi_eta,
    "phi4-eisenstein": _bank_phi4_eisenstein,
    "eisenstein-p-derivative": _bank_p_derivative,
    "level14-wbwc": _bank_level14_wbwc,
    "level14-wawb": _bank_level14_wawb,
    "level15-wbwc": _bank_level15_wbwc,
    "level15-wawb": _bank_level15_wawb,
    "level13-eta1-24": _bank_level13_eta1,
    "level13-eta13-24": _bank_level13_eta13,
    "level13-zsquared": _bank_level13_zsquared,
    "level13-zstar-eta": _bank_level13_zstar_eta,
    "sum-eight-squares": _bank_sum_eight_squares,
}


def verify_identity_bank(name: str, order: int = 30) -> Tuple[bool, Optional[Fraction]]:
    if name not in IDENTITY_BANK:
        raise catalog.UnknownKeyError("unknown identity %r" % (name,))
    return IDENTITY_BANK[name](order)


# -- level 14/15 deformed X: which side the printed series matches ----------


def epsilon_x_expansion(level: int, eps: int, order: int = 8) -> Tuple[QExpansion, QExpansion]:
    """(X_eps, 1/X_eps) for the level-14/15 family at a concrete eps."""
    if level == 14:
        w = _w14("+7", order + 6)
        one = _embed_scalar(1, order + 4)
        inv = one / w + 8 * w + eps
    elif level == 15:
        w = _w15("+15", order + 6)
        one = _embed_scalar(1, order + 4)
        inv = one / w - w + eps
    else:
        raise catalog.UnknownKeyError("no epsilon family at level %d" % level)
    X = _embed_scalar(1, order + 4) / inv
    return X, inv


# The level-14 family's printed expansion "1/q + (eps-3) + 11q + 20q^2 +
# 57q^3 + 92q^4 + 207q^5" with eps only in the constant term.  It matches
# 1/X_eps, not X_eps; printed_x14_matches_reciprocal records which.
PRINTED_X14_SERIES = [1, -3, 11, 20, 57, 92, 207]  # exponents -1..5, eps removed


def printed_x14_matches_reciprocal(order: int = 5) -> bool:
    for eps in (0, 4):
        X, inv = epsilon_x_expansion(14, eps, order + 2)
        shifted = inv - eps
        for i, c in enumerate(PRINTED_X14_SERIES[: order + 2]):
            if shifted.coefficient(i - 1) != c:
                return False
        # X_eps itself starts at q^1; it has no 1/q term at all
        if X.normalized().offset != 1:
            return False
    return True
