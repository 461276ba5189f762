"""Exact arithmetic and sign determination in a real number field Q(alpha).

A field is described by a monic irreducible integer polynomial together with
a rational interval isolating one real root alpha.  Elements are stored as
rational coefficient vectors of length deg(alpha); multiplication reduces
modulo the minimal polynomial, so the representation is canonical and
equality is coefficient-wise.

Sign determination is exact: zero is decided syntactically (all coefficients
zero), and a nonzero element's sign is obtained by refining the isolating
interval with exact interval arithmetic until the evaluated interval excludes
zero.  After a fixed number of bisections a provable separation bound (Cauchy
bound on the characteristic polynomial of the element) guarantees
termination; the answer is never interval-approximate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DivisionByZero, FieldMismatch, InvalidField, UnsupportedDegree

SIGN_BISECTION_CAP = 64

Q = Fraction


# ---------------------------------------------------------------------------
# rational polynomial helpers (coefficients ascending, trailing zeros trimmed)
# ---------------------------------------------------------------------------

def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Q(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_deriv(coeffs: Sequence[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(coeffs)][1:]


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim(out)


def _poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]):
    num = list(num)
    den = _trim(list(den))
    if not den:
        raise DivisionByZero("polynomial division by zero")
    quo = [Q(0)] * max(0, len(num) - len(den) + 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        factor = num[shift + len(den) - 1] / lead
        if factor:
            quo[shift] = factor
            for i, c in enumerate(den):
                num[shift + i] -= factor * c
    return _trim(quo), _trim(num[: len(den) - 1])


def _poly_ext_gcd(a: Sequence[Fraction], b: Sequence[Fraction]):
    """Extended Euclid: returns (g, u, v) with u*a + v*b = g."""
    r0, r1 = _trim(list(a)), _trim(list(b))
    u0, u1 = [Q(1)], []
    v0, v1 = [], [Q(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _trim([x - y for x, y in _zip_pad(u0, _poly_mul(q, u1))])
        v0, v1 = v1, _trim([x - y for x, y in _zip_pad(v0, _poly_mul(q, v1))])
    return r0, u0, v0


def _zip_pad(a: Sequence[Fraction], b: Sequence[Fraction]):
    la, lb = len(a), len(b)
    for i in range(max(la, lb)):
        yield (a[i] if i < la else Q(0)), (b[i] if i < lb else Q(0))


def _sturm_chain(f: Sequence[Fraction]) -> list[list[Fraction]]:
    chain = [_trim(list(f)), _poly_deriv(f)]
    while chain[-1]:
        _, rem = _poly_divmod(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_changes(values: Iterable[Fraction]) -> int:
    nonzero = [v for v in values if v != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0))


def _count_roots(f: Sequence[Fraction], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of f in (lo, hi); endpoints must not be roots."""
    chain = _sturm_chain(f)
    va = _sign_changes(_poly_eval(p, lo) for p in chain)
    vb = _sign_changes(_poly_eval(p, hi) for p in chain)
    return va - vb


def _integer_divisors(m: int) -> list[int]:
    m = abs(m)
    out = []
    d = 1
    while d * d <= m:
        if m % d == 0:
            out.extend((d, -d, m // d, -(m // d)))
        d += 1
    return sorted(set(out))


def _is_irreducible_leq4(coeffs: Sequence[int]) -> bool:
    """Irreducibility over Q for monic integer polynomials of degree <= 4.

    Degree 2 and 3 reduce to the rational (integer) root test; degree 4
    additionally rules out factorizations into two monic integer quadratics.
    """
    deg = len(coeffs) - 1
    if deg == 1:
        return True
    c0 = coeffs[0]
    if c0 == 0:
        return False
    for r in _integer_divisors(c0):
        if _poly_eval([Q(c) for c in coeffs], Q(r)) == 0:
            return False
    if deg <= 3:
        return True
    # degree 4: (x^2 + a x + b)(x^2 + c x + d) with integer a, b, c, d
    _, c1, c2, c3, _ = coeffs
    for b in _integer_divisors(c0):
        if c0 % b:
            continue
        d = c0 // b
        # a + c = c3 and a*c = c2 - b - d: integer roots of t^2 - c3 t + (c2-b-d)
        disc = c3 * c3 - 4 * (c2 - b - d)
        if disc < 0:
            continue
        s = _isqrt(disc)
        if s * s != disc:
            continue
        for a2 in ((c3 + s), (c3 - s)):
            if a2 % 2:
                continue
            a = a2 // 2
            c = c3 - a
            if a * d + b * c == c1:
                return False
    return True


def _isqrt(m: int) -> int:
    import math

    return math.isqrt(m)


def _interval_eval(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction):
    """Exact interval Horner evaluation of sum c_i x^i over x in [lo, hi]."""
    a, b = Q(0), Q(0)
    for c in reversed(coeffs):
        products = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(products) + c, max(products) + c
    return a, b


# ---------------------------------------------------------------------------
# number field
# ---------------------------------------------------------------------------

class NumberField:
    """A real number field Q(alpha) with alpha pinned by an isolating interval.

    The stored interval only ever shrinks (monotone refinement cache), so
    concurrent readers are safe: any refinement is itself a valid isolating
    interval and all derived answers are unchanged.
    """

    __slots__ = ("min_poly", "degree", "isolating", "_lo", "_hi", "_fpoly")

    def __init__(self, min_poly: Sequence[int], isolating, assert_irreducible: bool = False):
        coeffs = tuple(int(c) for c in min_poly)
        if len(coeffs) < 2:
            raise InvalidField("min_poly must have degree >= 1")
        if any(c != int(c) for c in min_poly):
            raise InvalidField("min_poly coefficients must be integers")
        if coeffs[-1] != 1:
            raise InvalidField("min_poly must be monic")
        deg = len(coeffs) - 1
        if deg > 4 and not assert_irreducible:
            raise UnsupportedDegree(
                f"degree {deg} > 4: pass assert_irreducible=True to skip factorization checks"
            )
        if deg <= 4 and not _is_irreducible_leq4(coeffs):
            raise InvalidField("min_poly is reducible over Q")
        lo, hi = (Q(isolating[0]), Q(isolating[1]))
        if not lo < hi:
            raise InvalidField("isolating interval must satisfy lo < hi")
        fpoly = [Q(c) for c in coeffs]
        if _poly_eval(fpoly, lo) == 0 or _poly_eval(fpoly, hi) == 0:
            raise InvalidField("isolating interval endpoints must not be roots")
        if deg == 1:
            root = -Q(coeffs[0])
            if not (lo < root < hi):
                raise InvalidField("isolating interval does not contain the root")
        elif _count_roots(fpoly, lo, hi) != 1:
            raise InvalidField("isolating interval must contain exactly one real root")
        self.min_poly = coeffs
        self.degree = deg
        self.isolating = (lo, hi)
        self._fpoly = fpoly
        if deg == 1:
            root = -Q(coeffs[0])
            self._lo, self._hi = root, root
        else:
            self._lo, self._hi = lo, hi

    @classmethod
    def rational(cls) -> "NumberField":
        """The degree-1 field Q itself (alpha = 0, never referenced)."""
        return cls((0, 1), (-1, 1))

    def __eq__(self, other):
        if not isinstance(other, NumberField):
            return NotImplemented
        return self.min_poly == other.min_poly and self.isolating == other.isolating

    def __hash__(self):
        return hash((self.min_poly, self.isolating))

    def __repr__(self):
        return f"NumberField(min_poly={list(self.min_poly)}, isolating={self.isolating})"

    # element construction -------------------------------------------------

    def element(self, coeffs) -> "FieldElement":
        return FieldElement(self, coeffs)

    def from_rational(self, value) -> "FieldElement":
        return FieldElement(self, (Q(value),) + (Q(0),) * (self.degree - 1))

    def zero(self) -> "FieldElement":
        return self.from_rational(0)

    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def alpha(self) -> "FieldElement":
        if self.degree == 1:
            return self.from_rational(-self.min_poly[0])
        return FieldElement(self, (Q(0), Q(1)) + (Q(0),) * (self.degree - 2))

    # sign machinery --------------------------------------------------------

    def _refine(self) -> None:
        lo, hi = self._lo, self._hi
        mid = (lo + hi) / 2
        fm = _poly_eval(self._fpoly, mid)
        if fm == 0:
            # impossible for verified-irreducible deg >= 2; a lying
            # assert_irreducible flag can land here
            raise InvalidField("min_poly has a rational root; not irreducible")
        if (fm > 0) == (_poly_eval(self._fpoly, lo) > 0):
            self._lo = mid
        else:
            self._hi = mid

    def sign_of_coeffs(self, coeffs: Sequence[Fraction]) -> int:
        """Exact sign of sum c_i alpha^i; zero iff all coefficients are zero."""
        nonconst = any(coeffs[1:])
        if not nonconst:
            c0 = coeffs[0]
            return 0 if c0 == 0 else (1 if c0 > 0 else -1)
        bound = None
        rounds = 0
        while True:
            lo, hi = _interval_eval(coeffs, self._lo, self._hi)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            rounds += 1
            if rounds > SIGN_BISECTION_CAP and bound is None:
                bound = self._separation_bound(coeffs)
            if bound is not None and hi - lo < bound:
                # interval shorter than the root separation bound cannot
                # straddle zero; the checks above must have resolved it
                raise RuntimeError("sign refinement failed below separation bound")
            self._refine()

    def _separation_bound(self, coeffs: Sequence[Fraction]) -> Fraction:
        """Cauchy-type lower bound on |g(alpha)| for nonzero g of degree < deg.

        Uses the characteristic polynomial of multiplication by g(alpha) on
        Q[x]/(min_poly); its constant term is the norm of g(alpha), nonzero
        whenever g(alpha) is.
        """
        d = self.degree
        cols = []
        g = _trim(list(coeffs))
        for i in range(d):
            shifted = [Q(0)] * i + g
            _, rem = _poly_divmod(shifted, self._fpoly)
            rem = rem + [Q(0)] * (d - len(rem))
            cols.append(rem)
        # char poly of the d x d matrix with columns cols, by interpolation
        pts = []
        for t in range(d + 1):
            m = [[(Q(t) if r == c else Q(0)) - cols[c][r] for c in range(d)] for r in range(d)]
            pts.append((Q(t), _det(m)))
        char = _lagrange(pts)
        a0 = char[0]
        m = max(abs(c) for c in char[1:])
        return abs(a0) / (abs(a0) + m)

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        lo, hi = self.isolating
        return {"min_poly": list(self.min_poly), "isolating": [str(lo), str(hi)]}

    @classmethod
    def from_json(cls, obj: dict, assert_irreducible: bool = False) -> "NumberField":
        return cls(obj["min_poly"], (Q(obj["isolating"][0]), Q(obj["isolating"][1])),
                   assert_irreducible=assert_irreducible)


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Q(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Q(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


def _lagrange(points: list[tuple[Fraction, Fraction]]) -> list[Fraction]:
    """Interpolating polynomial coefficients (ascending) through exact points."""
    n = len(points)
    out = [Q(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Q(1)]
        denom = Q(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = _poly_mul(basis, [-xj, Q(1)])
            denom *= xi - xj
        scale = yi / denom
        for k, c in enumerate(basis):
            out[k] += scale * c
    return out


# ---------------------------------------------------------------------------
# field elements
# ---------------------------------------------------------------------------

class FieldElement:
    """An element of a fixed NumberField, as a rational coefficient vector."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        coeffs = tuple(Q(c) for c in coeffs)
        if len(coeffs) != field.degree:
            raise FieldMismatch(
                f"expected {field.degree} coefficients, got {len(coeffs)}"
            )
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("operands from different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to FieldElement")

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        prod = _poly_mul(list(self.coeffs), list(other.coeffs))
        _, rem = _poly_divmod(prod, self.field._fpoly)
        rem = rem + [Q(0)] * (self.field.degree - len(rem))
        return FieldElement(self.field, rem)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero field element")
        g, u, _ = _poly_ext_gcd(list(self.coeffs), self.field._fpoly)
        # gcd is a nonzero constant since min_poly is irreducible
        scale = 1 / g[0]
        inv = [c * scale for c in u]
        inv = inv + [Q(0)] * (self.field.degree - len(inv))
        return FieldElement(self.field, inv[: self.field.degree])

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.min_poly, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def sign(self) -> int:
        return self.field.sign_of_coeffs(self.coeffs)

    def abs(self) -> "FieldElement":
        return -self if self.sign() < 0 else self

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                var = "a" if i == 1 else f"a^{i}"
                parts.append(("-" if c < 0 else ("+" if parts else "")) + mag + var)
        return "".join(parts)

    def __repr__(self):
        return f"FieldElement({self})"

    def to_json(self):
        if self.field.degree == 1:
            return str(self.coeffs[0])
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, field: NumberField, obj) -> "FieldElement":
        if isinstance(obj, (str, int)):
            return field.from_rational(Q(str(obj)))
        coeffs = [Q(str(c)) for c in obj]
        if len(coeffs) < field.degree:
            coeffs += [Q(0)] * (field.degree - len(coeffs))
        return cls(field, coeffs)
