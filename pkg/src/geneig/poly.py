"""Dense univariate polynomials over the rationals.

``PolyQ`` stores coefficients in ascending degree with no trailing zeros,
so the zero polynomial is the empty coefficient tuple and ``degree`` is
``len(coeffs) - 1``.  Degrees in this package never exceed the order of the
matrix under study, which keeps the dense representation simple and fast.

Irreducible factorization over the rationals is delegated to sympy and the
result is certified here by exact re-multiplication; everything else
(division, gcd via a primitive polynomial remainder sequence, Yun squarefree
decomposition) is self-contained.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .rationals import Rational, as_rational, format_rational, lcm_int, normalize


class PolyQ:
    """Univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [normalize(as_rational(c)) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "PolyQ":
        return PolyQ()

    @staticmethod
    def one() -> "PolyQ":
        return PolyQ((1,))

    @staticmethod
    def constant(c) -> "PolyQ":
        return PolyQ((c,))

    @staticmethod
    def variable() -> "PolyQ":
        return PolyQ((0, 1))

    @staticmethod
    def monomial(degree: int, c=1) -> "PolyQ":
        return PolyQ((0,) * degree + (c,))

    # -- basic structure ----------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Rational:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, k: int) -> Rational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == PolyQ((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PolyQ({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- arithmetic ----------------------------------------------------

    def __neg__(self) -> "PolyQ":
        return PolyQ(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "PolyQ":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return PolyQ(out)

    __radd__ = __add__

    def __sub__(self, other) -> "PolyQ":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PolyQ":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "PolyQ":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PolyQ()
            return PolyQ(tuple(c * other for c in self.coeffs))
        if not isinstance(other, PolyQ):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyQ()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "PolyQ":
        if exponent < 0:
            raise ValueError("negative exponent")
        result = PolyQ.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        return poly_divrem(self, _coerce(other))

    def __floordiv__(self, other) -> "PolyQ":
        return poly_divrem(self, _coerce(other))[0]

    def __mod__(self, other) -> "PolyQ":
        return poly_divrem(self, _coerce(other))[1]

    def monic(self) -> "PolyQ":
        if not self.coeffs:
            raise ValueError("zero polynomial cannot be made monic")
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        inv = Fraction(1) / Fraction(lead)
        return PolyQ(tuple(c * inv for c in self.coeffs))

    def derivative(self) -> "PolyQ":
        return PolyQ(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def evaluate(self, x: Rational) -> Rational:
        acc: Rational = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return normalize(acc) if isinstance(acc, Fraction) else acc

    def scaled_argument(self, s: Rational) -> "PolyQ":
        """Return p(s*x)."""
        out = []
        power: Rational = 1
        for c in self.coeffs:
            out.append(c * power)
            power = power * s
        return PolyQ(out)

    def divides(self, other: "PolyQ") -> bool:
        if self.is_zero():
            return other.is_zero()
        return poly_divrem(other, self)[1].is_zero()


def _coerce(value) -> PolyQ:
    if isinstance(value, PolyQ):
        return value
    if isinstance(value, (int, Fraction)):
        return PolyQ((value,))
    return NotImplemented


# -- division, gcd, lcm ------------------------------------------------


def poly_divrem(a: PolyQ, b: PolyQ) -> tuple[PolyQ, PolyQ]:
    """Exact division with remainder: a = q*b + r with deg r < deg b."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero() or a.degree < b.degree:
        return PolyQ(), a
    rem = list(a.coeffs)
    db = b.degree
    lead = b.coeffs[-1]
    inv = 1 if lead == 1 else Fraction(1) / Fraction(lead)
    quo = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        q = c if lead == 1 else normalize(c * inv)
        quo[k - db] = q
        rem[k] = 0
        for j in range(db):
            rem[k - db + j] = rem[k - db + j] - q * b.coeffs[j]
    return PolyQ(quo), PolyQ(rem)


def _integer_coeffs(p: PolyQ) -> list[int]:
    """Scale to primitive integer coefficients (content removed, lead > 0)."""
    if p.is_zero():
        return []
    den = 1
    for c in p.coeffs:
        if isinstance(c, Fraction):
            den = lcm_int(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    content = 0
    for c in ints:
        content = gcd(content, c)
    if ints[-1] < 0:
        content = -content
    return [c // content for c in ints]


def poly_gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic gcd via a primitive polynomial remainder sequence.

    Working with primitive integer remainders keeps coefficient growth
    polynomial, unlike the naive rational Euclidean algorithm.
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    u, v = _integer_coeffs(a), _integer_coeffs(b)
    if len(u) < len(v):
        u, v = v, u
    while v:
        # pseudo-remainder of u by v, kept primitive
        rem = list(u)
        dv = len(v) - 1
        lead = v[-1]
        while len(rem) - 1 >= dv:
            c = rem[-1]
            k = len(rem) - 1
            g = gcd(c, lead)
            mul_rem, mul_v = lead // g, c // g
            for j in range(k - dv):
                rem[j] = rem[j] * mul_rem
            for j in range(dv):
                rem[k - dv + j] = rem[k - dv + j] * mul_rem - mul_v * v[j]
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        content = 0
        for c in rem:
            content = gcd(content, c)
        if content > 1:
            rem = [c // content for c in rem]
        u, v = v, rem
    return PolyQ(u).monic()


def poly_lcm(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic least common multiple."""
    if a.is_zero() or b.is_zero():
        raise ValueError("lcm with the zero polynomial is undefined")
    # fast path: divisibility is the common case when folding lcms
    if a.divides(b):
        return b.monic()
    if b.divides(a):
        return a.monic()
    g = poly_gcd(a, b)
    return ((a * b) // g).monic()


# -- squarefree decomposition and factorization ------------------------


def squarefree_decomposition(p: PolyQ) -> list[tuple[PolyQ, int]]:
    """Yun's algorithm: p = lc * prod part_i^i with monic squarefree,
    pairwise coprime parts.

    Returns [(part, multiplicity)] sorted by multiplicity; unit parts are
    omitted, so the product times lc(p) reconstructs p exactly.
    """
    if p.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    p = p.monic()
    if p.degree <= 0:
        return []
    out: list[tuple[PolyQ, int]] = []
    g = poly_gcd(p, p.derivative())
    c = p // g
    d = p.derivative() // g - c.derivative()
    k = 1
    while c.degree > 0:
        a = poly_gcd(c, d) if not d.is_zero() else c.monic()
        if a.degree > 0:
            out.append((a.monic(), k))
        c_next = c // a
        d = d // a - c_next.derivative()
        c = c_next
        k += 1
    return out


@dataclass(frozen=True)
class Factorization:
    """Complete factorization over the rationals.

    ``unit * prod(f ** m for f, m in factors)`` reconstructs the input
    bit-exactly; factors are monic, irreducible, pairwise distinct, and
    sorted by (degree, coefficient tuple) so results are deterministic.
    """

    unit: Rational
    factors: tuple[tuple[PolyQ, int], ...]

    def expand(self) -> PolyQ:
        result = PolyQ.constant(self.unit)
        for f, m in self.factors:
            result = result * f**m
        return result

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def multiplicity(self, f: PolyQ) -> int:
        for g, m in self.factors:
            if g == f:
                return m
        return 0

    def __str__(self):
        parts = [] if self.unit == 1 else [format_rational(self.unit)]
        for f, m in self.factors:
            parts.append(f"({f})" + (f"^{m}" if m > 1 else ""))
        return " * ".join(parts) if parts else "1"


def poly_sort_key(f: PolyQ):
    """Deterministic (degree, coefficients) ordering used for factor lists."""
    return (f.degree, tuple((c.numerator if isinstance(c, Fraction) else c,
                             c.denominator if isinstance(c, Fraction) else 1)
                            for c in f.coeffs))


def factor_rationals(p: PolyQ) -> Factorization:
    """Irreducible factorization over the rationals.

    The factor search is delegated to sympy (Zassenhaus-style); the result
    is certified locally by exact re-multiplication, so a wrong answer
    cannot propagate silently.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree == 0:
        return Factorization(unit=p.coeffs[0], factors=())
    import sympy

    x = sympy.Symbol("x")
    sym_coeffs = [
        sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        for c in reversed(p.coeffs)
    ]
    _, raw_factors = sympy.factor_list(sympy.Poly(sym_coeffs, x, domain="QQ"))
    collected: dict[PolyQ, int] = {}
    for sym_f, mult in raw_factors:
        coeffs = [_from_sympy(c) for c in reversed(sym_f.all_coeffs())]
        f = PolyQ(coeffs).monic()
        collected[f] = collected.get(f, 0) + mult
    factors = tuple(sorted(collected.items(), key=lambda item: poly_sort_key(item[0])))
    unit = normalize(as_rational(p.leading()))
    result = Factorization(unit=unit, factors=factors)
    if result.expand() != p:
        raise ArithmeticError(f"factorization failed certification for {p}")
    return result


def _from_sympy(value) -> Rational:
    return normalize(Fraction(int(value.p), int(value.q)))


# -- text format ---------------------------------------------------------


def parse_poly(text: str) -> PolyQ:
    """Parse comma-separated ascending coefficients, e.g. ``"5,1,1"``."""
    items = [item for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError("empty polynomial text")
    return PolyQ(tuple(as_rational(item) for item in items))


def format_poly_coeffs(p: PolyQ) -> str:
    return ",".join(format_rational(c) for c in p.coeffs) if p.coeffs else "0"


def format_poly(p: PolyQ, var: str = "x") -> str:
    """Human-readable form, highest degree first."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if c == 0:
            continue
        if k == 0:
            term = format_rational(c)
        else:
            xk = var if k == 1 else f"{var}^{k}"
            if c == 1:
                term = xk
            elif c == -1:
                term = f"-{xk}"
            else:
                term = f"{format_rational(c)}*{xk}"
        parts.append(term)
    text = parts[0]
    for term in parts[1:]:
        text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return text
