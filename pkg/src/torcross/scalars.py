"""Exact scalars: rationals, rotation numbers (Q/Z), cyclotomic field elements,
Gaussian rationals, and multivariate (Laurent) polynomials with fractions.

All values are immutable after construction and all operations are pure, so
they can be shared freely between parallel workers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm


class ScalarError(ValueError):
    """Raised on conductor mismatches, inexact division and similar misuse."""


# ---------------------------------------------------------------------------
# rationals

def parse_rat(s: str) -> Fraction:
    """Parse "p/q" or "p" into a reduced Fraction."""
    return Fraction(s.strip())


def format_rat(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


# ---------------------------------------------------------------------------
# rotation numbers

class RotationNumber:
    """An element r of Q/Z, denoting the root of unity exp(2*pi*i*r).

    Normalized so that 0 <= value < 1.
    """

    __slots__ = ("value",)

    def __init__(self, value) -> None:
        object.__setattr__(self, "value", Fraction(value) % 1)

    def __setattr__(self, name, val):  # pragma: no cover - immutability guard
        raise AttributeError("RotationNumber is immutable")

    def __add__(self, other: RotationNumber) -> RotationNumber:
        return RotationNumber(self.value + other.value)

    def __sub__(self, other: RotationNumber) -> RotationNumber:
        return RotationNumber(self.value - other.value)

    def __neg__(self) -> RotationNumber:
        return RotationNumber(-self.value)

    def __mul__(self, n: int) -> RotationNumber:
        return RotationNumber(self.value * n)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, RotationNumber) and self.value == other.value

    def __hash__(self) -> int:
        return hash(("rot", self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    @property
    def order(self) -> int:
        """Multiplicative order of the root of unity exp(2*pi*i*value)."""
        return self.value.denominator

    def to_cyc(self, conductor: int | None = None) -> "Cyc":
        n = self.order if conductor is None else conductor
        if n % self.order:
            raise ScalarError(f"conductor {n} incompatible with rotation {self}")
        return Cyc.root_of_unity(self.value, n)

    def __repr__(self) -> str:
        return f"RotationNumber({format_rat(self.value)})"

    def __str__(self) -> str:
        return format_rat(self.value)


def parse_rotation(s: str) -> RotationNumber:
    return RotationNumber(parse_rat(s))


# ---------------------------------------------------------------------------
# cyclotomic integers over Q

@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ScalarError("conductor must be positive")
    # divide x^n - 1 by all lower-order cyclotomic factors
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            div = cyclotomic_polynomial(d)
            poly = _polydiv_exact(poly, list(div))
    return tuple(poly)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % den[-1]:
            raise ScalarError("inexact integer polynomial division")
        c //= den[-1]
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ScalarError("inexact integer polynomial division")
    return q


class Cyc:
    """Element of the cyclotomic field Q(zeta_N), reduced mod the N-th
    cyclotomic polynomial.

    coeffs maps exponent e (0 <= e < phi(N)) to a nonzero Fraction; the
    element is sum coeffs[e] * zeta_N^e in canonical reduced form.  Elements
    at different conductors compare equal after promotion to the lcm.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: dict[int, Fraction], *, _reduced=False):
        if conductor < 1:
            raise ScalarError("conductor must be positive")
        if not _reduced:
            coeffs = _cyc_reduce(conductor, coeffs)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, val):  # pragma: no cover
        raise AttributeError("Cyc is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(q, conductor: int = 1) -> Cyc:
        q = Fraction(q)
        return Cyc(conductor, {0: q} if q else {}, _reduced=(conductor == 1 or not q))

    @staticmethod
    def zero(conductor: int = 1) -> Cyc:
        return Cyc(conductor, {}, _reduced=True)

    @staticmethod
    def one(conductor: int = 1) -> Cyc:
        return Cyc.rational(1, conductor)

    @staticmethod
    def root_of_unity(rotation, conductor: int) -> Cyc:
        """exp(2*pi*i*rotation) as an element of Q(zeta_conductor)."""
        r = Fraction(rotation) % 1
        if conductor % r.denominator:
            raise ScalarError(f"rotation {r} needs conductor divisible by {r.denominator}")
        e = int(r * conductor)
        return Cyc(conductor, {e: Fraction(1)})

    # -- conductor handling -------------------------------------------------

    def promote(self, new_conductor: int) -> Cyc:
        """Re-express at a conductor that is a multiple of the current one."""
        if new_conductor % self.conductor:
            raise ScalarError(
                f"{new_conductor} is not a multiple of conductor {self.conductor}")
        if new_conductor == self.conductor:
            return self
        scale = new_conductor // self.conductor
        return Cyc(new_conductor, {e * scale: c for e, c in self.coeffs.items()})

    @staticmethod
    def _common(a: Cyc, b: Cyc) -> tuple[Cyc, Cyc]:
        if a.conductor == b.conductor:
            return a, b
        n = lcm(a.conductor, b.conductor)
        return a.promote(n), b.promote(n)

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyc):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc.rational(other, 1)
        if isinstance(other, RotationNumber):
            return other.to_cyc()
        return None

    def __add__(self, other) -> Cyc:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = Cyc._common(self, other)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Cyc(a.conductor, out, _reduced=True)

    __radd__ = __add__

    def __neg__(self) -> Cyc:
        return Cyc(self.conductor, {e: -c for e, c in self.coeffs.items()}, _reduced=True)

    def __sub__(self, other) -> Cyc:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Cyc:
        return (-self) + other

    def __mul__(self, other) -> Cyc:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = Cyc._common(self, other)
        out: dict[int, Fraction] = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Cyc(a.conductor, out)

    __rmul__ = __mul__

    def inverse(self) -> Cyc:
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        n = self.conductor
        phi = list(cyclotomic_polynomial(n))
        deg = len(phi) - 1
        a = [Fraction(0)] * deg
        for e, c in self.coeffs.items():
            a[e] = c
        inv = _poly_modular_inverse(a, [Fraction(c) for c in phi])
        return Cyc(n, {e: c for e, c in enumerate(inv) if c}, _reduced=True)

    def __truediv__(self, other) -> Cyc:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> Cyc:
        return self.inverse() * other

    def __pow__(self, n: int) -> Cyc:
        if n < 0:
            return self.inverse() ** (-n)
        out = Cyc.one(self.conductor)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = Cyc._common(self, other)
        return a.coeffs == b.coeffs

    __hash__ = None  # equality crosses conductors; not a dict key

    def is_rational(self) -> bool:
        return all(e == 0 for e in self.coeffs)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ScalarError(f"{self} is not rational")
        return self.coeffs.get(0, Fraction(0))

    def __repr__(self) -> str:
        return f"Cyc({self.conductor}, {self.coeffs})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(format_rat(c))
            elif c == 1:
                parts.append(f"w{self.conductor}^{e}")
            else:
                parts.append(f"{format_rat(c)}*w{self.conductor}^{e}")
        return "+".join(parts).replace("+-", "-")


def _cyc_reduce(n: int, coeffs: dict[int, Fraction]) -> dict[int, Fraction]:
    """Reduce exponents mod n, then mod the n-th cyclotomic polynomial."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    dense = [Fraction(0)] * n
    for e, c in coeffs.items():
        dense[e % n] += Fraction(c)
    # zeta^n = 1 already folded; now long-divide by the monic Phi_n
    for e in range(n - 1, deg - 1, -1):
        c = dense[e]
        if not c:
            continue
        dense[e] = Fraction(0)
        for j in range(deg):
            dense[e - deg + j] -= c * phi[j]
    return {e: c for e, c in enumerate(dense[:deg]) if c}


def _poly_modular_inverse(a: list[Fraction], mod: list[Fraction]) -> list[Fraction]:
    """Inverse of a modulo mod over Q via the extended Euclidean algorithm."""

    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    def polymod(p, q):
        p = list(p)
        while len(p) >= len(q):
            c = p[-1] / q[-1]
            shift = len(p) - len(q)
            for j in range(len(q)):
                p[shift + j] -= c * q[j]
            trim(p)
            if not p:
                break
        return p

    def polymul(p, q):
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, ci in enumerate(p):
            if ci:
                for j, cj in enumerate(q):
                    out[i + j] += ci * cj
        return trim(out)

    def polysub(p, q):
        out = [Fraction(0)] * max(len(p), len(q))
        for i, c in enumerate(p):
            out[i] += c
        for i, c in enumerate(q):
            out[i] -= c
        return trim(out)

    def polydivmod(p, q):
        p = list(p)
        quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
        while len(p) >= len(q) and p:
            c = p[-1] / q[-1]
            shift = len(p) - len(q)
            quo[shift] = c
            for j in range(len(q)):
                p[shift + j] -= c * q[j]
            trim(p)
        return trim(quo), p

    r0, r1 = trim(list(mod)), trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = polydivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, polysub(s0, polymul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element not invertible modulo cyclotomic polynomial")
    c = r0[0]
    inv = [x / c for x in s0]
    inv = polymod(inv, [Fraction(v) for v in mod])
    out = [Fraction(0)] * (len(mod) - 1)
    for i, v in enumerate(inv):
        out[i] = v
    return out


def cyc_promote(a: Cyc, new_conductor: int) -> Cyc:
    """Spec-level conductor promotion; errors unless new conductor is a multiple."""
    return a.promote(new_conductor)


# ---------------------------------------------------------------------------
# Gaussian rationals

class GaussRat:
    """a + b*i with exact rational a, b; embeds into Q(zeta_4)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0) -> None:
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, val):  # pragma: no cover
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRat(x)
        return None

    def __add__(self, other):
        other = GaussRat._coerce(other)
        if other is None:
            return NotImplemented
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussRat._coerce(other)
        if other is None:
            return NotImplemented
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = GaussRat._coerce(other)
        if other is None:
            return NotImplemented
        return GaussRat(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def inverse(self) -> GaussRat:
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = GaussRat._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> GaussRat:
        if n < 0:
            return self.inverse() ** (-n)
        out, base = GaussRat(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        other = GaussRat._coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash(("gauss", self.re, self.im))

    def conjugate(self) -> GaussRat:
        return GaussRat(self.re, -self.im)

    def to_cyc(self, conductor: int = 4) -> Cyc:
        if conductor % 4 and self.im:
            raise ScalarError("imaginary part needs conductor divisible by 4")
        out = Cyc.rational(self.re, conductor)
        if self.im:
            out = out + Cyc.root_of_unity(Fraction(1, 4), conductor) * self.im
        return out

    def __repr__(self) -> str:
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self) -> str:
        if not self.im:
            return format_rat(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{format_rat(self.im)}i"
        if not self.re:
            return im
        sign = "+" if self.im > 0 else ""
        return f"{format_rat(self.re)}{sign}{im}"


def parse_gauss(s: str) -> GaussRat:
    """Parse "a", "bi", "a+bi", "a-bi" with rational a, b (e.g. "-1/2+3/4i")."""
    s = s.strip().replace(" ", "")
    if not s:
        raise ScalarError("empty Gaussian rational")
    if "i" not in s:
        return GaussRat(parse_rat(s))
    body = s[:-1] if s.endswith("i") else None
    if body is None:
        raise ScalarError(f"cannot parse Gaussian rational {s!r}")
    # split body into real part and imaginary coefficient
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "+-/":
            re_s, im_s = body[:pos], body[pos:]
            break
    else:
        re_s, im_s = "", body
    if im_s in ("", "+"):
        im = Fraction(1)
    elif im_s == "-":
        im = Fraction(-1)
    else:
        im = parse_rat(im_s)
    re = parse_rat(re_s) if re_s else Fraction(0)
    return GaussRat(re, im)


# ---------------------------------------------------------------------------
# multivariate polynomials

class MultiPoly:
    """Multivariate polynomial (or Laurent polynomial) with exact coefficients.

    terms maps exponent tuples to nonzero coefficients.  Coefficients may be
    Fraction, GaussRat or Cyc; they only need ring operations and truthiness.
    """

    __slots__ = ("nvars", "terms", "laurent")

    def __init__(self, nvars: int, terms: dict | None = None, laurent: bool = False):
        clean = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise ScalarError("exponent vector length mismatch")
            if not laurent and any(e < 0 for e in exps):
                raise ScalarError("negative exponent outside Laurent mode")
            if c:
                clean[tuple(exps)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "laurent", laurent)

    def __setattr__(self, name, val):  # pragma: no cover
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def constant(nvars: int, c, laurent: bool = False) -> MultiPoly:
        return MultiPoly(nvars, {(0,) * nvars: c} if c else {}, laurent)

    @staticmethod
    def variable(i: int, nvars: int, one, laurent: bool = False) -> MultiPoly:
        e = [0] * nvars
        e[i] = 1
        return MultiPoly(nvars, {tuple(e): one}, laurent)

    @staticmethod
    def monomial(exps, c, laurent: bool = False) -> MultiPoly:
        return MultiPoly(len(tuple(exps)), {tuple(exps): c}, laurent)

    @staticmethod
    def linear_form(coeffs, laurent: bool = False) -> MultiPoly:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return MultiPoly(n, terms, laurent)

    # -- ring operations ----------------------------------------------------

    def _check(self, other: MultiPoly):
        if self.nvars != other.nvars or self.laurent != other.laurent:
            raise ScalarError("polynomial ring mismatch")

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out[e] + c if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.nvars, out, self.laurent)

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()}, self.laurent)

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            # scalar multiplication
            out = {}
            for e, c in self.terms.items():
                s = c * other
                if s:
                    out[e] = s
            return MultiPoly(self.nvars, out, self.laurent)
        self._check(other)
        out: dict[tuple, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out[e] + c1 * c2 if e in out else c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.nvars, out, self.laurent)

    def __rmul__(self, other) -> MultiPoly:
        return self.__mul__(other)

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ScalarError("negative polynomial power")
        if n == 0:
            if not self.terms:
                raise ScalarError("0^0 polynomial")
            c = next(iter(self.terms.values()))
            return MultiPoly.constant(self.nvars, c / c, self.laurent)
        out, base = None, self
        while n:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.nvars == other.nvars and self.laurent == other.laurent
                and self.terms == other.terms)

    __hash__ = None

    # -- structure ----------------------------------------------------------

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        for e, c in self.terms.items():
            if any(e):
                raise ScalarError("not a constant polynomial")
        return self.terms.get((0,) * self.nvars, 0)

    def substitute_linear(self, images: list[MultiPoly]) -> MultiPoly:
        """Substitute variable i by images[i] (non-Laurent only)."""
        if self.laurent:
            raise ScalarError("linear substitution requires non-Laurent mode")
        powers: list[list[MultiPoly]] = [[None] for _ in range(self.nvars)]
        out = MultiPoly(self.nvars, {}, self.laurent)
        for exps, c in self.terms.items():
            term = MultiPoly.constant(self.nvars, c, self.laurent)
            for i, e in enumerate(exps):
                while len(powers[i]) <= e:
                    prev = powers[i][-1]
                    nxt = images[i] if prev is None else prev * images[i]
                    powers[i].append(nxt)
                if e:
                    term = term * powers[i][e]
            out = out + term
        return out

    def evaluate(self, values: list, zero=None):
        """Evaluate at the given scalar values (supporting negative powers).

        zero is returned for the zero polynomial; it defaults to Fraction(0).
        """
        total = None
        for exps, c in self.terms.items():
            v = c
            for i, e in enumerate(exps):
                if e:
                    v = v * (values[i] ** e)
            total = v if total is None else total + v
        if total is None:
            return Fraction(0) if zero is None else zero
        return total

    def divide_linear(self, alpha: MultiPoly) -> MultiPoly:
        """Exact division by a nonzero homogeneous linear form."""
        return poly_divide_linear(self, alpha)

    def __repr__(self) -> str:
        if not self.terms:
            return "MultiPoly(0)"
        parts = [f"{c}*x^{list(e)}" for e, c in sorted(self.terms.items())]
        return "MultiPoly(" + " + ".join(parts) + ")"


def poly_divide_linear(f: MultiPoly, alpha: MultiPoly) -> MultiPoly:
    """Quotient q with q*alpha = f, for alpha a nonzero degree-1 form.

    Raises ScalarError when the division is inexact; this signals a misuse of
    the divided-difference relation upstream.
    """
    if f.laurent or alpha.laurent:
        raise ScalarError("linear division undefined in Laurent mode")
    if not alpha.terms or any(sum(e) != 1 for e in alpha.terms):
        raise ScalarError("divisor must be a nonzero homogeneous linear form")
    # pivot on the first variable appearing in alpha
    pivot = min(i for e in alpha.terms for i, v in enumerate(e) if v)
    lead = alpha.terms[tuple(1 if i == pivot else 0 for i in range(alpha.nvars))]
    q_terms: dict[tuple, object] = {}
    rem = f
    while rem.terms:
        d = max(e[pivot] for e in rem.terms)
        if d == 0:
            raise ScalarError("inexact division by linear form")
        top = {e: c for e, c in rem.terms.items() if e[pivot] == d}
        moved = {}
        for e, c in top.items():
            e2 = list(e)
            e2[pivot] -= 1
            moved[tuple(e2)] = c / lead
        part = MultiPoly(f.nvars, moved, f.laurent)
        for e, c in part.terms.items():
            s = q_terms[e] + c if e in q_terms else c
            if s:
                q_terms[e] = s
            else:
                q_terms.pop(e, None)
        rem = rem - part * alpha
    return MultiPoly(f.nvars, q_terms, f.laurent)


# ---------------------------------------------------------------------------
# fractions of polynomials

class PolyFraction:
    """num/den with nonzero den; equality by cross-multiplication.

    Only scalar and monomial content is removed (full multivariate gcd
    reduction is intentionally not attempted).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly):
        if not den.terms:
            raise ZeroDivisionError("zero denominator")
        num._check(den)
        num, den = _fraction_normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, val):  # pragma: no cover
        raise AttributeError("PolyFraction is immutable")

    @staticmethod
    def from_poly(p: MultiPoly) -> PolyFraction:
        one = _ring_one(p)
        return PolyFraction(p, MultiPoly.constant(p.nvars, one, p.laurent))

    def __add__(self, other: PolyFraction) -> PolyFraction:
        if self.den == other.den:
            return PolyFraction(self.num + other.num, self.den)
        return PolyFraction(self.num * other.den + other.num * self.den,
                            self.den * other.den)

    def __neg__(self) -> PolyFraction:
        return PolyFraction(-self.num, self.den)

    def __sub__(self, other: PolyFraction) -> PolyFraction:
        return self + (-other)

    def __mul__(self, other) -> PolyFraction:
        if isinstance(other, PolyFraction):
            return PolyFraction(self.num * other.num, self.den * other.den)
        return PolyFraction(self.num * other, self.den)

    __rmul__ = __mul__

    def inverse(self) -> PolyFraction:
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero fraction")
        return PolyFraction(self.den, self.num)

    def __truediv__(self, other: PolyFraction) -> PolyFraction:
        return self * other.inverse()

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyFraction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def is_one(self) -> bool:
        return self.num == self.den

    def __repr__(self) -> str:
        return f"PolyFraction({self.num!r}, {self.den!r})"


def _ring_one(p: MultiPoly):
    for c in p.terms.values():
        return c / c
    return Fraction(1)


def _fraction_normalize(num: MultiPoly, den: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    # cancel common monomial content, then scale so den's lex-leading coeff is 1
    if num.terms:
        mins = []
        for i in range(num.nvars):
            lo = min(min(e[i] for e in num.terms), min(e[i] for e in den.terms))
            mins.append(lo if num.laurent else max(lo, 0))
        if any(mins):
            shift = lambda t: {tuple(a - b for a, b in zip(e, mins)): c for e, c in t.items()}
            num = MultiPoly(num.nvars, shift(num.terms), num.laurent)
            den = MultiPoly(den.nvars, shift(den.terms), den.laurent)
    lead = den.terms[max(den.terms)]
    if lead != _ring_one(den):
        inv = _ring_one(den) / lead
        num, den = num * inv, den * inv
    return num, den


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0
