"""Dense univariate polynomials over a FieldSpec.

Coefficients are held as field-element codes, constant term first, with no
trailing zeros.  Besides ring arithmetic this module carries the extended
Euclidean key-equation solver, minimal polynomials, Serret's binomial
irreducibility criterion and a Cantor-Zassenhaus factoriser used when the
roots of x^n - lambda do not live in the working field.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import sympy

from .errors import DivisionByZero, FieldMismatch, NoSuchSubfield, ZeroLambda
from .field import FieldElement, FieldSpec, in_subfield

NEG_INF = float("-inf")


class Polynomial:
    """Immutable polynomial over ``owner``; ``degree`` of the zero polynomial is -inf."""

    __slots__ = ("owner", "_c")

    def __init__(self, owner: FieldSpec, coeffs: Iterable = ()):
        self.owner = owner
        c = []
        for x in coeffs:
            if isinstance(x, FieldElement):
                if not owner.compatible(x.owner):
                    raise FieldMismatch("coefficient from another field")
                c.append(x.code)
            else:
                c.append(int(x))
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    # ---- constructors -----------------------------------------------------

    @classmethod
    def x(cls, owner: FieldSpec) -> "Polynomial":
        return cls(owner, (0, owner._one))

    @classmethod
    def constant(cls, owner: FieldSpec, value) -> "Polynomial":
        return cls(owner, (owner(value).code,))

    @classmethod
    def monomial(cls, owner: FieldSpec, degree: int, value=1) -> "Polynomial":
        return cls(owner, (0,) * degree + (owner(value).code,))

    @classmethod
    def from_roots(cls, owner: FieldSpec, roots: Iterable[FieldElement]) -> "Polynomial":
        out = cls(owner, (owner._one,))
        for r in roots:
            out = out * cls(owner, (owner.neg(owner(r).code), owner._one))
        return out

    @classmethod
    def binomial(cls, owner: FieldSpec, n: int, lam) -> "Polynomial":
        """x^n - lam."""
        lam_code = owner(lam).code
        return cls(owner, (owner.neg(lam_code),) + (0,) * (n - 1) + (owner._one,)) if n else cls(
            owner, (owner.sub(owner._one, lam_code),)
        )

    # ---- views --------------------------------------------------------------

    @property
    def codes(self) -> tuple[int, ...]:
        return self._c

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.owner, c) for c in self._c)

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def lead(self) -> FieldElement:
        return FieldElement(self.owner, self._c[-1] if self._c else 0)

    def coeff(self, i: int) -> FieldElement:
        return FieldElement(self.owner, self._c[i] if 0 <= i < len(self._c) else 0)

    def padded(self, n: int) -> list[FieldElement]:
        if len(self._c) > n:
            raise ValueError(f"degree {self.degree} does not fit in length {n}")
        return [FieldElement(self.owner, c) for c in self._c + (0,) * (n - len(self._c))]

    # ---- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.owner is not self.owner and not self.owner.compatible(other.owner):
            raise FieldMismatch("polynomials over different fields")

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (FieldElement, int)):
            return Polynomial(self.owner, (self.owner(other).code,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.owner
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = F.add(out[i], y)
        return Polynomial(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.owner
        return Polynomial(F, [F.neg(c) for c in self._c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.owner
        a, b = self._c, o._c
        if not a or not b:
            return Polynomial(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Polynomial(F, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial(self.owner, (self.owner._one,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero:
            raise DivisionByZero("polynomial division by zero")
        F = self.owner
        rem = list(self._c)
        db = len(o._c) - 1
        if len(rem) - 1 < db:
            return Polynomial(F), Polynomial(F, rem)
        inv_lead = F.inv(o._c[-1])
        quot = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = F.mul(c, inv_lead)
            quot[i - db] = f
            shift = i - db
            rem[i] = 0
            for j in range(db):
                y = o._c[j]
                if y:
                    rem[shift + j] = F.sub(rem[shift + j], F.mul(f, y))
        return Polynomial(F, quot), Polynomial(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Polynomial") -> bool:
        return (other % self).is_zero

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError("division is not exact")
        return q

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._c == other._c and self.owner.compatible(other.owner)
        if isinstance(other, (int, FieldElement)):
            return self == Polynomial(self.owner, (self.owner(other).code,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.owner._key, self._c))

    def __call__(self, x0) -> FieldElement:
        return self.eval(x0)

    def eval(self, x0) -> FieldElement:
        F = self.owner
        xc = F(x0).code
        acc = 0
        for c in reversed(self._c):
            acc = F.add(F.mul(acc, xc), c)
        return FieldElement(F, acc)

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        F = self.owner
        inv = F.inv(self._c[-1])
        return Polynomial(F, [F.mul(c, inv) for c in self._c])

    def scale_var(self, c) -> "Polynomial":
        """f(c x)."""
        F = self.owner
        cc = F(c).code
        out, power = [], F._one
        for a in self._c:
            out.append(F.mul(a, power))
            power = F.mul(power, cc)
        return Polynomial(F, out)

    def reciprocal(self, degree: int | None = None) -> "Polynomial":
        """x^d f(1/x) with d = deg f unless given."""
        if self.is_zero:
            return self
        d = self.degree if degree is None else degree
        c = list(self._c) + [0] * (d + 1 - len(self._c))
        return Polynomial(self.owner, c[::-1])

    def derivative(self) -> "Polynomial":
        F = self.owner
        return Polynomial(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self._c)][1:])

    def in_subfield(self, s: int) -> bool:
        return all(in_subfield(c, s) for c in self.coeffs)

    # ---- text forms ---------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self._c):
            if c == 0:
                continue
            e = self.owner.fmt(c)
            terms.append(e if i == 0 else f"{e}*x" if i == 1 else f"{e}*x^{i}")
        return " + ".join(terms)

    def pretty(self) -> str:
        """Descending form, e.g. ``x^2 + w^3x + 2``."""
        if self.is_zero:
            return "0"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if c == 0:
                continue
            e = self.owner.fmt(c)
            mon = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            if not mon:
                terms.append(e)
            elif e == "1":
                terms.append(mon)
            else:
                terms.append(e + mon)
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"Polynomial({self.pretty()})"

    def to_json(self) -> list[str]:
        return [self.owner.fmt(c) for c in self._c]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def powmod(a: Polynomial, e: int, mod: Polynomial) -> Polynomial:
    result = Polynomial(a.owner, (a.owner._one,)) % mod
    base = a % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


# --------------------------------------------------------------------------
# extended Euclid for the key equation


@dataclass(frozen=True)
class EeapStep:
    quotient: Polynomial
    remainder: Polynomial
    u: Polynomial
    v: Polynomial


def eeap_trace(mu: Polynomial, n: int, lam, t: int) -> list[EeapStep]:
    """Remainder sequence of Euclid on (x^n - lam, mu), stopping below degree n - t.

    Every step satisfies u*(x^n - lam) + v*mu = remainder.  Step 0 is the
    trivial row (u, v, r) = (0, 1, mu).
    """
    F = mu.owner
    g0 = Polynomial.binomial(F, n, lam)
    zero, one = Polynomial(F), Polynomial(F, (F._one,))
    steps = [EeapStep(zero, mu, zero, one)]
    r_prev, r_cur = g0, mu
    u_prev, u_cur = one, zero
    v_prev, v_cur = zero, one
    while not r_cur.is_zero and r_cur.degree >= n - t:
        q, r = divmod(r_prev, r_cur)
        r_prev, r_cur = r_cur, r
        u_prev, u_cur = u_cur, u_prev - q * u_cur
        v_prev, v_cur = v_cur, v_prev - q * v_cur
        steps.append(EeapStep(q, r_cur, u_cur, v_cur))
    return steps


def eeap_solve_key_equation(mu: Polynomial, n: int, lam, t: int) -> tuple[Polynomial, Polynomial]:
    """Solve Gamma*mu = P (mod x^n - lam) with deg P < n - t.

    The cofactor and remainder at step i are multiplied by (-1)^i, which gives
    Gamma = 1, P = mu when no division is needed and the negated pair after
    one division step.
    """
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    if not mu.is_zero and mu.degree >= n:
        raise ValueError("deg(mu) must be < n")
    steps = eeap_trace(mu, n, lam, t)
    last = steps[-1]
    if (len(steps) - 1) % 2:
        return -last.v, -last.remainder
    return last.v, last.remainder


# --------------------------------------------------------------------------
# minimal polynomials, Serret, factorisation


def conjugates(alpha: FieldElement, s: int) -> list[FieldElement]:
    """Orbit of alpha under a -> a^q, q = p^s, in order alpha, alpha^q, ..."""
    F = alpha.owner
    if s < 1 or F.kprime % s:
        raise NoSuchSubfield(f"s={s} does not divide k'={F.kprime}")
    q = F.p**s
    orbit = [alpha]
    cur = alpha**q
    while cur != alpha:
        orbit.append(cur)
        cur = cur**q
    return orbit


def min_poly(alpha: FieldElement, s: int) -> Polynomial:
    """Monic minimal polynomial of alpha over GF(p^s)."""
    return Polynomial.from_roots(alpha.owner, conjugates(alpha, s))


def smallest_subfield(a: FieldElement) -> int:
    """Least s dividing k' with a in GF(p^s)."""
    for s in sympy.divisors(a.owner.kprime):
        if in_subfield(a, s):
            return s
    return a.owner.kprime  # pragma: no cover


def is_irreducible_binomial(n: int, lam: FieldElement, s: int | None = None) -> bool:
    """Serret's criterion for x^n - lam over GF(q), q = p^s (default: lam's own field)."""
    if lam.code == 0:
        raise ZeroLambda("lambda must be nonzero")
    if n < 2:
        return n == 1
    s = smallest_subfield(lam) if s is None else s
    if not in_subfield(lam, s):
        raise NoSuchSubfield("lambda is not in GF(p^s)")
    q = lam.owner.p**s
    e = lam.order()
    for r in sympy.primefactors(n):
        if e % r or ((q - 1) // e) % r == 0:
            return False
    if n % 4 == 0 and (q - 1) % 4:
        return False
    return True


def _subfield_random_poly(rng: random.Random, F: FieldSpec, s: int, degree: int) -> Polynomial:
    sub = F.subfield_codes(s)
    return Polynomial(F, [rng.choice(sub) for _ in range(degree + 1)])


def distinct_degree_factor(f: Polynomial, s: int) -> list[tuple[int, Polynomial]]:
    """Split a monic squarefree f over GF(p^s) into products of equal-degree irreducibles."""
    F = f.owner
    q = F.p**s
    x = Polynomial.x(F)
    out = []
    h = x % f
    d = 0
    while f.degree >= 2 * (d + 1):
        d += 1
        h = powmod(h, q, f)
        g = poly_gcd(f, h - x)
        if g.degree > 0:
            out.append((d, g))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f.degree, f.monic()))
    return out


def equal_degree_factor(g: Polynomial, d: int, s: int, rng: random.Random) -> list[Polynomial]:
    """Cantor-Zassenhaus splitting of g, a product of distinct degree-d irreducibles over GF(p^s)."""
    if g.degree == d:
        return [g.monic()]
    F = g.owner
    q = F.p**s
    while True:
        a = _subfield_random_poly(rng, F, s, int(g.degree) - 1)
        if a.degree < 1:
            continue
        if q % 2:
            b = powmod(a, (q**d - 1) // 2, g) - 1
        else:
            # absolute trace map down to GF(2): a + a^2 + ... + a^{2^{sd-1}}
            b, cur = Polynomial(F), a % g
            for _ in range(s * d):
                b = b + cur
                cur = (cur * cur) % g
        h = poly_gcd(g, b)
        if 0 < h.degree < g.degree:
            return equal_degree_factor(h, d, s, rng) + equal_degree_factor(g.exact_div(h), d, s, rng)


def factor_squarefree(f: Polynomial, s: int, seed: int = 0) -> list[Polynomial]:
    """Monic irreducible factors over GF(p^s) of a squarefree f with GF(p^s) coefficients."""
    rng = random.Random(seed)
    out: list[Polynomial] = []
    for d, g in distinct_degree_factor(f.monic(), s):
        out.extend(equal_degree_factor(g, d, s, rng))
    return sort_polys(out)


def sort_polys(polys: Sequence[Polynomial]) -> list[Polynomial]:
    return sorted(polys, key=lambda p: (p.degree, p.codes))


def product(polys: Iterable[Polynomial], owner: FieldSpec) -> Polynomial:
    out = Polynomial(owner, (owner._one,))
    for p in polys:
        out = out * p
    return out


def lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def is_irreducible(f: Polynomial, s: int) -> bool:
    """Irreducibility over GF(p^s) via Rabin's test."""
    F = f.owner
    k = int(f.degree)
    if k < 1:
        return False
    f = f.monic()
    q = F.p**s
    x = Polynomial.x(F)
    if not ((powmod(x, q**k, f) - x) % f).is_zero:
        return False
    return all(poly_gcd(f, powmod(x, q ** (k // r), f) - x).degree == 0 for r in sympy.primefactors(k))


def ilog(q: int, p: int) -> int:
    return round(math.log(q, p))
