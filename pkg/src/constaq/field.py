"""Exact arithmetic in GF(p^k') constructed as F_p[x]/(f(x)).

Elements are stored as integers packing their polynomial-basis coefficient
vector in base p with the constant coefficient as the most significant digit,
so integer order coincides with lexicographic order on (c0, c1, ..., c_{k'-1}).
For fields with at most 2**20 elements an antilog/log/Zech table is built at
construction; larger fields fall back to coefficient arithmetic and
baby-step giant-step logarithms.
"""

from __future__ import annotations

import contextlib
import functools
import itertools
import math
import re
from typing import Iterable, Sequence

import numpy as np
import sympy

from .errors import (
    DivisionByZero,
    FieldMismatch,
    LogOfZero,
    NoSuchSubfield,
    NotPrime,
    ReducibleModulus,
)

TABLE_LIMIT = 1 << 20


# --------------------------------------------------------------------------
# polynomials over the prime field, as int lists with the constant term first


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial f."""
    a = list(a)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % p
        if c:
            shift = i - df
            for j in range(df + 1):
                a[shift + j] = (a[shift + j] - c * f[j]) % p
    return _fp_trim([x % p for x in a[:df]])


def _fp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_trim(out)


def _fp_powmod(a: list[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(a, f, p)
    while e:
        if e & 1:
            result = _fp_mod(_fp_mul(result, base, p), f, p)
        base = _fp_mod(_fp_mul(base, base, p), f, p)
        e >>= 1
    return result


def _fp_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _fp_trim(out)


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        monic = [(c * inv) % p for c in b]
        a, b = b, _fp_mod(a, monic, p)
    return a


def is_irreducible_fp(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (constant term first)."""
    f = list(f)
    k = len(f) - 1
    if k < 1 or f[-1] != 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _fp_sub(_fp_powmod(x, p**k, f, p), x, p):
        return False
    for r in sympy.primefactors(k):
        h = _fp_sub(_fp_powmod(x, p ** (k // r), f, p), x, p)
        g = _fp_gcd(list(f), h, p)
        if len(g) > 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def auto_modulus(p: int, kprime: int) -> tuple[int, ...]:
    """Lexicographically smallest (constant term first) monic irreducible of degree k'."""
    if kprime == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=kprime):
        f = list(low) + [1]
        if low[0] != 0 and is_irreducible_fp(f, p):
            return tuple(f)
    raise ReducibleModulus(f"no irreducible polynomial of degree {kprime} over F_{p}")


# --------------------------------------------------------------------------


class OpCounter:
    """Counts field additions and multiplications while installed on a FieldSpec."""

    def __init__(self) -> None:
        self.adds = 0
        self.muls = 0

    @property
    def total(self) -> int:
        return self.adds + self.muls

    def __repr__(self) -> str:
        return f"OpCounter(adds={self.adds}, muls={self.muls})"


class FieldSpec:
    """The field GF(p^k') with a designated subfield GF(p^s).

    Two specs describing the same (p, k', modulus) but different s are
    arithmetically compatible; s only records which subfield a caller treats
    as the code alphabet.
    """

    def __init__(self, p: int, kprime: int, modulus: Sequence[int], s: int = 1):
        if not sympy.isprime(p):
            raise NotPrime(f"{p} is not prime")
        if kprime < 1:
            raise ValueError("extension degree must be >= 1")
        if s < 1 or kprime % s:
            raise NoSuchSubfield(f"s={s} does not divide k'={kprime}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != kprime + 1 or modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic of degree k'")
        if not is_irreducible_fp(modulus, p):
            raise ReducibleModulus(f"{list(modulus)} is reducible over F_{p}")

        self.p = p
        self.kprime = kprime
        self.s = s
        self.modulus = modulus
        self.order = p**kprime
        self.q = p**s
        self._m = self.order - 1
        self._one = p ** (kprime - 1)
        self._key = (p, kprime, modulus)
        self._counter: OpCounter | None = None
        self._expt: list[int] | None = None
        self._logt: list[int] | None = None
        self._zech: list[int] | None = None

        self._factors = sympy.primefactors(self._m) if self._m > 1 else []
        self.primitive_code = self._find_primitive()
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    # ---- basic identity -------------------------------------------------

    @property
    def tabled(self) -> bool:
        return self._expt is not None

    def compatible(self, other: "FieldSpec") -> bool:
        return self is other or self._key == other._key

    def with_subfield(self, s: int) -> "FieldSpec":
        return build_field(self.p, self.kprime, self.modulus, s)

    def __repr__(self) -> str:
        return self.descriptor()

    def descriptor(self) -> str:
        mod = ",".join(str(c) for c in self.modulus)
        return f"GF({self.p}^{self.kprime}; modulus={mod}; s={self.s})"

    def to_json(self) -> dict:
        return {"p": self.p, "kprime": self.kprime, "modulus": list(self.modulus), "s": self.s}

    # ---- digit packing --------------------------------------------------

    def digits(self, code: int) -> tuple[int, ...]:
        p = self.p
        out = [0] * self.kprime
        for i in range(self.kprime - 1, -1, -1):
            code, out[i] = divmod(code, p)
        return tuple(out)

    def from_digits(self, digits: Sequence[int]) -> int:
        if len(digits) > self.kprime:
            raise ValueError("too many coefficients")
        code = 0
        for c in list(digits) + [0] * (self.kprime - len(digits)):
            code = code * self.p + (int(c) % self.p)
        return code

    def from_int(self, v: int) -> int:
        """Code of the prime-field element v * 1."""
        return (v % self.p) * self._one

    # ---- raw arithmetic on codes ----------------------------------------

    def _add_digits(self, a: int, b: int, sign: int = 1) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        res, place = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            res += ((da + sign * db) % p) * place
            place *= p
        return res

    def _mul_slow(self, a: int, b: int) -> int:
        pa = _fp_trim(list(self.digits(a)))
        pb = _fp_trim(list(self.digits(b)))
        return self.from_digits(_fp_mod(_fp_mul(pa, pb, self.p), self.modulus, self.p))

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = self._one, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    def add(self, a: int, b: int) -> int:
        c = self._counter
        if c is not None:
            c.adds += 1
        if a == 0:
            return b
        if b == 0:
            return a
        zech = self._zech
        if zech is not None:
            la = self._logt[a]
            z = zech[(self._logt[b] - la) % self._m]
            return 0 if z < 0 else self._expt[(la + z) % self._m]
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if a == 0 or self.p == 2:
            return a
        if self._expt is not None:
            return self._expt[(self._logt[a] + self._m // 2) % self._m]
        return self._add_digits(0, a, -1)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        c = self._counter
        if c is not None:
            c.muls += 1
        if a == 0 or b == 0:
            return 0
        if self._expt is not None:
            return self._expt[(self._logt[a] + self._logt[b]) % self._m]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        c = self._counter
        if c is not None:
            c.muls += 1
        if self._expt is not None:
            return self._expt[(-self._logt[a]) % self._m]
        return self._pow_slow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero")
        if a == 0:
            return 0
        if self._expt is not None:
            c = self._counter
            if c is not None:
                c.muls += 1
            return self._expt[(self._logt[a] - self._logt[b]) % self._m]
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return self._one
            raise DivisionByZero("negative power of zero")
        if self._expt is not None:
            return self._expt[(self._logt[a] * e) % self._m]
        return self._pow_slow(a, e % self._m)

    def exp(self, k: int) -> int:
        """Code of w^k for the primitive element w."""
        if self._expt is not None:
            return self._expt[k % self._m] if self._m else self._one
        return self._pow_slow(self.primitive_code, k % self._m) if self._m else self._one

    def log(self, a: int) -> int:
        if a == 0:
            raise LogOfZero("discrete log of zero")
        if self._logt is not None:
            return self._logt[a]
        return self._bsgs(a)

    def _bsgs(self, a: int) -> int:
        m = self._m
        step = math.isqrt(m) + 1
        baby = {}
        cur = self._one
        for j in range(step):
            baby.setdefault(cur, j)
            cur = self._mul_slow(cur, self.primitive_code)
        giant = self._pow_slow(self.primitive_code, m - step)  # w^{-step}
        gamma = a
        for i in range(step + 1):
            if gamma in baby:
                return (i * step + baby[gamma]) % m
            gamma = self._mul_slow(gamma, giant)
        raise ArithmeticError("logarithm not found; primitive element is wrong")  # pragma: no cover

    # ---- construction helpers -------------------------------------------

    def _has_full_order(self, a: int) -> bool:
        if a == 0:
            return False
        if self._m == 1:
            return a == self._one
        return all(self._pow_slow(a, self._m // r) != self._one for r in self._factors)

    def _find_primitive(self) -> int:
        if self.kprime > 1:
            x = self.from_digits([0, 1])
            if self._has_full_order(x):
                return x
        for a in range(1, self.order):
            if self._has_full_order(a):
                return a
        raise ArithmeticError("no primitive element")  # pragma: no cover

    def _build_tables(self) -> None:
        m = self._m
        expt = [0] * max(m, 1)
        logt = [0] * self.order
        cur = self._one
        w = self.primitive_code
        for k in range(m):
            expt[k] = cur
            logt[cur] = k
            cur = self._mul_slow(cur, w)
        if m == 0:
            expt = [self._one]
        zech = [0] * max(m, 1)
        for d in range(m):
            v = self._add_digits(expt[d], self._one)
            zech[d] = -1 if v == 0 else logt[v]
        self._expt, self._logt, self._zech = expt, logt, zech
        self._expn = np.asarray(expt, dtype=np.int64)
        self._logn = np.asarray(logt, dtype=np.int64)
        self._zechn = np.asarray(zech, dtype=np.int64)

    # ---- numpy bulk arithmetic (tabled fields only) ----------------------

    def _need_tables(self) -> None:
        if self._expt is None:
            raise NotImplementedError("bulk arithmetic needs a tabled field (order <= 2**20)")

    def np_add(self, a, b) -> np.ndarray:
        self._need_tables()
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        m = max(self._m, 1)
        la, lb = self._logn[a], self._logn[b]
        z = self._zechn[(lb - la) % m]
        res = np.where(z < 0, 0, self._expn[(la + np.maximum(z, 0)) % m])
        return np.where(a == 0, b, np.where(b == 0, a, res))

    def np_neg(self, a) -> np.ndarray:
        self._need_tables()
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        return np.where(a == 0, 0, self._expn[(self._logn[a] + self._m // 2) % self._m])

    def np_sub(self, a, b) -> np.ndarray:
        return self.np_add(a, self.np_neg(b))

    def np_mul(self, a, b) -> np.ndarray:
        self._need_tables()
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        m = max(self._m, 1)
        res = self._expn[(self._logn[a] + self._logn[b]) % m]
        return np.where((a == 0) | (b == 0), 0, res)

    def np_inv(self, a) -> np.ndarray:
        self._need_tables()
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero in array")
        m = max(self._m, 1)
        return self._expn[(-self._logn[a]) % m]

    @functools.cached_property
    def trace_table(self) -> np.ndarray:
        """Tr(a) as an integer in [0, p) for every code a (tabled fields)."""
        basis_traces = []
        for i in range(self.kprime):
            e = [0] * self.kprime
            e[i] = 1
            basis_traces.append(self.digits(self._trace_code(self.from_digits(e)))[0])
        codes = np.arange(self.order, dtype=np.int64)
        total = np.zeros(self.order, dtype=np.int64)
        for i in range(self.kprime - 1, -1, -1):
            codes, d = np.divmod(codes, self.p)
            total += d * basis_traces[i]
        return total % self.p

    def _trace_code(self, a: int) -> int:
        acc, cur = 0, a
        for _ in range(self.kprime):
            acc = self._add_digits(acc, cur)
            cur = self.pow(cur, self.p) if self._expt is not None else self._pow_slow(cur, self.p)
        return acc

    # ---- element-level API ------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        """Coerce an int (prime-field), element, string or coefficient tuple."""
        if isinstance(value, FieldElement):
            if not self.compatible(value.owner):
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, self.from_int(int(value)))
        if isinstance(value, str):
            return parse_element(self, value)
        if isinstance(value, (tuple, list)):
            return FieldElement(self, self.from_digits(value))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, int(code))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, self._one)

    @property
    def w(self) -> "FieldElement":
        return FieldElement(self, self.primitive_code)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, c) for c in range(self.order)]

    def subfield_codes(self, s: int | None = None) -> list[int]:
        """Codes of GF(p^s) inside this field, zero first then w^{j(p^k'-1)/(p^s-1)}."""
        s = self.s if s is None else s
        if s < 1 or self.kprime % s:
            raise NoSuchSubfield(f"s={s} does not divide k'={self.kprime}")
        qs = self.p**s
        step = self._m // (qs - 1)
        return [0] + [self.exp(j * step) for j in range(qs - 1)]

    def fmt(self, code: int) -> str:
        if code % self._one == 0:
            return str(code // self._one)
        k = self.log(code)
        if k == 1:
            return "w"
        return f"w^{k}"


class FieldElement:
    """An element of a FieldSpec; immutable, hashable."""

    __slots__ = ("owner", "code")

    def __init__(self, owner: FieldSpec, code: int):
        self.owner = owner
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.owner.digits(self.code)

    def _other(self, b) -> int:
        if isinstance(b, FieldElement):
            if b.owner is not self.owner and not self.owner.compatible(b.owner):
                raise FieldMismatch("operands live in different fields")
            return b.code
        if isinstance(b, (int, np.integer)):
            return self.owner.from_int(int(b))
        return NotImplemented

    def _wrap(self, code: int) -> "FieldElement":
        return FieldElement(self.owner, code)

    def __add__(self, b):
        c = self._other(b)
        return NotImplemented if c is NotImplemented else self._wrap(self.owner.add(self.code, c))

    __radd__ = __add__

    def __sub__(self, b):
        c = self._other(b)
        return NotImplemented if c is NotImplemented else self._wrap(self.owner.sub(self.code, c))

    def __rsub__(self, b):
        c = self._other(b)
        return NotImplemented if c is NotImplemented else self._wrap(self.owner.sub(c, self.code))

    def __mul__(self, b):
        c = self._other(b)
        return NotImplemented if c is NotImplemented else self._wrap(self.owner.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, b):
        c = self._other(b)
        return NotImplemented if c is NotImplemented else self._wrap(self.owner.div(self.code, c))

    def __rtruediv__(self, b):
        c = self._other(b)
        return NotImplemented if c is NotImplemented else self._wrap(self.owner.div(c, self.code))

    def __neg__(self):
        return self._wrap(self.owner.neg(self.code))

    def __pow__(self, e: int):
        return self._wrap(self.owner.pow(self.code, int(e)))

    def inv(self) -> "FieldElement":
        return self._wrap(self.owner.inv(self.code))

    def __eq__(self, b) -> bool:
        if isinstance(b, FieldElement):
            return self.code == b.code and self.owner.compatible(b.owner)
        if isinstance(b, (int, np.integer)):
            return self.code == self.owner.from_int(int(b))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.owner._key, self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return self.owner.fmt(self.code)

    __str__ = __repr__

    def log(self) -> int:
        return self.owner.log(self.code)

    def frobenius(self, times: int = 1) -> "FieldElement":
        return self ** (self.owner.p**times)

    def order(self) -> int:
        """Multiplicative order."""
        if self.code == 0:
            raise LogOfZero("zero has no multiplicative order")
        m = self.owner._m
        return m // math.gcd(m, self.log()) if m else 1


# --------------------------------------------------------------------------
# module-level operations


@functools.lru_cache(maxsize=None)
def _build(p: int, kprime: int, modulus: tuple[int, ...], s: int) -> FieldSpec:
    return FieldSpec(p, kprime, modulus, s)


def build_field(p: int, kprime: int, modulus: Sequence[int] | str = "auto", s: int = 1) -> FieldSpec:
    """Construct (and cache) GF(p^k') with designated subfield degree s."""
    if not sympy.isprime(p):
        raise NotPrime(f"{p} is not prime")
    if s < 1 or kprime < 1 or kprime % s:
        raise NoSuchSubfield(f"s={s} does not divide k'={kprime}")
    if isinstance(modulus, str):
        if modulus != "auto":
            raise ValueError("modulus must be a coefficient list or 'auto'")
        mod = auto_modulus(p, kprime)
    else:
        mod = tuple(int(c) % p for c in modulus)
    return _build(p, kprime, mod, s)


def trace(a: FieldElement) -> FieldElement:
    """Absolute trace Tr(a) = sum of a^{p^i}, an element of the prime field."""
    return FieldElement(a.owner, a.owner._trace_code(a.code))


def trace_int(a: FieldElement) -> int:
    return a.owner.digits(a.owner._trace_code(a.code))[0]


def in_subfield(a: FieldElement, s: int) -> bool:
    spec = a.owner
    if s < 1 or spec.kprime % s:
        raise NoSuchSubfield(f"s={s} does not divide k'={spec.kprime}")
    return spec.pow(a.code, spec.p**s) == a.code


def elem_from_power(spec: FieldSpec, k: int) -> FieldElement:
    return FieldElement(spec, spec.exp(k))


def discrete_log(a: FieldElement) -> int:
    return a.owner.log(a.code)


@contextlib.contextmanager
def count_operations(spec: FieldSpec):
    """Install an OpCounter on spec for the duration of the block (not thread safe)."""
    counter = OpCounter()
    previous = spec._counter
    spec._counter = counter
    try:
        yield counter
    finally:
        spec._counter = previous


# --------------------------------------------------------------------------
# text forms

_POW_RE = re.compile(r"^\s*(-)?\s*w(?:\s*\^\s*\(?\s*(-?\d+)\s*\)?)?\s*$")


def parse_element(spec: FieldSpec, text: str) -> FieldElement:
    """Parse `0`, `1`, `2`, `w`, `w^k`, `-w^k` or a coefficient tuple `(c0,c1,...)`."""
    t = text.strip()
    m = _POW_RE.match(t)
    if m:
        k = int(m.group(2)) if m.group(2) is not None else 1
        e = elem_from_power(spec, k)
        return -e if m.group(1) else e
    if t.startswith(("(", "[")) and t.endswith((")", "]")):
        parts = [x for x in re.split(r"[,\s]+", t[1:-1]) if x]
        return FieldElement(spec, spec.from_digits([int(x) for x in parts]))
    if re.fullmatch(r"-?\d+", t):
        return FieldElement(spec, spec.from_int(int(t)))
    raise ValueError(f"cannot parse field element {text!r}")


def format_vector(v: Iterable[FieldElement]) -> str:
    return ",".join(str(x) for x in v)


def split_top_level(text: str) -> list[str]:
    """Split on commas or semicolons that are not inside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        depth += (ch in "([") - (ch in ")]")
        if ch in ",;" and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    return out


def parse_vector(spec: FieldSpec, text: str) -> list[FieldElement]:
    """Parse `a,b,c`; entries may themselves be coefficient tuples such as `(1,2)`."""
    t = text.strip()
    if t.startswith("[") and t.endswith("]"):
        t = t[1:-1]
    return [parse_element(spec, x) for x in split_top_level(t)]


_DESC_RE = re.compile(r"^\s*GF\s*\(\s*(.*?)\s*\)\s*$", re.IGNORECASE)


def parse_field_descriptor(text: str) -> FieldSpec:
    """Parse `GF(3^3; modulus=1,2,0,1; s=1)`, `GF(27;1,2,0,1;s=1)`, `GF(4)` and similar."""
    m = _DESC_RE.match(text)
    if not m:
        raise ValueError(f"bad field descriptor {text!r}")
    parts = [x.strip() for x in m.group(1).split(";")]
    head = parts[0]
    if "^" in head:
        p_str, k_str = head.split("^")
        p, kprime = int(p_str), int(k_str)
    else:
        size = int(head)
        fac = sympy.factorint(size)
        if len(fac) != 1:
            raise NotPrime(f"{size} is not a prime power")
        ((p, kprime),) = fac.items()
    modulus: Sequence[int] | str = "auto"
    s = 1
    for part in parts[1:]:
        if not part:
            continue
        if part.lower().startswith("s="):
            s = int(part[2:])
        else:
            body = part.split("=", 1)[1] if part.lower().startswith("modulus=") else part
            if body.strip().lower() != "auto":
                modulus = [int(c) for c in re.split(r"[,\s]+", body.strip()) if c]
    return build_field(p, kprime, modulus, s)
