"""The beta-twisted finite field Fourier transform for lambda-constacyclic codes.

A plan fixes (n, beta, xi) with xi of multiplicative order n and lambda = beta^n.
The forward map is A_j = sum_i a_i (beta xi^j)^i and the inverse is
a_i = (n beta^i)^{-1} sum_j xi^{-ij} A_j.  Both are applied as dense
Vandermonde products; the matrices are precomputed once per plan.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import FieldMismatch, InvalidPlan, LengthMismatch, RepeatedRootPlan
from .field import FieldElement, FieldSpec, in_subfield


@dataclass(frozen=True, eq=False)
class TransformPlan:
    spec: FieldSpec
    n: int
    beta: FieldElement
    xi: FieldElement
    lam: FieldElement
    n_inv: FieldElement

    @functools.cached_property
    def points(self) -> tuple[int, ...]:
        """Codes of beta*xi^j, j = 0..n-1."""
        F = self.spec
        return tuple(F.mul(self.beta.code, F.pow(self.xi.code, j)) for j in range(self.n))

    @functools.cached_property
    def forward_matrix(self) -> tuple[tuple[int, ...], ...]:
        """V[j][i] = (beta xi^j)^i."""
        F = self.spec
        return tuple(tuple(F.pow(x, i) for i in range(self.n)) for x in self.points)

    @functools.cached_property
    def inverse_matrix(self) -> tuple[tuple[int, ...], ...]:
        """W[i][j] = xi^{-ij} / (n beta^i)."""
        F = self.spec
        rows = []
        for i in range(self.n):
            scale = F.inv(F.mul(F.from_int(self.n), F.pow(self.beta.code, i)))
            rows.append(tuple(F.mul(scale, F.pow(self.xi.code, -i * j)) for j in range(self.n)))
        return tuple(rows)

    @functools.cached_property
    def forward_np(self) -> np.ndarray:
        return np.asarray(self.forward_matrix, dtype=np.int64)

    @functools.cached_property
    def inverse_np(self) -> np.ndarray:
        return np.asarray(self.inverse_matrix, dtype=np.int64)

    def descriptor(self) -> str:
        return f"FFFT(n={self.n}; beta={self.beta}; xi={self.xi})"

    __str__ = descriptor

    def __repr__(self) -> str:
        return f"TransformPlan({self.descriptor()} over {self.spec.descriptor()})"

    def dual(self) -> "TransformPlan":
        """Plan (beta^-1, xi^-1) whose roots are the inverses of this plan's roots."""
        return make_plan(self.spec, self.n, beta=self.beta.inv(), xi=self.xi.inv())

    def conjugation_shift(self, s: int) -> int | None:
        """c with beta^{q-1} = xi^c (q = p^s), so that (beta xi^r)^q = beta xi^{qr+c}."""
        return xi_exponent(self, self.beta ** (self.spec.p**s - 1))

    def root_inverse_shift(self) -> int | None:
        """c with beta^{-2} = xi^c, so that (beta xi^r)^{-1} = beta xi^{-r+c}."""
        return xi_exponent(self, self.beta ** (-2))


def xi_exponent(plan: TransformPlan, a: FieldElement) -> int | None:
    """e in [0, n) with a = xi^e, or None when a is not an n-th root of unity."""
    F = plan.spec
    if a.code == 0:
        return None
    la, lx = F.log(a.code), F.log(plan.xi.code)
    m = F.order - 1
    # xi = w^lx has order n, so xi^e = w^{e*lx}; solve e*lx = la (mod m)
    step = m // plan.n
    if m == 0:
        return 0
    if la % step:
        return None
    for e in range(plan.n):
        if (e * lx - la) % m == 0:
            return e
    return None  # pragma: no cover


def make_plan(
    spec: FieldSpec,
    n: int,
    beta: FieldElement | None = None,
    xi: FieldElement | None = None,
    lam: FieldElement | None = None,
) -> TransformPlan:
    """Validate and build a plan.

    xi defaults to w^{(p^k'-1)/n}.  When only lam is given, beta is the first
    solution of beta^n = lam in discrete-log order, searched in the designated
    subfield first and then in the whole field.
    """
    if n < 1:
        raise InvalidPlan("n must be >= 1")
    if n % spec.p == 0:
        raise RepeatedRootPlan(f"p={spec.p} divides n={n}: x^n - lambda has repeated roots")
    m = spec.order - 1
    if m % n:
        raise InvalidPlan(f"n={n} does not divide p^k'-1={m}: no element of order n")
    if xi is None:
        xi = FieldElement(spec, spec.exp(m // n))
    else:
        xi = spec(xi)
    if xi.code == 0 or xi.order() != n:
        raise InvalidPlan(f"xi={xi} does not have multiplicative order {n}")
    if beta is None:
        if lam is None:
            beta = spec.one
        else:
            beta = find_beta(spec, n, spec(lam))
    beta = spec(beta)
    if beta.code == 0:
        raise InvalidPlan("beta must be nonzero")
    lam_b = beta**n
    if lam is not None and spec(lam) != lam_b:
        raise InvalidPlan(f"beta^n = {lam_b} differs from lambda = {spec(lam)}")
    n_inv = FieldElement(spec, spec.inv(spec.from_int(n)))
    return TransformPlan(spec, n, beta, xi, lam_b, n_inv)


def find_beta(spec: FieldSpec, n: int, lam: FieldElement) -> FieldElement:
    if lam.code == 0:
        raise InvalidPlan("lambda must be nonzero")
    sub = [c for c in spec.subfield_codes(spec.s) if c]
    sub.sort(key=spec.log)
    rest = sorted((c for c in range(1, spec.order) if c not in set(sub)), key=spec.log)
    for c in sub + rest:
        if spec.pow(c, n) == lam.code:
            return FieldElement(spec, c)
    raise InvalidPlan(f"no beta with beta^{n} = {lam} in {spec.descriptor()}")


# --------------------------------------------------------------------------


def _codes(plan: TransformPlan, a: Sequence) -> list[int]:
    if len(a) != plan.n:
        raise LengthMismatch(f"expected length {plan.n}, got {len(a)}")
    out = []
    for x in a:
        if isinstance(x, FieldElement):
            if not plan.spec.compatible(x.owner):
                raise FieldMismatch("vector entry from another field")
            out.append(x.code)
        else:
            out.append(plan.spec(x).code)
    return out


def _apply(F: FieldSpec, matrix, v: list[int]) -> list[FieldElement]:
    out = []
    for row in matrix:
        acc = 0
        first = True
        for x, y in zip(v, row):
            if x:
                t = F.mul(x, y)
                if first:
                    acc, first = t, False
                else:
                    acc = F.add(acc, t)
        out.append(FieldElement(F, acc))
    return out


def fffft(plan: TransformPlan, a: Sequence) -> list[FieldElement]:
    """A_j = sum_i a_i (beta xi^j)^i."""
    return _apply(plan.spec, plan.forward_matrix, _codes(plan, a))


def ifffft(plan: TransformPlan, A: Sequence) -> list[FieldElement]:
    """a_i = (n beta^i)^{-1} sum_j xi^{-ij} A_j."""
    return _apply(plan.spec, plan.inverse_matrix, _codes(plan, A))


def _batch(F: FieldSpec, matrix: np.ndarray, arr: np.ndarray) -> np.ndarray:
    arr = np.asarray(arr, dtype=np.int64)
    out = np.zeros(arr.shape[:-1] + (matrix.shape[0],), dtype=np.int64)
    for i in range(matrix.shape[1]):
        out = F.np_add(out, F.np_mul(arr[..., i : i + 1], matrix[:, i]))
    return out


def fffft_batch(plan: TransformPlan, arr) -> np.ndarray:
    """Forward transform of every length-n row (last axis) of an array of codes."""
    return _batch(plan.spec, plan.forward_np, arr)


def ifffft_batch(plan: TransformPlan, arr) -> np.ndarray:
    return _batch(plan.spec, plan.inverse_np, arr)


def cyclic_dft(plan: TransformPlan, a: Sequence) -> list[FieldElement]:
    """The untwisted transform sum_i a_i xi^{ij} (beta = 1)."""
    F = plan.spec
    v = _codes(plan, a)
    mat = [[F.pow(plan.xi.code, i * j) for i in range(plan.n)] for j in range(plan.n)]
    return _apply(F, mat, v)


# --------------------------------------------------------------------------
# property checks; each returns a PropertyCheck that is truthy on success


@dataclass(frozen=True)
class PropertyCheck:
    ok: bool
    index: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def _compare(lhs: Sequence[FieldElement], rhs: Sequence[FieldElement]) -> PropertyCheck:
    for j, (x, y) in enumerate(zip(lhs, rhs)):
        if x != y:
            return PropertyCheck(False, j)
    return PropertyCheck(True)


def constacyclic_shift(plan: TransformPlan, a: Sequence) -> list[FieldElement]:
    """(lam a_{n-1}, a_0, ..., a_{n-2})."""
    v = [plan.spec(x) for x in a]
    return [plan.lam * v[-1]] + v[:-1]


def check_shift_property(plan: TransformPlan, a: Sequence) -> PropertyCheck:
    A = fffft(plan, a)
    B = fffft(plan, constacyclic_shift(plan, a))
    F = plan.spec
    rhs = [FieldElement(F, F.mul(plan.points[j], A[j].code)) for j in range(plan.n)]
    return _compare(B, rhs)


def check_convolution(plan: TransformPlan, a: Sequence, b: Sequence) -> PropertyCheck:
    """Both directions of the convolution property.

    Forward: c_i = a_i b_i gives C_j = n^{-1} sum_k B_k cA_{j-k} with cA the
    untwisted transform of a.  Converse: C_j = A_j B_j holds for c the product
    a(x) b(x) mod x^n - lam, i.e. a convolution whose wrapped terms carry lam.
    """
    F = plan.spec
    n = plan.n
    a = [F(x) for x in a]
    b = [F(x) for x in b]
    c = [x * y for x, y in zip(a, b)]
    B = fffft(plan, b)
    C = fffft(plan, c)
    cA = cyclic_dft(plan, a)
    rhs = []
    for j in range(n):
        acc = F.zero
        for k in range(n):
            acc = acc + B[k] * cA[(j - k) % n]
        rhs.append(acc * plan.n_inv)
    forward = _compare(C, rhs)
    if not forward:
        return forward
    conv = [F.zero] * n
    for i in range(n):
        for k in range(n):
            term = a[i] * b[k]
            if i + k >= n:
                conv[i + k - n] = conv[i + k - n] + plan.lam * term
            else:
                conv[i + k] = conv[i + k] + term
    A = fffft(plan, a)
    back = _compare(fffft(plan, conv), [x * y for x, y in zip(A, B)])
    return PropertyCheck(back.ok, None if back.ok else n + back.index)


def conjugate_symmetric(plan: TransformPlan, A: Sequence, s: int) -> PropertyCheck:
    """A_j^q = A_{qj + c mod n}, with beta^{q-1} = xi^c (c = 0 when beta is in GF(q))."""
    F = plan.spec
    q = F.p**s
    c = plan.conjugation_shift(s)
    if c is None:
        raise InvalidPlan("beta^{q-1} is not a power of xi; conjugate symmetry is undefined")
    A = [F(x) for x in A]
    for j in range(plan.n):
        if A[j] ** q != A[(q * j + c) % plan.n]:
            return PropertyCheck(False, j)
    return PropertyCheck(True)


def check_conjugate_symmetry(plan: TransformPlan, A: Sequence, s: int) -> PropertyCheck:
    """Conjugate symmetry of a spectrum; equivalent to ifffft(A) lying in GF(p^s)."""
    return conjugate_symmetric(plan, A, s)


def time_domain_in_subfield(plan: TransformPlan, A: Sequence, s: int) -> bool:
    return all(in_subfield(x, s) for x in ifffft(plan, A))


def check_reversal(plan: TransformPlan, a: Sequence) -> PropertyCheck:
    """b_i = a_{n-i mod n}  =>  B_j = A_{n-j mod n}.

    This literal form holds when lam = 1 and beta^2 = 1 (and for n <= 2);
    `check_reversal_twisted` is the variant valid for every plan.
    """
    F = plan.spec
    n = plan.n
    a = [F(x) for x in a]
    b = [a[(n - i) % n] for i in range(n)]
    A, B = fffft(plan, a), fffft(plan, b)
    return _compare(B, [A[(n - j) % n] for j in range(n)])


def check_reversal_twisted(plan: TransformPlan, a: Sequence) -> PropertyCheck:
    """b_0 = a_0, b_i = lam^{-1} a_{n-i}  =>  B_j = A'_{n-j}, A' the transform under (beta^-1, xi)."""
    F = plan.spec
    n = plan.n
    a = [F(x) for x in a]
    lam_inv = plan.lam.inv()
    b = [a[0]] + [lam_inv * a[n - i] for i in range(1, n)]
    B = fffft(plan, b)
    twisted = make_plan(F, n, beta=plan.beta.inv(), xi=plan.xi)
    A2 = fffft(twisted, a)
    return _compare(B, [A2[(n - j) % n] for j in range(n)])


def reversal_literal_applies(plan: TransformPlan) -> bool:
    return plan.n <= 2 or (plan.lam == 1 and plan.beta**2 == 1)
