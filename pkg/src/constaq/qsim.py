"""Dense state-vector simulation of qudit codes built on the twisted Fourier transform.

Basis convention: the computational basis state of one qudit is labelled by the
integer code of a field element (so basis order is the lexicographic order of
coefficient tuples, constant term first), and qudit 0 is the most significant
tensor factor.  Operators are either monomial (a permutation with per-column
phases, U|x> = phase[x] |perm[x]>) or dense; monomial operators are applied to
states without expanding them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .codes import parity_matrix_hb
from .decoder import CodecConfig, decode, decode_reference
from .errors import (
    BudgetExceeded,
    DecodeFailure,
    DimensionMismatch,
    FieldMismatch,
    InvalidPlan,
    LengthMismatch,
    MessageSpaceEmpty,
    NotBasisError,
    OverlappingAncillaSets,
)
from .field import FieldElement, FieldSpec
from .transform import TransformPlan, fffft, fffft_batch, make_plan, xi_exponent

TOL = 1e-9
DENSE_SIDE_LIMIT = 4096
QFFFT_BUDGET = 1 << 16
STATE_BUDGET = 1 << 24


def omega(spec: FieldSpec) -> complex:
    return cmath.exp(2j * math.pi / spec.p)


def _phase_table(spec: FieldSpec) -> np.ndarray:
    """omega^k for k in [0, p)."""
    return np.exp(2j * np.pi * np.arange(spec.p) / spec.p)


def _tr_product(spec: FieldSpec, a, b) -> np.ndarray:
    """Tr(a*b) in [0, p) elementwise."""
    return spec.trace_table[spec.np_mul(a, b)]


def _code(spec: FieldSpec, v) -> int:
    if isinstance(v, FieldElement):
        if not spec.compatible(v.owner):
            raise FieldMismatch("element from another field")
        return v.code
    return spec(v).code


# --------------------------------------------------------------------------
# operators


@dataclass(frozen=True, eq=False)
class QuditOperator:
    spec: FieldSpec
    num_qudits: int
    kind: str
    params: tuple = ()
    perm: np.ndarray | None = None
    phase: np.ndarray | None = None
    dense: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.spec.order

    @property
    def side(self) -> int:
        return self.dim**self.num_qudits

    @property
    def is_monomial(self) -> bool:
        return self.perm is not None

    def matrix(self, limit: int = DENSE_SIDE_LIMIT) -> np.ndarray:
        if self.dense is not None:
            return self.dense
        if self.side > limit:
            raise BudgetExceeded(f"dense expansion of side {self.side} exceeds {limit}")
        M = np.zeros((self.side, self.side), dtype=complex)
        M[self.perm, np.arange(self.side)] = self.phase
        return M

    def adjoint(self) -> "QuditOperator":
        if self.dense is not None:
            return QuditOperator(self.spec, self.num_qudits, f"{self.kind}^-1", self.params, dense=self.dense.conj().T)
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.side)
        return QuditOperator(
            self.spec, self.num_qudits, f"{self.kind}^-1", self.params, perm=inv, phase=self.phase[inv].conj()
        )

    def __matmul__(self, other: "QuditOperator") -> "QuditOperator":
        if other.num_qudits != self.num_qudits or not self.spec.compatible(other.spec):
            raise DimensionMismatch("operator shapes differ")
        if self.is_monomial and other.is_monomial:
            perm = self.perm[other.perm]
            phase = self.phase[other.perm] * other.phase
            return QuditOperator(self.spec, self.num_qudits, "composite", (), perm=perm, phase=phase)
        return QuditOperator(self.spec, self.num_qudits, "composite", (), dense=self.matrix() @ other.matrix())

    def tensor(self, other: "QuditOperator") -> "QuditOperator":
        n = self.num_qudits + other.num_qudits
        if self.is_monomial and other.is_monomial:
            so = other.side
            perm = (self.perm[:, None] * so + other.perm[None, :]).reshape(-1)
            phase = (self.phase[:, None] * other.phase[None, :]).reshape(-1)
            return QuditOperator(self.spec, n, "composite", (), perm=perm, phase=phase)
        return QuditOperator(self.spec, n, "composite", (), dense=np.kron(self.matrix(), other.matrix()))

    def is_unitary(self, tol: float = TOL) -> bool:
        if self.is_monomial:
            return bool(
                len(np.unique(self.perm)) == self.side and np.allclose(np.abs(self.phase), 1.0, atol=tol)
            )
        M = self.dense
        return float(np.linalg.norm(M @ M.conj().T - np.eye(len(M)))) < tol

    def close_to(self, other: "QuditOperator", tol: float = TOL) -> bool:
        if self.is_monomial and other.is_monomial:
            return bool(np.array_equal(self.perm, other.perm) and np.allclose(self.phase, other.phase, atol=tol))
        return float(np.linalg.norm(self.matrix() - other.matrix())) < tol

    def apply(self, state: "QuditState", qudits: Sequence[int] | None = None) -> "QuditState":
        qudits = list(range(self.num_qudits)) if qudits is None else list(qudits)
        if len(qudits) != self.num_qudits:
            raise DimensionMismatch(f"operator acts on {self.num_qudits} qudits, got {len(qudits)} targets")
        if not self.spec.compatible(state.spec):
            raise FieldMismatch("operator and state use different fields")
        d, N = self.dim, state.num_qudits
        T = state.amplitudes.reshape((d,) * N)
        rest = [a for a in range(N) if a not in qudits]
        M = np.transpose(T, qudits + rest).reshape(self.side, -1)
        if self.is_monomial:
            out = np.empty_like(M)
            out[self.perm] = self.phase[:, None] * M
        else:
            out = self.dense @ M
        out = out.reshape((d,) * N)
        back = np.argsort(qudits + rest)
        return QuditState(state.spec, N, np.ascontiguousarray(np.transpose(out, back)).reshape(-1))


def _identity(spec: FieldSpec, k: int = 1) -> QuditOperator:
    side = spec.order**k
    return QuditOperator(spec, k, "I", (), perm=np.arange(side), phase=np.ones(side, dtype=complex))


def op_x(spec: FieldSpec, alpha) -> QuditOperator:
    """X(alpha)|theta> = |theta + alpha>."""
    a = _code(spec, alpha)
    theta = np.arange(spec.order)
    return QuditOperator(
        spec, 1, "X", (a,), perm=spec.np_add(theta, a), phase=np.ones(spec.order, dtype=complex)
    )


def op_z(spec: FieldSpec, gamma) -> QuditOperator:
    """Z(gamma)|theta> = omega^{Tr(gamma theta)} |theta>."""
    g = _code(spec, gamma)
    theta = np.arange(spec.order)
    return QuditOperator(
        spec, 1, "Z", (g,), perm=theta, phase=_phase_table(spec)[_tr_product(spec, theta, g)]
    )


def op_xz(spec: FieldSpec, alpha, gamma) -> QuditOperator:
    return op_x(spec, alpha) @ op_z(spec, gamma)


def op_dft(spec: FieldSpec) -> QuditOperator:
    d = spec.order
    codes = np.arange(d)
    tr = _tr_product(spec, codes[:, None], codes[None, :])
    return QuditOperator(spec, 1, "DFT", (), dense=_phase_table(spec)[tr] / math.sqrt(d))


def op_add(spec: FieldSpec) -> QuditOperator:
    """ADD|t1>|t2> = |t1>|t1 + t2> (control first)."""
    d = spec.order
    t1, t2 = np.divmod(np.arange(d * d), d)
    return QuditOperator(
        spec, 2, "ADD", (), perm=t1 * d + spec.np_add(t1, t2), phase=np.ones(d * d, dtype=complex)
    )


def _all_vectors(spec: FieldSpec, n: int) -> np.ndarray:
    """Row x holds the n codes of basis index x (qudit 0 most significant)."""
    d = spec.order
    idx = np.arange(d**n)
    out = np.zeros((d**n, n), dtype=np.int64)
    for k in range(n - 1, -1, -1):
        idx, out[:, k] = np.divmod(idx, d)
    return out


def _index_of(spec: FieldSpec, vecs: np.ndarray) -> np.ndarray:
    d = spec.order
    idx = np.zeros(vecs.shape[:-1], dtype=np.int64)
    for k in range(vecs.shape[-1]):
        idx = idx * d + vecs[..., k]
    return idx


def _label(spec: FieldSpec, num_qudits: int, index: int) -> tuple[FieldElement, ...]:
    out = []
    for _ in range(num_qudits):
        index, r = divmod(index, spec.order)
        out.append(spec.element(r))
    return tuple(reversed(out))


def op_qfffft(plan: TransformPlan, budget: int = QFFFT_BUDGET) -> QuditOperator:
    """Q|c> = |FFFT(c)> on n qudits."""
    spec, n = plan.spec, plan.n
    side = spec.order**n
    if side > budget:
        raise BudgetExceeded(f"Q(FFFT) on {side} basis states exceeds the budget {budget}")
    perm = _index_of(spec, fffft_batch(plan, _all_vectors(spec, n)))
    return QuditOperator(spec, n, "QFFFT", (plan.descriptor(),), perm=perm, phase=np.ones(side, dtype=complex))


def op_string(spec: FieldSpec, kind: str, coeffs: Sequence) -> QuditOperator:
    """Tensor product of single-qudit X or Z operators."""
    single = {"X": op_x, "Z": op_z}[kind]
    out = single(spec, coeffs[0])
    for c in coeffs[1:]:
        out = out.tensor(single(spec, c))
    return out


def op_site(spec: FieldSpec, n: int, site: int, single: QuditOperator) -> QuditOperator:
    """single on qudit `site` (0-based) of n, identity elsewhere."""
    out = _identity(spec, site).tensor(single) if site else single
    if n - site - 1:
        out = out.tensor(_identity(spec, n - site - 1))
    return out


# --------------------------------------------------------------------------
# states


@dataclass(frozen=True, eq=False)
class QuditState:
    spec: FieldSpec
    num_qudits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (self.spec.order**self.num_qudits,):
            raise DimensionMismatch("amplitude vector has the wrong length")

    @classmethod
    def basis(cls, spec: FieldSpec, values: Sequence) -> "QuditState":
        codes = np.array([_code(spec, v) for v in values], dtype=np.int64)
        amps = np.zeros(spec.order ** len(codes), dtype=complex)
        amps[int(_index_of(spec, codes)) if len(codes) else 0] = 1.0
        return cls(spec, len(codes), amps)

    @classmethod
    def from_amplitudes(cls, spec: FieldSpec, amps: Sequence[complex], normalize: bool = True) -> "QuditState":
        a = np.asarray(amps, dtype=complex)
        d = spec.order
        n = round(math.log(len(a), d)) if len(a) > 1 else 0
        if d**n != len(a):
            raise DimensionMismatch(f"{len(a)} is not a power of {d}")
        if normalize:
            a = a / np.linalg.norm(a)
        return cls(spec, n, a)

    @classmethod
    def epsilon(cls, spec: FieldSpec) -> "QuditState":
        """DFT^-1 |0>, the uniform superposition."""
        d = spec.order
        return cls(spec, 1, np.full(d, 1 / math.sqrt(d), dtype=complex))

    @classmethod
    def random(cls, spec: FieldSpec, num_qudits: int, rng: np.random.Generator) -> "QuditState":
        side = spec.order**num_qudits
        a = rng.normal(size=side) + 1j * rng.normal(size=side)
        return cls(spec, num_qudits, a / np.linalg.norm(a))

    @property
    def dim(self) -> int:
        return self.spec.order

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def tensor(self, other: "QuditState") -> "QuditState":
        return QuditState(self.spec, self.num_qudits + other.num_qudits, np.kron(self.amplitudes, other.amplitudes))

    def inner(self, other: "QuditState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "QuditState") -> float:
        """|<self|other>|, insensitive to global phase."""
        return abs(self.inner(other))

    def close_to(self, other: "QuditState", tol: float = TOL) -> bool:
        return float(np.linalg.norm(self.amplitudes - other.amplitudes)) < tol

    def basis_label(self, index: int) -> tuple[FieldElement, ...]:
        return _label(self.spec, self.num_qudits, index)

    def support_index(self, tol: float = TOL) -> int:
        """Index of the unique basis state carrying all the weight."""
        probs = np.abs(self.amplitudes) ** 2
        k = int(np.argmax(probs))
        if abs(probs[k] - 1.0) > tol:
            raise NotBasisError("state is not a computational basis state")
        return k

    def dump(self, cutoff: float = 1e-12) -> list[tuple[tuple[str, ...], tuple[float, float]]]:
        out = []
        for k in np.flatnonzero(np.abs(self.amplitudes) >= cutoff):
            a = self.amplitudes[k]
            label = tuple(str(x) for x in self.basis_label(int(k)))
            out.append((label, (float(f"{a.real:.12g}"), float(f"{a.imag:.12g}"))))
        return out


# --------------------------------------------------------------------------
# Pauli vectors


@dataclass(frozen=True)
class PauliVector:
    """E = X(alpha) Z(gamma) as a tensor product over the n sites."""

    alpha: tuple[FieldElement, ...]
    gamma: tuple[FieldElement, ...]

    def __post_init__(self):
        if len(self.alpha) != len(self.gamma):
            raise LengthMismatch("alpha and gamma must have equal length")

    @classmethod
    def make(cls, spec: FieldSpec, alpha: Sequence | None = None, gamma: Sequence | None = None, n: int | None = None):
        n = n if n is not None else len(alpha if alpha is not None else gamma)
        a = tuple(spec(x) for x in alpha) if alpha is not None else (spec.zero,) * n
        g = tuple(spec(x) for x in gamma) if gamma is not None else (spec.zero,) * n
        return cls(a, g)

    @classmethod
    def single(cls, spec: FieldSpec, n: int, site: int, kind: str, value) -> "PauliVector":
        v = [spec.zero] * n
        v[site] = spec(value)
        return cls.make(spec, alpha=v if kind == "X" else None, gamma=v if kind == "Z" else None, n=n)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def spec(self) -> FieldSpec:
        return self.alpha[0].owner

    @property
    def weight(self) -> int:
        return sum(1 for a, g in zip(self.alpha, self.gamma) if a or g)

    @property
    def is_identity(self) -> bool:
        return self.weight == 0

    def inverse_parts(self) -> "PauliVector":
        return PauliVector(tuple(-a for a in self.alpha), tuple(-g for g in self.gamma))

    def __mul__(self, other: "PauliVector") -> "PauliVector":
        """Componentwise sum; equals the operator product up to a global phase."""
        return PauliVector(
            tuple(a + b for a, b in zip(self.alpha, other.alpha)),
            tuple(a + b for a, b in zip(self.gamma, other.gamma)),
        )

    def operator(self) -> QuditOperator:
        F = self.spec
        out = op_xz(F, self.alpha[0], self.gamma[0])
        for a, g in zip(self.alpha[1:], self.gamma[1:]):
            out = out.tensor(op_xz(F, a, g))
        return out

    def apply(self, state: QuditState, offset: int = 0) -> QuditState:
        """Apply Z(gamma) then X(alpha) site by site to qudits offset..offset+n-1."""
        F = self.spec
        for i, (a, g) in enumerate(zip(self.alpha, self.gamma)):
            if g:
                state = op_z(F, g).apply(state, [offset + i])
            if a:
                state = op_x(F, a).apply(state, [offset + i])
        return state

    def undo(self, state: QuditState, offset: int = 0) -> QuditState:
        """Apply E^-1 = Z(-gamma) X(-alpha)."""
        F = self.spec
        for i, (a, g) in enumerate(zip(self.alpha, self.gamma)):
            if a:
                state = op_x(F, -a).apply(state, [offset + i])
            if g:
                state = op_z(F, -g).apply(state, [offset + i])
        return state

    def to_json(self) -> dict:
        return {"alpha": [str(x) for x in self.alpha], "gamma": [str(x) for x in self.gamma]}


# --------------------------------------------------------------------------
# conjugation relations


def beta_square_shift(plan: TransformPlan) -> int:
    """e with beta^2 = xi^e; exists exactly when lambda^2 = 1."""
    e = xi_exponent(plan, plan.beta**2)
    if e is None:
        raise InvalidPlan(f"beta^2 = {plan.beta ** 2} is not a power of xi (lambda^2 != 1)")
    return e


RELATIONS = ("N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8")


def relation_sides(rel: str, spec: FieldSpec, plan: TransformPlan | None, params: dict, literal: bool = False):
    """(lhs, rhs) for one instance of a relation.

    N1/N2 take params i (1-based site) and gamma; N3 takes j in 1..n, N4 j in
    0..n-1, both with gamma; N5/N6 take gamma and return states; N7/N8 take gamma.
    With literal=False the N3 target site is the general -j - e (mod n), where
    beta^2 = xi^e; literal=True uses site n - j + 1 as written for beta^2 = 1.
    """
    g = spec(params.get("gamma", 1))
    if rel in ("N1", "N2", "N3", "N4"):
        if plan is None:
            raise InvalidPlan(f"{rel} needs a transform plan")
        n = plan.n
        Q = op_qfffft(plan)
        Qi = Q.adjoint()
        pts = [plan.beta * plan.xi**k for k in range(n)]
    if rel == "N1":
        i = params["i"]
        lhs = Q @ op_site(spec, n, i - 1, op_x(spec, g)) @ Qi
        rhs = op_string(spec, "X", [g * x ** (i - 1) for x in pts])
    elif rel == "N2":
        i = params["i"]
        lhs = Q @ op_site(spec, n, i - 1, op_z(spec, g)) @ Qi
        c = (plan.n_inv / plan.lam) * g
        rhs = op_string(spec, "Z", [c * x ** (n - i + 1) for x in pts])
    elif rel == "N3":
        j = params["j"]
        r = plan.beta * plan.xi**j
        lhs = Q @ op_string(spec, "X", [g * r**f for f in range(n)]) @ Qi
        site = (n - j) % n if literal else (-j - beta_square_shift(plan)) % n
        rhs = op_site(spec, n, site, op_x(spec, spec(n) * g))
    elif rel == "N4":
        j = params["j"]
        r = plan.beta * plan.xi**j
        lhs = Q @ op_string(spec, "Z", [g * r**f for f in range(n)]) @ Qi
        rhs = op_site(spec, n, j % n, op_z(spec, g))
    elif rel == "N5":
        eps = QuditState.epsilon(spec)
        return op_x(spec, g).apply(eps), eps
    elif rel == "N6":
        zero = QuditState.basis(spec, [0])
        return op_z(spec, g).apply(zero), zero
    elif rel == "N7":
        D = op_dft(spec)
        lhs, rhs = D @ op_x(spec, g) @ D.adjoint(), op_z(spec, g)
    elif rel == "N8":
        D = op_dft(spec)
        lhs, rhs = D @ op_z(spec, g) @ D.adjoint(), op_x(spec, -g)
    else:
        raise ValueError(f"unknown relation {rel!r}")
    return lhs, rhs


def verify_relation(rel: str, spec: FieldSpec, plan: TransformPlan | None = None, params: dict | None = None,
                    literal: bool = False, tol: float = TOL) -> bool:
    lhs, rhs = relation_sides(rel, spec, plan, params or {}, literal)
    return lhs.close_to(rhs, tol)


def relation_instances(rel: str, spec: FieldSpec, plan: TransformPlan | None) -> Iterator[dict]:
    """Every parameter choice for rel: all gamma, all sites/exponents."""
    gammas = spec.elements()
    if rel in ("N1", "N2"):
        idx = [("i", i) for i in range(1, plan.n + 1)]
    elif rel == "N3":
        idx = [("j", j) for j in range(1, plan.n + 1)]
    elif rel == "N4":
        idx = [("j", j) for j in range(plan.n)]
    else:
        idx = [(None, None)]
    for key, v in idx:
        for g in gammas:
            yield {"gamma": g} if key is None else {key: v, "gamma": g}


def verify_all_relations(spec: FieldSpec, plan: TransformPlan, literal: bool = False) -> dict[str, bool]:
    return {
        rel: all(verify_relation(rel, spec, plan, p, literal) for p in relation_instances(rel, spec, plan))
        for rel in RELATIONS
    }


def relation_test_matrix() -> list[TransformPlan]:
    """Plans over GF(2), GF(3), GF(4) for every admissible n <= 3 and every beta with lambda^2 = 1."""
    from .field import build_field

    plans = []
    for p, k in ((2, 1), (3, 1), (2, 2)):
        F = build_field(p, k)
        for n in (1, 2, 3):
            if n % p == 0 or (F.order - 1) % n:
                continue
            for b in F.elements()[1:]:
                if (b ** (2 * n)) == F.one:
                    plans.append(make_plan(F, n, beta=b))
    return plans


# --------------------------------------------------------------------------
# layout


@dataclass(frozen=True)
class CircuitLayout:
    """Qudit roles for the encoder; positions are 1-based.

    t_x[j] is the X-ancilla qudit paired with check row b1 + j and t_z[j] the
    Z-ancilla qudit paired with row b2 + j, so both are ordered by syndrome index.
    """

    n: int
    b1: int
    b2: int
    delta: int
    shift: int = 0
    t_x: tuple[int, ...] = ()
    t_z: tuple[int, ...] = ()
    d_m: tuple[int, ...] = ()

    @property
    def T(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def n_m(self) -> int:
        return len(self.d_m)

    @property
    def n_x(self) -> int:
        return self.delta - 1

    @property
    def n_z(self) -> int:
        return self.delta - 1

    @property
    def num_syndrome(self) -> int:
        return 2 * (self.delta - 1)

    def to_json(self) -> dict:
        return {
            "n": self.n, "b1": self.b1, "b2": self.b2, "delta": self.delta, "shift": self.shift,
            "T_X": list(self.t_x), "T_Z": list(self.t_z), "D_M": list(self.d_m),
        }


def layout(n: int, b1: int, b2: int, delta: int, shift: int = 0) -> CircuitLayout:
    """T_X = {n-b1-delta+3..n-b1+1}, T_Z = {b2+1..b2+delta-1} (mod n, into 1..n).

    shift = e with beta^2 = xi^e moves T_X to -r-e for plans where beta^2 != 1;
    shift = 0 is the beta^2 = 1 layout.
    """
    if delta < 1 or n < 1:
        raise ValueError("need n >= 1 and delta >= 1")
    if 2 * (delta - 1) > n:
        raise MessageSpaceEmpty(f"2(delta-1) = {2 * (delta - 1)} exceeds n = {n}")
    t_x = tuple((-(b1 + j) - shift) % n + 1 for j in range(delta - 1))
    t_z = tuple((b2 + j) % n + 1 for j in range(delta - 1))
    if len(set(t_x)) != len(t_x) or len(set(t_z)) != len(t_z) or set(t_x) & set(t_z):
        raise OverlappingAncillaSets(f"T_X={sorted(t_x)} and T_Z={sorted(t_z)} overlap")
    d_m = tuple(i for i in range(1, n + 1) if i not in set(t_x) | set(t_z))
    return CircuitLayout(n, b1, b2, delta, shift, t_x, t_z, d_m)


def plan_layout(plan: TransformPlan, b1: int, b2: int, delta: int) -> CircuitLayout:
    return layout(plan.n, b1, b2, delta, shift=beta_square_shift(plan))


# --------------------------------------------------------------------------
# encoding


def initial_state(lay: CircuitLayout, phi: QuditState) -> QuditState:
    """|phi> on D_M, |0> on D_Z, |epsilon> on D_X, in physical order."""
    if phi.num_qudits != lay.n_m:
        raise DimensionMismatch(f"message has {phi.num_qudits} qudits, layout needs {lay.n_m}")
    spec = phi.spec
    state = phi
    for _ in lay.t_z:
        state = state.tensor(QuditState.basis(spec, [0]))
    for _ in lay.t_x:
        state = state.tensor(QuditState.epsilon(spec))
    order = list(lay.d_m) + list(lay.t_z) + list(lay.t_x)
    d = spec.order
    T = state.amplitudes.reshape((d,) * lay.n)
    # axis a of T is physical qudit order[a]; move it to position order[a]-1
    T = np.transpose(T, np.argsort([q - 1 for q in order]))
    return QuditState(spec, lay.n, np.ascontiguousarray(T).reshape(-1))


def _check_dims(plan: TransformPlan, budget: int, extra: int = 0) -> None:
    side = plan.spec.order ** (plan.n + extra)
    if side > budget:
        raise BudgetExceeded(f"{side} amplitudes exceed the simulation budget {budget}")


def encode_state(plan: TransformPlan, lay: CircuitLayout, phi: QuditState, budget: int = QFFFT_BUDGET) -> QuditState:
    """|psi> = Q(FFFT)^-1 |psi_0>."""
    _check_dims(plan, budget)
    return op_qfffft(plan, budget).adjoint().apply(initial_state(lay, phi))


@dataclass(frozen=True)
class Stabilizer:
    label: str
    pauli: PauliVector


def _multipliers(spec: FieldSpec) -> list[FieldElement]:
    """w^0..w^(k'-1): an F_p-basis of the field."""
    return [spec.w**l for l in range(spec.kprime)]


def stabilizer_generators(plan: TransformPlan, lay: CircuitLayout) -> list[Stabilizer]:
    """X-type w^l * (row r of H_b1) and Z-type w^m * (row r of H_b2)."""
    F, n = plan.spec, plan.n
    out = []
    for kind, b in (("X", lay.b1), ("Z", lay.b2)):
        for j in range(lay.delta - 1):
            r = b + j
            x = plan.beta * plan.xi**r
            row = [x**g for g in range(n)]
            for l, m in enumerate(_multipliers(F)):
                v = [m * c for c in row]
                pv = PauliVector.make(F, alpha=v if kind == "X" else None, gamma=v if kind == "Z" else None, n=n)
                out.append(Stabilizer(f"S{kind}[{r},{l}]", pv))
    return out


def initial_stabilizers(plan: TransformPlan, lay: CircuitLayout) -> list[Stabilizer]:
    """Single-site images Q S Q^-1: X_s(n w^l) on T_X and Z_t(w^m) on T_Z."""
    F, n = plan.spec, plan.n
    out = []
    for kind, sites in (("X", lay.t_x), ("Z", lay.t_z)):
        b = lay.b1 if kind == "X" else lay.b2
        for j, site in enumerate(sites):
            for l, m in enumerate(_multipliers(F)):
                val = F(n) * m if kind == "X" else m
                out.append(Stabilizer(f"{kind}_{site}[{b + j},{l}]", PauliVector.single(F, n, site - 1, kind, val)))
    return out


def stabilizer_conjugation_holds(plan: TransformPlan, lay: CircuitLayout, tol: float = TOL) -> bool:
    """Q S Q^-1 equals the single-site closed form for every generator."""
    Q = op_qfffft(plan)
    Qi = Q.adjoint()
    gens = stabilizer_generators(plan, lay)
    init = initial_stabilizers(plan, lay)
    if len(gens) != len(init):
        return False
    # both lists enumerate (kind, row, l) in the same order
    return all((Q @ s.pauli.operator() @ Qi).close_to(t.pauli.operator(), tol) for s, t in zip(gens, init))


def is_stabilized(state: QuditState, pauli: PauliVector, tol: float = TOL) -> bool:
    return pauli.apply(state).close_to(state, tol)


def codespace_projector(plan: TransformPlan, lay: CircuitLayout, limit: int = DENSE_SIDE_LIMIT) -> np.ndarray:
    """Product over check rows of the group average (1/d) sum_c S(c * row)."""
    F, n = plan.spec, plan.n
    side = F.order**n
    if side > limit:
        raise BudgetExceeded(f"projector of side {side} exceeds {limit}")
    P = np.eye(side, dtype=complex)
    for kind, b in (("X", lay.b1), ("Z", lay.b2)):
        for j in range(lay.delta - 1):
            x = plan.beta * plan.xi ** (b + j)
            row = [x**g for g in range(n)]
            avg = np.zeros((side, side), dtype=complex)
            for c in F.elements():
                avg += op_string(F, kind, [c * v for v in row]).matrix(limit)
            P = P @ (avg / F.order)
    return P


def codespace_dimension(plan: TransformPlan, lay: CircuitLayout) -> float:
    return float(np.trace(codespace_projector(plan, lay)).real)


# --------------------------------------------------------------------------
# syndrome extraction


@dataclass
class SyndromeReport:
    s_x: list[FieldElement]
    s_z: list[FieldElement]
    restored: QuditState
    registers: list[FieldElement]
    trace: dict[str, QuditState] = field(default_factory=dict)

    def __iter__(self):
        return iter((self.s_x, self.s_z, self.restored))

    def to_json(self) -> dict:
        return {
            "s_X": [str(x) for x in self.s_x],
            "s_Z": [str(x) for x in self.s_z],
            "registers": [str(x) for x in self.registers],
        }


def syndrome_oracle(plan: TransformPlan, lay: CircuitLayout, error: PauliVector) -> tuple[list, list]:
    """(alpha H_b2^T, gamma H_b1^T) by direct matrix products."""
    H1 = parity_matrix_hb(plan, lay.b1, lay.delta)
    H2 = parity_matrix_hb(plan, lay.b2, lay.delta)
    F = plan.spec
    sx = [sum((a * h for a, h in zip(error.alpha, row)), F.zero) for row in H2]
    sz = [sum((g * h for g, h in zip(error.gamma, row)), F.zero) for row in H1]
    return sx, sz


def syndrome_extract(
    plan: TransformPlan,
    lay: CircuitLayout,
    state: QuditState,
    budget: int = STATE_BUDGET,
    trace: bool = False,
) -> SyndromeReport:
    """Run the extraction circuit on state (n qudits) plus 2(delta-1) fresh ancillas.

    The X-ancilla registers read -(1/n) times the Z syndrome; the returned s_z
    is rescaled to gamma H_b1^T.
    """
    F, n = plan.spec, plan.n
    if state.num_qudits != n:
        raise DimensionMismatch(f"state has {state.num_qudits} qudits, code length is {n}")
    ns = lay.num_syndrome
    _check_dims(plan, budget, ns)
    Q = op_qfffft(plan)
    add = op_add(F)
    D = op_dft(F)
    full = state.tensor(QuditState.basis(F, [0] * ns)) if ns else state
    steps: dict[str, QuditState] = {}
    cw = list(range(n))
    v = Q.apply(full, cw)
    steps["v1"] = v
    for j, site in enumerate(lay.t_z):
        v = add.apply(v, [site - 1, n + j])
    steps["v2"] = v
    for site in lay.t_x:
        v = D.apply(v, [site - 1])
    steps["v3"] = v
    for j, site in enumerate(lay.t_x):
        v = add.apply(v, [site - 1, n + lay.n_z + j])
    steps["v4"] = v
    Di = D.adjoint()
    for site in lay.t_x:
        v = Di.apply(v, [site - 1])
    v = Q.adjoint().apply(v, cw)

    d = F.order
    M = v.amplitudes.reshape(d**n, d**ns)
    probs = (np.abs(M) ** 2).sum(axis=0)
    k = int(np.argmax(probs))
    if abs(probs[k] - 1.0) > TOL:
        raise NotBasisError("syndrome register is not in a basis state; only basis errors are supported")
    regs = list(_label(F, ns, k))
    restored = QuditState(F, n, M[:, k] / math.sqrt(probs[k]))
    minus_n = -F(n)
    s_x = regs[: lay.n_z]
    s_z = [minus_n * r for r in regs[lay.n_z:]]
    return SyndromeReport(s_x, s_z, restored, regs, steps if trace else {})


# --------------------------------------------------------------------------
# error deduction


def _codec(plan: TransformPlan, delta: int) -> CodecConfig:
    """Spectral codec over the whole field for the length-n, k = n - delta + 1 code."""
    full = plan.spec.with_subfield(plan.spec.kprime)
    p2 = make_plan(full, plan.n, beta=full.element(plan.beta.code), xi=full.element(plan.xi.code))
    return CodecConfig(p2, plan.n - delta + 1)


def decode_syndrome(plan: TransformPlan, b: int, delta: int, syndrome: Sequence, method: str = "spectral") -> list[FieldElement]:
    """Error vector e of weight <= floor((delta-1)/2) with e H_b^T = syndrome.

    The syndrome gives A_r = FFFT(e)_r for r = b..b+delta-2.  Placing
    E_{-l} = e_l beta^l xi^{lc} (c = b - k) in the spectral domain makes those
    values the top n-k coefficients of IFFFT(E), so the spectral decoder locates E.
    """
    F, n = plan.spec, plan.n
    syndrome = [F(s) for s in syndrome]
    if len(syndrome) != delta - 1:
        raise LengthMismatch(f"syndrome length {len(syndrome)} != delta - 1 = {delta - 1}")
    if not any(syndrome):
        return [F.zero] * n
    cfg = _codec(plan, delta)
    k, c = cfg.k, b - cfg.k
    mu = [F.zero] * n
    for j, s in enumerate(syndrome):
        i = k + j
        mu[i] = s / (F(n) * plan.beta**i)
    R = fffft(plan, mu)
    out = decode(cfg, R) if method == "spectral" else decode_reference(cfg, R)
    if not out.ok:
        raise DecodeFailure(f"syndrome not decodable: {out.reason}")
    E = [r - dd for r, dd in zip(R, out.spectrum)]
    err = [E[(-l) % n] / (plan.beta**l * plan.xi ** ((l * c) % n)) for l in range(n)]
    H = parity_matrix_hb(plan, b, delta)
    check = [sum((e * h for e, h in zip(err, row)), F.zero) for row in H]
    if check != syndrome:  # pragma: no cover - decoder output is always consistent
        raise DecodeFailure("decoded error does not reproduce the syndrome")
    return [F.element(x.code) for x in err]


@dataclass
class Recovery:
    state: QuditState
    correction: PauliVector


def deduce_and_recover(
    plan: TransformPlan, lay: CircuitLayout, s_x: Sequence, s_z: Sequence, state: QuditState, method: str = "spectral"
) -> Recovery:
    """Decode alpha from s_X (rows of H_b2) and gamma from s_Z (rows of H_b1); undo X(alpha)Z(gamma)."""
    alpha = decode_syndrome(plan, lay.b2, lay.delta, s_x, method)
    gamma = decode_syndrome(plan, lay.b1, lay.delta, s_z, method)
    corr = PauliVector(tuple(alpha), tuple(gamma))
    if corr.is_identity:
        return Recovery(state, corr)
    return Recovery(corr.undo(state), corr)


# --------------------------------------------------------------------------
# full cycle


@dataclass(frozen=True)
class QuantumCodeConfig:
    plan: TransformPlan
    b1: int
    b2: int
    delta: int

    @property
    def layout(self) -> CircuitLayout:
        return plan_layout(self.plan, self.b1, self.b2, self.delta)

    @property
    def t(self) -> int:
        return (self.delta - 1) // 2


@dataclass
class RoundTrip:
    error: PauliVector
    s_x: list[FieldElement]
    s_z: list[FieldElement]
    expected_s_x: list[FieldElement]
    expected_s_z: list[FieldElement]
    correction: PauliVector | None
    fidelity: float | None
    status: str

    @property
    def syndrome_matches(self) -> bool:
        return self.s_x == self.expected_s_x and self.s_z == self.expected_s_z

    def to_json(self) -> dict:
        return {
            "error": self.error.to_json(),
            "s_X": [str(x) for x in self.s_x],
            "s_Z": [str(x) for x in self.s_z],
            "syndrome_matches_oracle": self.syndrome_matches,
            "correction": None if self.correction is None else self.correction.to_json(),
            "fidelity": self.fidelity,
            "status": self.status,
        }


def roundtrip(cfg: QuantumCodeConfig, phi: QuditState, error: PauliVector, method: str = "spectral") -> RoundTrip:
    """encode -> apply error -> extract -> recover -> fidelity with the clean codeword.

    A decoder failure (more errors than the code corrects) is reported with
    status "detected" when the syndrome is nonzero.
    """
    lay = cfg.layout
    psi = encode_state(cfg.plan, lay, phi)
    rep = syndrome_extract(cfg.plan, lay, error.apply(psi))
    ex, ez = syndrome_oracle(cfg.plan, lay, error)
    try:
        rec = deduce_and_recover(cfg.plan, lay, rep.s_x, rep.s_z, rep.restored, method)
    except DecodeFailure:
        return RoundTrip(error, rep.s_x, rep.s_z, ex, ez, None, None, "detected")
    return RoundTrip(error, rep.s_x, rep.s_z, ex, ez, rec.correction, psi.fidelity(rec.state), "recovered")


def single_site_errors(spec: FieldSpec, n: int, kinds: Iterable[str] = ("X", "Z")) -> Iterator[PauliVector]:
    for kind in kinds:
        for site in range(n):
            for v in spec.elements()[1:]:
                yield PauliVector.single(spec, n, site, kind, v)
