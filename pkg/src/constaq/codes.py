"""Constacyclic codes: zero sets, duals, containment and CSS parameters.

Zero sets are exponents r of roots beta*xi^r of x^n - lam, with (beta, xi)
taken from a TransformPlan.  A code over GF(q), q = p^s, needs a zero set
closed under the q-power map, which on exponents is r -> q*r + c with
beta^(q-1) = xi^c.  Inversion of roots is r -> -r - e with beta^2 = xi^e; it
pairs each zero of h with a zero of the dual generator.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import distance as _dist
from .errors import (
    AlphabetViolation,
    BudgetExceeded,
    ContainmentViolated,
    FieldMismatch,
    InconsistentVerdict,
    InvalidPlan,
    LengthMismatch,
    NotConjugacyClosed,
    RepeatedRootPlan,
)
from .field import FieldElement, FieldSpec
from .linalg import is_zero, matmul_t, nullspace, rank, rref
from .poly import Polynomial, factor_squarefree, min_poly, product, sort_polys
from .transform import TransformPlan, make_plan, xi_exponent

WEAKLY_SELF_DUAL = "weakly-self-dual"
DUAL_CONTAINING = "dual-containing"
SELF_DUAL = "self-dual"
NO_CONTAINMENT = "none"


# --------------------------------------------------------------------------
# factorisation


def factor_xn_minus_lambda(plan: TransformPlan) -> list[tuple[int, Polynomial]]:
    """(r, x - beta xi^r) for r = 0..n-1."""
    F = plan.spec
    if plan.n % F.p == 0:
        raise RepeatedRootPlan("x^n - lambda has repeated roots")
    x = Polynomial.x(F)
    return [(r, x - FieldElement(F, c)) for r, c in enumerate(plan.points)]


def conjugation_shift(plan: TransformPlan, s: int) -> int:
    c = plan.conjugation_shift(s)
    if c is None:
        raise InvalidPlan(f"beta^(q-1) is not a power of xi for q = {plan.spec.p}^{s}")
    return c


def inversion_shift(plan: TransformPlan) -> int | None:
    """e with beta^2 = xi^e; None when lam^2 != 1."""
    return xi_exponent(plan, plan.beta**2)


def factor_over_subfield(
    spec: FieldSpec, n: int, lam, s: int, plan: TransformPlan | None = None, seed: int = 0
) -> list[Polynomial]:
    """Irreducible factors of x^n - lam over GF(p^s).

    With a plan the factors are products over q-orbits of root exponents;
    otherwise (roots outside the field) Cantor-Zassenhaus is run directly.
    """
    lam = spec(lam)
    if plan is None and (spec.order - 1) % n == 0 and n % spec.p:
        try:
            plan = make_plan(spec, n, lam=lam)
        except InvalidPlan:
            plan = None
    if plan is not None:
        out = []
        for coset in plan_cosets(plan, s):
            out.append(_orbit_poly(plan, coset.members))
        return sort_polys(out)
    if n % spec.p == 0:
        raise RepeatedRootPlan("factor_over_subfield expects p not dividing n")
    return sort_polys(factor_squarefree(Polynomial.binomial(spec, n, lam), s, seed=seed))


def _orbit_poly(plan: TransformPlan, exps: Iterable[int]) -> Polynomial:
    F = plan.spec
    return Polynomial.from_roots(F, [FieldElement(F, plan.points[r % plan.n]) for r in exps])


# --------------------------------------------------------------------------
# cyclotomic cosets


@dataclass(frozen=True)
class CyclotomicCoset:
    representative: int
    members: tuple[int, ...]
    kind: str
    partner: int

    @property
    def symmetric(self) -> bool:
        return self.kind == "symmetric"

    def __contains__(self, r: int) -> bool:
        return r in self.members

    def __len__(self) -> int:
        return len(self.members)


def cyclotomic_cosets(n: int, q: int, shift: int = 0, partner_shift: int = 0) -> list[CyclotomicCoset]:
    """Orbits of r -> q*r + shift (mod n), tagged by whether they contain -r - partner_shift."""
    seen: set[int] = set()
    orbits: list[list[int]] = []
    for r in range(n):
        if r in seen:
            continue
        orb = []
        x = r
        while x not in orb:
            orb.append(x)
            x = (q * x + shift) % n
        seen.update(orb)
        orbits.append(orb)
    owner = {m: orb[0] for orb in orbits for m in orb}
    out = []
    for orb in orbits:
        rep = orb[0]
        partner = owner[(-rep - partner_shift) % n]
        kind = "symmetric" if partner == rep else "asymmetric"
        out.append(CyclotomicCoset(rep, tuple(sorted(orb)), kind, partner))
    return out


def plan_cosets(plan: TransformPlan, s: int) -> list[CyclotomicCoset]:
    e = inversion_shift(plan)
    return cyclotomic_cosets(
        plan.n, plan.spec.p**s, shift=conjugation_shift(plan, s), partner_shift=0 if e is None else e
    )


def close_zero_set(plan: TransformPlan, s: int, zero_set: Iterable[int]) -> tuple[int, ...]:
    zs = {r % plan.n for r in zero_set}
    out: set[int] = set()
    for c in plan_cosets(plan, s):
        if zs & set(c.members):
            out.update(c.members)
    return tuple(sorted(out))


def consecutive_zero_run(zero_set: Iterable[int], n: int) -> int:
    """Longest run of consecutive residues mod n, wrapping past n-1."""
    zs = {r % n for r in zero_set}
    if len(zs) == n:
        return n
    best = 0
    for r in zs:
        if (r - 1) % n in zs:
            continue
        run = 0
        while (r + run) % n in zs:
            run += 1
        best = max(best, run)
    return best


# --------------------------------------------------------------------------
# codes


@dataclass(frozen=True, eq=False)
class ConstacyclicCode:
    spec: FieldSpec
    s: int
    n: int
    lam: FieldElement
    generator: Polynomial
    plan: TransformPlan | None = None
    zero_set: tuple[int, ...] | None = None
    designed_distance: int | None = None
    bch_start: int | None = None
    repeated: "RepeatedRootSpec | None" = None
    label: str = ""

    def __post_init__(self):
        F = self.spec
        xn = Polynomial.binomial(F, self.n, self.lam)
        if not self.generator.divides(xn):
            raise InvalidPlan("generator does not divide x^n - lambda")
        if not self.generator.in_subfield(self.s):
            raise AlphabetViolation(f"generator has coefficients outside GF({F.p}^{self.s})")

    @property
    def q(self) -> int:
        return self.spec.p**self.s

    @property
    def k(self) -> int:
        return self.n - self.generator.degree

    @functools.cached_property
    def check_polynomial(self) -> Polynomial:
        return Polynomial.binomial(self.spec, self.n, self.lam).exact_div(self.generator)

    @functools.cached_property
    def generator_matrix(self) -> list[list[int]]:
        g = list(self.generator.codes)
        return [[0] * i + g + [0] * (self.n - len(g) - i) for i in range(self.k)]

    @functools.cached_property
    def parity_matrix(self) -> list[list[int]]:
        """Generator matrix of the dual, built from shifts of h-dagger."""
        hd = list(dual_generator(self).codes)
        return [[0] * i + hd + [0] * (self.n - len(hd) - i) for i in range(self.n - self.k)]

    def contains(self, word: Sequence) -> bool:
        v = [self.spec(x).code for x in word]
        if len(v) != self.n:
            raise LengthMismatch(f"expected length {self.n}")
        if not all(x in self._alphabet for x in v):
            return False
        return all(row[0] == 0 for row in matmul_t(self.spec, self.parity_matrix, [v]))

    @functools.cached_property
    def _alphabet(self) -> frozenset[int]:
        return frozenset(self.spec.subfield_codes(self.s))

    def encode_poly(self, message: Sequence) -> list[FieldElement]:
        m = Polynomial(self.spec, [self.spec(x) for x in message])
        return (m * self.generator).padded(self.n)

    def roots_label(self) -> str:
        return f"[{self.n},{self.k}]"

    def descriptor(self) -> dict:
        F = self.spec
        out = {
            "field": F.descriptor(),
            "s": self.s,
            "n": self.n,
            "k": self.k,
            "lambda": str(self.lam),
            "generator": self.generator.to_json(),
        }
        if self.plan is not None:
            out["beta"] = str(self.plan.beta)
            out["xi"] = str(self.plan.xi)
        if self.zero_set is not None:
            out["zero_set"] = list(self.zero_set)
        if self.designed_distance is not None:
            out["designed_distance"] = self.designed_distance
        return out

    def __repr__(self) -> str:
        return f"ConstacyclicCode([{self.n},{self.k}] over GF({self.q}), lambda={self.lam})"


def code_from_generator(spec: FieldSpec, n: int, lam, g: Polynomial, s: int, label: str = "") -> ConstacyclicCode:
    return ConstacyclicCode(spec, s, n, spec(lam), g.monic(), label=label)


def code_from_zero_set(
    plan: TransformPlan, s: int, zero_set: Iterable[int], strict: bool = False
) -> ConstacyclicCode:
    zs = tuple(sorted({r % plan.n for r in zero_set}))
    closed = close_zero_set(plan, s, zs)
    if strict and closed != zs:
        raise NotConjugacyClosed(f"zero set {zs} is not closed; closure is {closed}")
    g = _orbit_poly(plan, closed)
    run = consecutive_zero_run(closed, plan.n)
    return ConstacyclicCode(plan.spec, s, plan.n, plan.lam, g, plan, closed, designed_distance=run + 1)


def bch_code(plan: TransformPlan, s: int, b: int, delta: int) -> ConstacyclicCode:
    if not 0 <= delta <= plan.n + 1:
        raise InvalidPlan("designed distance out of range")
    base = [(b + i) % plan.n for i in range(max(delta - 1, 0))]
    code = code_from_zero_set(plan, s, base)
    return ConstacyclicCode(
        code.spec, s, plan.n, plan.lam, code.generator, plan, code.zero_set,
        designed_distance=max(delta, code.designed_distance), bch_start=b % plan.n,
    )


def _monic_reciprocal(f: Polynomial) -> Polynomial:
    return f.reciprocal().monic()


def dual_generator(code: ConstacyclicCode) -> Polynomial:
    """h-dagger: monic reciprocal of h = (x^n - lam)/g; generates the lam^-1-constacyclic dual."""
    return _monic_reciprocal(code.check_polynomial)


def dual_zero_set(code: ConstacyclicCode) -> tuple[int, ...] | None:
    """Exponents (in the code's own plan) of the roots of h-dagger, when lam^2 = 1."""
    if code.plan is None or code.zero_set is None or code.repeated is not None:
        return None
    e = inversion_shift(code.plan)
    if e is None:
        return None
    zs = set(code.zero_set)
    return tuple(sorted((-r - e) % code.n for r in range(code.n) if r not in zs))


def dual_code(code: ConstacyclicCode) -> ConstacyclicCode:
    F = code.spec
    hd = dual_generator(code)
    lam_d = code.lam.inv()
    if code.repeated is not None:
        return ConstacyclicCode(F, code.s, code.n, lam_d, hd, repeated=code.repeated.dual())
    if code.plan is None or code.zero_set is None:
        return ConstacyclicCode(F, code.s, code.n, lam_d, hd)
    zs = dual_zero_set(code)
    if zs is not None:
        plan = code.plan
    else:
        # roots beta^-1 xi^-r of h-dagger are the points of the plan (beta^-1, xi^-1)
        plan = code.plan.dual()
        zs = tuple(sorted(r for r in range(code.n) if r not in set(code.zero_set)))
    run = consecutive_zero_run(zs, code.n)
    return ConstacyclicCode(F, code.s, code.n, lam_d, hd, plan, zs, designed_distance=run + 1)


# --------------------------------------------------------------------------
# containment


@dataclass(frozen=True)
class ContainmentReport:
    weakly_self_dual: bool
    dual_containing: bool
    methods: tuple[str, ...]

    @property
    def verdict(self) -> str:
        if self.weakly_self_dual and self.dual_containing:
            return SELF_DUAL
        if self.weakly_self_dual:
            return WEAKLY_SELF_DUAL
        if self.dual_containing:
            return DUAL_CONTAINING
        return NO_CONTAINMENT


def _agree(name: str, values: dict[str, bool]) -> bool:
    vals = set(values.values())
    if len(vals) != 1:
        raise InconsistentVerdict(f"{name}: criteria disagree {values}")
    return vals.pop()


def containment_report(code: ConstacyclicCode) -> ContainmentReport:
    """Weak self-duality and dual containment, by every applicable criterion.

    The Gram test (G G^T = 0, resp. H H^T = 0) always runs.  When lam^2 = 1 the
    divisibility tests on g g-dagger and, for plan-defined codes, the zero-set
    inclusions are added; all must agree.
    """
    F = code.spec
    G, H = code.generator_matrix, code.parity_matrix
    wsd = {"gram": is_zero(matmul_t(F, G, G)) if G else True}
    dc = {"gram": is_zero(matmul_t(F, H, H)) if H else True}
    if code.lam * code.lam == 1:
        xn = Polynomial.binomial(F, code.n, code.lam)
        gg = code.generator * _monic_reciprocal(code.generator)
        wsd["divisibility"] = xn.divides(gg)
        dc["divisibility"] = gg.divides(xn)
        zd = dual_zero_set(code)
        if zd is not None:
            wsd["zero-set"] = set(zd) <= set(code.zero_set)
            dc["zero-set"] = set(code.zero_set) <= set(zd)
    return ContainmentReport(_agree("C in C-perp", wsd), _agree("C-perp in C", dc), tuple(wsd))


def is_weakly_self_dual(code: ConstacyclicCode) -> bool:
    return containment_report(code).weakly_self_dual


def is_dual_containing(code: ConstacyclicCode) -> bool:
    return containment_report(code).dual_containing


# --------------------------------------------------------------------------
# repeated-root codes


@dataclass(frozen=True)
class RepeatedRootSpec:
    """Length L = p^eta * n; exponent e_C (0..p^eta) on each coset polynomial M_C."""

    plan: TransformPlan
    eta: int
    s: int
    exponents: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pe = self.plan.spec.p**self.eta
        reps = {c.representative for c in self.cosets}
        for rep, e in self.exponents:
            if rep not in reps:
                raise InvalidPlan(f"{rep} is not a coset representative")
            if not 0 <= e <= pe:
                raise InvalidPlan(f"exponent {e} outside [0, {pe}]")

    @property
    def n(self) -> int:
        return self.plan.n

    @property
    def p_eta(self) -> int:
        return self.plan.spec.p**self.eta

    @property
    def L(self) -> int:
        return self.p_eta * self.plan.n

    @property
    def lam(self) -> FieldElement:
        return self.plan.beta**self.L

    @functools.cached_property
    def cosets(self) -> list[CyclotomicCoset]:
        return plan_cosets(self.plan, self.s)

    def exponent(self, rep: int) -> int:
        return dict(self.exponents).get(rep, 0)

    def coset_poly(self, coset: CyclotomicCoset) -> Polynomial:
        return _orbit_poly(self.plan, coset.members)

    def dual(self) -> "RepeatedRootSpec":
        """Exponents of h-dagger: p^eta - e on the partner of each coset."""
        if inversion_shift(self.plan) is None:
            raise InvalidPlan("lambda^2 != 1: the dual is not described on this plan")
        pe = self.p_eta
        return RepeatedRootSpec(
            self.plan, self.eta, self.s,
            tuple((c.partner, pe - self.exponent(c.representative)) for c in self.cosets),
        )

    @classmethod
    def uniform(cls, plan: TransformPlan, eta: int, s: int, e: int) -> "RepeatedRootSpec":
        reps = [c.representative for c in plan_cosets(plan, s)]
        return cls(plan, eta, s, tuple((r, e) for r in reps))

    @classmethod
    def from_zero_exponents(cls, plan: TransformPlan, eta: int, s: int, mult: dict[int, int]) -> "RepeatedRootSpec":
        """Exponents keyed by any member r of a coset (missing cosets get 0)."""
        out = {}
        for c in plan_cosets(plan, s):
            vals = {mult.get(r, 0) for r in c.members}
            if len(vals) != 1:
                raise NotConjugacyClosed(f"multiplicities differ across coset {c.members}")
            out[c.representative] = vals.pop()
        return cls(plan, eta, s, tuple(sorted(out.items())))


def repeated_root_code(spec: RepeatedRootSpec) -> ConstacyclicCode:
    F = spec.plan.spec
    g = Polynomial.constant(F, 1)
    zs: list[int] = []
    for c in spec.cosets:
        e = spec.exponent(c.representative)
        if e:
            g = g * spec.coset_poly(c) ** e
            zs.extend(r for r in c.members for _ in range(e))
    return ConstacyclicCode(F, spec.s, spec.L, spec.lam, g, None, tuple(sorted(zs)), repeated=spec)


@dataclass(frozen=True)
class RepeatedRootVerdict:
    verdict: str
    weakly_self_dual: bool
    dual_containing: bool
    cross_checked: tuple[str, ...]


def repeated_root_containment(spec: RepeatedRootSpec, cross_check_limit: int = 128) -> RepeatedRootVerdict:
    """Exponent inequalities e_C + e_partner >= p^eta (C in C-perp) and <= p^eta (C-perp in C)."""
    if inversion_shift(spec.plan) is None:
        raise InvalidPlan("coset pairing needs lambda^2 = 1")
    pe = spec.p_eta
    sums = [spec.exponent(c.representative) + spec.exponent(c.partner) for c in spec.cosets]
    wsd = all(t >= pe for t in sums)
    dc = all(t <= pe for t in sums)
    checks = ["inequalities"]
    code = repeated_root_code(spec)
    F = spec.plan.spec
    xl = Polynomial.binomial(F, spec.L, spec.lam)
    gg = code.generator * _monic_reciprocal(code.generator)
    hd = dual_generator(code)
    _agree("C in C-perp", {"inequalities": wsd, "divisibility": xl.divides(gg), "h-dagger | g": hd.divides(code.generator)})
    _agree("C-perp in C", {"inequalities": dc, "divisibility": gg.divides(xl), "g | h-dagger": code.generator.divides(hd)})
    checks += ["divisibility", "h-dagger"]
    if spec.L <= cross_check_limit:
        rep = containment_report(code)
        _agree("C in C-perp (gram)", {"inequalities": wsd, "gram": rep.weakly_self_dual})
        _agree("C-perp in C (gram)", {"inequalities": dc, "gram": rep.dual_containing})
        checks.append("gram")
    report = ContainmentReport(wsd, dc, tuple(checks))
    return RepeatedRootVerdict(report.verdict, wsd, dc, tuple(checks))


# --------------------------------------------------------------------------
# distances


def bch_bound(code: ConstacyclicCode) -> int:
    """One plus the longest consecutive zero run; 1 for repeated-root codes, where it does not apply."""
    if code.zero_set is None or code.repeated is not None:
        return 1
    return consecutive_zero_run(code.zero_set, code.n) + 1


def _digit_product(t: int, p: int) -> int:
    out = 1
    while t:
        t, d = divmod(t, p)
        out *= d + 1
    return out


def repeated_root_distance(spec: RepeatedRootSpec, budget: int = _dist.DEFAULT_BUDGET) -> int:
    """min over 0 <= t < p^eta of P_t * d(C_t).

    C_t is the simple-root code of length n whose zeros are the cosets with
    exponent > t, and P_t is the product of (digit + 1) over the base-p digits
    of t; this is the standard repeated-root distance formula.
    """
    best = None
    plan = spec.plan
    for t in range(spec.p_eta):
        zs = [r for c in spec.cosets if spec.exponent(c.representative) > t for r in c.members]
        if len(zs) == plan.n:
            continue
        sub = code_from_zero_set(plan, spec.s, zs)
        d = distance_result(sub, budget).value * _digit_product(t, spec.plan.spec.p)
        best = d if best is None else min(best, d)
    return spec.L + 1 if best is None else best


def min_distance_bruteforce(code: ConstacyclicCode, budget: int = _dist.DEFAULT_BUDGET) -> int:
    """Exact minimum distance; BudgetExceeded carries the best proven lower bound."""
    return distance_result(code, budget).value


def distance_result(code: ConstacyclicCode, budget: int = _dist.DEFAULT_BUDGET) -> _dist.DistanceResult:
    if code.repeated is not None and code.k and min(code.q**code.k, code.q ** (code.n - code.k)) > budget:
        return _dist.DistanceResult(repeated_root_distance(code.repeated, budget), True, "repeated-root", 0)
    try:
        return _dist.minimum_distance(
            code.spec, code.generator_matrix, code.n, code.s, H=code.parity_matrix, budget=budget
        )
    except BudgetExceeded as exc:
        lb = max(exc.lower_bound or 1, bch_bound(code))
        raise BudgetExceeded(f"{code!r}: {exc}", lower_bound=lb) from None


def distance_or_bound(code: ConstacyclicCode, budget: int = _dist.DEFAULT_BUDGET) -> tuple[int, bool]:
    """(distance, exact); falls back to the proven lower bound when over budget."""
    try:
        return distance_result(code, budget).value, True
    except BudgetExceeded as exc:
        return exc.lower_bound, False


def min_weight_outside(
    F: FieldSpec,
    big_G: Sequence[Sequence[int]],
    big_H: Sequence[Sequence[int]],
    small_H: Sequence[Sequence[int]],
    n: int,
    s: int,
    budget: int = _dist.DEFAULT_BUDGET,
) -> int | None:
    """min wt(c) over c in span(big_G) not in ker(small_H); None if the difference is empty."""
    big_G = rref(F, big_G)[0]
    small_H = [list(r) for r in small_H]
    if not small_H:
        return None
    q = F.p**s
    if q ** len(big_G) <= budget:
        P = np.asarray(small_H, dtype=np.int64)
        best = None
        for block in _dist.iter_codewords(F, big_G, s):
            syn = np.zeros((len(block), len(P)), dtype=np.int64)
            for i in range(n):
                col = block[:, i : i + 1]
                if col.any():
                    syn = F.np_add(syn, F.np_mul(col, P[:, i][None, :]))
            outside = syn.any(axis=1)
            if outside.any():
                w = int(np.count_nonzero(block[outside], axis=1).min())
                best = w if best is None else min(best, w)
        return best

    def accept(cw: list[int]) -> bool:
        return not all(r[0] == 0 for r in matmul_t(F, small_H, [cw]))

    res = _dist.low_weight_search(F, big_H, n, s, n, budget=budget, accept=accept)
    return res.weight


# --------------------------------------------------------------------------
# CSS


@dataclass
class CssCandidate:
    c1: ConstacyclicCode
    c2: ConstacyclicCode
    containment: str
    qn: int
    qk: int
    qd_lower: int
    qd_exact: int | None = None
    distances: dict = field(default_factory=dict)
    exact: bool = True

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.qn, self.qk, self.qd_exact if self.qd_exact is not None else self.qd_lower)

    def label(self) -> str:
        n, k, d = self.params
        return f"[[{n},{k},{d}]]"

    def to_json(self) -> dict:
        return {
            "n": self.qn,
            "k": self.qk,
            "d_lower": self.qd_lower,
            "d_exact": self.qd_exact,
            "containment": self.containment,
            "classical": self.distances,
        }


def _quantum_singleton(n: int, k: int) -> int:
    """Largest d allowed by n - k >= 2(d - 1)."""
    return (n - k) // 2 + 1


def derive_css(
    c1: ConstacyclicCode,
    c2: ConstacyclicCode | None = None,
    budget: int = _dist.DEFAULT_BUDGET,
    exact: bool = True,
) -> CssCandidate:
    """Quantum parameters from one code (C in C-perp or C-perp in C) or a pair with C1-perp in C2."""
    F = c1.spec
    n = c1.n
    if c2 is None:
        rep = containment_report(c1)
        dual = dual_code(c1)
        d_c, ex_c = distance_or_bound(c1, budget)
        d_d, ex_d = distance_or_bound(dual, budget)
        dists = {f"[{n},{c1.k}]": d_c, f"[{n},{dual.k}]": d_d}
        if rep.weakly_self_dual:
            small, big = c1, dual
            qk, d_low, ex = n - 2 * c1.k, d_d, ex_d
            kind = rep.verdict
        elif rep.dual_containing:
            small, big = dual, c1
            qk, d_low, ex = 2 * c1.k - n, d_c, ex_c
            kind = DUAL_CONTAINING
        else:
            raise ContainmentViolated(f"{c1!r} is neither weakly self-dual nor dual-containing")
        qd = None
        if exact:
            try:
                qd = min_weight_outside(F, big.generator_matrix, big.parity_matrix, small.parity_matrix, n, c1.s, budget)
            except BudgetExceeded:
                qd = None
        if qd is None and ex and d_low >= _quantum_singleton(n, qk):
            qd = d_low
        return CssCandidate(small, big, kind, n, qk, d_low, qd, dists, ex_c and ex_d)
    if c2.n != n or not F.compatible(c2.spec):
        raise FieldMismatch("CSS pair must share length and field")
    # C1-perp in C2  <=>  H2 . (generator of C1-perp)^T = 0
    if not is_zero(matmul_t(F, c2.parity_matrix, c1.parity_matrix)):
        raise ContainmentViolated("C1-perp is not contained in C2")
    d1, e1 = distance_or_bound(c1, budget)
    d2, e2 = distance_or_bound(c2, budget)
    qd = None
    if exact:
        try:
            a = min_weight_outside(F, c2.generator_matrix, c2.parity_matrix, c1.generator_matrix, n, c1.s, budget)
            b = min_weight_outside(F, c1.generator_matrix, c1.parity_matrix, c2.generator_matrix, n, c1.s, budget)
            cands = [x for x in (a, b) if x is not None]
            qd = min(cands) if cands else None
        except BudgetExceeded:
            qd = None
    qk = c1.k + c2.k - n
    if qd is None and e1 and e2 and min(d1, d2) >= _quantum_singleton(n, qk):
        qd = min(d1, d2)
    return CssCandidate(
        c1, c2, "pair", n, qk, min(d1, d2), qd,
        {"C1": d1, "C2": d2}, e1 and e2,
    )


# --------------------------------------------------------------------------
# spectral check matrices


def parity_matrix_hb(plan: TransformPlan, b: int, delta: int) -> list[list[FieldElement]]:
    """Rows ((beta xi^j)^i)_i for j = b..b+delta-2."""
    F = plan.spec
    rows = []
    for t in range(delta - 1):
        j = (b + t) % plan.n
        rows.append([FieldElement(F, c) for c in plan.forward_matrix[j]])
    return rows


def spectral_rows(code: ConstacyclicCode) -> list[list[FieldElement]]:
    if code.plan is None or code.zero_set is None:
        raise InvalidPlan("spectral check matrix needs a plan-defined code")
    if code.bch_start is not None and code.designed_distance is not None:
        return parity_matrix_hb(code.plan, code.bch_start, code.designed_distance)
    F = code.spec
    return [[FieldElement(F, c) for c in code.plan.forward_matrix[r]] for r in code.zero_set]


def check_matrix_css(c1: ConstacyclicCode, c2: ConstacyclicCode) -> list[list[FieldElement]]:
    """Block matrix [w^l H1 | 0 ; 0 | w^l H2], l = 0..k'-1, with w the primitive element."""
    F = c1.spec
    H1, H2 = spectral_rows(c1), spectral_rows(c2)
    n = c1.n
    zero = F.zero
    out = []
    for H, left in ((H1, True), (H2, False)):
        for l in range(F.kprime):
            m = F.w**l
            for row in H:
                scaled = [m * x for x in row]
                out.append(scaled + [zero] * n if left else [zero] * n + scaled)
    return out


def columns_independent(rows: Sequence[Sequence[FieldElement]], cols: Sequence[int]) -> bool:
    F = rows[0][0].owner
    sub = [[r[c].code for r in rows] for c in cols]
    return rank(F, sub) == len(cols)
