"""Named constructions used by the reproduction suite, the CLI and the scripts."""

from __future__ import annotations

from dataclasses import dataclass

from .codes import (
    ConstacyclicCode,
    RepeatedRootSpec,
    code_from_generator,
    code_from_zero_set,
    factor_over_subfield,
    repeated_root_code,
)
from .decoder import CodecConfig
from .field import FieldElement, FieldSpec, build_field
from .transform import TransformPlan, make_plan

GF9_MODULUS = (2, 2, 1)
GF27_MODULUS = (1, 2, 0, 1)
GF64_MODULUS = (1, 1, 0, 1, 1, 0, 1)


def gf9(s: int = 2) -> FieldSpec:
    return build_field(3, 2, GF9_MODULUS, s)


def gf27(s: int = 3) -> FieldSpec:
    return build_field(3, 3, GF27_MODULUS, s)


def gf64(s: int = 6) -> FieldSpec:
    return build_field(2, 6, GF64_MODULUS, s)


# --------------------------------------------------------------------------
# length-50 codes over GF(9)


def length50_factors(lam_power: int | None = 5) -> list:
    """Irreducible factors of x^50 - w^5 (or x^50 - 1 when lam_power is None) over GF(9)."""
    F = gf9()
    lam = F.one if lam_power is None else F.w**lam_power
    return factor_over_subfield(F, 50, lam, 2)


@dataclass(frozen=True)
class NamedCode:
    name: str
    code: ConstacyclicCode
    expected_distance: int


def length50_codes() -> list[NamedCode]:
    """[50,40] codes: constacyclic (quadratic product, each degree-10 factor) and cyclic variants."""
    F = gf9()
    out = []
    for lam_power, label in ((5, "constacyclic"), (None, "cyclic")):
        lam = F.w**lam_power if lam_power is not None else F.one
        fs = length50_factors(lam_power)
        small = [f for f in fs if f.degree <= 2]
        g = small[0]
        for f in small[1:]:
            g = g * f
        out.append(NamedCode(f"{label}/low-degree-product", code_from_generator(F, 50, lam, g, 2), 2))
        for f in fs:
            if f.degree == 10:
                d = 3 if lam_power is not None else 2
                out.append(NamedCode(f"{label}/{f.pretty()}", code_from_generator(F, 50, lam, f, 2), d))
    return out


# --------------------------------------------------------------------------
# spectral decoding examples


def gf27_plan() -> TransformPlan:
    """n = 13, beta = -1, xi = w^2, lambda = w^13 over GF(27)."""
    F = gf27()
    return make_plan(F, 13, beta=-F.one, xi=F.w**2)


def gf27_codec(k: int = 3) -> CodecConfig:
    return CodecConfig(gf27_plan(), k)


def gf27_received() -> list[FieldElement]:
    F = gf27()
    R = [F.zero] * 13
    R[9] = F.w
    return R


GF27_MU_POWERS = (1, 22, 17, 12, 7, 2, 23, 18, 13, 8, 3, 24, 19)


def gf27_expected_mu() -> list[FieldElement]:
    F = gf27()
    return [F.w**e for e in GF27_MU_POWERS]


def gf9_plan() -> TransformPlan:
    """n = 4, beta = -w, xi = w^2 over GF(9); message alphabet GF(3)."""
    F = gf9(1)
    return make_plan(F, 4, beta=-F.w, xi=F.w**2)


def gf9_codec() -> CodecConfig:
    return CodecConfig(gf9_plan(), 1)


def gf9_received() -> list[FieldElement]:
    F = gf9(1)
    return [F(0), F(1), F(1), F(1)]


# --------------------------------------------------------------------------
# simple-root CSS examples


def css_13_3() -> ConstacyclicCode:
    """Zeros beta xi^r, r = 0..9, on the GF(27) length-13 plan: a [13,3] code."""
    return code_from_zero_set(gf27_plan(), 3, range(10))


def css_13_9() -> ConstacyclicCode:
    """Zeros r = 9..12 (roots -w^18, ..., -w^24): a [13,9] code."""
    return code_from_zero_set(gf27_plan(), 3, [9, 10, 11, 12])


def gf64_plan() -> TransformPlan:
    F = gf64()
    return make_plan(F, 7, beta=F.one, xi=F.w**9)


def css_7_3() -> ConstacyclicCode:
    """Roots 1, w^9, w^18, w^27 in GF(64): a cyclic [7,3] code."""
    return code_from_zero_set(gf64_plan(), 6, [0, 1, 2, 3])


# --------------------------------------------------------------------------
# repeated-root examples


def rr_117() -> RepeatedRootSpec:
    """L = 9 * 13 over GF(27), every linear factor to the power 5."""
    return RepeatedRootSpec.uniform(gf27_plan(), 2, 3, 5)


def gf81() -> FieldSpec:
    return build_field(3, 4, "auto", 4)


def gf81_plan() -> TransformPlan:
    F = gf81()
    return make_plan(F, 8, beta=F.w**5, xi=F.w**10)


def exponent_of_factor(plan: TransformPlan, e: int) -> int:
    """r with beta xi^r = -w^e, i.e. the root of the factor (x + w^e)."""
    root = (-(plan.spec.w**e)).code
    return plan.points.index(root)


def rr_24() -> RepeatedRootSpec:
    """L = 3 * 8 over GF(81): (x + w^e)^3 for e in 5, 15, 25, 45, 55, 65.

    The factor (x + w^45) is taken to the power 3, the largest exponent allowed
    for p^eta = 3.
    """
    plan = gf81_plan()
    mult = {exponent_of_factor(plan, e): 3 for e in (5, 15, 25, 45, 55, 65)}
    return RepeatedRootSpec.from_zero_exponents(plan, 1, 4, mult)


def gf16_plan() -> TransformPlan:
    F = build_field(2, 4, "auto", 1)
    return make_plan(F, 5, beta=F.one, xi=F.w**3)


def rr_20() -> RepeatedRootSpec:
    """L = 4 * 5 over GF(2): g = (x+1)^3 (x^4+x^3+x^2+x+1)^3."""
    return RepeatedRootSpec.uniform(gf16_plan(), 2, 1, 3)


def repeated_root_examples() -> dict[str, tuple[RepeatedRootSpec, ConstacyclicCode]]:
    out = {}
    for name, fn in (("L117", rr_117), ("L24", rr_24), ("L20", rr_20)):
        spec = fn()
        out[name] = (spec, repeated_root_code(spec))
    return out
