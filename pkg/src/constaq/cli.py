"""Command-line front end.

Exit codes: 0 ok, 1 usage or other library error, 2 invalid plan, 3 containment
violated, 4 enumeration budget exceeded, 5 decoding failure, 6 simulation budget
exceeded, 7 reproduction differs from the golden file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from importlib import resources
from typing import Any, Sequence

import numpy as np

from . import catalog
from .codes import (
    ContainmentReport,
    bch_code,
    code_from_zero_set,
    containment_report,
    cyclotomic_cosets,
    derive_css,
    distance_result,
    dual_code,
    factor_over_subfield,
    factor_xn_minus_lambda,
    RepeatedRootSpec,
    plan_cosets,
    repeated_root_code,
    repeated_root_containment,
)
from .decoder import TABLE1, CodecConfig, decode, encode, op_counts
from .errors import (
    BudgetExceeded,
    ConstaqError,
    ContainmentViolated,
    DecodeFailure,
    InvalidPlan,
)
from .field import FieldSpec, parse_field_descriptor, parse_vector
from .transform import TransformPlan, fffft, ifffft, make_plan

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PLAN = 2
EXIT_CONTAINMENT = 3
EXIT_BUDGET = 4
EXIT_DECODE = 5
EXIT_SIM_BUDGET = 6
EXIT_GOLDEN = 7

# smallest configuration that corrects one error while staying within the state budget
QSIM_DEFAULT_FIELD = "GF(5)"
QSIM_DEFAULT_N = 4


# --------------------------------------------------------------------------
# parsing


def parse_field(text: str, s: int | None = None) -> FieldSpec:
    """`GF(q)`, `GF(p^k)`, optionally followed by `;c0,c1,...` (or `;auto`) and `;s=..`."""
    F = parse_field_descriptor(text)
    return F.with_subfield(s) if s is not None else F


def parse_ints(text: str | None) -> list[int]:
    if not text:
        return []
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def seed_from(args) -> int:
    env = os.environ.get("CONSTAQ_SEED")
    return int(env) if env is not None else args.seed


def build_plan(args) -> TransformPlan:
    F = parse_field(args.field, getattr(args, "s", None))
    beta = F(args.beta) if args.beta is not None else None
    xi = F(args.xi) if args.xi is not None else None
    lam = F(args.lam) if args.lam is not None else None
    return make_plan(F, args.n, beta=beta, xi=xi, lam=lam)


# --------------------------------------------------------------------------
# output


class Report:
    def __init__(self, args):
        self.fmt = args.format
        self.path = args.output
        self.lines: list[str] = []
        self.data: dict[str, Any] = {}

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def set(self, key: str, value) -> None:
        self.data[key] = value

    def emit(self) -> None:
        text = json.dumps(self.data, indent=2, default=str) if self.fmt == "json" else "\n".join(self.lines)
        if self.path:
            with open(self.path, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)


# --------------------------------------------------------------------------
# commands


def cmd_field(args, rep: Report) -> int:
    F = parse_field(args.field)
    rep.set("field", F.to_json())
    rep.set("w", str(F.w))
    rep.line(F.descriptor())
    rep.line(f"primitive element w has coefficients {F.w.coeffs}")
    if args.elements:
        elems = [(str(e), list(e.coeffs)) for e in F.elements()]
        rep.set("elements", elems)
        for name, c in elems:
            rep.line(f"  {name:>6}  {tuple(c)}")
    return EXIT_OK


def cmd_factor(args, rep: Report) -> int:
    F = parse_field(args.field, args.s)
    try:
        plan = build_plan(args)
    except InvalidPlan as e:
        # no transform over this field; the subfield factorization still makes sense
        plan, lam, lin = None, F(args.lam) if args.lam is not None else F.one, []
        rep.line(f"(no linear splitting: {e})")
    else:
        lam, lin = plan.lam, factor_xn_minus_lambda(plan)
    sub = factor_over_subfield(F, args.n, lam, F.s, plan=plan)
    rep.set("plan", plan.descriptor() if plan else None)
    rep.set("linear", [{"r": r, "factor": f.pretty()} for r, f in lin])
    rep.set("subfield", [f.pretty() for f in sub])
    rep.line(f"x^{args.n} - ({lam})" + (f" with {plan.descriptor()}" if plan else ""))
    if lin:
        rep.line(f"{len(lin)} linear factors:")
        rep.line("  " + " ".join(f"({f.pretty()})" for _, f in lin))
    rep.line(f"{len(sub)} irreducible factors over GF({F.p**F.s}):")
    for f in sub:
        rep.line(f"  {f.pretty()}")
    return EXIT_OK


def cmd_cosets(args, rep: Report) -> int:
    if args.field:
        plan = build_plan(args)
        cos = plan_cosets(plan, plan.spec.s)
    else:
        cos = cyclotomic_cosets(args.n, args.q)
    out = [{"rep": c.representative, "members": list(c.members), "kind": c.kind, "partner": c.partner} for c in cos]
    rep.set("cosets", out)
    for c in out:
        tail = f" partner C_{c['partner']}" if c["partner"] is not None else ""
        rep.line(f"C_{c['rep']} = {set(c['members'])} {c['kind']}{tail}")
    return EXIT_OK


def parse_mult(text: str) -> dict[int, int]:
    """`r:e,r:e,...` -> {r: e}; r may be a range `a..b`."""
    out: dict[int, int] = {}
    for part in text.split(","):
        r, e = part.split(":")
        for x in parse_ints(r):
            out[x] = int(e)
    return out


def _code_from_args(args):
    plan = build_plan(args)
    s = plan.spec.s
    if args.eta:
        if args.uniform is not None:
            spec = RepeatedRootSpec.uniform(plan, args.eta, s, args.uniform)
        elif args.mult:
            spec = RepeatedRootSpec.from_zero_exponents(plan, args.eta, s, parse_mult(args.mult))
        else:
            raise InvalidPlan("--eta needs --uniform or --mult")
        return repeated_root_code(spec)
    if args.zeros is not None:
        return code_from_zero_set(plan, s, parse_ints(args.zeros))
    if args.delta is None:
        raise InvalidPlan("give --zeros or --b/--delta")
    return bch_code(plan, s, args.b, args.delta)


def cmd_code(args, rep: Report) -> int:
    code = _code_from_args(args)
    res = distance_result(code, args.budget)
    cr: ContainmentReport = containment_report(code)
    rep.set("code", {"n": code.n, "k": code.k, "q": code.q, "generator": code.generator.pretty(), "zero_set": code.zero_set})
    rep.set("k", code.k)
    rep.set("distance", {"value": res.value, "exact": res.exact, "method": res.method})
    rep.set("containment", cr.verdict)
    rep.line(f"[{code.n},{code.k},{res.value}] over GF({code.q}) generator {code.generator.pretty()}")
    rep.line(f"distance method: {res.method}; containment: {cr.verdict}")
    return EXIT_OK


def cmd_distance(args, rep: Report) -> int:
    code = _code_from_args(args)
    res = distance_result(code, args.budget)
    rep.set("n", code.n)
    rep.set("k", code.k)
    rep.set("d", res.value)
    rep.set("method", res.method)
    rep.line(f"[{code.n},{code.k},{res.value}] ({res.method}, cost {res.cost})")
    if args.dual:
        dc = dual_code(code)
        dr = distance_result(dc, args.budget)
        rep.set("dual", {"k": dc.k, "d": dr.value})
        rep.line(f"dual [{dc.n},{dc.k},{dr.value}]")
    return EXIT_OK


def cmd_css(args, rep: Report) -> int:
    code = _code_from_args(args)
    cand = derive_css(code, budget=args.budget, exact=not args.no_exact)
    rep.set("css", cand.to_json())
    rep.line(cand.label())
    rep.line(f"containment: {cand.containment}; classical distances: {cand.distances}")
    mds = cand.qn - cand.qk + 2 - 2 * cand.qd_lower
    rep.set("mds_gap", mds)
    rep.line(f"MDS gap (n - k + 2 - 2d): {mds}")
    return EXIT_OK


def _codec(args) -> CodecConfig:
    plan = build_plan(args)
    return CodecConfig(plan, args.k, args.t)


def cmd_encode(args, rep: Report) -> int:
    cfg = _codec(args)
    R = encode(cfg, parse_vector(cfg.spec, args.message))
    rep.set("codeword", [str(x) for x in R])
    rep.line("R = (" + ", ".join(str(x) for x in R) + ")")
    return EXIT_OK


def cmd_decode(args, rep: Report) -> int:
    cfg = _codec(args)
    out = decode(cfg, parse_vector(cfg.spec, args.received))
    rep.data.update(out.to_json())
    rep.line(f"status: {out.status}")
    rep.line("mu = (" + ", ".join(str(x) for x in out.mu) + ")")
    rep.line(f"Gamma = {out.error_locator.pretty()}  num_errors={out.num_errors}")
    if out.ok:
        rep.line("message = (" + ", ".join(str(x) for x in out.padded_message) + ")")
        rep.line("D = (" + ", ".join(str(x) for x in out.spectrum) + ")")
        return EXIT_OK
    rep.line(f"reason: {out.reason}")
    return EXIT_DECODE


def cmd_transform(args, rep: Report) -> int:
    plan = build_plan(args)
    v = parse_vector(plan.spec, args.vector)
    out = ifffft(plan, v) if args.inverse else fffft(plan, v)
    rep.set("result", [str(x) for x in out])
    rep.line("(" + ", ".join(str(x) for x in out) + ")")
    return EXIT_OK


def cmd_opcount(args, rep: Report) -> int:
    if args.table:
        rows = []
        for row in TABLE1:
            got_c, got_s = row.model_values()
            ok = got_c == row.classical and got_s == row.spectral
            rows.append({
                "q": row.field_order, "lambda": row.lam, "n": row.n, "t": row.t,
                row.classical_kind: got_c, row.spectral_kind: got_s,
                "published": [row.classical, row.spectral], "match": ok,
            })
            rep.line(
                f"GF({row.field_order}) n={row.n:>3} t={row.t:>2}  {row.classical_kind}={got_c:>6} "
                f"{row.spectral_kind}={got_s:>6}  published {row.classical}/{row.spectral}  {'ok' if ok else 'DIFFERS'}"
            )
        rep.set("rows", rows)
        return EXIT_OK
    m = op_counts(args.n, args.t)
    rep.data.update(m.to_json())
    rep.line(
        f"O_Syn={m.o_syn} O_Spec={m.o_spec} O_Syn_M={m.o_syn_mult} O_Spec_M={m.o_spec_mult} O_PGZ={m.o_pgz}"
    )
    return EXIT_OK


# ---- quantum -----------------------------------------------------------------


def _parse_error(F: FieldSpec, n: int, text: str):
    from .qsim import PauliVector

    alpha, gamma = [F.zero] * n, [F.zero] * n
    if text and text.lower() != "none":
        for term in text.split("+"):
            kind, site, value = term.strip().split(":", 2)
            site = int(site) - 1
            if not 0 <= site < n:
                raise InvalidPlan(f"error site {site + 1} outside 1..{n}")
            target = alpha if kind.upper() == "X" else gamma
            target[site] = target[site] + F(value)
    return PauliVector(tuple(alpha), tuple(gamma))


def _qcfg(args):
    from .qsim import QuantumCodeConfig

    plan = build_plan(args)
    return QuantumCodeConfig(plan, args.b1, args.b2, args.delta)


def _message_state(args, spec, n_m):
    from .qsim import QuditState

    if args.message:
        return QuditState.basis(spec, parse_vector(spec, args.message))
    return QuditState.random(spec, n_m, np.random.default_rng(seed_from(args)))


def cmd_qsim(args, rep: Report) -> int:
    from . import qsim

    if args.action == "verify-relations":
        plans = [build_plan(args)] if args.field else qsim.relation_test_matrix()
        grid = []
        total = passed = 0
        for plan in plans:
            res = qsim.verify_all_relations(plan.spec, plan)
            grid.append({"plan": repr(plan), "results": res})
            total += len(res)
            passed += sum(res.values())
            marks = " ".join(f"{k}:{'pass' if v else 'FAIL'}" for k, v in res.items())
            rep.line(f"{plan.spec.descriptor()} {plan.descriptor()}  {marks}  {sum(res.values())}/{len(res)} pass")
        rep.set("grid", grid)
        rep.set("passed", passed)
        rep.set("total", total)
        return EXIT_OK if passed == total else EXIT_ERROR

    cfg = _qcfg(args)
    lay = cfg.layout
    F = cfg.plan.spec
    rep.set("layout", lay.to_json())
    rep.line(f"layout T_X={list(lay.t_x)} T_Z={list(lay.t_z)} D_M={list(lay.d_m)}")
    phi = _message_state(args, F, lay.n_m)
    psi = qsim.encode_state(cfg.plan, lay, phi)
    if args.action == "encode":
        fixed = all(qsim.is_stabilized(psi, s.pauli) for s in qsim.stabilizer_generators(cfg.plan, lay))
        rep.set("stabilized", fixed)
        rep.set("state", [[list(lbl), amp] for lbl, amp in psi.dump()])
        rep.line(f"stabilized by all generators: {fixed}")
        for lbl, (re_, im) in psi.dump():
            rep.line(f"  |{' '.join(lbl)}>  {re_:+.12g} {im:+.12g}i")
        return EXIT_OK
    error = _parse_error(F, cfg.plan.n, args.error)
    if args.action == "syndrome":
        res = qsim.syndrome_extract(cfg.plan, lay, error.apply(psi))
        rep.data.update(res.to_json())
        rep.line("s_X = (" + ", ".join(str(x) for x in res.s_x) + ")")
        rep.line("s_Z = (" + ", ".join(str(x) for x in res.s_z) + ")")
        return EXIT_OK
    rt = qsim.roundtrip(cfg, phi, error)
    rep.data.update(rt.to_json())
    rep.line("s_X = (" + ", ".join(str(x) for x in rt.s_x) + ")  s_Z = (" + ", ".join(str(x) for x in rt.s_z) + ")")
    rep.line(f"syndrome matches H-matrix oracle: {rt.syndrome_matches}")
    if rt.status == "detected":
        rep.line("error detected, not correctable")
        return EXIT_DECODE
    rep.line(f"fidelity {rt.fidelity:.6f}")
    return EXIT_OK


# ---- reproduction ------------------------------------------------------------


def repro_results(budget: int = 10**7) -> dict[str, Any]:
    """Computed values for every catalogued example (plain JSON types)."""
    from .codes import min_distance_bruteforce

    out: dict[str, Any] = {}
    out["len50-distances"] = {
        nc.name: min_distance_bruteforce(nc.code, budget) for nc in catalog.length50_codes()
    }
    o = decode(catalog.gf27_codec(), catalog.gf27_received())
    out["gf27-decode"] = {
        "mu_matches": o.mu == catalog.gf27_expected_mu(),
        "gamma": o.error_locator.pretty(),
        "message": [str(x) for x in o.message],
    }
    o = decode(catalog.gf9_codec(), catalog.gf9_received())
    out["gf9-decode"] = {
        "gamma": o.error_locator.pretty(),
        "message": [str(x) for x in o.padded_message],
        "spectrum": [str(x) for x in o.spectrum],
    }
    for key, fn in (("css-13-3", catalog.css_13_3), ("css-7-3", catalog.css_7_3), ("css-13-9", catalog.css_13_9)):
        cand = derive_css(fn(), budget=budget)
        out[key] = {"params": cand.label(), "containment": cand.containment, "distances": cand.distances}
    for key, fn in (("rr-117", catalog.rr_117), ("rr-24", catalog.rr_24), ("rr-20", catalog.rr_20)):
        spec = fn()
        code = repeated_root_code(spec)
        verdict = repeated_root_containment(spec)
        cand = derive_css(code, budget=budget, exact=False)
        out[key] = {
            "classical": [code.n, code.k],
            "verdict": verdict.verdict,
            "params": cand.label(),
            "distances": cand.distances,
        }
    out["opcount-table"] = [list(r.model_values()) for r in TABLE1]
    return json.loads(json.dumps(out, default=str))


def load_golden(path: str | None) -> dict:
    if path:
        with open(path) as fh:
            return json.load(fh)
    return json.loads(resources.files("constaq").joinpath("data/repro_golden.json").read_text())


def _diff(a, b, prefix="") -> list[str]:
    if isinstance(a, dict) and isinstance(b, dict):
        out = []
        for k in sorted(set(a) | set(b)):
            out += _diff(a.get(k), b.get(k), f"{prefix}{k}.")
        return out
    return [] if a == b else [f"{prefix.rstrip('.')}: computed {a!r}, golden {b!r}"]


def cmd_repro(args, rep: Report) -> int:
    t0 = time.time()
    got = repro_results(args.budget)
    if args.write_golden:
        with open(args.write_golden, "w") as fh:
            json.dump(got, fh, indent=2, sort_keys=True)
            fh.write("\n")
    golden = load_golden(args.golden)
    diffs = _diff(got, golden.get("computed", golden))
    rep.set("computed", got)
    rep.set("diffs", diffs)
    for key, value in got.items():
        rep.line(f"{key}: {json.dumps(value)}")
    notes = golden.get("published_differences", {})
    for key, note in notes.items():
        rep.line(f"note {key}: {note}")
    rep.line(f"{len(diffs)} differences from golden ({time.time() - t0:.1f} s)")
    for d in diffs:
        rep.line("  " + d)
    return EXIT_OK if not diffs else EXIT_GOLDEN


# --------------------------------------------------------------------------


def _plan_args(p: argparse.ArgumentParser, need_field: bool = True) -> None:
    p.add_argument("--field", required=need_field, help="e.g. 'GF(27;1,2,0,1;s=1)' or 'GF(4)'")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta")
    p.add_argument("--xi")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--s", type=int, help="code alphabet GF(p^s); overrides s= in --field")


def _code_args(p: argparse.ArgumentParser) -> None:
    _plan_args(p)
    p.add_argument("--zeros", help="zero-set exponents, e.g. '0..9' or '9,10,11,12'")
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--delta", type=int)
    p.add_argument("--eta", type=int, default=0, help="length n*p^eta (repeated roots)")
    p.add_argument("--uniform", type=int, help="every root with this multiplicity")
    p.add_argument("--mult", help="multiplicities 'r:e,...' by root exponent r")


def _global_args(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--format", choices=("text", "json"), default=default, help="report format (default text)")
    p.add_argument("--output", default=default, help="write the report to this file")
    p.add_argument("--seed", type=int, default=default, help="RNG seed (default 0); CONSTAQ_SEED overrides")
    p.add_argument("--budget", type=int, default=default, help="enumeration cap (default 10^7)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="constaq", description=__doc__.splitlines()[0])
    _global_args(ap, argparse.SUPPRESS)
    ap.set_defaults(format="text", output=None, seed=0, budget=10**7)
    common = argparse.ArgumentParser(add_help=False)
    _global_args(common, argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common], help="describe a field")
    p.add_argument("--field", required=True)
    p.add_argument("--elements", action="store_true")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("factor", parents=[common], help="factor x^n - lambda")
    _plan_args(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("cosets", parents=[common], help="cyclotomic cosets")
    _plan_args(p, need_field=False)
    p.add_argument("--q", type=int)
    p.set_defaults(func=cmd_cosets)

    p = sub.add_parser("transform", parents=[common], help="forward or inverse transform of a vector")
    _plan_args(p)
    p.add_argument("--vector", required=True)
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=cmd_transform)

    for name, fn in (("code", cmd_code), ("distance", cmd_distance), ("css", cmd_css)):
        p = sub.add_parser(name, parents=[common])
        _code_args(p)
        if name == "distance":
            p.add_argument("--dual", action="store_true")
        if name == "css":
            p.add_argument("--no-exact", action="store_true")
        p.set_defaults(func=fn)

    for name, fn in (("encode", cmd_encode), ("decode", cmd_decode)):
        p = sub.add_parser(name, parents=[common])
        _plan_args(p)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--t", type=int)
        if name == "encode":
            p.add_argument("--message", required=True)
        else:
            p.add_argument("--received", required=True)
        p.set_defaults(func=fn)

    p = sub.add_parser("opcount", parents=[common], help="operation-count model")
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--table", action="store_true")
    p.set_defaults(func=cmd_opcount)

    p = sub.add_parser("qsim", parents=[common], help="qudit simulation")
    p.add_argument("action", choices=("verify-relations", "encode", "syndrome", "roundtrip"))
    p.add_argument("--field", help=f"default {QSIM_DEFAULT_FIELD} with n={QSIM_DEFAULT_N} (relations: the built-in test matrix)")
    p.add_argument("--n", type=int)
    p.add_argument("--beta")
    p.add_argument("--xi")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--s", type=int)
    p.add_argument("--b1", type=int, default=1)
    p.add_argument("--b2", type=int, default=0)
    p.add_argument("--delta", type=int, default=3)
    p.add_argument("--message", help="basis message, e.g. 'w' (default: random state)")
    p.add_argument("--error", default="none", help="e.g. 'X:2:w' or 'X:1:1+Z:3:w^2' (sites 1-based)")
    p.set_defaults(func=cmd_qsim)

    p = sub.add_parser("repro", parents=[common], help="recompute all catalogued examples and diff against golden values")
    p.add_argument("--golden", help="golden JSON (default: bundled)")
    p.add_argument("--write-golden", help="also write the computed values here")
    p.set_defaults(func=cmd_repro)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.budget < 1:
        ap.error("--budget must be >= 1")
    if args.command == "qsim":
        if args.action != "verify-relations" and not args.field:
            args.field = QSIM_DEFAULT_FIELD
            args.n = args.n or QSIM_DEFAULT_N
        if args.field and args.n is None:
            ap.error("qsim: --n is required with --field")
    rep = Report(args)
    try:
        code = args.func(args, rep)
    except InvalidPlan as e:
        print(f"invalid plan: {e}", file=sys.stderr)
        return EXIT_PLAN
    except ContainmentViolated as e:
        print(f"containment violated: {e}", file=sys.stderr)
        return EXIT_CONTAINMENT
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_SIM_BUDGET if args.command == "qsim" else EXIT_BUDGET
    except DecodeFailure as e:
        print(f"decoding failed: {e}", file=sys.stderr)
        return EXIT_DECODE
    except (ConstaqError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    rep.emit()
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
