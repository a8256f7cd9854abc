"""Acceptance checks, one group per criterion.

Each group records a PASS/FAIL line in RESULTS; the lines are printed in the
pytest terminal summary, or directly when this file is run as a script.
Sub-checks for published values that the model cannot reproduce are strict
xfails and mark their criterion FAIL.
"""

import itertools
import time

import numpy as np
import pytest

from constaq import catalog
from constaq.codes import (
    derive_css,
    dual_code,
    min_distance_bruteforce,
    repeated_root_code,
    repeated_root_containment,
)
from constaq.decoder import TABLE1, decode, op_counts
from constaq.field import build_field
from constaq.poly import Polynomial
from constaq.qsim import (
    PauliVector,
    QuantumCodeConfig,
    QuditState,
    codespace_dimension,
    encode_state,
    initial_stabilizers,
    initial_state,
    is_stabilized,
    plan_layout,
    relation_test_matrix,
    roundtrip,
    single_site_errors,
    stabilizer_generators,
    verify_all_relations,
)
from constaq.transform import (
    check_conjugate_symmetry,
    check_convolution,
    check_reversal,
    check_reversal_twisted,
    check_shift_property,
    fffft,
    ifffft,
    make_plan,
    reversal_literal_applies,
)

RESULTS: dict[int, list] = {}


def record(num, title, ok, seconds=None, note=""):
    entry = RESULTS.setdefault(num, [title, True, 0.0, []])
    entry[1] = entry[1] and bool(ok)
    entry[2] += seconds or 0.0
    if note:
        entry[3].append(note)


def summary_lines():
    out = []
    for num in sorted(RESULTS):
        title, ok, secs, notes = RESULTS[num]
        tail = f" ({'; '.join(notes)})" if notes else ""
        out.append(f"{'PASS' if ok else 'FAIL'} criterion {num}: {title} [{secs:.2f}s]{tail}")
    return out


class timed:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


# ---- 1: length-13 decode over GF(27) ----------------------------------------


def test_c1_gf27_decode():
    F = catalog.gf27(1)
    w = F.w
    expected_mu = [w ** e for e in (1, 22, 17, 12, 7, 2, 23, 18, 13, 8, 3, 24, 19)]
    R = [F.zero] * 13
    R[9] = w
    with timed() as t:
        out = decode(catalog.gf27_codec(), R)
    ok = (
        out.ok
        and out.mu == expected_mu
        and out.error_locator == Polynomial(F, [w**25, w**7])
        and all(x == 0 for x in out.message)
    )
    record(1, "GF(27) n=13 decode: mu, Gamma, message", ok and t.seconds < 1, t.seconds)
    assert ok and t.seconds < 1


# ---- 2: length-4 decode over GF(9) -------------------------------------------


def test_c2_gf9_decode():
    F = catalog.gf9(1)
    w = F.w
    with timed() as t:
        out = decode(catalog.gf9_codec(), [0, 1, 1, 1])
    ok = (
        out.ok
        and out.error_locator == Polynomial(F, [F(2), w**3])
        and out.padded_message == [F.one, F.zero, F.zero, F.zero]
        and out.spectrum == [F.one] * 4
    )
    record(2, "GF(9) n=4 decode: Gamma, m, D", ok and t.seconds < 1, t.seconds)
    assert ok and t.seconds < 1


# ---- 3: op-count table ---------------------------------------------------------


def _closed_forms(n, t):
    return {
        "o_syn": 6 * n * t + 16 * t * t - n + 6 * t,
        "o_spec": 4 * n * n - 4 * n + 6 * t * n,
        "o_syn_mult": 3 * t * n + 10 * t * t - n + 6 * t,
        "o_spec_mult": 2 * n * n - 2 * n + 3 * t * n,
        "o_pgz": round(6 * t * n + t**4 / 2 + 16 * t**3 / 3 + 5 * t * t + t / 6),
    }


def test_c3_table_rows_one_to_six():
    with timed() as t:
        rows = [r.model_values() == (r.classical, r.spectral) for r in TABLE1[:6]]
        forms = all(
            _closed_forms(r.n, r.t)[k] == getattr(op_counts(r.n, r.t), k)
            for r in TABLE1
            for k in ("o_syn", "o_spec", "o_syn_mult", "o_spec_mult", "o_pgz")
        )
        spectral_last = TABLE1[6].model_values()[1] == 61932
    ok = all(rows) and forms and spectral_last
    record(3, "op-count table, 7 rows", ok and t.seconds < 1, t.seconds)
    assert ok and t.seconds < 1


def test_c3_last_row_classical_cell_at_t75():
    assert op_counts(156, 75).o_syn_mult == 91644


@pytest.mark.xfail(strict=True, reason="published 91644 is the count at t=75; the model gives 22000 at t=29")
def test_c3_last_row_classical_cell_as_published():
    row = TABLE1[6]
    got = row.model_values()[0]
    ok = got == row.classical
    if not ok:
        record(3, "op-count table, 7 rows", False, note=f"row 7 classical: model {got}, published {row.classical}")
    assert ok


# ---- 4: CSS parameters from brute-forced distances -------------------------


def test_c4_css_parameters():
    expected = {
        "css_13_3": ("[[13,7,4]]", {"[13,3]": 11, "[13,10]": 4}),
        "css_7_3": ("[[7,1,4]]", {"[7,3]": 5, "[7,4]": 4}),
        "css_13_9": ("[[13,5,5]]", {"[13,9]": 5, "[13,4]": 10}),
    }
    ok = True
    with timed() as t:
        for name, (label, dists) in expected.items():
            code = getattr(catalog, name)()
            cand = derive_css(code)
            brute = {f"[{c.n},{c.k}]": min_distance_bruteforce(c) for c in (code, dual_code(code))}
            ok &= cand.label() == label and cand.distances == dists and brute == dists
    record(4, "CSS parameters [[13,7,4]] [[7,1,4]] [[13,5,5]]", ok and t.seconds < 60, t.seconds)
    assert ok and t.seconds < 60


# ---- 5: length-50 distances ------------------------------------------------


@pytest.mark.slow
def test_c5_length50_distances():
    with timed() as t:
        got = {nc.name: (min_distance_bruteforce(nc.code), nc.expected_distance) for nc in catalog.length50_codes()}
    cyc = {d for name, (d, _) in got.items() if name.startswith("cyclic")}
    quad = got["constacyclic/low-degree-product"][0]
    deg10 = {d for name, (d, _) in got.items() if name.startswith("constacyclic/x^10")}
    ok = all(a == b for a, b in got.values()) and cyc == {2} and quad == 2 and deg10 == {3}
    record(5, "length-50 distances: 2, 3, cyclic 2", ok and t.seconds < 300, t.seconds)
    assert ok and t.seconds < 300


# ---- 6: repeated-root verdicts -----------------------------------------------

RR_PUBLISHED = {"rr_117": "[[117,13,3]]", "rr_24": "[[24,12,3]]", "rr_20": "[[20,5,2]]"}
RR_COMPUTED = {"rr_117": "[[117,13,3]]", "rr_24": "[[24,12,2]]", "rr_20": "[[20,10,2]]"}
_rr_cache: dict = {}


def _rr(name):
    if name not in _rr_cache:
        t0 = time.perf_counter()
        spec = getattr(catalog, name)()
        verdict = repeated_root_containment(spec)
        cand = derive_css(repeated_root_code(spec), exact=False)
        _rr_cache[name] = (verdict, cand, time.perf_counter() - t0)
    return _rr_cache[name]


@pytest.mark.parametrize("name", list(RR_COMPUTED))
def test_c6_repeated_root(name):
    verdict, cand, secs = _rr(name)
    ok = (
        verdict.verdict == "weakly-self-dual"
        and "divisibility" in verdict.cross_checked
        and cand.label() == RR_COMPUTED[name]
    )
    record(6, "repeated-root containment and parameters", ok and secs < 30, secs)
    assert ok and secs < 30


def test_c6_length24_dual_has_weight_two_word():
    code = dual_code(repeated_root_code(catalog.rr_24()))
    assert (code.n, code.k) == (24, 18)
    F = code.spec
    H = [[F.element(int(x)) for x in row] for row in code.parity_matrix]
    alphabet = [F.element(c) for c in F.subfield_codes(code.s)][1:]
    hits = 0
    for i, j in itertools.combinations(range(24), 2):
        for a in alphabet:
            # the word a*e_i + e_j is in the code iff every check row annihilates it
            hits += all(row[i] * a + row[j] == 0 for row in H)
    assert hits > 0


@pytest.mark.parametrize("name", ["rr_24", "rr_20"])
@pytest.mark.xfail(strict=True, reason="published parameters disagree with the code's dimension or distance")
def test_c6_published_parameters(name):
    _, cand, _ = _rr(name)
    ok = cand.label() == RR_PUBLISHED[name]
    if not ok:
        record(6, "repeated-root containment and parameters", False,
               note=f"{RR_PUBLISHED[name]} published, {cand.label()} computed")
    assert ok


# ---- 7: transform properties -------------------------------------------------


def _plans7():
    gf16, gf25 = build_field(2, 4), build_field(5, 2)
    return {
        "GF(27) n=13": catalog.gf27_plan(),
        "GF(9) n=4": catalog.gf9_plan(),
        "GF(16) n=5": make_plan(gf16, 5, xi=gf16.w**3),
        "GF(64) n=7": catalog.gf64_plan(),
        "GF(25) n=6": make_plan(gf25, 6, beta=gf25.w),
    }


def test_c7_transform_properties():
    rng = np.random.default_rng(20261018)
    ok = True
    counts = {}
    with timed() as t:
        for name, plan in _plans7().items():
            F, n = plan.spec, plan.n
            sub = F.subfield_codes(1)
            literal = reversal_literal_applies(plan)
            for _ in range(100):
                a = [F.element(int(c)) for c in rng.integers(0, F.order, n)]
                b = [F.element(int(c)) for c in rng.integers(0, F.order, n)]
                a_sub = [F.element(int(c)) for c in rng.choice(sub, n)]
                ok &= ifffft(plan, fffft(plan, a)) == a
                ok &= bool(check_shift_property(plan, a))
                ok &= bool(check_convolution(plan, a, b))
                ok &= bool(check_conjugate_symmetry(plan, fffft(plan, a_sub), 1))
                ok &= bool(check_reversal_twisted(plan, a))
                if literal:
                    ok &= bool(check_reversal(plan, a))
            counts[name] = 100
    ok &= len(counts) >= 4
    record(7, f"transform properties, 100 vectors x {len(counts)} plans", ok and t.seconds < 10, t.seconds)
    assert ok and t.seconds < 10


# ---- 8: quantum relations and stabilizers ----------------------------------


def _admissible_layouts(plan):
    for b1, b2, d in itertools.product(range(plan.n), range(plan.n), range(2, plan.n + 1)):
        try:
            yield plan_layout(plan, b1, b2, d)
        except Exception:
            continue


def test_c8_quantum_properties():
    rng = np.random.default_rng(8)
    ok = True
    fields, layouts = set(), 0
    with timed() as t:
        for plan in relation_test_matrix():
            fields.add(plan.spec.order)
            ok &= all(verify_all_relations(plan.spec, plan).values())
            for lay in _admissible_layouts(plan):
                layouts += 1
                F = plan.spec
                phi = QuditState.random(F, lay.n_m, rng) if lay.n_m else QuditState.basis(F, [])
                psi0 = initial_state(lay, phi)
                ok &= all(is_stabilized(psi0, s.pauli) for s in initial_stabilizers(plan, lay))
                psi = encode_state(plan, lay, phi)
                ok &= all(is_stabilized(psi, s.pauli) for s in stabilizer_generators(plan, lay))
                ok &= abs(codespace_dimension(plan, lay) - F.order**lay.n_m) < 1e-9
    ok &= fields == {2, 3, 4} and layouts > 0
    record(8, f"relations N1-N8 and stabilizers, {layouts} layouts", ok and t.seconds < 120, t.seconds)
    assert ok and t.seconds < 120


# ---- 9: quantum round trip -----------------------------------------------------


def _predicted(plan, b, delta, v):
    """Syndrome row j of a weight-one vector v on site i: v_i (beta xi^(b+j))^i."""
    out = []
    for j in range(delta - 1):
        x = plan.beta * plan.xi ** (b + j)
        acc = plan.spec.zero
        for i, vi in enumerate(v):
            acc = acc + vi * x**i
        out.append(acc)
    return out


def test_c9_quantum_roundtrip():
    F = build_field(2, 2)
    plan = make_plan(F, 3)
    cfg = QuantumCodeConfig(plan, 1, 1, 2)
    phi = QuditState.basis(F, [F.w])
    ok, seen = True, 0
    with timed() as t:
        for err in single_site_errors(F, 3):
            rt = roundtrip(cfg, phi, err)
            ok &= rt.s_x == _predicted(plan, cfg.b2, cfg.delta, err.alpha)
            ok &= rt.s_z == _predicted(plan, cfg.b1, cfg.delta, err.gamma)
            # delta = 2 corrects nothing: every single-site error must be flagged
            ok &= rt.status == "detected"
            seen += 1
        clean = roundtrip(cfg, phi, PauliVector.make(F, alpha=[0, 0, 0]))
        ok &= clean.status == "recovered" and abs(clean.fidelity - 1) < 1e-9
        G = build_field(5, 1)
        cfg5 = QuantumCodeConfig(make_plan(G, 4), 1, 0, 3)
        for err in single_site_errors(G, 4):
            rt = roundtrip(cfg5, QuditState.basis(G, []), err)
            ok &= rt.syndrome_matches and rt.status == "recovered" and abs(rt.fidelity - 1) < 1e-9
    ok &= seen == 18
    record(9, "round trip: GF(4) n=3 syndromes, GF(5) n=4 recovery", ok and t.seconds < 120, t.seconds)
    assert ok and t.seconds < 120


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
