import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from constaq import catalog
from constaq.decoder import (
    TABLE1,
    CodecConfig,
    channel_apply,
    decode,
    decode_reference,
    encode,
    measure_decode_ops,
    op_counts,
)
from constaq.errors import AlphabetViolation, InvalidPlan, LengthMismatch
from constaq.poly import Polynomial


def test_single_error_decoding():
    F = catalog.gf27()
    out = decode(catalog.gf27_codec(), catalog.gf27_received())
    assert out.ok
    assert out.mu == catalog.gf27_expected_mu()
    assert out.error_locator == Polynomial(F, [F.w**25, F.w**7])
    assert out.message == [F.zero] * 3
    assert out.spectrum == [F.zero] * 13
    assert out.num_errors == 1


def test_small_decoding_example():
    F = catalog.gf9(1)
    out = decode(catalog.gf9_codec(), catalog.gf9_received())
    assert out.error_locator == Polynomial(F, [F(2), F.w**3])
    assert out.padded_message == [F.one, F.zero, F.zero, F.zero]
    assert out.spectrum == [F.one] * 4


def test_encode_examples():
    cfg = catalog.gf9_codec()
    F = cfg.spec
    assert encode(cfg, [1]) == [F.one] * 4
    assert encode(cfg, [0]) == [F.zero] * 4
    with pytest.raises(LengthMismatch):
        encode(cfg, [1, 0])


def test_encode_rejects_extension_message():
    with pytest.raises(AlphabetViolation):
        encode(catalog.gf9_codec(), [catalog.gf9(1).w])


@given(st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_encode_is_evaluation(msg):
    plan = catalog.gf27_plan()
    F = plan.spec
    cfg = CodecConfig(plan, 3)
    m = Polynomial(F, [F(x) for x in msg])
    assert encode(cfg, msg) == [m.eval(F.element(x)) for x in plan.points]


@given(st.lists(st.integers(0, 26), min_size=3, max_size=3), st.data())
def test_decode_corrects_up_to_t(msg, data):
    cfg = catalog.gf27_codec()
    F = cfg.spec
    R = encode(cfg, msg)
    nerr = data.draw(st.integers(0, cfg.t))
    sites = data.draw(st.lists(st.integers(0, 12), min_size=nerr, max_size=nerr, unique=True))
    errs = [(i, F.element(data.draw(st.integers(1, 26)))) for i in sites]
    out = decode(cfg, channel_apply(R, errs))
    assert out.ok and out.message == [F(x) for x in msg]
    assert out.num_errors == nerr


def test_clean_codeword_has_trivial_locator():
    cfg = catalog.gf27_codec()
    out = decode(cfg, encode(cfg, [1, 2, 0]))
    assert out.num_errors == 0 and out.error_locator == Polynomial.constant(cfg.spec, 1)


def test_reference_agrees_exhaustively_on_small_code():
    cfg = catalog.gf9_codec()
    F = cfg.spec
    for m in F.subfield_codes(1):
        R = encode(cfg, [F.element(m)])
        patterns = [[]] + [[(i, F.element(v))] for i in range(4) for v in range(1, F.order)]
        for errs in patterns:
            Y = channel_apply(R, errs)
            a, b = decode(cfg, Y), decode_reference(cfg, Y)
            assert a.ok and b.ok and a.message == b.message


def test_reference_zero_word():
    cfg = catalog.gf9_codec()
    assert decode_reference(cfg, [0] * 4).message == [cfg.spec.zero]


def test_reference_sampled_single_errors():
    cfg = catalog.gf27_codec()
    F = cfg.spec
    rng = np.random.default_rng(11)
    for _ in range(500):
        msg = [F.element(int(x)) for x in rng.integers(0, 27, 3)]
        errs = [(int(rng.integers(13)), F.element(int(rng.integers(1, 27))))]
        Y = channel_apply(encode(cfg, msg), errs)
        assert decode(cfg, Y).message == decode_reference(cfg, Y).message == msg


def test_failure_beyond_capacity():
    cfg = CodecConfig(catalog.gf27_plan(), 11)  # t = 1
    F = cfg.spec
    Y = channel_apply([F.zero] * 13, [(0, F.one), (5, F.w), (7, F.w**3)])
    out = decode(cfg, Y)
    assert not out.ok and out.reason
    assert out.to_json()["status"] == "failure"


def test_channel_apply():
    F = catalog.gf27()
    R = [F.zero] * 13
    assert channel_apply(R, []) == R
    Y = channel_apply(R, [(9, F.w)])
    assert Y == catalog.gf27_received()
    assert channel_apply(Y, [(9, -F.w)]) == R


def test_config_validation():
    with pytest.raises(InvalidPlan):
        CodecConfig(catalog.gf9_plan(), 0)
    with pytest.raises(InvalidPlan):
        CodecConfig(catalog.gf9_plan(), 2, 2)


def test_op_count_rows():
    m = op_counts(2, 1)
    assert (m.o_syn, m.o_spec) == (32, 20)
    m = op_counts(62, 28)
    assert (m.o_syn_mult, m.o_spec_mult) == (13154, 12772)
    m = op_counts(62, 13)
    assert (m.o_pgz, m.o_spec) == (31681, 19964)


def test_published_row_seven_matches_t75():
    assert op_counts(156, 75).o_syn_mult == TABLE1[-1].classical


def test_measured_ops_within_model():
    cfg = catalog.gf27_codec()
    out, counter = measure_decode_ops(cfg, catalog.gf27_received())
    model = op_counts(13, cfg.t)
    assert out.ok
    assert 0 < counter.total <= model.o_spec
