import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from constaq.errors import (
    DivisionByZero,
    FieldMismatch,
    LogOfZero,
    NoSuchSubfield,
    NotPrime,
    ReducibleModulus,
)
from constaq.field import (
    build_field,
    discrete_log,
    elem_from_power,
    in_subfield,
    parse_element,
    parse_field_descriptor,
    parse_vector,
    trace,
    trace_int,
)

SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (5, 1), (3, 3), (2, 4), (7, 1), (5, 2)]


def test_gf9_modulus_relation(gf9):
    w = gf9.w
    assert w * w + 2 * w + 2 == 0
    assert (w * w).coeffs == (1, 1)  # w^2 = w + 1


def test_gf27_modulus_relation(gf27):
    w = gf27.w
    assert w**3 + 2 * w + 1 == 0
    assert (w**3).coeffs == (2, 1, 0)


def test_prime_field_primitive_is_one():
    F = build_field(2, 1)
    assert F.w == F.one


def test_gf27_order_of_w(gf27):
    w13 = elem_from_power(gf27, 13)
    assert w13 * w13 == gf27.one
    assert gf27.w.order() == 26


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_inverse_axiom(p, k):
    F = build_field(p, k)
    for a in F.elements()[1:]:
        assert a * a.inv() == F.one
        assert a / a == F.one


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_ring_axioms_against_numpy_tables(p, k):
    F = build_field(p, k)
    codes = np.array(F.subfield_codes(k))
    A, B = np.meshgrid(codes, codes)
    mul = F.np_mul(A, B)
    add = F.np_add(A, B)
    for i, j in itertools.product(range(len(codes)), repeat=2):
        assert mul[i, j] == F.mul(int(A[i, j]), int(B[i, j]))
        assert add[i, j] == F.add(int(A[i, j]), int(B[i, j]))


@given(st.sampled_from(SMALL_FIELDS), st.data())
def test_distributivity(pk, data):
    F = build_field(*pk)
    els = F.elements()
    a, b, c = (data.draw(st.sampled_from(els)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    assert -(-a) == a


def test_trace_gf4(gf4):
    assert trace(gf4.zero) == 0
    assert trace(gf4.w) == gf4.w + gf4.w**2 == gf4.one
    assert trace(gf4.one) == 0


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_trace_is_sum_of_conjugates_and_lands_in_prime_field(p, k):
    F = build_field(p, k)
    for a in F.elements():
        total = F.zero
        for i in range(k):
            total = total + a.frobenius(i)
        assert trace(a) == total
        assert in_subfield(trace(a), 1)
        assert trace_int(a) == total.coeffs[0]


def test_in_subfield(gf27, gf9):
    for F in (gf27, gf9):
        assert in_subfield(F.zero, 1) and in_subfield(F.one, 1)
    assert not in_subfield(gf27.w, 1)
    w4 = gf9.w**4
    assert w4 == 2 and in_subfield(w4, 1)
    with pytest.raises(NoSuchSubfield):
        in_subfield(gf27.w, 2)


def test_subfield_sizes():
    F = build_field(2, 4)
    assert len(F.subfield_codes(1)) == 2
    assert len(F.subfield_codes(2)) == 4
    assert len(F.subfield_codes(4)) == 16


def test_powers_and_logs(gf9, gf27):
    assert elem_from_power(gf9, 0) == gf9.one
    assert discrete_log(elem_from_power(gf27, 13)) == 13
    # hand reduction: w^3 = 2w + 1, w^4 = 2, w^5 = 2w
    assert elem_from_power(gf9, 5).coeffs == (0, 2)
    assert gf9.w**-1 * gf9.w == gf9.one
    with pytest.raises(LogOfZero):
        discrete_log(gf9.zero)


def test_division_by_zero(gf9):
    with pytest.raises(DivisionByZero):
        gf9.one / gf9.zero
    with pytest.raises(DivisionByZero):
        gf9.zero.inv()


def test_construction_errors():
    with pytest.raises(NotPrime):
        build_field(4, 1)
    with pytest.raises(ReducibleModulus):
        build_field(3, 2, [2, 0, 1])  # x^2 - 1 = (x - 1)(x + 1)
    with pytest.raises(NoSuchSubfield):
        build_field(2, 4, "auto", 3)


def test_mixing_fields_rejected(gf9, gf27):
    with pytest.raises(FieldMismatch):
        gf9.w + gf27.w


def test_same_field_different_s_is_compatible():
    a = build_field(3, 2, (2, 2, 1), 1)
    b = build_field(3, 2, (2, 2, 1), 2)
    assert a.w + b.w == a.w * 2


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 2), (2, 5)])
def test_auto_modulus_primitive_order(p, k):
    F = build_field(p, k)
    assert F.w.order() == p**k - 1


def test_parse_element_forms(gf9):
    assert parse_element(gf9, "w^3") == gf9.w**3
    assert parse_element(gf9, "-w") == -gf9.w
    assert parse_element(gf9, "(1,1)") == gf9.w**2
    assert parse_element(gf9, "2") == -gf9.one
    assert gf9("w^-1") == gf9.w.inv()
    with pytest.raises(ValueError):
        parse_element(gf9, "v^2")


def test_parse_vector_keeps_tuples(gf9):
    v = parse_vector(gf9, "0,(1,1),w^3, 2")
    assert v == [gf9.zero, gf9.w**2, gf9.w**3, gf9(2)]
    assert parse_vector(gf9, "") == []


def test_descriptor_round_trip(gf27):
    G = parse_field_descriptor(gf27.descriptor())
    assert G.compatible(gf27) and G.s == gf27.s
    H = parse_field_descriptor("GF(27;1,2,0,1;s=3)")
    assert H.modulus == gf27.modulus and H.s == 3
    assert parse_field_descriptor("GF(3^4;auto;s=4)").order == 81
