import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from constaq import catalog
from constaq.errors import InvalidPlan, LengthMismatch, RepeatedRootPlan
from constaq.field import build_field, in_subfield
from constaq.transform import (
    check_conjugate_symmetry,
    check_convolution,
    check_reversal,
    check_reversal_twisted,
    check_shift_property,
    constacyclic_shift,
    fffft,
    fffft_batch,
    find_beta,
    ifffft,
    ifffft_batch,
    make_plan,
    reversal_literal_applies,
    time_domain_in_subfield,
    xi_exponent,
)

from plans import property_plans

PLANS = property_plans()


def vec(plan, data, sub=None):
    F = plan.spec
    pool = F.subfield_codes(sub) if sub else list(range(F.order))
    codes = data.draw(st.lists(st.sampled_from(pool), min_size=plan.n, max_size=plan.n))
    return [F.element(c) for c in codes]


def test_small_example_forward(gf9_plan):
    F = gf9_plan.spec
    assert fffft(gf9_plan, [1, 0, 0, 0]) == [F.one] * 4
    assert gf9_plan.lam == F.w**4


def test_single_error_inverse(gf27_plan):
    assert ifffft(gf27_plan, catalog.gf27_received()) == catalog.gf27_expected_mu()


def test_small_example_inverse(gf9_plan):
    F = gf9_plan.spec
    assert ifffft(gf9_plan, [0, 1, 1, 1]) == [F.zero, F.w**7, F.w**2, F.w**5]


@pytest.mark.parametrize("name", PLANS)
def test_zero_and_unit_vectors(name):
    plan = PLANS[name]
    F = plan.spec
    assert fffft(plan, [F.zero] * plan.n) == [F.zero] * plan.n
    for i in range(plan.n):
        e = [F.zero] * plan.n
        e[i] = F.one
        row = [F.element(x) ** i for x in plan.points]
        assert fffft(plan, e) == row


@pytest.mark.parametrize("name", PLANS)
def test_matrices_are_inverse(name):
    plan = PLANS[name]
    F = plan.spec
    V = np.array(plan.forward_matrix)
    W = np.array(plan.inverse_matrix)
    prod = np.zeros((plan.n, plan.n), dtype=np.int64)
    for k in range(plan.n):
        prod = F.np_add(prod, F.np_mul(V[:, k][:, None], W[k, :][None, :]))
    assert (prod == np.diag([F._one] * plan.n) + (1 - np.eye(plan.n, dtype=np.int64)) * 0).all()


@pytest.mark.parametrize("name", PLANS)
def test_batch_matches_scalar(name):
    plan = PLANS[name]
    rng = np.random.default_rng(3)
    arr = rng.integers(0, plan.spec.order, size=(5, plan.n))
    out = fffft_batch(plan, arr)
    for row, got in zip(arr, out):
        assert [x.code for x in fffft(plan, [plan.spec.element(int(c)) for c in row])] == list(got)
    assert (ifffft_batch(plan, out) == arr).all()


@pytest.mark.parametrize("name", PLANS)
@given(data=st.data())
def test_round_trip(name, data):
    plan = PLANS[name]
    a = vec(plan, data)
    assert ifffft(plan, fffft(plan, a)) == a
    assert fffft(plan, ifffft(plan, a)) == a


@pytest.mark.parametrize("name", PLANS)
@given(data=st.data())
def test_shift_property(name, data):
    assert check_shift_property(PLANS[name], vec(PLANS[name], data))


@pytest.mark.parametrize("name", PLANS)
@given(data=st.data())
def test_convolution_property(name, data):
    plan = PLANS[name]
    assert check_convolution(plan, vec(plan, data), vec(plan, data))


@pytest.mark.parametrize("name", PLANS)
@given(data=st.data())
def test_twisted_reversal(name, data):
    assert check_reversal_twisted(PLANS[name], vec(PLANS[name], data))


@pytest.mark.parametrize("name", [k for k, p in PLANS.items() if reversal_literal_applies(p)])
@given(data=st.data())
def test_literal_reversal_where_it_applies(name, data):
    assert check_reversal(PLANS[name], vec(PLANS[name], data))


def test_literal_reversal_fails_on_twisted_plan(gf27_plan):
    assert not reversal_literal_applies(gf27_plan)
    F = gf27_plan.spec
    a = [F.zero] * 13
    a[1] = F.one
    assert not check_reversal(gf27_plan, a)
    assert check_reversal_twisted(gf27_plan, a)


def test_palindrome_spectrum_reverses():
    F = build_field(2, 4)
    plan = make_plan(F, 5, xi=F.w**3)
    a = [F.w, F.one, F.w**7, F.w**7, F.one]  # a_i = a_{n-i}
    A = fffft(plan, a)
    assert [A[(5 - j) % 5] for j in range(5)] == A


def test_shift_spectrum_of_unit_vector(gf9_plan):
    F = gf9_plan.spec
    shifted = constacyclic_shift(gf9_plan, [1, 0, 0, 0])
    assert shifted == [F.zero, F.one, F.zero, F.zero]
    assert fffft(gf9_plan, shifted) == [F.element(x) for x in gf9_plan.points]
    assert check_shift_property(gf9_plan, [0] * 4)
    assert check_convolution(gf9_plan, [0] * 4, [0] * 4)


CONJ = {k: p for k, p in PLANS.items() if p.conjugation_shift(1) is not None}


@pytest.mark.parametrize("name", CONJ)
@given(data=st.data())
def test_conjugate_symmetry_forward(name, data):
    plan = CONJ[name]
    assert check_conjugate_symmetry(plan, fffft(plan, vec(plan, data, sub=1)), 1)


@pytest.mark.parametrize("name", CONJ)
@given(data=st.data())
def test_conjugate_symmetry_equivalence(name, data):
    plan = CONJ[name]
    A = vec(plan, data)
    assert bool(check_conjugate_symmetry(plan, A, 1)) == time_domain_in_subfield(plan, A, 1)


def test_conjugate_symmetry_rejects_single_extension_value():
    F = build_field(2, 4)
    plan = make_plan(F, 5, xi=F.w**3)
    A = [F.w] + [F.zero] * 4
    assert not check_conjugate_symmetry(plan, A, 1)
    assert not all(in_subfield(x, 1) for x in ifffft(plan, A))


def test_xi_exponent(gf27_plan):
    F = gf27_plan.spec
    assert xi_exponent(gf27_plan, F.w**6) == 3
    assert xi_exponent(gf27_plan, F.w) is None


def test_plan_validation():
    F = build_field(3, 2)
    with pytest.raises(RepeatedRootPlan):
        make_plan(F, 3)
    with pytest.raises(InvalidPlan):
        make_plan(F, 5)
    with pytest.raises(InvalidPlan):
        make_plan(F, 4, xi=F.w**4)  # order 2, not 4
    with pytest.raises(InvalidPlan):
        make_plan(F, 4, beta=F.one, lam=F.w)
    with pytest.raises(InvalidPlan):
        make_plan(F, 4, beta=F.zero)
    plan = make_plan(F, 4, lam=F.w**4)
    assert plan.beta**4 == F.w**4
    assert find_beta(F, 4, F.w**4) == plan.beta
    with pytest.raises(LengthMismatch):
        fffft(plan, [1, 2])
