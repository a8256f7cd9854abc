import pytest
from hypothesis import given
from hypothesis import strategies as st

from constaq import catalog
from constaq.errors import ZeroLambda
from constaq.field import build_field
from constaq.poly import (
    Polynomial,
    eeap_solve_key_equation,
    eeap_trace,
    factor_squarefree,
    is_irreducible,
    is_irreducible_binomial,
    min_poly,
    poly_gcd,
    powmod,
    product,
)
from constaq.transform import fffft, ifffft


def P(F, *coeffs):
    return Polynomial(F, [F(c) for c in coeffs])


def poly_strategy(F, max_degree=20):
    codes = st.integers(0, F.order - 1)
    return st.lists(codes, max_size=max_degree + 1).map(lambda c: Polynomial(F, c))


def test_zero_polynomial_conventions(gf9):
    z = Polynomial(gf9)
    assert z.is_zero
    assert z.degree < 0 and z.degree == z.degree - 5  # sentinel, not an integer -1
    assert Polynomial(gf9, [0, 0, 0]) == z
    assert z.eval(gf9.w) == 0


def test_canonical_leading_coefficient(gf9):
    p = P(gf9, 1, "w", 0, 0)
    assert p.degree == 1 and p.lead == gf9.w


def test_division_step_from_decoding_example(gf9):
    mu = P(gf9, 0, "w^7", "w^2", "w^5")
    q, r = divmod(Polynomial.binomial(gf9, 4, gf9.w**4), mu)
    assert q == P(gf9, 2, "w^3")
    assert r == P(gf9, 1, "w^7")


def test_self_division(gf9):
    a = P(gf9, "w", 1, "w^3")
    assert divmod(a, a) == (Polynomial.constant(gf9, 1), Polynomial(gf9))


@given(st.data())
def test_divmod_recomposes(data):
    F = catalog.gf9(1)
    a = data.draw(poly_strategy(F))
    b = data.draw(poly_strategy(F).filter(lambda p: not p.is_zero))
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero or r.degree < b.degree


@given(st.data())
def test_ring_laws(data):
    F = build_field(2, 3)
    a, b, c = (data.draw(poly_strategy(F, 8)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    assert (a * b).eval(F.w) == a.eval(F.w) * b.eval(F.w)


def test_eval_agrees_with_transform(gf27_plan):
    F = gf27_plan.spec
    mu = ifffft(gf27_plan, catalog.gf27_received())
    poly = Polynomial(F, mu)
    pts = [F.element(x) for x in gf27_plan.points]
    assert poly.eval(pts[0]) == 0  # R_0
    assert [poly.eval(x) for x in pts] == fffft(gf27_plan, mu)


def test_key_equation_single_error(gf27_plan):
    F = gf27_plan.spec
    mu = Polynomial(F, catalog.gf27_expected_mu())
    gamma, p = eeap_solve_key_equation(mu, 13, gf27_plan.lam, 5)
    assert gamma == P(F, "w^25", "w^7")
    assert p.is_zero


def test_key_equation_small_example(gf9_plan):
    F = gf9_plan.spec
    mu = P(F, 0, "w^7", "w^2", "w^5")
    gamma, p = eeap_solve_key_equation(mu, 4, gf9_plan.lam, 1)
    assert gamma == P(F, 2, "w^3")
    assert p == P(F, 2, "w^3")
    steps = eeap_trace(mu, 4, gf9_plan.lam, 1)
    assert len(steps) == 2 and steps[1].remainder == P(F, 1, "w^7")


def test_key_equation_zero_mu(gf9):
    gamma, p = eeap_solve_key_equation(Polynomial(gf9), 4, gf9.w**4, 1)
    assert gamma == Polynomial.constant(gf9, 1) and p.is_zero


@given(st.data())
def test_key_equation_invariant(data):
    F = catalog.gf9(1)
    n, lam = 8, F.one
    t = data.draw(st.integers(0, 4))
    mu = Polynomial(F, data.draw(st.lists(st.integers(0, 8), max_size=n)))
    gamma, p = eeap_solve_key_equation(mu, n, lam, t)
    assert ((gamma * mu - p) % Polynomial.binomial(F, n, lam)).is_zero
    assert p.is_zero or p.degree < n - t


def test_min_poly_basics():
    F = build_field(2, 4)
    assert min_poly(F.one, 1) == P(F, 1, 1)
    m = min_poly(F.w**3, 1)
    assert m == P(F, 1, 1, 1, 1, 1)
    assert m.in_subfield(1)


@pytest.mark.parametrize("p,k,s", [(2, 4, 2), (3, 2, 1), (2, 6, 3), (3, 3, 1)])
def test_min_poly_coefficients_in_subfield(p, k, s):
    F = build_field(p, k)
    for a in F.elements()[1:]:
        m = min_poly(a, s)
        assert m.in_subfield(s)
        assert m.eval(a) == 0
        assert is_irreducible(m, s)


def test_serret_criterion(gf9):
    assert is_irreducible_binomial(2, gf9.w)
    assert not is_irreducible_binomial(2, gf9.one)
    assert is_irreducible_binomial(4, gf9.w)
    with pytest.raises(ZeroLambda):
        is_irreducible_binomial(2, gf9.zero)


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
def test_serret_against_factorization(n):
    F = build_field(3, 2)
    for lam in F.elements()[1:]:
        factors = factor_squarefree(Polynomial.binomial(F, n, lam), 2)
        assert is_irreducible_binomial(n, lam, 2) == (len(factors) == 1)


def test_factorization_product_and_gcd():
    F = build_field(2, 2)
    f = Polynomial.binomial(F, 15, F.one)
    fs = factor_squarefree(f, 2)
    assert product(fs, F) == f
    assert all(is_irreducible(g, 2) for g in fs)
    assert poly_gcd(fs[0] * fs[1], fs[1] * fs[2]) == fs[1].monic()


def test_powmod_matches_repeated_multiplication(gf9):
    a, m = P(gf9, 1, "w"), P(gf9, 2, 0, 0, 1)
    slow = Polynomial.constant(gf9, 1)
    for _ in range(11):
        slow = (slow * a) % m
    assert powmod(a, 11, m) == slow
