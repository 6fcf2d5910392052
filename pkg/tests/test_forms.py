import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import forms, hodge_oracle, wedge_oracle
from psu3.forms import (
    Form,
    FormError,
    contract,
    dumps_form,
    e,
    form_from_json,
    form_to_json,
    hodge,
    inner,
    interior,
    loads_form,
    norm_sq,
    sigma,
    vol,
    wedge,
)
from psu3.modules import omega, rho
from psu3.scalar import SQRT3, Scalar


def test_basis_products():
    assert wedge(e(1), e(2)) == e(1, 2)
    assert wedge(e(2), e(1)) == -e(1, 2)
    assert not wedge(e(1, 2), e(1, 2))


def test_degree_overflow():
    with pytest.raises(FormError, match="degree > 8"):
        wedge(e(1, 2, 3, 4, 5), e(6, 7, 8, 1))


def test_rho_literal_coefficients():
    r = rho()
    assert r[(1, 2, 8)] == SQRT3
    assert r[(3, 4, 8)] == -SQRT3
    assert r[(5, 6, 7)] == Scalar(-2)
    # ||rho||^2 = 1+1+1+1+1+1+4+3+3 from the literal coefficients
    assert sum(v * v for _, v in r.items()) == Scalar(16)


def test_contract_examples():
    r = rho()
    assert contract(e(7), r) == e(1, 2) + e(3, 4) - 2 * e(5, 6)
    assert contract(e(1), e(1)) == Form.scalar(1)
    assert contract(r, r) == Form.scalar(16)
    assert sigma(3, r, r) == Form.scalar(16)
    assert not sigma(1, omega(7), r)


def test_contract_degree_error():
    with pytest.raises(FormError):
        contract(e(1, 2), e(3))


def test_sigma_range():
    with pytest.raises(FormError):
        sigma(3, e(1, 2), e(1, 2, 3))


def test_hodge_examples():
    assert hodge(e(1, 2)) == e(3, 4, 5, 6, 7, 8)
    assert hodge(Form.scalar(1)) == vol()


def test_rho_lies_in_open_orbit():
    r = rho()
    assert not wedge(r, r)
    assert wedge(r, hodge(r)) == vol() * 16


def test_inner_examples():
    assert inner(e(1, 2), e(1, 2)) == Scalar(1)
    assert inner(e(1, 2), e(1, 3)) == Scalar(0)
    assert norm_sq(rho()) == Scalar(16)
    with pytest.raises(FormError):
        inner(e(1), e(1, 2))


@given(forms(max_terms=3), forms(max_terms=3))
def test_wedge_matches_shuffle_oracle(a, b):
    if a.degree + b.degree > 5:
        return
    assert wedge(a, b) == wedge_oracle(a, b)


@given(forms())
def test_hodge_matches_permutation_oracle(a):
    assert hodge(a) == hodge_oracle(a)


@given(forms(), forms())
def test_graded_commutativity(a, b):
    if a.degree + b.degree > 8:
        return
    assert wedge(a, b) == wedge(b, a) * (-1) ** (a.degree * b.degree)


@given(st.data())
def test_contract_is_adjoint_of_wedge(data):
    k = data.draw(st.integers(0, 4))
    n = data.draw(st.integers(k, 8))
    beta, alpha, gamma = data.draw(forms(k)), data.draw(forms(n)), data.draw(forms(n - k))
    assert inner(contract(beta, alpha), gamma) == inner(alpha, wedge(beta, gamma))


@given(st.data())
def test_contract_equals_sigma_top(data):
    k = data.draw(st.integers(0, 4))
    beta, alpha = data.draw(forms(k)), data.draw(forms(data.draw(st.integers(k, 8))))
    assert contract(beta, alpha) == sigma(k, beta, alpha)


@given(st.data())
def test_interior_is_contract_with_vector(data):
    i = data.draw(st.integers(1, 8))
    a = data.draw(forms(data.draw(st.integers(1, 8))))
    assert interior(i, a) == contract(e(i), a)


@given(st.data())
def test_hodge_isometry(data):
    k = data.draw(st.integers(0, 8))
    a, b = data.draw(forms(k)), data.draw(forms(k))
    assert inner(hodge(a), hodge(b)) == inner(a, b)
    assert wedge(a, hodge(b)) == vol() * inner(a, b)


@given(forms())
def test_double_hodge_sign(a):
    assert hodge(hodge(a)) == a * (-1) ** a.degree


@given(forms())
def test_exchange_roundtrip(a):
    assert form_from_json(form_to_json(a)) == a
    assert loads_form(dumps_form(a)) == a


def test_exchange_format_shape():
    doc = form_to_json(e(1, 2) * Scalar("1/2", 1))
    assert doc == {"degree": 2, "terms": [{"idx": [1, 2], "a": "1/2", "b": "1"}]}


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ({"degree": 2, "terms": [{"idx": [2, 1], "a": "1"}]}, "terms[0]"),
        ({"degree": 2, "terms": [{"idx": [1, 2], "a": "1"}, {"idx": [1, 2, 3], "a": "1"}]}, "terms[1]"),
        ({"degree": 2, "terms": [{"idx": [1, 2], "a": "x"}]}, "terms[0]"),
        ({"degree": 2, "terms": [{"idx": [1, 2]}, {"idx": [1, 2]}]}, "duplicate"),
        ({"terms": []}, "degree"),
    ],
)
def test_malformed_documents(doc, fragment):
    with pytest.raises(FormError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        form_from_json(doc)


def test_invalid_json_reports_position():
    with pytest.raises(FormError, match="line 1 column"):
        loads_form('{"degree": 1,')


def test_forms_are_immutable():
    with pytest.raises(AttributeError):
        e(1).degree = 2
    assert json.loads(dumps_form(Form.zero(3))) == {"degree": 3, "terms": []}
