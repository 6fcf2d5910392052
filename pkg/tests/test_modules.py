from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import forms
from psu3.forms import FormError, contract, e, hodge, inner, interior, sigma, wedge
from psu3.holonomy import so3_three_form
from psu3.linalg import rank
from psu3.modules import (
    MODULES,
    IntrinsicTorsion,
    decompose_gamma,
    in_m,
    module_basis,
    modules_of_degree,
    omega,
    phi1,
    phi2,
    project,
    rho,
    sigma_minus,
    sigma_plus,
    split,
    star_rho,
    theta1,
    theta2,
    w_basis,
)
from psu3.scalar import SQRT3, Scalar

T27 = so3_three_form()


@pytest.mark.parametrize("label", sorted(MODULES))
def test_module_dimensions(label):
    basis = module_basis(label)
    assert len(basis) == MODULES[label].dim
    assert rank(b.coeffs for b in basis) == len(basis)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_modules_span_each_degree(k):
    basis = [b for lab in modules_of_degree(k) for b in module_basis(lab)]
    assert rank(b.coeffs for b in basis) == comb(8, k)


def test_omega_examples():
    assert omega(7) == e(1, 2) + e(3, 4) - 2 * e(5, 6)
    assert omega(1) == -e(3, 6) - e(4, 5) + e(2, 7) + SQRT3 * e(2, 8)
    assert all(omega(i) == interior(i, rho()) for i in range(1, 9))


def test_star_rho():
    assert star_rho() == hodge(rho())


def test_m_membership():
    assert all(in_m(w) for w in module_basis("L2_20"))
    assert not any(in_m(w) for w in module_basis("L2_8"))
    assert all(not wedge(w, star_rho()) for w in module_basis("L2_20"))


def test_psu3_stabilises_rho():
    assert all(not sigma(1, omega(i), rho()) for i in range(1, 9))


def test_sigma_examples():
    assert sigma_minus(sigma_plus(e(1))) == 6 * e(1)
    assert not sigma_plus(omega(1))
    assert sigma_minus(sigma_plus(T27)) == 16 * T27


def test_sigma_degree_errors():
    with pytest.raises(FormError):
        sigma_minus(e(1))


def test_projection_examples():
    # <e145, rho> = -1 and ||rho||^2 = 16
    assert inner(e(1, 4, 5), rho()) == Scalar(-1)
    assert project("L3_1", rho()) == rho()
    assert project("L3_1", e(1, 4, 5)) == rho() * Scalar("-1/16")
    assert project("L3_27", e(1, 4, 5)) == T27 * Scalar("1/16")
    assert not project("L3_8", e(1, 4, 5)) and not project("L3_20", e(1, 4, 5))


def test_projection_degree_error():
    with pytest.raises(FormError):
        project("L3_8", e(1, 2))


@given(st.data())
def test_projections_sum_and_are_orthogonal(data):
    k = data.draw(st.integers(1, 4))
    a = data.draw(forms(k, max_terms=6))
    parts = split(a)
    assert sum(parts.values(), a * 0) == a
    labels = list(parts)
    for i, x in enumerate(labels):
        assert project(x, parts[x]) == parts[x]
        for y in labels[i + 1:]:
            assert not inner(parts[x], parts[y])


def test_phi_theta_examples():
    assert phi1(theta1(T27)) == T27 * Scalar("-4/3")
    for f in module_basis("L4_27s"):
        assert phi2(theta2(f)) == f * -8
    for f in module_basis("L4_8s") + module_basis("L4_27s"):
        assert not phi1(theta2(f))


def test_contracted_four_forms_lie_in_m():
    for f in module_basis("L4_8s")[:3] + module_basis("L4_27s")[:5]:
        assert all(in_m(contract(omega(i), f)) for i in range(1, 9))


def test_w_dimensions():
    dims = [len(w_basis(n)) for n in range(1, 7)]
    assert dims == [8, 20, 27, 8, 27, 70]
    assert rank(g.vector() for n in range(1, 7) for g in w_basis(n)) == 160


def test_w6_is_common_kernel():
    assert all(not phi1(g) and not phi2(g) for g in w_basis(6))


def test_decompose_examples():
    g = theta1(T27)
    parts = decompose_gamma(g)
    assert parts[3] == g and parts.nonzero() == (3,)
    f = hodge(sigma_plus(T27))
    assert decompose_gamma(theta2(f)).nonzero() == (5,)
    assert decompose_gamma(IntrinsicTorsion.zero()).nonzero() == ()


def test_intrinsic_torsion_rejects_non_m_slots():
    with pytest.raises(ValueError, match="slot 1"):
        IntrinsicTorsion([omega(1)] + [omega(1) * 0] * 7)
