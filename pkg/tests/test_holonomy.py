import re
from itertools import combinations

import pytest
import sympy as sp

from psu3.checks import POINTS
from psu3.connection import bianchi_residual, d_parallel, ricci, riemann_from_characteristic
from psu3.forms import FormError, e, hodge, interior, wedge
from psu3.holonomy import (
    FAMILY_CASES,
    SUBALGEBRAS,
    FamilyConstraintError,
    LieAlgebraTable,
    big_omega1,
    big_sigma,
    bracket,
    classify_family_type,
    curvature_space_dim,
    exceptional_line,
    family,
    invariant_subspace,
    is_curvature_invariant,
    is_invariant,
    nomizu_algebra,
    so3_three_form,
    spin7_form,
    spin7_report,
    su2_partner,
    subalgebra,
    varphi1,
    varphi2,
)
from psu3.modules import omega, rho, sigma_plus
from psu3.scalar import SQRT3, ZERO, Scalar, as_scalar
from psu3.torsion import TorsionClass

NAMES = {
    "r_suc2": ("a1", "a2"),
    "suc2": ("a1", "a2", "a3", "a4"),
    "t2_I": ("a1", "a2", "a3", "a4"),
    "t2_II": ("b1", "b2", "b3", "b4"),
    "so3_a": ("a",),
    "so3_b": ("b",),
}
SAMPLES = [(case, dict(zip(NAMES[case], pt))) for case in FAMILY_CASES for pt in POINTS[case]]
EXPECTED_TYPE = {
    "r_suc2": {1, 3},
    "suc2": {1, 2, 3},
    "t2_I": {1, 2, 3},
    "t2_II": {1, 2, 3},
    "so3_a": {3},
    "so3_b": {5},
}


def test_subalgebra_dims_and_closure():
    dims = {n: SUBALGEBRAS[n].dim for n in ("psu3", "r_suc2", "suc2", "t2", "so3", "t1")}
    assert dims == {"psu3": 8, "r_suc2": 4, "suc2": 3, "t2": 2, "so3": 3, "t1": 1}
    assert all(h.closes() for h in SUBALGEBRAS.values())
    with pytest.raises(ValueError):
        subalgebra("g2")


def test_su2_partner_commutes():
    for a in SUBALGEBRAS["suc2"].generators:
        for b in su2_partner():
            assert not bracket(a, b)


def test_coordinates_reject_outside():
    with pytest.raises(FormError):
        SUBALGEBRAS["t2"].coordinates(omega(1))


def test_invariant_subspace_examples():
    t = so3_three_form()
    (v,) = invariant_subspace("so3", "char3")
    assert v * t.coeffs[(1, 4, 5)] == t * v.coeffs[(1, 4, 5)]
    (f,) = invariant_subspace("so3", "char4")
    g = hodge(sigma_plus(t))
    assert f * g.coeffs[next(iter(g.coeffs))] == g * f.coeffs[next(iter(g.coeffs))]
    (r,) = invariant_subspace("psu3", "L3")
    k = next(iter(rho().coeffs))
    assert r * rho().coeffs[k] == rho() * r.coeffs[k]
    assert invariant_subspace("psu3", "char3") == [] and invariant_subspace("psu3", "char4") == []


def test_family_examples():
    f = family("so3_a", {"a": 1})
    assert f.T == rho() + e(1, 4, 5) * 16 and not f.F
    f = family("r_suc2", {"a1": 1, "a2": 0})
    assert f.T == varphi1() + varphi2() * 3 and not f.F
    f = family("t2_I", {"a1": 1}, check=False)
    assert f.T == big_sigma() + wedge(omega(7), e(7)) - wedge(omega(8), e(8)) * Scalar("5/3")


@pytest.mark.parametrize("case,params", SAMPLES)
def test_family_solves_system(case, params):
    f = family(case, params)
    h = f.holonomy
    assert is_invariant(h, f.T) and is_invariant(h, f.F)
    assert is_curvature_invariant(h, f.curvature)
    assert bianchi_residual(f.curvature, f.chars) == ZERO
    assert classify_family_type(case, params).is_of_type(EXPECTED_TYPE[case])


def test_strict_types():
    assert classify_family_type("r_suc2", {"a1": 1, "a2": 1}) == TorsionClass(frozenset({1, 3}))
    assert classify_family_type("so3_b", {"b": 1}).render() == "W5"


def test_exceptional_line():
    f = exceptional_line(2)
    assert bianchi_residual(f.curvature, f.chars) == ZERO
    assert is_curvature_invariant("suc2", f.curvature)
    with pytest.raises(FamilyConstraintError):
        exceptional_line(0)


@pytest.mark.parametrize(
    "case,params,fragment",
    [
        ("r_suc2", {"a1": 0, "a2": 1}, "5a1^2"),
        ("r_suc2", {"a1": 3, "a2": -5}, "5a1^2+3a1a2"),
        ("suc2", {"a1": 1, "a2": 1, "a3": 1, "a4": 0}, "(2/3)"),
        ("so3_a", {"a": 0}, "a != 0"),
        ("so3_b", {}, "b != 0"),
    ],
)
def test_constraint_errors(case, params, fragment):
    with pytest.raises(FamilyConstraintError, match=re.escape(fragment)):
        family(case, params)


def test_unknown_case_and_params():
    with pytest.raises(ValueError):
        family("g2", {})
    with pytest.raises(ValueError):
        family("so3_a", {"b": 1})


def test_r_suc2_ricci_eigenvalue():
    for a1, a2 in [(1, 0), (2, 1), (1, SQRT3)]:
        f = family("r_suc2", {"a1": a1, "a2": a2})
        ric = ricci(riemann_from_characteristic(f.curvature, f.chars))
        assert ric[7][7] == 3 * as_scalar(a2) * a2


def test_rho_syntheses():
    assert rho() == varphi1() - varphi2() * 2 + wedge(omega(8), e(8))
    assert rho() == big_sigma() + wedge(omega(7), e(7)) + wedge(omega(8), e(8))


def test_t2_differentials():
    a1, a2, a3, a4 = Scalar(1), Scalar(1), Scalar(2), Scalar(-1)
    c = family("t2_I", {"a1": a1, "a2": a2, "a3": a3, "a4": a4}).chars
    assert d_parallel(e(7), c) == omega(7) * (a1 + a2) + omega(8) * a3
    omega_big = big_omega1() + e(5, 6)
    assert d_parallel(big_sigma(), c) == interior(8, hodge(wedge(omega_big, e(7)))) * (4 * a1)


def test_curvature_space_dims():
    assert curvature_space_dim("r_suc2") == 0
    assert curvature_space_dim("so3") == 0
    n = 8
    assert curvature_space_dim("so8") == n * n * (n * n - 1) // 12


def test_spin7():
    assert all(is_invariant(h, spin7_form()) for h in ("r_suc2", "suc2", "t2"))
    for case in ("r_suc2", "suc2", "t2_I", "t2_II"):
        params = dict(zip(NAMES[case], POINTS[case][0]))
        rep = spin7_report(case, params)
        assert rep.invariant and not rep.lcp
    assert not spin7_report("suc2", dict(zip(NAMES["suc2"], POINTS["suc2"][0]))).balanced
    # type I with a1 = 0 coincides with type II at b1 = b2 = a2
    assert spin7_report("t2_I", {"a1": 0, "a2": 1, "a3": 1, "a4": 3}).balanced
    assert not spin7_report("t2_I", {"a1": 1, "a2": 1, "a3": 2, "a4": -1}).balanced
    with pytest.raises(ValueError):
        spin7_report("so3_a", {"a": 1})


def _to_sympy(s: Scalar):
    return sp.Rational(int(s.a.numerator), int(s.a.denominator)) + sp.Rational(
        int(s.b.numerator), int(s.b.denominator)
    ) * sp.sqrt(3)


@pytest.mark.parametrize("a", [1, SQRT3])
def test_nomizu_a_case(a):
    alg = nomizu_algebra("so3_a", {"a": a})
    assert alg.dim == 11
    assert alg.jacobi_residual() == ZERO
    assert alg.is_negative_definite()
    killing = sp.Matrix([[_to_sympy(v) for v in row] for row in alg.killing_form()])
    assert killing.is_negative_definite
    assert alg.ideal_dimensions() == [8, 3]


def test_nomizu_b_case():
    alg = nomizu_algebra("so3_b", {"b": 1})
    assert alg.jacobi_residual() == ZERO
    with pytest.raises(FamilyConstraintError):
        nomizu_algebra("so3_b", {"b": 0})
    with pytest.raises(ValueError):
        nomizu_algebra("r_suc2", {"a1": 1})


def _so_n(n: int) -> LieAlgebraTable:
    """so(n) on the basis E_ij (i<j) with [E_ij, E_jk] = E_ik."""
    pairs = list(combinations(range(n), 2))
    index = {p: k for k, p in enumerate(pairs)}

    def mat(p):
        i, j = p
        m = [[0] * n for _ in range(n)]
        m[i][j], m[j][i] = 1, -1
        return m

    def coords(m):
        return {index[(i, j)]: Scalar(m[i][j]) for i, j in pairs if m[i][j]}

    brackets = {}
    for p, q in combinations(range(len(pairs)), 2):
        a, b = mat(pairs[p]), mat(pairs[q])
        c = [[sum(a[i][k] * b[k][j] - b[i][k] * a[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        vec = coords(c)
        if vec:
            brackets[(p, q)] = vec
    return LieAlgebraTable([f"E{i}{j}" for i, j in pairs], brackets)


def test_ideal_split_on_known_algebras():
    assert _so_n(3).ideal_dimensions() == [3]
    so4 = _so_n(4)
    assert so4.jacobi_residual() == ZERO
    assert so4.ideal_dimensions() == [3, 3]
    assert so4.is_negative_definite()
