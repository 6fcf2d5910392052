"""Holonomy subalgebras of psu(3) and the parallel-torsion solution families.

Everything here happens at a single point: invariant tensors are kernels of
the infinitesimal action ``sigma_1(w, .)``, curvature lives in
``Lambda^2 (x) h``, and the families are checked against the Bianchi
identity of the characteristic connection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .connection import (
    PAIRS,
    CurvOp,
    d_parallel,
    delta_parallel,
    riemann_from_characteristic,
    ricci,
    scal,
    torsion_from_char,
)
from .forms import INDICES, Form, FormError, e, hodge, interior, monomials, sigma, wedge
from .linalg import Echelon, Subspace, nullspace, rank
from .modules import module_basis, omega, rho
from .scalar import ONE, SQRT3, ZERO, Scalar, as_scalar
from .torsion import CharForms, TorsionClass, classify, gamma_of

__all__ = [
    "Subalgebra",
    "SUBALGEBRAS",
    "subalgebra",
    "bracket",
    "invariant_subspace",
    "invariant_curvatures",
    "is_invariant",
    "is_curvature_invariant",
    "curvature_space_dim",
    "FAMILY_CASES",
    "FamilyConstraintError",
    "SolutionFamily",
    "family",
    "exceptional_line",
    "spin7_form",
    "Spin7Report",
    "spin7_report",
    "LieAlgebraTable",
    "nomizu_algebra",
    "classify_family_type",
    "ricci_diagonal",
    "su2_partner",
    "varphi1",
    "varphi2",
    "big_sigma",
    "big_omega1",
    "big_omega2",
    "so3_three_form",
    "t2_I_matrix",
    "t2_II_matrix",
    "inertia",
]


# -- subalgebras -------------------------------------------------------------


def bracket(w: Form, t: Form) -> Form:
    """Lie bracket of two 2-forms viewed as skew endomorphisms."""
    return sigma(1, w, t)


def _pair_index(key):
    return PAIRS.index(key)


@dataclass(frozen=True)
class Subalgebra:
    name: str
    generators: tuple[Form, ...]

    @property
    def dim(self) -> int:
        return rank(g.coeffs for g in self.generators)

    def span(self) -> Subspace:
        return Subspace([g.coeffs for g in self.generators])

    def contains(self, w: Form) -> bool:
        return w.degree == 2 and self.span().contains(w.coeffs)

    def closes(self) -> bool:
        span = self.span()
        return all(
            span.contains(bracket(a, b).coeffs) for a, b in combinations(self.generators, 2)
        )

    def coordinates(self, w: Form) -> list[Scalar]:
        """Coordinates of ``w`` in the generator basis; raises if outside."""
        span = self.span()
        if not span.contains(w.coeffs):
            raise FormError(f"2-form is not in {self.name}")
        return span.coordinates(w.coeffs)


def _omegas(*idx: int) -> tuple[Form, ...]:
    return tuple(omega(i) for i in idx)


SUBALGEBRAS: dict[str, Subalgebra] = {
    "psu3": Subalgebra("psu3", _omegas(*INDICES)),
    "r_suc2": Subalgebra("r_suc2", _omegas(5, 6, 7, 8)),
    "suc2": Subalgebra("suc2", _omegas(5, 6, 7)),
    "t2": Subalgebra("t2", _omegas(7, 8)),
    "so3": Subalgebra("so3", _omegas(1, 4, 5)),
    "t1": Subalgebra("t1", _omegas(7)),
    "zero": Subalgebra("zero", ()),
    "so8": Subalgebra("so8", tuple(e(*p) for p in PAIRS)),
}


def subalgebra(name: str) -> Subalgebra:
    try:
        return SUBALGEBRAS[name]
    except KeyError:
        raise ValueError(
            f"unknown subalgebra {name!r}; expected one of {', '.join(SUBALGEBRAS)}"
        ) from None


def su2_partner() -> tuple[Form, ...]:
    """A complementary su(2) commuting with su_c(2)."""
    return (e(1, 3) + e(2, 4), e(1, 4) - e(2, 3), e(1, 2) - e(3, 4))


# -- invariants --------------------------------------------------------------

_SPACE_TAGS = {
    "char3": ("L3_8", "L3_20", "L3_27"),
    "char4": ("L4_8s", "L4_27s"),
}


def _space_basis(space) -> list[Form]:
    if isinstance(space, str):
        if space in _SPACE_TAGS:
            space = _SPACE_TAGS[space]
        elif space.startswith("L") and space[1:].isdigit():
            k = int(space[1:])
            return [Form(k, {m: ONE}) for m in monomials(k)]
        else:
            space = (space,)
    basis: list[Form] = []
    for label in space:
        basis.extend(module_basis(label))
    return basis


def _canonical_basis(vectors: list[dict], degree: int) -> list[Form]:
    """Reduced echelon basis of a span, so results are presentation independent."""
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return [Form(degree, ech.pivots[p]) for p in sorted(ech.pivots)]


def invariant_subspace(h: Subalgebra | str, space) -> list[Form]:
    """Basis of the forms in ``space`` annihilated by every generator of ``h``.

    ``space`` is a module label, a list of labels, ``"char3"`` / ``"char4"``
    for the characteristic-form spaces, or ``"L<k>"`` for all of Lambda^k.
    """
    h = subalgebra(h) if isinstance(h, str) else h
    basis = _space_basis(space)
    if not basis:
        return []
    degree = basis[0].degree
    equations: dict = {}
    for gi, g in enumerate(h.generators):
        for b, form in enumerate(basis):
            for key, v in sigma(1, g, form).items():
                equations.setdefault((gi, key), {})[b] = v
    kernel = nullspace(equations.values(), list(range(len(basis))))
    vectors = []
    for x in kernel:
        f = Form.zero(degree)
        for b, c in x.items():
            f = f + basis[b] * c
        vectors.append(f.coeffs)
    return _canonical_basis(vectors, degree)


def is_invariant(h: Subalgebra | str, alpha: Form) -> bool:
    h = subalgebra(h) if isinstance(h, str) else h
    return all(not sigma(1, g, alpha) for g in h.generators)


def _act_on_curvature(w: Form, R: CurvOp) -> dict:
    """``w`` acting on both factors of ``R``, as a dict over pair-index keys."""
    out: dict = {}
    for (p, q), v in R.entries.items():
        a, b = Form(2, {PAIRS[p]: v}), Form(2, {PAIRS[q]: ONE})
        for ka, va in sigma(1, w, a).items():
            key = (_pair_index(ka), q)
            out[key] = out.get(key, ZERO) + va
        for kb, vb in sigma(1, w, b).items():
            key = (p, _pair_index(kb))
            out[key] = out.get(key, ZERO) + v * vb
    return {k: v for k, v in out.items() if v}


def is_curvature_invariant(h: Subalgebra | str, R: CurvOp) -> bool:
    """``R`` takes values in ``h`` and is annihilated by ``h``."""
    h = subalgebra(h) if isinstance(h, str) else h
    span = h.span()
    for p in range(28):
        row = Form(2, {PAIRS[q]: v for (pp, q), v in R.entries.items() if pp == p})
        if row and not span.contains(row.coeffs):
            return False
    return all(not _act_on_curvature(g, R) for g in h.generators)


def _curvature_variables(h: Subalgebra):
    return [(p, k) for p in range(28) for k in range(len(h.generators))]


def _curvature_from_vector(h: Subalgebra, x: dict) -> CurvOp:
    out: dict = {}
    for (p, k), c in x.items():
        for key, v in h.generators[k].items():
            q = _pair_index(key)
            out[(p, q)] = out.get((p, q), ZERO) + c * v
    return CurvOp(out)


def invariant_curvatures(h: Subalgebra | str) -> list[CurvOp]:
    """Basis of the h-invariant elements of ``Lambda^2 (x) h``."""
    h = subalgebra(h) if isinstance(h, str) else h
    variables = _curvature_variables(h)
    equations: dict = {}
    for gi, g in enumerate(h.generators):
        for var in variables:
            for key, v in _act_on_curvature(g, _curvature_from_vector(h, {var: ONE})).items():
                equations.setdefault((gi, key), {})[var] = v
    return [_curvature_from_vector(h, x) for x in nullspace(equations.values(), variables)]


def _bianchi_equations(h: Subalgebra) -> list[dict]:
    """Cyclic sum ``S_{XYZ} R(X,Y,Z,V)`` as linear forms on ``Lambda^2 (x) h``."""
    eqs = []
    for x, y, z in monomials(3):
        for v in INDICES:
            eq: dict = {}
            for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                p, s = (a, b), 1
                if a > b:
                    p, s = (b, a), -1
                pi = _pair_index(p)
                for k, g in enumerate(h.generators):
                    val = g(c, v)
                    if val:
                        key = (pi, k)
                        eq[key] = eq.get(key, ZERO) + (val if s > 0 else -val)
            eq = {k: val for k, val in eq.items() if val}
            if eq:
                eqs.append(eq)
    return eqs


def curvature_space_dim(h: Subalgebra | str) -> int:
    """Dimension of the Bianchi-flat part of ``Lambda^2 (x) h``."""
    h = subalgebra(h) if isinstance(h, str) else h
    variables = _curvature_variables(h)
    return len(variables) - rank(_bianchi_equations(h))


# -- solution families ------------------------------------------------------


class FamilyConstraintError(ValueError):
    """Parameters violate the constraint attached to a family."""


def varphi1() -> Form:
    return e(2, 4, 6) - e(2, 3, 5) - e(1, 4, 5) - e(1, 3, 6) + e(1, 2, 7) + e(3, 4, 7)


def varphi2() -> Form:
    return e(5, 6, 7)


def big_sigma() -> Form:
    return e(2, 4, 6) - e(2, 3, 5) - e(1, 4, 5) - e(1, 3, 6)


def big_omega1() -> Form:
    return e(1, 2) + e(3, 4)


def big_omega2() -> Form:
    return e(5, 6)


def so3_three_form() -> Form:
    """The so(3)-invariant element of Lambda^3_27."""
    return rho() + e(1, 4, 5) * 16


_PARAMS = {
    "r_suc2": ("a1", "a2"),
    "suc2": ("a1", "a2", "a3", "a4"),
    "t2_I": ("a1", "a2", "a3", "a4"),
    "t2_II": ("b1", "b2", "b3", "b4"),
    "so3_a": ("a",),
    "so3_b": ("b",),
}

_HOLONOMY = {
    "r_suc2": "r_suc2",
    "suc2": "suc2",
    "t2_I": "t2",
    "t2_II": "t2",
    "so3_a": "so3",
    "so3_b": "so3",
}

FAMILY_CASES: tuple[str, ...] = tuple(_PARAMS)


@dataclass(frozen=True)
class SolutionFamily:
    case: str
    params: dict[str, Scalar]
    chars: CharForms
    curvature: CurvOp
    algebra: str
    T: Form = field(repr=False)
    F: Form = field(repr=False)

    @property
    def holonomy(self) -> Subalgebra:
        return subalgebra(self.algebra)


def _read_params(case: str, params) -> dict[str, Scalar]:
    if case not in _PARAMS:
        raise ValueError(f"unknown case {case!r}; expected one of {', '.join(FAMILY_CASES)}")
    names = _PARAMS[case]
    params = dict(params or {})
    extra = sorted(set(params) - set(names))
    if extra:
        raise ValueError(f"unknown parameter(s) for {case}: {', '.join(extra)}")
    return {n: as_scalar(params.get(n, 0)) for n in names}


def _sym(a: Form, b: Form):
    return [(a, b), (b, a)]


def t2_I_matrix(a1, a2, a3, a4):
    """Coefficients (c77, c78, c88) of the type-I curvature."""
    u, w = a1 + a2, a1 * Scalar("5/3") + a2
    return u * u - a1 * a1 + a4 * a4, u * a3 - w * a4, w * w - a1 * a1 + a3 * a3


def t2_II_matrix(b1, b2, b3, b4):
    half = Scalar("1/2")
    c77 = -half * b1 * (b1 - 3 * b2) + b4 * b4
    c78 = -half * b3 * (b1 - 3 * b2) - b2 * b4
    c88 = -half * b1 * (b1 - b2) + b2 * b2 + b3 * b3
    return c77, c78, c88


def family(case: str, params=None, check: bool = True) -> SolutionFamily:
    """Realise one of the known (T, F, R) families at exact parameter values.

    Raises :class:`FamilyConstraintError` naming the violated constraint.  With
    ``check=False`` the constraints are skipped; the triple still solves the
    Bianchi system, but its curvature may not span the whole holonomy algebra.
    """
    p = _read_params(case, params)
    w = omega
    F = Form.zero(4)
    half = Scalar("1/2")

    def need(cond: bool, text: str) -> None:
        if check and not cond:
            raise FamilyConstraintError(f"{case}: constraint violated: {text}")

    if case in ("r_suc2", "suc2"):
        a1, a2 = p["a1"], p["a2"]
        T = (varphi1() + varphi2() * 3) * a1 + (wedge(w(8), e(8)) + varphi2() * 3) * a2
        k1 = 5 * a1 * a1 + 3 * a1 * a2
        k2 = 7 * a1 * a1 + 3 * a1 * a2 - 2 * a2 * a2
        need(bool(k1), "5a1^2+3a1a2 != 0")
        terms = [(w(5), w(5)), (w(6), w(6)), (w(7), w(7))]
        R = CurvOp.from_terms(terms, -half * k1)
        if case == "r_suc2":
            need(bool(k2), "7a1^2+3a1a2-2a2^2 != 0")
            R = R + CurvOp.from_terms([(w(8), w(8))], -half * k2)
        else:
            a3, a4 = p["a3"], p["a4"]
            need(k2 == Scalar("2/3") * (a3 * a3 + a4 * a4), "7a1^2+3a1a2-2a2^2 = (2/3)(a3^2+a4^2)")
            T = T + (e(1, 4, 8) - e(2, 3, 8)) * a3 + (e(1, 3, 8) + e(2, 4, 8)) * a4
    elif case == "t2_I":
        a1, a2, a3, a4 = (p[n] for n in _PARAMS[case])
        T = (
            big_sigma() * a1
            + wedge(w(7) * (a1 + a2) + w(8) * a3, e(7))
            + wedge(w(7) * a4 - w(8) * (a1 * Scalar("5/3") + a2), e(8))
        )
        c77, c78, c88 = t2_I_matrix(a1, a2, a3, a4)
        need(c77 * c88 != c78 * c78, "((a1+a2)^2-a1^2+a4^2)((5/3 a1+a2)^2-a1^2+a3^2) != ((a1+a2)a3-(5/3 a1+a2)a4)^2")
        R = CurvOp.from_terms([(w(7), w(7))], c77) + CurvOp.from_terms(_sym(w(7), w(8)), c78)
        R = R + CurvOp.from_terms([(w(8), w(8))], c88)
    elif case == "t2_II":
        b1, b2, b3, b4 = (p[n] for n in _PARAMS[case])
        T = wedge(big_omega1() * b1 + big_omega2() * (b1 - 3 * b2) + w(8) * b3, e(7)) + wedge(
            w(7) * b4 - w(8) * b2, e(8)
        )
        c77, c78, c88 = t2_II_matrix(b1, b2, b3, b4)
        need(c77 * c88 != c78 * c78, "(-1/2 b1(b1-3b2)+b4^2)(-1/2 b1(b1-b2)+b2^2+b3^2) != (-1/2 b3(b1-3b2)-b2b4)^2")
        R = CurvOp.from_terms([(w(7), w(7))], c77) + CurvOp.from_terms(_sym(w(7), w(8)), c78)
        R = R + CurvOp.from_terms([(w(8), w(8))], c88)
    elif case == "so3_a":
        a = p["a"]
        need(bool(a), "a != 0")
        T = so3_three_form() * a
        R = CurvOp.from_terms([(w(1), w(1)), (w(4), w(4)), (w(5), w(5))], -16 * a * a)
    else:
        b = p["b"]
        need(bool(b), "b != 0")
        T = Form.zero(3)
        F = hodge(sigma(1, rho(), so3_three_form())) * b
        terms = [
            (e(3, 6) - e(2, 7) - e(2, 8) * SQRT3, w(1)),
            (e(2, 6) + e(3, 7) - e(3, 8) * SQRT3, w(4)),
            (e(2, 3) + e(6, 7) * 2, w(5)),
        ]
        R = CurvOp.from_terms(terms, -3072 * b * b)
    chars = CharForms.from_forms(T, F)
    return SolutionFamily(case, p, chars, R, _HOLONOMY[case], T, F)


def exceptional_line(b) -> SolutionFamily:
    """The single F != 0 solution shared by the r_suc2, suc2 and t2 systems."""
    b = as_scalar(b)
    if not b:
        raise FamilyConstraintError("exceptional line: constraint violated: b != 0")
    F = wedge(varphi1() + varphi2(), e(8)) * b
    R = CurvOp.from_terms(
        [(e(6, 7), omega(5)), (-e(5, 7), omega(6)), (e(5, 6), omega(7))], -6 * b * b
    )
    chars = CharForms.from_forms(Form.zero(3), F)
    return SolutionFamily("exceptional", {"b": b}, chars, R, "suc2", Form.zero(3), F)


def classify_family_type(case: str, params=None) -> TorsionClass:
    fam = family(case, params)
    return classify(gamma_of(fam.chars))


def ricci_diagonal(fam: SolutionFamily) -> tuple[list[list[Scalar]], Scalar]:
    Rg = riemann_from_characteristic(fam.curvature, fam.chars)
    return ricci(Rg), scal(Rg)


# -- Spin(7) companion structure ------------------------------------------------


def spin7_form() -> Form:
    """``Phi = phi + *phi`` with ``phi = (phi1 + e567) ^ e8``."""
    phi = wedge(varphi1() + varphi2(), e(8))
    return phi + hodge(phi)


@dataclass(frozen=True)
class Spin7Report:
    invariant: bool
    d_phi: Form
    delta_phi: Form
    lee_form: Form
    balanced: bool
    lcp: bool


def spin7_report(case: str, params=None) -> Spin7Report:
    if _HOLONOMY.get(case) not in ("r_suc2", "suc2", "t2"):
        raise ValueError(f"no Spin(7) companion for case {case!r}")
    fam = family(case, params)
    big_phi = spin7_form()
    invariant = is_invariant(fam.holonomy, big_phi)
    dphi = d_parallel(big_phi, fam.chars)
    dlphi = delta_parallel(big_phi, fam.chars)
    theta = hodge(wedge(dlphi, big_phi)) * Scalar("1/7")
    return Spin7Report(
        invariant=invariant,
        d_phi=dphi,
        delta_phi=dlphi,
        lee_form=theta,
        balanced=not theta,
        lcp=dphi == wedge(theta, big_phi),
    )


# -- Lie algebra on h + R^8 ------------------------------------------------------


def _det(rows: list[list[Scalar]]) -> Scalar:
    m = [list(r) for r in rows]
    n = len(m)
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = ONE / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                for k in range(c, n):
                    m[r][k] = m[r][k] - f * m[c][k]
    return det


def inertia(matrix: list[list[Scalar]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix, by congruence."""
    m = [list(r) for r in matrix]
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if m[i][i]), None)
        if piv is None:
            # find an off-diagonal entry and make a nonzero diagonal from it
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j]), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                m[i][k] = m[i][k] + m[j][k]
            for k in range(n):
                m[k][i] = m[k][i] + m[k][j]
            piv = i
        d = m[piv][piv]
        if d.sign() > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for r in active:
            f = m[r][piv] / d
            if f:
                for k in range(n):
                    m[r][k] = m[r][k] - f * m[piv][k]
                for k in range(n):
                    m[k][r] = m[k][r] - f * m[k][piv]
    return pos, neg, n - pos - neg


@dataclass
class LieAlgebraTable:
    """Structure constants of a Lie algebra on a labelled basis."""

    labels: list[str]
    brackets: dict[tuple[int, int], dict[int, Scalar]]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def bracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                if i == j:
                    continue
                key, s = ((i, j), 1) if i < j else ((j, i), -1)
                for k, c in self.brackets.get(key, {}).items():
                    out[k] = out.get(k, ZERO) + a * b * c * s
        return {k: v for k, v in out.items() if v}

    def jacobi_residual(self) -> Scalar:
        total = ZERO
        n = self.dim
        for i, j, k in combinations(range(n), 3):
            x, y, z = {i: ONE}, {j: ONE}, {k: ONE}
            acc: dict = {}
            for part in (
                self.bracket(self.bracket(x, y), z),
                self.bracket(self.bracket(y, z), x),
                self.bracket(self.bracket(z, x), y),
            ):
                for key, v in part.items():
                    acc[key] = acc.get(key, ZERO) + v
            total = total + sum((v * v for v in acc.values()), ZERO)
        return total

    def ad(self, i: int) -> list[list[Scalar]]:
        """Matrix of ``ad(basis_i)`` acting on coordinate columns."""
        n = self.dim
        m = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            for k, v in self.bracket({i: ONE}, {j: ONE}).items():
                m[k][j] = v
        return m

    def killing_form(self) -> list[list[Scalar]]:
        n = self.dim
        ads = [self.ad(i) for i in range(n)]
        out = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                a, b = ads[i], ads[j]
                tr = ZERO
                for r in range(n):
                    for s in range(n):
                        if a[r][s] and b[s][r]:
                            tr = tr + a[r][s] * b[s][r]
                out[i][j] = out[j][i] = tr
        return out

    def leading_minors(self) -> list[Scalar]:
        k = self.killing_form()
        return [_det([row[:m] for row in k[:m]]) for m in range(1, self.dim + 1)]

    def is_negative_definite(self) -> bool:
        return all((m.sign() == (-1) ** (i + 1)) for i, m in enumerate(self.leading_minors()))

    def signature(self) -> tuple[int, int, int]:
        return inertia(self.killing_form())

    def centroid(self) -> list[list[list[Scalar]]]:
        """Basis of the linear maps commuting with every ``ad``."""
        n = self.dim
        ads = [self.ad(i) for i in range(n)]
        variables = [(r, s) for r in range(n) for s in range(n)]
        equations = []
        for a in ads:
            for r in range(n):
                for s in range(n):
                    # (C a - a C)[r][s]
                    eq: dict = {}
                    for t in range(n):
                        if a[t][s]:
                            eq[(r, t)] = eq.get((r, t), ZERO) + a[t][s]
                        if a[r][t]:
                            eq[(t, s)] = eq.get((t, s), ZERO) - a[r][t]
                    eq = {k: v for k, v in eq.items() if v}
                    if eq:
                        equations.append(eq)
        out = []
        for x in nullspace(equations, variables):
            c = [[ZERO] * n for _ in range(n)]
            for (r, s), v in x.items():
                c[r][s] = v
            out.append(c)
        return out

    def ideal_dimensions(self) -> list[int]:
        """Dimensions of the simple ideals, read off from the centroid.

        Each simple ideal of a semisimple algebra over the reals here has a
        one-dimensional centroid, so eigenspaces of a generic centroid element
        are the ideals.
        """
        n = self.dim
        cent = self.centroid()
        if len(cent) <= 1:
            return [n]
        # a fixed combination with distinct integer weights is generic enough
        c = [[ZERO] * n for _ in range(n)]
        for w, m in enumerate(cent, 1):
            for r in range(n):
                for s in range(n):
                    if m[r][s]:
                        c[r][s] = c[r][s] + m[r][s] * w
        values = _eigenvalues(c, len(cent))
        dims = []
        for lam in values:
            shifted = [[c[r][s] - (lam if r == s else ZERO) for s in range(n)] for r in range(n)]
            rows = [{s: v for s, v in enumerate(row) if v} for row in shifted]
            dims.append(n - rank(rows))
        return sorted(dims, reverse=True)


def _eigenvalues(c: list[list[Scalar]], count: int) -> list[Scalar]:
    """Eigenvalues of a diagonalisable matrix with ``count`` distinct ones in the field."""
    n = len(c)
    # minimal polynomial through the Krylov sequence of a generic vector
    v = [Scalar(i + 1) for i in range(n)]
    seq = [v]
    for _ in range(count):
        w = seq[-1]
        seq.append([sum((c[r][s] * w[s] for s in range(n)), ZERO) for r in range(n)])
    # solve seq[count] = sum_k coef_k seq[k]
    eqs = [{k: seq[k][r] for k in range(count) if seq[k][r]} for r in range(n)]
    from .linalg import solve

    coef = solve(eqs, [seq[count][r] for r in range(n)], list(range(count)))
    if coef is None:
        raise ArithmeticError("centroid element is not diagonalisable as expected")
    poly = [-coef.get(k, ZERO) for k in range(count)] + [ONE]  # monic, low degree first
    if count == 2:
        b, a0 = poly[1], poly[0]
        disc = b * b - 4 * a0
        root = disc.sqrt()
        if root is None:
            raise ArithmeticError("centroid eigenvalues are not in Q(sqrt 3)")
        return [(-b + root) / 2, (-b - root) / 2]
    raise NotImplementedError("only two simple ideals are supported")


def nomizu_algebra(case: str, params=None) -> LieAlgebraTable:
    """The bracket on ``h + R^8`` built from the characteristic torsion and curvature.

    ``[A+X, B+Y] = ([A,B] - R(X,Y)) + (A(Y) - B(X) - T(X,Y))``.
    """
    if case not in ("so3_a", "so3_b"):
        raise ValueError(f"the Lie algebra construction is only set up for so3_a and so3_b, not {case!r}")
    fam = family(case, params)
    h = fam.holonomy
    gens = h.generators
    nh = len(gens)
    torsion = torsion_from_char(fam.chars)
    labels = [f"A{k + 1}" for k in range(nh)] + [f"X{i}" for i in INDICES]
    brackets: dict = {}

    def put(i, j, vec):
        vec = {k: v for k, v in vec.items() if v}
        if vec:
            brackets[(i, j)] = vec

    for i, j in combinations(range(nh), 2):
        coords = h.coordinates(bracket(gens[i], gens[j]))
        put(i, j, {k: v for k, v in enumerate(coords)})
    for i in range(nh):
        for x in INDICES:
            # A(e_x) = e_x _| A as a vector
            put(i, nh + x - 1, {nh + z - 1: v for (z,), v in interior(x, gens[i]).items()})
    for x, y in combinations(INDICES, 2):
        vec: dict = {}
        curv = fam.curvature.first_factor(x, y)
        if curv:
            for k, v in enumerate(h.coordinates(curv)):
                vec[k] = -v
        for z in INDICES:
            t = torsion(x, y, z)
            if t:
                vec[nh + z - 1] = -t
        put(nh + x - 1, nh + y - 1, vec)
    return LieAlgebraTable(labels, brackets)
