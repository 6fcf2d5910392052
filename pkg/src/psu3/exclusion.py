"""Exact solution of the parallel-torsion Bianchi system on invariant tensors.

For a holonomy algebra h the unknowns are coordinates of h-invariant
characteristic forms (T, F) and of an h-invariant curvature R in
``Lambda^2 (x) h``.  The first Bianchi identity gives equations that are
linear in R and quadratic in (T, F).  They are handed to sympy as polynomials
over Q(sqrt 3) and settled with Groebner bases, which lets us certify which
solutions have F != 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import sympy as sp

from .connection import CurvOp, bianchi_lhs, bianchi_rhs
from .forms import INDICES, Form, e, wedge
from .holonomy import invariant_curvatures, invariant_subspace, subalgebra, varphi1, varphi2
from .linalg import Subspace
from .scalar import ZERO, Scalar
from .torsion import CharForms

__all__ = [
    "BianchiSystem",
    "bianchi_system",
    "Component",
    "ExclusionCertificate",
    "exclusion_certificate",
]

_SQRT3 = sp.sqrt(3)


def to_sympy(x: Scalar) -> sp.Expr:
    a = sp.Rational(int(x.a.numerator), int(x.a.denominator))
    b = sp.Rational(int(x.b.numerator), int(x.b.denominator))
    return a + b * _SQRT3


@dataclass(frozen=True)
class BianchiSystem:
    algebra: str
    t_basis: tuple[Form, ...]
    f_basis: tuple[Form, ...]
    r_basis: tuple[CurvOp, ...]
    t_vars: tuple[sp.Symbol, ...]
    f_vars: tuple[sp.Symbol, ...]
    r_vars: tuple[sp.Symbol, ...]
    equations: tuple[sp.Expr, ...]

    @property
    def variables(self) -> tuple[sp.Symbol, ...]:
        return self.r_vars + self.t_vars + self.f_vars


def _rhs_vector(c: CharForms) -> dict:
    out = {}
    for v in INDICES:
        for k, val in bianchi_rhs(c, v).items():
            out[(v, k)] = val
    return out


@lru_cache(maxsize=None)
def bianchi_system(h: str) -> BianchiSystem:
    """Polynomial form of the Bianchi identity on h-invariant data."""
    subalgebra(h)
    tb = tuple(invariant_subspace(h, "char3"))
    fb = tuple(invariant_subspace(h, "char4"))
    rb = tuple(invariant_curvatures(h))
    chars = [CharForms.from_forms(t, None) for t in tb] + [CharForms.from_forms(None, f) for f in fb]
    m = len(chars)
    single = [_rhs_vector(c) for c in chars]
    quad: dict = {}
    for a in range(m):
        quad[(a, a)] = single[a]
        for b in range(a + 1, m):
            both = _rhs_vector(chars[a] + chars[b])
            keys = set(both) | set(single[a]) | set(single[b])
            d = {}
            for k in keys:
                val = both.get(k, ZERO) - single[a].get(k, ZERO) - single[b].get(k, ZERO)
                if val:
                    d[k] = val
            quad[(a, b)] = d
    lins = []
    for R in rb:
        d = {}
        for v in INDICES:
            for k, val in bianchi_lhs(R, v).items():
                d[(v, k)] = val
        lins.append(d)
    t_vars = sp.symbols(f"t0:{len(tb)}") if tb else ()
    f_vars = sp.symbols(f"f0:{len(fb)}") if fb else ()
    r_vars = sp.symbols(f"r0:{len(rb)}") if rb else ()
    w = tuple(t_vars) + tuple(f_vars)
    keys = sorted({k for d in list(quad.values()) + lins for k in d})
    eqs = []
    for k in keys:
        expr = sum((to_sympy(lins[r][k]) * r_vars[r] for r in range(len(rb)) if k in lins[r]), sp.Integer(0))
        expr -= sum((to_sympy(d[k]) * w[a] * w[b] for (a, b), d in quad.items() if k in d), sp.Integer(0))
        expr = sp.expand(expr)
        if expr != 0:
            eqs.append(expr)
    return BianchiSystem(h, tb, fb, rb, tuple(t_vars), tuple(f_vars), tuple(r_vars), tuple(eqs))


def from_sympy(expr) -> Scalar:
    """Inverse of :func:`to_sympy` for numbers of the form a + b*sqrt(3)."""
    parts = sp.expand(expr).as_coefficients_dict()
    a, b = sp.Integer(0), sp.Integer(0)
    for term, coef in parts.items():
        if term == 1:
            a += coef
        elif term == _SQRT3:
            b += coef
        else:
            raise ValueError(f"{expr} is not in Q(sqrt 3)")
    a, b = sp.Rational(a), sp.Rational(b)
    return Scalar(f"{a.p}/{a.q}", f"{b.p}/{b.q}")


@dataclass(frozen=True)
class Component:
    """A one-parameter family of solutions, stored at a representative point."""

    T: Form
    F: Form
    R: CurvOp
    image_dim: int
    on_line: bool
    residual: Scalar


@dataclass(frozen=True)
class ExclusionCertificate:
    algebra: str
    dims: tuple[int, int, int]
    components: tuple[Component, ...]

    @property
    def full_holonomy(self) -> tuple[Component, ...]:
        """Components whose curvature image is all of h."""
        return tuple(c for c in self.components if c.image_dim == self.dims_h)

    @property
    def dims_h(self) -> int:
        return subalgebra(self.algebra).dim

    @property
    def ok(self) -> bool:
        """Every F != 0 solution has T = 0 and solves the Bianchi identity; any
        with full holonomy lies on the phi ^ e8 line."""
        return all(not c.T and not c.residual for c in self.components) and all(
            c.on_line for c in self.full_holonomy
        )


def _image_dim(R: CurvOp) -> int:
    from .linalg import rank

    rows = {}
    for (p, q), v in R.entries.items():
        rows.setdefault(p, {})[q] = v
    return rank(rows.values())


def exclusion_certificate(h: str) -> ExclusionCertificate:
    """All solutions of the invariant Bianchi system with F != 0.

    Solutions are homogeneous (T, F scale by s and R by s^2), so on the branch
    where the coordinate ``f_i`` is nonzero it can be set to 1.  Each branch is
    brought to lexicographic Groebner form and solved; the branches turn out to
    be finite, and solutions are deduplicated up to scale.
    """
    from .connection import bianchi_residual

    system = bianchi_system(h)
    line = Subspace([wedge(varphi1() + varphi2(), e(8)).coeffs])
    seen = set()
    comps = []
    for y in system.f_vars:
        eqs = [sp.expand(q.subs(y, 1)) for q in system.equations]
        rest = [v for v in system.variables if v != y]
        basis = sp.groebner(eqs, *rest, order="lex", extension=True)
        if list(basis.exprs) == [1]:
            continue
        for sol in sp.solve(list(basis.exprs), rest, dict=True):
            sol[y] = sp.Integer(1)
            free = [v for v in system.variables if v not in sol]
            if free:
                raise ArithmeticError(f"{h}: positive-dimensional branch in {free}")
            lead = next(sol[v] for v in system.f_vars if sol[v] != 0)
            key = tuple(sp.radsimp(sol[v] / lead) for v in system.t_vars + system.f_vars)
            key += tuple(sp.radsimp(sol[v] / lead**2) for v in system.r_vars)
            if key in seen:
                continue
            seen.add(key)
            point = {v: from_sympy(sol[v]) for v in system.variables}
            T = sum((b * point[v] for b, v in zip(system.t_basis, system.t_vars)), Form.zero(3))
            F = sum((b * point[v] for b, v in zip(system.f_basis, system.f_vars)), Form.zero(4))
            R = sum((b * point[v] for b, v in zip(system.r_basis, system.r_vars)), CurvOp.zero())
            residual = bianchi_residual(R, CharForms.from_forms(T, F))
            comps.append(Component(T, F, R, _image_dim(R), line.contains(F.coeffs), residual))
    dims = (len(system.t_basis), len(system.f_basis), len(system.r_basis))
    return ExclusionCertificate(h, dims, tuple(comps))
