"""Torsion tensors, the characteristic connection and its curvature.

Tensors are stored sparsely over the frame e_1..e_8.  A ``TorsionTensor``
is antisymmetric in its first two slots, a ``ConnTensor`` in its last two.
Curvature is a 28x28 matrix ``M`` over the lexicographic basis of 2-forms,
meaning ``R(X,Y,Z,V) = sum M[p][q] e_p(X,Y) e_q(Z,V)``.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Mapping

from .forms import INDICES, Form, FormError, contract, interior, monomials, wedge
from .modules import omega, rho
from .scalar import ZERO, Scalar, as_scalar
from .torsion import CharForms

__all__ = [
    "PAIRS",
    "TorsionTensor",
    "ConnTensor",
    "CurvOp",
    "torsion_from_char",
    "torsion_from_forms",
    "decompose_torsion",
    "conn_from_torsion",
    "torsion_from_conn",
    "conn_from_char",
    "d_parallel",
    "delta_parallel",
    "lie_derivative",
    "char_form_derivatives",
    "bianchi_rhs",
    "bianchi_lhs",
    "bianchi_residual",
    "torsion_cyclic_sum",
    "torsion_trace",
    "is_skew",
    "is_cyclic",
    "is_vectorial",
    "torsion_bianchi_rhs",
    "riemann_from_characteristic",
    "riemann_general",
    "ricci",
    "RICCI_CONVENTIONS",
    "scal",
]

PAIRS: tuple[tuple[int, int], ...] = monomials(2)
_PAIR_INDEX = {p: n for n, p in enumerate(PAIRS)}


def _pair(x: int, y: int):
    """Sorted pair and sign, or (None, 0) if x == y."""
    if x == y:
        return None, 0
    return ((x, y), 1) if x < y else ((y, x), -1)


def _clean(coeffs: Mapping) -> dict:
    return {k: as_scalar(v) for k, v in coeffs.items() if v}


class _Tensor3:
    """Shared arithmetic for the two three-slot tensor types."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping | None = None) -> None:
        c = _clean(coeffs or {})
        for k in c:
            self._check_key(k)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def _wrap(cls, c: dict):
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", {k: v for k, v in c.items() if v})
        return obj

    @classmethod
    def zero(cls):
        return cls._wrap({})

    def _binop(self, other, sign):
        if type(other) is not type(self):
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + (v if sign > 0 else -v)
        return type(self)._wrap(out)

    def __add__(self, other):
        return self._binop(other, 1)

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return type(self)._wrap({k: -v for k, v in self.coeffs.items()})

    def __mul__(self, s):
        s = as_scalar(s)
        return type(self)._wrap({k: v * s for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if other == 0:
            return not self.coeffs
        if type(other) is not type(self):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def norm_sq(self) -> Scalar:
        """Sum of squares over all ordered frame triples."""
        return sum((v * v for v in self.coeffs.values()), ZERO) * 2

    def inner(self, other) -> Scalar:
        total = ZERO
        for k, v in self.coeffs.items():
            w = other.coeffs.get(k)
            if w is not None:
                total = total + v * w
        return total * 2

    def __repr__(self) -> str:
        return f"{type(self).__name__}({len(self.coeffs)} terms)"


class TorsionTensor(_Tensor3):
    """A tensor ``T(X,Y,Z)`` with ``T(X,Y,Z) = -T(Y,X,Z)``.

    Keys are ``((i, j), k)`` with ``i < j``.
    """

    __slots__ = ()

    @staticmethod
    def _check_key(k) -> None:
        (i, j), z = k
        if not (1 <= i < j <= 8 and 1 <= z <= 8):
            raise FormError(f"bad torsion tensor key {k!r}")

    def __call__(self, x: int, y: int, z: int) -> Scalar:
        p, s = _pair(x, y)
        if not s:
            return ZERO
        v = self.coeffs.get((p, z))
        return ZERO if v is None else (v if s > 0 else -v)

    @classmethod
    def from_function(cls, f: Callable[[int, int, int], Scalar]) -> TorsionTensor:
        return cls._wrap({(p, z): as_scalar(f(p[0], p[1], z)) for p in PAIRS for z in INDICES})

    @classmethod
    def from_three_form(cls, t: Form) -> TorsionTensor:
        if t.degree != 3:
            raise FormError("a 3-form is required")
        return cls.from_function(lambda x, y, z: t(x, y, z))

    @classmethod
    def from_vector(cls, v: Form) -> TorsionTensor:
        """``<V,X><Y,Z> - <V,Y><X,Z>``."""
        if v.degree != 1:
            raise FormError("a 1-form is required")
        return cls.from_function(
            lambda x, y, z: (v(x) if y == z else ZERO) - (v(y) if x == z else ZERO)
        )

    def vector_valued(self, x: int, y: int) -> Form:
        """The 1-form ``Z -> T(X,Y,Z)``."""
        return Form(1, {(z,): self(x, y, z) for z in INDICES})


class ConnTensor(_Tensor3):
    """A tensor ``A(X,Y,Z)`` with ``A(X,Y,Z) = -A(X,Z,Y)``.

    Keys are ``(i, (j, k))`` with ``j < k``.
    """

    __slots__ = ()

    @staticmethod
    def _check_key(k) -> None:
        x, (j, l) = k
        if not (1 <= j < l <= 8 and 1 <= x <= 8):
            raise FormError(f"bad connection tensor key {k!r}")

    def __call__(self, x: int, y: int, z: int) -> Scalar:
        p, s = _pair(y, z)
        if not s:
            return ZERO
        v = self.coeffs.get((x, p))
        return ZERO if v is None else (v if s > 0 else -v)

    @classmethod
    def from_function(cls, f: Callable[[int, int, int], Scalar]) -> ConnTensor:
        return cls._wrap({(x, p): as_scalar(f(x, p[0], p[1])) for x in INDICES for p in PAIRS})

    def two_form(self, x: int) -> Form:
        """The 2-form ``(Y,Z) -> A(X,Y,Z)``."""
        return Form(2, {p: self(x, *p) for p in PAIRS})


# -- characteristic torsion ---------------------------------------------------


def _f_forms(F: Form) -> list[Form]:
    """``(e_k _| rho) _| F`` for k = 1..8 (index 0 unused)."""
    return [Form.zero(2)] + [contract(omega(k), F) for k in INDICES]


def torsion_from_forms(T: Form, F: Form) -> TorsionTensor:
    G = _f_forms(F)
    return TorsionTensor.from_function(lambda x, y, z: T(x, y, z) - G[z](x, y))


def torsion_from_char(c: CharForms) -> TorsionTensor:
    return torsion_from_forms(c.T, c.F)


def conn_from_char(c: CharForms) -> ConnTensor:
    T, G = c.T, _f_forms(c.F)
    half = Scalar("1/2")
    return ConnTensor.from_function(lambda x, y, z: T(x, y, z) * half + G[x](y, z))


def conn_from_torsion(t: TorsionTensor) -> ConnTensor:
    half = Scalar("1/2")
    return ConnTensor.from_function(
        lambda x, y, z: (t(x, y, z) - t(y, z, x) + t(z, x, y)) * half
    )


def torsion_from_conn(a: ConnTensor) -> TorsionTensor:
    return TorsionTensor.from_function(lambda x, y, z: a(x, y, z) - a(y, x, z))


def torsion_cyclic_sum(t: TorsionTensor) -> Form:
    """The 3-form ``S_{X,Y,Z} T(X,Y,Z)``."""
    return Form(3, {k: t(*k) + t(k[1], k[2], k[0]) + t(k[2], k[0], k[1]) for k in monomials(3)})


def torsion_trace(t: TorsionTensor) -> Form:
    """The 1-form ``X -> sum_i T(X, e_i, e_i)``."""
    return Form(1, {(x,): sum((t(x, i, i) for i in INDICES), ZERO) for x in INDICES})


def decompose_torsion(t: TorsionTensor) -> tuple[Form, Form, TorsionTensor]:
    """Split into the vector part, the skew part and the rest.

    Returns ``(V, S, t160)`` with ``t = from_vector(V) + from_three_form(S) + t160``.
    """
    skew = torsion_cyclic_sum(t) * Scalar("1/3")
    vec = torsion_trace(t) * Scalar("1/7")
    rest = t - TorsionTensor.from_vector(vec) - TorsionTensor.from_three_form(skew)
    return vec, skew, rest


def is_skew(t: TorsionTensor) -> bool:
    vec, _, rest = decompose_torsion(t)
    return not vec and not rest


def is_cyclic(t: TorsionTensor) -> bool:
    return not torsion_cyclic_sum(t)


def is_vectorial(t: TorsionTensor) -> bool:
    _, skew, rest = decompose_torsion(t)
    return not skew and not rest


# -- differentials of parallel forms ------------------------------------------


def _check_invariant(alpha: Form, algebra: Iterable[Form] | None) -> None:
    if algebra is None:
        return
    from .forms import sigma

    for w in algebra:
        if sigma(1, w, alpha):
            raise FormError("form is not invariant under the holonomy algebra")


def d_parallel(alpha: Form, c: CharForms, algebra: Iterable[Form] | None = None) -> Form:
    """``d alpha`` for a form parallel under the characteristic connection."""
    _check_invariant(alpha, algebra)
    if alpha.degree in (0, 8):
        return Form.zero(alpha.degree + 1) if alpha.degree < 8 else Form.zero(8)
    T, G = c.T, _f_forms(c.F)
    out = Form.zero(alpha.degree + 1)
    for i in INDICES:
        ia = interior(i, alpha)
        if ia:
            out = out + wedge(interior(i, T) - G[i], ia)
    return out


def delta_parallel(alpha: Form, c: CharForms, algebra: Iterable[Form] | None = None) -> Form:
    """``delta alpha`` for a form parallel under the characteristic connection."""
    _check_invariant(alpha, algebra)
    k = alpha.degree
    if k == 0:
        return Form.zero(0)
    T, F, G = c.T, c.F, _f_forms(c.F)
    out = contract(contract(rho(), F), alpha) * -3
    if k >= 2:
        half = Scalar("1/2")
        for i, j in product(INDICES, INDICES):
            ija = interior(i, interior(j, alpha))
            if not ija:
                continue
            out = out + wedge(interior(i, interior(j, T)) * half + interior(i, G[j]), ija)
    return out


def lie_derivative(x: int, alpha: Form, c: CharForms) -> Form:
    """``L_{e_x} alpha = d(e_x _| alpha) + e_x _| d alpha`` for parallel data."""
    inner_part = interior(x, alpha) if alpha.degree else Form.zero(0)
    first = d_parallel(inner_part, c) if alpha.degree else Form.zero(1)
    return first + interior(x, d_parallel(alpha, c))


def char_form_derivatives(c: CharForms) -> tuple[Form, Form, Form, Form]:
    """``(dT, delta T, dF, delta F)`` when the characteristic torsion is parallel."""
    T, F, G = c.T, c.F, _f_forms(c.F)
    rf = contract(rho(), F)
    half = Scalar("1/2")
    dT = Form.zero(4)
    dF = Form.zero(5)
    dlT = contract(rf, T) * -3
    dlF = contract(rf, F) * -3
    for i in INDICES:
        iT, iF = interior(i, T), interior(i, F)
        dT = dT + wedge(iT, iT) - wedge(G[i], iT)
        dF = dF + wedge(iT, iF) - wedge(G[i], iF)
    for i, j in product(INDICES, INDICES):
        ijT = interior(i, interior(j, T))
        ijF = interior(i, interior(j, F))
        iG = interior(i, G[j])
        dlT = dlT + wedge(iG, ijT)
        dlF = dlF + wedge(ijT, ijF) * half + wedge(iG, ijF)
    return dT, dlT, dF, dlF


# -- curvature ----------------------------------------------------------------


class CurvOp:
    """A curvature-type tensor as a 28x28 matrix over 2-forms.

    ``matrix[p][q]`` is the coefficient of ``e_{PAIRS[p]} (x) e_{PAIRS[q]}``.
    No pair-exchange symmetry is assumed.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping | None = None) -> None:
        c = {}
        for (p, q), v in (entries or {}).items():
            if not (0 <= p < 28 and 0 <= q < 28):
                raise FormError(f"bad curvature index {(p, q)!r}")
            if v:
                c[(p, q)] = as_scalar(v)
        object.__setattr__(self, "entries", c)

    def __setattr__(self, name, value):
        raise AttributeError("CurvOp is immutable")

    @classmethod
    def zero(cls) -> CurvOp:
        return cls()

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Form, Form]], scale=1) -> CurvOp:
        """``scale * sum alpha (x) beta`` over 2-form pairs."""
        s = as_scalar(scale)
        out: dict = {}
        for a, b in terms:
            if a.degree != 2 or b.degree != 2:
                raise FormError("curvature terms must be pairs of 2-forms")
            for ka, va in a.items():
                for kb, vb in b.items():
                    key = (_PAIR_INDEX[ka], _PAIR_INDEX[kb])
                    out[key] = out.get(key, ZERO) + va * vb * s
        return cls(out)

    @classmethod
    def from_function(cls, f: Callable[[int, int, int, int], Scalar]) -> CurvOp:
        return cls(
            {(p, q): f(*PAIRS[p], *PAIRS[q]) for p in range(28) for q in range(28)}
        )

    def __call__(self, x: int, y: int, z: int, v: int) -> Scalar:
        p, s1 = _pair(x, y)
        q, s2 = _pair(z, v)
        if not s1 or not s2:
            return ZERO
        val = self.entries.get((_PAIR_INDEX[p], _PAIR_INDEX[q]))
        if val is None:
            return ZERO
        return val if s1 * s2 > 0 else -val

    def matrix(self) -> list[list[Scalar]]:
        return [[self.entries.get((p, q), ZERO) for q in range(28)] for p in range(28)]

    def first_factor(self, x: int, y: int) -> Form:
        """The 2-form ``R(X,Y,.,.)``."""
        return Form(2, {PAIRS[q]: self(x, y, *PAIRS[q]) for q in range(28)})

    def __add__(self, other: CurvOp) -> CurvOp:
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return CurvOp(out)

    def __sub__(self, other: CurvOp) -> CurvOp:
        return self + other * -1

    def __mul__(self, s) -> CurvOp:
        s = as_scalar(s)
        return CurvOp({k: v * s for k, v in self.entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if type(other) is not CurvOp:
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __repr__(self) -> str:
        return f"CurvOp({len(self.entries)} nonzero entries)"

    def to_json(self) -> dict:
        return {
            "basis": [f"e{i}{j}" for i, j in PAIRS],
            "matrix": [[v.to_json() for v in row] for row in self.matrix()],
        }

    @classmethod
    def from_json(cls, doc) -> CurvOp:
        try:
            rows = doc["matrix"]
        except (TypeError, KeyError):
            raise FormError("curvature JSON needs a 'matrix' field") from None
        if len(rows) != 28 or any(len(r) != 28 for r in rows):
            raise FormError("curvature matrix must be 28x28")
        out = {}
        for p, row in enumerate(rows):
            for q, v in enumerate(row):
                try:
                    out[(p, q)] = Scalar.from_json(v)
                except (TypeError, ValueError, ZeroDivisionError) as exc:
                    raise FormError(f"matrix[{p}][{q}]: {exc}") from None
        return cls(out)


def bianchi_rhs(c: CharForms, v: int) -> Form:
    """Right hand side of the first Bianchi identity, as a 3-form in (X,Y,Z)."""
    T, G = c.T, _f_forms(c.F)
    vT = interior(v, T)
    out = Form.zero(3)
    for i in INDICES:
        left = interior(i, T) - G[i]
        right = interior(i, vT) - interior(i, G[v])
        if left and right:
            out = out + wedge(left, right)
    return out


def bianchi_lhs(R: CurvOp, v: int) -> Form:
    """The 3-form ``S_{X,Y,Z} R(X,Y,Z,V)``."""
    return Form(
        3,
        {(x, y, z): R(x, y, z, v) + R(y, z, x, v) + R(z, x, y, v) for x, y, z in monomials(3)},
    )


def torsion_bianchi_rhs(t: TorsionTensor, v: int) -> Form:
    """``S_{X,Y,Z} sum_i T(X,Y,e_i) T(e_i,Z,V)`` for a torsion tensor."""

    def term(x, y, z):
        return sum((t(x, y, i) * t(i, z, v) for i in INDICES), ZERO)

    return Form(
        3,
        {(x, y, z): term(x, y, z) + term(y, z, x) + term(z, x, y) for x, y, z in monomials(3)},
    )


def bianchi_residual(R: CurvOp, c: CharForms) -> Scalar:
    """Sum over all ordered frame quadruples of the squared Bianchi defect."""
    total = ZERO
    for v in INDICES:
        diff = bianchi_lhs(R, v) - bianchi_rhs(c, v)
        # each sorted triple stands for its 6 orderings
        total = total + sum((d * d for d in diff.coeffs.values()), ZERO) * 6
    return total


def riemann_general(
    R: CurvOp,
    t: TorsionTensor,
    a: ConnTensor,
    nabla_a: Callable[[int, int, int, int], Scalar] | None = None,
) -> CurvOp:
    """Riemannian curvature from the characteristic curvature.

    ``nabla_a(X, Y, Z, V)`` is the covariant derivative of the connection
    tensor in direction X; it is taken to be zero when omitted.
    """

    def value(x, y, z, v):
        out = R(x, y, z, v)
        if nabla_a is not None:
            out = out - nabla_a(x, y, z, v) + nabla_a(y, x, z, v)
        for i in INDICES:
            out = out - (t(x, y, i) * a(i, z, v) + a(x, v, i) * a(y, z, i) - a(y, v, i) * a(x, z, i))
        return out

    return CurvOp.from_function(value)


def riemann_from_characteristic(R: CurvOp, c: CharForms) -> CurvOp:
    """Riemannian curvature when the characteristic torsion is parallel."""
    return riemann_general(R, torsion_from_char(c), conn_from_char(c))


RICCI_CONVENTIONS: dict[str, Callable] = {
    "first-last": lambda R, j, x, v: R(j, x, v, j),
    "first-third": lambda R, j, x, v: R(j, x, j, v),
    "second-third": lambda R, j, x, v: R(x, j, j, v),
    "second-last": lambda R, j, x, v: R(x, j, v, j),
}


def ricci(Rg: CurvOp, convention: str = "first-last") -> list[list[Scalar]]:
    """Ricci tensor ``Ric(X,V) = sum_j R(e_j, X, V, e_j)`` as an 8x8 matrix."""
    try:
        f = RICCI_CONVENTIONS[convention]
    except KeyError:
        raise ValueError(f"unknown Ricci convention {convention!r}") from None
    return [
        [sum((f(Rg, j, x, v) for j in INDICES), ZERO) for v in INDICES] for x in INDICES
    ]


def scal(Rg: CurvOp, convention: str = "first-last") -> Scalar:
    ric = ricci(Rg, convention)
    return sum((ric[i][i] for i in range(8)), ZERO)

