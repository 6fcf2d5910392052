"""The PSU(3)-invariant 3-form on R^8 and the irreducible modules it cuts out.

Everything here is built constructively from ``rho``: the eight 2-forms
``omega_i = e_i _| rho`` spanning psu(3), explicit bases of the irreducible
summands of Lambda^1..Lambda^4, and of the six summands W_1..W_6 of
``R^8 (x) m`` where ``m`` is the orthogonal complement of psu(3) in Lambda^2.
Bases and projectors are computed once and cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .forms import (
    DIM,
    INDICES,
    Form,
    FormError,
    contract,
    e,
    hodge,
    inner,
    interior,
    monomials,
    sigma,
    wedge,
)
from .linalg import Subspace, axpy, nullspace
from .scalar import ONE, SQRT3, ZERO, Scalar

__all__ = [
    "rho",
    "omega",
    "sigma_plus",
    "sigma_minus",
    "MODULES",
    "ModuleInfo",
    "module_basis",
    "modules_of_degree",
    "project",
    "split",
    "pr_m",
    "pr_psu3",
    "in_m",
    "m_basis",
    "IntrinsicTorsion",
    "phi1",
    "phi2",
    "theta1",
    "theta2",
    "WComponents",
    "w_basis",
    "decompose_gamma",
]


@lru_cache(maxsize=None)
def rho() -> Form:
    return (
        e(2, 4, 6)
        - e(2, 3, 5)
        - e(1, 4, 5)
        - e(1, 3, 6)
        + wedge(e(1, 2) + e(3, 4) - 2 * e(5, 6), e(7))
        + SQRT3 * wedge(e(1, 2) - e(3, 4), e(8))
    )


@lru_cache(maxsize=None)
def omega(i: int) -> Form:
    if i not in INDICES:
        raise ValueError(f"omega index {i} outside 1..8")
    return interior(i, rho())


@lru_cache(maxsize=None)
def star_rho() -> Form:
    return hodge(rho())


def sigma_plus(alpha: Form) -> Form:
    if alpha.degree + 1 > DIM:
        raise FormError(f"sigma_+ undefined on degree {alpha.degree}")
    return sigma(1, rho(), alpha)


def sigma_minus(alpha: Form) -> Form:
    if not 2 <= alpha.degree <= 7:
        raise FormError(f"sigma_- undefined on degree {alpha.degree}")
    return sigma(2, rho(), alpha)


# -- irreducible summands of Lambda^k -----------------------------------------


@dataclass(frozen=True)
class ModuleInfo:
    label: str
    degree: int
    dim: int
    description: str


MODULES: dict[str, ModuleInfo] = {
    m.label: m
    for m in (
        ModuleInfo("L1", 1, 8, "Lambda^1"),
        ModuleInfo("L2_8", 2, 8, "psu(3) = span(omega_i)"),
        ModuleInfo("L2_20", 2, 20, "m = {w : w ^ *rho = 0}"),
        ModuleInfo("L3_1", 3, 1, "multiples of rho"),
        ModuleInfo("L3_8", 3, 8, "*(w ^ rho), w in L2_8"),
        ModuleInfo("L3_20", 3, 20, "sigma_+(L2_20)"),
        ModuleInfo("L3_27", 3, 27, "{T : T ^ rho = 0, T ^ *rho = 0}"),
        ModuleInfo("L4_8", 4, 8, "sigma_+(L3_8)"),
        ModuleInfo("L4_27", 4, 27, "sigma_+(L3_27)"),
        ModuleInfo("L4_8s", 4, 8, "*L4_8"),
        ModuleInfo("L4_27s", 4, 27, "*L4_27"),
    )
}


def modules_of_degree(k: int) -> list[str]:
    return [m.label for m in MODULES.values() if m.degree == k]


def _as_form(degree: int, vec: dict) -> Form:
    return Form._wrap(degree, {k: v for k, v in vec.items() if v})


def _kernel(degree: int, maps) -> list[Form]:
    """Forms of the given degree killed by every linear map in ``maps``."""
    variables = monomials(degree)
    rows: dict = {}
    for idx in variables:
        x = e(*idx)
        for n, f in enumerate(maps):
            image = f(x)
            for key, v in image.items():
                rows.setdefault((n, key), {})[idx] = v
    return [_as_form(degree, v) for v in nullspace(rows.values(), variables)]


@lru_cache(maxsize=None)
def module_basis(label: str) -> tuple[Form, ...]:
    if label not in MODULES:
        raise KeyError(f"unknown module {label!r}; expected one of {sorted(MODULES)}")
    if label == "L1":
        return tuple(e(i) for i in INDICES)
    if label == "L2_8":
        return tuple(sigma_plus(e(i)) for i in INDICES)
    if label == "L2_20":
        srho = star_rho()
        return tuple(_kernel(2, [lambda w: wedge(w, srho)]))
    if label == "L3_1":
        return (rho(),)
    if label == "L3_8":
        return tuple(hodge(wedge(w, rho())) for w in module_basis("L2_8"))
    if label == "L3_20":
        return tuple(sigma_plus(w) for w in module_basis("L2_20"))
    if label == "L3_27":
        r, srho = rho(), star_rho()
        return tuple(_kernel(3, [lambda t: wedge(t, r), lambda t: wedge(t, srho)]))
    if label == "L4_8":
        return tuple(sigma_plus(t) for t in module_basis("L3_8"))
    if label == "L4_27":
        return tuple(sigma_plus(t) for t in module_basis("L3_27"))
    if label == "L4_8s":
        return tuple(hodge(f) for f in module_basis("L4_8"))
    if label == "L4_27s":
        return tuple(hodge(f) for f in module_basis("L4_27"))
    raise AssertionError(label)


@lru_cache(maxsize=None)
def _subspace(label: str) -> Subspace:
    return Subspace([dict(f.items()) for f in module_basis(label)])


def project(label: str, alpha: Form) -> Form:
    """Orthogonal projection of ``alpha`` onto the named module."""
    info = MODULES.get(label)
    if info is None:
        raise KeyError(f"unknown module {label!r}")
    if alpha.degree != info.degree:
        raise FormError(f"{label} lives in degree {info.degree}, got a {alpha.degree}-form")
    return _as_form(info.degree, _subspace(label).project(dict(alpha.items())))


def split(alpha: Form) -> dict[str, Form]:
    """Components of ``alpha`` in every module of its degree (degrees 1..4)."""
    labels = modules_of_degree(alpha.degree)
    if not labels:
        raise FormError(f"no module decomposition for degree {alpha.degree}")
    return {label: project(label, alpha) for label in labels}


# -- psu(3) and its complement m ---------------------------------------------


def pr_psu3(w: Form) -> Form:
    if w.degree != 2:
        raise FormError("pr_psu3 takes a 2-form")
    # the omega_i are orthogonal with |omega_i|^2 = 6
    out = Form.zero(2)
    for i in INDICES:
        c = inner(w, omega(i))
        if c:
            out = out + omega(i) * (c / 6)
    return out


def pr_m(w: Form) -> Form:
    return w - pr_psu3(w)


def in_m(w: Form) -> bool:
    return w.degree == 2 and not wedge(w, star_rho())


def m_basis() -> tuple[Form, ...]:
    return module_basis("L2_20")


class IntrinsicTorsion:
    """An element of ``R^8 (x) m``: slot ``i`` holds the 2-form ``Gamma(e_i)``."""

    __slots__ = ("slots",)

    def __init__(self, slots: Sequence[Form], check: bool = True) -> None:
        slots = tuple(slots)
        if len(slots) != DIM:
            raise ValueError(f"need {DIM} slots, got {len(slots)}")
        for i, w in enumerate(slots, 1):
            if w.degree != 2:
                raise FormError(f"slot {i} is a {w.degree}-form, expected a 2-form")
            if check and not in_m(w):
                raise ValueError(f"slot {i} does not lie in m = Lambda^2_20")
        object.__setattr__(self, "slots", slots)

    def __setattr__(self, name, value):
        raise AttributeError("IntrinsicTorsion is immutable")

    @classmethod
    def zero(cls) -> IntrinsicTorsion:
        return cls([Form.zero(2)] * DIM, check=False)

    @classmethod
    def from_vector(cls, vec: dict) -> IntrinsicTorsion:
        slots: list[dict] = [{} for _ in range(DIM)]
        for (i, key), v in vec.items():
            slots[i - 1][key] = v
        return cls([_as_form(2, s) for s in slots], check=False)

    def vector(self) -> dict:
        return {(i, key): v for i, w in enumerate(self.slots, 1) for key, v in w.items()}

    def __getitem__(self, i: int) -> Form:
        return self.slots[i - 1]

    def __iter__(self) -> Iterator[Form]:
        return iter(self.slots)

    def __add__(self, other: IntrinsicTorsion) -> IntrinsicTorsion:
        return IntrinsicTorsion([a + b for a, b in zip(self.slots, other.slots)], check=False)

    def __sub__(self, other: IntrinsicTorsion) -> IntrinsicTorsion:
        return IntrinsicTorsion([a - b for a, b in zip(self.slots, other.slots)], check=False)

    def __neg__(self) -> IntrinsicTorsion:
        return IntrinsicTorsion([-a for a in self.slots], check=False)

    def __mul__(self, s) -> IntrinsicTorsion:
        return IntrinsicTorsion([a * s for a in self.slots], check=False)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.slots)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntrinsicTorsion):
            return all(a == b for a, b in zip(self.slots, other.slots))
        if other == 0:
            return not self
        return NotImplemented

    def __hash__(self):
        return hash(self.slots)

    def inner(self, other: IntrinsicTorsion) -> Scalar:
        """Tensor-product inner product ``sum_i <Gamma(e_i), Gamma'(e_i)>``."""
        return sum((inner(a, b) for a, b in zip(self.slots, other.slots)), ZERO)

    def __repr__(self) -> str:
        return "IntrinsicTorsion(" + ", ".join(str(w) for w in self.slots) + ")"


def phi1(gamma: IntrinsicTorsion) -> Form:
    """``X (x) w -> X ^ w``."""
    out = Form.zero(3)
    for i, w in enumerate(gamma.slots, 1):
        if w:
            out = out + wedge(e(i), w)
    return out


def phi2(gamma: IntrinsicTorsion) -> Form:
    """``X (x) w -> (X _| rho) ^ w``."""
    out = Form.zero(4)
    for i, w in enumerate(gamma.slots, 1):
        if w:
            out = out + wedge(omega(i), w)
    return out


def theta1(t: Form) -> IntrinsicTorsion:
    if t.degree != 3:
        raise FormError(f"theta1 takes a 3-form, got degree {t.degree}")
    return IntrinsicTorsion([pr_m(interior(i, t)) * Scalar("-1/2") for i in INDICES], check=False)


def theta2(f: Form) -> IntrinsicTorsion:
    if f.degree != 4:
        raise FormError(f"theta2 takes a 4-form, got degree {f.degree}")
    return IntrinsicTorsion([-pr_m(contract(omega(i), f)) for i in INDICES], check=False)


# -- W_1 .. W_6 ---------------------------------------------------------------

_W_SOURCES = {1: ("L3_8", theta1), 2: ("L3_20", theta1), 3: ("L3_27", theta1),
              4: ("L4_8s", theta2), 5: ("L4_27s", theta2)}


@lru_cache(maxsize=None)
def w_basis(n: int) -> tuple[IntrinsicTorsion, ...]:
    """Basis of W_n; W_1..W_5 are Theta-images, W_6 = ker Phi_1 ^ ker Phi_2."""
    if n in _W_SOURCES:
        label, theta = _W_SOURCES[n]
        return tuple(theta(x) for x in module_basis(label))
    if n != 6:
        raise ValueError(f"W_{n} does not exist")
    mb = m_basis()
    variables = [(i, b) for i in INDICES for b in range(len(mb))]
    rows: dict = {}
    for i, b in variables:
        for tag, image in (("phi1", wedge(e(i), mb[b])), ("phi2", wedge(omega(i), mb[b]))):
            for key, v in image.items():
                rows.setdefault((tag, key), {})[(i, b)] = v
    out = []
    for vec in nullspace(rows.values(), variables):
        slots = [Form.zero(2)] * DIM
        for (i, b), c in vec.items():
            slots[i - 1] = slots[i - 1] + mb[b] * c
        out.append(IntrinsicTorsion(slots, check=False))
    return tuple(out)


@lru_cache(maxsize=None)
def _w_subspace(n: int) -> Subspace:
    return Subspace([g.vector() for g in w_basis(n)])


@dataclass(frozen=True)
class WComponents:
    """The six components ``Gamma_1 .. Gamma_6`` of an intrinsic torsion."""

    gammas: tuple[IntrinsicTorsion, ...]

    def __getitem__(self, n: int) -> IntrinsicTorsion:
        return self.gammas[n - 1]

    def total(self) -> IntrinsicTorsion:
        out = IntrinsicTorsion.zero()
        for g in self.gammas:
            out = out + g
        return out

    def nonzero(self) -> tuple[int, ...]:
        return tuple(n for n, g in enumerate(self.gammas, 1) if g)


def decompose_gamma(gamma: IntrinsicTorsion) -> WComponents:
    vec = gamma.vector()
    parts = []
    rest = dict(vec)
    for n in range(1, 6):
        p = _w_subspace(n).project(vec)
        axpy(rest, -ONE, p)
        parts.append(IntrinsicTorsion.from_vector(p))
    parts.append(IntrinsicTorsion.from_vector(rest))
    return WComponents(tuple(parts))


def check_in_w6(gamma: IntrinsicTorsion) -> bool:
    return not phi1(gamma) and not phi2(gamma)
