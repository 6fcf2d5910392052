"""Classification of PSU(3)-structures by their intrinsic torsion.

The 64 classes are the subsets of {W1..W6}.  The W1..W5 part of an intrinsic
torsion is carried by the characteristic forms ``(T, F)``; the exterior
derivative and codifferential of ``rho`` are explicit in them, and conversely
``(T, F)`` can be read back from ``(d rho, delta rho)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .forms import Form, FormError, contract, e, hodge, interior, sigma, wedge
from .modules import (
    IntrinsicTorsion,
    decompose_gamma,
    phi1,
    phi2,
    project,
    rho,
    sigma_minus,
    sigma_plus,
    theta1,
    theta2,
)
from .scalar import Scalar

__all__ = [
    "CharForms",
    "TorsionClass",
    "NotRealizable",
    "classify",
    "char_forms_of",
    "gamma_of",
    "d_rho",
    "delta_rho",
    "recover_char_forms",
    "pi1",
    "pi2",
    "CLASS_ROWS",
    "class_conditions",
    "predicted_rows",
]

_SLOTS = {"T8": "L3_8", "T20": "L3_20", "T27": "L3_27", "F8": "L4_8s", "F27": "L4_27s"}


class NotRealizable(ValueError):
    """The pair (d rho, delta rho) does not come from any characteristic forms."""


def _zero(degree):
    return field(default_factory=lambda: Form.zero(degree))


@dataclass(frozen=True)
class CharForms:
    """Characteristic forms ``T = T8 + T20 + T27`` and ``F = F8 + F27``."""

    T8: Form = _zero(3)
    T20: Form = _zero(3)
    T27: Form = _zero(3)
    F8: Form = _zero(4)
    F27: Form = _zero(4)

    def __post_init__(self):
        for name in ("T8", "T20", "T27"):
            if getattr(self, name).degree != 3:
                raise FormError(f"{name} must be a 3-form")
        for name in ("F8", "F27"):
            if getattr(self, name).degree != 4:
                raise FormError(f"{name} must be a 4-form")

    @classmethod
    def from_forms(cls, T: Form | None = None, F: Form | None = None) -> CharForms:
        """Split ``T`` and ``F`` into module components (no membership check)."""
        T = T if T is not None else Form.zero(3)
        F = F if F is not None else Form.zero(4)
        return cls(
            project("L3_8", T),
            project("L3_20", T),
            project("L3_27", T),
            project("L4_8s", F),
            project("L4_27s", F),
        )

    @property
    def T(self) -> Form:
        return self.T8 + self.T20 + self.T27

    @property
    def F(self) -> Form:
        return self.F8 + self.F27

    def components(self) -> dict[str, Form]:
        return {name: getattr(self, name) for name in _SLOTS}

    def violations(self) -> list[str]:
        """Names of components that do not lie in their module."""
        return [n for n, f in self.components().items() if project(_SLOTS[n], f) != f]

    def is_valid(self) -> bool:
        return not self.violations()

    def __bool__(self) -> bool:
        return any(self.components().values())

    def scaled(self, s) -> CharForms:
        return CharForms(*(f * s for f in self.components().values()))

    def __add__(self, other: CharForms) -> CharForms:
        return CharForms(*(a + b for a, b in zip(self.components().values(), other.components().values())))


@dataclass(frozen=True)
class TorsionClass:
    """The set of W-summands in which an intrinsic torsion has a nonzero part."""

    members: frozenset[int]

    @property
    def strict(self) -> dict[int, bool]:
        # every member of a computed class is nonzero by construction
        return {n: True for n in sorted(self.members)}

    def is_of_type(self, allowed) -> bool:
        return self.members <= frozenset(allowed)

    def is_of_strict_type(self, allowed) -> bool:
        return self.members == frozenset(allowed)

    def render(self) -> str:
        if not self.members:
            return "integrable"
        return "+".join(f"W{n}" for n in sorted(self.members))

    __str__ = render

    @classmethod
    def parse(cls, text: str) -> TorsionClass:
        text = text.strip()
        if text == "integrable":
            return cls(frozenset())
        return cls(frozenset(int(part.strip()[1:]) for part in text.split("+")))


def classify(gamma: IntrinsicTorsion) -> TorsionClass:
    return TorsionClass(frozenset(decompose_gamma(gamma).nonzero()))


def char_forms_of(gamma: IntrinsicTorsion) -> CharForms:
    """Characteristic forms of ``gamma`` (its W6 part is discarded)."""
    w = decompose_gamma(gamma)
    return CharForms(
        phi1(w[1]) * -2,
        -phi1(w[2]),
        phi1(w[3]) * Scalar("-3/4"),
        phi2(w[4]) * Scalar("-1/18"),
        phi2(w[5]) * Scalar("-1/8"),
    )


def gamma_of(c: CharForms, w6: IntrinsicTorsion | None = None) -> IntrinsicTorsion:
    g = theta1(c.T) + theta2(c.F)
    return g + w6 if w6 is not None else g


def pi1(gamma: IntrinsicTorsion) -> Form:
    """``d rho`` as a function of the intrinsic torsion."""
    r = rho()
    out = Form.zero(4)
    for i, w in enumerate(gamma.slots, 1):
        if w:
            out = out + wedge(e(i), sigma(1, w, r))
    return out


def pi2(gamma: IntrinsicTorsion) -> Form:
    """``delta rho`` as a function of the intrinsic torsion."""
    r = rho()
    out = Form.zero(2)
    for i, w in enumerate(gamma.slots, 1):
        if w:
            out = out - interior(i, sigma(1, w, r))
    return out


def d_rho(c: CharForms) -> Form:
    return sigma_plus(c.T8 + c.T27) - c.F8 * 18 - c.F27 * 8


def delta_rho(c: CharForms) -> Form:
    return -sigma_minus(c.T20) - sigma_plus(contract(rho(), c.F8)) * 3


def recover_char_forms(drho: Form, deltarho: Form) -> CharForms:
    """Invert ``(d_rho, delta_rho)``.

    Raises :class:`NotRealizable` if the recovered forms do not reproduce the
    input or fall outside their modules.
    """
    if drho.degree != 4 or deltarho.degree != 2:
        raise FormError("expected a 4-form d rho and a 2-form delta rho")
    r = rho()
    sm = sigma_minus(drho)
    T8 = contract(r, wedge(r, sm)) * Scalar("1/60")
    T20 = sigma_plus(deltarho) * Scalar("-1/12")
    T27 = (sm - T8 * 6) * Scalar("1/16")
    F8 = wedge(r, contract(r, drho)) * Scalar("-1/180")
    F27 = (drho - sigma_plus(T8 + T27) + F8 * 18) * Scalar("-1/8")
    c = CharForms(T8, T20, T27, F8, F27)
    bad = c.violations()
    if bad or d_rho(c) != drho or delta_rho(c) != deltarho:
        detail = f" (components outside their modules: {', '.join(bad)})" if bad else ""
        raise NotRealizable("not realizable" + detail)
    return c


# -- differential characterisation of the 64 classes --------------------------


def _row_type(drho: Form, deltarho: Form):
    r = rho()
    sd = hodge(drho)
    yield not contract(r, sd)
    yield deltarho * 6 == contract(contract(deltarho, r), r)
    yield not sigma_minus(drho * 10 - hodge(wedge(r, contract(r, sd))))
    yield (not contract(deltarho, r)) or (not contract(r, drho))
    yield not sigma_minus(sd * 10 - hodge(wedge(r, contract(r, drho))))
    yield not sigma_minus(drho)
    yield not sigma_minus(sd)
    yield not deltarho
    yield sd * 10 == wedge(r, contract(r, sd))
    yield drho * 10 == wedge(r, contract(r, drho))
    yield not drho
    yield (not drho) and (not deltarho)


@dataclass(frozen=True)
class ClassRow:
    name: str
    allowed: frozenset[int]
    condition: str


CLASS_ROWS: tuple[ClassRow, ...] = tuple(
    ClassRow(f"row{n:02d}", frozenset(allowed), cond)
    for n, (allowed, cond) in enumerate(
        [
            ({2, 3, 4, 5, 6}, "rho _| *d rho = 0"),
            ({1, 3, 4, 5, 6}, "6 delta rho = (delta rho _| rho) _| rho"),
            ({1, 2, 4, 5, 6}, "sigma_-(10 d rho - *(rho ^ (rho _| *d rho))) = 0"),
            ({1, 2, 3, 5, 6}, "delta rho _| rho = 0 or rho _| d rho = 0"),
            ({1, 2, 3, 4, 6}, "sigma_-(10 *d rho - *(rho ^ (rho _| d rho))) = 0"),
            ({2, 4, 5, 6}, "sigma_-(d rho) = 0"),
            ({1, 2, 3, 6}, "sigma_-(*d rho) = 0"),
            ({1, 3, 5, 6}, "delta rho = 0"),
            ({1, 2, 6}, "10 *d rho = rho ^ (rho _| *d rho)"),
            ({2, 4, 6}, "10 d rho = rho ^ (rho _| d rho)"),
            ({2, 6}, "d rho = 0"),
            ({6}, "d rho = 0 and delta rho = 0"),
        ],
        1,
    )
)


def class_conditions(drho: Form, deltarho: Form) -> dict[str, bool]:
    """Evaluate each row's differential condition on ``(d rho, delta rho)``."""
    return {row.name: value for row, value in zip(CLASS_ROWS, _row_type(drho, deltarho))}


def predicted_rows(cls: TorsionClass) -> dict[str, bool]:
    """Which rows a structure of the given class must satisfy."""
    return {row.name: cls.is_of_type(row.allowed) for row in CLASS_ROWS}

