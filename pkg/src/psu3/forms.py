"""Exterior algebra of oriented Euclidean R^8 with coefficients in Q(sqrt 3).

Basis covectors are numbered 1..8.  A k-form is stored sparsely as a map from
strictly increasing index tuples to :class:`~psu3.scalar.Scalar`; zero
coefficients are never stored.  The orientation is ``e_1 ^ ... ^ e_8 = vol``.
"""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .scalar import ONE, ZERO, Scalar, as_scalar

DIM = 8
INDICES = tuple(range(1, DIM + 1))

__all__ = [
    "DIM",
    "Form",
    "FormError",
    "e",
    "vol",
    "wedge",
    "interior",
    "contract",
    "sigma",
    "hodge",
    "inner",
    "norm_sq",
    "monomials",
    "form_from_json",
    "form_to_json",
    "dumps_form",
    "loads_form",
]


class FormError(ValueError):
    """Raised on degree mismatches and malformed form data."""


@lru_cache(maxsize=None)
def monomials(k: int) -> tuple[tuple[int, ...], ...]:
    """All strictly increasing k-tuples in lexicographic order."""
    return tuple(combinations(INDICES, k))


@lru_cache(maxsize=None)
def _merge(left: tuple[int, ...], right: tuple[int, ...]):
    # sign of e_left ^ e_right and the merged key, or None when indices repeat
    if set(left) & set(right):
        return None
    inversions = 0
    for i in left:
        for j in right:
            if i > j:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(left + right))


@lru_cache(maxsize=None)
def _drop(i: int, key: tuple[int, ...]):
    p = key.index(i)
    return (-1 if p & 1 else 1), key[:p] + key[p + 1 :]


@lru_cache(maxsize=None)
def _complement(key: tuple[int, ...]):
    rest = tuple(i for i in INDICES if i not in key)
    sign, _ = _merge(key, rest)
    return sign, rest


def _canonical(idx: Iterable[int]):
    idx = tuple(int(i) for i in idx)
    for i in idx:
        if not 1 <= i <= DIM:
            raise FormError(f"index {i} outside 1..{DIM}")
    if len(set(idx)) != len(idx):
        return 0, None
    order = sorted(range(len(idx)), key=idx.__getitem__)
    # parity of the sorting permutation
    seen = [False] * len(idx)
    parity = 0
    for start in range(len(idx)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        parity += length - 1
    return (-1 if parity & 1 else 1), tuple(sorted(idx))


class Form:
    """A homogeneous alternating form of fixed degree on R^8."""

    __slots__ = ("degree", "_c")

    def __init__(self, degree: int, coeffs: Mapping | None = None) -> None:
        if not 0 <= degree <= DIM:
            raise FormError(f"degree {degree} outside 0..{DIM}")
        c: dict[tuple[int, ...], Scalar] = {}
        if coeffs:
            for idx, value in coeffs.items():
                value = as_scalar(value)
                if not value:
                    continue
                if len(idx) != degree:
                    raise FormError(f"index {tuple(idx)} does not have length {degree}")
                sign, key = _canonical(idx)
                if key is None:
                    continue
                new = c.get(key, ZERO) + (value if sign > 0 else -value)
                if new:
                    c[key] = new
                else:
                    c.pop(key, None)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "_c", c)

    @classmethod
    def _wrap(cls, degree: int, c: dict) -> Form:
        # c must already be canonical with no zero values
        obj = object.__new__(cls)
        object.__setattr__(obj, "degree", degree)
        object.__setattr__(obj, "_c", c)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Form is immutable")

    @classmethod
    def zero(cls, degree: int) -> Form:
        return cls._wrap(degree, {})

    @classmethod
    def scalar(cls, value) -> Form:
        value = as_scalar(value)
        return cls._wrap(0, {(): value} if value else {})

    # -- container protocol -------------------------------------------------

    def __getitem__(self, idx) -> Scalar:
        sign, key = _canonical(idx)
        if key is None:
            return ZERO
        v = self._c.get(key, ZERO)
        return v if sign > 0 else -v

    def __call__(self, *idx: int) -> Scalar:
        """Evaluate on basis vectors ``e_{idx[0]}, ..., e_{idx[k-1]}``."""
        if len(idx) != self.degree:
            raise FormError(f"{self.degree}-form evaluated on {len(idx)} vectors")
        return self[idx]

    def items(self):
        return self._c.items()

    def keys(self):
        return self._c.keys()

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self._c)

    def __len__(self) -> int:
        return len(self._c)

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def value(self) -> Scalar:
        """The coefficient of a 0-form (or of ``vol`` for an 8-form)."""
        if self.degree not in (0, DIM):
            raise FormError("value() only applies to degree 0 or 8")
        return next(iter(self._c.values()), ZERO)

    # -- vector space structure --------------------------------------------

    def _check(self, other: Form) -> None:
        if self.degree != other.degree:
            raise FormError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, Form):
            if other == 0:
                return self
            return NotImplemented
        self._check(other)
        c = dict(self._c)
        for k, v in other._c.items():
            w = c.get(k)
            if w is None:
                c[k] = v
            else:
                w = w + v
                if w:
                    c[k] = w
                else:
                    del c[k]
        return Form._wrap(self.degree, c)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Form._wrap(self.degree, {k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, Form):
            if other == 0:
                return self
            return NotImplemented
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, Form):
            return NotImplemented
        s = as_scalar(s)
        if not s:
            return Form._wrap(self.degree, {})
        return Form._wrap(self.degree, {k: v * s for k, v in self._c.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (ONE / as_scalar(s))

    def __xor__(self, other: Form) -> Form:
        return wedge(self, other)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Form):
            if not self._c and not other._c:
                return True
            return self.degree == other.degree and self._c == other._c
        if other == 0:
            return not self._c
        return NotImplemented

    def __hash__(self):
        return hash((self.degree, frozenset(self._c.items())))

    def __repr__(self) -> str:
        if not self._c:
            return f"Form({self.degree}, 0)"
        return f"Form({self.degree}, {self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c):
            v = self._c[k]
            name = "e" + "".join(map(str, k)) if k else "1"
            parts.append(f"({v})*{name}")
        return " + ".join(parts)


def e(*idx: int) -> Form:
    """Monomial ``e_{i1} ^ ... ^ e_{ik}``; ``e()`` is the constant 1."""
    return Form(len(idx), {idx: ONE})


def vol() -> Form:
    return e(*INDICES)


def wedge(alpha: Form, beta: Form) -> Form:
    if alpha.degree + beta.degree > DIM:
        raise FormError("degree > 8")
    c: dict = {}
    for i, a in alpha._c.items():
        for j, b in beta._c.items():
            m = _merge(i, j)
            if m is None:
                continue
            sign, key = m
            v = a * b
            if sign < 0:
                v = -v
            w = c.get(key)
            c[key] = v if w is None else w + v
    return Form._wrap(alpha.degree + beta.degree, {k: v for k, v in c.items() if v})


def interior(i: int, alpha: Form) -> Form:
    """Interior product ``e_i _| alpha``, i.e. ``alpha(e_i, ...)``."""
    if alpha.degree == 0:
        raise FormError("interior product of a 0-form")
    c = {}
    for key, v in alpha._c.items():
        if i in key:
            sign, rest = _drop(i, key)
            c[rest] = v if sign > 0 else -v
    return Form._wrap(alpha.degree - 1, c)


def _iterated(idx: tuple[int, ...], alpha: Form) -> Form:
    # e_{i1} _| ... _| e_{ij} _| alpha : the rightmost vector acts first
    for i in reversed(idx):
        alpha = interior(i, alpha)
    return alpha


def contract(beta: Form, alpha: Form) -> Form:
    """``beta _| alpha``: the adjoint of ``gamma -> beta ^ gamma``.

    For ``beta = e_J`` with ``J = (j1 < ... < jk)`` this equals
    ``alpha(e_j1, ..., e_jk, ...)``.
    """
    if beta.degree > alpha.degree:
        raise FormError(f"cannot contract a {beta.degree}-form into a {alpha.degree}-form")
    c: dict = {}
    k = beta.degree
    for jkey, b in beta._c.items():
        jset = set(jkey)
        for ikey, a in alpha._c.items():
            if not jset.issubset(ikey):
                continue
            rest = tuple(x for x in ikey if x not in jset)
            sign, _ = _merge(jkey, rest)
            v = a * b
            if sign < 0:
                v = -v
            w = c.get(rest)
            c[rest] = v if w is None else w + v
    return Form._wrap(alpha.degree - k, {key: v for key, v in c.items() if v})


def sigma(j: int, alpha: Form, beta: Form) -> Form:
    """``sum_{i1<...<ij} (e_i1 _| ... _| e_ij _| alpha) ^ (e_i1 _| ... _| e_ij _| beta)``."""
    if not 0 <= j <= min(alpha.degree, beta.degree):
        raise FormError(f"sigma_{j} undefined on degrees {alpha.degree}, {beta.degree}")
    if j == 0:
        return wedge(alpha, beta)
    if alpha.degree + beta.degree - 2 * j > DIM:
        raise FormError("degree > 8")

    def split(form: Form) -> dict:
        out: dict = {}
        for key in form._c:
            for sub in combinations(key, j):
                out.setdefault(sub, None)
        return out

    common = split(alpha).keys() & split(beta).keys()
    total = Form.zero(alpha.degree + beta.degree - 2 * j)
    for idx in sorted(common):
        total = total + wedge(_iterated(idx, alpha), _iterated(idx, beta))
    return total


def hodge(alpha: Form) -> Form:
    c = {}
    for key, v in alpha._c.items():
        sign, rest = _complement(key)
        c[rest] = v if sign > 0 else -v
    return Form._wrap(DIM - alpha.degree, c)


def inner(alpha: Form, beta: Form) -> Scalar:
    if alpha.degree != beta.degree:
        raise FormError(f"inner product of degrees {alpha.degree} and {beta.degree}")
    if len(alpha._c) > len(beta._c):
        alpha, beta = beta, alpha
    total = ZERO
    for k, v in alpha._c.items():
        w = beta._c.get(k)
        if w is not None:
            total = total + v * w
    return total


def norm_sq(alpha: Form) -> Scalar:
    return inner(alpha, alpha)


# -- exchange format ---------------------------------------------------------


def form_to_json(alpha: Form) -> dict:
    return {
        "degree": alpha.degree,
        "terms": [
            {"idx": list(k), **alpha._c[k].to_json()} for k in sorted(alpha._c)
        ],
    }


def form_from_json(doc) -> Form:
    """Parse the exchange document ``{"degree": k, "terms": [...]}``.

    Indices must be strictly increasing; errors name the offending term.
    """
    if not isinstance(doc, dict) or "degree" not in doc:
        raise FormError("form document must be an object with a 'degree' field")
    degree = doc["degree"]
    if not isinstance(degree, int) or isinstance(degree, bool):
        raise FormError("'degree' must be an integer")
    terms = doc.get("terms", [])
    if not isinstance(terms, list):
        raise FormError("'terms' must be a list")
    c: dict = {}
    for pos, term in enumerate(terms):
        try:
            idx = tuple(term["idx"])
            if len(idx) != degree:
                raise FormError(f"idx has length {len(idx)}, expected {degree}")
            if any(not isinstance(i, int) for i in idx):
                raise FormError("idx entries must be integers")
            if list(idx) != sorted(set(idx)):
                raise FormError("idx must be strictly increasing")
            value = Scalar(term.get("a", "0"), term.get("b", "0"))
        except FormError as exc:
            raise FormError(f"terms[{pos}]: {exc}") from None
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise FormError(f"terms[{pos}]: malformed term ({exc})") from None
        if idx in c:
            raise FormError(f"terms[{pos}]: duplicate idx {list(idx)}")
        c[idx] = value
    return Form(degree, c)


def dumps_form(alpha: Form) -> str:
    return json.dumps(form_to_json(alpha), sort_keys=True)


def loads_form(text: str) -> Form:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return form_from_json(doc)
