"""Shared hypothesis strategies and brute-force oracles for the test suite."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from hypothesis import strategies as st

from psu3.forms import Form, monomials
from psu3.scalar import Scalar

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def scalars(draw, nonzero: bool = False):
    a, b = draw(rationals), draw(rationals)
    x = Scalar(a, b)
    if nonzero and not x:
        x = Scalar(1)
    return x


@st.composite
def forms(draw, degree=None, max_terms: int = 5):
    k = draw(st.integers(0, 8)) if degree is None else degree
    keys = draw(st.lists(st.sampled_from(monomials(k)), max_size=max_terms))
    return Form(k, {key: draw(scalars()) for key in keys})


# -- independent oracles ----------------------------------------------------


def perm_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (0 on repeats), by counting inversions."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def dense(form: Form) -> dict:
    """All ordered index tuples of an alternating form, by explicit antisymmetrisation."""
    out = {}
    for key, v in form.items():
        for p in permutations(key):
            out[p] = v * perm_sign(p)
    return out


def wedge_oracle(a: Form, b: Form) -> Form:
    """Wedge product via the shuffle formula on dense tensors."""
    k, l = a.degree, b.degree
    da, db = dense(a), dense(b)
    coeffs = {}
    for key in monomials(k + l):
        total = Scalar(0)
        for p in permutations(range(k + l)):
            idx = [key[i] for i in p]
            x = da.get(tuple(idx[:k])) if k else a.coeffs.get((), None)
            y = db.get(tuple(idx[k:])) if l else b.coeffs.get((), None)
            if x is None or y is None:
                continue
            total = total + x * y * perm_sign(p)
        fact = 1
        for n in range(1, k + 1):
            fact *= n
        for n in range(1, l + 1):
            fact *= n
        coeffs[key] = total * Scalar(Fraction(1, fact))
    return Form(k + l, coeffs)


def hodge_oracle(a: Form) -> Form:
    """``*e_I = sign(I, I^c) e_{I^c}`` straight from the permutation sign."""
    out = {}
    for key, v in a.items():
        comp = tuple(i for i in range(1, 9) if i not in key)
        out[comp] = v * perm_sign(key + comp)
    return Form(8 - a.degree, out)


def module_elements(label: str, max_terms: int = 3):
    """Random small combinations of a module's basis."""
    from psu3.forms import Form
    from psu3.modules import MODULES, module_basis

    basis = module_basis(label)
    deg = MODULES[label].degree

    @st.composite
    def build(draw):
        picks = draw(st.lists(st.tuples(st.integers(0, len(basis) - 1), scalars()), max_size=max_terms))
        out = Form.zero(deg)
        for i, c in picks:
            out = out + basis[i] * c
        return out

    return build()


@st.composite
def char_forms(draw):
    from psu3.torsion import CharForms

    return CharForms(*(draw(module_elements(lab, 2)) for lab in ("L3_8", "L3_20", "L3_27", "L4_8s", "L4_27s")))
