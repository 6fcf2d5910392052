from hypothesis import given
from hypothesis import strategies as st

from helpers import scalars
from psu3.linalg import Subspace, invert, nullspace, rank, solve
from psu3.scalar import ONE, ZERO, Scalar


def test_rank_and_nullspace():
    rows = [{"x": ONE, "y": Scalar(2)}, {"x": Scalar(2), "y": Scalar(4)}]
    assert rank(rows) == 1
    ns = nullspace(rows, ["x", "y"])
    assert len(ns) == 1
    v = ns[0]
    assert v.get("x", ZERO) + 2 * v.get("y", ZERO) == ZERO


@given(st.lists(st.lists(scalars(), min_size=3, max_size=3), min_size=3, max_size=3))
def test_invert(m):
    try:
        inv = invert(m)
    except (ValueError, ZeroDivisionError, ArithmeticError):
        return
    for i in range(3):
        for j in range(3):
            s = sum((m[i][k] * inv[k][j] for k in range(3)), ZERO)
            assert s == (ONE if i == j else ZERO)


def test_solve():
    eqs = [{"x": ONE, "y": ONE}, {"x": ONE, "y": -ONE}]
    sol = solve(eqs, [Scalar(3), Scalar(1)], ["x", "y"])
    assert sol["x"] == Scalar(2) and sol["y"] == ONE


def test_subspace_projection():
    s = Subspace([{"x": ONE, "y": ONE}])
    p = s.project({"x": Scalar(2)})
    assert p == {"x": ONE, "y": ONE}
    assert s.contains({"x": Scalar(3), "y": Scalar(3)})
    assert not s.contains({"x": ONE})
