import itertools

import numpy as np
import sympy
from scipy.optimize import linprog
from hypothesis import given, settings
from hypothesis import strategies as st

from qna import lattice
from qna.center import is_simple_torus, kernel_basis


def skew_matrices(max_n=4, bound=6):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = draw(st.integers(-bound, bound))
                a[i][j], a[j][i] = v, -v
        return a

    return build()


int_matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def matmul(a, b):
    return [[sum(x * y for x, y in zip(r, c)) for c in zip(*b)] for r in a]


def det(m):
    return int(sympy.Matrix(m).det())


@given(int_matrices)
def test_smith_normal_form(a):
    D, U, V = lattice.smith_normal_form(a)
    assert matmul(matmul(U, a), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert diag[: len(nz)] == nz
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


@given(int_matrices)
def test_hermite_is_canonical(a):
    h = lattice.hermite_rows(a)
    shuffled = [r[:] for r in reversed(a)] + [[x + y for x, y in zip(a[0], a[-1])]]
    assert lattice.hermite_rows(shuffled) == h
    assert len(h) == sympy.Matrix(a).rank()


def test_known_kernels():
    assert kernel_basis([[0, 2, 3], [-2, 0, 5], [-3, -5, 0]]) == [[5, -3, 2]]
    assert kernel_basis([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]) == [[1, -1, 1]]
    assert kernel_basis([[0] * 3] * 3) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_simple_torus_examples():
    assert is_simple_torus([[0, 1], [-1, 0]])
    assert not is_simple_torus([[0, 0], [0, 0]])
    assert not is_simple_torus([[0, 2, 3], [-2, 0, 5], [-3, -5, 0]])


@settings(max_examples=60)
@given(skew_matrices())
def test_kernel_against_enumeration(B):
    """Every kernel vector with entries in [-12, 12] lies in the computed lattice."""
    n = len(B)
    K = kernel_basis(B)
    for f in K:
        assert lattice.matvec(B, f) == [0] * n
    assert lattice.is_saturated(K)
    assert len(K) == n - sympy.Matrix(B).rank()
    grid = np.array(list(itertools.product(range(-12, 13), repeat=n)), dtype=np.int64)
    hits = grid[(grid @ np.array(B, dtype=np.int64).T == 0).all(axis=1)]
    step = max(1, len(hits) // 200)
    for v in hits[::step]:
        assert lattice.solve_integer(K, [int(x) for x in v]) is not None


def test_saturation_detects_multiples():
    assert not lattice.is_saturated([[2, 0]])
    assert lattice.is_saturated([[1, 2], [0, 1]])


def test_solve_integer():
    assert lattice.solve_integer([[1, 1], [0, 2]], [1, 3]) == [1, 1]
    assert lattice.solve_integer([[2, 0]], [1, 0]) is None
    assert lattice.solve_integer([], [0, 0]) == []


def test_nonnegative_kernel_rank():
    assert lattice.nonnegative_kernel_rank([[0, 2, 3], [-2, 0, 5], [-3, -5, 0]]) == 0
    assert lattice.nonnegative_kernel_rank([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]) == 0
    assert lattice.nonnegative_kernel_rank([[0, -1, 1], [1, 0, 0], [-1, 0, 0]]) == 1
    assert lattice.nonnegative_kernel_rank([[0, 0], [0, 0]]) == 2
    # kernel spanned by (1, 1, 0) and (0, 0, 1) with a mixed-sign presentation
    assert lattice.nonnegative_kernel_rank([[1, -1, 0]]) == 2


@settings(max_examples=60)
@given(skew_matrices(max_n=4, bound=3))
def test_nonnegative_support_against_enumeration(B):
    n = len(B)
    support = lattice.nonnegative_support(B)
    grid = np.array(list(itertools.product(range(0, 7), repeat=n)), dtype=np.int64)
    hits = grid[(grid @ np.array(B, dtype=np.int64).T == 0).all(axis=1)]
    seen = set(np.nonzero(hits.any(axis=0))[0].tolist()) if len(hits) else set()
    # enumeration finds a subset; the LP must contain it
    assert seen <= support
    # independent floating LP: support i is feasible iff B f = 0, f >= 0, f_i = 1 is
    for i in range(n):
        eq = np.array([list(r) for r in B] + [[int(j == i) for j in range(n)]], dtype=float)
        res = linprog(np.zeros(n), A_eq=eq, b_eq=[0] * n + [1], bounds=[(0, None)] * n, method="highs")
        assert (res.status == 0) == (i in support)
