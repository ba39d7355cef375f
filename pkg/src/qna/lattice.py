"""Integer lattice routines: Smith and Hermite normal forms, kernels.

Everything works on plain lists of Python ints so results are exact.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(r) for r in zip(*a)] if a else []


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None):
    """Return ``(D, U, V)`` with ``U @ A @ V == D`` and U, V unimodular.

    D is diagonal with nonnegative entries d_1 | d_2 | ... | d_r followed by
    zeros.  ``ncols`` is needed only when ``a`` has no rows.
    """
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    D = [list(map(int, row)) for row in a]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        D[dst] = [x + f * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):  # col dst += f * col src
        for row in D:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        # pick the smallest nonzero entry of the remaining block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // D[t][t]))
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // D[t][t]))
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # divisibility condition on the remaining block
                for i in range(t + 1, m):
                    if any(D[i][j] % D[t][t] for j in range(t + 1, n)):
                        add_row(i, t, 1)
                        done = False
                        break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def hermite_rows(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    The result is a canonical basis: zero rows dropped, pivots positive,
    entries above each pivot reduced into ``[0, pivot)``.
    """
    h = [list(map(int, r)) for r in rows if any(r)]
    if not h:
        return []
    ncols = len(h[0])
    r = 0
    for c in range(ncols):
        if r >= len(h):
            break
        while True:
            nz = [i for i in range(r, len(h)) if h[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(h[i][c]))
            h[r], h[p] = h[p], h[r]
            others = [i for i in range(r + 1, len(h)) if h[i][c]]
            if not others:
                break
            for i in others:
                f = h[i][c] // h[r][c]
                h[i] = [x - f * y for x, y in zip(h[i], h[r])]
        if r < len(h) and h[r][c]:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
            for i in range(r):
                f = h[i][c] // h[r][c]
                if f:
                    h[i] = [x - f * y for x, y in zip(h[i], h[r])]
            r += 1
    return [row for row in h if any(row)]


def kernel_basis(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """A saturated Z-basis of ``{f : A f = 0}``, in Hermite normal form."""
    n = len(a[0]) if a else (ncols or 0)
    D, _, V = smith_normal_form(a, n)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i])
    vecs = [[V[i][j] for i in range(n)] for j in range(r, n)]
    return hermite_rows(vecs)


def solve_integer(basis: Sequence[Sequence[int]], target: Sequence[int]) -> list[int] | None:
    """Integer coefficients c with ``sum c_i basis_i == target``, if any.

    ``basis`` must be linearly independent.
    """
    k = len(basis)
    if k == 0:
        return [] if not any(target) else None
    # columns of M are basis vectors; solve M c = target via SNF
    M = transpose(basis)
    D, U, V = smith_normal_form(M)
    ut = matvec(U, target)
    y = []
    for i in range(k):
        d = D[i][i] if i < len(D) else 0
        if d == 0:
            if ut[i]:
                return None
            y.append(0)
        else:
            if ut[i] % d:
                return None
            y.append(ut[i] // d)
    if any(ut[i] for i in range(k, len(ut))):
        return None
    return matvec(V, y)


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(hermite_rows(rows))


def is_saturated(basis: Sequence[Sequence[int]]) -> bool:
    """True iff the lattice spanned by ``basis`` equals its rational span intersected with Z^N."""
    if not basis:
        return True
    D, _, _ = smith_normal_form(basis)
    return all(D[i][i] == 1 for i in range(len(basis)))


# exact feasibility for {x >= 0, A x = b}, used for nonnegative kernel supports

def _feasible(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> bool:
    """Phase-one simplex with Bland's rule; rows with b < 0 are negated first."""
    m = len(a)
    n = len(a[0]) if m else 0
    rows = []
    for i in range(m):
        row = [Fraction(x) for x in a[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(int(i == j)) for j in range(m)]
        rows.append(row + art + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise sum of artificials == maximise -sum
    obj = [Fraction(0)] * (width + 1)
    for r in rows:
        for j in range(width + 1):
            if j < n or j == width:
                obj[j] -= r[j]
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i, r in enumerate(rows):
            if r[enter] > 0:
                ratio = r[width] / r[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            break
        piv = rows[leave][enter]
        rows[leave] = [x / piv for x in rows[leave]]
        for i, r in enumerate(rows):
            if i != leave and r[enter]:
                f = r[enter]
                rows[i] = [x - f * y for x, y in zip(r, rows[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, rows[leave])]
        basis[leave] = enter
    return obj[width] == 0


def nonnegative_support(a: Sequence[Sequence[int]], ncols: int | None = None) -> set[int]:
    """Indices i such that some f >= 0 with A f = 0 has f_i > 0."""
    n = len(a[0]) if a else (ncols or 0)
    out = set()
    for i in range(n):
        if i in out:
            continue
        rows = [list(r) for r in a] + [[int(j == i) for j in range(n)]]
        rhs = [0] * len(a) + [1]
        if _feasible(rows, rhs):
            out.add(i)
    return out


def nonnegative_kernel_rank(a: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    """Rank of the monoid ``ker(A) ∩ Z_{>=0}^N``."""
    n = len(a[0]) if a else (ncols or 0)
    support = sorted(nonnegative_support(a, n))
    if not support:
        return 0
    sub = [[row[j] for j in support] for row in a] if a else []
    return len(kernel_basis(sub, len(support)))
