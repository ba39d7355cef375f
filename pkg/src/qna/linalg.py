"""Sparse exact linear algebra over Q(q).

Rows are dicts ``column -> Scalar``; columns may be any hashable key.  The
eliminator keeps its pivot rows in reduced row echelon form, so solving and
nullspace extraction are read off directly.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Mapping

from .scalars import ONE, ZERO, Scalar

_RHS = ("__rhs__",)


def _cost(s: Scalar) -> tuple:
    return (len(s.den.coeffs) > 1, len(s.num.coeffs) + len(s.den.coeffs))


class Eliminator:
    """Incremental Gauss-Jordan elimination with an optional right-hand side."""

    def __init__(self, order: Iterable[Hashable] | None = None):
        self.pivots: dict = {}  # pivot column -> row (pivot entry 1)
        self.inconsistent = False
        self._rank_order = {c: i for i, c in enumerate(order)} if order is not None else None

    def _reduce(self, row: dict) -> dict:
        for col in [c for c in row if c in self.pivots]:
            f = row.get(col)
            if f is None:
                continue
            for c, v in self.pivots[col].items():
                w = row.get(c, ZERO) - f * v
                if w:
                    row[c] = w
                else:
                    row.pop(c, None)
        return row

    def add_row(self, row: Mapping, rhs: Scalar = ZERO) -> bool:
        """Add an equation; returns True if it increased the rank."""
        row = {c: v for c, v in row.items() if v}
        if rhs:
            row[_RHS] = rhs
        row = self._reduce(row)
        cols = [c for c in row if c != _RHS]
        if not cols:
            if row.get(_RHS):
                self.inconsistent = True
            return False
        if self._rank_order is not None:
            pc = min(cols, key=lambda c: self._rank_order[c])
        else:
            pc = min(cols, key=lambda c: _cost(row[c]))
        inv = row[pc].inv()
        row = {c: v * inv for c, v in row.items()}
        row[pc] = ONE
        for other in self.pivots.values():
            f = other.get(pc)
            if f is None:
                continue
            for c, v in row.items():
                w = other.get(c, ZERO) - f * v
                if w:
                    other[c] = w
                else:
                    other.pop(c, None)
        self.pivots[pc] = row
        return True

    def reduce(self, row: Mapping) -> dict:
        """Remainder of ``row`` after eliminating every pivot column."""
        return self._reduce({c: v for c, v in row.items() if v})

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solution(self) -> dict | None:
        """A particular solution with all free variables set to zero."""
        if self.inconsistent:
            return None
        return {pc: row[_RHS] for pc, row in self.pivots.items() if _RHS in row}

    def nullspace(self, columns: Iterable[Hashable]) -> list[dict]:
        basis = []
        for f in columns:
            if f in self.pivots:
                continue
            v = {f: ONE}
            for pc, row in self.pivots.items():
                c = row.get(f)
                if c:
                    v[pc] = -c
            basis.append(v)
        return basis


def solve(rows: Iterable[Mapping], rhs: Iterable[Scalar]) -> dict | None:
    """Solve ``rows . x = rhs``; unknowns absent from the result are zero."""
    e = Eliminator()
    for row, b in zip(rows, rhs):
        e.add_row(row, b)
        if e.inconsistent:
            return None
    return e.solution()


def nullspace(rows: Iterable[Mapping], columns: Iterable[Hashable]) -> list[dict]:
    columns = list(columns)
    e = Eliminator()
    for row in rows:
        e.add_row(row)
    return e.nullspace(columns)


def rank(rows: Iterable[Mapping]) -> int:
    e = Eliminator()
    for row in rows:
        e.add_row(row)
    return e.rank
