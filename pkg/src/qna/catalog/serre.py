"""Independent oracle: the positive part U_q^+(g) as a free algebra modulo
the quantum Serre relations.

Normal forms are computed one weight space at a time by exact Gaussian
elimination on the span of u * S * v (S a Serre relation, u, v words).  The
oracle knows nothing about Ore extensions; it is used to derive and check
the structure constants of the PBW presentations in the catalog.
"""
from __future__ import annotations

import itertools
from typing import Sequence

from .. import linalg
from ..errors import ConsistencyError
from ..ore import Presentation
from ..scalars import ONE, Scalar, qpow

Word = tuple


def q_int(n: int, d: int = 1) -> Scalar:
    """Symmetric quantum integer [n] at q**d."""
    out = Scalar(0)
    for t in range(n):
        out = out + qpow(d * (n - 1 - 2 * t))
    return out


def q_binomial(n: int, r: int, d: int = 1) -> Scalar:
    num, den = ONE, ONE
    for t in range(r):
        num = num * q_int(n - t, d)
        den = den * q_int(t + 1, d)
    return num / den


def free_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for u, c in a.items():
        for v, d in b.items():
            w = u + v
            s = out.get(w)
            out[w] = c * d if s is None else s + c * d
    return {w: c for w, c in out.items() if c}


def free_add(a: dict, b: dict, scale: Scalar = ONE) -> dict:
    out = dict(a)
    for w, c in b.items():
        s = out.get(w)
        out[w] = c * scale if s is None else s + c * scale
    return {w: c for w, c in out.items() if c}


class SerreOracle:
    """Normal forms in U_q^+ for a rank-r Cartan datum.

    ``form`` is the symmetric bilinear form (alpha_i, alpha_j) on simple
    roots, with (alpha_i, alpha_i) = 2 d_i.
    """

    def __init__(self, form: Sequence[Sequence[int]], max_degree: int = 6):
        self.form = [list(r) for r in form]
        self.rank = len(form)
        self.max_degree = max_degree
        self.relations = []
        for i in range(self.rank):
            d = self.form[i][i] // 2
            for j in range(self.rank):
                if i == j:
                    continue
                a = 2 * self.form[i][j] // self.form[i][i]
                m = 1 - a
                rel: dict = {}
                for r in range(m + 1):
                    w = (i,) * (m - r) + (j,) + (i,) * r
                    c = q_binomial(m, r, d) * (-1) ** r
                    rel[w] = c
                self.relations.append(rel)
        self._pieces: dict = {}

    def weight_of(self, w: Word) -> tuple:
        return tuple(w.count(i) for i in range(self.rank))

    def words(self, wt) -> list:
        letters = [i for i in range(self.rank) for _ in range(wt[i])]
        return sorted(set(itertools.permutations(letters)), reverse=True)

    def _piece(self, wt) -> linalg.Eliminator:
        wt = tuple(wt)
        hit = self._pieces.get(wt)
        if hit is not None:
            return hit
        if sum(wt) > self.max_degree:
            raise ValueError(f"weight {wt} exceeds the oracle degree bound {self.max_degree}")
        words = self.words(wt)
        e = linalg.Eliminator(order=words)
        for rel in self.relations:
            rw = self.weight_of(next(iter(rel)))
            rest = tuple(a - b for a, b in zip(wt, rw))
            if min(rest) < 0:
                continue
            # split the remaining letters between a left and a right word
            for left in itertools.product(*(range(x + 1) for x in rest)):
                right = tuple(a - b for a, b in zip(rest, left))
                for u in self.words(left):
                    for v in self.words(right):
                        e.add_row({u + w + v: c for w, c in rel.items()})
        self._pieces[wt] = e
        return e

    def quotient_dim(self, wt) -> int:
        return len(self.words(wt)) - self._piece(wt).rank

    def reduce(self, a: dict) -> dict:
        by_wt: dict = {}
        for w, c in a.items():
            by_wt.setdefault(self.weight_of(w), {})[w] = c
        out = {}
        for wt, part in by_wt.items():
            out.update(self._piece(wt).reduce(part))
        return {w: c for w, c in out.items() if c}

    def equal(self, a: dict, b: dict) -> bool:
        return not self.reduce(free_add(a, b, -ONE))


def root_vectors(form, roots: Sequence[Sequence[int]], splits: Sequence) -> list[dict]:
    """Free-algebra root vectors built by E_{b+b'} = E_b E_b' - q^{(b,b')} E_b' E_b.

    ``splits[k]`` is None for a simple root, or a pair (i, j) of positions
    with roots[k] = roots[i] + roots[j].
    """
    def pair(u, v):
        return sum(u[a] * form[a][b] * v[b] for a in range(len(u)) for b in range(len(v)))

    out: dict = {}

    def build(k):
        if k in out:
            return out[k]
        sp = splits[k]
        if sp is None:
            i = next(t for t, x in enumerate(roots[k]) if x)
            v = {(i,): ONE}
        else:
            i, j = sp
            a, b = build(i), build(j)
            v = free_add(free_mul(a, b), free_mul(b, a), -qpow(pair(roots[i], roots[j])))
        out[k] = v
        return v

    return [build(k) for k in range(len(roots))]


def _pbw_monomials(weights, wt) -> list[tuple]:
    N = len(weights)
    out = []

    def rec(i, f, rem):
        if i == N:
            if not any(rem):
                out.append(tuple(f))
            return
        e = 0
        while True:
            nxt = [r - e * b for r, b in zip(rem, weights[i])]
            if min(nxt) < 0:
                break
            rec(i + 1, f + [e], nxt)
            e += 1

    rec(0, [], list(wt))
    return out


class PBWImage:
    """Images of ordered monomials X^f in the oracle's normal forms."""

    def __init__(self, oracle: SerreOracle, vectors: list[dict], weights):
        self.oracle = oracle
        self.vectors = vectors
        self.weights = [tuple(w) for w in weights]
        self._cache: dict = {}

    def image(self, f) -> dict:
        f = tuple(f)
        hit = self._cache.get(f)
        if hit is None:
            out = {(): ONE}
            for k, e in enumerate(f):
                for _ in range(e):
                    out = free_mul(out, self.vectors[k])
            hit = self.oracle.reduce(out)
            self._cache[f] = hit
        return hit

    def express(self, a: dict) -> dict:
        """Coefficients of a (reduced) in the PBW monomials, or raise."""
        a = self.oracle.reduce(a)
        by_wt: dict = {}
        for w, c in a.items():
            by_wt.setdefault(self.oracle.weight_of(w), {})[w] = c
        result = {}
        for wt, part in by_wt.items():
            monos = _pbw_monomials(self.weights, wt)
            rows: dict = {}
            for f in monos:
                for w, c in self.image(f).items():
                    rows.setdefault(w, {})[f] = c
            for w in part:
                rows.setdefault(w, {})
            e = linalg.Eliminator()
            for w in sorted(rows):
                e.add_row(rows[w], part.get(w, Scalar(0)))
            sol = e.solution()
            if sol is None or e.rank != len(monos):
                raise ConsistencyError(f"PBW monomials do not form a basis in weight {wt}")
            result.update(sol)
        return result

    def check_basis(self, max_degree: int) -> None:
        """PBW monomials are a basis of every weight space up to max_degree."""
        r = self.oracle.rank
        for total in range(max_degree + 1):
            for wt in _compositions(total, r):
                monos = _pbw_monomials(self.weights, wt)
                dim = self.oracle.quotient_dim(wt)
                if dim != len(monos):
                    raise ConsistencyError(f"weight {wt}: quotient dim {dim} vs {len(monos)} PBW monomials")
                rk = linalg.rank([self.image(f) for f in monos])
                if rk != len(monos):
                    raise ConsistencyError(f"weight {wt}: PBW monomials are dependent")


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for a in range(total + 1):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


def derive_presentation(
    form,
    roots,
    splits,
    names,
    name: str = "",
    max_degree: int = 6,
) -> Presentation:
    """Structure constants of the PBW presentation, read off the oracle."""
    oracle = SerreOracle(form, max_degree)
    vectors = root_vectors(form, roots, splits)
    img = PBWImage(oracle, vectors, roots)
    img.check_basis(max_degree)
    N = len(roots)
    skew, deltas = {}, {}
    for k in range(N):
        for j in range(k):
            coeffs = img.express(free_mul(vectors[k], vectors[j]))
            top = tuple(int(i in (j, k)) for i in range(N))
            lam = coeffs.pop(top, Scalar(0))
            a = lam.as_qpower()
            if a is None:
                raise ConsistencyError(f"x_{k + 1} x_{j + 1} does not q-commute to leading order")
            skew[(k, j)] = a
            if any(f[t] for f in coeffs for t in range(k, N)):
                raise ConsistencyError(f"delta_{k + 1}(x_{j + 1}) leaves R_{k}")
            if coeffs:
                deltas[(k, j)] = coeffs
    simple = [k for k, r in enumerate(roots) if sum(r) == 1]
    simple.sort(key=lambda k: list(roots[k]).index(1))
    return Presentation(N, skew, deltas, roots, names=names, name=name, weight_basis=simple)


def check_agreement(P: Presentation, form, roots, splits, max_degree: int = 6) -> int:
    """Compare every product of generators of total E-degree <= max_degree.

    Returns the number of words checked; raises ConsistencyError on the
    first disagreement.
    """
    oracle = SerreOracle(form, max_degree)
    vectors = root_vectors(form, roots, splits)
    img = PBWImage(oracle, vectors, roots)
    degs = [sum(r) for r in roots]
    count = 0

    def rec(word, deg):
        nonlocal count
        if word:
            count += 1
            nf = P.word(word)
            lhs: dict = {}
            for f, c in nf.terms.items():
                lhs = free_add(lhs, img.image(f), c)
            rhs = {(): ONE}
            for i in word:
                rhs = free_mul(rhs, vectors[i])
            if not oracle.equal(lhs, rhs):
                raise ConsistencyError(f"presentation disagrees with the oracle on word {[i + 1 for i in word]}")
        for i in range(P.N):
            if deg + degs[i] <= max_degree:
                rec(word + [i], deg + degs[i])

    rec([], 0)
    return count
