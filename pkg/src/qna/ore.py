"""PBW normal forms in iterated Ore extensions K[x1][x2; s2, d2]...[xN; sN, dN].

Generators are indexed from 0 internally.  The defining relations are

    x_k x_j = q**a[k][j] * x_j x_k + delta_k(x_j)      (j < k)

with delta_k(x_j) a PBW element in x_0, ..., x_{k-1}.  Elements are finite
maps from exponent vectors to scalars; the normal form is computed by
rewriting the rightmost out-of-order pair first, memoised per monomial.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import lattice
from .errors import (
    InhomogeneousError,
    NotQNAError,
    PresentationError,
    SupportError,
)
from .scalars import ONE, ZERO, Scalar, qpow

Exps = tuple


def _add_into(acc: dict, terms: Mapping, coeff: Scalar = ONE) -> None:
    if coeff == ONE:
        for f, c in terms.items():
            v = acc.get(f)
            acc[f] = c if v is None else v + c
    else:
        for f, c in terms.items():
            v = acc.get(f)
            c = c * coeff
            acc[f] = c if v is None else v + c


def _clean(acc: dict) -> dict:
    return {f: c for f, c in acc.items() if c}


def _last(f: Exps) -> int:
    for i in range(len(f) - 1, -1, -1):
        if f[i]:
            return i
    return -1


def _first(f: Exps) -> int:
    for i, e in enumerate(f):
        if e:
            return i
    return len(f)


def _bump(f: Exps, i: int, d: int = 1) -> Exps:
    g = list(f)
    g[i] += d
    return tuple(g)


def lex_key(f: Exps) -> Exps:
    """Sort key for the lexicographic order with x_N most significant."""
    return tuple(reversed(f))


class PBWElement:
    """An element of an Ore extension, kept in PBW normal form."""

    __slots__ = ("parent", "terms", "_hash")

    def __init__(self, parent: "Presentation", terms: Mapping[Exps, object] | None = None):
        self.parent = parent
        clean = {}
        if terms:
            for f, c in terms.items():
                c = Scalar.coerce(c)
                if c:
                    f = tuple(int(x) for x in f)
                    if len(f) != parent.N or min(f, default=0) < 0:
                        raise PresentationError(f"bad exponent vector {f} for N={parent.N}")
                    clean[f] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, parent, terms: dict) -> "PBWElement":
        e = cls.__new__(cls)
        e.parent, e.terms, e._hash = parent, terms, None
        return e

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self.terms)
        _add_into(acc, other.terms)
        return PBWElement._raw(self.parent, _clean(acc))

    __radd__ = __add__

    def __neg__(self):
        return PBWElement._raw(self.parent, {f: -c for f, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return self.parent.multiply(self, other)
        try:
            s = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.scale(s)

    def __rmul__(self, other):
        try:
            s = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.scale(s)

    def __truediv__(self, other):
        return self.scale(Scalar.coerce(other).inv())

    def __pow__(self, e: int):
        result = self.parent.one()
        for _ in range(e):
            result = result * self
        return result

    def scale(self, s: Scalar) -> "PBWElement":
        if not s:
            return PBWElement._raw(self.parent, {})
        return PBWElement._raw(self.parent, {f: c * s for f, c in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, PBWElement):
            return other
        try:
            s = Scalar.coerce(other)
        except TypeError:
            return None
        return self.parent.scalar(s)

    # comparison

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection

    def coefficient(self, f: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(f), ZERO)

    def degree(self) -> int:
        return max((sum(f) for f in self.terms), default=-1)

    def support(self) -> set[int]:
        """Indices of generators that occur."""
        return {i for f in self.terms for i, e in enumerate(f) if e}

    def max_index(self) -> int:
        return max((_last(f) for f in self.terms), default=-1)

    def leading_monomial(self) -> Exps:
        return max(self.terms, key=lex_key)

    def leading_coefficient(self) -> Scalar:
        return self.terms[self.leading_monomial()]

    def is_scalar(self) -> bool:
        return all(not any(f) for f in self.terms)

    def weight(self):
        return self.parent.weight(self)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: lex_key(t[0]), reverse=True))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = self.parent.names
        parts = []
        for f, c in self:
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(f) if e
            )
            cs = repr(c)
            if not mono:
                parts.append(cs)
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            else:
                if len(c.num.coeffs) > 1 or not c.is_laurent():
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class Presentation:
    """A uniparameter iterated Ore extension together with its grading.

    Parameters
    ----------
    N:
        Number of generators.
    skew:
        Either a full N x N skew-symmetric integer matrix ``a`` with
        ``x_k x_j = q**a[k][j] x_j x_k + ...`` for k > j, or a mapping
        ``(k, j) -> a_kj`` for k > j.
    deltas:
        Mapping ``(k, j) -> element`` (j < k) giving delta_k(x_j); an element
        may be a PBWElement or a term map.  Missing entries are zero.
    weights:
        N integer vectors of length n, the grading of the generators.
    n:
        Rank; defaults to the number of k with delta_k == 0.
    weight_basis:
        Optional generator indices whose weights form the preferred Z-basis
        of the weight lattice.  Defaults to the k with delta_k == 0.
    """

    def __init__(
        self,
        N: int,
        skew,
        deltas: Mapping | None = None,
        weights: Sequence[Sequence[int]] | None = None,
        n: int | None = None,
        names: Sequence[str] | None = None,
        name: str = "",
        weight_basis: Sequence[int] | None = None,
    ):
        if N < 1:
            raise PresentationError("N must be positive")
        self.N = N
        self.name = name
        self.names = list(names) if names else [f"x{i + 1}" for i in range(N)]
        self.skew = self._skew_matrix(N, skew)
        self._mg: dict = {}
        self._mm: dict = {}
        self._dm: dict = {}
        self.deltas: dict = {}
        for (k, j), v in (deltas or {}).items():
            if not 0 <= j < k < N:
                raise PresentationError(f"delta index ({k}, {j}) must satisfy 0 <= j < k < N")
            el = v if isinstance(v, PBWElement) else PBWElement(self, v)
            if el.parent is not self:
                el = PBWElement(self, el.terms)
            if el.max_index() >= k:
                raise SupportError(f"delta_{k}(x_{j}) must only involve x_0..x_{k - 1}")
            if el:
                self.deltas[(k, j)] = el
        zero_rank = sum(1 for k in range(N) if not self.delta_nonzero(k))
        self.n = zero_rank if n is None else int(n)
        if weights is None:
            raise PresentationError("weights are required")
        self.weights = [tuple(int(x) for x in w) for w in weights]
        if len(self.weights) != N or any(len(w) != self.n for w in self.weights):
            raise PresentationError(f"weights must be {N} vectors of length n={self.n}")
        self.weight_basis = None if weight_basis is None else [int(k) for k in weight_basis]
        if self.weight_basis is not None and (
            len(self.weight_basis) != self.n or any(not 0 <= k < N for k in self.weight_basis)
        ):
            raise PresentationError(f"weight_basis must list n={self.n} generator indices")

    @staticmethod
    def _skew_matrix(N: int, skew) -> list[list[int]]:
        a = [[0] * N for _ in range(N)]
        if isinstance(skew, Mapping):
            for (k, j), v in skew.items():
                if not 0 <= j < k < N:
                    raise PresentationError(f"skew index ({k}, {j}) must satisfy j < k")
                a[k][j] = int(v)
                a[j][k] = -int(v)
        else:
            rows = [list(map(int, r)) for r in skew]
            if len(rows) != N or any(len(r) != N for r in rows):
                raise PresentationError("skew matrix must be N x N")
            for i in range(N):
                for j in range(N):
                    if rows[i][j] != -rows[j][i]:
                        raise PresentationError("skew matrix is not skew-symmetric")
            a = rows
        return a

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (
            self.N == other.N
            and self.n == other.n
            and self.skew == other.skew
            and self.weights == other.weights
            and self.weight_basis == other.weight_basis
            and {k: v.terms for k, v in self.deltas.items()}
            == {k: v.terms for k, v in other.deltas.items()}
        )

    __hash__ = object.__hash__

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Presentation{label} N={self.N} n={self.n}>"

    # constructors

    def zero(self) -> PBWElement:
        return PBWElement._raw(self, {})

    def scalar(self, s) -> PBWElement:
        s = Scalar.coerce(s)
        return PBWElement._raw(self, {(0,) * self.N: s} if s else {})

    def one(self) -> PBWElement:
        return self.scalar(ONE)

    def monomial(self, f: Sequence[int], coeff=ONE) -> PBWElement:
        return PBWElement(self, {tuple(f): coeff})

    def gen(self, i: int) -> PBWElement:
        return PBWElement._raw(self, {_bump((0,) * self.N, i): ONE})

    def gens(self) -> list[PBWElement]:
        return [self.gen(i) for i in range(self.N)]

    def element(self, terms: Mapping) -> PBWElement:
        return PBWElement(self, terms)

    def word(self, indices: Iterable[int]) -> PBWElement:
        """Normal form of the product x_{i1} x_{i2} ... in the given order."""
        terms = {(0,) * self.N: ONE}
        for i in indices:
            acc: dict = {}
            for f, c in terms.items():
                _add_into(acc, self._mono_gen(f, i), c)
            terms = _clean(acc)
        return PBWElement._raw(self, terms)

    # the rewriting engine

    def delta_nonzero(self, k: int) -> bool:
        return any(kk == k for kk, _ in self.deltas)

    def delta_value(self, k: int, j: int) -> PBWElement:
        return self.deltas.get((k, j)) or self.zero()

    def _mono_gen(self, f: Exps, j: int) -> dict:
        """Terms of x^f * x_j."""
        key = (f, j)
        hit = self._mg.get(key)
        if hit is not None:
            return hit
        k = _last(f)
        if k <= j:
            res = {_bump(f, j): ONE}
        else:
            fp = _bump(f, k, -1)
            acc: dict = {}
            lam = qpow(self.skew[k][j])
            for g, c in self._mono_gen(fp, j).items():
                g = _bump(g, k)
                v = acc.get(g)
                c = c * lam
                acc[g] = c if v is None else v + c
            d = self.deltas.get((k, j))
            if d is not None:
                for g, c in d.terms.items():
                    _add_into(acc, self._mono_mono(fp, g), c)
            res = _clean(acc)
        self._mg[key] = res
        return res

    def _mono_mono(self, f: Exps, g: Exps) -> dict:
        """Terms of x^f * x^g."""
        i = _first(g)
        if i == self.N:
            return {f: ONE}
        if _last(f) <= i:
            return {tuple(a + b for a, b in zip(f, g)): ONE}
        key = (f, g)
        hit = self._mm.get(key)
        if hit is not None:
            return hit
        gp = _bump(g, i, -1)
        acc: dict = {}
        for h, c in self._mono_gen(f, i).items():
            _add_into(acc, self._mono_mono(h, gp), c)
        res = _clean(acc)
        self._mm[key] = res
        return res

    def multiply(self, a: PBWElement, b: PBWElement) -> PBWElement:
        acc: dict = {}
        for f, c in a.terms.items():
            for g, d in b.terms.items():
                _add_into(acc, self._mono_mono(f, g), c * d)
        return PBWElement._raw(self, _clean(acc))

    def commutator(self, a: PBWElement, b: PBWElement) -> PBWElement:
        return self.multiply(a, b) - self.multiply(b, a)

    # twisting maps

    def _check_support(self, k: int, a: PBWElement) -> None:
        if a.max_index() >= k:
            raise SupportError(f"element must be supported on x_0..x_{k - 1}")

    def sigma_exponent(self, k: int, f: Exps) -> int:
        row = self.skew[k]
        return sum(e * row[i] for i, e in enumerate(f) if e)

    def apply_sigma(self, k: int, a: PBWElement) -> PBWElement:
        self._check_support(k, a)
        return PBWElement._raw(
            self, {f: c * qpow(self.sigma_exponent(k, f)) for f, c in a.terms.items()}
        )

    def _delta_mono(self, k: int, f: Exps) -> dict:
        key = (k, f)
        hit = self._dm.get(key)
        if hit is not None:
            return hit
        m = _last(f)
        if m < 0:
            res = {}
        else:
            fp = _bump(f, m, -1)
            acc: dict = {}
            d = self.deltas.get((k, m))
            if d is not None:
                s = qpow(self.sigma_exponent(k, fp))
                for g, c in d.terms.items():
                    _add_into(acc, self._mono_mono(fp, g), c * s)
            for h, c in self._delta_mono(k, fp).items():
                _add_into(acc, self._mono_gen(h, m), c)
            res = _clean(acc)
        self._dm[key] = res
        return res

    def apply_delta(self, k: int, a: PBWElement) -> PBWElement:
        self._check_support(k, a)
        acc: dict = {}
        for f, c in a.terms.items():
            _add_into(acc, self._delta_mono(k, f), c)
        return PBWElement._raw(self, _clean(acc))

    # grading

    def monomial_weight(self, f: Sequence[int]) -> tuple:
        w = [0] * self.n
        for i, e in enumerate(f):
            if e:
                for t, b in enumerate(self.weights[i]):
                    w[t] += e * b
        return tuple(w)

    def homogeneous_components(self, a: PBWElement) -> dict:
        comps: dict = {}
        for f, c in a.terms.items():
            comps.setdefault(self.monomial_weight(f), {})[f] = c
        return {w: PBWElement._raw(self, t) for w, t in comps.items()}

    def weight(self, a: PBWElement) -> tuple:
        ws = {self.monomial_weight(f) for f in a.terms}
        if len(ws) > 1:
            raise InhomogeneousError(ws)
        if not ws:
            raise InhomogeneousError(set())
        return ws.pop()

    def is_homogeneous(self, a: PBWElement) -> bool:
        return len({self.monomial_weight(f) for f in a.terms}) <= 1

    # structure

    def zero_delta_indices(self) -> list[int]:
        return [k for k in range(self.N) if not self.delta_nonzero(k)]

    def basis_indices(self) -> list[int]:
        """Generators whose weights are used as the Z-basis of the weight lattice."""
        if self.weight_basis is not None:
            return list(self.weight_basis)
        return self.zero_delta_indices()

    def weight_coordinates(self, w: Sequence[int]) -> list[int] | None:
        """Integer coordinates of w in the basis of basis_indices()."""
        basis = [self.weights[k] for k in self.basis_indices()]
        return lattice.solve_integer(basis, list(w))

    def is_central(self, a: PBWElement) -> bool:
        return all(self.multiply(a, x) == self.multiply(x, a) for x in self.gens())


# module-level operations


def multiply(P: Presentation, a: PBWElement, b: PBWElement) -> PBWElement:
    return P.multiply(a, b)


def apply_sigma(P: Presentation, k: int, a: PBWElement) -> PBWElement:
    return P.apply_sigma(k, a)


def apply_delta(P: Presentation, k: int, a: PBWElement) -> PBWElement:
    return P.apply_delta(k, a)


def weight(P: Presentation, a: PBWElement) -> tuple:
    return P.weight(a)


def homogeneous_components(P: Presentation, a: PBWElement) -> dict:
    return P.homogeneous_components(a)


def central_generators(P: Presentation) -> list[int]:
    """Indices i such that x_i commutes with every generator."""
    gens = P.gens()
    return [
        i for i in range(P.N)
        if all(P.multiply(gens[i], x) == P.multiply(x, gens[i]) for x in gens)
    ]


def _scaling_exponent(P: Presentation, k: int, a: PBWElement) -> int | None:
    """The e with sigma_k(a) = q**e a, or None if a is not a sigma_k eigenvector."""
    exps = {P.sigma_exponent(k, f) for f in a.terms}
    return exps.pop() if len(exps) == 1 else None


def infer_qk(P: Presentation) -> dict[int, int]:
    """Exponents e_k with sigma_k delta_k = q**e_k delta_k sigma_k, for delta_k != 0."""
    out = {}
    for k in range(P.N):
        found = set()
        for j in range(k):
            d = P.deltas.get((k, j))
            if d is None:
                continue
            s = _scaling_exponent(P, k, d)
            if s is None:
                raise NotQNAError(f"sigma_{k + 1} does not scale delta_{k + 1}(x_{j + 1})")
            found.add(s - P.skew[k][j])
        if not found:
            continue
        if len(found) > 1:
            raise NotQNAError(f"no single q_{k + 1} exponent: candidates {sorted(found)}")
        e = found.pop()
        if e == 0:
            raise NotQNAError(f"q_{k + 1} = 1 is a root of unity")
        out[k] = e
    return out


@dataclass
class ValidationReport:
    valid: bool = True
    failures: list = field(default_factory=list)
    qexp: dict = field(default_factory=dict)
    central_generators: list = field(default_factory=list)
    nilpotency_orders: dict = field(default_factory=dict)
    nilpotency_bound: int = 16

    def fail(self, check: str, indices, detail: str = "") -> None:
        self.valid = False
        self.failures.append({"check": check, "indices": [i + 1 for i in indices], "detail": detail})

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "failures": self.failures,
            "qexp": {str(k + 1): e for k, e in sorted(self.qexp.items())},
            "central_generators": [i + 1 for i in self.central_generators],
            "nilpotency": {
                "bound": self.nilpotency_bound,
                "certified": "up to bound",
                "orders": {f"{k + 1},{j + 1}": m for (k, j), m in sorted(self.nilpotency_orders.items())},
            },
        }


def validate_presentation(P: Presentation, nilpotency_bound: int = 16) -> ValidationReport:
    """Check the QNA axioms that can be checked on generators."""
    rep = ValidationReport(nilpotency_bound=nilpotency_bound)
    gens = P.gens()
    # (a) sigma_k and delta_k respect the relations of R_{k-1}
    for k in range(P.N):
        for i in range(k):
            for h in range(i):
                rel_lam = qpow(P.skew[i][h])
                d_ih = P.delta_value(i, h)
                if P.apply_sigma(k, d_ih) != d_ih * qpow(P.skew[k][i] + P.skew[k][h]):
                    rep.fail("sigma_consistency", [k, i, h])
                sx_i = P.apply_sigma(k, gens[i])
                sx_h = P.apply_sigma(k, gens[h])
                dx_i = P.delta_value(k, i)
                dx_h = P.delta_value(k, h)
                lhs = sx_i * dx_h + dx_i * gens[h]
                rhs = (sx_h * dx_i + dx_h * gens[i]) * rel_lam + P.apply_delta(k, d_ih)
                if lhs != rhs:
                    rep.fail("delta_consistency", [k, i, h])
    # (b) grading
    for (k, j), d in sorted(P.deltas.items()):
        target = tuple(a + b for a, b in zip(P.weights[k], P.weights[j]))
        if not P.is_homogeneous(d) or P.weight(d) != target:
            rep.fail("grading", [k, j], f"expected weight {list(target)}")
    # rank and weight lattice
    zero = P.zero_delta_indices()
    if P.n != len(zero):
        rep.fail("rank", [], f"n={P.n} but {len(zero)} generators have delta_k = 0")
    if lattice.rank([P.weights[k] for k in zero]) != len(zero):
        rep.fail("weights_independent", zero)
    for k in range(P.N):
        if P.delta_nonzero(k):
            prev = lattice.hermite_rows(P.weights[:k])
            if lattice.solve_integer(prev, P.weights[k]) is None:
                rep.fail("weight_span", [k])
    if P.weight_basis is not None:
        basis = [P.weights[k] for k in P.weight_basis]
        full = lattice.hermite_rows(P.weights)
        if lattice.hermite_rows(basis) != full or lattice.rank(basis) != len(basis):
            rep.fail("weight_basis", list(P.weight_basis), "not a Z-basis of the weight lattice")
    # (c) q-skew identity
    try:
        rep.qexp = infer_qk(P)
    except NotQNAError as exc:
        rep.fail("q_skew", [], str(exc))
    # (d) local nilpotency on generators, up to the bound
    for k in range(P.N):
        if not P.delta_nonzero(k):
            continue
        for j in range(k):
            a = gens[j]
            for m in range(1, nilpotency_bound + 1):
                a = P.apply_delta(k, a)
                if not a:
                    rep.nilpotency_orders[(k, j)] = m
                    break
            else:
                rep.fail("nilpotency", [k, j], f"delta^m(x) != 0 for all m <= {nilpotency_bound}")
    # (e) central generators
    rep.central_generators = central_generators(P)
    return rep
