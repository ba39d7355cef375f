"""Derivations: validation, inner and homogeneous derivations, decomposition.

Every derivation D of a QNA satisfying the pivot hypothesis (and with no
central generator) splits as D = ad_x + theta_eta, where theta_eta acts on a
homogeneous a by eta(wt(a)) a for a homomorphism eta from the weight
lattice to the center.  The decomposition is found weight by weight.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import lattice, linalg
from .center import HypothesisCertificate
from .errors import ConsistencyError, DecompositionRefused, PresentationError
from .gy import GYStructure, y_weights
from .ore import PBWElement, Presentation, _add_into, _bump, _clean, _last, central_generators
from .scalars import ONE, qpow


class Derivation:
    """A linear map determined by its values on the generators."""

    def __init__(self, P: Presentation, values: Sequence[PBWElement]):
        if len(values) != P.N:
            raise PresentationError(f"a derivation needs {P.N} values")
        self.P = P
        self.values = [v if isinstance(v, PBWElement) else P.element(v) for v in values]
        self._cache: dict = {}

    def _mono(self, f) -> dict:
        hit = self._cache.get(f)
        if hit is not None:
            return hit
        m = _last(f)
        if m < 0:
            res = {}
        else:
            P = self.P
            fp = _bump(f, m, -1)
            acc: dict = {}
            # D(x^fp x_m) = D(x^fp) x_m + x^fp D(x_m)
            for h, c in self._mono(fp).items():
                _add_into(acc, P._mono_gen(h, m), c)
            for g, c in self.values[m].terms.items():
                _add_into(acc, P._mono_mono(fp, g), c)
            res = _clean(acc)
        self._cache[f] = res
        return res

    def __call__(self, a: PBWElement) -> PBWElement:
        acc: dict = {}
        for f, c in a.terms.items():
            _add_into(acc, self._mono(f), c)
        return PBWElement._raw(self.P, _clean(acc))

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.P, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.P, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, c) -> "Derivation":
        return Derivation(self.P, [v * c for v in self.values])

    def is_zero(self) -> bool:
        return not any(self.values)

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.values == other.values

    __hash__ = object.__hash__

    def __repr__(self):
        return "Derivation(" + ", ".join(f"{self.P.names[i]} -> {v!r}" for i, v in enumerate(self.values)) + ")"


def validate_derivation(P: Presentation, D: Derivation) -> bool:
    """Check D against every defining relation x_k x_j = q^a x_j x_k + delta_k(x_j)."""
    gens = P.gens()
    for k in range(P.N):
        for j in range(k):
            lhs = D.values[k] * gens[j] + gens[k] * D.values[j]
            rhs = (D.values[j] * gens[k] + gens[j] * D.values[k]).scale(qpow(P.skew[k][j]))
            d = P.deltas.get((k, j))
            if d is not None:
                rhs = rhs + D(d)
            if lhs != rhs:
                return False
    return True


def inner(P: Presentation, x: PBWElement) -> Derivation:
    return Derivation(P, [x * g - g * x for g in P.gens()])


def euler_derivation(P: Presentation, coeffs: Sequence) -> Derivation:
    """D(x_i) = coeffs[i] x_i; a derivation iff the relations are compatible."""
    return Derivation(P, [g * c for g, c in zip(P.gens(), coeffs)])


@dataclass
class CharacterHom:
    """A homomorphism eta from the weight lattice to the center.

    It is stored through its values on the weights of the generators listed
    in ``basis``, which must form a Z-basis of the weight lattice.
    """

    P: Presentation
    values: dict  # generator index -> central element
    basis: list = field(default=None)

    def __post_init__(self):
        if self.basis is None:
            self.basis = self.P.basis_indices()
        self.values = {
            k: (v if isinstance(v, PBWElement) else self.P.scalar(v))
            for k, v in self.values.items()
        }
        for k in self.basis:
            self.values.setdefault(k, self.P.zero())
        extra = set(self.values) - set(self.basis)
        if extra:
            raise ValueError(f"eta given on indices outside the basis: {sorted(extra)}")

    def coordinates(self, w) -> list[int]:
        basis = [self.P.weights[k] for k in self.basis]
        m = lattice.solve_integer(basis, list(w))
        if m is None:
            raise ValueError(f"weight {list(w)} is outside the span of the basis weights")
        return m

    def __call__(self, w) -> PBWElement:
        out = self.P.zero()
        for c, k in zip(self.coordinates(w), self.basis):
            if c:
                out = out + self.values[k] * c
        return out

    def is_zero(self) -> bool:
        return not any(self.values.values())

    def __eq__(self, other):
        if not isinstance(other, CharacterHom):
            return NotImplemented
        if self.basis == other.basis:
            return self.values == other.values
        return all(self(self.P.weights[i]) == other(self.P.weights[i]) for i in range(self.P.N))

    __hash__ = object.__hash__


def homogeneous_derivation(P: Presentation, cert: HypothesisCertificate | None, eta: CharacterHom) -> Derivation:
    """theta_eta(x_i) = eta(beta_i) x_i."""
    if cert is not None and not cert.valid:
        raise DecompositionRefused("hypothesis certificate invalid")
    return Derivation(P, [eta(P.weights[i]) * P.gen(i) for i in range(P.N)])


def _check_preconditions(P: Presentation, cert: HypothesisCertificate | None) -> None:
    if cert is None or not cert.valid:
        raise DecompositionRefused("hypothesis certificate invalid")
    cg = central_generators(P)
    if cg:
        raise DecompositionRefused(
            "central generator: " + ", ".join(P.names[i] for i in cg) + " is central"
        )


def hh1_basis(P: Presentation, cert: HypothesisCertificate, basis: Sequence[int] | None = None) -> list[Derivation]:
    """Homogeneous derivations dual to the chosen Z-basis of the weight lattice."""
    _check_preconditions(P, cert)
    basis = list(basis) if basis is not None else P.basis_indices()
    out = []
    for k in basis:
        eta = CharacterHom(P, {k: P.one()}, basis)
        out.append(homogeneous_derivation(P, cert, eta))
    return out


# decomposition


def monomials_of_weight(P: Presentation, w, max_degree: int) -> list[tuple]:
    """PBW exponent vectors of weight w and total degree <= max_degree."""
    w = tuple(w)
    out = []

    def rec(i, f, deg, acc):
        if i == P.N:
            if tuple(acc) == w:
                out.append(tuple(f))
            return
        beta = P.weights[i]
        e = 0
        while deg + e <= max_degree:
            rec(i + 1, f + [e], deg + e, [a + e * b for a, b in zip(acc, beta)])
            e += 1

    rec(0, [], 0, [0] * P.n)
    return sorted(out, key=lambda f: (sum(f), tuple(reversed(f))))


def _all_monomials(N: int, max_degree: int) -> list[tuple]:
    out = []
    for d in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(N), d):
            f = [0] * N
            for i in combo:
                f[i] += 1
            out.append(tuple(f))
    return out


def _components(P: Presentation, D: Derivation) -> dict:
    """gamma -> list of the weight beta_i + gamma parts of D(x_i)."""
    comps: dict = {}
    for i, v in enumerate(D.values):
        for w, part in P.homogeneous_components(v).items():
            gamma = tuple(a - b for a, b in zip(w, P.weights[i]))
            comps.setdefault(gamma, [P.zero()] * P.N)[i] = part
    return comps


def _column(P: Presentation, elems: Sequence[PBWElement]) -> dict:
    col = {}
    for i, e in enumerate(elems):
        for f, c in e.terms.items():
            col[(i, f)] = c
    return col


def _solve_columns(columns: dict, target: dict):
    """Solve sum_u a_u columns[u] == target; returns {u: a_u} or None."""
    rows: dict = {}
    for u, col in columns.items():
        for r, c in col.items():
            rows.setdefault(r, {})[u] = c
    for r in target:
        rows.setdefault(r, {})
    e = linalg.Eliminator()
    for r in sorted(rows, key=repr):
        e.add_row(rows[r], target.get(r, 0) if r in target else 0)
        if e.inconsistent:
            return None
    return e.solution()


def _ad_column(P: Presentation, f) -> dict:
    m = P.monomial(f)
    return _column(P, [m * g - g * m for g in P.gens()])


@dataclass
class DecompositionResult:
    x: PBWElement
    eta: CharacterHom | None
    status: str = "exact"
    bound: int | None = None

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def to_json(self) -> dict:
        from .io import element_to_json

        return {
            "x": element_to_json(self.x),
            "eta": {str(k + 1): element_to_json(v) for k, v in sorted(self.eta.values.items())}
            if self.eta is not None
            else None,
            "status": "exact" if self.exact else {"inconclusive_at": self.bound},
        }


def default_degree_bound(P: Presentation, G: GYStructure, D: Derivation) -> int:
    dmax = max((v.degree() for v in D.values), default=0)
    ymax = max(y.degree() for y in G.y)
    return 2 * max(dmax, 0) + ymax


def _central_monomials(P: Presentation, G: GYStructure, cert: HypothesisCertificate, gamma, max_degree: int):
    """Exponent vectors m (over z_1..z_l) and elements z^m of weight gamma."""
    yw = y_weights(P, G)
    zw = [
        tuple(sum(e * yw[k][t] for k, e in enumerate(f)) for t in range(P.n))
        for f in cert.z_exponents
    ]
    ell = len(zw)
    out = []
    gamma = tuple(gamma)
    for m in _all_monomials(ell, max_degree) if ell else [()]:
        w = tuple(sum(e * zw[i][t] for i, e in enumerate(m)) for t in range(P.n))
        if w == gamma:
            f = [0] * P.N
            for i, e in enumerate(m):
                for k in range(P.N):
                    f[k] += e * cert.z_exponents[i][k]
            out.append((m, G.y_monomial(f)))
    return out


def decompose(
    P: Presentation,
    G: GYStructure,
    cert: HypothesisCertificate,
    D: Derivation,
    degree_bound: int | None = None,
) -> DecompositionResult:
    """Write D = ad_x + theta_eta, weight component by weight component."""
    _check_preconditions(P, cert)
    if not validate_derivation(P, D):
        raise ValueError("input is not a derivation")
    if degree_bound is None:
        degree_bound = default_degree_bound(P, G, D)
    basis = P.basis_indices()
    coords = [lattice.solve_integer([P.weights[k] for k in basis], list(P.weights[i])) for i in range(P.N)]
    if any(c is None for c in coords):
        raise ConsistencyError("a generator weight lies outside the basis span")
    gens = P.gens()
    x = P.zero()
    eta_vals = {k: P.zero() for k in basis}
    for gamma, target_elems in sorted(_components(P, D).items()):
        columns = {}
        for f in monomials_of_weight(P, gamma, degree_bound):
            if any(f):
                columns[("x", f)] = _ad_column(P, f)
        for m, z in _central_monomials(P, G, cert, gamma, degree_bound):
            for b, k in enumerate(basis):
                col = _column(P, [(z * gens[i]) * coords[i][b] for i in range(P.N)])
                if col:
                    columns[("z", k, m)] = col
        sol = _solve_columns(columns, _column(P, target_elems))
        if sol is None:
            return DecompositionResult(x=P.zero(), eta=None, status="inconclusive", bound=degree_bound)
        zcache = {m: z for m, z in _central_monomials(P, G, cert, gamma, degree_bound)}
        for u, c in sol.items():
            if u[0] == "x":
                x = x + P.monomial(u[1], c)
            else:
                _, k, m = u
                eta_vals[k] = eta_vals[k] + zcache[m] * c
    eta = CharacterHom(P, eta_vals, basis)
    theta = homogeneous_derivation(P, cert, eta)
    ad = inner(P, x)
    for i in range(P.N):
        if D.values[i] != ad.values[i] + theta.values[i]:
            raise ConsistencyError(f"decomposition residual is nonzero on x_{i + 1}")
    return DecompositionResult(x=x, eta=eta, status="exact", bound=degree_bound)


def is_inner_up_to(P: Presentation, D: Derivation, degree_bound: int) -> PBWElement | None:
    """Some x of degree <= degree_bound with ad_x == D, or None."""
    x = P.zero()
    for gamma, target_elems in sorted(_components(P, D).items()):
        columns = {
            ("x", f): _ad_column(P, f)
            for f in monomials_of_weight(P, gamma, degree_bound)
            if any(f)
        }
        sol = _solve_columns(columns, _column(P, target_elems))
        if sol is None:
            return None
        for (_, f), c in sol.items():
            x = x + P.monomial(f, c)
    if inner(P, x) != D:
        raise ConsistencyError("inner solve returned a wrong witness")
    return x


def independent_modulo_inner(P: Presentation, Ds: Sequence[Derivation], degree_bound: int) -> bool:
    """True iff no nonzero K-combination of Ds equals ad_x with deg x <= degree_bound."""
    weights = set()
    for D in Ds:
        weights |= set(_components(P, D))
    columns = {}
    for t, D in enumerate(Ds):
        columns[("c", t)] = _column(P, D.values)
    for gamma in sorted(weights):
        for f in monomials_of_weight(P, gamma, degree_bound):
            if any(f):
                columns[("x", f)] = _ad_column(P, f)
    rows: dict = {}
    for u, col in columns.items():
        for r, c in col.items():
            rows.setdefault(r, {})[u] = c
    e = linalg.Eliminator()
    for r in sorted(rows, key=repr):
        e.add_row(rows[r])
    for v in e.nullspace(list(columns)):
        if any(u[0] == "c" and c for u, c in v.items()):
            return False
    return True
