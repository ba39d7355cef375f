"""Goodearl-Yakimov elements, divisibility and localization membership.

The elements y_1, ..., y_N are built recursively: y_k = x_k when delta_k = 0,
otherwise y_k = y_{p(k)} x_k - c_k for the unique predecessor p(k) that
makes the result normal in R_k.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConsistencyError, GYUniquenessError, NotQNAError
from .ore import PBWElement, Presentation, _scaling_exponent, infer_qk, lex_key
from .scalars import ONE, Scalar, qpow


# division


def _filtered(P: Presentation) -> bool:
    """True when no delta value has total degree above 2.

    Then the associated graded ring for the total degree is a quantum affine
    space, so deg(d*s) = deg(d) + deg(s) and quotient degrees are bounded.
    """
    cached = getattr(P, "_filtered", None)
    if cached is None:
        cached = all(d.degree() <= 2 for d in P.deltas.values())
        P._filtered = cached
    return cached


def _divide(P: Presentation, d: PBWElement, r: PBWElement, left: bool) -> PBWElement | None:
    if not d:
        raise ZeroDivisionError("division by the zero element")
    if not r:
        return P.zero()
    ld = d.leading_monomial()
    cd = d.terms[ld]
    if _filtered(P):
        max_deg = r.degree() - d.degree()
        bound = None
    else:
        max_deg = None
        bound = [max(f[i] for f in r.terms) for i in range(P.N)]
    quotient: dict = {}
    rem = r
    while rem:
        lm = rem.leading_monomial()
        g = tuple(a - b for a, b in zip(lm, ld))
        if min(g) < 0:
            return None
        if max_deg is not None and sum(g) > max_deg:
            return None
        if bound is not None and any(x > b for x, b in zip(g, bound)):
            return None
        mono = P.monomial(g)
        prod = d * mono if left else mono * d
        lead = prod.terms.get(lm)
        if lead is None or prod.leading_monomial() != lm:
            raise ConsistencyError("leading monomials are not additive")
        coeff = rem.terms[lm] / lead
        quotient[g] = quotient.get(g, Scalar(0)) + coeff
        rem = rem - prod.scale(coeff)
    return P.element(quotient)


def divides_left(P: Presentation, d: PBWElement, r: PBWElement) -> PBWElement | None:
    """The s with r == d*s, or None when d does not left-divide r."""
    return _divide(P, d, r, left=True)


def divides_right(P: Presentation, d: PBWElement, r: PBWElement) -> PBWElement | None:
    """The s with r == s*d, or None."""
    return _divide(P, d, r, left=False)


def is_normal(P: Presentation, u: PBWElement, k: int) -> bool:
    """Whether u R_k == R_k u, tested on the generators x_0..x_k."""
    if not u:
        return False
    if u.is_scalar():
        return True
    for i in range(k + 1):
        x = P.gen(i)
        if divides_left(P, u, x * u) is None:
            return False
        if divides_right(P, u, u * x) is None:
            return False
    return True


# the GY structure


@dataclass
class GYStructure:
    mu: list
    p: list  # None encodes -infinity
    s: list  # None encodes +infinity
    y: list
    c: dict = field(default_factory=dict)
    alpha_exponents: dict = field(default_factory=dict)
    qexp: dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return len(self.y)

    def s_infinity(self) -> list[int]:
        return [k for k in range(self.N) if self.s[k] is None]

    def s_finite(self) -> list[int]:
        return [k for k in range(self.N) if self.s[k] is not None]

    def y_monomial(self, f) -> PBWElement:
        """The ordered product y_0^f_0 ... y_{N-1}^f_{N-1}."""
        out = self.y[0].parent.one()
        for k, e in enumerate(f):
            for _ in range(e):
                out = out * self.y[k]
        return out

    def to_json(self) -> dict:
        from .io import element_to_json

        return {
            "mu": list(self.mu),
            "p": [None if v is None else v + 1 for v in self.p],
            "s": [None if v is None else v + 1 for v in self.s],
            "null_means": {"p": "-infinity", "s": "+infinity"},
            "y": [element_to_json(v) for v in self.y],
            "c": {str(k + 1): element_to_json(v) for k, v in sorted(self.c.items())},
            "alpha_exponents": {str(k + 1): v for k, v in sorted(self.alpha_exponents.items())},
            "qexp": {str(k + 1): v for k, v in sorted(self.qexp.items())},
            "s_infinity": [k + 1 for k in self.s_infinity()],
        }


def compute_y_elements(P: Presentation) -> GYStructure:
    qexp = infer_qk(P)
    N = P.N
    y: list = []
    mu, p, s = [0] * N, [None] * N, [None] * N
    c, alpha = {}, {}
    colours = 0
    for k in range(N):
        xk = P.gen(k)
        if not P.delta_nonzero(k):
            colours += 1
            mu[k] = colours
            y.append(xk)
            continue
        qk = qpow(qexp[k])
        survivors = []
        for j in range(k):
            if s[j] is not None:
                continue
            dy = P.apply_delta(k, y[j])
            if not dy:
                continue
            a = _scaling_exponent(P, k, y[j])
            if a is None:
                raise NotQNAError(f"y_{j + 1} is not a sigma_{k + 1}-eigenvector")
            ck = dy.scale(qpow(-a) * (qk - ONE).inv())
            cand = y[j] * xk - ck
            if is_normal(P, cand, k):
                survivors.append((j, cand, ck, a))
        if len(survivors) != 1:
            found = [j + 1 for j, *_ in survivors]
            raise GYUniquenessError(
                f"GY uniqueness violated at k={k + 1}: surviving predecessors {found}"
            )
        j, cand, ck, a = survivors[0]
        p[k], s[j], mu[k] = j, k, mu[j]
        c[k], alpha[k] = ck, a
        y.append(cand)
    return GYStructure(mu=mu, p=p, s=s, y=y, c=c, alpha_exponents=alpha, qexp=qexp)


def y_weights(P: Presentation, G: GYStructure) -> list[tuple]:
    """Weights of y_k from the recursion wt(y_k) = wt(y_p(k)) + beta_k."""
    out = []
    for k in range(P.N):
        w = P.weights[k]
        if G.p[k] is not None:
            w = tuple(a + b for a, b in zip(out[G.p[k]], w))
        out.append(tuple(w))
    return out


def quasi_commutation_exponent(a: PBWElement, b: PBWElement) -> int | None:
    """The e with b*a == q**e a*b, or None if a and b do not quasi-commute."""
    ab = a * b
    ba = b * a
    if not ab:
        return 0 if not ba else None
    lm = ab.leading_monomial()
    if lm not in ba.terms:
        return None
    e = (ba.terms[lm] / ab.terms[lm]).as_qpower()
    if e is None or ba != ab.scale(qpow(e)):
        return None
    return e


def commutation_matrix(P: Presentation, G: GYStructure) -> list[list[int]]:
    """Matrix b with y_j y_i = q**b[i][j] y_i y_j."""
    N = P.N
    B = [[0] * N for _ in range(N)]
    for i in range(N):
        for j in range(i + 1, N):
            e = quasi_commutation_exponent(G.y[i], G.y[j])
            if e is None:
                raise ConsistencyError(f"y_{i + 1} and y_{j + 1} do not quasi-commute")
            B[i][j], B[j][i] = e, -e
    return B


# localization


def reduce_fraction(P: Presentation, G: GYStructure, numerator: PBWElement, denominator, I=()):
    """Cancel y-factors off the left fraction y^(-f) r as far as possible.

    Factors y_j with j outside I are cancelled greedily through left
    division; factors inside I are kept since they are invertible anyway.
    Returns the remaining exponent vector and numerator (scalars dropped).
    """
    f = list(denominator)
    r = numerator
    inside = set(I)
    progress = True
    while progress:
        progress = False
        for j in range(P.N):
            if f[j] and j not in inside:
                quo = divides_left(P, G.y[j], r)
                if quo is not None:
                    f[j] -= 1
                    r = quo
                    progress = True
    return f, r


def localization_membership(P: Presentation, G: GYStructure, numerator: PBWElement, denominator, I) -> bool:
    """Whether y^(-f) * numerator lies in the localization R E_I^(-1)."""
    if not numerator:
        return True
    f, _ = reduce_fraction(P, G, numerator, denominator, I)
    inside = set(I)
    return all(e == 0 or j in inside for j, e in enumerate(f))
