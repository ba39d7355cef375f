"""Centers of quantum tori and affine spaces, and the pivot hypothesis.

A Laurent monomial y^f in the quantum torus is central iff B f = 0, where
y_j y_i = q**B[i][j] y_i y_j.  The hypothesis asks for a basis z_1..z_l of
nonnegative kernel vectors with pivot indices c_1..c_l such that z_i has
exponent delta_ij at c_j, plus a support condition.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from . import lattice
from .errors import ConsistencyError
from .gy import GYStructure
from .ore import Presentation


class FailureReason(enum.IntEnum):
    # ordered by how far the search got
    KernelNotSupportedOnPrimes = 1
    NoNonnegativeBasis = 2
    NoPivotAssignment = 3
    H3Violated = 4


def kernel_basis(B) -> list[list[int]]:
    """Saturated Z-basis of {f : B f = 0} in Hermite normal form."""
    return lattice.kernel_basis(B, len(B))


def is_simple_torus(B) -> bool:
    return not kernel_basis(B)


@dataclass
class HypothesisCertificate:
    z_exponents: list = field(default_factory=list)
    pivots: list = field(default_factory=list)
    valid: bool = False
    failure_reason: FailureReason | None = None
    definitive: bool = False
    search_bound: int = 4
    kernel: list = field(default_factory=list)

    @property
    def ell(self) -> int:
        return len(self.kernel)

    def to_json(self) -> dict:
        out = {
            "valid": self.valid,
            "ell": self.ell,
            "kernel_basis": self.kernel,
            "z": self.z_exponents,
            "pivots": [c + 1 for c in self.pivots],
            "search_bound": self.search_bound,
        }
        if not self.valid:
            out["failure_reason"] = self.failure_reason.name
            out["definitive"] = self.definitive
        return out


def _support(v) -> set[int]:
    return {i for i, e in enumerate(v) if e}


def _h3_holds(zs, pivots) -> bool:
    for i, z in enumerate(zs):
        supp = _support(z)
        if len(supp) < 2:
            continue
        others = set().union(*(_support(w) for j, w in enumerate(zs) if j != i))
        if (supp - {pivots[i]}) <= others:
            return False
    return True


def _pivot_assignments(zs, s_infty):
    """All H2 pivot tuples, smallest sorted pivot set first."""
    options = []
    for i, z in enumerate(zs):
        opts = [
            c for c in sorted(s_infty)
            if z[c] == 1 and all(w[c] == 0 for j, w in enumerate(zs) if j != i)
        ]
        options.append(opts)
    assignments = [a for a in itertools.product(*options) if len(set(a)) == len(a)]
    assignments.sort(key=lambda a: sorted(a))
    return assignments


def _nonnegative_bases(kernel, bound):
    """Bases of the kernel lattice made of nonnegative vectors.

    Candidates are the nonnegative vectors sum c_i K_i with |c_i| <= bound;
    a choice of l of them is a basis iff its coefficient matrix is unimodular.
    """
    ell = len(kernel)
    N = len(kernel[0])
    cands = []
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=ell):
        if not any(coeffs):
            continue
        v = [sum(c * k[t] for c, k in zip(coeffs, kernel)) for t in range(N)]
        if min(v) >= 0:
            cands.append((sum(v), v, list(coeffs)))
    cands.sort(key=lambda t: (t[0], t[1]))

    def extend(start, chosen):
        if len(chosen) == ell:
            yield [cands[i][1] for i in chosen]
            return
        for i in range(start, len(cands)):
            rows = [cands[j][2] for j in chosen] + [cands[i][2]]
            # every partial choice must span a saturated sublattice
            if lattice.is_saturated(rows) and lattice.rank(rows) == len(rows):
                yield from extend(i + 1, chosen + [i])

    yield from extend(0, [])


def verify_hypothesis(B, s_infty, search_bound: int = 4) -> HypothesisCertificate:
    kernel = kernel_basis(B)
    cert = HypothesisCertificate(search_bound=search_bound, kernel=kernel)
    s_inf = set(s_infty)
    if not kernel:
        cert.valid = True
        return cert
    if any(not _support(k) <= s_inf for k in kernel):
        cert.failure_reason = FailureReason.KernelNotSupportedOnPrimes
        cert.definitive = True
        return cert
    deepest = FailureReason.NoNonnegativeBasis
    for zs in _nonnegative_bases(kernel, search_bound):
        assignments = _pivot_assignments(zs, s_inf)
        if not assignments:
            deepest = max(deepest, FailureReason.NoPivotAssignment)
            continue
        for piv in assignments:
            if _h3_holds(zs, piv):
                order = sorted(range(len(zs)), key=lambda i: piv[i])
                cert.z_exponents = [zs[i] for i in order]
                cert.pivots = [piv[i] for i in order]
                cert.valid = True
                return cert
        deepest = max(deepest, FailureReason.H3Violated)
    cert.failure_reason = deepest
    # without enough nonnegative kernel directions no bound can succeed
    if deepest == FailureReason.NoNonnegativeBasis:
        cert.definitive = lattice.nonnegative_kernel_rank(B, len(B)) < len(kernel)
    return cert


@dataclass
class CenterReport:
    ell: int
    z: list
    pivots: list
    z_elements: list
    N_minus_ell_even: bool
    reduced_torus_simple: bool

    def to_json(self) -> dict:
        from .io import element_to_json

        return {
            "ell": self.ell,
            "z": self.z,
            "pivots": [c + 1 for c in self.pivots],
            "z_elements": [element_to_json(e) for e in self.z_elements],
            "N_minus_ell_even": self.N_minus_ell_even,
            "reduced_torus_simple": self.reduced_torus_simple,
        }


def center_generators(P: Presentation, G: GYStructure, cert: HypothesisCertificate) -> list:
    return [G.y_monomial(f) for f in cert.z_exponents]


def centers_report(P: Presentation, G: GYStructure, cert: HypothesisCertificate, B=None) -> CenterReport:
    if not cert.valid:
        raise ValueError("centers_report needs a valid hypothesis certificate")
    if B is None:
        from .gy import commutation_matrix

        B = commutation_matrix(P, G)
    zs = center_generators(P, G, cert)
    for i, z in enumerate(zs):
        if not P.is_central(z):
            raise ConsistencyError(f"z_{i + 1} does not commute with every generator")
    ell = len(zs)
    even = (P.N - ell) % 2 == 0
    rest = [i for i in range(P.N) if i not in set(cert.pivots)]
    reduced = [[B[i][j] for j in rest] for i in rest]
    simple = not rest or is_simple_torus(reduced)
    if not even:
        raise ConsistencyError("N - l is odd")
    if not simple:
        raise ConsistencyError("reduced quantum torus has a nontrivial center")
    return CenterReport(ell, cert.z_exponents, cert.pivots, zs, even, simple)


def affine_center_rank(B) -> int:
    """Rank of the monoid of central monomials with nonnegative exponents."""
    return lattice.nonnegative_kernel_rank(B, len(B))
