"""Example algebras with expected results.

Each builder returns a CatalogEntry holding a Presentation and a fixture
dictionary.  Fixture values carry a provenance tag: "literature" (stated in
published work), "derived" (computed by an independent route and frozen) or
"trivial".  The U_q^+ presentations are frozen JSON files produced by the
Serre-relation oracle in ``serre.py``; ``derive_uq_plus`` recomputes them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from ..errors import PresentationError
from ..io import presentation_from_json, presentation_to_json
from ..ore import Presentation
from ..scalars import ONE, Q

# Cartan data: symmetric form on simple roots, positive roots in the order
# of the reduced word, and how each non-simple root vector is built.
UQ_PLUS = {
    "uq_plus_sl3": {
        "form": [[2, -1], [-1, 2]],
        "roots": [(1, 0), (1, 1), (0, 1)],
        "splits": [None, (0, 2), None],
        "names": ["E1", "E12", "E2"],
        "word": "s1 s2 s1",
    },
    "uq_plus_so5": {
        # alpha_1 long: (a1,a1) = 4, (a2,a2) = 2, d = (2, 1)
        "form": [[4, -2], [-2, 2]],
        "roots": [(1, 0), (1, 1), (1, 2), (0, 1)],
        "splits": [None, (0, 3), (1, 3), None],
        "names": ["E1", "E12", "E122", "E2"],
        "word": "s1 s2 s1 s2",
    },
}


@dataclass
class CatalogEntry:
    name: str
    presentation: Presentation
    expected: dict = field(default_factory=dict)
    negative: bool = False
    metadata: dict = field(default_factory=dict)

    def expected_json(self) -> dict:
        return {
            "format": 1,
            "name": self.name,
            "negative": self.negative,
            "metadata": self.metadata,
            "expected": self.expected,
        }


def _fx(value, provenance: str) -> dict:
    return {"value": value, "provenance": provenance}


def _unit_weights(N: int) -> list:
    return [[int(i == j) for j in range(N)] for i in range(N)]


def quantum_affine_space(A, weights=None, name: str = "quantum_affine_space") -> CatalogEntry:
    """Quantum affine space with T_j T_i = q**A[i][j] T_i T_j.

    Since x_k x_j = q**a[k][j] x_j x_k, the skew exponent a[k][j] (k > j)
    is A[j][k].  Default weights are the unit vectors.
    """
    N = len(A)
    if any(len(r) != N for r in A) or any(A[i][j] != -A[j][i] for i in range(N) for j in range(N)):
        raise PresentationError("A must be a skew-symmetric square integer matrix")
    skew = {(k, j): int(A[j][k]) for k in range(N) for j in range(k)}
    P = Presentation(N, skew, {}, weights or _unit_weights(N), name=name)
    expected = {
        "y_equals_x": _fx(True, "trivial"),
        "central_generators": _fx([i + 1 for i in range(N) if not any(A[i])], "trivial"),
    }
    return CatalogEntry(name, P, expected)


def quantum_plane() -> CatalogEntry:
    e = quantum_affine_space([[0, 1], [-1, 0]], name="quantum_plane")
    e.expected["torus_simple"] = _fx(True, "trivial")
    e.expected["hh1_rank"] = _fx(2, "trivial")
    return e


def affine_rank1_center() -> CatalogEntry:
    """Quantum affine space whose torus has a rank-one center but whose
    affine center is trivial."""
    e = quantum_affine_space([[0, 2, 3], [-2, 0, 5], [-3, -5, 0]], name="affine_rank1_center")
    e.expected.update(
        kernel_basis=_fx([[5, -3, 2]], "literature"),
        torus_center_rank=_fx(1, "literature"),
        affine_center_rank=_fx(0, "literature"),
        hypothesis=_fx({"valid": False, "failure_reason": "NoNonnegativeBasis"}, "derived"),
    )
    return e


def affine_hh1_rank4() -> CatalogEntry:
    """Three-variable quantum affine space with an extra outer derivation
    x2 -> x1 x3; its first Hochschild cohomology has rank 4."""
    e = quantum_affine_space([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]], name="affine_hh1_rank4")
    e.expected.update(
        kernel_basis=_fx([[1, -1, 1]], "literature"),
        hypothesis=_fx({"valid": False, "failure_reason": "NoNonnegativeBasis"}, "literature"),
        extra_derivation=_fx(
            {"values": [[], [{"coeff": ONE.to_json(), "exps": [1, 0, 1]}], []]}, "literature"
        ),
        extra_derivation_inner_at_6=_fx(False, "literature"),
        hh1_rank_lower_bound=_fx(4, "literature"),
    )
    e.negative = True
    return e


def quantum_weyl() -> CatalogEntry:
    """yx = q xy + 1 with weights beta_2 = -beta_1."""
    P = Presentation(2, {(1, 0): 1}, {(1, 0): {(0, 0): ONE}}, [[1], [-1]], name="quantum_weyl")
    expected = {
        "qexp": _fx({"2": -1}, "derived"),
        "p": _fx([None, 1], "derived"),
        # c_2 = alpha^{-1} (q_2 - 1)^{-1} with alpha = q, q_2 = q^{-1}
        "c2": _fx((ONE / (ONE - Q)).to_json(), "derived"),
        "ell": _fx(0, "derived"),
        "root_of_unity": _fx("not constructible: scalars are Q(q) with q transcendental", "trivial"),
    }
    return CatalogEntry("quantum_weyl", P, expected)


def central_x_example() -> CatalogEntry:
    """zy = q yz + x with x central; generators x1 = x, x2 = y, x3 = z."""
    P = Presentation(
        3,
        {(1, 0): 0, (2, 0): 0, (2, 1): 1},
        {(2, 1): {(1, 0, 0): ONE}},
        [[1, 0], [0, 1], [1, -1]],
        names=["x", "y", "z"],
        name="central_x",
    )
    one = ONE.to_json()
    expected = {
        "central_generators": _fx([1], "literature"),
        "qexp": _fx({"3": -1}, "derived"),
        "derivations": _fx(
            {
                "delta1": {"values": [[], [{"coeff": one, "exps": [0, 1, 0]}],
                                      [{"coeff": (-ONE).to_json(), "exps": [0, 0, 1]}]]},
                "delta2": {"values": [[{"coeff": one, "exps": [1, 0, 0]}],
                                      [{"coeff": one, "exps": [0, 1, 0]}], []]},
            },
            "literature",
        ),
        "decompose": _fx("refused: central generator", "literature"),
    }
    return CatalogEntry("central_x", P, expected, negative=True)


def uq_plus_sl2() -> CatalogEntry:
    P = Presentation(1, {}, {}, [[1]], names=["E"], name="uq_plus_sl2")
    expected = {
        "central_generators": _fx([1], "literature"),
        "decompose": _fx("refused: central generator", "literature"),
    }
    return CatalogEntry("uq_plus_sl2", P, expected, negative=True)


def _load_frozen(name: str) -> dict:
    text = resources.files(__package__).joinpath("data", f"{name}.json").read_text()
    return json.loads(text)


def _frozen_entry(name: str) -> CatalogEntry:
    doc = _load_frozen(name)
    P = presentation_from_json(doc["presentation"])
    return CatalogEntry(name, P, doc["expected"], metadata=doc.get("metadata", {}))


def uq_plus_sl3() -> CatalogEntry:
    return _frozen_entry("uq_plus_sl3")


def uq_plus_so5() -> CatalogEntry:
    return _frozen_entry("uq_plus_so5")


def derive_uq_plus(name: str, max_degree: int = 6) -> Presentation:
    """Recompute a U_q^+ presentation from the Serre-relation oracle."""
    from .serre import derive_presentation

    d = UQ_PLUS[name]
    return derive_presentation(d["form"], d["roots"], d["splits"], d["names"], name, max_degree)


def frozen_document(name: str) -> dict:
    """The JSON document shipped in data/ for a U_q^+ entry.

    Expected values are read off the oracle presentation by the pipeline;
    the test suite recomputes all of them.
    """
    from ..center import affine_center_rank, verify_hypothesis
    from ..gy import commutation_matrix, compute_y_elements
    from ..ore import infer_qk

    d = UQ_PLUS[name]
    P = derive_uq_plus(name)
    G = compute_y_elements(P)
    B = commutation_matrix(P, G)
    cert = verify_hypothesis(B, G.s_infinity())
    expected = {
        "qexp": _fx({str(k + 1): e for k, e in sorted(infer_qk(P).items())}, "derived"),
        "mu": _fx(G.mu, "derived"),
        "p": _fx([None if v is None else v + 1 for v in G.p], "derived"),
        "s_infinity": _fx([k + 1 for k in G.s_infinity()], "derived"),
        "commutation_matrix": _fx(B, "derived"),
        "ell": _fx(cert.ell, "derived"),
        "z": _fx(cert.z_exponents, "derived"),
        "pivots": _fx([c + 1 for c in cert.pivots], "derived"),
        "affine_center_rank": _fx(affine_center_rank(B), "derived"),
        "hh1_rank": _fx(P.n, "derived"),
        "central_generators": _fx([], "derived"),
    }
    metadata = {
        "reduced_word": d["word"],
        "positive_roots": [list(r) for r in d["roots"]],
        "symmetric_form": d["form"],
        "root_vector_rule": "E_{b+b'} = E_b E_b' - q^{(b,b')} E_b' E_b",
        "weights": "coordinates in the simple roots",
    }
    return {"format": 1, "presentation": presentation_to_json(P), "expected": expected, "metadata": metadata}


BUILDERS = {
    "quantum_plane": quantum_plane,
    "affine_rank1_center": affine_rank1_center,
    "affine_hh1_rank4": affine_hh1_rank4,
    "quantum_weyl": quantum_weyl,
    "central_x": central_x_example,
    "uq_plus_sl2": uq_plus_sl2,
    "uq_plus_sl3": uq_plus_sl3,
    "uq_plus_so5": uq_plus_so5,
}


def get(name: str) -> CatalogEntry:
    try:
        return BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(sorted(BUILDERS))}") from None


def names() -> list[str]:
    return sorted(BUILDERS)
