"""JSON encodings for scalars, elements, presentations and derivations.

Indices are 1-based in every JSON document and 0-based in Python.
"""
from __future__ import annotations

import json

from .errors import PresentationError
from .ore import PBWElement, Presentation, lex_key
from .scalars import Scalar

FORMAT = 1


def element_to_json(a: PBWElement) -> list:
    items = sorted(a.terms.items(), key=lambda t: lex_key(t[0]), reverse=True)
    return [{"coeff": c.to_json(), "exps": list(f)} for f, c in items]


def _terms_from_json(N: int, data) -> dict:
    if not isinstance(data, list):
        raise PresentationError("element must be a list of terms")
    terms: dict = {}
    for t in data:
        f = tuple(int(x) for x in t["exps"])
        if len(f) != N:
            raise PresentationError(f"exponent vector {list(f)} has wrong length")
        c = Scalar.from_json(t["coeff"])
        terms[f] = terms.get(f, Scalar(0)) + c
    return terms


def element_from_json(P: Presentation, data) -> PBWElement:
    return P.element(_terms_from_json(P.N, data))


def presentation_to_json(P: Presentation) -> dict:
    out = {
        "format": FORMAT,
        "N": P.N,
        "n": P.n,
        "skew_exponents": [[k + 1, j + 1, P.skew[k][j]] for k in range(P.N) for j in range(k)],
        "weights": [list(w) for w in P.weights],
        "deltas": [
            {"k": k + 1, "j": j + 1, "value": element_to_json(v)}
            for (k, j), v in sorted(P.deltas.items())
        ],
        "names": list(P.names),
    }
    if P.name:
        out["name"] = P.name
    if P.weight_basis is not None:
        out["weight_basis"] = [k + 1 for k in P.weight_basis]
    return out


def presentation_from_json(data) -> Presentation:
    try:
        N = int(data["N"])
        skew = {}
        for k, j, a in data.get("skew_exponents", []):
            if not j < k:
                raise PresentationError("skew_exponents entries need k > j")
            skew[(int(k) - 1, int(j) - 1)] = int(a)
        deltas = {}
        for d in data.get("deltas", []):
            deltas[(int(d["k"]) - 1, int(d["j"]) - 1)] = _terms_from_json(N, d["value"])
        basis = data.get("weight_basis")
        return Presentation(
            N,
            skew,
            deltas,
            data["weights"],
            n=data.get("n"),
            names=data.get("names"),
            name=data.get("name", ""),
            weight_basis=[int(k) - 1 for k in basis] if basis is not None else None,
        )
    except PresentationError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise PresentationError(f"malformed presentation: {exc}") from exc


def derivation_to_json(D) -> dict:
    return {"format": FORMAT, "values": [element_to_json(v) for v in D.values]}


def derivation_from_json(P: Presentation, data):
    from .deriv import Derivation

    try:
        vals = data["values"]
    except (KeyError, TypeError) as exc:
        raise PresentationError("derivation needs a 'values' list") from exc
    if len(vals) != P.N:
        raise PresentationError(f"derivation needs {P.N} values")
    return Derivation(P, [element_from_json(P, v) for v in vals])


def load_json(path: str):
    import sys

    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
