"""Acceptance suite: one check per criterion, each with its time limit.

Every criterion prints a single PASS/FAIL line.  Under pytest the lines
are collected and repeated in the terminal summary; the file can also be
run directly with ``python3 tests/test_acceptance.py``.
"""
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from helpers import make_rng, pipeline, rand_element, rand_scalar  # noqa: E402
from qna import catalog, cli  # noqa: E402
from qna.catalog.serre import check_agreement  # noqa: E402
from qna.center import FailureReason, affine_center_rank, centers_report, kernel_basis, verify_hypothesis  # noqa: E402
from qna.deriv import (  # noqa: E402
    CharacterHom,
    Derivation,
    decompose,
    euler_derivation,
    hh1_basis,
    homogeneous_derivation,
    independent_modulo_inner,
    inner,
    is_inner_up_to,
    validate_derivation,
)
from qna.errors import DecompositionRefused  # noqa: E402
from qna.gy import commutation_matrix, compute_y_elements, divides_left, localization_membership  # noqa: E402
from qna.io import derivation_from_json  # noqa: E402
from qna.ore import validate_presentation  # noqa: E402
from qna.scalars import ONE, Scalar, qpow  # noqa: E402

RESULTS = []


def _run(number, title, limit, check):
    """Run check() and record a PASS/FAIL line.  check returns a detail string."""
    t0 = time.perf_counter()
    try:
        detail = check()
        ok = True
    except AssertionError as exc:
        detail, ok = f"assertion failed: {exc}", False
    elapsed = time.perf_counter() - t0
    if ok and elapsed >= limit:
        ok, detail = False, f"{detail}; too slow"
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({elapsed:.2f}s, limit {limit:g}s) {detail}"
    RESULTS.append(line)
    print(line)
    return ok, line


def _primitive_sign(v):
    first = next(x for x in v if x)
    return [x if first > 0 else -x for x in v]


def check_1():
    e = catalog.get("affine_rank1_center")
    G = compute_y_elements(e.presentation)
    B = commutation_matrix(e.presentation, G)
    assert B == [[0, 2, 3], [-2, 0, 5], [-3, -5, 0]], B
    K = kernel_basis(B)
    assert [_primitive_sign(v) for v in K] == [[5, -3, 2]], K
    assert len(K) == 1
    assert affine_center_rank(B) == 0
    return "kernel (5,-3,2), torus rank 1, affine rank 0"


def check_2():
    e = catalog.get("affine_hh1_rank4")
    P = e.presentation
    G = compute_y_elements(P)
    B = commutation_matrix(P, G)
    assert [_primitive_sign(v) for v in kernel_basis(B)] == [[1, -1, 1]]
    cert = verify_hypothesis(B, G.s_infinity())
    assert not cert.valid and cert.failure_reason == FailureReason.NoNonnegativeBasis
    delta = derivation_from_json(P, e.expected["extra_derivation"]["value"])
    x1, x2, x3 = P.gens()
    assert delta(x2) == x1 * x3 and delta(x1).is_zero() and delta(x3).is_zero()
    assert validate_derivation(P, delta)
    assert is_inner_up_to(P, delta, 6) is None
    eulers = [euler_derivation(P, [int(i == j) for j in range(3)]) for i in range(3)]
    assert independent_modulo_inner(P, eulers + [delta], 6)
    return "NoNonnegativeBasis, delta outer at 6, rank >= 4"


def check_3():
    e = catalog.get("uq_plus_sl3")
    P = e.presentation
    rep = validate_presentation(P)
    assert rep.valid and rep.qexp == {2: -2}, rep.qexp
    G = compute_y_elements(P)
    assert G.mu == [1, 2, 1]
    x1, _, x3 = P.gens()
    target = x3 * x1 - qpow(-1) * (x1 * x3)
    ratio = target.leading_coefficient() / G.y[2].leading_coefficient()
    assert ratio != 0 and target == G.y[2].scale(ratio)
    B = commutation_matrix(P, G)
    cert = verify_hypothesis(B, G.s_infinity())
    assert cert.valid and cert.ell == 1
    report = centers_report(P, G, cert, B)
    assert report.N_minus_ell_even and (P.N - cert.ell) % 2 == 0
    D = hh1_basis(P, cert)
    gens = P.gens()
    basis = [0, 2]
    assert len(D) == 2
    for i, Di in enumerate(D):
        for j in basis:
            want = gens[j] if basis[i] == j else P.zero()
            assert Di(gens[j]) == want
    return "e3=-2, mu=(1,2,1), y3 ok, ell=1, D_i(E_j)=delta_ij E_j"


def _random_eta(rng, pl):
    P = pl.P
    vals = {}
    for k in P.basis_indices():
        v = P.scalar(rand_scalar(rng))
        for _ in range(rng.randint(0, 2)):
            m = P.one()
            for _ in range(rng.randint(1, 2)):
                m = m * rng.choice(pl.z)
            v = v + m.scale(rand_scalar(rng))
        vals[k] = v
    return CharacterHom(P, vals)


def check_4():
    count = 0
    for name in ("uq_plus_sl3", "uq_plus_so5"):
        pl = pipeline(name)
        P = pl.P
        rng = make_rng(f"acceptance-4-{name}")
        for _ in range(100):
            r = rand_element(rng, P, 3, 4)
            eta = _random_eta(rng, pl)
            D = inner(P, r) + homogeneous_derivation(P, pl.cert, eta)
            res = decompose(P, pl.G, pl.cert, D)
            assert res.exact, f"{name}: inconclusive"
            assert res.eta == eta, f"{name}: eta not recovered"
            theta = homogeneous_derivation(P, pl.cert, res.eta)
            residual = D - inner(P, res.x) - theta
            assert residual.is_zero(), f"{name}: nonzero residual"
            count += 1
    return f"{count} roundtrips exact"


def _rand_exps(rng, N, max_total):
    f = [0] * N
    for _ in range(rng.randint(0, max_total)):
        f[rng.randrange(N)] += 1
    return tuple(f)


def check_5():
    pl = pipeline("uq_plus_sl3")
    P, G = pl.P, pl.G
    rng = make_rng("acceptance-5")
    violations = 0
    for _ in range(200):
        num = G.y_monomial(_rand_exps(rng, P.N, 2)) * rand_element(rng, P, 1, 2)
        f = _rand_exps(rng, P.N, 3)
        I = {j for j in range(P.N) if rng.random() < 0.5}
        J = {j for j in range(P.N) if rng.random() < 0.5}
        both = localization_membership(P, G, num, f, I) and localization_membership(P, G, num, f, J)
        if both != localization_membership(P, G, num, f, I & J):
            violations += 1
    assert violations == 0, f"{violations} violations"
    return "200 samples, 0 violations"


def check_6():
    total = 0
    for name in ("uq_plus_sl3", "uq_plus_so5"):
        pl = pipeline(name)
        P, G, y = pl.P, pl.G, pl.G.y
        rng = make_rng(f"acceptance-6-{name}")
        bad = [0, 0, 0]
        for t in range(200):
            i, j = rng.sample(range(P.N), 2)
            # y_i does not lie in y_j R
            if divides_left(P, y[j], y[i] + y[j] * rand_element(rng, P, 2, 2)) is not None:
                bad[0] += 1
            # monomials in the normal y's meet y_i R (i finite) trivially
            f = [0] * P.N
            for _ in range(rng.randint(0, 3)):
                f[rng.choice(G.s_infinity())] += 1
            k = rng.choice(G.s_finite())
            if divides_left(P, y[k], G.y_monomial(tuple(f))) is not None:
                bad[1] += 1
            # y_i R  meet  y_j R  equals  y_i y_j R
            u = rand_element(rng, P, 2, 2)
            w = [y[i] * y[j] * u, y[j] * y[i] * u + y[i] * y[j] * rand_element(rng, P, 1, 2), y[i] * u][t % 3]
            if divides_left(P, y[i], w) is not None and divides_left(P, y[j], w) is not None:
                if divides_left(P, y[i] * y[j], w) is None:
                    bad[2] += 1
        assert bad == [0, 0, 0], f"{name}: violations {bad}"
        total += 600
    return f"{total} samples, 0 violations"


def check_7():
    for name in catalog.names():
        P = catalog.get(name).presentation
        rng = make_rng(f"acceptance-7-{name}")
        for _ in range(1000):
            a, b, c = (rand_element(rng, P, 2, 2, big=True) for _ in range(3))
            assert (a * b) * c == a * (b * c), f"{name}: associativity"
            assert a * (b + c) == a * b + a * c, f"{name}: left distributivity"
            assert (a + b) * c == a * c + b * c, f"{name}: right distributivity"
    words = 0
    for name, d in catalog.UQ_PLUS.items():
        words += check_agreement(catalog.get(name).presentation, d["form"], d["roots"], d["splits"], 6)
    return f"{len(catalog.names())} algebras x 1000 triples, {words} oracle words agree"


def check_8():
    for name in ("uq_plus_sl2", "central_x"):
        pl = pipeline(name)
        P = pl.P
        D = Derivation(P, list(P.gens()))
        try:
            decompose(P, pl.G, pl.cert, D)
        except DecompositionRefused as exc:
            assert "central generator" in exc.reason, exc.reason
        else:
            raise AssertionError(f"{name}: not refused")
    # q is an indeterminate: no power of q other than q^0 equals 1, and
    # neither the CLI nor the scalars offer a specialisation of q.
    assert all(qpow(n) != ONE for n in range(-24, 25) if n)
    flags = {a for act in cli.build_parser()._actions for a in act.option_strings}
    assert not any("root" in f or "unity" in f for f in flags)
    assert not hasattr(Scalar, "evaluate") and not hasattr(Scalar, "specialize")
    return "sl2 and central_x refused; no root-of-unity input"


CRITERIA = [
    (1, "first example kernel and center ranks", 1, check_1),
    (2, "rank-4 example", 30, check_2),
    (3, "U_q^+(sl3) pipeline", 30, check_3),
    (4, "decomposition roundtrip", 300, check_4),
    (5, "localization intersection", 120, check_5),
    (6, "divisibility property suites", 120, check_6),
    (7, "engine soundness and oracle agreement", 600, check_7),
    (8, "negative fixtures", 30, check_8),
]


@pytest.mark.parametrize("number,title,limit,check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, limit, check):
    ok, line = _run(number, title, limit, check)
    assert ok, line


if __name__ == "__main__":
    results = [_run(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
