"""Shared helpers: random elements and cached catalog pipelines."""
import os
import random

from qna import catalog
from qna.center import center_generators, verify_hypothesis
from qna.gy import commutation_matrix, compute_y_elements
from qna.scalars import Scalar, qpow

SEED = int(os.environ.get("QNA_SEED", "20240611"))


def make_rng(label):
    return random.Random(f"{SEED}-{label}")


class Pipeline:
    """Everything the later stages need for one catalog algebra."""

    def __init__(self, name):
        self.name = name
        self.entry = catalog.get(name)
        self.P = self.entry.presentation
        self.G = compute_y_elements(self.P)
        self.B = commutation_matrix(self.P, self.G)
        self.cert = verify_hypothesis(self.B, self.G.s_infinity())
        self.z = center_generators(self.P, self.G, self.cert) if self.cert.valid else []


_pipelines = {}


def pipeline(name):
    if name not in _pipelines:
        _pipelines[name] = Pipeline(name)
    return _pipelines[name]


def rand_scalar(rng, big=False):
    c = Scalar.coerce(rng.choice([-3, -2, -1, 1, 2, 3])) * qpow(rng.randint(-2, 2))
    if big and rng.random() < 0.4:
        c = c + qpow(rng.randint(-2, 2))
    if big and rng.random() < 0.2:
        c = c / (qpow(rng.randint(1, 2)) - 1)
    return c


def rand_monomial(rng, N, max_deg, min_deg=0):
    f = [0] * N
    for _ in range(rng.randint(min_deg, max_deg)):
        f[rng.randrange(N)] += 1
    return tuple(f)


def rand_element(rng, P, max_deg=3, nterms=3, min_deg=0, big=False):
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        terms[rand_monomial(rng, P.N, max_deg, min_deg)] = rand_scalar(rng, big)
    return P.element(terms)


def rand_homogeneous(rng, P, max_deg=3, nterms=3):
    """A nonzero homogeneous element: components of a random element."""
    while True:
        a = rand_element(rng, P, max_deg, nterms)
        comps = P.homogeneous_components(a)
        if comps:
            w = rng.choice(sorted(comps))
            if comps[w]:
                return comps[w]
