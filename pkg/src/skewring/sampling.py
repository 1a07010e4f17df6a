"""Random generators for tests and randomized CLI checks.

All functions take an explicit ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random

from . import matfq as M
from .freering import RingCtx, SkewPoly
from .morphism import inner_sigma_derivation
from .transform import AffineTransform, pullback_ring, pushforward_ring


def random_vec(F, n: int, rng: random.Random) -> tuple:
    return tuple(rng.randrange(F.q) for _ in range(n))


def random_invertible(F, n: int, rng: random.Random) -> tuple:
    while True:
        A = tuple(random_vec(F, n, rng) for _ in range(n))
        if M.is_invertible(F, A):
            return A


def random_word(n: int, degree: int, rng: random.Random) -> tuple:
    return tuple(rng.randrange(n) for _ in range(degree))


def random_poly(ring: RingCtx, rng: random.Random, max_degree: int = 3, max_terms: int = 4) -> SkewPoly:
    F = ring.ctx
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        w = random_word(ring.n, rng.randint(0, max_degree), rng)
        terms[w] = rng.randrange(1, F.q)
    return ring.poly(terms)


def random_exps(F, n: int, rng: random.Random) -> tuple:
    return tuple(rng.randrange(F.m) for _ in range(n))


def random_diagonal_ring(F, n: int, rng: random.Random, inner: bool = False) -> RingCtx:
    ring = RingCtx.diagonal(F, random_exps(F, n, rng))
    if inner:
        ring = RingCtx(ring.sigma, inner_sigma_derivation(ring.sigma, random_vec(F, n, rng)))
    return ring


def random_planted_ring(F, n: int, rng: random.Random, exps=None):
    """A ring known to be affine-isomorphic to a diagonal one.

    Returns (ring, A, lam, exps) with T_{A, lam}: ring -> F_q[x; exps].
    """
    if exps is None:
        exps = random_exps(F, n, rng)
    A = random_invertible(F, n, rng)
    lam = random_vec(F, n, rng)
    ring = pullback_ring(RingCtx.diagonal(F, exps), A, lam)
    return ring, A, lam, tuple(exps)


def random_affine(src: RingCtx, rng: random.Random) -> AffineTransform:
    """A random T_{A, lam} out of src, with the target ring it forces."""
    F, n = src.ctx, src.n
    A = random_invertible(F, n, rng)
    lam = random_vec(F, n, rng)
    return AffineTransform(A, lam, src, pushforward_ring(src, A, lam))
