"""Skew polynomial arithmetic, division and evaluation."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewring import matfq as M
from skewring.errors import DimensionMismatch, RingMismatch, ZeroConjugator
from skewring.freering import (
    ZERO_DEGREE,
    RingCtx,
    conjugate_point,
    divide_linear,
    evaluate,
    evaluate_everywhere,
    points,
    poly_mul,
    product_rule_eval,
    scalar_mul_left,
)
from skewring.gf import field_new
from skewring.morphism import inner_sigma_derivation
from skewring.sampling import random_poly

F2 = field_new(2)
F4 = field_new(2, 2)
F9 = field_new(3, 2)
c = F4.c
c2 = F4.mul(c, c)


def frob_ring():
    return RingCtx.diagonal(F4, (1,))


def mixed_ring(F=F4, lam=None):
    ring = RingCtx.diagonal(F, (1, 0) if F.m > 1 else (0, 0))
    lam = lam or (F.c, 1)
    return RingCtx(ring.sigma, inner_sigma_derivation(ring.sigma, lam))


def oracle_mul(F, G):
    """Product computed by peeling the leftmost letter when pushing scalars."""
    ring = F.ring
    fld = ring.ctx

    def push_left(word, a):
        # returns {word': coeff} for word * a
        if a == 0:
            return {}
        if not word:
            return {(): a}
        i, rest = word[0], word[1:]
        out = {}
        for w, b in push_left(rest, a).items():
            # x_i * (b w) = sum_j sigma_ij(b) x_j w + delta_i(b) w
            for j, s in enumerate(ring.sigma(b)[i]):
                if s:
                    out[(j,) + w] = fld.add(out.get((j,) + w, 0), s)
            d = ring.delta(b)[i]
            if d:
                out[w] = fld.add(out.get(w, 0), d)
        return {k: v for k, v in out.items() if v}

    total = ring.zero()
    for m, f in F.terms.items():
        for m2, g in G.terms.items():
            part = ring.poly({u + m2: fld.mul(f, v) for u, v in push_left(m, g).items()})
            total = total + part
    return total


def test_add_and_scalar():
    R = mixed_ring()
    x1, x2 = R.gens()
    P = c * x1 * x2 + 3
    assert P + R.zero() == P
    assert P + scalar_mul_left(F4.neg(1), P) == R.zero()
    assert x1 + x1 == R.zero()
    R9 = RingCtx.conventional(F9, 1)
    x = R9.gen(0)
    assert x + x == R9.monomial((0,), 2)


def test_mul_golden():
    R = frob_ring()
    x = R.gen(0)
    assert x * c == c2 * x
    assert R.one() * x == x and x * R.one() == x
    R2 = RingCtx.diagonal(F4, (1, 0))
    x1, x2 = R2.gens()
    assert x1 * (c * x2) == R2.monomial((0, 1), c2)
    assert x2 * (c * x1) == R2.monomial((1, 0), c)
    assert x1 * x2 != x2 * x1


def test_mixed_ring_commutation():
    R = mixed_ring()
    x1, x2 = R.gens()
    for a in F4.elements():
        for i, xi in enumerate((x1, x2)):
            want = R.poly({(j,): R.sigma(a)[i][j] for j in range(2)}) + R.const(R.delta(a)[i])
            assert xi * a == want


def test_mul_matches_left_peeling_oracle():
    rng = random.Random(0)
    for R in (mixed_ring(), mixed_ring(F9, (3, 5)), RingCtx.diagonal(field_new(2, 3), (2, 1, 0))):
        for _ in range(60):
            P, Q = random_poly(R, rng, 3, 4), random_poly(R, rng, 3, 4)
            assert P * Q == oracle_mul(P, Q)


def test_degree():
    R = mixed_ring()
    x1, x2 = R.gens()
    assert R.zero().degree == ZERO_DEGREE
    assert R.const(1).degree == 0
    assert (x1 * x2 + x1).degree == 2
    assert (R.zero() * x1).degree == ZERO_DEGREE


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        frob_ring().gen(0) + RingCtx.conventional(F4, 1).gen(0)
    with pytest.raises(DimensionMismatch):
        frob_ring().gen(1)


def test_divide_linear_golden():
    R = frob_ring()
    x = R.gen(0)
    G, b = divide_linear(x * x, (c,))
    assert G[0] == x + c2 and b == 1
    G, b = divide_linear(R.const(3), (1,))
    assert G == [R.zero()] and b == 3
    R2 = mixed_ring()
    G, b = divide_linear(R2.gen(1), (2, 3))
    assert G == [R2.zero(), R2.one()] and b == 3


def reconstruct(G, a, b):
    R = G[0].ring
    total = R.const(b)
    for i, g in enumerate(G):
        total = total + g * (R.gen(i) - R.const(a[i]))
    return total


def test_divide_linear_reconstructs():
    rng = random.Random(1)
    for R in (mixed_ring(), mixed_ring(F9, (1, 4))):
        for _ in range(40):
            P = random_poly(R, rng, 4, 5)
            a = tuple(rng.randrange(R.ctx.q) for _ in range(R.n))
            G, b = divide_linear(P, a)
            assert reconstruct(G, a, b) == P
            assert evaluate(P, a) == b
            assert divide_linear(P - R.const(b), a)[1] == 0


def test_evaluate_golden():
    R = frob_ring()
    x = R.gen(0)
    assert evaluate(x * x, (c,)) == 1
    assert evaluate(R.one(), (2,)) == 1
    Rc = RingCtx.conventional(F9, 2)
    x1, x2 = Rc.gens()
    for a in points(Rc):
        want = F9.mul(a[0], a[1])
        assert evaluate(x1 * x2, a) == want == evaluate(x2 * x1, a)
        assert evaluate(x1, a) == a[0] and evaluate(x2, a) == a[1]


def test_conventional_matches_commutative_evaluation():
    rng = random.Random(2)
    R = RingCtx.conventional(F9, 2)
    for _ in range(30):
        P = random_poly(R, rng, 4, 5)
        for a in points(R):
            want = 0
            for w, coef in P.terms.items():
                term = coef
                for i in w:
                    term = F9.mul(term, a[i])
                want = F9.add(want, term)
            assert evaluate(P, a) == want


def test_evaluate_is_left_linear():
    rng = random.Random(3)
    R = mixed_ring()
    for _ in range(30):
        P, Q = random_poly(R, rng), random_poly(R, rng)
        s = rng.randrange(4)
        for a in points(R):
            lhs = evaluate(scalar_mul_left(s, P) + Q, a)
            assert lhs == F4.add(F4.mul(s, evaluate(P, a)), evaluate(Q, a))


def test_conjugate_point():
    R = mixed_ring()
    for a in points(R):
        assert conjugate_point(R, a, 1) == a
    Rc = RingCtx.conventional(F9, 2)
    for a in points(Rc):
        assert all(conjugate_point(Rc, a, k) == a for k in F9.nonzero())
    assert conjugate_point(frob_ring(), (c,), c) == (c2,)
    with pytest.raises(ZeroConjugator):
        conjugate_point(R, (0, 0), 0)


def test_product_rule_golden():
    R = frob_ring()
    x = R.gen(0)
    assert product_rule_eval(x, x, (c,)) == 1 == evaluate(x * x, (c,))
    G = x - R.const(c)
    assert evaluate(G, (c,)) == 0
    assert product_rule_eval(x + 1, G, (c,)) == 0 == evaluate((x + 1) * G, (c,))
    assert product_rule_eval(R.one(), x + 3, (2,)) == evaluate(x + 3, (2,))


def test_product_rule_exhaustive_small():
    R = mixed_ring()
    rng = random.Random(4)
    for _ in range(40):
        P, Q = random_poly(R, rng), random_poly(R, rng)
        PQ = P * Q
        for a in points(R):
            assert evaluate(PQ, a) == product_rule_eval(P, Q, a)


def test_vanishing_field_equation_in_frobenius_ring():
    R = frob_ring()
    x = R.gen(0)
    assert set(evaluate_everywhere(x * x * x - x).values()) == {0}


def test_repr():
    R = RingCtx.diagonal(F4, (1, 0))
    x1, x2 = R.gens()
    assert repr(c * x1 * x2 + 1) == "t*x1*x2 + 1"
    assert repr(R.zero()) == "0"


# property-based ring laws

RINGS = [mixed_ring(), mixed_ring(F9, (2, 7)), RingCtx.diagonal(field_new(2, 3), (1, 2))]


@st.composite
def ring_and_polys(draw, k=3):
    R = draw(st.sampled_from(RINGS))
    word = st.lists(st.integers(0, R.n - 1), max_size=3).map(tuple)
    term = st.tuples(word, st.integers(1, R.ctx.q - 1))
    polys = [R.poly(draw(st.lists(term, max_size=4))) for _ in range(k)]
    return R, polys


@settings(max_examples=150, deadline=None)
@given(ring_and_polys())
def test_ring_axioms_property(data):
    R, (P, Q, S) = data
    assert (P * Q) * S == P * (Q * S)
    assert P * (Q + S) == P * Q + P * S
    assert (P + Q) * S == P * S + Q * S
    if not P.is_zero() and not Q.is_zero():
        assert (P * Q).degree == P.degree + Q.degree


@settings(max_examples=80, deadline=None)
@given(ring_and_polys(2), st.data())
def test_product_rule_property(data, draw):
    R, (P, Q) = data
    a = tuple(draw.draw(st.integers(0, R.ctx.q - 1)) for _ in range(R.n))
    assert evaluate(P * Q, a) == product_rule_eval(P, Q, a)
