"""Matrix morphisms, derivations, inner vectors and diagonalization."""

import itertools
import random

import pytest

from skewring import matfq as M
from skewring.errors import (
    AdditivityViolation,
    ExponentOutOfRange,
    LeibnizViolation,
    MultiplicativityViolation,
    NonCommutingPair,
    NotMultiplicativeOrder,
    SkewRingError,
)
from skewring.gf import field_new
from skewring.morphism import (
    DiagonalSpec,
    MatrixMorphism,
    VecDerivation,
    commuting_check,
    conjugate_morphism,
    derivation_from_primitive_image,
    diagonal_morphism,
    diagonalize_morphism,
    frobenius_exponent,
    identity_morphism,
    inner_sigma_derivation,
    inner_vector,
    morphism_from_primitive_image,
    transform_derivation,
    zero_derivation,
)
from skewring.sampling import random_invertible

F2 = field_new(2)
F4 = field_new(2, 2)
F8 = field_new(2, 3)
F9 = field_new(3, 2)
F16 = field_new(2, 4)


# brute-force oracles

def is_morphism_table(F, n, table):
    if table[0] != M.zeros(n) or table[1] != M.identity(n):
        return False
    for a in F.elements():
        for b in F.elements():
            if table[F.add(a, b)] != M.mat_add(F, table[a], table[b]):
                return False
            if table[F.mul(a, b)] != M.mat_mul(F, table[a], table[b]):
                return False
    return True


def is_derivation_table(sigma, tau, table):
    F = sigma.ctx
    for a in F.elements():
        for b in F.elements():
            if table[F.add(a, b)] != M.vec_add(F, table[a], table[b]):
                return False
            rhs = M.vec_add(F, M.mat_vec(F, sigma(a), table[b]), M.mat_vec(F, tau(b), table[a]))
            if table[F.mul(a, b)] != rhs:
                return False
    return True


def all_morphisms(F, n):
    """Every valid morphism, found by trying all n x n matrices as sigma(c)."""
    out = []
    for entries in itertools.product(range(F.q), repeat=n * n):
        S = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        try:
            out.append(morphism_from_primitive_image(F, n, S))
        except SkewRingError:
            pass
    return out


def test_primitive_image_examples():
    assert morphism_from_primitive_image(F2, 2, M.identity(2)) == identity_morphism(F2, 2)
    with pytest.raises(AdditivityViolation) as ei:
        morphism_from_primitive_image(F4, 1, ((1,),))
    assert set(ei.value.witness) == {"a", "b"}
    c = F4.c
    frob = morphism_from_primitive_image(F4, 1, ((F4.mul(c, c),),))
    assert all(frob(a) == ((F4.mul(a, a),),) for a in F4.elements())
    assert morphism_from_primitive_image(F4, 1, ((c,),)) == identity_morphism(F4, 1)
    with pytest.raises(NotMultiplicativeOrder):
        morphism_from_primitive_image(F4, 1, ((0,),))
    # over F_2 the primitive element is 1, so only I is admissible
    with pytest.raises(NotMultiplicativeOrder):
        morphism_from_primitive_image(F2, 2, ((1, 1), (0, 1)))


@pytest.mark.parametrize("F,n", [(F2, 2), (F4, 1), (F4, 2), (F9, 1), (field_new(3), 2)])
def test_validator_matches_brute_force(F, n):
    rng = random.Random(F.q * 10 + n)
    for _ in range(60):
        S = tuple(tuple(rng.randrange(F.q) for _ in range(n)) for _ in range(n))
        table = [M.zeros(n)] + [M.mat_pow(F, S, F.log_table[a]) for a in F.nonzero()]
        expected = is_morphism_table(F, n, table)
        try:
            MatrixMorphism(F, n, table)
            got = True
        except (AdditivityViolation, MultiplicativityViolation):
            got = False
        assert got == expected
    # tables that are multiplicative but tampered at one entry
    sigma = diagonal_morphism(F, n, [F.m - 1] * n)
    for a in range(2, F.q):
        table = list(sigma.table)
        table[a] = M.mat_add(F, table[a], M.identity(n))
        with pytest.raises((AdditivityViolation, MultiplicativityViolation)):
            MatrixMorphism(F, n, table)


@pytest.mark.parametrize("F,n", [(F4, 1), (F4, 2), (F8, 1), (F9, 1)])
def test_derivation_validator_matches_brute_force(F, n):
    rng = random.Random(n)
    morphs = [diagonal_morphism(F, n, e) for e in itertools.product(range(F.m), repeat=n)]
    for sigma in morphs:
        for tau in morphs:
            for _ in range(6):
                d0 = tuple(rng.randrange(F.q) for _ in range(n))
                S, T = sigma.at_primitive, tau.at_primitive
                table = [(0,) * n] * F.q
                table = list(table)
                v, Sd = d0, d0
                for j in range(F.q - 1):
                    table[F.exp_table[j + 1]] = v
                    Sd = M.mat_vec(F, S, Sd)
                    v = M.vec_add(F, Sd, M.mat_vec(F, T, v))
                expected = is_derivation_table(sigma, tau, table)
                try:
                    VecDerivation(sigma, tau, table)
                    got = True
                except (AdditivityViolation, LeibnizViolation):
                    got = False
                assert got == expected
                # random tampering is always caught
                bad = list(table)
                k = rng.randrange(2, F.q)
                bad[k] = M.vec_add(F, bad[k], (1,) * n)
                with pytest.raises((AdditivityViolation, LeibnizViolation)):
                    VecDerivation(sigma, tau, bad)


def test_morphisms_of_prime_power_fields_are_frobenius():
    for F in (F2, F4, F8, F9):
        found = {m.at_primitive for m in all_morphisms(F, 1)}
        assert found == {((F.frobenius(F.c, j),),) for j in range(F.m)}


def test_diagonal_morphism():
    assert diagonal_morphism(F9, 3, (0, 0, 0)) == identity_morphism(F9, 3)
    s = diagonal_morphism(F16, 2, DiagonalSpec((2, 2)))
    assert all(s(a) == M.scalar(2, F16.pow(a, 4)) for a in F16.elements())
    s = diagonal_morphism(F4, 2, (1, 0))
    assert all(s(a) == M.diag((F4.mul(a, a), a)) for a in F4.elements())
    with pytest.raises(ExponentOutOfRange):
        diagonal_morphism(F4, 1, (2,))


def test_derivation_examples():
    c = F4.c
    frob = diagonal_morphism(F4, 1, (1,))
    assert derivation_from_primitive_image(frob, None, (0,)).is_zero()
    d = derivation_from_primitive_image(frob, None, (c,))
    for a in F4.elements():
        assert d(a) == (F4.mul(c, F4.sub(a, F4.mul(a, a))),)
    assert d(c) == (c,)
    with pytest.raises(LeibnizViolation):
        derivation_from_primitive_image(frob, frob, (1,))
    with pytest.raises(LeibnizViolation):
        derivation_from_primitive_image(identity_morphism(F9, 1), None, (1,))


def test_commuting_check():
    sigma = conjugate_morphism(diagonal_morphism(F4, 2, (1, 0)), ((1, 1), (0, 1)))
    tau = diagonal_morphism(F4, 2, (1, 0))
    assert commuting_check(sigma, sigma)
    assert commuting_check(tau, diagonal_morphism(F4, 2, (0, 1)))
    assert not commuting_check(sigma, tau)
    with pytest.raises(NonCommutingPair):
        derivation_from_primitive_image(sigma, tau, (1, 0))


def test_commuting_check_is_global():
    morphs = all_morphisms(F4, 2)
    assert len(morphs) > 10
    for s in morphs:
        for t in morphs:
            full = all(M.mat_mul(F4, s(a), t(b)) == M.mat_mul(F4, t(b), s(a))
                       for a in F4.elements() for b in F4.elements())
            assert commuting_check(s, t) == full


def test_inner_vector_examples():
    c = F4.c
    frob = diagonal_morphism(F4, 1, (1,))
    assert inner_vector(zero_derivation(frob)) == (0,)
    d = derivation_from_primitive_image(frob, None, (c,))
    assert inner_vector(d) == (c,)
    frob9 = diagonal_morphism(F9, 1, (1,))
    c9 = F9.c
    table = [(F9.mul(F9.sub(a, F9.pow(a, 3)), c9),) for a in F9.elements()]
    d9 = VecDerivation(frob9, None, table)
    lam = inner_vector(d9)
    for a in F9.elements():
        diff = F9.sub(a, F9.pow(a, 3))
        assert F9.mul(diff, lam[0]) == F9.mul(diff, c9)


def test_inner_sigma_derivation():
    c = F4.c
    sigma = diagonal_morphism(F4, 2, (1, 0))
    assert inner_sigma_derivation(sigma, (0, 0)).is_zero()
    assert inner_sigma_derivation(identity_morphism(F9, 2), (3, 7)).is_zero()
    d = inner_sigma_derivation(sigma, (c, 1))
    c2 = F4.mul(c, c)
    # (c*c - c^2*c, 1*c - c*1) evaluated by hand: (c^2 - 1, 0) = (c, 0)
    assert d(c) == (F4.sub(F4.mul(c, c), F4.mul(c2, c)), 0) == (c, 0)


def test_every_derivation_is_inner_small():
    for F in (F4, F9):
        for n in (1, 2):
            morphs = [diagonal_morphism(F, n, e) for e in itertools.product(range(F.m), repeat=n)]
            for sigma in morphs:
                for tau in morphs:
                    for d0 in itertools.product(range(F.q), repeat=n):
                        try:
                            d = derivation_from_primitive_image(sigma, tau, d0)
                        except (LeibnizViolation, AdditivityViolation):
                            continue
                        lam = inner_vector(d)
                        for a in F.elements():
                            assert d(a) == M.mat_vec(F, M.mat_sub(F, tau(a), sigma(a)), lam)


def test_derivation_power_formula_and_binomial_identity():
    rng = random.Random(2)
    for F in (F4, F8, F9):
        n = 2
        for _ in range(5):
            A = random_invertible(F, n, rng)
            e1 = [rng.randrange(F.m) for _ in range(n)]
            e2 = [rng.randrange(F.m) for _ in range(n)]
            sigma = conjugate_morphism(diagonal_morphism(F, n, e1), A)
            tau = conjugate_morphism(diagonal_morphism(F, n, e2), A)
            lam = tuple(rng.randrange(F.q) for _ in range(n))
            table = [M.mat_vec(F, M.mat_sub(F, tau(a), sigma(a)), lam) for a in F.elements()]
            d = VecDerivation(sigma, tau, table)
            for a in F.elements():
                for j in range(F.q - 1):
                    acc = M.zeros(n)
                    for i in range(j + 1):
                        acc = M.mat_add(F, acc, M.mat_mul(F, M.mat_pow(F, sigma(a), i),
                                                          M.mat_pow(F, tau(a), j - i)))
                    assert d(F.pow(a, j + 1)) == M.mat_vec(F, acc, d(a))
            S, T = sigma.at_primitive, tau.at_primitive
            lhs = M.mat_pow(F, M.mat_sub(F, T, S), F.q - 1)
            rhs = M.zeros(n)
            for i in range(F.q):
                term = M.mat_mul(F, M.mat_pow(F, T, i), M.mat_pow(F, S, F.q - 1 - i))
                rhs = M.mat_add(F, rhs, term)
            assert lhs == rhs


def test_diagonalize_examples():
    c = F4.c
    c2 = F4.mul(c, c)
    sigma = diagonal_morphism(F9, 3, (1, 0, 1))
    A, spec = diagonalize_morphism(sigma)
    assert spec == DiagonalSpec((0, 1, 1))
    assert sorted(map(tuple, A)) == sorted(map(tuple, M.identity(3)))
    sigma = morphism_from_primitive_image(F4, 2, ((c, 1), (0, c2)))
    A, spec = diagonalize_morphism(sigma)
    assert spec.exps == (0, 1)
    D = lambda a: M.diag([F4.frobenius(a, j) for j in spec.exps])
    assert all(M.mat_mul(F4, M.mat_mul(F4, A, D(a)), M.mat_inv(F4, A)) == sigma(a) for a in F4.elements())
    A, spec = diagonalize_morphism(diagonal_morphism(F16, 2, (2, 2)))
    assert A == M.identity(2) and spec.exps == (2, 2)


def test_diagonalize_random_conjugates():
    rng = random.Random(4)
    for F in (F4, F8, F9, F16):
        for n in (1, 2, 3):
            for _ in range(4):
                exps = tuple(rng.randrange(F.m) for _ in range(n))
                sigma = conjugate_morphism(diagonal_morphism(F, n, exps), random_invertible(F, n, rng))
                A, spec = diagonalize_morphism(sigma)
                assert spec.exps == tuple(sorted(exps))
                assert diagonalize_morphism(diagonal_morphism(F, n, exps))[1].exps == tuple(sorted(exps))


def test_example_non_similar_pair():
    sigma = diagonal_morphism(F16, 2, (2, 2))
    tau = identity_morphism(F16, 2)
    # same image set, since a -> a^4 is a bijection
    assert {sigma(a) for a in F16.elements()} == {tau(a) for a in F16.elements()}
    assert diagonalize_morphism(sigma)[1].exps == (2, 2)
    assert diagonalize_morphism(tau)[1].exps == (0, 0)
    # sigma(a) = a^4 I is central, so A tau(a) A^-1 = a I never equals it for a outside F_4
    fixed_sigma = [a for a in F16.elements() if sigma(a) == M.scalar(2, a)]
    assert len(fixed_sigma) == 4


def test_frobenius_exponent():
    assert frobenius_exponent(F2, 1) == 0
    assert frobenius_exponent(F8, F8.frobenius(F8.c, 2)) == 2
    assert frobenius_exponent(F8, F8.pow(F8.c, 3)) is None
    assert frobenius_exponent(F8, 0) is None


def test_transform_derivation():
    c = F4.c
    tau = diagonal_morphism(F4, 2, (1, 0))
    A = ((1, 1), (0, 1))
    sigma = conjugate_morphism(tau, A)
    d_tau = inner_sigma_derivation(tau, (c, 1))
    d_sigma = transform_derivation(d_tau, A, sigma=sigma)
    assert all(d_sigma(a) == M.mat_vec(F4, A, d_tau(a)) for a in F4.elements())
