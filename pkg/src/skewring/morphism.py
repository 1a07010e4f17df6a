"""Ring morphisms F_q -> F_q^{n x n} and (sigma, tau)-derivations F_q -> F_q^n.

Both are stored as full value tables indexed by the integer encoding of the
argument, and both are fully validated when constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import matfq as M
from .errors import (
    AdditivityViolation,
    DimensionMismatch,
    ExponentOutOfRange,
    FieldMismatch,
    LeibnizViolation,
    MultiplicativityViolation,
    NonCommutingPair,
    NotFrobeniusEigenvalue,
    NotMultiplicativeOrder,
    VerificationFailed,
)
from .gf import FieldCtx


@dataclass(frozen=True)
class DiagonalSpec:
    """Frobenius exponents (j_1, ..., j_n) of a diagonal morphism a -> diag(a^{p^j_i})."""

    exps: tuple

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(int(j) for j in self.exps))

    def sorted(self) -> "DiagonalSpec":
        return DiagonalSpec(tuple(sorted(self.exps)))


class MatrixMorphism:
    """A validated ring morphism sigma: F_q -> F_q^{n x n}."""

    __slots__ = ("ctx", "n", "table", "_hash")

    def __init__(self, ctx: FieldCtx, n: int, table):
        table = tuple(M.as_mat(t) for t in table)
        if len(table) != ctx.q:
            raise DimensionMismatch(f"morphism table needs {ctx.q} entries, got {len(table)}")
        for S in table:
            if len(S) != n or any(len(r) != n for r in S):
                raise DimensionMismatch(f"morphism values must be {n}x{n}")
        _validate_morphism(ctx, n, table)
        self.ctx, self.n, self.table = ctx, n, table
        self._hash = hash((ctx, n, table))

    def __call__(self, a: int):
        return self.table[a]

    @property
    def at_primitive(self):
        return self.table[self.ctx.c]

    def is_identity(self) -> bool:
        return self == identity_morphism(self.ctx, self.n)

    def __eq__(self, other):
        return (isinstance(other, MatrixMorphism) and self._hash == other._hash
                and self.ctx == other.ctx and self.n == other.n and self.table == other.table)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"MatrixMorphism(F_{self.ctx.q}, n={self.n}, sigma(c)={self.at_primitive})"


def _basis_expansion_ok(F, table, add, scale):
    """table[a] == sum_i digit_i(a) * table[p^i] for every a, i.e. the map is F_p-linear."""
    p = F.p
    basis = [table[p**i] for i in range(F.m)]
    for a in F.elements():
        acc = None
        k = a
        for b in basis:
            d = k % p
            k //= p
            term = scale(b, d)
            acc = term if acc is None else add(acc, term)
        if acc != table[a]:
            return False
    return True


def _morphism_ok(F, n, table):
    """Complete check of the morphism laws.

    Additive maps of F_p-spaces are exactly the F_p-linear ones, and once
    sigma is additive both sides of sigma(ab) = sigma(a) sigma(b) are additive
    in b, so checking b over the F_p-basis {p^i} suffices.
    """
    if table[0] != M.zeros(n) or table[1] != M.identity(n):
        return False
    if not _basis_expansion_ok(F, table, lambda A, B: M.mat_add(F, A, B),
                               lambda A, d: M.mat_scale(F, d, A)):
        return False
    for a in range(2, F.q):
        for i in range(F.m):
            b = F.p**i
            if table[F.mul(a, b)] != M.mat_mul(F, table[a], table[b]):
                return False
    return True


def _validate_morphism(ctx, n, table):
    if _morphism_ok(ctx, n, table):
        return
    # slow exhaustive scan, only to report a violating pair
    F = ctx
    I = M.identity(n)
    Z = M.zeros(n)
    if table[0] != Z:
        raise AdditivityViolation("sigma(0) != 0", witness={"a": 0, "b": 0})
    if table[1] != I:
        raise MultiplicativityViolation("sigma(1) != I", witness={"a": 1, "b": 1})
    q = F.q
    add, mul = F.add, F.mul
    for a in range(1, q):
        Sa = table[a]
        for b in range(a, q):
            if table[add(a, b)] != M.mat_add(F, Sa, table[b]):
                raise AdditivityViolation(
                    f"sigma({a}+{b}) != sigma({a}) + sigma({b})", witness={"a": a, "b": b})
    for a in range(2, q):
        Sa = table[a]
        for b in range(2, q):
            if table[mul(a, b)] != M.mat_mul(F, Sa, table[b]):
                raise MultiplicativityViolation(
                    f"sigma({a}*{b}) != sigma({a}) sigma({b})", witness={"a": a, "b": b})
    raise VerificationFailed("morphism check failed without a witness")  # pragma: no cover


@lru_cache(maxsize=None)
def identity_morphism(ctx: FieldCtx, n: int) -> MatrixMorphism:
    """Id(a) = a I, the morphism of the conventional polynomial ring."""
    return MatrixMorphism(ctx, n, [M.scalar(n, a) for a in ctx.elements()])


def morphism_from_primitive_image(ctx: FieldCtx, n: int, S) -> MatrixMorphism:
    """Extend sigma(c) = S to all of F_q by sigma(c^j) = S^j and validate."""
    S = M.as_mat(S)
    if len(S) != n or any(len(r) != n for r in S):
        raise DimensionMismatch(f"S must be {n}x{n}")
    for row in S:
        for x in row:
            ctx.check(x)
    if M.mat_pow(ctx, S, ctx.q - 1) != M.identity(n):
        raise NotMultiplicativeOrder("S^(q-1) != I", witness={"S": [list(r) for r in S]})
    table = [None] * ctx.q
    table[0] = M.zeros(n)
    P = M.identity(n)
    for j in range(ctx.q - 1):
        table[ctx.exp_table[j]] = P
        P = M.mat_mul(ctx, P, S)
    return MatrixMorphism(ctx, n, table)


def diagonal_morphism(ctx: FieldCtx, n: int, spec) -> MatrixMorphism:
    """sigma(a) = diag(a^{p^j_1}, ..., a^{p^j_n})."""
    exps = spec.exps if isinstance(spec, DiagonalSpec) else tuple(spec)
    if len(exps) != n:
        raise DimensionMismatch(f"need {n} exponents, got {len(exps)}")
    for j in exps:
        if not (0 <= j < ctx.m):
            raise ExponentOutOfRange(f"Frobenius exponent {j} not in [0, {ctx.m})",
                                     witness={"exponent": j, "m": ctx.m})
    return MatrixMorphism(ctx, n, [M.diag([ctx.frobenius(a, j) for j in exps])
                                   for a in ctx.elements()])


def conjugate_morphism(tau: MatrixMorphism, A) -> MatrixMorphism:
    """sigma(a) = A tau(a) A^{-1}."""
    F = tau.ctx
    Ainv = M.mat_inv(F, A)
    return MatrixMorphism(F, tau.n, [M.mat_mul(F, M.mat_mul(F, A, T), Ainv) for T in tau.table])


def commuting_check(sigma: MatrixMorphism, tau: MatrixMorphism) -> bool:
    """sigma(c) tau(c) == tau(c) sigma(c); equivalent to commuting everywhere."""
    _same_space(sigma, tau)
    F = sigma.ctx
    S, T = sigma.at_primitive, tau.at_primitive
    return M.mat_mul(F, S, T) == M.mat_mul(F, T, S)


def _same_space(sigma, tau):
    if sigma.ctx != tau.ctx:
        raise FieldMismatch("morphisms live over different fields")
    if sigma.n != tau.n:
        raise DimensionMismatch("morphisms have different dimensions")


def frobenius_exponent(ctx: FieldCtx, d: int):
    """The j in [0, m) with d = c^{p^j}, or None."""
    if d == 0:
        return None
    k = ctx.dlog(d)
    for j in range(ctx.m):
        if pow(ctx.p, j, ctx.q - 1) == k % (ctx.q - 1) or (ctx.q == 2 and j == 0):
            return j
    return None


def diagonalize_morphism(sigma: MatrixMorphism):
    """Return (A, spec) with sigma(a) = A diag(a^{p^j_i}) A^{-1}, spec sorted ascending."""
    F, n = sigma.ctx, sigma.n
    A, d = M.eigen_diagonalize(F, sigma.at_primitive)
    exps = []
    for di in d:
        j = frobenius_exponent(F, di)
        if j is None:
            raise NotFrobeniusEigenvalue(f"eigenvalue {di} is not c^(p^j)", witness={"eigenvalue": di})
        exps.append(j)
    order = sorted(range(n), key=lambda i: exps[i])
    A = M.transpose(tuple(M.transpose(A)[i] for i in order))
    spec = DiagonalSpec(tuple(exps[i] for i in order))
    Ainv = M.mat_inv(F, A)
    for a in F.elements():
        D = M.diag([F.frobenius(a, j) for j in spec.exps])
        if M.mat_mul(F, M.mat_mul(F, A, D), Ainv) != sigma(a):
            raise VerificationFailed("diagonal reconstruction failed", witness={"a": a})
    return A, spec


class VecDerivation:
    """A validated (sigma, tau)-derivation delta: F_q -> F_q^n.

    delta(ab) = sigma(a) delta(b) + tau(b) delta(a); tau = Id gives a
    sigma-derivation.
    """

    __slots__ = ("ctx", "n", "sigma", "tau", "table", "_hash")

    def __init__(self, sigma: MatrixMorphism, tau: MatrixMorphism | None, table):
        if tau is None:
            tau = identity_morphism(sigma.ctx, sigma.n)
        _same_space(sigma, tau)
        ctx, n = sigma.ctx, sigma.n
        table = tuple(tuple(v) for v in table)
        if len(table) != ctx.q or any(len(v) != n for v in table):
            raise DimensionMismatch(f"derivation table must hold {ctx.q} vectors of length {n}")
        _validate_derivation(sigma, tau, table)
        self.ctx, self.n, self.sigma, self.tau, self.table = ctx, n, sigma, tau, table
        self._hash = hash((sigma, tau, table))

    def __call__(self, a: int):
        return self.table[a]

    @property
    def at_primitive(self):
        return self.table[self.ctx.c]

    def is_zero(self) -> bool:
        return not any(any(v) for v in self.table)

    def __eq__(self, other):
        return (isinstance(other, VecDerivation) and self._hash == other._hash
                and self.table == other.table and self.sigma == other.sigma and self.tau == other.tau)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"VecDerivation(F_{self.ctx.q}, n={self.n}, delta(c)={self.at_primitive})"


def _derivation_ok(sigma, tau, table):
    """Complete check of the derivation laws (same basis reduction as for morphisms)."""
    F = sigma.ctx
    zero = (0,) * sigma.n
    if table[0] != zero or table[1] != zero:
        return False
    if not _basis_expansion_ok(F, table, lambda u, v: M.vec_add(F, u, v),
                               lambda v, d: M.vec_scale(F, v, d)):
        return False
    mv, va = M.mat_vec, M.vec_add
    for a in range(2, F.q):
        Sa, da = sigma.table[a], table[a]
        for i in range(F.m):
            b = F.p**i
            if table[F.mul(a, b)] != va(F, mv(F, Sa, table[b]), mv(F, tau.table[b], da)):
                return False
    return True


def _validate_derivation(sigma, tau, table):
    if _derivation_ok(sigma, tau, table):
        return
    # slow exhaustive scan, only to report a violating pair
    F = sigma.ctx
    q = F.q
    zero = (0,) * sigma.n
    if table[0] != zero:
        raise AdditivityViolation("delta(0) != 0", witness={"a": 0, "b": 0})
    if table[1] != zero:
        raise LeibnizViolation("delta(1) != 0", witness={"a": 1, "b": 1})
    add, mul = F.add, F.mul
    mv, va = M.mat_vec, M.vec_add
    for a in range(2, q):
        Sa, da = sigma.table[a], table[a]
        for b in range(2, q):
            rhs = va(F, mv(F, Sa, table[b]), mv(F, tau.table[b], da))
            if table[mul(a, b)] != rhs:
                raise LeibnizViolation(
                    f"delta({a}*{b}) != sigma({a})delta({b}) + tau({b})delta({a})",
                    witness={"a": a, "b": b})
    for a in range(1, q):
        da = table[a]
        for b in range(a, q):
            if table[add(a, b)] != va(F, da, table[b]):
                raise AdditivityViolation(f"delta({a}+{b}) != delta({a}) + delta({b})",
                                          witness={"a": a, "b": b})
    raise VerificationFailed("derivation check failed without a witness")  # pragma: no cover


def zero_derivation(sigma: MatrixMorphism, tau: MatrixMorphism | None = None) -> VecDerivation:
    return VecDerivation(sigma, tau, [(0,) * sigma.n] * sigma.ctx.q)


def derivation_from_primitive_image(sigma: MatrixMorphism, tau: MatrixMorphism | None, d0) -> VecDerivation:
    """Extend delta(c) = d0 by delta(c^{j+1}) = (sum_i S^i T^{j-i}) d0 and validate."""
    if tau is None:
        tau = identity_morphism(sigma.ctx, sigma.n)
    _same_space(sigma, tau)
    F, n = sigma.ctx, sigma.n
    d0 = tuple(d0)
    if len(d0) != n:
        raise DimensionMismatch(f"d0 must have length {n}")
    for x in d0:
        F.check(x)
    if not commuting_check(sigma, tau):
        raise NonCommutingPair("sigma(c) and tau(c) do not commute")
    S, T = sigma.at_primitive, tau.at_primitive
    # v_j = P_j d0 with P_j = S^j + T P_{j-1}
    table = [None] * F.q
    table[0] = (0,) * n
    v = d0
    Sj_d0 = d0
    for j in range(F.q - 1):
        table[F.exp_table[j + 1]] = v
        Sj_d0 = M.mat_vec(F, S, Sj_d0)
        v = M.vec_add(F, Sj_d0, M.mat_vec(F, T, v))
    return VecDerivation(sigma, tau, table)


def inner_vector(delta: VecDerivation):
    """lambda = (T - S)^{q-2} delta(c), checked against delta(a) = (tau(a) - sigma(a)) lambda."""
    F = delta.ctx
    S, T = delta.sigma.at_primitive, delta.tau.at_primitive
    lam = M.mat_vec(F, M.mat_pow(F, M.mat_sub(F, T, S), F.q - 2), delta.at_primitive)
    for a in F.elements():
        diff = M.mat_sub(F, delta.tau(a), delta.sigma(a))
        if M.mat_vec(F, diff, lam) != delta(a):
            raise VerificationFailed("delta is not the inner derivation of the computed vector",
                                     witness={"a": a, "lambda": list(lam)})
    return lam


def inner_sigma_derivation(sigma: MatrixMorphism, lam) -> VecDerivation:
    """delta(a) = lambda a - sigma(a) lambda."""
    F = sigma.ctx
    lam = tuple(lam)
    if len(lam) != sigma.n:
        raise DimensionMismatch(f"lambda must have length {sigma.n}")
    table = [M.vec_sub(F, M.vec_scale(F, lam, a), M.mat_vec(F, sigma(a), lam))
             for a in F.elements()]
    return VecDerivation(sigma, None, table)


def transform_derivation(delta: VecDerivation, A, sigma: MatrixMorphism | None = None,
                         tau: MatrixMorphism | None = None) -> VecDerivation:
    """a -> A delta(a), validated against the given (sigma, tau) (defaults: delta's own)."""
    F = delta.ctx
    table = [M.mat_vec(F, A, v) for v in delta.table]
    return VecDerivation(sigma or delta.sigma, tau or delta.tau, table)
