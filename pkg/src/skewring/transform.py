"""Changes of variables between skew polynomial rings.

* ``LinearTransform``  phi_A : F[x; sigma, d_sigma] -> F[x; tau, d_tau], x -> A x,
  valid when sigma(a) = A tau(a) A^{-1} and d_sigma(a) = A d_tau(a).
* ``TranslationTransform``  phi_lam : F[x; sigma, d] -> F[x; sigma, d'], x -> x + lam,
  valid when d(a) - d'(a) = lam a - sigma(a) lam.
* ``AffineTransform``  T = phi_lam o phi_A (phi_A applied first), passing through
  the intermediate ring F[x; tau, A^{-1} d_sigma].  On generators
  T(x) = A (x + lam).

Composition is written in application order: ``compose(t1, t2)`` applies t1
first.
"""

from __future__ import annotations

from . import matfq as M
from .errors import (
    ChainMismatch,
    DimensionMismatch,
    FieldMismatch,
    IncompatibleDerivations,
    IncompatibleMorphisms,
    NotAffine,
    RingMismatch,
    Singular,
    SingularLinearPart,
)
from .freering import RingCtx, SkewPoly, evaluate
from .morphism import MatrixMorphism, VecDerivation


def _check_pair(src: RingCtx, tgt: RingCtx):
    if src.ctx != tgt.ctx:
        raise FieldMismatch("rings are over different fields")
    if src.n != tgt.n:
        raise DimensionMismatch("rings have different numbers of variables")


def _invertible(F, A, n):
    A = M.as_mat(A)
    if len(A) != n or any(len(r) != n for r in A):
        raise DimensionMismatch(f"A must be {n}x{n}")
    try:
        return A, M.mat_inv(F, A)
    except Singular as e:
        raise SingularLinearPart("linear part is not invertible", witness=e.witness) from None


def _check_conjugate(src_sigma: MatrixMorphism, tgt_sigma: MatrixMorphism, A, Ainv):
    F = src_sigma.ctx
    for a in F.elements():
        if src_sigma(a) != M.mat_mul(F, M.mat_mul(F, A, tgt_sigma(a)), Ainv):
            raise IncompatibleMorphisms("sigma(a) != A tau(a) A^-1", witness={"a": a})


def _vec(F, v, n):
    v = tuple(v)
    if len(v) != n:
        raise DimensionMismatch(f"vector must have length {n}")
    for x in v:
        F.check(x)
    return v


class _Substitution:
    """Shared machinery: a ring morphism fixed by the images of the generators."""

    src: RingCtx
    tgt: RingCtx

    def _generator_images(self) -> list:
        raise NotImplementedError

    def _setup_cache(self):
        self._gens = self._generator_images()
        self._word_cache = {(): self.tgt.one()}

    def image_of_word(self, word: tuple) -> SkewPoly:
        cache = self._word_cache
        img = cache.get(word)
        if img is None:
            # image(x_i m) = image(x_i) image(m)
            img = self._gens[word[0]] * self.image_of_word(word[1:])
            cache[word] = img
        return img

    def apply(self, F: SkewPoly) -> SkewPoly:
        if F.ring != self.src:
            raise RingMismatch("polynomial is not in the source ring of the transform")
        out = self.tgt.zero()
        for w, c in F.terms.items():
            out = out + c * self.image_of_word(w)
        return out

    __call__ = apply

    def generator_images(self) -> list:
        return list(self._gens)


class LinearTransform(_Substitution):
    """phi_A, x -> A x."""

    def __init__(self, A, src: RingCtx, tgt: RingCtx):
        _check_pair(src, tgt)
        F, n = src.ctx, src.n
        A, Ainv = _invertible(F, A, n)
        _check_conjugate(src.sigma, tgt.sigma, A, Ainv)
        for a in F.elements():
            if src.delta(a) != M.mat_vec(F, A, tgt.delta(a)):
                raise IncompatibleDerivations("delta_sigma(a) != A delta_tau(a)", witness={"a": a})
        self.A, self.Ainv, self.src, self.tgt = A, Ainv, src, tgt
        self._setup_cache()

    def _generator_images(self):
        return [self.tgt.poly({(j,): aij for j, aij in enumerate(row)}) for row in self.A]

    def __repr__(self):
        return f"LinearTransform(A={self.A})"


class TranslationTransform(_Substitution):
    """phi_lam, x -> x + lam."""

    def __init__(self, lam, src: RingCtx, tgt: RingCtx):
        _check_pair(src, tgt)
        F, n = src.ctx, src.n
        lam = _vec(F, lam, n)
        if src.sigma != tgt.sigma:
            raise IncompatibleMorphisms("a translation needs equal morphisms on both sides")
        sigma = src.sigma
        for a in F.elements():
            inner = M.vec_sub(F, M.vec_scale(F, lam, a), M.mat_vec(F, sigma(a), lam))
            if M.vec_sub(F, src.delta(a), tgt.delta(a)) != inner:
                raise IncompatibleDerivations("delta(a) - delta'(a) != lam a - sigma(a) lam",
                                              witness={"a": a})
        self.lam, self.src, self.tgt = lam, src, tgt
        self._setup_cache()

    def _generator_images(self):
        return [self.tgt.poly({(i,): 1, (): li}) for i, li in enumerate(self.lam)]

    def __repr__(self):
        return f"TranslationTransform(lam={self.lam})"


def middle_ring(src: RingCtx, tgt: RingCtx, A, Ainv=None) -> RingCtx:
    """F[x; tau, A^{-1} delta_sigma], the ring between phi_A and phi_lam."""
    F = src.ctx
    if Ainv is None:
        Ainv = M.mat_inv(F, A)
    table = [M.mat_vec(F, Ainv, v) for v in src.delta.table]
    return RingCtx(tgt.sigma, VecDerivation(tgt.sigma, None, table))


class AffineTransform(_Substitution):
    """T_{A, lam} = phi_lam o phi_A from ``src`` to ``tgt``."""

    def __init__(self, A, lam, src: RingCtx, tgt: RingCtx):
        _check_pair(src, tgt)
        F, n = src.ctx, src.n
        A, Ainv = _invertible(F, A, n)
        lam = _vec(F, lam, n)
        _check_conjugate(src.sigma, tgt.sigma, A, Ainv)
        mid = middle_ring(src, tgt, A, Ainv)
        self.linear = LinearTransform(A, src, mid)
        self.translation = TranslationTransform(lam, mid, tgt)
        self.A, self.Ainv, self.lam = A, Ainv, lam
        self.src, self.mid, self.tgt = src, mid, tgt
        self._setup_cache()

    def _generator_images(self):
        F = self.src.ctx
        shift = M.mat_vec(F, self.A, self.lam)
        return [self.tgt.poly({**{(j,): aij for j, aij in enumerate(row)}, (): s})
                for row, s in zip(self.A, shift)]

    def point_map(self, a) -> tuple:
        """The source point at which T(F)(a) = F(point_map(a))."""
        F = self.src.ctx
        return M.mat_vec(F, self.A, M.vec_add(F, tuple(a), self.lam))

    def __repr__(self):
        return f"AffineTransform(A={self.A}, lam={self.lam})"


def phi_A_apply(t: LinearTransform, F: SkewPoly) -> SkewPoly:
    return t.apply(F)


def phi_lambda_apply(t: TranslationTransform, F: SkewPoly) -> SkewPoly:
    return t.apply(F)


def affine_apply(t: AffineTransform, F: SkewPoly) -> SkewPoly:
    return t.apply(F)


def affine_apply_legs(t: AffineTransform, F: SkewPoly) -> SkewPoly:
    """Same as affine_apply but through the two legs explicitly."""
    return t.translation.apply(t.linear.apply(F))


# --- ring construction helpers ---------------------------------------------

def pushforward_ring(src: RingCtx, A, lam) -> RingCtx:
    """The unique ring tgt for which T_{A, lam}: src -> tgt is defined."""
    F, n = src.ctx, src.n
    A, Ainv = _invertible(F, A, n)
    lam = _vec(F, lam, n)
    tau = MatrixMorphism(F, n, [M.mat_mul(F, M.mat_mul(F, Ainv, S), A) for S in src.sigma.table])
    table = []
    for a in F.elements():
        d_tau = M.mat_vec(F, Ainv, src.delta(a))
        inner = M.vec_sub(F, M.vec_scale(F, lam, a), M.mat_vec(F, tau(a), lam))
        table.append(M.vec_sub(F, d_tau, inner))
    return RingCtx(tau, VecDerivation(tau, None, table))


def pullback_ring(tgt: RingCtx, A, lam) -> RingCtx:
    """The unique ring src for which T_{A, lam}: src -> tgt is defined."""
    F, n = tgt.ctx, tgt.n
    A, Ainv = _invertible(F, A, n)
    lam = _vec(F, lam, n)
    tau = tgt.sigma
    sigma = MatrixMorphism(F, n, [M.mat_mul(F, M.mat_mul(F, A, T), Ainv) for T in tau.table])
    table = []
    for a in F.elements():
        inner = M.vec_sub(F, M.vec_scale(F, lam, a), M.mat_vec(F, tau(a), lam))
        table.append(M.mat_vec(F, A, M.vec_add(F, tgt.delta(a), inner)))
    return RingCtx(sigma, VecDerivation(sigma, None, table))


def identity_transform(ring: RingCtx) -> AffineTransform:
    return AffineTransform(M.identity(ring.n), (0,) * ring.n, ring, ring)


# --- composition -------------------------------------------------------------

def _chain(t1, t2):
    if t1.tgt != t2.src:
        raise ChainMismatch("target of the first transform is not the source of the second")


def linear_compose(t1: LinearTransform, t2: LinearTransform) -> LinearTransform:
    """Apply phi_A then phi_B; the result is phi_{AB}."""
    _chain(t1, t2)
    F = t1.src.ctx
    return LinearTransform(M.mat_mul(F, t1.A, t2.A), t1.src, t2.tgt)


def translation_compose(t1: TranslationTransform, t2: TranslationTransform) -> TranslationTransform:
    """Apply phi_lam then phi_lam'; the result is phi_{lam + lam'}."""
    _chain(t1, t2)
    return TranslationTransform(M.vec_add(t1.src.ctx, t1.lam, t2.lam), t1.src, t2.tgt)


def swap_order(t: AffineTransform) -> tuple[TranslationTransform, LinearTransform]:
    """Rewrite phi_lam o phi_A as phi_A o phi_{A lam}.

    Returns the legs in application order: the translation by A lam inside the
    source ring, then phi_A.
    """
    F = t.src.ctx
    mu = M.mat_vec(F, t.A, t.lam)
    table = [M.mat_vec(F, t.A, v) for v in t.tgt.delta.table]
    inner = RingCtx(t.src.sigma, VecDerivation(t.src.sigma, None, table))
    return TranslationTransform(mu, t.src, inner), LinearTransform(t.A, inner, t.tgt)


def affine_from_legs(first, second) -> AffineTransform:
    """Normalize a two-leg chain (either order) to a single T_{A, lam}."""
    _chain(first, second)
    F = first.src.ctx
    if isinstance(first, LinearTransform) and isinstance(second, TranslationTransform):
        return AffineTransform(first.A, second.lam, first.src, second.tgt)
    if isinstance(first, TranslationTransform) and isinstance(second, LinearTransform):
        # phi_A o phi_mu = phi_{A^{-1} mu} o phi_A
        return AffineTransform(second.A, M.mat_vec(F, second.Ainv, first.lam), first.src, second.tgt)
    raise TypeError("expected one linear and one translation leg")


def affine_compose(t1: AffineTransform, t2: AffineTransform) -> AffineTransform:
    """Apply t1 = T_{A, lam} then t2 = T_{B, mu}: the result is T_{AB, B^{-1} lam + mu}."""
    _chain(t1, t2)
    F = t1.src.ctx
    return AffineTransform(M.mat_mul(F, t1.A, t2.A),
                           M.vec_add(F, M.mat_vec(F, t2.Ainv, t1.lam), t2.lam),
                           t1.src, t2.tgt)


def affine_inverse(t: AffineTransform) -> AffineTransform:
    """T_{A, lam}^{-1} = T_{A^{-1}, -A lam}."""
    F = t.src.ctx
    return AffineTransform(t.Ainv, M.vec_neg(F, M.mat_vec(F, t.A, t.lam)), t.tgt, t.src)


# --- evaluation and reconstruction ------------------------------------------

def shifted_point(t, a) -> tuple:
    """Source point b with E^tgt_a(t(F)) = E^src_b(F)."""
    F = t.src.ctx
    a = tuple(a)
    if isinstance(t, LinearTransform):
        return M.mat_vec(F, t.A, a)
    if isinstance(t, TranslationTransform):
        return M.vec_add(F, a, t.lam)
    return t.point_map(a)


def eval_shift_check(t, F: SkewPoly, a) -> bool:
    """E^tgt_a(t(F)) == E^src_b(F) with b = A a, a + lam or A (a + lam)."""
    return evaluate(t.apply(F), a) == evaluate(F, shifted_point(t, a))


def reconstruct_affine(images, src: RingCtx, tgt: RingCtx) -> AffineTransform:
    """Recover T_{A, lam} from the proposed generator images T(x_i) = A x + A lam."""
    _check_pair(src, tgt)
    F, n = src.ctx, src.n
    images = list(images)
    if len(images) != n:
        raise DimensionMismatch(f"need {n} generator images")
    rows, shift = [], []
    for i, img in enumerate(images):
        if img.ring != tgt:
            raise RingMismatch(f"image {i} is not in the target ring")
        if img.degree > 1:
            raise NotAffine(f"image of x{i + 1} has degree {img.degree}",
                            witness={"index": i + 1, "degree": img.degree})
        rows.append(tuple(img.coeff((j,)) for j in range(n)))
        shift.append(img.constant_term())
    A, Ainv = _invertible(F, rows, n)
    lam = M.mat_vec(F, Ainv, tuple(shift))
    return AffineTransform(A, lam, src, tgt)
