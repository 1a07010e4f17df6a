"""Free multivariate skew polynomial rings F_q[x; sigma, delta].

A polynomial is a finite map from words over {0, ..., n-1} (variable
indices, ``()`` being the monomial 1) to nonzero left coefficients.  Scalars
move past variables by the commutation rule

    x_i a = sum_j sigma_ij(a) x_j + delta_i(a).
"""

from __future__ import annotations

import math
from collections import defaultdict

from . import matfq as M
from .errors import DimensionMismatch, RingMismatch, ZeroConjugator
from .gf import FieldCtx
from .morphism import (
    DiagonalSpec,
    MatrixMorphism,
    VecDerivation,
    derivation_from_primitive_image,
    diagonal_morphism,
    identity_morphism,
    morphism_from_primitive_image,
    zero_derivation,
)

ZERO_DEGREE = -math.inf  # deg(0); absorbing under addition of degrees

_PUSH_CACHE_LIMIT = 500_000


class RingCtx:
    """The pair (sigma, delta) defining the product, with delta a sigma-derivation."""

    __slots__ = ("ctx", "n", "sigma", "delta", "_push_cache", "_hash")

    def __init__(self, sigma: MatrixMorphism, delta: VecDerivation | None = None):
        if delta is None:
            delta = zero_derivation(sigma)
        if delta.sigma != sigma:
            raise RingMismatch("delta is not a derivation for this sigma")
        if not delta.tau.is_identity():
            raise RingMismatch("delta must be a sigma-derivation (tau = Id)")
        self.ctx, self.n, self.sigma, self.delta = sigma.ctx, sigma.n, sigma, delta
        self._push_cache = {}
        self._hash = hash((sigma, delta))

    @classmethod
    def conventional(cls, ctx: FieldCtx, n: int) -> "RingCtx":
        """F_q[x] itself: sigma = Id, delta = 0."""
        return cls(identity_morphism(ctx, n))

    @classmethod
    def diagonal(cls, ctx: FieldCtx, exps) -> "RingCtx":
        """F_q[x; sigma_1, ..., sigma_n] with sigma_i the Frobenius power p^{exps[i]}."""
        exps = exps.exps if isinstance(exps, DiagonalSpec) else tuple(exps)
        return cls(diagonal_morphism(ctx, len(exps), exps))

    @classmethod
    def from_primitive(cls, ctx: FieldCtx, n: int, S, d0=None) -> "RingCtx":
        sigma = morphism_from_primitive_image(ctx, n, S)
        if d0 is None or not any(d0):
            return cls(sigma)
        return cls(sigma, derivation_from_primitive_image(sigma, None, d0))

    def __eq__(self, other):
        return (isinstance(other, RingCtx) and self._hash == other._hash
                and self.sigma == other.sigma and self.delta == other.delta)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (f"RingCtx(F_{self.ctx.q}, n={self.n}, sigma(c)={self.sigma.at_primitive}, "
                f"delta(c)={self.delta.at_primitive})")

    # constructors for elements

    def poly(self, terms=None) -> "SkewPoly":
        """Build a polynomial from {word: coeff} (or an iterable of pairs)."""
        if terms is None:
            terms = {}
        items = terms.items() if isinstance(terms, dict) else terms
        add = self.ctx.add
        out = {}
        for word, coef in items:
            word = tuple(word)
            for i in word:
                if not (0 <= i < self.n):
                    raise DimensionMismatch(f"variable index {i} out of range for n={self.n}")
            self.ctx.check(coef)
            out[word] = add(out.get(word, 0), coef)
        return SkewPoly(self, out)

    def zero(self) -> "SkewPoly":
        return SkewPoly(self, {})

    def one(self) -> "SkewPoly":
        return self.const(1)

    def const(self, a: int) -> "SkewPoly":
        return SkewPoly(self, {(): a})

    def gen(self, i: int) -> "SkewPoly":
        """The variable x_{i+1} (0-based index)."""
        return self.poly({(i,): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, word, coef: int = 1) -> "SkewPoly":
        return self.poly({tuple(word): coef})

    # the commutation kernel

    def push(self, word: tuple, a: int) -> dict:
        """Expand the product word * a as {word': coeff}, all words no longer than word."""
        if a == 0:
            return {}
        if not word:
            return {(): a}
        key = (word, a)
        cache = self._push_cache
        hit = cache.get(key)
        if hit is not None:
            return hit
        F = self.ctx
        add = F.add
        head, i = word[:-1], word[-1]
        out = {}
        for j, s in enumerate(self.sigma.table[a][i]):
            if s:
                tail = (j,)
                for u, v in self.push(head, s).items():
                    k = u + tail
                    out[k] = add(out.get(k, 0), v)
        d = self.delta.table[a][i]
        if d:
            for u, v in self.push(head, d).items():
                out[u] = add(out.get(u, 0), v)
        out = {k: v for k, v in out.items() if v}
        if len(cache) > _PUSH_CACHE_LIMIT:
            cache.clear()
        cache[key] = out
        return out


class SkewPoly:
    """An element of a free skew polynomial ring; treat as immutable."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingCtx, terms: dict):
        self.ring = ring
        self.terms = {w: c for w, c in terms.items() if c}

    @property
    def degree(self):
        if not self.terms:
            return ZERO_DEGREE
        return max(len(w) for w in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> int:
        return self.terms.get((), 0)

    def coeff(self, word) -> int:
        return self.terms.get(tuple(word), 0)

    def _lift(self, other):
        if isinstance(other, int):
            return self.ring.const(self.ring.ctx.check(other))
        return other

    def __add__(self, other):
        return poly_add(self, self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return poly_add(self, -self._lift(other))

    def __neg__(self):
        neg = self.ring.ctx.neg
        return SkewPoly(self.ring, {w: neg(c) for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.ring.const(self.ring.ctx.check(other))
        return poly_mul(self, other)

    def __rmul__(self, a):
        if isinstance(a, int):
            return scalar_mul_left(a, self)
        return NotImplemented

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def sorted_terms(self) -> list:
        """Terms in degree-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]), reverse=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        F = self.ring.ctx
        parts = []
        for w, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" for i in w)
            cs = F.element_str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}" if "+" in cs else f"{cs}*{mono}")
        return " + ".join(parts)


def _same_ring(F: SkewPoly, G: SkewPoly):
    if F.ring is not G.ring and F.ring != G.ring:
        raise RingMismatch("polynomials belong to different rings")


def poly_add(F: SkewPoly, G: SkewPoly) -> SkewPoly:
    _same_ring(F, G)
    add = F.ring.ctx.add
    out = dict(F.terms)
    for w, c in G.terms.items():
        out[w] = add(out.get(w, 0), c)
    return SkewPoly(F.ring, out)


def scalar_mul_left(a: int, F: SkewPoly) -> SkewPoly:
    mul = F.ring.ctx.mul
    return SkewPoly(F.ring, {w: mul(a, c) for w, c in F.terms.items()})


def poly_mul(F: SkewPoly, G: SkewPoly) -> SkewPoly:
    """Product in the ring: each right coefficient is pushed leftward through the
    left monomial, then the right monomial is appended."""
    _same_ring(F, G)
    ring = F.ring
    add, mul = ring.ctx.add, ring.ctx.mul
    push = ring.push
    out = {}
    for m, f in F.terms.items():
        for m2, g in G.terms.items():
            for u, v in push(m, g).items():
                k = u + m2
                out[k] = add(out.get(k, 0), mul(f, v))
    return SkewPoly(ring, out)


def _check_point(ring: RingCtx, a):
    a = tuple(a)
    if len(a) != ring.n:
        raise DimensionMismatch(f"point must have {ring.n} coordinates")
    for x in a:
        ring.ctx.check(x)
    return a


def divide_linear(F: SkewPoly, a) -> tuple[list, int]:
    """Right division F = sum_i G_i (x_i - a_i) + b.

    Each word m' x_j is rewritten as m'(x_j - a_j) + m' a_j, highest degree
    first; m' a_j only involves words shorter than m' x_j, so this terminates.
    """
    ring = F.ring
    a = _check_point(ring, a)
    fld = ring.ctx
    add, mul = fld.add, fld.mul
    G = [defaultdict(int) for _ in range(ring.n)]
    work = dict(F.terms)
    top = max((len(w) for w in work), default=0)
    for d in range(top, 0, -1):
        for w in [w for w in work if len(w) == d]:
            coef = work.pop(w)
            if not coef:
                continue
            head, j = w[:-1], w[-1]
            G[j][head] = add(G[j][head], coef)
            for u, v in ring.push(head, a[j]).items():
                work[u] = add(work.get(u, 0), mul(coef, v))
    b = work.get((), 0)
    return [SkewPoly(ring, dict(g)) for g in G], b


def evaluate(F: SkewPoly, a) -> int:
    """(sigma, delta)-evaluation: the remainder b of divide_linear(F, a)."""
    ring = F.ring
    a = _check_point(ring, a)
    return _evaluator(ring, a)(F)


def _evaluator(ring: RingCtx, a):
    fld = ring.ctx
    add, mul = fld.add, fld.mul
    push = ring.push
    memo = {(): 1}

    def word_value(w):
        val = memo.get(w)
        if val is None:
            # E_a(m' x_j) = E_a(m' a_j)
            val = 0
            for u, v in push(w[:-1], a[w[-1]]).items():
                val = add(val, mul(v, word_value(u)))
            memo[w] = val
        return val

    def run(F):
        total = 0
        for w, c in F.terms.items():
            total = add(total, mul(c, word_value(w)))
        return total

    return run


def points(ring: RingCtx):
    """Iterate over all of F_q^n."""
    from itertools import product
    return product(range(ring.ctx.q), repeat=ring.n)


def evaluate_everywhere(F: SkewPoly) -> dict:
    return {pt: _evaluator(F.ring, pt)(F) for pt in points(F.ring)}


def conjugate_point(ring: RingCtx, a, c: int) -> tuple:
    """sigma(c) a c^{-1} + delta(c) c^{-1}."""
    a = _check_point(ring, a)
    if c == 0:
        raise ZeroConjugator("conjugator must be nonzero")
    fld = ring.ctx
    cinv = fld.inv(c)
    v = M.vec_add(fld, M.mat_vec(fld, ring.sigma(c), a), ring.delta(c))
    return M.vec_scale(fld, v, cinv)


def product_rule_eval(F: SkewPoly, G: SkewPoly, a) -> int:
    """(FG)(a) via F(b) G(a), b the conjugate of a by G(a); 0 when G(a) = 0."""
    _same_ring(F, G)
    c = evaluate(G, a)
    if c == 0:
        return 0
    b = conjugate_point(F.ring, a, c)
    return F.ring.ctx.mul(evaluate(F, b), c)
