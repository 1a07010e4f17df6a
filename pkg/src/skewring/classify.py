"""Canonical forms, isomorphism classes and vanishing polynomials."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import matfq as M
from .errors import DimensionMismatch, FieldMismatch, SearchSpaceTooLarge, VerificationFailed
from .freering import RingCtx, SkewPoly, _evaluator, points
from .morphism import DiagonalSpec, VecDerivation, diagonal_morphism, diagonalize_morphism, inner_vector
from .sampling import random_poly
from .transform import AffineTransform, affine_compose, affine_inverse, shifted_point

VANISHING_BOUND = 2**20


@dataclass(frozen=True)
class CanonicalForm:
    A: tuple
    lam: tuple
    spec: DiagonalSpec
    witness: AffineTransform

    @property
    def exps(self):
        return self.spec.exps

    def to_json(self) -> dict:
        return {"A": [list(r) for r in self.A], "lambda": list(self.lam), "exps": list(self.spec.exps)}


def canonical_form(ring: RingCtx, checks: int = 0, seed=None) -> CanonicalForm:
    """Reduce ring to F_q[x; sigma_1, ..., sigma_n] by an affine change of variables.

    With ``checks > 0`` the witness is additionally tested on that many random
    polynomials (multiplicativity, degree, evaluation shift).
    """
    F, n = ring.ctx, ring.n
    A, spec = diagonalize_morphism(ring.sigma)
    tau = diagonal_morphism(F, n, spec)
    Ainv = M.mat_inv(F, A)
    delta_tau = VecDerivation(tau, None, [M.mat_vec(F, Ainv, v) for v in ring.delta.table])
    lam = inner_vector(delta_tau)
    target = RingCtx(tau)
    witness = AffineTransform(A, lam, ring, target)
    cf = CanonicalForm(witness.A, witness.lam, spec, witness)
    if checks:
        rng = random.Random(seed)
        for _ in range(checks):
            P, Q = random_poly(ring, rng), random_poly(ring, rng)
            if not witness_property_check(witness, P, Q, rng):
                raise VerificationFailed("canonical witness failed a property check")
    return cf


def witness_property_check(t, P: SkewPoly, Q: SkewPoly, rng=None, n_points: int = 8) -> bool:
    """Ring morphism, degree preservation and evaluation shifting on one pair."""
    tP, tQ = t(P), t(Q)
    if t(P * Q) != tP * tQ or t(P + Q) != tP + tQ:
        return False
    if tP.degree != P.degree:
        return False
    pts = list(points(t.tgt)) if t.tgt.ctx.q ** t.tgt.n <= n_points else None
    if pts is None:
        rng = rng or random.Random(0)
        q, n = t.tgt.ctx.q, t.tgt.n
        pts = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(n_points)]
    for a in pts:
        if _evaluator(t.tgt, a)(tP) != _evaluator(t.src, shifted_point(t, a))(P):
            return False
    return True


def isomorphism_class(ring: RingCtx) -> tuple:
    """Sorted Frobenius exponents of the canonical form."""
    return diagonalize_morphism(ring.sigma)[1].exps


def isomorphic(r1: RingCtx, r2: RingCtx):
    """(True, witness r1 -> r2) when the exponent multisets agree, else (False, None)."""
    if r1.ctx != r2.ctx:
        raise FieldMismatch("rings are over different fields")
    if r1.n != r2.n:
        raise DimensionMismatch("rings have different numbers of variables")
    if isomorphism_class(r1) != isomorphism_class(r2):
        return False, None
    cf1, cf2 = canonical_form(r1), canonical_form(r2)
    # both canonical rings are the same sorted diagonal ring, so no
    # permutation of variables is needed between them
    return True, affine_compose(cf1.witness, affine_inverse(cf2.witness))


def is_vanishing(F: SkewPoly, bound: int = VANISHING_BOUND) -> bool:
    ring = F.ring
    size = ring.ctx.q ** ring.n
    if size > bound:
        raise SearchSpaceTooLarge(f"{size} points exceed the bound {bound}",
                                  witness={"points": size, "bound": bound})
    if F.is_zero():
        return True
    return all(_evaluator(ring, a)(F) == 0 for a in points(ring))


def ideal_preservation_check(t: AffineTransform, samples) -> bool:
    """F vanishes everywhere iff t(F) does, for each sample."""
    inv = affine_inverse(t)
    for F in samples:
        G = t(F)
        if is_vanishing(F) != is_vanishing(G):
            return False
        if inv(G) != F:
            return False
    return True


def words(n: int, max_degree: int):
    """All monomials of degree <= max_degree, shortest first."""
    for d in range(max_degree + 1):
        yield from itertools.product(range(n), repeat=d)


def vanishing_basis(ring: RingCtx, max_degree: int, bound: int = VANISHING_BOUND) -> list:
    """A basis of the vanishing polynomials of degree <= max_degree.

    Evaluation is left linear, so these are the kernel of the matrix of word
    values at all points.
    """
    size = ring.ctx.q ** ring.n
    if size > bound:
        raise SearchSpaceTooLarge(f"{size} points exceed the bound {bound}",
                                  witness={"points": size, "bound": bound})
    ws = list(words(ring.n, max_degree))
    rows = []
    for a in points(ring):
        ev = _evaluator(ring, a)
        rows.append(tuple(ev(ring.monomial(w)) for w in ws))
    return [ring.poly({w: c for w, c in zip(ws, v) if c}) for v in M.kernel_basis(ring.ctx, tuple(rows))]
