"""JSON readers and writers for the CLI.

Every writer produces something the matching reader accepts.  Readers raise
``MalformedInput`` for structurally bad input; mathematically invalid data
(e.g. a non-morphism) surfaces as the library's own errors.
"""

from __future__ import annotations

from .errors import FieldMismatch, MalformedInput
from .freering import RingCtx, SkewPoly
from .gf import FieldCtx, field_new, field_of_order
from .morphism import (
    MatrixMorphism,
    VecDerivation,
    derivation_from_primitive_image,
    diagonal_morphism,
    identity_morphism,
    morphism_from_primitive_image,
)
from .transform import AffineTransform, pushforward_ring


def _get(obj, key, kind=None, default=...):
    if not isinstance(obj, dict):
        raise MalformedInput(f"expected an object holding {key!r}")
    if key not in obj:
        if default is ...:
            raise MalformedInput(f"missing key {key!r}")
        return default
    val = obj[key]
    if kind is not None and not isinstance(val, kind) or isinstance(val, bool) and kind is int:
        raise MalformedInput(f"{key!r} has the wrong type")
    return val


def _int(x, what="value"):
    if not isinstance(x, int) or isinstance(x, bool):
        raise MalformedInput(f"{what} must be an integer, got {x!r}")
    return x


# --- field / matrix / vector -------------------------------------------------

def read_field(obj) -> FieldCtx:
    if isinstance(obj, int) and not isinstance(obj, bool):
        return field_of_order(obj)
    if not isinstance(obj, dict):
        raise MalformedInput("field must be an object or an integer order")
    if "q" in obj and "p" not in obj:
        return field_of_order(_int(obj["q"], "q"))
    F = field_new(_int(_get(obj, "p"), "p"), _int(_get(obj, "m", default=1), "m"))
    if "modulus" in obj and list(obj["modulus"]) != list(F.modulus):
        raise FieldMismatch("modulus differs from the canonical one",
                            witness={"given": obj["modulus"], "expected": list(F.modulus)})
    if "c" in obj and obj["c"] != F.c:
        raise FieldMismatch("primitive element differs from the canonical one",
                            witness={"given": obj["c"], "expected": F.c})
    return F


def write_field(F: FieldCtx) -> dict:
    return F.to_json()


def read_vector(obj, n: int | None = None) -> tuple:
    if not isinstance(obj, list):
        raise MalformedInput("vector must be an array")
    v = tuple(_int(x, "vector entry") for x in obj)
    if n is not None and len(v) != n:
        raise MalformedInput(f"vector must have length {n}")
    return v


def read_matrix(obj, n: int | None = None) -> tuple:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise MalformedInput("matrix must be an array of rows")
    A = tuple(read_vector(r) for r in obj)
    if n is not None and (len(A) != n or any(len(r) != n for r in A)):
        raise MalformedInput(f"matrix must be {n}x{n}")
    return A


def write_vector(v) -> list:
    return list(v)


def write_matrix(A) -> list:
    return [list(r) for r in A]


# --- morphisms, derivations, rings --------------------------------------------

def _read_n(obj) -> int:
    n = _int(_get(obj, "n"), "n")
    if n < 1:
        raise MalformedInput("n must be positive")
    return n


def read_morphism(obj, F: FieldCtx | None = None, n: int | None = None) -> MatrixMorphism:
    """{"field", "n", "S"} or {"field", "n", "exps"} or {"field", "n", "table"}; "id" for identity."""
    if obj == "id":
        if F is None or n is None:
            raise MalformedInput('"id" needs an enclosing field and n')
        return identity_morphism(F, n)
    if F is None:
        F = read_field(_get(obj, "field"))
    if n is None or "n" in obj:
        n = _read_n(obj)
    if "S" in obj:
        return morphism_from_primitive_image(F, n, read_matrix(obj["S"], n))
    if "exps" in obj:
        return diagonal_morphism(F, n, read_vector(obj["exps"], n))
    if "table" in obj:
        table = obj["table"]
        if not isinstance(table, list):
            raise MalformedInput("table must be an array of matrices")
        return MatrixMorphism(F, n, [read_matrix(t, n) for t in table])
    return identity_morphism(F, n)


def write_morphism(sigma: MatrixMorphism) -> dict:
    return {"field": write_field(sigma.ctx), "n": sigma.n, "S": write_matrix(sigma.at_primitive)}


def read_derivation(obj, sigma: MatrixMorphism | None = None) -> VecDerivation:
    """A morphism spec plus "d0" (or "table") and optional "tau" (default "id")."""
    if sigma is None:
        sigma = read_morphism(obj)
    F, n = sigma.ctx, sigma.n
    tau = read_morphism(obj.get("tau", "id"), F, n)
    if "table" in obj and "d0" not in obj:
        table = obj["table"]
        if not isinstance(table, list):
            raise MalformedInput("table must be an array of vectors")
        return VecDerivation(sigma, tau, [read_vector(v, n) for v in table])
    d0 = read_vector(_get(obj, "d0"), n)
    return derivation_from_primitive_image(sigma, tau, d0)


def read_ring(obj) -> RingCtx:
    """{"field", "n"} plus optional morphism ("S" or "exps") and "d0"; default is F_q[x]."""
    sigma = read_morphism(obj)
    d0 = read_vector(obj.get("d0", [0] * sigma.n), sigma.n)
    if any(d0):
        return RingCtx(sigma, derivation_from_primitive_image(sigma, None, d0))
    return RingCtx(sigma)


def write_ring(ring: RingCtx) -> dict:
    out = write_morphism(ring.sigma)
    out["d0"] = write_vector(ring.delta.at_primitive)
    return out


# --- polynomials --------------------------------------------------------------

def read_poly(obj, ring: RingCtx) -> SkewPoly:
    terms = _get(obj, "terms", list)
    pairs = []
    for t in terms:
        mono = _get(t, "mono", list)
        word = []
        for i in mono:
            i = _int(i, "variable index")
            if not (1 <= i <= ring.n):
                raise MalformedInput(f"variable index {i} outside 1..{ring.n}")
            word.append(i - 1)
        pairs.append((tuple(word), _int(_get(t, "coeff"), "coeff")))
    return ring.poly(pairs)


def write_poly(F: SkewPoly) -> dict:
    return {"terms": [{"mono": [i + 1 for i in w], "coeff": c} for w, c in F.sorted_terms()]}


# --- transforms ---------------------------------------------------------------

def read_transform(obj) -> AffineTransform:
    """{"A", "lambda", "src", "tgt"?}; a missing tgt is the ring forced by (A, lambda)."""
    src = read_ring(_get(obj, "src"))
    A = read_matrix(_get(obj, "A"), src.n)
    lam = read_vector(_get(obj, "lambda", default=[0] * src.n), src.n)
    tgt = read_ring(obj["tgt"]) if "tgt" in obj else pushforward_ring(src, A, lam)
    return AffineTransform(A, lam, src, tgt)


def write_transform(t: AffineTransform) -> dict:
    return {"A": write_matrix(t.A), "lambda": write_vector(t.lam),
            "src": write_ring(t.src), "tgt": write_ring(t.tgt)}
