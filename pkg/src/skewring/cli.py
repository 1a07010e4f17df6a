"""``skewring`` command-line tool.

Reads one JSON problem (``--in FILE`` or stdin), writes one JSON result
(``--out FILE`` or stdout).  Exit status: 0 success, 1 malformed input,
2 domain error (the error object carries a witness where one exists).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import jsonio as J
from .classify import canonical_form, isomorphic, isomorphism_class, is_vanishing, vanishing_basis
from .errors import MalformedInput, SkewRingError
from .freering import evaluate
from .morphism import diagonalize_morphism, inner_vector
from .transform import reconstruct_affine


def cmd_verify_morphism(doc, rng):
    sigma = J.read_morphism(doc)
    return {"valid": True, "morphism": J.write_morphism(sigma)}


def cmd_verify_derivation(doc, rng):
    delta = J.read_derivation(doc)
    return {"valid": True, "d0": J.write_vector(delta.at_primitive)}


def cmd_diagonalize(doc, rng):
    A, spec = diagonalize_morphism(J.read_morphism(doc))
    return {"A": J.write_matrix(A), "exps": list(spec.exps)}


def cmd_inner_vector(doc, rng):
    return {"lambda": J.write_vector(inner_vector(J.read_derivation(doc)))}


def cmd_canonicalize(doc, rng):
    ring = J.read_ring(doc)
    checks = J._int(doc.get("checks", 0), "checks")
    return canonical_form(ring, checks=checks, seed=rng.random()).to_json()


def cmd_classify(doc, rng):
    rings = [J.read_ring(r) for r in J._get(doc, "rings", list)]
    if not rings:
        raise MalformedInput("need at least one ring")
    classes = [list(isomorphism_class(r)) for r in rings]
    out = {"isomorphic": all(c == classes[0] for c in classes), "classes": classes}
    if len(rings) == 2:
        ok, w = isomorphic(*rings)
        if ok:
            out["witness"] = J.write_transform(w)
    return out


def cmd_evaluate(doc, rng):
    ring = J.read_ring(J._get(doc, "ring"))
    F = J.read_poly(J._get(doc, "poly"), ring)
    return {"value": evaluate(F, J.read_vector(J._get(doc, "point"), ring.n))}


def cmd_multiply(doc, rng):
    ring = J.read_ring(J._get(doc, "ring"))
    polys = [J.read_poly(p, ring) for p in J._get(doc, "polys", list)]
    out = ring.one()
    for P in polys:
        out = out * P
    return {"product": J.write_poly(out)}


def cmd_transform(doc, rng):
    if "images" in doc:
        src, tgt = J.read_ring(J._get(doc, "src")), J.read_ring(J._get(doc, "tgt"))
        images = [J.read_poly(p, tgt) for p in J._get(doc, "images", list)]
        return J.write_transform(reconstruct_affine(images, src, tgt))
    t = J.read_transform(J._get(doc, "transform"))
    out = {"transform": J.write_transform(t)}
    if "poly" in doc:
        out["image"] = J.write_poly(t(J.read_poly(doc["poly"], t.src)))
    return out


def cmd_vanishing(doc, rng):
    ring = J.read_ring(J._get(doc, "ring"))
    if "poly" in doc:
        return {"vanishing": is_vanishing(J.read_poly(doc["poly"], ring))}
    deg = J._int(J._get(doc, "max_degree"), "max_degree")
    return {"basis": [J.write_poly(P) for P in vanishing_basis(ring, deg)]}


COMMANDS = {
    "verify-morphism": cmd_verify_morphism,
    "verify-derivation": cmd_verify_derivation,
    "diagonalize": cmd_diagonalize,
    "inner-vector": cmd_inner_vector,
    "canonicalize": cmd_canonicalize,
    "classify": cmd_classify,
    "evaluate": cmd_evaluate,
    "multiply": cmd_multiply,
    "transform": cmd_transform,
    "vanishing": cmd_vanishing,
}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def run(command: str, doc, seed: int = 0) -> tuple[dict, int]:
    """Run one command on a parsed document; returns (result, exit code)."""
    try:
        if not isinstance(doc, dict):
            raise MalformedInput("top-level JSON must be an object")
        return COMMANDS[command](doc, random.Random(seed)), 0
    except MalformedInput as e:
        return e.to_json(), 1
    except SkewRingError as e:
        return e.to_json(), 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skewring", description="Free multivariate skew polynomial rings over finite fields.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--in", dest="infile", help="input JSON file (default stdin)")
    ap.add_argument("--out", dest="outfile", help="output JSON file (default stdout)")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    ap.add_argument("--summary", action="store_true", help="print a one-line summary to stderr")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.infile:
            with open(args.infile) as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as e:
        result, code = MalformedInput(str(e)).to_json(), 1
    else:
        result, code = run(args.command, doc, args.seed)
    text = dumps(result)
    if args.outfile:
        with open(args.outfile, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.summary:
        status = "ok" if code == 0 else result.get("error", "error")
        print(f"{args.command}: {status}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
