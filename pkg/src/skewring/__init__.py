"""Free multivariate skew polynomial rings over finite fields."""

from .classify import (
    CanonicalForm,
    canonical_form,
    ideal_preservation_check,
    is_vanishing,
    isomorphic,
    isomorphism_class,
    vanishing_basis,
)
from .errors import SkewRingError
from .freering import RingCtx, SkewPoly, divide_linear, evaluate, product_rule_eval
from .gf import FieldCtx, field_new
from .morphism import (
    DiagonalSpec,
    MatrixMorphism,
    VecDerivation,
    derivation_from_primitive_image,
    diagonal_morphism,
    diagonalize_morphism,
    inner_vector,
    morphism_from_primitive_image,
)
from .transform import (
    AffineTransform,
    LinearTransform,
    TranslationTransform,
    affine_compose,
    affine_inverse,
    reconstruct_affine,
    swap_order,
)

__version__ = "0.1.0"
