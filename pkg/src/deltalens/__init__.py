"""Delta lenses and their factorisation system on finite categories.

Categories are finite tables, every construction is explicit, and every
law ships as a runnable check.
"""

from .kernel import FinCat, FinFunctor, compose_functors, identity_functor
from .factorization import CommutingSquare, comprehensive_factorise, orthogonal_lift
from .lens import DeltaLens, compose_lenses, validate_lens
from .semimonad import j_object, validate_semimonad
from .awfs import e_object, free_lens, validate_monad, validate_comonad
from .laws import default_scope, run_laws

__all__ = [
    "CommutingSquare",
    "DeltaLens",
    "FinCat",
    "FinFunctor",
    "compose_functors",
    "compose_lenses",
    "comprehensive_factorise",
    "default_scope",
    "e_object",
    "free_lens",
    "identity_functor",
    "j_object",
    "orthogonal_lift",
    "run_laws",
    "validate_comonad",
    "validate_lens",
    "validate_monad",
    "validate_semimonad",
]
