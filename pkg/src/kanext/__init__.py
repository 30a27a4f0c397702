"""Pointwise left Kan extensions of set-valued functors between finite
categories, the unique lax monoidal structure they inherit, and regrading of
graded monoids and rings along monoid homomorphisms."""

from .errors import (AssumptionError, EngineError, FactorizationError, KanextError, LawError,
                     PreconditionError, SizeGuardError, StructureError, ValidationReport,
                     Violation)
from .fincat import (CommaCategory, FinCategory, FunctorData, NatTransData, comma_category,
                     compose_functors, discrete, discrete_from_monoid, from_poset,
                     identity_functor, identity_nat_trans, product_category, terminal,
                     validate_category, validate_functor, validate_nat_trans, vertical_compose,
                     whisker)
from .graded import (AbelianGroup, CollapsedRing, FiniteRing, GradedMonoid, GradedRing,
                     check_graded_iso, collapse_graded_ring, graded_to_lax_functor,
                     group_algebra_f2, hom_to_strong_functor, regrade_direct,
                     regrade_oracle_check, validate_graded_monoid, validate_graded_ring,
                     validate_ring)
from .kan import (KanResult, comparison_map, enumerate_factorizations, factor_through_kan,
                  left_kan_extension, paste, verify_kan)
from .monoidal import (LaxMonoidalFunctor, MonoidalNatTrans, MonoidalStructure, compose_lax,
                       discrete_monoidal, identity_lax, set_lax_functor, tensor_of_functors,
                       tensor_of_nat_trans, thin_monoidal, validate_lax_monoidal,
                       validate_monoidal, validate_monoidal_nat_trans)
from .monoids import (FiniteMonoid, MonoidHom, catalogue, cyclic, homomorphisms, klein,
                      validate_hom, validate_monoid)
from .montheorem import (MonoidalKanResult, UniquenessCertificate, construct_multiplication,
                         construct_unit, extend_lax_monoidal, induce_monoidal_transformation,
                         uniqueness_certificate, verify_moncat_universal)
from .setskel import (SETSKEL, ColimitWitness, SetMap, coequalizer, colimit, coproduct,
                      tensor, verify_colimit)

__version__ = "0.1.0"
