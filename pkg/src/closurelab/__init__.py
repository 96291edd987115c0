"""Exact computation of intermediate closures of finite commutative algebras.

The m-closure of an algebra A of dimension n is the universal algebra with
m maps from A whose linear factors divide every characteristic polynomial,
after arbitrary base change.  This package computes them exactly over the
rationals and over finite fields, together with the naive element-only
variant, monogenic towers, and the monic-polynomial transform.
"""

from .arith import (GF, QQ, DEFAULT_MODULAR_PRIMES, ExtensionField, Field,
                    FieldDescriptor, PrimeField, RationalField,
                    extension_field, field_create, field_from_order,
                    is_prime, prime_field, rationals)
from .catalog import (ManifestEntry, catalog_entries, load_manifest,
                      manifest_path, table1_entries, table2_entries)
from .closure import (ClosureResult, GenericCharData, TowerDescription,
                      base_change_presentation, closure_from_presentation,
                      divides_check, etale_closure_dim, galois_factor_count,
                      generic_char_poly, j_generators, local_generators,
                      m_closure, modular_primes, monogenic_algebra,
                      monogenic_tower, naive_closure, presentation_mod_p,
                      product_formula_dim, s_closure, transform_monic)
from .finalg import (AlgebraElement, AlgebraMap, CharPoly, QuotientAlgebra,
                     RowSpace, StructureAlgebra, TableAlgebra,
                     TensorPairAlgebra, TensorPowerAlgebra,
                     algebra_from_presentation, algebra_product,
                     berkowitz_charpoly, char_poly, ideal_subspace_dim,
                     mult_matrix, quotient_algebra, tensor_power)
from .groebner import GroebnerBasis, buchberger, normal_form, standard_monomials
from .multipoly import (AlgebraPresentation, Monomial, MultiPoly, PolyRing,
                        parse_poly, parse_presentation, parse_univariate)

__version__ = "0.1.0"
