"""Exact computation in the triangulated category F(R) of free modules over a
finite local ring R with maximal ideal (pi), pi^2 = 0, and residue field of
characteristic 2 (Z/4, Galois rings GR(4, m), dual numbers F_{2^m}[eps]).
"""

from .axioms import AxiomReport, PreconditionError, extend_to_exact, fill_in, verify_axioms
from .exactness import (ExactnessCertificate, NotQuasiExactError, OracleTooLargeError,
                        brute_force_exact, decide_exact, homology_of_2T, is_exact,
                        is_quasi_exact, sigma_criterion)
from .formats import (FormatError, format_certificate, format_matrix, format_triangle,
                      parse_certificate_text, parse_matrix_text, parse_triangle_file,
                      parse_triangle_text, verify_certificate_text)
from .generators import generators
from .hopf import (ExoticWitness, HopfWitness, SearchTooLargeError, UnsupportedRingError,
                   exotic_certificate, four_annihilates, hopf_search, n_exotic_search,
                   two_c_nonzero)
from .linalg import (Matrix, NormalForm, NotInvertibleError, ShapeError, SolutionSet, invert,
                     is_invertible, normal_form, residue_linalg, solve_linear)
from .ring import (Element, InvalidDescriptorError, Ring, RingDescriptor, RingMismatchError,
                   make_ring)
from .triangle import (CandidateError, CandidateTriangle, Homotopy, HomotopyError, IsoTriple,
                       MorphismError, TriangleMorphism, cone_iso_from_homotopy, cone_of_identity,
                       conjugate, direct_sum, dualize, find_homotopy, identity_morphism,
                       is_contractible, is_homotopy, mapping_cone, translate, translate_back,
                       trivial_triangle, x2_triangle, zero_triangle)

__version__ = "0.1.0"
