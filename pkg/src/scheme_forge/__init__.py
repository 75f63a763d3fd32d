"""scheme-forge: translation association schemes from cyclotomy.

Exact verification of candidate schemes over finite fields (Gauss periods
in Z[xi_p], dual-signature criterion), eigenmatrices and intersection
numbers, Bannai-Muzychuk fusion, index-2 Gauss sum closed forms, the named
four-/five-class fission families, a two-class conference construction with
its published F_{37^3} four-class fission, and an exhaustive nonexistence
scan over prime-square fields.
"""

from .cycint import CycInt, embed_complex, quadratic_gauss_cycint
from .cyclotomy import CyclotomicSystem, build_cyclotomy, character_sum, class_of
from .finite_field import (DEFAULT_CAP, FieldSpec, build_field, is_prime,
                           multiplicative_order)
from .gauss_sums import (Index2Params, MultChar, class_number,
                         davenport_hasse_check, gauss_sum_direct,
                         gauss_sum_index2, gauss_sum_quadratic, gauss_sums_all,
                         index2_comparison, make_index2_params, solve_bc)
from .scheme_core import (IndexPartition, SchemeReport, brute_force_verify,
                          check_fusion, dual_partition, eigenmatrices,
                          intersection_numbers, is_primitive, is_scheme,
                          is_symmetric, krein_parameters, symmetrize,
                          verify_scheme)
from .constructions import (BuiltScheme, FissionSpec, SongReproduction,
                            conference_7mod8, five_class_3mod8,
                            five_class_index_sets, four_class_7mod8,
                            ma_wang_template, match_template, song_example,
                            three_class_base)
from .search import (GroupRingElem, SearchConfig, SearchResult,
                     exhaustive_nonexistence, gr_involution, gr_mul,
                     trace_partition, ts_identity_check)

__version__ = "0.1.0"
