"""Finite loops, sharply transitive sections and octavian Moufang loops."""

from .errors import LoopsmithError
from .groups import (CosetSpace, FiniteGroup, Mapping, Subgroup, center, cyclic, dihedral,
                     direct_product, is_homomorphism, is_monomorphism, is_normal,
                     left_cosets, make_group, normal_core, point_stabilizer, quaternion8,
                     subgroup_closure, symmetric)
from .loops import (FiniteLoop, LoopHom, Subloop, centre_of_loop, factor_loop,
                    first_associator_witness, is_associative, is_isomorphic, is_moufang,
                    is_normal_subloop, left_translations, make_loop, mlt_left,
                    stabilizer_of_identity, subloop_generated,
                    two_generated_subloops_associative)
from .perm import PermClosure, perm_closure
from .sections import (SearchOptions, Section, classify_section_loops, count_sections,
                       enumerate_sections, fpf_difference_check, is_sharply_transitive,
                       loop_from_section, section_from_loop)
from .product import (ProductSpec, build_group_and_section, build_product_loop,
                      decomposition_report, properness_report, torus_variant_builder,
                      validate_spec)
from .octonion import build_octavian_units, moufang_residual, oct_mul, octavian_factor_by_centre

__version__ = "0.1.0"
