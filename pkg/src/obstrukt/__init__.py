"""Exact computation of embedding obstructions for simplicial complexes.

The Van Kampen obstruction over Z, Z/2 and Q via deleted products, Magnus
expansions and Massey products for the higher obstructions of the K_alpha
family, and linking numbers of straight-line spatial graphs.
"""
from .complex import (Chain, EdgeLoop, SimplicialComplex, attach_disk, boundary_matrix, build_complex,
                      complex_from_json, disk_chain, stellar_subdivide)
from .errors import DegenerateInput, HypothesisViolation, InvalidInput, ObstruktError
from .generators import (complete_bipartite, complete_graph, complex_C, complex_Cbar, k_alpha,
                         one_relator_complex, skeleton_of_simplex)
from .linalg import HomologyGroup, SNFDecomposition, betti_numbers, homology, is_coboundary, smith_normal_form
from .links import (GraphEmbedding, PolygonalCycle, conway_gordon_omega, disjoint_triangle_pairs,
                    linking_number, random_embedding)
from .magnus import MagnusSeries, Word, expand, higher_obstruction_certificate, lcs_class, parse_word
from .massey import Cochain, cup, massey_product, meridian_classes
from .products import configuration_complex, deleted_product, equivariant_complex
from .vk import (BilinearFormH2, ObstructionReport, generic_map, pairing_pullback, trivial_pairing_witness,
                 vk_class, vk_cochain, vk_image_rational)

__version__ = "0.1.0"
