"""Exact χ/ω tooling for Mycielski towers and tagged block graphs."""

__version__ = "0.1.0"

from .constructions import (BlockSpec, ClassSpec, MycielskiLayout, Provenance, SliceEntry, TaggedGraph,
                            build_block, compute_B, compute_W, load_provider_graph, mycielski_tower,
                            mycielskian, provider_r2)
from .dimacs import read_dimacs, write_dimacs
from .graph import (Graph, components, disjoint_union, induced_subgraph, is_connected,
                    is_triangle_free, make_graph)
from .solvers import (CliqueCert, Coloring, SolveResult, brute_force_chi, brute_force_omega,
                      chi_restricted, chromatic_number, clique_number, k_colorable, verify_clique,
                      verify_coloring)
from .verification import (BoundingTable, Polynomial, check_block_observation, check_goodness,
                           check_mycielski_lemma, chi_max_of_class, find_nonpoly_witness,
                           hereditary_closure_sample, pollyanna_bound, verify_all)
