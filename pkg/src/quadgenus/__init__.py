"""Explicit minimum-genus embeddings for repeated Cartesian products of
balanced complete bipartite graphs with even cycles and even paths.

The package builds the embeddings constructively, one handle at a time,
and certifies minimality by tracing every face and matching the genus
against the quadrilateral lower bound for bipartite graphs.  Closed-form
genus formulas, an independent brute-force oracle for tiny graphs, and a
CLI with reproducible JSON artifacts round out the toolkit.
"""

__version__ = "0.1.0"

from .constructions import (ConstructionResult, classify_family, embed_cube,
                            embed_cube_cycle, embed_cube_cycles,
                            embed_cube_path, embed_cube_paths, embed_family,
                            embed_K2r2r)
from .embeddings import (Embedding, EmbeddingCertificate, FaceSet,
                         components_certificate, euler_genus,
                         genus_lower_bound, is_quadrilateral, mirror,
                         trace_faces, validate_embedding)
from .errors import (BudgetExceededError, ConstructionError, EmbeddingError,
                     ExprSyntaxError, InvalidParameterError, LinkError,
                     NotApplicableError, PartitionError, SurgeryError,
                     ToolError, UnsupportedFamilyError, VerificationError)
from .formulas import (FORMULAS, GenusValue, corollary_genus,
                       cube_cycle_genus, cube_genus, cube_path_genus,
                       hypercube_genus, main_cycles_genus, main_paths_genus,
                       ringel_genus, white_cycle_genus, white_path_genus)
from .graphs import (Graph, build_family, cartesian_product, from_edges,
                     is_bipartite, is_connected, make_complete_bipartite,
                     make_cycle, make_path, parse_family_expr)
from .oracle import (OracleResult, SearchBudget, certify_minimum,
                     exhaustive_min_genus, rotation_space_size,
                     stochastic_search)
from .surgery import (FaceFamily, FaceReservoir, HandleRecord, QuadFace,
                      add_handle, check_reservoir, link_copies,
                      partition_faces_K2r2r, quad_faces, remove_handle,
                      reservoir_from_links)
