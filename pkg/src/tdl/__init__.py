"""Tree densities in sparse graph classes: exact counting, constructions and checks."""

from tdl.codecs import parse_graph, serialize_graph
from tdl.constructions import (build_gadget, build_lower_bound_graph, verify_gadget_properties,
                               verify_tree_decomposition)
from tdl.counting import count_copies, count_images, enumerate_images, oracle_count_images
from tdl.errors import (CapacityError, ConsistencyError, DomainError, ParseError, TdlError,
                        ValidationError)
from tdl.extraction import extract_witness, find_sunflower
from tdl.fit import run_fit
from tdl.forest import Forest, alpha_s, automorphism_count, mixed_cover
from tdl.graph import Graph, degeneracy, density
from tdl.models import enumerate_separations, find_pq_model, flap_number
from tdl.shortcuts import (BipartiteModel, ShortcutSystem, build_low_degree_square, expand,
                           transfer_model, validate_shortcut_system, verify_model)

__version__ = "0.1.0"
