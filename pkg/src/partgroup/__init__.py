"""Finite partial groups: axioms, morphisms, limits, colimits, quotients and free objects."""
from ._kernel import BACKEND
from .colimits import (Congruence, CongruenceError, coequalizer, congruence_closure, coproduct,
                       finite_colimit, mediating_cocone_map, quotient_by_congruence, replay,
                       set_coequalizer, star_violations)
from .core import (DomainError, HorizonError, OracleDomain, PartialGroup, PartialGroupError,
                   StructureError, TableDomain, UnsupportedModeError, ValidationReport,
                   group_from_table, make_table_group, validate_axioms)
from .diagram import Diagram, DiagramError
from .free import (FreePartialGroup, PointedSet, SetSObject, free_pointed, free_sets, gx_embed_word,
                   gx_invert, gx_multiply, universal_map_pointed, universal_map_sets)
from .limits import equalizer, finite_limit, mediating_cone_map, product
from .morphism import (ImpartialSubgroup, Morphism, MorphismError, check_morphism, compose,
                       find_isomorphism, identity_map, image, is_morphism, kernel,
                       partial_subgroup, trivial_map)
from .quotient import (PresentationReport, SubgroupWitness, add_relations, classify_subset,
                       generated_partial_subgroup, inner_relations, intersect_impartial,
                       present_as_quotient_of_free, quotient)

__version__ = "0.1.0"
