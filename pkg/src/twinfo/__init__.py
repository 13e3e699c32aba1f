"""First-order logic over graphs given with a contraction sequence."""
from .calculus import TypeCalculus, enumerate_types, join_table, promote_table, trim_table, warp_function
from .enumeration import END, Enumerator, enum_family_union, enum_product, enum_union, enumerate_query
from .errors import (ContractViolation, ParseError, PreconditionError, RankCapError,
                     TwinfoError, ValidationError)
from .families import greedy_contraction_sequence, make_family
from .graph import Graph, format_graph, parse_graph
from .logic import naive_eval, naive_satisfying_set, parse_formula
from .modelcheck import ModelChecker, interpret, model_check
from .proximity import RangeIndex, build_firstclose_rectangles, first_close
from .query import QueryEngine, answer, build_query_engine
from .regions import compute_relevant_regions
from .sequence import (ContractionSequence, build_sequence, format_contraction_sequence,
                       parse_contraction_sequence, reindex_convex, validate)
from .trigraph import ImpurityState, Trigraph, quotient_trigraph, vicinity
from .types import atomic_type, eval_on_type, ltp, to_global_type, tp
from .vcdensity import (count_type_classes, distance_coloring, make_bipartite, meeting_time,
                        stone_space, vc_density_report)
