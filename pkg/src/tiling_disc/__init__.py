"""Discrepancy of perfect clique tilings in +-1 edge-labeled graphs.

Exact search for the extreme discrepancies of perfect K_r-tilings, the
balanced multipartite constructions in which every perfect tiling has
discrepancy zero, and the template gadgets that separate labelings.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    InfeasibleError, LabelDomainError, ParameterError, StructureError, TemplateArithmeticError,
)
from .graph import (  # noqa: E402
    CliqueKind, EdgeLabeling, Graph, Kind, classify_clique, cliques_of_size, discrepancy,
    format_graph, min_degree, parse_graph, swap_identity_holds, tiling_discrepancy,
)
from .constructions import (  # noqa: E402
    ConstructionMeta, TypeCensus, canonical_tiling, extremal_mod03, extremal_mod1, extremal_mod2,
    matching_extremal, type_census,
)
from .solver import (  # noqa: E402
    DiscrepancyExtremes, discrepancy_extremes, enumerate_perfect_tilings, exists_perfect_tiling,
    sample_tiling,
)
from .templates import (  # noqa: E402
    GadgetSpec, KrTemplate, build_gadget, build_K1_K2, expected_difference,
    hamilton_window_template, template_discrepancy, validate_template,
)
