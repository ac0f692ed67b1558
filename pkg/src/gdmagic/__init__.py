"""Group distance magic labelings of direct products ``G x C4`` and ``G x C8``."""

from .abelian import GroupSpec, enumerate_groups
from .constructions import ConstructReport, Outcome, construct
from .graphs import Graph, direct_product_with_cycle, generate
from .labeling import Labeling, VerifyReport, verify
from .search import SearchOutcome, SearchStatus, exists_labeling

__all__ = [
    "ConstructReport",
    "Graph",
    "GroupSpec",
    "Labeling",
    "Outcome",
    "SearchOutcome",
    "SearchStatus",
    "VerifyReport",
    "construct",
    "direct_product_with_cycle",
    "enumerate_groups",
    "exists_labeling",
    "generate",
    "verify",
]
