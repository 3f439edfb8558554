"""Differences of harmonic (3-smooth) numbers, with checkable certificates."""

__version__ = "0.1.0"

from .certificates import Classification, classify, close_case  # noqa: E402
from .representations import Form, all_representations, consecutive_pairs, search_form  # noqa: E402
from .smooth import enumerate_smooth, is_smooth, make_smooth  # noqa: E402
from .verify import verify, verify_order_chain  # noqa: E402

__all__ = [
    "Classification",
    "Form",
    "all_representations",
    "classify",
    "close_case",
    "consecutive_pairs",
    "enumerate_smooth",
    "is_smooth",
    "make_smooth",
    "search_form",
    "verify",
    "verify_order_chain",
]
