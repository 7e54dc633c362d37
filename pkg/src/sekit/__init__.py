"""Witness-level and invariant-level checks of shift equivalence, strong shift
equivalence and conjugacy for non-negative integer matrices."""

__version__ = "0.1.0"

from .equivalences import (  # noqa: E402
    EsseWitness,
    SeWitness,
    SmeWitness,
    SseChain,
    Verdict,
    chain_to_se,
    compose_esse_via_invertible,
    compose_se,
    esse_to_sme_if_invertible,
    increase_lag,
    sme_to_esse,
    verify_esse,
    verify_se,
    verify_sme,
    verify_sse_chain,
)
from .invariants import bowen_franks, compare_dilations, dilation_invariants, k_theory  # noqa: E402
from .matrix import CorrMatrix, bipartite_inflation, inflation_power, power, tensor  # noqa: E402
from .search import SearchBounds, search_esse, search_se, search_sme  # noqa: E402
