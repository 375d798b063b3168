"""Graded roots, HF+ and contact invariants of negative-definite plumbings."""

from .cobordism import (
    Boundary,
    Chain,
    CobordismPlan,
    Letter,
    MonodromyWord,
    Opaque,
    chain_relation_word,
    completed_word,
    homology_action,
    parse_word,
    phi_word,
    plan_stein_cobordism,
    target_brieskorn,
)
from .config import Config
from .contact import (
    MINUS_INFINITY,
    classify_link,
    detect_in_laufer,
    locate_contact,
    semigroup_tau,
    sigma_of_char,
    stein_family_chern,
)
from .errors import *  # noqa: F401,F403
from .laufer import GradedRoot, graded_root, graded_root_from_tau, laufer_trace, tau_extrema
from .plumbing import (
    PlumbingGraph,
    ar_certificate,
    brieskorn_graph,
    build_graph,
    canonical_class,
    fundamental_cycle,
    is_almost_rational,
    is_negative_definite,
    is_rational,
    k_squared,
)
from .umodule import INFINITY, GradedFUModule, d_invariant, hf_plus, homology, u_depth

__version__ = "0.1.0"
