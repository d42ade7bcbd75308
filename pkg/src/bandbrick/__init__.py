"""String and band combinatorics for special biserial algebras.

Bands, brick detection, hom dimensions via graph maps and via exact linear
algebra, and tau-tilting finiteness for special biserial and Brauer graph
algebras.
"""

from .brauer import (
    BrauerGraph,
    bga_presentation,
    cycle_analysis,
    cycle_brick_band,
    decide_tau_finite_bg,
    find_witness,
    parse_brauer_graph,
)
from .errors import BandBrickError, CheckFailed, InvalidInput, ParseError
from .linalg import build_band_module, build_string_module, hom_dim, is_brick_oracle
from .quiver import Presentation, Quiver, check_admissible, is_special_biserial, parse_presentation
from .tau import (
    Decision,
    brick_family_bt1,
    brick_family_bt2,
    decide_tau_finite_sb,
    torsion_witnesses,
)
from .words import (
    Band,
    StringWord,
    band_endo_pairs,
    canonical_band,
    enumerate_bands,
    find_band_subpattern,
    is_band,
    is_band_brick,
    is_string,
    is_string_brick,
    make_band,
    make_string,
    occurrences,
    power_string,
    string_hom_pairs,
    top_socle,
)

__version__ = "0.1.0"

__all__ = [
    "Band",
    "BandBrickError",
    "BrauerGraph",
    "CheckFailed",
    "Decision",
    "InvalidInput",
    "ParseError",
    "Presentation",
    "Quiver",
    "StringWord",
    "band_endo_pairs",
    "bga_presentation",
    "brick_family_bt1",
    "brick_family_bt2",
    "build_band_module",
    "build_string_module",
    "canonical_band",
    "check_admissible",
    "cycle_analysis",
    "cycle_brick_band",
    "decide_tau_finite_bg",
    "decide_tau_finite_sb",
    "enumerate_bands",
    "find_band_subpattern",
    "find_witness",
    "hom_dim",
    "is_band",
    "is_band_brick",
    "is_brick_oracle",
    "is_special_biserial",
    "is_string",
    "is_string_brick",
    "make_band",
    "make_string",
    "occurrences",
    "parse_brauer_graph",
    "parse_presentation",
    "power_string",
    "string_hom_pairs",
    "top_socle",
    "torsion_witnesses",
]
