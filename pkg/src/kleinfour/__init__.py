"""Klein-four connection counts on mod-2 cohomology rings of 3-manifolds."""

from .builders import (
    BranchedCover,
    LinkData,
    SeifertData,
    borromean,
    branched_double_cover,
    connect_sum,
    f_table,
    free,
    pd_to_subset,
    rp3,
    seifert_g1_ring,
    seifert_parity,
    torus3,
)
from .casson import CassonReport, admissible_mod2, casson_report, count_admissible, grading_shift
from .cupring import (
    CupRing,
    brute_isomorphic,
    cup,
    direct_sum,
    eval_u,
    is_square,
    k_invariant,
    postnikov_check,
    square,
)
from .klein4 import KleinTriple, OrbitTriple, total_count, v_count, v_orbits, v_table, vcheck_product, w2_of

__version__ = "0.1.0"
