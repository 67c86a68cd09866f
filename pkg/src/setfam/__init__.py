from .family import DiversityResult, KSet, SetFamily, Universe, layer
from .lex import lex_compare, lex_first, lex_key, lex_sorted
from .predicates import (
    common_element,
    degrees,
    diversity,
    is_cross_intersecting,
    is_intersecting,
    is_trivial,
    restrict,
)
from .constructions import (
    dual_family,
    hilton_milner_family,
    hilton_milner_size,
    i_family,
    star,
)
from .numerics import (
    binom_exact,
    binom_real,
    pascal_table,
    solve_lovasz_x,
)
from .magnitude import LogMagnitude, Term, log2_magnitude
from .enumeration import (
    count_cross_pairs,
    count_intersecting,
    count_intersecting_bruteforce,
    count_intersecting_via_kneser,
    count_nontrivial_subfamilies,
    diversity_profile,
    diversity_ratio,
    enumerate_maximal_cross_pairs,
    enumerate_maximal_intersecting,
    max_compatible_B,
    minimal_generating_family,
    random_cross_intersecting_pair,
)
from .bounds import (
    BoundReport,
    SetPairSystem,
    bollobas_verify,
    ci_decomposition_check,
    complement_system,
    cross_ekr_check,
    ekr_bound,
    frankl_diversity_bound,
    frankl_diversity_check,
    ft_kz_bound,
    ft_kz_check,
    ft_kz_window,
    hm_bound,
    kk_compress_check,
    kk_property_suite,
    lovasz_bound,
    maximal_families_bound,
    maximal_pairs_bound,
)
from .audit import inequality_audit
from .asymptotics import (
    construction_count_nontrivial,
    formula_value,
    ratio_report,
    threshold_check,
)
from .exceptions import (
    DomainError,
    FeasibilityError,
    SetFamError,
    UsageError,
    ValidationError,
)
from .loaders import from_json
from .save import save_family

# attach predicates to the class
SetFamily.is_intersecting = is_intersecting
SetFamily.diversity = diversity
SetFamily.common_element = common_element
SetFamily.restrict = restrict

# attach loading and saving to the class
SetFamily.from_json = classmethod(from_json)
SetFamily.save = save_family
