"""Folkman-number lower bound machinery: finite-sum sets, doubling
colorings, exact monochromatic probabilities, first-moment arithmetic, and
exact small Folkman numbers."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AdvisoryRejection,
    BudgetExceeded,
    FolkmanError,
    PrecisionLimitError,
    RejectedInput,
)
from .sumset_core import (  # noqa: E402
    DisjointPair,
    DyadicDecomposition,
    PrimeFamily,
    SumSet,
    as_kset,
    dyadic,
    equal_sum_disjoint_pair,
    finite_sums,
    is_sum_distinct,
    prime_scaled_family,
    representative_set,
)
from .coloring import (  # noqa: E402
    BLUE,
    RED,
    Coloring,
    MonoProbability,
    coin,
    coloring_to_text,
    doubling_coloring,
    exact_mono_probability,
    is_monochromatic,
    load_coloring,
    mc_mono_frequency,
    parse_coloring,
    save_coloring,
    uniform_coloring,
)
from .bounds import (  # noqa: E402
    BoundReport,
    FloorCertificate,
    certified_floor,
    chain_log_bound,
    check_first_moment,
    es_lower_bound,
    expectation_log_bound,
    log2_new_lower_bound,
    new_lower_bound,
    table_to_csv,
)
from .verifier import (  # noqa: E402
    VerificationReport,
    Witness,
    count_candidates,
    find_witness,
    naive_find_witness,
    verify_theorem,
    witness_line,
)
from .search import (  # noqa: E402
    FolkmanInstance,
    SearchOutcome,
    build_instance,
    count_witness_free,
    decide,
    enumerate_decide,
    folkman_exact,
    gen_candidates,
    import_model,
    parse_model_text,
    to_cnf,
)
