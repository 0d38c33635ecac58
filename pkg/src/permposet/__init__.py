"""Pattern containment posets of permutations.

Intervals and occurrence posets with their Mobius function, interval
block / region / separation structure, theorem-shaped predicates, and
exhaustive verification sweeps with a small CLI.
"""

__version__ = "0.1.0"

from .perms import (  # noqa: F401
    Perm,
    complement_entries,
    contains,
    count_occurrences,
    delete_letters,
    extend_occurrence,
    format_marked,
    format_permutation,
    occurrences,
    parse_permutation,
    standard_form,
)
from .blocks import (  # noqa: F401
    IntervalBlock,
    Region,
    interval_blocks,
    is_separated,
    pair_has_interval_block,
    pair_has_interval_block_occ,
    regions,
    similar_groups,
)
from .poset import (  # noqa: F401
    ENGINE_VERSION,
    IntervalDag,
    IntervalFreeSubposet,
    MarkedPermutation,
    NodeBudgetExceeded,
    build_interval,
    build_occurrence_poset,
    interval_free_subposet,
    subposet_mobius,
    is_boolean,
    is_rank_property,
    mobius,
    mobius_via_zeta,
    mu_to_top_table,
    to_dot,
)
