"""Common left/right coset transversals, checked exactly on finite groups and numerically on GL(n, C)."""

__version__ = "0.1.0"

from .groups import (  # noqa: E402
    FiniteGroup,
    Perm,
    SubgroupHandle,
    all_subgroups,
    compose,
    generate_closure,
    inverse,
    small_group_suite,
    subgroup_from_generators,
    symmetric_group,
)
from .cosets import check_index_condition, common_representative, double_cosets, left_cosets, right_cosets  # noqa: E402
from .transversal import common_transversal, double_coset_transversal, verify_transversal  # noqa: E402

__all__ = [
    "FiniteGroup",
    "Perm",
    "SubgroupHandle",
    "all_subgroups",
    "check_index_condition",
    "common_representative",
    "common_transversal",
    "compose",
    "double_coset_transversal",
    "double_cosets",
    "generate_closure",
    "inverse",
    "left_cosets",
    "right_cosets",
    "small_group_suite",
    "subgroup_from_generators",
    "symmetric_group",
    "verify_transversal",
]
