"""Bruhat-Tits quotients, model complexes and equivariant homology over finite fields."""

from ._core import (
    apartment_link_homology,
    group_homology,
    homology,
    model_homology,
    pic,
    points_acyclic,
    points_complex_counts,
    quotient,
    rp1_low_degree,
    run_suite,
    suite_names,
    tree_ball,
)

__all__ = [
    "apartment_link_homology",
    "group_homology",
    "homology",
    "model_homology",
    "pic",
    "points_acyclic",
    "points_complex_counts",
    "quotient",
    "rp1_low_degree",
    "run_suite",
    "suite_names",
    "tree_ball",
]
