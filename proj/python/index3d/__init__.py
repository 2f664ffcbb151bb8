"""Exact 3d-index of ideally triangulated cusped 3-manifolds.

Series exponents and truncation orders are counted in powers of q^(1/2).
"""

from ._core import (
    KB2_ELEMENT,
    KB_ELEMENT,
    Index3dError,
    Series,
    Triangulation,
    check_relations,
    dgg,
    figure_eight,
    index,
    j_degree,
    j_index,
    load_triangulation,
    mirror_index,
    pachner_check,
    run_cli,
    tet_index,
    tet_index_numeric,
    validation_report,
)

__all__ = [
    "KB2_ELEMENT",
    "KB_ELEMENT",
    "Index3dError",
    "Series",
    "Triangulation",
    "check_relations",
    "dgg",
    "figure_eight",
    "index",
    "j_degree",
    "j_index",
    "load_triangulation",
    "mirror_index",
    "pachner_check",
    "run_cli",
    "tet_index",
    "tet_index_numeric",
    "validation_report",
]
