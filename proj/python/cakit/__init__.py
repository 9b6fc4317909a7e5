"""Correspondence analysis toolkit.

Chi-square-scaled SVD of a two-way contingency table: masses, principal
inertias, row/column coordinates in three normalizations, signed chi-square
residuals, per-row association extraction, and biplot/report emitters.
"""

from ._core import (
    AnalysisError,
    AssociationEntry,
    AssociationReport,
    AssociationRow,
    Biplot,
    BiplotPoint,
    ColumnIndexEntry,
    DimensionSummary,
    Model,
    Residuals,
    Table,
    association_from_csv,
    association_text_tables,
    association_to_csv,
    biplot,
    chi_square_upper_tail,
    coordinates,
    coordinates_csv,
    emit_report,
    emit_svg,
    extract,
    fit,
    flag_positive_only,
    format_p,
    inertia_summary,
    parse_long_csv,
    parse_matrix_csv,
    residuals,
    residuals_csv,
    summary_csv,
    svd,
    to_matrix_csv,
    validate,
)

__all__ = [
    "AnalysisError",
    "AssociationEntry",
    "AssociationReport",
    "AssociationRow",
    "Biplot",
    "BiplotPoint",
    "ColumnIndexEntry",
    "DimensionSummary",
    "Model",
    "Residuals",
    "Table",
    "association_from_csv",
    "association_text_tables",
    "association_to_csv",
    "biplot",
    "chi_square_upper_tail",
    "coordinates",
    "coordinates_csv",
    "emit_report",
    "emit_svg",
    "extract",
    "fit",
    "flag_positive_only",
    "format_p",
    "inertia_summary",
    "parse_long_csv",
    "parse_matrix_csv",
    "residuals",
    "residuals_csv",
    "summary_csv",
    "svd",
    "to_matrix_csv",
    "validate",
]

__version__ = "0.1.0"
