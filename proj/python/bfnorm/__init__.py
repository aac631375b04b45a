"""Degree, relative degree and normality of Boolean functions."""

from ._bfnorm import (
    BoolFun,
    Error,
    FlatTable,
    build_flat_table,
    classify_naive,
    classify_paired,
    dual_bent,
    exhaustive_m5_rows,
    gaussian_binomial,
    is_bent,
    known_class_count,
    load_flat_table,
    r_degree,
    random_lower_bound,
    rel_degree,
    walsh,
    work_factor,
)


def normality_dim(m: int) -> int:
    return (m + 1) // 2


def classify(f: BoolFun, method: str = "paired") -> dict:
    """Classifies f, building the needed flat table on the fly."""
    r = normality_dim(f.m)
    if method == "naive":
        return classify_naive(f, build_flat_table(f.m, r))
    if method == "paired":
        return classify_paired(f, build_flat_table(f.m, r - 1))
    raise ValueError(f"unknown method {method!r}")


__all__ = [
    "BoolFun",
    "Error",
    "FlatTable",
    "build_flat_table",
    "classify",
    "classify_naive",
    "classify_paired",
    "dual_bent",
    "exhaustive_m5_rows",
    "gaussian_binomial",
    "is_bent",
    "known_class_count",
    "load_flat_table",
    "normality_dim",
    "r_degree",
    "random_lower_bound",
    "rel_degree",
    "walsh",
    "work_factor",
]
