"""Variational splines and Paley-Wiener reconstruction on graphs."""

from ._pwgraph import (
    Error,
    Graph,
    NumericalError,
    SpectralDecomposition,
    SplineModel,
    VertexSet,
    apply_laplacian,
    bernstein_ratio,
    choose_epsilon,
    cycle_graph,
    decompose,
    fit_spline,
    fourier,
    inverse_fourier,
    lagrangian_splines,
    laplacian,
    min_bandwidth,
    omega_star,
    operator_power,
    optimality_margin,
    path_graph,
    poincare_constant,
    power_inequality_check,
    pw_project,
    reconstruct,
    rectangular_bound,
    segment_bound,
    segment_count_limit,
    sobolev_norm,
    synthesize_pw_signal,
    torus_graph,
    uniqueness_threshold,
    verify_uniqueness,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
