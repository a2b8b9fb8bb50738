"""Samplers for the synthetic high-frequency factor market."""

from weakfactor.processes.factors import SvPath, simulate_sv_factors, simulate_sv_paths
from weakfactor.processes.idiosyncratic import (
    idiosyncratic_increments,
    toeplitz_correlation,
    toeplitz_mix,
)
from weakfactor.processes.levy import nts_increments, nts_subordinator, wiener_increments
from weakfactor.processes.loadings import generate_loadings
from weakfactor.processes.observations import assemble_observations
from weakfactor.processes.stable import sample_one_sided_stable, sample_pts

__all__ = [
    "SvPath",
    "assemble_observations",
    "generate_loadings",
    "idiosyncratic_increments",
    "nts_increments",
    "nts_subordinator",
    "sample_one_sided_stable",
    "sample_pts",
    "simulate_sv_factors",
    "simulate_sv_paths",
    "toeplitz_correlation",
    "toeplitz_mix",
    "wiener_increments",
]
