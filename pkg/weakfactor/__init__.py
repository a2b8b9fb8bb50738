"""weakfactor - weak-factor number estimation from high-frequency returns.

Simulates a continuous-time factor market with sparse loadings, stochastic-volatility
factors and heavy-tailed idiosyncratic noise, and compares eigenvalue-based estimators
of the number of relevant factors by Monte Carlo.
"""

__version__ = "0.1.0"

from weakfactor.config import EstimatorConfig, ModelConfig, load_config
from weakfactor.estimators import EstimateSet, estimate_all
from weakfactor.montecarlo import MCReport, run_experiment, run_replication, run_sweep
from weakfactor.spectra import Spectrum, realized_correlation_spectrum, realized_spectrum

__all__ = [
    "EstimateSet",
    "EstimatorConfig",
    "MCReport",
    "ModelConfig",
    "Spectrum",
    "estimate_all",
    "load_config",
    "realized_correlation_spectrum",
    "realized_spectrum",
    "run_experiment",
    "run_replication",
    "run_sweep",
]
