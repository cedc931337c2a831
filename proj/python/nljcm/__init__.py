"""Two trapped ions on the k-th red sideband of the center-of-mass mode.

Thin re-export of the C++ core: closed-form chain propagators and
population traces, the brute-force Fock-space oracle, and the
collapse/revival envelope analysis.
"""

from ._core import (
    ChainClass,
    ChainCoefficients,
    DickeLevel,
    EnvelopeReport,
    InitialMotionalState,
    InsufficientDataError,
    ModelParams,
    NumericalError,
    PopulationTrace,
    PropagatorBlock,
    TruncationError,
    chain_coefficients,
    chain_propagator,
    compare_to_oracle,
    coupling_operator_element,
    envelope,
    figure_preset,
    first_order_revival_time,
    laguerre,
    log_factorial_ratio,
    oracle_populations,
    phonon_distribution,
    populations,
    rabi_period,
    recommended_n_max,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
