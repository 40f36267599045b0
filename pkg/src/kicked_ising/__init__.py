"""Kicked infinite-range Ising model in the permutation-symmetric subspace."""

from ._linalg import NumericalError
from .analytic import InitialState, analytic_entropy, analytic_u5_blocks, expected_periods
from .entanglement import ReducedDensityMatrix, concurrence, linear_entropy, rdm1, rdm2
from .floquet import (
    ConsistencyError,
    FloquetOperator,
    SpectrumReport,
    build_floquet,
    evolve,
    operator_power,
    parity_blocks,
    quasienergy_spectrum,
    trajectory,
)
from .signatures import (
    SignatureReport,
    delta_deviation,
    detect_entropy_period,
    detect_operator_period,
    run_signature_suite,
)
from .symbasis import (
    ALL_ZERO,
    PLUS_Y,
    CoherentStateParams,
    ParityDecomposition,
    SymmetricState,
    build_parity_basis,
    coherent_state,
    from_parity,
    parity_operator,
    to_parity,
)

__version__ = "0.1.0"
