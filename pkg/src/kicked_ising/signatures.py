"""Integrability diagnostics: operator deviation, operator and entropy periods."""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .entanglement import linear_entropy, rdm1
from .floquet import SpectrumReport, build_floquet, quasienergy_spectrum, trajectory
from .symbasis import CoherentStateParams, coherent_state

log = logging.getLogger(__name__)


def delta_deviation(op, n_max):
    """delta(n) = sum_{p,q} |U^n_pq - U_pq| / (2N) for n = 2..n_max."""
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    u = op.matrix
    power = u.copy()
    out = np.empty(n_max - 1)
    for i in range(n_max - 1):
        power = power @ u
        out[i] = np.abs(power - u).sum() / (2 * op.n_qubits)
    return out


def _identity_distance(m):
    return float(np.abs(m - np.eye(len(m))).max())


def detect_operator_period(op, max_period=64, tol=1e-9):
    """Smallest T <= max_period with max|U^T - I| < tol, else None."""
    if max_period < 1:
        raise ValueError(f"max_period must be >= 1, got {max_period}")
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    u = op.matrix
    power = np.eye(op.dim, dtype=complex)
    for t in range(1, int(max_period) + 1):
        power = power @ u
        if _identity_distance(power) < tol:
            return t
    return None


def verify_operator_period(op, period, tol=1e-9):
    """U^T = I within tol and U^{2T} = I within 2 tol."""
    u_t = np.linalg.matrix_power(op.matrix, period)
    return _identity_distance(u_t) < tol and _identity_distance(u_t @ u_t) < 2 * tol


def detect_entropy_period(series, tol=1e-9):
    """Smallest T with |S(n+T) - S(n)| < tol across the whole series.

    Only candidates with len(series) >= 3T are considered.
    """
    s = np.asarray(series, dtype=float)
    if len(s) < 3:
        raise ValueError(f"series too short for period detection: length {len(s)} < 3")
    for t in range(1, len(s) // 3 + 1):
        if np.all(np.abs(s[t:] - s[:-t]) < tol):
            return t
    return None


def entropy_series(state, op, n_steps):
    """S(n) of a single qubit for n = 0..n_steps."""
    return np.array([linear_entropy(rdm1(psi)) for psi in trajectory(state, op, n_steps)])


@dataclass
class SignatureReport:
    n_qubits: int
    tau: float
    initial: CoherentStateParams
    delta_series: np.ndarray
    operator_period: Optional[int]
    entropy_period: Optional[int]
    spectrum: SpectrumReport
    max_period_checked: int
    tolerances: dict = field(default_factory=dict)

    @property
    def delta_mean(self):
        return float(np.mean(self.delta_series))

    @property
    def delta_min(self):
        return float(np.min(self.delta_series))


def run_signature_suite(
    n_qubits,
    tau,
    initial,
    n_max=64,
    max_period=None,
    period_tol=1e-9,
    entropy_tol=1e-9,
    grouping_tol=1e-8,
):
    """Run delta(n), both period detectors and the quasienergy spectrum.

    Detected periods are re-checked over a doubled window and dropped (with a
    warning) if the re-check fails.
    """
    op = build_floquet(n_qubits, tau)
    max_period = n_max if max_period is None else max_period

    deltas = delta_deviation(op, n_max)
    t_op = detect_operator_period(op, max_period, period_tol)
    if t_op is not None and not verify_operator_period(op, t_op, period_tol):
        log.warning("operator period %d failed the doubled-window check", t_op)
        t_op = None

    state = coherent_state(initial, n_qubits)
    series = entropy_series(state, op, n_max)
    t_s = detect_entropy_period(series, entropy_tol)
    if t_s is not None:
        longer = entropy_series(state, op, 2 * n_max)
        if not np.all(np.abs(longer[t_s:] - longer[:-t_s]) < entropy_tol):
            log.warning("entropy period %d failed the doubled-window check", t_s)
            t_s = None

    return SignatureReport(
        n_qubits=op.n_qubits,
        tau=op.tau,
        initial=initial,
        delta_series=deltas,
        operator_period=t_op,
        entropy_period=t_s,
        spectrum=quasienergy_spectrum(op, grouping_tol),
        max_period_checked=int(max_period),
        tolerances={
            "period_tol": period_tol,
            "entropy_tol": entropy_tol,
            "grouping_tol": grouping_tol,
        },
    )
