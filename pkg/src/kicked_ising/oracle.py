"""Brute-force reference in the full 2^N Hilbert space (N <= 12).

Computational basis order: qubit 0 is the most significant bit. Nothing here
uses the Dicke-basis machinery except ``project_symmetric`` and
``embed_symmetric``, which only apply the definition of |w_q>.
"""

import time
from dataclasses import dataclass
from math import comb

import numpy as np

from .entanglement import ReducedDensityMatrix
from .symbasis import SymmetricState, _check_n

MAX_QUBITS = 12


class CapacityError(ValueError):
    """Requested system is larger than the oracle supports."""


def _check_capacity(n_qubits):
    n = _check_n(n_qubits)
    if n > MAX_QUBITS:
        raise CapacityError(f"oracle supports N <= {MAX_QUBITS}, got N={n}")
    return n


@dataclass(frozen=True)
class FullState:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = _check_capacity(self.n_qubits)
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (2**n,):
            raise ValueError(f"expected {2**n} amplitudes for N={n}, got {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def tensor(self):
        return self.amplitudes.reshape((2,) * self.n_qubits)


def bit_table(n_qubits):
    """(2^N, N) array of bits; column l is qubit l (qubit 0 most significant)."""
    idx = np.arange(2**n_qubits)
    shifts = np.arange(n_qubits - 1, -1, -1)
    return (idx[:, None] >> shifts) & 1


def product_state(single, n_qubits):
    """The product state single^{(x)N}."""
    n = _check_capacity(n_qubits)
    single = np.asarray(single, dtype=complex)
    amps = np.ones(1, dtype=complex)
    for _ in range(n):
        amps = np.kron(amps, single)
    return FullState(n, amps)


def ising_diagonal(n_qubits, tau):
    """exp(-i tau sum_{l<l'} z_l z_l') per basis state, summed pair by pair."""
    z = 1 - 2 * bit_table(n_qubits)
    energy = np.zeros(2**n_qubits)
    for l in range(n_qubits):
        for lp in range(l + 1, n_qubits):
            energy += z[:, l] * z[:, lp]
    return np.exp(-1j * tau * energy)


def full_floquet_apply(state, tau):
    """Kick every qubit with exp(-i tau sigma^y), then apply the Ising phase."""
    n = _check_capacity(state.n_qubits)
    rot = np.array(
        [[np.cos(tau), -np.sin(tau)], [np.sin(tau), np.cos(tau)]], dtype=complex
    )
    psi = state.tensor()
    for axis in range(n):
        psi = np.moveaxis(np.tensordot(rot, psi, axes=([1], [axis])), 0, axis)
    return FullState(n, psi.reshape(-1) * ising_diagonal(n, tau))


def dicke_index_sets(n_qubits):
    """Basis indices grouped by the number of ones."""
    weights = bit_table(n_qubits).sum(axis=1)
    return [np.flatnonzero(weights == q) for q in range(n_qubits + 1)]


def project_symmetric(state):
    """Overlaps with each normalized Dicke vector and the leftover norm.

    Returns ``(SymmetricState, residual)``. The state is not renormalized, so
    its norm is sqrt(1 - residual^2) for a unit input.
    """
    n = state.n_qubits
    amps = state.amplitudes
    coeffs = np.array(
        [amps[idx].sum() / np.sqrt(comb(n, q)) for q, idx in enumerate(dicke_index_sets(n))]
    )
    projected = SymmetricState(n, coeffs)
    # norm of the difference, not sqrt(1 - |c|^2), which loses half the digits
    residual = np.linalg.norm(amps - embed_symmetric(projected).amplitudes)
    return projected, float(residual)


def embed_symmetric(state):
    """Write a Dicke-basis state out in the full computational basis."""
    n = _check_capacity(state.n_qubits)
    amps = np.zeros(2**n, dtype=complex)
    for q, idx in enumerate(dicke_index_sets(n)):
        amps[idx] = state.amplitudes[q] / np.sqrt(comb(n, q))
    return FullState(n, amps)


def full_partial_trace(state, keep):
    """Exact reduced density matrix of the qubits in ``keep`` (in that order)."""
    n = state.n_qubits
    keep = [int(k) for k in keep]
    if not 1 <= len(keep) <= 2:
        raise ValueError(f"keep must list 1 or 2 qubits, got {keep}")
    if len(set(keep)) != len(keep) or any(k < 0 or k >= n for k in keep):
        raise ValueError(f"invalid qubit indices {keep} for N={n}")
    rest = [a for a in range(n) if a not in keep]
    psi = np.transpose(state.tensor(), keep + rest).reshape(2 ** len(keep), -1)
    return ReducedDensityMatrix(psi @ psi.conj().T)


def step_cost(n_qubits, tau=np.pi / 4, repeats=20):
    """Wall time per Floquet step: symmetric subspace vs full space.

    Returns a dict with seconds per step for each path and their ratio.
    """
    from .floquet import build_floquet
    from .symbasis import ALL_ZERO, coherent_state

    n = _check_capacity(n_qubits)
    op = build_floquet(n, tau)
    sym = coherent_state(ALL_ZERO, n).amplitudes
    t0 = time.perf_counter()
    for _ in range(repeats):
        sym = op.matrix @ sym
    t_sym = (time.perf_counter() - t0) / repeats

    full = product_state([1.0, 0.0], n)
    t0 = time.perf_counter()
    for _ in range(repeats):
        full = full_floquet_apply(full, tau)
    t_full = (time.perf_counter() - t0) / repeats
    return {
        "n_qubits": n,
        "symmetric_seconds_per_step": t_sym,
        "full_seconds_per_step": t_full,
        "speedup": t_full / t_sym if t_sym > 0 else float("inf"),
    }
