"""Floquet operator of the kicked infinite-range Ising model in the Dicke basis.

One period is a transverse kick exp(-i tau sum_l sigma^y_l) followed by the
all-to-all Ising phase exp(-i tau sum_{l<l'} sigma^z_l sigma^z_l'). With the
collective spin J_y = sum_l sigma^y_l / 2 the kick is exp(-2i tau J_y), and
sum_{l<l'} z_l z_l' = ((N - 2q)^2 - N)/2 on |w_q>.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from ._linalg import NumericalError, rotation_from_tridiagonal, unitary_eig
from .symbasis import SymmetricState, _check_n

PARITY_RESIDUAL_TOL = 1e-11


class ConsistencyError(RuntimeError):
    """Parity blocks do not decouple: basis and operator disagree."""


@dataclass(frozen=True, eq=False)
class FloquetOperator:
    n_qubits: int
    tau: float
    matrix: np.ndarray

    @property
    def dim(self):
        return self.n_qubits + 1

    @cached_property
    def eig(self):
        """``(eigenvalues, vectors)`` of the matrix, computed once."""
        return unitary_eig(self.matrix)


def spin_y_offdiag(n_qubits):
    """Magnitudes b_q = sqrt(q (N - q + 1)) of <w_{q-1}|J_+|w_q>, q = 1..N.

    J_y has (J_y)[q-1, q] = -i b_q / 2 and (J_y)[q, q-1] = +i b_q / 2.
    """
    q = np.arange(1, n_qubits + 1)
    return np.sqrt(q * (n_qubits - q + 1.0))


def spin_y(n_qubits):
    """Dense J_y matrix for spin N/2 in the Dicke basis."""
    n = _check_n(n_qubits)
    b = spin_y_offdiag(n) / 2
    jy = np.zeros((n + 1, n + 1), dtype=complex)
    idx = np.arange(n)
    jy[idx, idx + 1] = -1j * b
    jy[idx + 1, idx] = 1j * b
    return jy


def ising_phases(n_qubits, tau):
    """Diagonal of exp(-i tau sum_{l<l'} z_l z_l') over |w_q>."""
    q = np.arange(n_qubits + 1)
    return np.exp(-1j * tau * ((n_qubits - 2 * q) ** 2 - n_qubits) / 2)


def kick(n_qubits, tau):
    """exp(-i tau sum_l sigma^y_l) = exp(-2i tau J_y)."""
    n = _check_n(n_qubits)
    return rotation_from_tridiagonal(spin_y_offdiag(n) / 2, 2 * tau)


@lru_cache(maxsize=256)
def _floquet_matrix(n_qubits, tau):
    mat = ising_phases(n_qubits, tau)[:, None] * kick(n_qubits, tau)
    mat.setflags(write=False)
    return mat


def build_floquet(n_qubits, tau):
    n = _check_n(n_qubits)
    tau = float(tau)
    if not np.isfinite(tau):
        raise ValueError(f"tau must be finite, got {tau}")
    return FloquetOperator(n, tau, _floquet_matrix(n, tau))


def operator_power(op, n):
    """U^n via U = V diag(lambda) V^H."""
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise ValueError(f"power must be a nonnegative integer, got {n!r}")
    n = int(n)
    if n == 0:
        return np.eye(op.dim, dtype=complex)
    if n == 1:
        return np.array(op.matrix)
    lam, vecs = op.eig
    return (vecs * lam**n) @ vecs.conj().T


def parity_blocks(op, decomp):
    """Return ``(U_plus, U_minus)`` in the ordered parity basis."""
    if op.n_qubits != decomp.n_qubits:
        raise ValueError(
            f"operator has N={op.n_qubits} but decomposition has N={decomp.n_qubits}"
        )
    b = decomp.basis_matrix
    rotated = b.conj().T @ op.matrix @ b
    p = decomp.plus_dim
    residual = max(
        np.abs(rotated[:p, p:]).max(initial=0.0), np.abs(rotated[p:, :p]).max(initial=0.0)
    )
    if residual >= PARITY_RESIDUAL_TOL:
        raise ConsistencyError(
            f"off-block residual {residual:.3e} >= {PARITY_RESIDUAL_TOL:g} "
            f"(N={op.n_qubits}, tau={op.tau})"
        )
    return rotated[:p, :p], rotated[p:, p:]


@dataclass(frozen=True)
class SpectrumReport:
    """Sorted eigenphases in (-pi, pi] and their degeneracy groups."""

    eigenphases: np.ndarray
    group_centers: np.ndarray
    multiplicities: np.ndarray
    grouping_tol: float

    def degenerate_groups(self):
        return [
            (float(c), int(m))
            for c, m in zip(self.group_centers, self.multiplicities)
            if m > 1
        ]


def _wrap(phase):
    # map into (-pi, pi]
    return np.pi - np.mod(np.pi - phase, 2 * np.pi)


def group_phases(phases, tol):
    """Group sorted phases whose neighbours are within ``tol``, wrapping at +/-pi.

    Returns ``(centers, multiplicities)``; centers are circular means.
    """
    phases = np.sort(np.asarray(phases, dtype=float))
    if len(phases) == 0:
        return np.array([]), np.array([], dtype=int)
    breaks = np.flatnonzero(np.diff(phases) >= tol) + 1
    groups = [list(g) for g in np.split(phases, breaks)]
    if len(groups) > 1 and phases[0] + 2 * np.pi - phases[-1] < tol:
        groups[0] = groups.pop() + groups[0]
    centers = np.array([_wrap(np.angle(np.mean(np.exp(1j * np.array(g))))) for g in groups])
    mults = np.array([len(g) for g in groups])
    order = np.argsort(centers)
    return centers[order], mults[order]


def quasienergy_spectrum(op, grouping_tol=1e-8):
    if not grouping_tol > 0:
        raise ValueError(f"grouping_tol must be positive, got {grouping_tol}")
    lam, _ = op.eig
    moduli = np.abs(lam)
    if not np.all(np.isfinite(moduli)):
        raise NumericalError(f"non-finite eigenvalues for N={op.n_qubits}, tau={op.tau}")
    phases = np.sort(_wrap(np.angle(lam)))
    centers, mults = group_phases(phases, grouping_tol)
    return SpectrumReport(phases, centers, mults, grouping_tol)


def evolve(state, op, n_steps, renorm_tol=1e-12):
    """Apply U ``n_steps`` times by repeated matrix-vector products."""
    for state in trajectory(state, op, n_steps, renorm_tol):
        pass
    return state


def trajectory(state, op, n_steps, renorm_tol=1e-12):
    """Yield the states U^n psi for n = 0..n_steps."""
    if state.n_qubits != op.n_qubits:
        raise ValueError(f"state has N={state.n_qubits} but operator has N={op.n_qubits}")
    if isinstance(n_steps, bool) or int(n_steps) != n_steps or n_steps < 0:
        raise ValueError(f"n_steps must be a nonnegative integer, got {n_steps!r}")
    yield state
    amps = np.array(state.amplitudes)
    mat = op.matrix
    for _ in range(int(n_steps)):
        amps = mat @ amps
        norm = np.linalg.norm(amps)
        drift = abs(norm - 1.0)
        if drift > renorm_tol:
            amps = amps / norm
        else:
            drift = 0.0
        yield SymmetricState(op.n_qubits, amps, norm_drift=drift)
