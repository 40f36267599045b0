"""One- and two-qubit reduced density matrices of symmetric pure states.

Contractions work directly on Dicke amplitudes. If k qubits are kept in a
configuration with s ones and the other N - k qubits hold j ones, the
full-space amplitude is c_{j+s} / sqrt(C(N, j+s)), and there are C(N-k, j)
such configurations. Hence

    <s-config| rho |s'-config> = sum_j C(N-k, j) c_{j+s} conj(c_{j+s'})
                                 / sqrt(C(N, j+s) C(N, j+s'))

which only depends on the number of ones s, s' in the kept configurations.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ._linalg import NumericalError

PSD_TOL = 1e-10

_SIGMA_Y2 = np.array(
    [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=complex
)


@dataclass(frozen=True)
class ReducedDensityMatrix:
    """A 2x2 or 4x4 density matrix in the computational (sigma^z) basis."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape not in ((2, 2), (4, 4)):
            raise ValueError(f"expected a 2x2 or 4x4 matrix, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def validity(self):
        """Deviations ``(hermiticity, trace, min_eigenvalue)``."""
        m = self.matrix
        herm = float(np.abs(m - m.conj().T).max())
        tr = float(abs(np.trace(m) - 1))
        min_ev = float(np.linalg.eigvalsh((m + m.conj().T) / 2).min())
        return herm, tr, min_ev

    def is_valid(self, tol=1e-12):
        herm, tr, min_ev = self.validity()
        return herm < tol and tr < tol and min_ev > -PSD_TOL


def _log_binom(n, k):
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _sector_block(amps, n_kept, s, s_prime):
    """sum_j C(N-k, j) c_{j+s} conj(c_{j+s'}) / sqrt(C(N,j+s) C(N,j+s'))."""
    n = len(amps) - 1
    j = np.arange(n - n_kept + 1)
    log_w = (
        _log_binom(n - n_kept, j)
        - 0.5 * _log_binom(n, j + s)
        - 0.5 * _log_binom(n, j + s_prime)
    )
    return np.sum(np.exp(log_w) * amps[j + s] * np.conj(amps[j + s_prime]))


def rdm1(state):
    """Single-qubit RDM. Closed form:

    rho_00 = sum_q |c_q|^2 (N-q)/N,  rho_11 = sum_q |c_q|^2 q/N,
    rho_01 = sum_q c_q conj(c_{q+1}) sqrt((q+1)(N-q))/N.
    """
    c = state.amplitudes
    n = state.n_qubits
    q = np.arange(n + 1)
    p = np.abs(c) ** 2
    r00 = np.sum(p * (n - q)) / n
    r11 = np.sum(p * q) / n
    r01 = np.sum(c[:-1] * np.conj(c[1:]) * np.sqrt((q[:-1] + 1) * (n - q[:-1]))) / n
    return ReducedDensityMatrix(np.array([[r00, r01], [np.conj(r01), r11]]))


def rdm2(state):
    """Two-qubit RDM in the order |00>, |01>, |10>, |11>."""
    n = state.n_qubits
    if n < 2:
        raise ValueError(f"two-qubit RDM needs N >= 2, got N={n}")
    c = state.amplitudes
    ones = np.array([0, 1, 1, 2])
    blocks = {
        (s, t): _sector_block(c, 2, s, t) for s in range(3) for t in range(s, 3)
    }
    rho = np.empty((4, 4), dtype=complex)
    for a in range(4):
        for b in range(4):
            s, t = ones[a], ones[b]
            rho[a, b] = blocks[(s, t)] if s <= t else np.conj(blocks[(t, s)])
    return ReducedDensityMatrix(rho)


def linear_entropy(rdm):
    """1 - Tr(rho^2)."""
    m = rdm.matrix
    return float(1.0 - np.real(np.sum(m * m.T)))


def wootters_lambdas(rdm):
    """Eigenvalues of (sy sy) rho (sy sy) rho*, decreasing, negatives clipped.

    Uses a general 4x4 eigensolve; clipping applies to values above -1e-10.
    """
    _require_two_qubit(rdm)
    rho = rdm.matrix
    prod = _SIGMA_Y2 @ rho @ _SIGMA_Y2 @ rho.conj()
    try:
        ev = np.linalg.eigvals(prod)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"4x4 eigensolve failed: {exc}") from exc
    ev = np.real_if_close(ev, tol=1e6).real
    if ev.min() < -PSD_TOL:
        raise NumericalError(f"Wootters product has eigenvalue {ev.min():.3e} < 0")
    return np.sort(np.clip(ev, 0.0, None))[::-1]


def concurrence(rdm):
    """Wootters concurrence max(0, l1 - l2 - l3 - l4).

    The l_i are the square roots of the Wootters eigenvalues. They are taken
    as the singular values of sqrt(rho) (sy sy) sqrt(rho)*, whose squares are
    exactly those eigenvalues; singular values are accurate to eps in absolute
    terms, whereas square roots of eigenvalues near zero amplify roundoff to
    ~1e-8.
    """
    _require_two_qubit(rdm)
    rho = rdm.matrix
    evals, vecs = np.linalg.eigh((rho + rho.conj().T) / 2)
    if evals.min() < -PSD_TOL:
        raise NumericalError(f"RDM has eigenvalue {evals.min():.3e} < 0")
    root = (vecs * np.sqrt(np.clip(evals, 0.0, None))) @ vecs.conj().T
    try:
        sv = np.linalg.svd(root @ _SIGMA_Y2 @ root.conj(), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"4x4 SVD failed: {exc}") from exc
    return float(max(0.0, sv[0] - sv[1] - sv[2] - sv[3]))


def _require_two_qubit(rdm):
    if rdm.dim != 4:
        raise ValueError(f"concurrence needs a two-qubit (4x4) RDM, got {rdm.dim}x{rdm.dim}")
