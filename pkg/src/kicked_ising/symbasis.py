"""Permutation-symmetric (Dicke) basis, coherent states and the parity basis.

Dicke index convention: ``|w_q>`` has exactly ``q`` qubits in ``|1>``; the
partner state with ``q`` zeros is stored at index ``N - q``.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, xlogy


def _check_n(n_qubits):
    if isinstance(n_qubits, bool) or int(n_qubits) != n_qubits or n_qubits < 1:
        raise ValueError(f"n_qubits must be a positive integer, got {n_qubits!r}")
    return int(n_qubits)


@dataclass(frozen=True)
class SymmetricState:
    """Amplitudes ``c_q`` over the Dicke basis ``|w_0>, ..., |w_N>``.

    ``norm_drift`` records how far the norm had wandered from 1 before the
    last renormalization during evolution (0 when none was needed).
    """

    n_qubits: int
    amplitudes: np.ndarray
    norm_drift: float = field(default=0.0, compare=False)

    def __post_init__(self):
        n = _check_n(self.n_qubits)
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (n + 1,):
            raise ValueError(
                f"expected {n + 1} Dicke amplitudes for N={n}, got shape {amps.shape}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self):
        return self.n_qubits + 1

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self):
        return SymmetricState(self.n_qubits, self.amplitudes / self.norm())

    @classmethod
    def basis_state(cls, n_qubits, q):
        """The Dicke state ``|w_q>``."""
        amps = np.zeros(_check_n(n_qubits) + 1, dtype=complex)
        amps[q] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def random(cls, n_qubits, rng=None):
        """Haar-random normalized state inside the symmetric subspace."""
        rng = np.random.default_rng(rng)
        dim = _check_n(n_qubits) + 1
        amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        return cls(n_qubits, amps / np.linalg.norm(amps))


@dataclass(frozen=True)
class CoherentStateParams:
    """Bloch-sphere angles of an SU(2) coherent state (all spins aligned)."""

    theta0: float
    phi0: float

    def __post_init__(self):
        if not (np.isfinite(self.theta0) and np.isfinite(self.phi0)):
            raise ValueError(f"angles must be finite, got ({self.theta0}, {self.phi0})")


ALL_ZERO = CoherentStateParams(0.0, 0.0)
PLUS_Y = CoherentStateParams(np.pi / 2, -np.pi / 2)


def coherent_state(params, n_qubits):
    """``(cos(t/2)|0> + e^{-i phi} sin(t/2)|1>)^{(x)N}`` in the Dicke basis.

    c_q = sqrt(C(N, q)) cos(t/2)^(N-q) (e^{-i phi} sin(t/2))^q. Magnitudes are
    accumulated in log space so large N does not overflow the binomials.
    """
    n = _check_n(n_qubits)
    q = np.arange(n + 1)
    c = np.cos(params.theta0 / 2)
    s = np.sin(params.theta0 / 2)
    log_binom = gammaln(n + 1) - gammaln(q + 1) - gammaln(n - q + 1)
    log_mag = 0.5 * log_binom + xlogy(n - q, abs(c)) + xlogy(q, abs(s))
    signs = np.sign(c) ** (n - q) * np.sign(s) ** q if (c < 0 or s < 0) else 1.0
    amps = signs * np.exp(log_mag) * np.exp(-1j * params.phi0 * q)
    amps = amps / np.linalg.norm(amps)
    return SymmetricState(n, amps)


def parity_operator(n_qubits):
    """The product of sigma^y over all qubits, restricted to the Dicke basis.

    Pi |w_q> = i^N (-1)^q |w_{N-q}>.
    """
    n = _check_n(n_qubits)
    q = np.arange(n + 1)
    pi_op = np.zeros((n + 1, n + 1), dtype=complex)
    pi_op[n - q, q] = (1j ** n) * (-1.0) ** q
    return pi_op


@dataclass(frozen=True)
class ParityDecomposition:
    """Change of basis from Dicke to parity eigenstates, + block first."""

    n_qubits: int
    basis_matrix: np.ndarray
    plus_dim: int
    minus_dim: int

    @property
    def plus_columns(self):
        return self.basis_matrix[:, : self.plus_dim]

    @property
    def minus_columns(self):
        return self.basis_matrix[:, self.plus_dim :]


def build_parity_basis(n_qubits):
    """Columns ``phi_q^+`` (ascending q) then ``phi_q^-`` (ascending q).

    phi_q^{+/-} = (|w_q> +/- i^(N-2q) |w_{N-q}>)/sqrt(2) for q < N/2; for even
    N the half-filled state |w_{N/2}> is the extra + vector. For even N the
    phase i^(N-2q) equals (-1)^(N/2-q), so one formula covers both parities.
    """
    n = _check_n(n_qubits)
    pairs = (n + 1) // 2
    plus, minus = [], []
    for q in range(pairs):
        phase = 1j ** ((n - 2 * q) % 4)
        for sign, cols in ((1, plus), (-1, minus)):
            v = np.zeros(n + 1, dtype=complex)
            v[q] = 1.0
            v[n - q] = sign * phase
            cols.append(v / np.sqrt(2))
    if n % 2 == 0:
        v = np.zeros(n + 1, dtype=complex)
        v[n // 2] = 1.0
        plus.append(v)
    basis = np.column_stack(plus + minus)
    basis.setflags(write=False)
    return ParityDecomposition(n, basis, len(plus), len(minus))


def to_parity(state, decomp):
    """Coordinates of ``state`` in the ordered parity basis."""
    if state.n_qubits != decomp.n_qubits:
        raise ValueError(
            f"state has N={state.n_qubits} but decomposition has N={decomp.n_qubits}"
        )
    return decomp.basis_matrix.conj().T @ state.amplitudes


def from_parity(coeffs, decomp):
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (decomp.n_qubits + 1,):
        raise ValueError(
            f"expected {decomp.n_qubits + 1} parity coordinates, got shape {coeffs.shape}"
        )
    return SymmetricState(decomp.n_qubits, decomp.basis_matrix @ coeffs)
