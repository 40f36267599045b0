"""Eigendecompositions used by the Floquet code.

``rotation_from_tridiagonal`` exponentiates an angular-momentum-like generator
through a real symmetric tridiagonal eigensolve. ``unitary_eig`` diagonalizes a
unitary matrix through Hermitian eigenproblems only: first the Hermitian part
``A = (U + U^H)/2``, then ``B = (U - U^H)/(2i)`` restricted to each degenerate
eigenspace of ``A``, followed by a short Newton refinement of the eigenvectors.
"""

import numpy as np
from scipy.linalg import eigh_tridiagonal


class NumericalError(RuntimeError):
    """An eigensolver or consistency check failed numerically."""


def _clusters(values, tol):
    """Index runs of sorted ``values`` whose consecutive gaps are below ``tol``."""
    if len(values) == 0:
        return []
    breaks = np.flatnonzero(np.diff(values) >= tol) + 1
    return np.split(np.arange(len(values)), breaks)


def _split(u, basis, tol, level):
    # level 0: Hermitian part, level 1: anti-Hermitian part, level 2: Hermitian
    # part after rotating the cluster's mean phase onto the linear slope of cos
    c = basis.conj().T @ u @ basis
    if level == 0:
        shift = 1.0
    elif level == 1:
        shift = -1j
    else:
        tr = np.trace(c)
        shift = np.exp(-1j * (np.angle(tr) - np.pi / 2)) if abs(tr) > 0 else 1.0
    m = c * shift
    try:
        vals, w = np.linalg.eigh((m + m.conj().T) / 2)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"Hermitian eigensolve failed (dim={len(m)}, level={level}): {exc}"
        ) from exc
    out = basis @ w
    if level < 2:
        for idx in _clusters(vals, tol):
            if len(idx) > 1:
                out[:, idx] = _split(u, out[:, idx], tol, level + 1)
    return out


def _nearest_unitary(v):
    a, _, bh = np.linalg.svd(v)
    return a @ bh


def unitary_eig(u, degeneracy_tol=1e-9, refine_sweeps=2):
    """Return ``(eigenvalues, vectors)`` with ``u = V diag(eigenvalues) V^H``.

    Eigenvalues are normalized to the unit circle; ``V`` is unitary to
    working precision.
    """
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    if u.ndim != 2 or u.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {u.shape}")
    if not np.all(np.isfinite(u)):
        raise NumericalError("matrix contains non-finite entries")

    v = _split(u, np.eye(n, dtype=complex), degeneracy_tol, 0)

    # Near (but not exactly) degenerate cos values leave O(eps/gap) mixing
    # between clusters; first-order perturbation removes it.
    for _ in range(refine_sweeps):
        c = v.conj().T @ u @ v
        lam = np.diag(c).copy()
        off = c - np.diag(lam)
        diff = lam[None, :] - lam[:, None]
        ok = np.abs(diff) > 1e3 * np.abs(off)
        np.fill_diagonal(ok, False)
        corr = np.zeros_like(c)
        corr[ok] = off[ok] / diff[ok]
        v = _nearest_unitary(v + v @ corr)

    rq = np.einsum("ij,ik,kj->j", v.conj(), u, v)
    moduli = np.abs(rq)
    if np.any(np.abs(moduli - 1) > 1e-6):
        raise NumericalError(
            f"eigenvector split failed: Rayleigh quotient moduli deviate from 1 "
            f"by up to {np.abs(moduli - 1).max():.3e} (n={n})"
        )
    return rq / moduli, v


def rotation_from_tridiagonal(offdiag, angle):
    """``exp(-i * angle * G)`` for the Hermitian tridiagonal generator ``G``.

    ``G`` has zero diagonal, upper off-diagonal ``-i * offdiag`` and lower
    off-diagonal ``+i * offdiag`` (the form of J_y in a J_z eigenbasis). The
    phase similarity ``S = diag(i^q)`` turns it into the real symmetric
    tridiagonal matrix with off-diagonal ``offdiag``.
    """
    offdiag = np.asarray(offdiag, dtype=float)
    dim = len(offdiag) + 1
    if dim == 1:
        return np.ones((1, 1), dtype=complex)
    evals, evecs = eigh_tridiagonal(np.zeros(dim), offdiag)
    w = (1j ** np.arange(dim))[:, None] * evecs
    return (w * np.exp(-1j * angle * evals)) @ w.conj().T
