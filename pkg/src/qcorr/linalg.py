"""Dense complex linear algebra for bipartite density matrices.

Hermitian eigendecomposition, partial trace, partial transpose, entropies
and purity, all with explicit numerical tolerances. Entropies are reported
in bits throughout the package (a single convention, not an option), with
0 * log 0 = 0 enforced by zeroing eigenvalues below 1e-15.

Matrices are plain complex numpy arrays; a bipartite operator of local
dimensions (dA, dB) lives on a square array of side dA * dB with row-major
(A-major) index ordering. Dense double precision only; the supported
envelope is matrix side <= 4096.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

# Shared tolerances. Hermiticity is checked relative to the largest entry;
# state eigenvalues may dip to -1e-10 from floating-point noise and are
# clipped to zero, anything lower is rejected as a construction bug rather
# than silently masked.
HERMITICITY_RTOL = 1e-12
TRACE_ATOL = 1e-9
EVAL_NEG_TOL = 1e-10
EVAL_ZERO_CUTOFF = 1e-15

MAX_MATRIX_SIDE = 4096


class EigenDecomposition(NamedTuple):
    """Ascending real eigenvalues with matching orthonormal column vectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_matrix(M, name: str = "matrix") -> np.ndarray:
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {A.shape}")
    return A


def _as_square(M, name: str = "matrix") -> np.ndarray:
    A = _as_matrix(M, name)
    if A.shape[0] != A.shape[1]:
        raise ValueError(f"{name} must be square, got shape {A.shape}")
    if A.shape[0] > MAX_MATRIX_SIDE:
        raise ValueError(
            f"{name} side {A.shape[0]} exceeds the dense envelope {MAX_MATRIX_SIDE}"
        )
    return A


def require_hermitian(M, name: str = "matrix") -> np.ndarray:
    """Return M as a square complex array, or raise if it is not Hermitian.

    The check is relative: max|M - M^dag| <= 1e-12 * max|M|.
    """
    A = _as_square(M, name)
    scale = np.abs(A).max() if A.size else 0.0
    if np.abs(A - A.conj().T).max() > HERMITICITY_RTOL * scale:
        raise ValueError(f"{name} is not Hermitian within tolerance")
    return A


def check_bipartite_dims(A: np.ndarray, dims) -> tuple[int, int]:
    """Validate (dimA, dimB) against the side length of A."""
    try:
        dA, dB = dims
    except (TypeError, ValueError):
        raise ValueError(f"dims must be a (dimA, dimB) pair, got {dims!r}") from None
    dA, dB = int(dA), int(dB)
    if dA < 2 or dB < 2:
        raise ValueError(f"local dimensions must be >= 2, got ({dA}, {dB})")
    if A.shape[0] != dA * dB:
        raise ValueError(
            f"matrix side {A.shape[0]} does not match dimA*dimB = {dA * dB}"
        )
    return dA, dB


def hermitian_eigensystem(M) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Returns ascending eigenvalues and orthonormal eigenvector columns;
    deterministic up to rotations inside degenerate subspaces.
    """
    A = require_hermitian(M)
    w, V = np.linalg.eigh(A)
    return EigenDecomposition(w, V)


def partial_trace(rho, dims, side: str) -> np.ndarray:
    """Trace out subsystem `side` ("A" or "B") of a bipartite operator.

    partial_trace(rho, (dA, dB), "B") returns the reduced operator on A,
    of side dA; tracing over "A" returns the reduced operator on B.
    """
    A = _as_square(rho, "state")
    dA, dB = check_bipartite_dims(A, dims)
    r4 = A.reshape(dA, dB, dA, dB)
    if side == "B":
        return np.einsum("abcb->ac", r4)
    if side == "A":
        return np.einsum("abad->bd", r4)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def partial_transpose(rho, dims, side: str) -> np.ndarray:
    """Transpose subsystem `side` of a bipartite operator.

    Preserves Hermiticity and trace; applying it twice on the same side
    returns the input exactly (it is an index permutation).
    """
    A = _as_square(rho, "state")
    dA, dB = check_bipartite_dims(A, dims)
    r4 = A.reshape(dA, dB, dA, dB)
    if side == "B":
        out = r4.transpose(0, 3, 2, 1)
    elif side == "A":
        out = r4.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"side must be 'A' or 'B', got {side!r}")
    return np.ascontiguousarray(out).reshape(dA * dB, dA * dB)


def entropy_of_spectrum(eigenvalues) -> float:
    """Shannon entropy in bits of a spectrum, with 0 * log 0 = 0.

    Eigenvalues in [-1e-10, 0) are clipped to zero; anything lower raises,
    since a more negative value signals an invalid state rather than noise.
    """
    w = np.asarray(eigenvalues, dtype=float).ravel()
    if w.size and w.min() < -EVAL_NEG_TOL:
        raise ValueError(
            f"spectrum has eigenvalue {w.min():.3e} below -{EVAL_NEG_TOL:g}; not a state"
        )
    w = w[w > EVAL_ZERO_CUTOFF]
    if not w.size:
        return 0.0
    return float(-(w * np.log2(w)).sum())


def von_neumann_entropy(rho) -> float:
    """Von Neumann entropy -tr(rho log2 rho) in bits of a density matrix."""
    A = require_hermitian(rho, "state")
    if abs(A.trace() - 1.0) > TRACE_ATOL:
        raise ValueError(f"state must have unit trace, got {A.trace():.12g}")
    return entropy_of_spectrum(np.linalg.eigvalsh(A))


def purity(rho) -> float:
    """tr(rho^2) of a square matrix (real part; imaginary residue ~1e-12)."""
    A = _as_square(rho, "state")
    return float(np.einsum("ij,ji->", A, A).real)


def commutator_norm(A, B) -> float:
    """Frobenius norm of the commutator AB - BA."""
    X = _as_square(A, "A")
    Y = _as_square(B, "B")
    if X.shape != Y.shape:
        raise ValueError(f"operands must have equal shapes, got {X.shape} and {Y.shape}")
    return float(np.linalg.norm(X @ Y - Y @ X))
