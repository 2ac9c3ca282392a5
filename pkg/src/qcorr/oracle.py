"""Matrix-based measures computed without any family formulas.

Measured conditional entropies for explicit bases, seeded multi-start
minimization over rank-one projective measurement bases for discord and
geometric discord, spectral negativity, optimal-measurement structure
checks, and ensemble sweeps of the geometric-discord/negativity
inequality. Together these provide an independent numerical route against
which every closed form in the package is cross-checked.

The measurement search is restricted to orthonormal (rank-one projective)
bases on the measured side; for states outside the implemented families
the minimized value is therefore an upper bound on the discord. Bases are
parametrized as a product of d(d-1)/2 complex Givens rotations (two angles
each) applied to a restart basis; restart 0 uses an eigenbasis of the
measured marginal, the rest are Haar-random with deterministic per-restart
seeds, and each restart runs a derivative-free simplex descent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import closed_forms
from .linalg import (
    EVAL_ZERO_CUTOFF,
    commutator_norm,
    hermitian_eigensystem,
    partial_trace,
    partial_transpose,
    purity,
    von_neumann_entropy,
)
from .states import (
    DensityMatrix,
    PseudoPureParams,
    _haar_unitary,
    build_pseudo_pure,
    random_schmidt_vector,
)

MAX_MEASURED_DIM = 8
ZERO_PROBABILITY = 1e-14
BASIS_ORTHONORMALITY_ATOL = 1e-10
DEGENERACY_GAP_ATOL = 1e-10

OPTIMAL_BASIS_GAP_TOL = 1e-6
COMMUTATOR_NORM_TOL = 1e-8
CONJECTURE_GAP_TOL = 1e-10

_SIMPLEX_STEP = 0.25


@dataclass(frozen=True)
class OptimizerConfig:
    """Multi-start settings for the measurement-basis minimizations."""

    restarts: int = 32
    max_iterations: int = 2000
    objective_tolerance: float = 1e-9
    step_tolerance: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.objective_tolerance <= 0 or self.step_tolerance <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class OptimizerResult:
    """Best value found, its basis, and per-restart diagnostics."""

    value: float
    argmin_basis: np.ndarray
    per_restart_values: tuple[float, ...]
    converged: bool


@dataclass(frozen=True)
class ConditionalEnsemble:
    """Outcome probabilities and normalized conditional states on side A.

    Outcomes with probability <= 1e-14 carry the maximally mixed state by
    convention and are excluded from entropy averages.
    """

    probabilities: np.ndarray
    conditional_states: tuple[np.ndarray, ...]

    def blocks(self) -> tuple[np.ndarray, ...]:
        """Unnormalized blocks p_k * rho^A_k."""
        return tuple(p * s for p, s in zip(self.probabilities, self.conditional_states))


def _check_basis(basis, d: int) -> np.ndarray:
    B = np.asarray(basis, dtype=complex)
    if B.shape != (d, d):
        raise ValueError(f"basis must be a {d} x {d} matrix of columns, got shape {B.shape}")
    gram = B.conj().T @ B
    if np.abs(gram - np.eye(d)).max() > BASIS_ORTHONORMALITY_ATOL:
        raise ValueError("basis columns are not orthonormal within 1e-10")
    return B


def _paired_b_indices(rho4: np.ndarray) -> np.ndarray:
    """Regroup rho[a,b,c,d] as a (dA*dA, dB, dB) stack over the B indices."""
    dA, dB = rho4.shape[0], rho4.shape[1]
    return np.ascontiguousarray(rho4.transpose(0, 2, 1, 3)).reshape(dA * dA, dB, dB)


def _measurement_blocks(r2: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Stack of unnormalized post-measurement blocks tau_k = <eta_k|rho|eta_k>.

    r2 comes from _paired_b_indices; B holds the basis vectors as columns.
    """
    dB = B.shape[0]
    dA = int(round(math.sqrt(r2.shape[0])))
    # tau[(a,c), k] = sum_{b,d} conj(B[b,k]) r2[(a,c), b, d] B[d,k]
    contracted = (B.conj()[None, :, :] * (r2 @ B)).sum(axis=1)
    return contracted.reshape(dA, dA, dB).transpose(2, 0, 1)


def _ce_of_blocks(tau: np.ndarray) -> float:
    """Average conditional entropy sum_k p_k S(tau_k / p_k), in bits."""
    p = np.einsum("kaa->k", tau).real
    keep = p > ZERO_PROBABILITY
    if not keep.any():
        return 0.0
    states = tau[keep] / p[keep, None, None]
    w = np.clip(np.linalg.eigvalsh(states), 0.0, None)
    logs = np.log2(np.clip(w, EVAL_ZERO_CUTOFF, None))
    entropies = -np.where(w > EVAL_ZERO_CUTOFF, w * logs, 0.0).sum(axis=1)
    return float(p[keep] @ entropies)


def conditional_ensemble(rho: DensityMatrix, basis) -> ConditionalEnsemble:
    """Measure side B of `rho` in `basis` (columns are the basis vectors)."""
    dA, dB = rho.dims
    B = _check_basis(basis, dB)
    tau = _measurement_blocks(_paired_b_indices(rho.matrix.reshape(dA, dB, dA, dB)), B)
    probs = np.einsum("kaa->k", tau).real.copy()
    states = []
    for k in range(dB):
        if probs[k] > ZERO_PROBABILITY:
            block = tau[k] / probs[k]
            states.append((block + block.conj().T) / 2.0)
        else:
            states.append(np.eye(dA, dtype=complex) / dA)
    return ConditionalEnsemble(probs, tuple(states))


def measured_conditional_entropy(rho: DensityMatrix, basis) -> float:
    """sum_k p_k S(rho^A_k) for a measurement of side B in `basis`, in bits."""
    dA, dB = rho.dims
    B = _check_basis(basis, dB)
    r2 = _paired_b_indices(rho.matrix.reshape(dA, dB, dA, dB))
    return _ce_of_blocks(_measurement_blocks(r2, B))


def _givens_basis(x: np.ndarray, base: np.ndarray) -> np.ndarray:
    """Apply the product of complex Givens rotations with angles x to `base`.

    x holds (theta, phi) for each column pair i < j; each rotation is
    exactly unitary, so the columns stay orthonormal.
    """
    d = base.shape[0]
    U = np.array(base, copy=True)
    idx = 0
    for i in range(d - 1):
        for j in range(i + 1, d):
            theta = x[idx]
            phi = x[idx + 1]
            idx += 2
            c = math.cos(theta)
            s = math.sin(theta)
            e = complex(math.cos(phi), math.sin(phi))
            col_i = U[:, i].copy()
            col_j = U[:, j].copy()
            U[:, i] = c * col_i + s * e * col_j
            U[:, j] = -s * e.conjugate() * col_i + c * col_j
    return U


def _minimize_over_bases(rho: DensityMatrix, cfg: OptimizerConfig, value_of_blocks) -> OptimizerResult:
    """Multi-start simplex descent of a blocks functional over projective bases."""
    dA, dB = rho.dims
    if dB > MAX_MEASURED_DIM:
        raise ValueError(
            f"measured dimension {dB} exceeds the optimization envelope {MAX_MEASURED_DIM}"
        )
    r2 = _paired_b_indices(rho.matrix.reshape(dA, dB, dA, dB))
    eig_basis = hermitian_eigensystem(partial_trace(rho.matrix, rho.dims, "A")).eigenvectors

    def value_at(B: np.ndarray) -> float:
        return value_of_blocks(_measurement_blocks(r2, B))

    n = dB * (dB - 1)
    simplex = np.zeros((n + 1, n))
    simplex[1:] = np.eye(n) * _SIMPLEX_STEP

    best_value = math.inf
    best_basis = eig_basis
    per_restart: list[float] = []
    converged = False
    for r in range(cfg.restarts):
        if r == 0:
            base = eig_basis
        else:
            base = _haar_unitary(dB, np.random.default_rng([cfg.seed, r]))
        # track the best point actually evaluated, not just the final simplex
        tracker = [value_at(base), base]

        def objective(x, base=base, tracker=tracker):
            B = _givens_basis(x, base)
            v = value_at(B)
            if v < tracker[0]:
                tracker[0] = v
                tracker[1] = B
            return v

        result = minimize(
            objective,
            np.zeros(n),
            method="Nelder-Mead",
            options={
                "maxiter": cfg.max_iterations,
                "maxfev": 2 * cfg.max_iterations,
                "xatol": cfg.step_tolerance,
                "fatol": cfg.objective_tolerance,
                "initial_simplex": simplex,
                "adaptive": n > 12,
            },
        )
        converged = converged or bool(result.success)
        per_restart.append(tracker[0])
        if tracker[0] < best_value:
            best_value = tracker[0]
            best_basis = tracker[1]
    return OptimizerResult(best_value, best_basis, tuple(per_restart), converged)


def minimize_conditional_entropy(rho: DensityMatrix, cfg: OptimizerConfig) -> OptimizerResult:
    """Minimize the measured conditional entropy over projective bases on B."""
    return _minimize_over_bases(rho, cfg, _ce_of_blocks)


def discord_numeric(rho: DensityMatrix, cfg: OptimizerConfig) -> float:
    """Discord from matrices alone: S(rho^B) - S(rho) plus the minimized
    conditional entropy."""
    s_b = von_neumann_entropy(partial_trace(rho.matrix, rho.dims, "A"))
    s_ab = von_neumann_entropy(rho.matrix)
    return s_b - s_ab + minimize_conditional_entropy(rho, cfg).value


def mutual_information_numeric(rho: DensityMatrix) -> float:
    """S(rho^A) + S(rho^B) - S(rho) from the eigensystems."""
    s_a = von_neumann_entropy(partial_trace(rho.matrix, rho.dims, "B"))
    s_b = von_neumann_entropy(partial_trace(rho.matrix, rho.dims, "A"))
    return s_a + s_b - von_neumann_entropy(rho.matrix)


def gd_objective(rho: DensityMatrix, basis) -> float:
    """tr(rho^2) - sum_k tr(tau_k^2) for a measurement of side B in `basis`."""
    dA, dB = rho.dims
    B = _check_basis(basis, dB)
    tau = _measurement_blocks(_paired_b_indices(rho.matrix.reshape(dA, dB, dA, dB)), B)
    return purity(rho.matrix) - float(np.einsum("kab,kab->", tau, tau.conj()).real)


def gd_numeric(rho: DensityMatrix, cfg: OptimizerConfig) -> float:
    """Geometric discord: d/(d-1) times the minimized purity loss."""
    base_purity = purity(rho.matrix)

    def value_of_blocks(tau: np.ndarray) -> float:
        return base_purity - float(np.einsum("kab,kab->", tau, tau.conj()).real)

    result = _minimize_over_bases(rho, cfg, value_of_blocks)
    dB = rho.dims[1]
    return dB / (dB - 1.0) * result.value


def negativity_numeric(rho: DensityMatrix) -> float:
    """Normalized negativity 2/(d-1) |sum of negative eigenvalues of rho^Gamma|.

    Eigenvalues in [-1e-12, 0) are treated as zero.
    """
    dA, dB = rho.dims
    if dA != dB:
        raise ValueError("negativity is defined here for equal local dimensions")
    w = hermitian_eigensystem(partial_transpose(rho.matrix, rho.dims, "B")).eigenvalues
    total = w[w < -1e-12].sum()
    return float(2.0 * abs(total) / (dA - 1.0))


@dataclass(frozen=True)
class OptimalMeasurementReport:
    """Diagnostics of the optimal-measurement structure check.

    entropy_gap compares the conditional entropy in an eigenbasis of the
    measured marginal against the optimizer minimum; max_commutator is the
    largest pairwise commutator norm of the conditional states in that
    eigenbasis. For a degenerate marginal the argmin basis must also
    diagonalize it (argmin_offdiagonal).
    """

    entropy_gap: float
    max_commutator: float
    marginal_degenerate: bool
    argmin_offdiagonal: float
    passed: bool
    optimizer: OptimizerResult


def optimal_measurement_check(rho: DensityMatrix, cfg: OptimizerConfig) -> OptimalMeasurementReport:
    """Check that projecting in an eigenbasis of the measured marginal is
    optimal and leaves commuting conditional states."""
    marginal = partial_trace(rho.matrix, rho.dims, "A")
    evals, evecs = hermitian_eigensystem(marginal)
    degenerate = bool(evals.size > 1 and np.diff(evals).min() < DEGENERACY_GAP_ATOL)

    eigenbasis_value = measured_conditional_entropy(rho, evecs)
    opt = minimize_conditional_entropy(rho, cfg)
    gap = eigenbasis_value - opt.value

    conjugated = opt.argmin_basis.conj().T @ marginal @ opt.argmin_basis
    offdiag = float(np.abs(conjugated - np.diag(np.diag(conjugated))).max())

    ensemble = conditional_ensemble(rho, evecs)
    states = ensemble.conditional_states
    max_comm = 0.0
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            max_comm = max(max_comm, commutator_norm(states[i], states[j]))

    passed = gap <= OPTIMAL_BASIS_GAP_TOL and max_comm <= COMMUTATOR_NORM_TOL
    if degenerate:
        passed = passed and offdiag <= COMMUTATOR_NORM_TOL
    return OptimalMeasurementReport(gap, max_comm, degenerate, offdiag, passed, opt)


@dataclass(frozen=True)
class ConjectureReport:
    """Result of a geometric-discord vs squared-negativity ensemble sweep."""

    samples: int
    min_gap: float
    worst_case: PseudoPureParams
    violations: int
    checked: int = 0
    max_gd_gap: float = 0.0
    max_negativity_gap: float = 0.0


def conjecture_sweep(samples: int, d_range: tuple[int, int], seed: int) -> ConjectureReport:
    """Sample pseudo-pure states and check gd >= negativity^2.

    Draws d uniformly in d_range, alpha uniformly in [0, 1] and a Haar
    Schmidt vector per sample; evaluates the closed forms for every sample
    and additionally cross-checks the matrix-based pair on a deterministic
    5% subset (every 20th sample within the optimization envelope).
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    dmin, dmax = int(d_range[0]), int(d_range[1])
    if not 2 <= dmin <= dmax:
        raise ValueError(f"need 2 <= dmin <= dmax, got ({dmin}, {dmax})")

    rng = np.random.default_rng(seed)
    min_gap = math.inf
    worst: PseudoPureParams | None = None
    violations = 0
    checked = 0
    max_gd_gap = 0.0
    max_neg_gap = 0.0
    for index in range(samples):
        d = int(rng.integers(dmin, dmax + 1))
        alpha = float(rng.uniform())
        u = random_schmidt_vector(d, int(rng.integers(0, 2**63 - 1)))
        params = PseudoPureParams(d, alpha, u)
        gd = closed_forms.pp_gd(params)
        neg = closed_forms.pp_negativity(params)
        gap = gd - neg * neg
        if gap < min_gap:
            min_gap = gap
            worst = params
        if gap < -CONJECTURE_GAP_TOL:
            violations += 1
        if index % 20 == 0 and d <= MAX_MEASURED_DIM:
            rho = build_pseudo_pure(params)
            cfg = OptimizerConfig(restarts=4, seed=int(np.random.SeedSequence([seed, index]).generate_state(1)[0]))
            max_gd_gap = max(max_gd_gap, abs(gd_numeric(rho, cfg) - gd))
            max_neg_gap = max(max_neg_gap, abs(negativity_numeric(rho) - neg))
            checked += 1
    return ConjectureReport(
        samples=samples,
        min_gap=min_gap,
        worst_case=worst,
        violations=violations,
        checked=checked,
        max_gd_gap=max_gd_gap,
        max_negativity_gap=max_neg_gap,
    )
