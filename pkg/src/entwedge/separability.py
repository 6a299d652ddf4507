"""Separability certification across bipartitions.

A normalized state is separable across a split exactly when its
matricization across that split has rank one, i.e. when every 2x2 minor
vanishes.  The residual computed here is the sum of all squared minor
moduli (each counted twice); it equals ``1 - purity`` of either side's
reduced density matrix, which the tests verify as an independent route.

For a fully separable state the per-subsystem factors are recovered as
dominant eigenvectors of the subsystem Gram matrices, by plain power
iteration, and the tensor product of the factors is checked against the
input up to a global phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import _kernels
from .errors import InvalidPartitionError
from .states import Bipartition, PureState, enumerate_bipartitions, matricize, validate

DEFAULT_THRESHOLD = 1e-10

# Power-iteration controls for certificate extraction.
POWER_TOL = 1e-12
POWER_MAX_ITERS = 10000

# A certificate must rebuild the state, up to global phase, this closely.
CERTIFICATE_TOL = 1e-8


@dataclass(frozen=True)
class PartitionVerdict:
    residual: float
    separable: bool


@dataclass(frozen=True)
class SeparabilityReport:
    """Residuals and verdicts for every canonical bipartition.

    ``per_partition`` is keyed by :class:`Bipartition` in enumeration
    order (singletons first).  ``certificate`` holds one unit vector per
    subsystem when the state is fully separable, otherwise ``None``;
    ``certificate_error`` is the phase-aligned reconstruction distance.
    """

    threshold: float
    per_partition: dict
    fully_separable: bool
    certificate: tuple | None
    certificate_error: float | None


def partition_residual(state: PureState, part: Bipartition) -> float:
    """Sum of squared 2x2 minor moduli of the split's matricization.

    Zero exactly when the state factors across the split; equals
    ``1 - purity`` of the left side's marginal for normalized input.
    """
    validate(state)
    return _kernels.minor_pair_sum(matricize(state, part))


def is_product_state(state: PureState, threshold: float = DEFAULT_THRESHOLD) -> bool:
    """True when every single-subsystem split passes the threshold."""
    validate(state)
    m = state.num_subsystems
    if m < 2:
        return True  # nothing to split
    return all(
        partition_residual(state, Bipartition((j,), m)) <= threshold
        for j in range(1, m + 1)
    )


def separability_report(
    state: PureState, threshold: float = DEFAULT_THRESHOLD
) -> SeparabilityReport:
    """Residual and verdict for all ``2**(m-1) - 1`` canonical splits.

    Full separability is decided by the single-subsystem splits alone;
    when they all pass, the per-subsystem factors are extracted and the
    reconstruction is verified up to a global phase.
    """
    validate(state)
    m = state.num_subsystems
    if m < 2:
        raise InvalidPartitionError(f"need at least 2 subsystems, got {m}")
    per = {}
    for part in enumerate_bipartitions(m):
        residual = partition_residual(state, part)
        per[part] = PartitionVerdict(residual, residual <= threshold)
    # Singleton splits decide full separability; on two subsystems the
    # {2} split canonicalizes to {1}, so look keys up in canonical form.
    fully = all(
        per[Bipartition((j,), m).canonical()].separable for j in range(1, m + 1)
    )
    certificate = None
    error = None
    if fully:
        factors = tuple(
            _dominant_factor(matricize(state, Bipartition((j,), m)))
            for j in range(1, m + 1)
        )
        certificate = factors
        error = _reconstruction_error(state, factors)
    return SeparabilityReport(float(threshold), per, fully, certificate, error)


def _phase_fixed(v: np.ndarray) -> np.ndarray:
    """Rotate so the largest-modulus component (first occurrence) is real
    and nonnegative, making the iteration and its limit deterministic."""
    k = int(np.argmax(np.abs(v)))
    z = v[k]
    if z == 0:
        return v
    return v * (z.conjugate() / abs(z))


def _dominant_factor(mat: np.ndarray) -> np.ndarray:
    """Dominant left singular vector of ``mat`` via power iteration on
    its Gram matrix, started from the largest diagonal entry."""
    gram = mat @ mat.conj().T
    n = gram.shape[0]
    x = np.zeros(n, dtype=np.complex128)
    x[int(np.argmax(np.diag(gram).real))] = 1.0
    for _ in range(POWER_MAX_ITERS):
        y = gram @ x
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            break  # start vector sits in the kernel; keep what we have
        y = _phase_fixed(y / norm)
        done = float(np.linalg.norm(y - x)) <= POWER_TOL
        x = y
        if done:
            break
    x = x.copy()
    x.setflags(write=False)
    return x


def _reconstruction_error(state: PureState, factors) -> float:
    """Distance between the factor product and the state, minimized over
    a global phase."""
    rebuilt = reduce(np.kron, factors)
    overlap = np.vdot(rebuilt, state.amplitudes)
    if abs(overlap) == 0.0:
        return float(np.linalg.norm(rebuilt))  # orthogonal, no phase helps
    aligned = state.amplitudes * (overlap.conjugate() / abs(overlap))
    return float(np.linalg.norm(rebuilt - aligned))
