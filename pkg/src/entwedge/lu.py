"""Haar-random local unitaries and the invariance experiment.

Randomness contract: every trial draws from its own substream, derived
from ``SeedSequence(entropy=seed, spawn_key=(trial,))`` feeding a PCG64
generator, so trial k is reproducible in isolation and independent of
how many trials run around it.  Normal variates come from an explicit
Box-Muller transform of uniform doubles rather than the generator's own
normal method, pinning the exact variate stream to this module instead
of to numpy internals.

The experiment itself applies one independent Haar unitary per
subsystem and reports how far the measure moves.  It asserts nothing
about the deviations; it only reports them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, ValidationError
from .measures import DEFAULT_CONFIG, MeasureConfig, resolve_measure
from .states import PureState, validate

UNITARITY_TOL = 1e-10

# Runs longer than this keep only the max deviation, not the full list.
PER_TRIAL_CAP = 10000


@dataclass(frozen=True)
class UnitaryGate:
    """Square matrix checked to be unitary within 1e-10 componentwise."""

    dim: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        dim = int(self.dim)
        entries = np.asarray(self.entries, dtype=np.complex128)
        if entries.shape != (dim, dim):
            raise DimensionMismatchError(
                f"expected a {dim}x{dim} matrix, got shape {entries.shape}"
            )
        defect = float(np.max(np.abs(entries.conj().T @ entries - np.eye(dim))))
        if defect > UNITARITY_TOL:
            raise ValidationError(
                f"matrix deviates from unitary by {defect:.3e} (tol {UNITARITY_TOL:g})"
            )
        arr = entries.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "entries", arr)


@dataclass(frozen=True)
class InvarianceRun:
    """Outcome of one seeded invariance experiment."""

    seed: int
    trials: int
    measure_kind: str
    norm_constant: float
    baseline_value: float
    max_abs_deviation: float
    deviations: tuple | None


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Generator for one trial's substream, independent of all others."""
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(trial),))
    return np.random.Generator(np.random.PCG64(seq))


def standard_normals(rng: np.random.Generator, n: int) -> np.ndarray:
    """n standard normals via Box-Muller on uniform doubles.

    ``log1p(-u)`` keeps the argument strictly positive since ``u`` is
    drawn from [0, 1).
    """
    pairs = (n + 1) // 2
    u1 = rng.random(pairs)
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    angle = 2.0 * math.pi * u2
    return np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:n]


def haar_unitary(dim: int, rng: np.random.Generator) -> UnitaryGate:
    """Haar-distributed unitary from Gram-Schmidt on a Gaussian matrix.

    Columns of an iid complex Gaussian matrix are orthonormalized by
    modified Gram-Schmidt.  The triangular factor this produces has real
    positive diagonal (each entry is a column norm), so the column-phase
    correction that a general QR factorization would require is already
    the identity and the orthonormalized matrix is itself the sample.
    """
    if dim < 1:
        raise DimensionMismatchError(f"dim must be positive, got {dim}")
    flat = standard_normals(rng, 2 * dim * dim)
    z = (flat[: dim * dim] + 1j * flat[dim * dim:]).reshape(dim, dim)
    q = z.astype(np.complex128)
    for k in range(dim):
        for i in range(k):
            q[:, k] -= np.vdot(q[:, i], q[:, k]) * q[:, i]
        q[:, k] /= np.linalg.norm(q[:, k])
    return UnitaryGate(dim, q)


def apply_local(state: PureState, gates) -> PureState:
    """Apply one gate per subsystem, gate j acting on slot j alone."""
    gates = list(gates)
    if len(gates) != state.num_subsystems:
        raise DimensionMismatchError(
            f"got {len(gates)} gates for {state.num_subsystems} subsystems"
        )
    for j, gate in enumerate(gates):
        if gate.dim != state.dims[j]:
            raise DimensionMismatchError(
                f"gate {j + 1} has dim {gate.dim}, subsystem has dim {state.dims[j]}"
            )
    tensor = state.tensor
    for j, gate in enumerate(gates):
        tensor = np.moveaxis(np.tensordot(gate.entries, tensor, axes=([1], [j])), 0, j)
    return PureState(state.dims, tensor.reshape(-1))


def invariance_experiment(
    state: PureState,
    trials: int = 1000,
    seed: int = 0,
    measure: str = "auto",
    cfg: MeasureConfig = DEFAULT_CONFIG,
) -> InvarianceRun:
    """Measure drift under per-subsystem Haar unitaries.

    Runs ``trials`` independent rounds; round k rotates every subsystem
    by a fresh Haar unitary drawn from substream k and records the
    difference from the untouched state's value.  Output is a report of
    the observed deviations, bitwise reproducible for fixed inputs; no
    judgement about invariance is baked in.

    ``deviations`` carries the full per-trial list only up to 10000
    trials; the maximum is always present.
    """
    if trials < 0:
        raise ValidationError(f"trials must be nonnegative, got {trials}")
    if not 0 <= int(seed) < 2 ** 64:
        raise ValidationError(f"seed must fit in 64 bits, got {seed}")
    validate(state, cfg.tol)
    fn = resolve_measure(measure, state.num_subsystems)
    baseline = fn(state, cfg)
    deviations = []
    for k in range(trials):
        rng = trial_rng(seed, k)
        gates = [haar_unitary(n, rng) for n in state.dims]
        rotated = apply_local(state, gates)
        deviations.append(fn(rotated, cfg).value - baseline.value)
    max_abs = max((abs(d) for d in deviations), default=0.0)
    kept = tuple(deviations) if trials <= PER_TRIAL_CAP else None
    return InvarianceRun(
        seed=int(seed),
        trials=int(trials),
        measure_kind=baseline.kind.value,
        norm_constant=baseline.norm_constant,
        baseline_value=baseline.value,
        max_abs_deviation=max_abs,
        deviations=kept,
    )
