"""Exact state-vector algebra for one photon carrying two qubits.

A single photon encodes a polarization qubit (|H>, |V>) and a momentum /
spatial-mode qubit (|R>, |L>).  Joint amplitudes are ordered

    (HR, HL, VR, VL)        index = 2 * polarization + momentum

with H = 0, V = 1 and R = 0, L = 1.  Every module in this package shares
that convention.

Gates are plain complex numpy matrices (2x2 on one qubit, 4x4 on the pair);
states are thin immutable wrappers so normalization stays checked.  All
randomness flows through explicitly injected numpy Generators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

# Tolerances: constructed states must be normalized to 1e-12; unitarity is
# checked to 1e-12; gate application may drift the norm by at most 1e-9
# before renormalization (double precision leaves ample headroom for the
# <= 10 gate compositions used anywhere in this package).
STATE_NORM_TOL = 1e-12
UNITARY_TOL = 1e-12
APPLY_DRIFT_TOL = 1e-9

# Factor indices for partial operations on the joint state.
POLARIZATION = 0
MOMENTUM = 1

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _as_vector(state) -> np.ndarray:
    """Coerce a Qubit, TwoQubitState, or array-like to a complex 1-d array."""
    if isinstance(state, Qubit):
        return state.as_array()
    if isinstance(state, TwoQubitState):
        return state.amps
    return np.asarray(state, dtype=complex).reshape(-1)


@dataclass(frozen=True)
class Qubit:
    """Normalized single-qubit amplitude pair (amp0, amp1)."""

    amp0: complex
    amp1: complex

    def __post_init__(self):
        a0, a1 = complex(self.amp0), complex(self.amp1)
        if not (math.isfinite(a0.real) and math.isfinite(a0.imag)
                and math.isfinite(a1.real) and math.isfinite(a1.imag)):
            raise ValueError("qubit amplitudes must be finite")
        norm_sq = abs(a0) ** 2 + abs(a1) ** 2
        if abs(norm_sq - 1.0) > STATE_NORM_TOL:
            raise ValueError(f"qubit is not normalized: |amp|^2 = {norm_sq!r}")
        object.__setattr__(self, "amp0", a0)
        object.__setattr__(self, "amp1", a1)

    @classmethod
    def normalized(cls, amp0: complex, amp1: complex) -> "Qubit":
        """Build a qubit from unnormalized amplitudes, rescaling to unit norm."""
        norm = math.sqrt(abs(complex(amp0)) ** 2 + abs(complex(amp1)) ** 2)
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(amp0 / norm, amp1 / norm)

    def as_array(self) -> np.ndarray:
        return np.array([self.amp0, self.amp1], dtype=complex)

    # Named kets.  Polarization: H/V computational pair and the two diagonal
    # states; momentum: R/L beam positions.  basis0/basis1 and plus/minus are
    # the generic computational and conjugate pairs for abstract qubits.
    @classmethod
    def h(cls) -> "Qubit":
        return cls(1.0, 0.0)

    @classmethod
    def v(cls) -> "Qubit":
        return cls(0.0, 1.0)

    @classmethod
    def plus45(cls) -> "Qubit":
        return cls(_INV_SQRT2, _INV_SQRT2)

    @classmethod
    def minus45(cls) -> "Qubit":
        return cls(_INV_SQRT2, -_INV_SQRT2)

    @classmethod
    def r(cls) -> "Qubit":
        return cls(1.0, 0.0)

    @classmethod
    def l(cls) -> "Qubit":
        return cls(0.0, 1.0)

    basis0 = h
    basis1 = v
    plus = plus45
    minus = minus45


@dataclass(frozen=True)
class TwoQubitState:
    """Normalized joint state of the polarization and momentum qubits.

    ``amps`` is a read-only complex array ordered (HR, HL, VR, VL).
    """

    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.shape != (4,):
            raise ValueError("a two-qubit state needs exactly 4 amplitudes")
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("state amplitudes must be finite")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > STATE_NORM_TOL:
            raise ValueError(f"state is not normalized: |amp|^2 = {norm_sq!r}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_qubits(cls, polarization: Qubit, momentum: Qubit) -> "TwoQubitState":
        return cls(np.kron(polarization.as_array(), momentum.as_array()))

    @classmethod
    def normalized(cls, amps) -> "TwoQubitState":
        amps = np.asarray(amps, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(amps))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(amps / norm)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


@dataclass(frozen=True)
class MeasurementOutcome:
    """Which projector fired (0-based) and the normalized post-measurement state."""

    index: int
    post_state: Union[TwoQubitState, Qubit]


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u, dtype=complex)
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))) <= tol)


def hwp_rotation(theta: float) -> np.ndarray:
    """Polarization rotation by ``theta``: [[cos, -sin], [sin, cos]] on (H, V).

    Wave-plate gates are modeled as ideal SO(2) rotations; only probabilities
    and relative phases within this convention matter downstream.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError("rotation angle must be finite")
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


def pcnot() -> np.ndarray:
    """Polarization-controlled NOT on momentum: swaps the VR and VL amplitudes."""
    u = np.eye(4, dtype=complex)
    u[[2, 3]] = u[[3, 2]]
    return u


def mcnot() -> np.ndarray:
    """Momentum-controlled NOT on polarization: swaps the HL and VL amplitudes."""
    u = np.eye(4, dtype=complex)
    u[[1, 3]] = u[[3, 1]]
    return u


def swap_gate() -> np.ndarray:
    """Exchange the polarization and momentum qubits.

    Realized as the three-CNOT cascade M-CNOT . P-CNOT . M-CNOT, which equals
    the plain qubit-exchange permutation (HL <-> VR).
    """
    return mcnot() @ pcnot() @ mcnot()


def apply(u: np.ndarray, s: TwoQubitState) -> TwoQubitState:
    """Apply a 4x4 unitary to the joint state and renormalize."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (4, 4):
        raise ValueError("expected a 4x4 matrix")
    out = u @ s.amps
    norm = float(np.linalg.norm(out))
    if abs(norm - 1.0) > APPLY_DRIFT_TOL:
        raise RuntimeError(f"norm drifted to {norm!r} under gate application")
    return TwoQubitState(out / norm)


def _born_index(weights: np.ndarray, rng: np.random.Generator) -> int:
    """Sample an index with probability proportional to ``weights``.

    Cumulative sampling with a strict comparison, so an exactly-zero weight
    can never fire.
    """
    total = float(weights.sum())
    cum = np.cumsum(weights / total)
    idx = int(np.searchsorted(cum, rng.random(), side="right"))
    if idx >= len(weights):  # guard the u ~ 1.0 edge
        idx = int(np.nonzero(weights > 0.0)[0][-1])
    return idx


def measure(s: TwoQubitState, basis: Sequence, rng: np.random.Generator) -> MeasurementOutcome:
    """Projective measurement of the joint state onto a complete rank-1 basis.

    ``basis`` is a sequence of four orthonormal vectors (TwoQubitState or
    array-like).  Outcome i fires with probability |<basis_i|s>|^2; the post
    state is the normalized projection onto the fired basis vector.
    """
    vectors = np.array([_as_vector(b) for b in basis], dtype=complex)
    if vectors.shape != (4, 4):
        raise ValueError("expected 4 basis vectors of dimension 4")
    gram = vectors.conj() @ vectors.T
    if np.max(np.abs(gram - np.eye(4))) > STATE_NORM_TOL:
        raise ValueError("basis is not orthonormal and complete")
    overlaps = vectors.conj() @ s.amps
    probs = np.abs(overlaps) ** 2
    idx = _born_index(probs, rng)
    phase = overlaps[idx] / abs(overlaps[idx])
    return MeasurementOutcome(idx, TwoQubitState(phase * vectors[idx]))


def measure_qubit(q: Qubit, basis: Sequence[Qubit], rng: np.random.Generator) -> tuple[int, Qubit]:
    """Two-outcome projective measurement of a single qubit."""
    vectors = np.array([_as_vector(b) for b in basis], dtype=complex)
    if vectors.shape != (2, 2):
        raise ValueError("expected 2 basis vectors of dimension 2")
    gram = vectors.conj() @ vectors.T
    if np.max(np.abs(gram - np.eye(2))) > STATE_NORM_TOL:
        raise ValueError("basis is not orthonormal and complete")
    overlaps = vectors.conj() @ q.as_array()
    probs = np.abs(overlaps) ** 2
    idx = _born_index(probs, rng)
    phase = overlaps[idx] / abs(overlaps[idx])
    post = phase * vectors[idx]
    return idx, Qubit(post[0], post[1])


def measure_factor(
    s: TwoQubitState,
    basis: Sequence[Qubit],
    factor: int,
    rng: np.random.Generator,
) -> tuple[int, TwoQubitState]:
    """Measure one qubit of the joint state, leaving the other coherent.

    ``factor`` is POLARIZATION or MOMENTUM; ``basis`` is an orthonormal pair
    for that qubit.  Returns (outcome index, post-measurement joint state).
    The untouched qubit keeps whatever (now pure) state the collapse leaves
    it in.
    """
    if factor not in (POLARIZATION, MOMENTUM):
        raise ValueError("factor must be POLARIZATION or MOMENTUM")
    b0, b1 = (_as_vector(basis[0]), _as_vector(basis[1]))
    if (abs(np.vdot(b0, b1)) > STATE_NORM_TOL
            or abs(np.vdot(b0, b0) - 1.0) > STATE_NORM_TOL
            or abs(np.vdot(b1, b1) - 1.0) > STATE_NORM_TOL):
        raise ValueError("basis pair is not orthonormal")
    amp = s.amps.reshape(2, 2)  # [polarization, momentum]
    if factor == MOMENTUM:
        partial = [amp @ b0.conj(), amp @ b1.conj()]
    else:
        partial = [b0.conj() @ amp, b1.conj() @ amp]
    probs = np.array([float(np.vdot(p, p).real) for p in partial])
    idx = _born_index(probs, rng)
    kept = partial[idx] / math.sqrt(probs[idx])
    if factor == MOMENTUM:
        post = np.kron(kept, (b0, b1)[idx])
    else:
        post = np.kron((b0, b1)[idx], kept)
    return idx, TwoQubitState(post)


def equal_up_to_global_phase(a, b, tol: float = 1e-9) -> bool:
    """True iff the normalized states a and b satisfy |<a|b>| >= 1 - tol."""
    va, vb = _as_vector(a), _as_vector(b)
    return bool(abs(np.vdot(va, vb)) >= 1.0 - tol)
