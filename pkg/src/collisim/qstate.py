"""Pure-state register algebra for small qubit systems.

Conventions used throughout the package:

* big-endian ordering: register index 0 is the most significant bit of
  the computational-basis index, so |q0 q1 ... q_{n-1}> sits at position
  sum_k q_k 2^{n-1-k};
* amplitudes are flat complex128 arrays of length 2^n;
* reduced density matrices keep their qubits in ascending register
  order.

Arrays handed out by these functions are not defensively copied; treat
them as read-only.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jacobi import hermitian_eig, hermitian_eigenvalues

__all__ = [
    "QubitRegister",
    "PureState",
    "DensityMatrix",
    "ground_state",
    "from_amplitudes",
    "apply_local_unitary",
    "partial_trace",
    "reduce_density_matrix",
    "partial_transpose",
    "tensor_product",
    "hermitian_eig",
    "hermitian_eigenvalues",
    "renormalization_count",
    "reset_renormalization_count",
]

# Norm drift up to this is left untouched ...
DRIFT_KEEP = 1e-12
# ... up to this it is renormalized (and counted); beyond it the state is rejected.
DRIFT_REJECT = 1e-10

_renormalizations = 0


def renormalization_count() -> int:
    """Number of silent renormalizations performed in this process."""
    return _renormalizations


def reset_renormalization_count() -> None:
    global _renormalizations
    _renormalizations = 0


@dataclass(frozen=True, eq=False)
class QubitRegister:
    """Ordered collection of labelled qubits (index 0 = most significant bit)."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) == 0:
            raise ValueError("register needs at least one qubit")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate qubit labels: %r" % (self.labels,))

    def __len__(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError("no qubit labelled %r in register %r" % (label, self.labels))


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized state vector over a qubit register."""

    register: QubitRegister
    amplitudes: np.ndarray

    @property
    def nqubits(self) -> int:
        return len(self.register)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace matrix over a (sub)register of qubits.

    Positivity is not re-checked on every construction; call
    :meth:`validate` to assert it.
    """

    matrix: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        m = self.matrix
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square, got %r" % (m.shape,))
        n = m.shape[0]
        if n & (n - 1):
            raise ValueError("density matrix dimension %d is not a power of two" % n)
        if np.abs(m - m.conj().T).max() > 1e-10:
            raise ValueError("density matrix is not Hermitian within 1e-10")
        if abs(np.trace(m).real - 1.0) > 1e-10 or abs(np.trace(m).imag) > 1e-10:
            raise ValueError("density matrix trace deviates from 1 beyond 1e-10")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def nqubits(self) -> int:
        return self.dim.bit_length() - 1

    def validate(self, tol: float = 1e-10) -> None:
        """Assert positive semidefiniteness (eigenvalues >= -tol)."""
        w = hermitian_eigenvalues(self.matrix)
        if w[-1] < -tol:
            raise ValueError("density matrix has negative eigenvalue %g" % w[-1])


def _checked_amplitudes(amps: np.ndarray) -> np.ndarray:
    global _renormalizations
    amps = np.asarray(amps, dtype=complex)
    if not np.all(np.isfinite(amps.view(float))):
        raise ValueError("non-finite amplitude")
    drift = abs(np.linalg.norm(amps) - 1.0)
    if drift > DRIFT_REJECT:
        raise ValueError("state norm deviates from 1 by %g (> %g)" % (drift, DRIFT_REJECT))
    if drift > DRIFT_KEEP:
        _renormalizations += 1
        amps = amps / np.linalg.norm(amps)
    return amps


def ground_state(register: QubitRegister) -> PureState:
    """|00...0> over the given register."""
    amps = np.zeros(2 ** len(register), dtype=complex)
    amps[0] = 1.0
    return PureState(register, amps)


def from_amplitudes(register: QubitRegister, amplitudes: np.ndarray) -> PureState:
    """Build a PureState, enforcing the normalization policy."""
    amps = _checked_amplitudes(amplitudes)
    if amps.shape != (2 ** len(register),):
        raise ValueError(
            "amplitude vector of length %d does not fit a %d-qubit register"
            % (amps.size, len(register))
        )
    return PureState(register, amps)


def apply_local_unitary(state: PureState, unitary: np.ndarray, targets: list[int]) -> PureState:
    """Apply a unitary acting on the `targets` qubits.

    Parameters
    ----------
    state : PureState
    unitary : (2^k, 2^k) array_like
        Operator on the targeted qubits, big-endian within the target list.
    targets : list of int
        Distinct register indices; targets[0] is the operator's most
        significant qubit.

    Returns
    -------
    PureState
        Rest of the register is untouched: amplitudes of basis states
        differing only outside `targets` mix only through the targets
        subspace.
    """
    n = state.nqubits
    k = len(targets)
    if len(set(targets)) != k:
        raise ValueError("duplicate target index in %r" % (targets,))
    if any(t < 0 or t >= n for t in targets):
        raise ValueError("target index out of range for %d-qubit register" % n)
    u = np.asarray(unitary, dtype=complex)
    if u.shape != (2**k, 2**k):
        raise ValueError("operator shape %r does not fit %d target qubits" % (u.shape, k))
    psi = state.amplitudes.reshape((2,) * n)
    op = u.reshape((2,) * (2 * k))
    out = np.tensordot(op, psi, axes=(list(range(k, 2 * k)), targets))
    out = np.moveaxis(out, range(k), targets)
    return PureState(state.register, _checked_amplitudes(out.reshape(-1)))


def partial_trace(state: PureState, keep: list[int]) -> DensityMatrix:
    """Reduced density matrix of the kept qubits (ascending register order).

    Parameters
    ----------
    state : PureState
    keep : list of int
        Nonempty subset of register indices.  Keeping every qubit yields
        the full projector |psi><psi|.
    """
    n = state.nqubits
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep set must not be empty")
    if any(q < 0 or q >= n for q in keep):
        raise ValueError("keep index out of range for %d-qubit register" % n)
    traced = [q for q in range(n) if q not in keep]
    psi = state.amplitudes.reshape((2,) * n)
    rho = np.tensordot(psi, psi.conj(), axes=(traced, traced))
    d = 2 ** len(keep)
    labels = tuple(state.register.labels[q] for q in keep)
    return DensityMatrix(rho.reshape(d, d), labels)


def reduce_density_matrix(rho: DensityMatrix, keep: list[int]) -> DensityMatrix:
    """Trace a density matrix down to the kept qubits (ascending order)."""
    n = rho.nqubits
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep set must not be empty")
    if any(q < 0 or q >= n for q in keep):
        raise ValueError("keep index out of range for %d-qubit state" % n)
    t = rho.matrix.reshape((2,) * (2 * n))
    # Trace out highest indices first so remaining axis numbers stay valid.
    nq = n
    for q in [q for q in range(n) if q not in keep][::-1]:
        t = np.trace(t, axis1=q, axis2=nq + q)
        nq -= 1
    d = 2 ** len(keep)
    labels = tuple(rho.labels[q] for q in keep) if rho.labels else None
    return DensityMatrix(t.reshape(d, d), labels)


def partial_transpose(matrix: np.ndarray, subsystem: list[int], nqubits: int | None = None) -> np.ndarray:
    """Transpose the given qubits of a density matrix.

    Parameters
    ----------
    matrix : (2^n, 2^n) array_like
    subsystem : list of int
        Nonempty proper subset of the n qubits to transpose.
    nqubits : int, optional
        Number of qubits; inferred from the matrix dimension by default.

    Returns
    -------
    ndarray
        Hermitian matrix, in general not positive semidefinite.
        Applying the same transposition twice returns the input.
    """
    m = np.asarray(matrix, dtype=complex)
    d = m.shape[0]
    n = nqubits if nqubits is not None else d.bit_length() - 1
    if m.shape != (2**n, 2**n):
        raise ValueError("matrix shape %r does not match %d qubits" % (m.shape, n))
    sub = sorted(set(subsystem))
    if not sub or len(sub) >= n:
        raise ValueError("subsystem must be a nonempty proper subset of the %d qubits" % n)
    if any(q < 0 or q >= n for q in sub):
        raise ValueError("subsystem index out of range")
    t = m.reshape((2,) * (2 * n))
    for q in sub:
        t = np.swapaxes(t, q, n + q)
    return t.reshape(d, d)


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the first factor most significant."""
    return np.kron(a, b)
