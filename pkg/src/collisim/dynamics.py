"""Collision dynamics: Heisenberg pair unitaries, preparation, protocols.

The two-qubit collision Hamiltonian is

    H = J1 s1 x s1 + J2 s2 x s2 + J3 s3 x s3

with couplings expressed in units of J, so time enters only through the
dimensionless tau = J t.  The anisotropic family of interest is
(J1, J2, J3) = (1, lambda, lambda).  H is diagonal in the Bell basis,
which gives the collision unitary exp(-i H tau) in closed form.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .haar import assert_unitary, sample_haar_unitary
from .qstate import PureState, QubitRegister, apply_local_unitary, from_amplitudes

__all__ = [
    "CouplingSpec",
    "CollisionEvent",
    "CollisionSchedule",
    "AncillaPrep",
    "heisenberg_unitary",
    "bell_basis",
    "build_register",
    "prepare_from_unitaries",
    "prepare_environments",
    "standard_schedule",
    "run_protocol",
]

ORDER_R_FIRST = "R-first"
ORDER_L_FIRST = "L-first"


@dataclass(frozen=True)
class CouplingSpec:
    """Collision coupling: tau = J t plus either lambda or explicit (J1, J2, J3)."""

    tau: float
    lam: float = 1.0
    j_vector: tuple[float, float, float] | None = None

    def couplings(self) -> tuple[float, float, float]:
        if self.j_vector is not None:
            return self.j_vector
        return (1.0, self.lam, self.lam)


@dataclass(frozen=True)
class CollisionEvent:
    """One ancilla-environment collision, qubits named by register label."""

    ancilla: str
    target: str
    coupling: CouplingSpec


@dataclass(frozen=True)
class CollisionSchedule:
    events: tuple[CollisionEvent, ...]


@dataclass(frozen=True)
class AncillaPrep:
    """Initial ancilla state: ground, Bloch superposition, or diagonal mixture.

    A mixed ancilla is realized through a purifier qubit P:
    sqrt(rho0)|0_A 0_P> + sqrt(1-rho0)|1_A 1_P>, with P never collided
    and traced out at measurement time.
    """

    kind: str = "ground"
    theta: float = 0.0
    phi_bloch: float = 0.0
    rho0: float = 1.0

    def __post_init__(self):
        if self.kind not in ("ground", "superposition", "mixed"):
            raise ValueError("unknown ancilla preparation %r" % self.kind)
        if self.kind == "mixed" and not 0.0 <= self.rho0 <= 1.0:
            raise ValueError("rho0 must lie in [0, 1], got %g" % self.rho0)

    @property
    def needs_purifier(self) -> bool:
        return self.kind == "mixed"

    @classmethod
    def ground(cls) -> "AncillaPrep":
        return cls("ground")

    @classmethod
    def superposition(cls, theta: float, phi_bloch: float = 0.0) -> "AncillaPrep":
        return cls("superposition", theta=theta, phi_bloch=phi_bloch)

    @classmethod
    def mixed(cls, rho0: float) -> "AncillaPrep":
        return cls("mixed", rho0=rho0)


def bell_basis() -> np.ndarray:
    """Columns Phi+, Phi-, Psi+, Psi- in the computational basis."""
    s = 1.0 / np.sqrt(2.0)
    b = np.zeros((4, 4))
    b[:, 0] = (s, 0, 0, s)
    b[:, 1] = (s, 0, 0, -s)
    b[:, 2] = (0, s, s, 0)
    b[:, 3] = (0, s, -s, 0)
    return b


@lru_cache(maxsize=64)
def heisenberg_unitary(coupling: CouplingSpec) -> np.ndarray:
    """Two-qubit collision unitary exp(-i H tau) via its Bell-basis spectrum.

    Bell-state eigenvalues of H in units of J are

        Phi+: J1 - J2 + J3      Phi-: -J1 + J2 + J3
        Psi+: J1 + J2 - J3      Psi-: -J1 - J2 - J3

    so for (1, lambda, lambda) the phases are (1, 2 lambda - 1, 1,
    -(1 + 2 lambda)).  The result is symmetric under swapping the two
    qubits, hence independent of which collision partner is listed
    first.
    """
    j1, j2, j3 = coupling.couplings()
    e = np.array([j1 - j2 + j3, -j1 + j2 + j3, j1 + j2 - j3, -j1 - j2 - j3])
    b = bell_basis()
    u = (b * np.exp(-1j * e * coupling.tau)) @ b.T
    assert_unitary(u, tol=1e-12)
    return u


def build_register(dim_el: int, dim_er: int, purifier: bool = False) -> QubitRegister:
    """Register layout (eL1..eLm, A, [P], eR1..eRn)."""
    if dim_el < 0 or dim_er < 0:
        raise ValueError("environment dimensions must be nonnegative")
    labels = ["eL%d" % (k + 1) for k in range(dim_el)]
    labels.append("A")
    if purifier:
        labels.append("P")
    labels += ["eR%d" % (k + 1) for k in range(dim_er)]
    return QubitRegister(tuple(labels))


def _ancilla_block(prep: AncillaPrep) -> np.ndarray:
    if prep.kind == "ground":
        return np.array([1.0, 0.0], dtype=complex)
    if prep.kind == "superposition":
        return np.array(
            [np.cos(prep.theta / 2), np.exp(1j * prep.phi_bloch) * np.sin(prep.theta / 2)],
            dtype=complex,
        )
    # mixed: two-qubit (A, P) block, A most significant
    block = np.zeros(4, dtype=complex)
    block[0] = np.sqrt(prep.rho0)
    block[3] = np.sqrt(1.0 - prep.rho0)
    return block


def prepare_from_unitaries(
    register: QubitRegister,
    ancilla_prep: AncillaPrep,
    u_left: np.ndarray | None,
    u_right: np.ndarray | None,
) -> PureState:
    """Product state (U_L |0..0>) x |ancilla block> x (U_R |0..0>)."""
    el = [lbl for lbl in register.labels if lbl.startswith("eL")]
    er = [lbl for lbl in register.labels if lbl.startswith("eR")]
    has_p = "P" in register.labels
    if ancilla_prep.needs_purifier != has_p:
        raise ValueError("register purifier does not match the ancilla preparation")
    if (u_left is None) != (len(el) == 0) or (u_right is None) != (len(er) == 0):
        raise ValueError("environment unitaries do not match the register dimensions")
    amps = np.array([1.0], dtype=complex)
    if u_left is not None:
        if u_left.shape != (2 ** len(el), 2 ** len(el)):
            raise ValueError("left preparation has wrong dimension %r" % (u_left.shape,))
        amps = np.kron(amps, u_left[:, 0])
    amps = np.kron(amps, _ancilla_block(ancilla_prep))
    if u_right is not None:
        if u_right.shape != (2 ** len(er), 2 ** len(er)):
            raise ValueError("right preparation has wrong dimension %r" % (u_right.shape,))
        amps = np.kron(amps, u_right[:, 0])
    return from_amplitudes(register, amps)


def prepare_environments(
    register: QubitRegister,
    ancilla_prep: AncillaPrep,
    rng: np.random.Generator,
) -> PureState:
    """Haar-prepare both environments over a register built by :func:`build_register`.

    The left environment's unitary is drawn before the right one; each
    is a Haar-random 2^dim unitary applied to the all-zero environment
    block.
    """
    m = sum(1 for lbl in register.labels if lbl.startswith("eL"))
    n = sum(1 for lbl in register.labels if lbl.startswith("eR"))
    u_l = sample_haar_unitary(2**m, rng) if m else None
    u_r = sample_haar_unitary(2**n, rng) if n else None
    return prepare_from_unitaries(register, ancilla_prep, u_l, u_r)


def standard_schedule(
    rounds: int,
    order: str,
    coupling: CouplingSpec,
    left_target: str | None,
    right_target: str | None,
    ancilla: str = "A",
) -> CollisionSchedule:
    """`rounds` repetitions of one collision with each present environment.

    order "R-first" strikes the right target before the left one in each
    round; "L-first" the reverse.  A missing environment (target None)
    simply drops its event, so a single-environment protocol has one
    event per round.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1, got %d" % rounds)
    if order not in (ORDER_R_FIRST, ORDER_L_FIRST):
        raise ValueError("order must be %r or %r" % (ORDER_R_FIRST, ORDER_L_FIRST))
    if left_target is None and right_target is None:
        raise ValueError("at least one environment target is required")
    pair = (right_target, left_target) if order == ORDER_R_FIRST else (left_target, right_target)
    events = []
    for _ in range(rounds):
        for target in pair:
            if target is not None:
                events.append(CollisionEvent(ancilla, target, coupling))
    return CollisionSchedule(tuple(events))


def run_protocol(initial: PureState, schedule: CollisionSchedule) -> PureState:
    """Apply the scheduled collisions in order.

    Each event applies the two-qubit collision unitary of its coupling
    to (ancilla, target); every other qubit is untouched by that event.
    """
    state = initial
    for ev in schedule.events:
        u = heisenberg_unitary(ev.coupling)
        targets = [state.register.index_of(ev.ancilla), state.register.index_of(ev.target)]
        state = apply_local_unitary(state, u, targets)
    return state
