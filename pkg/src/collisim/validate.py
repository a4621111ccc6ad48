"""Self-validation suites behind the haar-check and oracle-check commands.

`haar_check` audits the Euler-angle sampler against exact Haar moments
and against the independent Ginibre/QR sampler; `oracle_check` replays
small collision scenarios through the full pipeline (random preparation,
collision unitaries, reduction, measures) and compares against the
closed forms in :mod:`collisim.oracles`.  Both accept deliberately
broken variants (a uniform-phi sampler, a corrupted pipeline) as
negative controls.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dynamics import (
    ORDER_L_FIRST,
    ORDER_R_FIRST,
    AncillaPrep,
    CouplingSpec,
    build_register,
    prepare_from_unitaries,
    run_protocol,
    standard_schedule,
)
from .haar import (
    EulerAngleSet,
    RngStream,
    compose_unitary,
    ginibre_qr_haar,
    sample_euler_angles,
)
from .measures import concurrence
from .qstate import DensityMatrix, partial_trace
from .oracles import (
    biased_three_qubit_state,
    conc_eRA_two_env,
    conc_mixed_ancilla,
    conc_single,
    evolved_density_matrix_single,
)

__all__ = [
    "HaarDimReport",
    "HaarCheckReport",
    "OracleDeviation",
    "OracleCheckReport",
    "haar_check",
    "oracle_check",
    "ks_statistic",
    "uniform_phi_sampler",
    "ORACLE_SCENARIOS",
]

UNITARITY_LIMIT = 1e-10
KS_LIMIT = 0.03
MOMENT_SIGMAS = 3.0
ORACLE_TOL = 1e-10


def ks_statistic(a: np.ndarray, b: np.ndarray) -> float:
    """Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be nonempty")
    grid = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, grid, side="right") / a.size
    cdf_b = np.searchsorted(b, grid, side="right") / b.size
    return float(np.abs(cdf_a - cdf_b).max())


def uniform_phi_sampler(dim: int, gen: np.random.Generator) -> np.ndarray:
    """Negative control: same construction but phi drawn uniformly.

    A uniform phi ignores the Jacobian of the Euler parameterization, so
    the output is detectably non-Haar; haar_check must fail on it.
    """
    angles = sample_euler_angles(dim, gen)
    phi = angles.phi.copy()
    for j in range(2, dim + 1):
        for i in range(1, j):
            phi[i, j] = 0.5 * np.pi * gen.random()
    return compose_unitary(EulerAngleSet(dim, phi, angles.psi, angles.chi, angles.alpha))


@dataclass(frozen=True)
class HaarDimReport:
    dim: int
    draws: int
    max_unitarity_error: float
    moment_mean: float
    moment_se: float
    moment_target: float
    ks_d: float

    @property
    def unitarity_ok(self) -> bool:
        return self.max_unitarity_error < UNITARITY_LIMIT

    @property
    def moment_ok(self) -> bool:
        return abs(self.moment_mean - self.moment_target) <= MOMENT_SIGMAS * self.moment_se

    @property
    def ks_ok(self) -> bool:
        return self.ks_d < KS_LIMIT

    @property
    def ok(self) -> bool:
        return self.unitarity_ok and self.moment_ok and self.ks_ok


@dataclass(frozen=True)
class HaarCheckReport:
    dims: tuple[HaarDimReport, ...]
    seed: int

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.dims)


def haar_check(
    dims: tuple[int, ...] = (2, 3, 4),
    draws: int = 10_000,
    seed: int = 1,
    sampler: Callable[[int, np.random.Generator], np.ndarray] | None = None,
) -> HaarCheckReport:
    """Check the Haar sampler's unitarity, first moment, and |U11|^2 law.

    For each dim N: max unitarity error over all draws, the sample mean
    of |U11|^2 against the exact Haar value 1/N (3 sigma), and the
    two-sample KS distance of |U11|^2 between the tested sampler and the
    Ginibre/QR reference.  `sampler` substitutes the tested sampler
    (used by the negative controls); the reference is never substituted.
    """
    if any(n < 2 for n in dims):
        raise ValueError("all dims must be >= 2")
    if draws < 2:
        raise ValueError("draws must be >= 2")
    draw = sampler or (lambda n, gen: compose_unitary(sample_euler_angles(n, gen)))
    reports = []
    for n in dims:
        gen = RngStream(seed, n).generator()
        gen_ref = RngStream(seed, 1_000_000 + n).generator()
        worst = 0.0
        m11 = np.empty(draws)
        ref11 = np.empty(draws)
        eye = np.eye(n)
        for k in range(draws):
            u = draw(n, gen)
            worst = max(worst, float(np.abs(u @ u.conj().T - eye).max()))
            m11[k] = abs(u[0, 0]) ** 2
            ref11[k] = abs(ginibre_qr_haar(n, gen_ref)[0, 0]) ** 2
        reports.append(
            HaarDimReport(
                dim=n,
                draws=draws,
                max_unitarity_error=worst,
                moment_mean=float(m11.mean()),
                moment_se=float(m11.std(ddof=1) / np.sqrt(draws)),
                moment_target=1.0 / n,
                ks_d=ks_statistic(m11, ref11),
            )
        )
    return HaarCheckReport(tuple(reports), seed)


@dataclass(frozen=True)
class OracleDeviation:
    scenario: str
    max_deviation: float
    tol: float = ORACLE_TOL

    @property
    def ok(self) -> bool:
        return self.max_deviation < self.tol


@dataclass(frozen=True)
class OracleCheckReport:
    deviations: tuple[OracleDeviation, ...]
    draws: int
    seed: int

    @property
    def ok(self) -> bool:
        return all(d.ok for d in self.deviations)

    def failing(self) -> list[str]:
        return [d.scenario for d in self.deviations if not d.ok]


def _angles_2x2(gen) -> tuple[EulerAngleSet, float, float, float]:
    angles = sample_euler_angles(2, gen)
    return angles, float(angles.phi[1, 2]), float(angles.psi[1, 2]), float(angles.chi[2])


def _single_collision_rho(angles: EulerAngleSet, tau: float) -> np.ndarray:
    register = build_register(1, 0)
    state = prepare_from_unitaries(register, AncillaPrep.ground(), compose_unitary(angles), None)
    sched = standard_schedule(1, ORDER_L_FIRST, CouplingSpec(tau), "eL1", None)
    return partial_trace(run_protocol(state, sched), [0, 1]).matrix


def _mixed_collision_rho(angles: EulerAngleSet, rho0: float, tau: float) -> np.ndarray:
    register = build_register(1, 0, purifier=True)
    state = prepare_from_unitaries(register, AncillaPrep.mixed(rho0), compose_unitary(angles), None)
    sched = standard_schedule(1, ORDER_L_FIRST, CouplingSpec(tau), "eL1", None)
    return partial_trace(run_protocol(state, sched), [0, 1]).matrix


def _two_env_rho_first_pair(angles_l, angles_r, tau: float) -> np.ndarray:
    register = build_register(1, 1)
    state = prepare_from_unitaries(
        register, AncillaPrep.ground(), compose_unitary(angles_l), compose_unitary(angles_r)
    )
    sched = standard_schedule(1, ORDER_R_FIRST, CouplingSpec(tau), "eL1", "eR1")
    # Pair struck first: (e_R, A), reduced in register order (A, eR1) -> reorder not
    # needed, concurrence is symmetric under the qubit order of the pair.
    return partial_trace(run_protocol(state, sched), [1, 2]).matrix


def _biased_pipeline_state(lam: float, tau: float) -> np.ndarray:
    register = build_register(1, 1)
    state = prepare_from_unitaries(register, AncillaPrep.ground(), np.eye(2), np.eye(2))
    sched = standard_schedule(1, ORDER_L_FIRST, CouplingSpec(tau, lam), "eL1", "eR1")
    return run_protocol(state, sched).amplitudes


ORACLE_SCENARIOS = (
    "evolved_density_matrix_single",
    "conc_single",
    "conc_mixed_ancilla",
    "conc_eRA_two_env",
    "biased_three_qubit_state",
)


def oracle_check(draws: int = 200, seed: int = 3, corrupt: str | None = None) -> OracleCheckReport:
    """Compare the simulation pipeline with every closed-form scenario.

    Each draw picks fresh random parameters (preparation angles, tau in
    (0, 2], rho0 in [0, 1], lambda in [-5, 5]) and runs the matching
    protocol end to end; deviations are elementwise for states and
    matrices, absolute for scalars.  `corrupt` names a scenario whose
    pipeline output is perturbed by 1e-6 (negative control: the report
    must then fail exactly there).
    """
    if draws < 1:
        raise ValueError("draws must be >= 1")
    if corrupt is not None and corrupt not in ORACLE_SCENARIOS:
        raise ValueError("unknown corrupt target %r (valid: %s)" % (corrupt, ", ".join(ORACLE_SCENARIOS)))
    gen = RngStream(seed, 0).generator()
    worst = dict.fromkeys(ORACLE_SCENARIOS, 0.0)
    # The perturbation is injected into the pipeline side of the
    # comparison only, after all physical validation has run.
    def nudge(scenario: str) -> float:
        return 1e-6 if corrupt == scenario else 0.0

    for _ in range(draws):
        tau = float(2.0 * (1.0 - gen.random()))  # (0, 2]
        angles, phi, psi, chi = _angles_2x2(gen)

        rho = _single_collision_rho(angles, tau)
        dev = np.abs(
            (rho + nudge("evolved_density_matrix_single"))
            - evolved_density_matrix_single(phi, psi, chi, tau)
        ).max()
        worst["evolved_density_matrix_single"] = max(worst["evolved_density_matrix_single"], float(dev))

        conc = concurrence(DensityMatrix(rho)).value + nudge("conc_single")
        dev = abs(conc - conc_single(phi, tau))
        worst["conc_single"] = max(worst["conc_single"], float(dev))

        rho0 = float(gen.random())
        conc = concurrence(DensityMatrix(_mixed_collision_rho(angles, rho0, tau))).value
        dev = abs(conc + nudge("conc_mixed_ancilla") - conc_mixed_ancilla(phi, rho0, tau))
        worst["conc_mixed_ancilla"] = max(worst["conc_mixed_ancilla"], float(dev))

        angles_r, phi_r, _, _ = _angles_2x2(gen)
        conc = concurrence(DensityMatrix(_two_env_rho_first_pair(angles, angles_r, tau))).value
        dev = abs(conc + nudge("conc_eRA_two_env") - conc_eRA_two_env(phi_r, tau))
        worst["conc_eRA_two_env"] = max(worst["conc_eRA_two_env"], float(dev))

        lam = float(gen.uniform(-5.0, 5.0))
        amps = _biased_pipeline_state(lam, tau) + nudge("biased_three_qubit_state")
        dev = np.abs(amps - biased_three_qubit_state(lam, tau).amplitudes).max()
        worst["biased_three_qubit_state"] = max(worst["biased_three_qubit_state"], float(dev))

    deviations = tuple(OracleDeviation(s, worst[s]) for s in ORACLE_SCENARIOS)
    return OracleCheckReport(deviations, draws, seed)
