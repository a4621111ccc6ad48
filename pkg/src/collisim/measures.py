"""Entanglement measures on two- and three-qubit density matrices.

All inputs are :class:`~collisim.qstate.DensityMatrix` instances;
spectra are computed with the package's Jacobi-based Hermitian
eigensolver.  Values are invariant under local unitaries and under any
relabelling of the qubits inside a measure's natural symmetry.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._jit import njit
from .haar import RngStream
from .jacobi import hermitian_eig, hermitian_eigenvalues
from .qstate import DensityMatrix, partial_transpose, reduce_density_matrix, tensor_product

__all__ = [
    "ConcurrenceResult",
    "NegativityResult",
    "TripartiteNegativityResult",
    "WitnessResult",
    "BlochDecomposition",
    "GraphClass",
    "concurrence",
    "negativity",
    "tripartite_negativity",
    "ghz_witness",
    "factorization_distance",
    "bloch_decomposition",
    "classify_graph",
    "warmup",
]

PAULIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# sigma_y x sigma_y (real)
_SPIN_FLIP = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)

# Eigenvalues this far below zero are treated as genuinely negative;
# anything closer to zero is numerical noise.
NEGATIVE_EIG_TOL = 1e-12

# Density-matrix eigenvalues below this are rank-deficiency noise (the
# Jacobi solver resolves spectra to ~1e-15); they are zeroed before any
# square root so they cannot surface as ~1e-8 junk afterwards.
RANK_TOL = 1e-13

WITNESS_RESTARTS = 20
WITNESS_FTOL = 1e-8
WITNESS_MAX_EVALS = 2000
# Fixed key so the restart points (after the identity start) are the
# same in every call and every process.
_WITNESS_STREAM = RngStream(seed=921057, stream=0)


def _require_nqubits(rho: DensityMatrix, n: int, what: str) -> None:
    if rho.dim != 2**n:
        raise ValueError("%s needs a %d-qubit state, got dimension %d" % (what, n, rho.dim))


@dataclass(frozen=True)
class ConcurrenceResult:
    value: float
    spin_flip_spectrum: tuple[float, ...]


@dataclass(frozen=True)
class NegativityResult:
    value: float
    negative_pt_eigenvalues: tuple[float, ...]

    @property
    def n_negative(self) -> int:
        return sum(1 for w in self.negative_pt_eigenvalues if w < -NEGATIVE_EIG_TOL)


@dataclass(frozen=True)
class TripartiteNegativityResult:
    value: float
    cuts: tuple[NegativityResult, NegativityResult, NegativityResult]


@dataclass(frozen=True)
class WitnessResult:
    expectation: float
    best_overlap: float
    optimizer_angles: tuple[float, ...]


def concurrence(rho: DensityMatrix) -> ConcurrenceResult:
    """Two-qubit concurrence from the spin-flip singular values.

    Writing rho = X X+ with X from the rank-clipped eigendecomposition,
    the descending roots l1..l4 are the singular values of
    X^T (sy x sy) X, read off a Hermitian block embedding so that small
    roots keep full absolute precision (no eigenvalue squaring).
    Returns max(0, l1 - l2 - l3 - l4) and the roots themselves.
    """
    _require_nqubits(rho, 2, "concurrence")
    w, v = hermitian_eig(rho.matrix)
    if w[-1] < -1e-10:
        raise ValueError("density matrix has negative eigenvalue %g" % w[-1])
    x = v * np.sqrt(np.where(w > RANK_TOL, w, 0.0))
    m = x.T @ _SPIN_FLIP @ x
    block = np.zeros((8, 8), dtype=complex)
    block[:4, 4:] = m
    block[4:, :4] = m.conj().T
    roots = hermitian_eigenvalues(block)[:4]
    value = max(0.0, roots[0] - roots[1] - roots[2] - roots[3])
    return ConcurrenceResult(float(value), tuple(float(x) for x in roots))


def negativity(rho: DensityMatrix, cut: list[int]) -> NegativityResult:
    """Negativity across the given cut: max(0, -2 sum of negative PT eigenvalues).

    For two-qubit states the partial transpose has at most one negative
    eigenvalue; larger systems can have several, which are all summed
    (and reported, so the single-eigenvalue alternative can be
    recomputed from logs).
    """
    n = rho.nqubits
    pt = partial_transpose(rho.matrix, cut, n)
    w = hermitian_eigenvalues(pt)
    negs = tuple(float(x) for x in w if x < 0.0)
    value = max(0.0, -2.0 * sum(negs))
    return NegativityResult(float(value), negs)


def tripartite_negativity(rho: DensityMatrix) -> TripartiteNegativityResult:
    """Geometric mean of the three one-versus-two negativities of a 3-qubit state."""
    _require_nqubits(rho, 3, "tripartite negativity")
    cuts = tuple(negativity(rho, [q]) for q in range(3))
    if any(c.value == 0.0 for c in cuts):
        value = 0.0
    else:
        value = (cuts[0].value * cuts[1].value * cuts[2].value) ** (1.0 / 3.0)
    return TripartiteNegativityResult(float(value), cuts)


@njit(cache=True)
def _ghz_overlap(params, rho):  # pragma: no cover - thin numeric kernel
    """<GHZ| (u1 x u2 x u3) rho (u1 x u2 x u3)+ |GHZ> for ZYZ angle triples."""
    u = np.empty((3, 2, 2), dtype=np.complex128)
    for q in range(3):
        a = params[3 * q]
        b = params[3 * q + 1]
        g = params[3 * q + 2]
        c = np.cos(0.5 * b)
        s = np.sin(0.5 * b)
        u[q, 0, 0] = np.exp(-0.5j * (a + g)) * c
        u[q, 0, 1] = -np.exp(-0.5j * (a - g)) * s
        u[q, 1, 0] = np.exp(0.5j * (a - g)) * s
        u[q, 1, 1] = np.exp(0.5j * (a + g)) * c
    v = np.empty(8, dtype=np.complex128)
    inv = 1.0 / np.sqrt(2.0)
    idx = 0
    for i in range(2):
        for j in range(2):
            for k in range(2):
                t0 = np.conj(u[0, 0, i] * u[1, 0, j] * u[2, 0, k])
                t1 = np.conj(u[0, 1, i] * u[1, 1, j] * u[2, 1, k])
                v[idx] = (t0 + t1) * inv
                idx += 1
    acc = 0.0
    for i in range(8):
        row = 0.0 + 0.0j
        for j in range(8):
            row += rho[i, j] * v[j]
        acc += (np.conj(v[i]) * row).real
    return acc


@njit(cache=True)
def _maximize_overlap(rho, starts, ftol, max_evals):  # pragma: no cover - thin numeric kernel
    """Best GHZ overlap over local rotations: simplex descent per start point."""
    ndim = 9
    best_val = -1.0
    best_x = np.zeros(ndim)
    for s in range(starts.shape[0]):
        sim = np.empty((ndim + 1, ndim))
        fv = np.empty(ndim + 1)
        for k in range(ndim):
            sim[0, k] = starts[s, k]
        fv[0] = -_ghz_overlap(sim[0], rho)
        evals = 1
        for i in range(ndim):
            for k in range(ndim):
                sim[i + 1, k] = sim[0, k]
            sim[i + 1, i] = sim[0, i] + 0.25
            fv[i + 1] = -_ghz_overlap(sim[i + 1], rho)
            evals += 1
        while True:
            order = np.argsort(fv)
            tmp_s = sim.copy()
            tmp_f = fv.copy()
            for r in range(ndim + 1):
                sim[r] = tmp_s[order[r]]
                fv[r] = tmp_f[order[r]]
            if fv[ndim] - fv[0] < ftol or evals >= max_evals:
                break
            cen = np.zeros(ndim)
            for r in range(ndim):
                for k in range(ndim):
                    cen[k] += sim[r, k]
            for k in range(ndim):
                cen[k] /= ndim
            xr = cen + (cen - sim[ndim])
            fr = -_ghz_overlap(xr, rho)
            evals += 1
            if fr < fv[0]:
                xe = cen + 2.0 * (cen - sim[ndim])
                fe = -_ghz_overlap(xe, rho)
                evals += 1
                if fe < fr:
                    sim[ndim] = xe
                    fv[ndim] = fe
                else:
                    sim[ndim] = xr
                    fv[ndim] = fr
            elif fr < fv[ndim - 1]:
                sim[ndim] = xr
                fv[ndim] = fr
            else:
                if fr < fv[ndim]:
                    xc = cen + 0.5 * (xr - cen)
                else:
                    xc = cen + 0.5 * (sim[ndim] - cen)
                fc = -_ghz_overlap(xc, rho)
                evals += 1
                if fc < min(fr, fv[ndim]):
                    sim[ndim] = xc
                    fv[ndim] = fc
                else:
                    for r in range(1, ndim + 1):
                        sim[r] = sim[0] + 0.5 * (sim[r] - sim[0])
                        fv[r] = -_ghz_overlap(sim[r], rho)
                    evals += ndim
        if -fv[0] > best_val:
            best_val = -fv[0]
            best_x = sim[0].copy()
    return best_val, best_x


def ghz_witness(
    rho: DensityMatrix,
    restarts: int = WITNESS_RESTARTS,
    rng: RngStream | None = None,
) -> WitnessResult:
    """Optimized GHZ witness expectation Tr[W rho], W = (3/4) 1 - |GHZ><GHZ|.

    The GHZ overlap is maximized over independent local rotations of the
    three qubits (9 ZYZ angles, derivative-free simplex descent); the
    reported expectation is the minimum over all restarts, so a positive
    value certifies that no tested rotation frame reaches overlap 3/4.
    The first start is the identity frame; the remaining restarts use
    fixed pseudorandom angle sets, making the result a pure function of
    the state (pass an explicit RngStream to vary them).
    """
    _require_nqubits(rho, 3, "GHZ witness")
    if restarts < 1:
        raise ValueError("restarts must be >= 1, got %d" % restarts)
    gen = (rng or _WITNESS_STREAM).generator()
    starts = np.zeros((restarts, 9))
    if restarts > 1:
        starts[1:] = 2 * np.pi * gen.random((restarts - 1, 9))
    rho_c = np.ascontiguousarray(rho.matrix, dtype=complex)
    best, angles = _maximize_overlap(rho_c, starts, WITNESS_FTOL, WITNESS_MAX_EVALS)
    return WitnessResult(float(0.75 - best), float(best), tuple(float(a) for a in angles))


def factorization_distance(rho: DensityMatrix) -> float:
    """Trace distance ||rho - rho_L x rho_R||_1 of a pair from its marginal product.

    Zero exactly for product states; positive for states carrying any
    correlation, classical or quantum.
    """
    _require_nqubits(rho, 2, "factorization distance")
    left = reduce_density_matrix(rho, [0])
    right = reduce_density_matrix(rho, [1])
    delta = rho.matrix - tensor_product(left.matrix, right.matrix)
    w = hermitian_eigenvalues(delta)
    return float(np.abs(w).sum())


@dataclass(frozen=True, eq=False)
class BlochDecomposition:
    """Pauli expansion rho = (1/4)[1x1 + a.s x 1 + 1 x b.s + sum T_ij si x sj]."""

    local_left: np.ndarray
    local_right: np.ndarray
    correlation: np.ndarray

    def reconstruct(self) -> np.ndarray:
        rho = np.kron(PAULIS[0], PAULIS[0]).astype(complex)
        for i in range(3):
            rho += self.local_left[i] * np.kron(PAULIS[i + 1], PAULIS[0])
            rho += self.local_right[i] * np.kron(PAULIS[0], PAULIS[i + 1])
            for j in range(3):
                rho += self.correlation[i, j] * np.kron(PAULIS[i + 1], PAULIS[j + 1])
        return rho / 4.0


def bloch_decomposition(rho: DensityMatrix) -> BlochDecomposition:
    """Bloch vectors and correlation tensor of a two-qubit state."""
    _require_nqubits(rho, 2, "Bloch decomposition")
    m = rho.matrix
    a = np.array([np.trace(m @ np.kron(PAULIS[i + 1], PAULIS[0])).real for i in range(3)])
    b = np.array([np.trace(m @ np.kron(PAULIS[0], PAULIS[j + 1])).real for j in range(3)])
    t = np.array(
        [
            [np.trace(m @ np.kron(PAULIS[i + 1], PAULIS[j + 1])).real for j in range(3)]
            for i in range(3)
        ]
    )
    return BlochDecomposition(a, b, t)


_PAIRS = ((0, 1), (0, 2), (1, 2))


@dataclass(frozen=True)
class GraphClass:
    """Entangled-graph classification of a three-qubit state.

    label: 'a' triangle (all three bonds, tripartite), 'b' no bonds,
    'c' two bonds with tripartite entanglement and a classically
    correlated unbonded pair, 'd' a single bond without tripartite
    entanglement, or 'unclassified'.
    """

    label: str
    bonds: frozenset[tuple[int, int]]
    tripartite: bool
    classically_correlated: frozenset[tuple[int, int]]
    pair_negativities: tuple[float, float, float]
    tripartite_value: float


def classify_graph(
    rho: DensityMatrix,
    eps_bond: float = 1e-6,
    eps_tri: float = 1e-6,
) -> GraphClass:
    """Assign the entangled-graph class of a three-qubit state.

    A bond is a pairwise marginal with negativity above eps_bond; the
    tripartite flag is tripartite negativity above eps_tri.  An unbonded
    pair counts as classically correlated when its factorization
    distance exceeds 1e-8.
    """
    _require_nqubits(rho, 3, "graph classification")
    pair_negs = []
    cc = []
    bonds = []
    for pair in _PAIRS:
        marginal = reduce_density_matrix(rho, list(pair))
        nval = negativity(marginal, [0]).value
        pair_negs.append(nval)
        if nval > eps_bond:
            bonds.append(pair)
        elif factorization_distance(marginal) > 1e-8:
            cc.append(pair)
    tri = tripartite_negativity(rho).value
    tripartite = tri > eps_tri
    bonds_set = frozenset(bonds)
    cc_set = frozenset(cc)
    if len(bonds) == 3 and tripartite:
        label = "a"
    elif len(bonds) == 0:
        label = "b"
    elif len(bonds) == 2 and tripartite:
        unbonded = next(p for p in _PAIRS if p not in bonds_set)
        label = "c" if unbonded in cc_set else "unclassified"
    elif len(bonds) == 1 and not tripartite:
        label = "d"
    else:
        label = "unclassified"
    return GraphClass(label, bonds_set, tripartite, cc_set, tuple(pair_negs), float(tri))


def warmup() -> None:
    """Trigger JIT compilation of the witness kernels (no-op without numba)."""
    ghz = np.zeros((8, 8), dtype=complex)
    ghz[0, 0] = ghz[0, 7] = ghz[7, 0] = ghz[7, 7] = 0.5
    ghz_witness(DensityMatrix(ghz), restarts=1)
