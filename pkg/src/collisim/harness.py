"""Monte Carlo experiment runner.

An :class:`ExperimentConfig` spans a grid of (environment dims) x
(tau, lambda) x (collision rounds); each grid point is sampled M times
with independently prepared environments and the configured measures
are aggregated into means and standard errors.

Determinism contract: sample k of every grid point draws from the
counter-based stream (seed, k), results are gathered and reduced in
ascending sample order with compensated summation, and every measure is
a pure function of the state.  Output is therefore bit-identical for a
fixed (config, seed) no matter how many worker processes are used.
Sharing the stream index across grid points also gives common random
numbers along sweeps, which smooths curves read off the grid.
"""
from __future__ import annotations

import math
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from itertools import product

import numpy as np

from . import jacobi
from . import measures as _measures
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
from .haar import RngStream, compose_unitary, sample_euler_angles, sample_haar_unitary
from .measures import (
    classify_graph,
    concurrence,
    factorization_distance,
    ghz_witness,
    negativity,
    tripartite_negativity,
)
from .qstate import PureState, apply_local_unitary, partial_trace, renormalization_count

__all__ = [
    "ExperimentConfig",
    "GridPoint",
    "SampleRecord",
    "AggregateResult",
    "RunResult",
    "RunAbortedError",
    "ExponentialFit",
    "ThresholdScan",
    "WitnessCensus",
    "run_monte_carlo",
    "fit_exponential",
    "threshold_dimension",
    "witness_census",
    "preset",
    "preset_names",
    "single_environment_config",
]

GRAPH_LABELS = ("a", "b", "c", "d", "unclassified")

# Scalar measures plus their environment requirements (needs_left, needs_right).
MEASURES = {
    "conc_eL_A": (True, False),
    "conc_eR_A": (False, True),
    "neg_eL_A": (True, False),
    "neg_eR_A": (False, True),
    "neg_eL_eR": (True, True),
    "neg_tri": (True, True),
    "witness": (True, True),
    "fact_eL_eR": (True, True),
    "graph": (True, True),
}

MAX_FAILURE_FRACTION = 1e-3

DEFAULT_QUBIT_CAP = 22


class RunAbortedError(RuntimeError):
    """Raised when the per-sample failure fraction exceeds the abort limit."""

    def __init__(self, failures: int, total: int, examples: list[str]):
        self.failures = failures
        self.total = total
        self.examples = examples
        super().__init__(
            "%d of %d samples failed (limit %g); first errors: %s"
            % (failures, total, MAX_FAILURE_FRACTION, "; ".join(examples[:3]))
        )


@dataclass(frozen=True)
class GridPoint:
    dim_el: int
    dim_er: int
    tau: float
    lam: float
    rounds: int


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one Monte Carlo experiment.

    `dim_el` and `dim_er` are swept as a Cartesian product unless
    `link_dims` is set, which zips them pairwise instead.  `couplings`
    holds (tau, lambda) pairs and `rounds` collision-round counts; the
    grid is the product of all three axes.  With `haar_prep` off the
    environments start in |0...0> with no random draw (the measures then
    see the deterministic protocol state and M=1 is enough).
    """

    name: str
    dim_el: tuple[int, ...] = (1,)
    dim_er: tuple[int, ...] = (1,)
    link_dims: bool = False
    couplings: tuple[tuple[float, float], ...] = ((1.0, 1.0),)
    rounds: tuple[int, ...] = (1,)
    order: str = ORDER_R_FIRST
    ancilla_prep: AncillaPrep = field(default_factory=AncillaPrep.ground)
    haar_prep: bool = True
    re_randomize_per_round: bool = False
    samples: int = 500
    seed: int = 0
    measures: tuple[str, ...] = ("conc_eL_A", "conc_eR_A")
    left_target: str | None = None
    right_target: str | None = None
    witness_restarts: int = _measures.WITNESS_RESTARTS
    qubit_cap: int = DEFAULT_QUBIT_CAP

    def __post_init__(self):
        if not self.name or not all(c.isalnum() or c in "_-" for c in self.name):
            raise ValueError("name must be nonempty and filesystem-safe, got %r" % (self.name,))
        if self.samples < 1:
            raise ValueError("samples must be >= 1, got %d" % self.samples)
        if self.seed < 0:
            raise ValueError("seed must be nonnegative, got %d" % self.seed)
        if self.witness_restarts < 1:
            raise ValueError("witness_restarts must be >= 1")
        if self.order not in (ORDER_R_FIRST, ORDER_L_FIRST):
            raise ValueError("order must be %r or %r" % (ORDER_R_FIRST, ORDER_L_FIRST))
        if not self.dim_el or not self.dim_er:
            raise ValueError("dim_el and dim_er grids must be nonempty")
        if any(d < 0 for d in self.dim_el + self.dim_er):
            raise ValueError("environment dimensions must be nonnegative")
        if self.link_dims and len(self.dim_el) != len(self.dim_er):
            raise ValueError("link_dims requires dim_el and dim_er of equal length")
        if not self.couplings:
            raise ValueError("couplings grid must be nonempty")
        if not all(math.isfinite(t) and math.isfinite(l) for t, l in self.couplings):
            raise ValueError("couplings must be finite (tau, lambda) pairs")
        if not self.rounds or any(r < 1 for r in self.rounds):
            raise ValueError("rounds grid must be nonempty with every entry >= 1")
        if not self.measures:
            raise ValueError("measures must be nonempty")
        for m in self.measures:
            if m not in MEASURES:
                raise ValueError(
                    "unknown measure %r (known: %s)" % (m, ", ".join(sorted(MEASURES)))
                )
        if self.re_randomize_per_round and not self.haar_prep:
            raise ValueError("re_randomize_per_round requires haar_prep")
        worst = max(m + n for m, n in self._dim_pairs())
        cap_needed = worst + 1 + (1 if self.ancilla_prep.needs_purifier else 0)
        if cap_needed > self.qubit_cap:
            raise ValueError(
                "grid needs %d qubits, above the cap of %d" % (cap_needed, self.qubit_cap)
            )

    def _dim_pairs(self) -> list[tuple[int, int]]:
        if self.link_dims:
            return list(zip(self.dim_el, self.dim_er))
        return list(product(self.dim_el, self.dim_er))

    def grid_points(self) -> list[GridPoint]:
        return [
            GridPoint(m, n, t, l, r)
            for (m, n) in self._dim_pairs()
            for (t, l) in self.couplings
            for r in self.rounds
        ]

    def value_ids(self) -> list[str]:
        """Aggregated series ids: `graph` expands to per-class fractions, `witness` adds the positive fraction."""
        ids: list[str] = []
        for m in self.measures:
            if m == "graph":
                ids.extend("graph_frac_" + lbl for lbl in GRAPH_LABELS)
            elif m == "witness":
                ids.extend(["witness", "witness_frac_positive"])
            else:
                ids.append(m)
        return ids


@dataclass(frozen=True)
class SampleRecord:
    """One Monte Carlo sample; reproducible from (config, point, index)."""

    point: GridPoint
    index: int
    digest_left: str
    digest_right: str
    values: dict[str, float]
    multi_negative_events: int
    graph_label: str | None = None
    failed: bool = False
    error: str = ""


@dataclass(frozen=True)
class AggregateResult:
    point: GridPoint
    measure: str
    mean: float
    se: float
    m: int
    minimum: float
    maximum: float


@dataclass(frozen=True)
class RunResult:
    config: ExperimentConfig
    aggregates: tuple[AggregateResult, ...]
    samples: tuple[SampleRecord, ...]
    failures: int
    renormalizations: int
    multi_negative_total: int
    started: str
    finished: str
    wall_seconds: float

    def aggregate(self, point: GridPoint, measure: str) -> AggregateResult:
        for a in self.aggregates:
            if a.point == point and a.measure == measure:
                return a
        raise KeyError("no aggregate for %r / %r" % (point, measure))

    def series(self, measure: str) -> list[AggregateResult]:
        return [a for a in self.aggregates if a.measure == measure]


def _targets(config: ExperimentConfig, point: GridPoint) -> tuple[str | None, str | None]:
    left = right = None
    if point.dim_el:
        left = config.left_target or ("eL%d" % point.dim_el)
        if left not in {"eL%d" % (k + 1) for k in range(point.dim_el)}:
            raise ValueError("left_target %r is not a left-environment qubit" % left)
    elif config.left_target is not None:
        raise ValueError("left_target set but the left environment is empty")
    if point.dim_er:
        right = config.right_target or ("eR%d" % point.dim_er)
        if right not in {"eR%d" % (k + 1) for k in range(point.dim_er)}:
            raise ValueError("right_target %r is not a right-environment qubit" % right)
    elif config.right_target is not None:
        raise ValueError("right_target set but the right environment is empty")
    return left, right


def _check_measures_fit(config: ExperimentConfig) -> None:
    for point in config.grid_points():
        for m in config.measures:
            needs_left, needs_right = MEASURES[m]
            if needs_left and point.dim_el == 0:
                raise ValueError("measure %r needs a left environment at %r" % (m, point))
            if needs_right and point.dim_er == 0:
                raise ValueError("measure %r needs a right environment at %r" % (m, point))
        _targets(config, point)


def _prepare(config: ExperimentConfig, point: GridPoint, gen) -> tuple[PureState, str, str]:
    register = build_register(point.dim_el, point.dim_er, config.ancilla_prep.needs_purifier)
    dig_l = dig_r = "-"
    if config.haar_prep:
        u_l = u_r = None
        if point.dim_el:
            angles = sample_euler_angles(2**point.dim_el, gen)
            dig_l = angles.digest()
            u_l = compose_unitary(angles)
        if point.dim_er:
            angles = sample_euler_angles(2**point.dim_er, gen)
            dig_r = angles.digest()
            u_r = compose_unitary(angles)
    else:
        u_l = np.eye(2**point.dim_el) if point.dim_el else None
        u_r = np.eye(2**point.dim_er) if point.dim_er else None
    state = prepare_from_unitaries(register, config.ancilla_prep, u_l, u_r)
    return state, dig_l, dig_r


def _refresh_environments(state: PureState, point: GridPoint, gen) -> PureState:
    """Apply fresh Haar unitaries to both environment blocks (left first)."""
    labels = state.register.labels
    for prefix, dim in (("eL", point.dim_el), ("eR", point.dim_er)):
        if dim:
            idx = [i for i, lbl in enumerate(labels) if lbl.startswith(prefix)]
            state = apply_local_unitary(state, sample_haar_unitary(2**dim, gen), idx)
    return state


def _evolve(config: ExperimentConfig, point: GridPoint, state: PureState, gen) -> PureState:
    left, right = _targets(config, point)
    coupling = CouplingSpec(point.tau, point.lam)
    if not config.re_randomize_per_round:
        return run_protocol(state, standard_schedule(point.rounds, config.order, coupling, left, right))
    one_round = standard_schedule(1, config.order, coupling, left, right)
    for r in range(point.rounds):
        if r:
            state = _refresh_environments(state, point, gen)
        state = run_protocol(state, one_round)
    return state


def _measure_state(
    state: PureState, config: ExperimentConfig, point: GridPoint
) -> tuple[dict[str, float], int, str | None]:
    reg = state.register
    left, right = _targets(config, point)
    ia = reg.index_of("A")
    il = reg.index_of(left) if left else None
    ir = reg.index_of(right) if right else None

    pair_cache: dict[tuple[int, int], object] = {}

    def pair(i, j):
        key = (min(i, j), max(i, j))
        if key not in pair_cache:
            pair_cache[key] = partial_trace(state, list(key))
        return pair_cache[key]

    trio = None

    def triple():
        nonlocal trio
        if trio is None:
            trio = partial_trace(state, sorted((il, ia, ir)))
        return trio

    values: dict[str, float] = {}
    multi = 0
    graph_label = None
    for m in config.measures:
        if m == "conc_eL_A":
            values[m] = concurrence(pair(il, ia)).value
        elif m == "conc_eR_A":
            values[m] = concurrence(pair(ir, ia)).value
        elif m in ("neg_eL_A", "neg_eR_A", "neg_eL_eR"):
            i, j = {
                "neg_eL_A": (il, ia),
                "neg_eR_A": (ir, ia),
                "neg_eL_eR": (il, ir),
            }[m]
            res = negativity(pair(i, j), [0])
            multi += res.n_negative >= 2
            values[m] = res.value
        elif m == "neg_tri":
            res = tripartite_negativity(triple())
            multi += sum(c.n_negative >= 2 for c in res.cuts)
            values[m] = res.value
        elif m == "witness":
            w = ghz_witness(triple(), restarts=config.witness_restarts)
            values["witness"] = w.expectation
            values["witness_frac_positive"] = 1.0 if w.expectation > 0.0 else 0.0
        elif m == "fact_eL_eR":
            values[m] = factorization_distance(pair(il, ir))
        elif m == "graph":
            g = classify_graph(triple())
            graph_label = g.label
            for lbl in GRAPH_LABELS:
                values["graph_frac_" + lbl] = 1.0 if g.label == lbl else 0.0
    return values, multi, graph_label


def _evaluate_sample(config: ExperimentConfig, point: GridPoint, index: int) -> SampleRecord:
    try:
        gen = RngStream(config.seed, index).generator()
        state, dig_l, dig_r = _prepare(config, point, gen)
        state = _evolve(config, point, state, gen)
        values, multi, graph_label = _measure_state(state, config, point)
        return SampleRecord(point, index, dig_l, dig_r, values, multi, graph_label)
    except (ValueError, RuntimeError, FloatingPointError) as exc:
        return SampleRecord(point, index, "-", "-", {}, 0, None, failed=True, error=str(exc))


def _run_chunk(args) -> tuple[int, int, list[SampleRecord], int]:
    config, point_index, point, lo, hi = args
    before = renormalization_count()
    records = [_evaluate_sample(config, point, s) for s in range(lo, hi)]
    return point_index, lo, records, renormalization_count() - before


def _kahan_sum(values: list[float]) -> float:
    total = 0.0
    carry = 0.0
    for x in values:
        y = x - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return total


def _aggregate(point: GridPoint, measure: str, values: list[float]) -> AggregateResult:
    m = len(values)
    mean = _kahan_sum(values) / m
    if m > 1:
        var = _kahan_sum([(v - mean) ** 2 for v in values]) / (m - 1)
        se = math.sqrt(max(var, 0.0) / m)
    else:
        se = 0.0
    return AggregateResult(point, measure, mean, se, m, min(values), max(values))


def run_monte_carlo(config: ExperimentConfig, workers: int = 1) -> RunResult:
    """Run the full sample grid and aggregate each configured measure.

    Samples are farmed out to `workers` processes (1 = run inline); the
    reduction is single-threaded in ascending sample order, so the
    result does not depend on `workers`.  Failed samples are excluded
    from aggregation; the run aborts with :class:`RunAbortedError` when
    more than 0.1% of all samples fail.
    """
    _check_measures_fit(config)
    points = config.grid_points()
    started = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    t0 = time.monotonic()

    chunk = max(1, -(-config.samples // max(1, 4 * workers)))
    tasks = []
    for pi, point in enumerate(points):
        for lo in range(0, config.samples, chunk):
            tasks.append((config, pi, point, lo, min(lo + chunk, config.samples)))

    renorms = 0
    parts: dict[int, dict[int, list[SampleRecord]]] = {}
    if workers <= 1:
        for task in tasks:
            pi, lo, records, delta = _run_chunk(task)
            parts.setdefault(pi, {})[lo] = records
            renorms += delta
    else:
        # Compile the numeric kernels before forking so children inherit them.
        jacobi.warmup()
        if "witness" in config.measures:
            _measures.warmup()
        try:
            ctx = multiprocessing.get_context("fork")
        except ValueError:  # pragma: no cover - non-fork platforms
            ctx = multiprocessing.get_context()
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            futures = [pool.submit(_run_chunk, task) for task in tasks]
            for fut in as_completed(futures):
                pi, lo, records, delta = fut.result()
                parts.setdefault(pi, {})[lo] = records
                renorms += delta

    samples: list[SampleRecord] = []
    per_point: list[list[SampleRecord]] = []
    for pi in range(len(points)):
        chunks = parts.get(pi, {})
        records = []
        for lo in sorted(chunks):
            records.extend(chunks[lo])
        per_point.append(records)
        samples.extend(records)

    failures = sum(1 for s in samples if s.failed)
    total = len(samples)
    if failures > MAX_FAILURE_FRACTION * total:
        raise RunAbortedError(failures, total, [s.error for s in samples if s.failed])

    value_ids = config.value_ids()
    aggregates = []
    for point, records in zip(points, per_point):
        good = [s for s in records if not s.failed]
        if not good:
            raise RunAbortedError(failures, total, ["every sample failed at %r" % (point,)])
        for vid in value_ids:
            aggregates.append(_aggregate(point, vid, [s.values[vid] for s in good]))

    multi_total = sum(s.multi_negative_events for s in samples)
    wall = time.monotonic() - t0
    finished = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    return RunResult(
        config,
        tuple(aggregates),
        tuple(samples),
        failures,
        renorms,
        multi_total,
        started,
        finished,
        wall,
    )


@dataclass(frozen=True)
class ExponentialFit:
    """Least-squares fit of y = A exp(-B (d - 1)) through log-linear regression."""

    a: float
    b: float
    residual: float
    r_squared: float
    points: tuple[tuple[int, float], ...]


def fit_exponential(points: list[tuple[int, float]]) -> ExponentialFit:
    """Fit A e^{-B(d-1)} to (dimension, value) pairs, all values positive.

    The fit is linear least squares of ln y against (d - 1); residual
    and R^2 are reported in the original scale.
    """
    if len(points) < 3:
        raise ValueError("need at least 3 points to fit, got %d" % len(points))
    if any(y <= 0 for _, y in points):
        raise ValueError(
            "all fitted values must be positive; threshold the series first "
            "and fit only the surviving points"
        )
    d = np.array([p[0] for p in points], dtype=float)
    y = np.array([p[1] for p in points], dtype=float)
    slope, intercept = np.polyfit(d - 1.0, np.log(y), 1)
    a = float(np.exp(intercept))
    b = float(-slope)
    pred = a * np.exp(-b * (d - 1.0))
    residual = float(np.sum((pred - y) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - residual / ss_tot
    return ExponentialFit(a, b, residual, r_squared, tuple((int(p[0]), float(p[1])) for p in points))


@dataclass(frozen=True)
class ThresholdScan:
    """First dimension whose mean drops below a threshold (None if never)."""

    dim: int | None
    threshold: float
    max_dim_scanned: int

    @property
    def dim_or_inf(self) -> float:
        return float(self.dim) if self.dim is not None else math.inf


def threshold_dimension(series: dict[int, float], threshold: float) -> ThresholdScan:
    """Scan a dim -> mean series (consecutive dims from 1) for the threshold crossing."""
    if not series:
        raise ValueError("series must not be empty")
    dims = sorted(series)
    if dims != list(range(1, len(dims) + 1)):
        raise ValueError("series must cover consecutive dimensions starting at 1")
    values = {d: (v.mean if isinstance(v, AggregateResult) else float(v)) for d, v in series.items()}
    for d in dims:
        if values[d] < threshold:
            return ThresholdScan(d, threshold, dims[-1])
    return ThresholdScan(None, threshold, dims[-1])


@dataclass(frozen=True)
class WitnessCensus:
    fraction_positive: float
    min_expectation: float
    by_point: tuple[tuple[GridPoint, float], ...]
    result: RunResult


def witness_census(config: ExperimentConfig, workers: int = 1) -> WitnessCensus:
    """Fraction of samples with positive witness expectation, and the minimum seen."""
    if "witness" not in config.measures:
        raise ValueError("config must include the 'witness' measure")
    result = run_monte_carlo(config, workers=workers)
    good = [s for s in result.samples if not s.failed]
    expectations = [s.values["witness"] for s in good]
    frac = sum(1 for e in expectations if e > 0.0) / len(expectations)
    by_point_vals: dict[GridPoint, list[float]] = {}
    for s in good:
        by_point_vals.setdefault(s.point, []).append(s.values["witness"])
    by_point = tuple(
        (point, sum(1 for e in by_point_vals[point] if e > 0.0) / len(by_point_vals[point]))
        for point in config.grid_points()
    )
    return WitnessCensus(frac, min(expectations), by_point, result)


def _lam_grid(halfwidth_steps: int, step_inv: int) -> tuple[tuple[float, float], ...]:
    # (i / step_inv) hits 0 and +-1 exactly, unlike linspace endpoints arithmetic.
    return tuple((1.0, i / step_inv) for i in range(-halfwidth_steps, halfwidth_steps + 1))


def _presets() -> dict[str, ExperimentConfig]:
    negs = ("neg_eL_A", "neg_eR_A", "neg_eL_eR", "neg_tri")
    return {
        "fig2a": ExperimentConfig(
            name="fig2a",
            dim_el=(1,),
            dim_er=(1, 2, 3, 4),
            order=ORDER_R_FIRST,
            couplings=((1.0, 1.0),),
            samples=2000,
            seed=20,
            measures=("conc_eL_A", "conc_eR_A"),
        ),
        "fig2b": ExperimentConfig(
            name="fig2b",
            dim_el=(1,),
            dim_er=(1, 2, 3, 4),
            order=ORDER_L_FIRST,
            couplings=((1.0, 1.0),),
            samples=2000,
            seed=21,
            measures=("conc_eL_A", "conc_eR_A"),
        ),
        "fig3": ExperimentConfig(
            name="fig3",
            dim_el=(1,),
            dim_er=(1,),
            order=ORDER_L_FIRST,
            couplings=_lam_grid(80, 40),
            haar_prep=False,
            samples=1,
            seed=22,
            measures=negs,
        ),
        "fig5": ExperimentConfig(
            name="fig5",
            dim_el=(1,),
            dim_er=(1,),
            order=ORDER_L_FIRST,
            couplings=_lam_grid(50, 10),
            rounds=(1, 2, 3),
            samples=500,
            seed=23,
            measures=negs + ("fact_eL_eR", "graph"),
        ),
        "fig6": ExperimentConfig(
            name="fig6",
            dim_el=(1, 2, 3, 4, 5, 6),
            dim_er=(1,),
            order=ORDER_L_FIRST,
            couplings=((1.0, 0.0),),
            rounds=(1, 2, 3, 4, 5, 6),
            samples=300,
            seed=24,
            measures=("neg_eL_A", "neg_eR_A", "neg_tri"),
        ),
        "fig7": ExperimentConfig(
            name="fig7",
            dim_el=(1, 2, 3, 4, 5),
            dim_er=(1, 2, 3, 4, 5),
            link_dims=True,
            order=ORDER_L_FIRST,
            couplings=((1.0, 0.0),),
            rounds=(18,),
            samples=200,
            seed=25,
            measures=("neg_eL_A", "neg_eR_A", "neg_tri"),
        ),
        "witness1000": ExperimentConfig(
            name="witness1000",
            dim_el=(1,),
            dim_er=(1, 2, 3, 4),
            order=ORDER_R_FIRST,
            couplings=((1.0, 1.0),),
            samples=1000,
            seed=26,
            measures=("witness",),
        ),
    }


def preset_names() -> list[str]:
    return sorted(_presets())


def preset(name: str, samples: int | None = None, seed: int | None = None) -> ExperimentConfig:
    """Look up a named experiment, optionally overriding samples and seed."""
    table = _presets()
    if name not in table:
        raise ValueError("unknown preset %r (valid: %s)" % (name, ", ".join(sorted(table))))
    config = table[name]
    if samples is not None:
        config = replace(config, samples=samples)
    if seed is not None:
        config = replace(config, seed=seed)
    return config


def single_environment_config(
    dim: int = 1,
    tau: float = 1.0,
    samples: int = 2000,
    seed: int = 0,
    ancilla_prep: AncillaPrep | None = None,
    rounds: int = 1,
) -> ExperimentConfig:
    """One environment of `dim` qubits on the right, measuring its pair concurrence."""
    return ExperimentConfig(
        name="single",
        dim_el=(0,),
        dim_er=(dim,),
        couplings=((tau, 1.0),),
        rounds=(rounds,),
        samples=samples,
        seed=seed,
        ancilla_prep=ancilla_prep or AncillaPrep.ground(),
        measures=("conc_eR_A",),
    )
