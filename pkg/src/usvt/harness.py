"""Configuration-driven experiment runner.

An :class:`ExperimentSpec` names a model family, grids of matrix sizes and
observation probabilities, estimator settings, a trial count and a master
seed. :func:`run_experiment` sweeps the grid, scores the estimator against
the generated truth in every cell, optionally scores the trivial baseline
(the observed matrix itself), fits log-log error rates per observation
probability, and emits machine-readable reports (JSON plus a flat CSV, one
row per grid cell).

Reproducibility contract: identical spec + seed gives byte-identical
report files, independent of the worker-thread count. Per-trial seeds are
derived as ``mix_seed(seed, stream, n_index, trial)`` (stream 1 = model
draws, stream 2 = mask/game draws); the p-grid index is deliberately not
part of the path, so cells at different p share their model draws and get
nested masks — paired comparisons across p. Cell wall times are tracked on
the in-memory results but never serialized, since timing would break
byte-identical reports.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .estimator import (
    EstimatorConfig,
    MaskedMatrix,
    SymmetryMode,
    trivial_estimate,
    usvt_estimate,
)
from .evaluation import (
    RateFit,
    bradley_terry_bracket,
    distance_bracket,
    lipschitz_latent_bracket,
    low_rank_lower_bound,
    mse,
    nuclear_bracket,
    psd_bracket,
    rate_fit,
)
from .generators import (
    GRAPHON_CATALOG,
    LATENT_CATALOG,
    bernoulli_mask,
    bernoulli_round,
    gen_blockmodel,
    gen_bradley_terry,
    gen_correlation_matrix,
    gen_distance_matrix,
    gen_graphon,
    gen_latent_space,
    gen_low_rank,
    gen_low_rank_adversary,
    gen_minimax_instance,
    play_tournament,
    uniform_points,
)
from .matrixio import read_matrix_csv, write_matrix_csv
from .rng import mix_seed

__all__ = [
    "MODEL_KINDS",
    "ModelSpec",
    "ExperimentSpec",
    "CellResult",
    "ExperimentReport",
    "run_experiment",
    "report_to_dict",
    "write_report_json",
    "write_report_csv",
    "estimate_file",
]

MODEL_KINDS = (
    "zero",
    "lowrank",
    "lowrank_adversary",
    "blockmodel",
    "distance",
    "latent",
    "correlation",
    "graphon",
    "bradley_terry",
    "minimax",
)


@dataclass(frozen=True)
class ModelSpec:
    """Model family plus its parameters.

    Parameters by kind:

    - ``zero``: none.
    - ``lowrank``: ``r`` (rank), ``noise`` ("none" = exact entries,
      "sign" = +-1 data with matching means).
    - ``lowrank_adversary``: ``r``.
    - ``blockmodel``: ``k``; either ``block_probs`` (k x k nested list) or
      ``in_prob``/``out_prob`` (defaults 0.8/0.2); ``observe_diagonal``
      (default True). Data = one Bernoulli adjacency draw.
    - ``distance``: ``dim`` (default 1), ``metric``; exact distances from
      uniform points on [0, 1]^dim.
    - ``latent``: ``dim``, ``f`` (name in :data:`LATENT_CATALOG`).
    - ``correlation``: none; exact entries observed.
    - ``graphon``: ``f`` (name in :data:`GRAPHON_CATALOG`); data = one
      adjacency draw.
    - ``bradley_terry``: ``family``, ``strengths`` (parametric only),
      ``games_per_pair`` (default 1). Masking is part of the tournament
      draw (pairs play with probability p).
    - ``minimax``: ``theta`` in [0, 1]; nuclear budget theta * n^{3/2}.
      Requires p < 1.
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValidationError(f"unknown model kind {self.kind!r}")
        object.__setattr__(self, "params", dict(self.params))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params)}

    @classmethod
    def from_dict(cls, d: dict) -> "ModelSpec":
        return cls(kind=d["kind"], params=d.get("params", {}))


@dataclass(frozen=True)
class ExperimentSpec:
    """Grid sweep description; see module docstring for seed semantics."""

    model: ModelSpec
    n_grid: tuple
    p_grid: tuple
    eta: float = 0.01
    sigma_sq: float | None = None
    trials: int = 1
    seed: int = 0
    baseline_trivial: bool = False

    def __post_init__(self):
        n_grid = tuple(int(n) for n in self.n_grid)
        p_grid = tuple(float(p) for p in self.p_grid)
        if not n_grid or not p_grid:
            raise ValidationError("n_grid and p_grid must be nonempty")
        if any(n < 1 for n in n_grid):
            raise ValidationError("matrix sizes must be positive")
        if any(not 0.0 <= p <= 1.0 for p in p_grid):
            raise ValidationError("observation probabilities must lie in [0, 1]")
        if self.trials < 1:
            raise ValidationError("trials must be >= 1")
        object.__setattr__(self, "n_grid", n_grid)
        object.__setattr__(self, "p_grid", p_grid)

    def to_dict(self) -> dict:
        return {
            "model": self.model.to_dict(),
            "n_grid": list(self.n_grid),
            "p_grid": list(self.p_grid),
            "eta": self.eta,
            "sigma_sq": self.sigma_sq,
            "trials": self.trials,
            "seed": self.seed,
            "baseline_trivial": self.baseline_trivial,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentSpec":
        return cls(
            model=ModelSpec.from_dict(d["model"]),
            n_grid=tuple(d["n_grid"]),
            p_grid=tuple(d["p_grid"]),
            eta=d.get("eta", 0.01),
            sigma_sq=d.get("sigma_sq"),
            trials=d.get("trials", 1),
            seed=d.get("seed", 0),
            baseline_trivial=d.get("baseline_trivial", False),
        )


@dataclass(frozen=True)
class CellResult:
    """Aggregated results for one (n, p) grid cell. ``wall_time`` is
    informational only and never serialized."""

    n: int
    p: float
    mean_mse: float | None
    std_mse: float | None
    mean_retained_rank: float | None
    bracket: float | None
    trivial_mean_mse: float | None
    failure: str | None
    wall_time: float


@dataclass(frozen=True)
class ExperimentReport:
    spec: ExperimentSpec
    cells: tuple
    rate_fits: dict


def _blockmodel_probs(prm) -> np.ndarray:
    k = int(prm["k"])
    if "block_probs" in prm:
        return np.asarray(prm["block_probs"], dtype=float)
    out = np.full((k, k), float(prm.get("out_prob", 0.2)))
    np.fill_diagonal(out, float(prm.get("in_prob", 0.8)))
    return out


def _catalog_lookup(catalog, name, what):
    try:
        return catalog[name]
    except KeyError:
        raise ValidationError(f"unknown {what} {name!r}; choose from {sorted(catalog)}") from None


def _realize(model: ModelSpec, n: int, p: float, model_seed: int, data_seed: int):
    """Build (masked data, truth, interval) for one trial."""
    kind, prm = model.kind, model.params
    mode = SymmetryMode.ASYMMETRIC
    interval = None
    if kind == "zero":
        truth = np.zeros((n, n))
        x = truth
    elif kind == "lowrank":
        truth = gen_low_rank(n, n, int(prm["r"]), model_seed)
        noise = prm.get("noise", "none")
        if noise == "none":
            x = truth
        elif noise == "sign":
            flips = bernoulli_round((truth + 1.0) / 2.0, mode, mix_seed(model_seed, 10))
            x = 2.0 * flips - 1.0
        else:
            raise ValidationError(f"unknown lowrank noise model {noise!r}")
    elif kind == "lowrank_adversary":
        truth = gen_low_rank_adversary(n, n, int(prm["r"]), model_seed)
        x = truth
    elif kind == "blockmodel":
        truth, x = gen_blockmodel(n, int(prm["k"]), _blockmodel_probs(prm), model_seed)
        mode = SymmetryMode.SYMMETRIC
        interval = (0.0, 1.0)
    elif kind == "distance":
        pts = uniform_points(n, int(prm.get("dim", 1)), model_seed)
        truth = gen_distance_matrix(pts, prm.get("metric", "euclidean"))
        x = truth
        mode = SymmetryMode.SYMMETRIC
        interval = (0.0, 1.0)
    elif kind == "latent":
        f = _catalog_lookup(LATENT_CATALOG, prm.get("f", "dot"), "latent function")
        truth, _ = gen_latent_space(n, int(prm.get("dim", 1)), f, model_seed)
        x = truth
    elif kind == "correlation":
        truth = gen_correlation_matrix(n, model_seed)
        x = truth
        mode = SymmetryMode.SYMMETRIC
    elif kind == "graphon":
        f = _catalog_lookup(GRAPHON_CATALOG, prm.get("f", "mean"), "graphon")
        sample = gen_graphon(n, f, model_seed)
        truth, x = sample.m, sample.adjacency
        mode = SymmetryMode.SYMMETRIC
        interval = (0.0, 1.0)
    elif kind == "bradley_terry":
        tm = gen_bradley_terry(
            n, model_seed, prm.get("family", "nonparametric_monotone"), prm.get("strengths")
        )
        data = play_tournament(tm, p, int(prm.get("games_per_pair", 1)), data_seed)
        return data, tm.p, (0.0, 1.0)
    elif kind == "minimax":
        theta = float(prm["theta"])
        inst = gen_minimax_instance(n, n, theta * n * math.sqrt(n), p, model_seed)
        truth = inst.m_matrix
        x = truth
    else:  # pragma: no cover - guarded by ModelSpec
        raise ValidationError(f"unknown model kind {kind!r}")

    mask = bernoulli_mask(n, n, p, mode, data_seed)
    if kind == "blockmodel" and not prm.get("observe_diagonal", True):
        mask = mask & ~np.eye(n, dtype=bool)
    data = MaskedMatrix(values=np.where(mask, x, 0.0), mask=mask, mode=mode)
    return data, truth, interval


def _bracket_for(model: ModelSpec, n: int, p: float, truth0: np.ndarray) -> float | None:
    """Family rate bracket where the family has one; otherwise the generic
    nuclear-norm bracket of the first trial's truth. p = 0 has no bracket."""
    if p <= 0.0:
        return None
    kind, prm = model.kind, model.params
    if kind == "lowrank":
        return min(math.sqrt(int(prm["r"]) / (n * p)), 1.0)
    if kind == "blockmodel":
        return min(math.sqrt(int(prm["k"]) / (n * p)), 1.0)
    if kind == "distance":
        dim = int(prm.get("dim", 1))
        return distance_bracket(n, p, lambda d: math.ceil(1.0 / d) ** dim)
    if kind == "latent":
        return lipschitz_latent_bracket(n, p, int(prm.get("dim", 1)))
    if kind == "correlation":
        return psd_bracket(n, p)
    if kind == "bradley_terry":
        return bradley_terry_bracket(n, p)
    if kind == "lowrank_adversary":
        return low_rank_lower_bound(n, int(prm["r"]), p)
    return nuclear_bracket(truth0, p).bracket


def _run_cell(spec: ExperimentSpec, i: int, j: int) -> CellResult:
    n = spec.n_grid[i]
    p = spec.p_grid[j]
    start = time.perf_counter()
    mses = []
    ranks = []
    trivial = []
    bracket = None
    try:
        for t in range(spec.trials):
            model_seed = mix_seed(spec.seed, 1, i, t)
            data_seed = mix_seed(spec.seed, 2, i, t)
            data, truth, interval = _realize(spec.model, n, p, model_seed, data_seed)
            if t == 0:
                bracket = _bracket_for(spec.model, n, p, truth)
            config = EstimatorConfig(
                eta=spec.eta, sigma_sq=spec.sigma_sq, interval=interval, mode=data.mode
            )
            report = usvt_estimate(data, config)
            mses.append(mse(report.estimate, truth))
            ranks.append(report.retained_rank)
            if spec.baseline_trivial:
                trivial.append(mse(trivial_estimate(data, interval), truth))
    except Exception as exc:
        return CellResult(
            n=n, p=p, mean_mse=None, std_mse=None, mean_retained_rank=None,
            bracket=None, trivial_mean_mse=None,
            failure=f"{type(exc).__name__}: {exc}",
            wall_time=time.perf_counter() - start,
        )
    arr = np.asarray(mses)
    return CellResult(
        n=n,
        p=p,
        mean_mse=float(arr.mean()),
        std_mse=float(arr.std()),
        mean_retained_rank=float(np.mean(ranks)),
        bracket=bracket,
        trivial_mean_mse=float(np.mean(trivial)) if trivial else None,
        failure=None,
        wall_time=time.perf_counter() - start,
    )


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> ExperimentReport:
    """Sweep the full grid; deterministic given the spec regardless of
    ``workers``. Failed cells carry a recorded reason; the rest complete."""
    if workers < 1:
        raise ValidationError("workers must be >= 1")
    indices = [(i, j) for i in range(len(spec.n_grid)) for j in range(len(spec.p_grid))]
    if workers == 1:
        cells = [_run_cell(spec, i, j) for i, j in indices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(lambda ij: _run_cell(spec, *ij), indices))
    n_p = len(spec.p_grid)
    fits = {}
    for j, p in enumerate(spec.p_grid):
        column = [cells[i * n_p + j] for i in range(len(spec.n_grid))]
        usable = [c for c in column if c.failure is None and c.mean_mse and c.mean_mse > 0.0]
        if len(usable) >= 3:
            fits[repr(float(p))] = rate_fit([c.n for c in usable], [c.mean_mse for c in usable])
        else:
            fits[repr(float(p))] = None
    return ExperimentReport(spec=spec, cells=tuple(cells), rate_fits=fits)


def _fit_to_dict(fit: RateFit | None):
    if fit is None:
        return None
    return {
        "ns": list(fit.ns),
        "mses": list(fit.mses),
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
    }


def report_to_dict(report: ExperimentReport) -> dict:
    """Canonical JSON structure (schema 1). Excludes wall times so that
    identical runs serialize to identical bytes."""
    return {
        "schema": 1,
        "spec": report.spec.to_dict(),
        "cells": [
            {
                "n": c.n,
                "p": c.p,
                "mean_mse": c.mean_mse,
                "std_mse": c.std_mse,
                "mean_retained_rank": c.mean_retained_rank,
                "bracket": c.bracket,
                "trivial_mean_mse": c.trivial_mean_mse,
                "failure": c.failure,
            }
            for c in report.cells
        ],
        "rate_fits": {key: _fit_to_dict(fit) for key, fit in report.rate_fits.items()},
    }


def write_report_json(report: ExperimentReport, path) -> None:
    payload = json.dumps(report_to_dict(report), sort_keys=True, indent=2, allow_nan=False)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(payload + "\n")


_CSV_COLUMNS = (
    "n", "p", "mean_mse", "std_mse", "mean_retained_rank",
    "bracket", "trivial_mean_mse", "failure",
)


def write_report_csv(report: ExperimentReport, path) -> None:
    """Flat per-cell table for plotting; one row per grid cell."""
    lines = [",".join(_CSV_COLUMNS)]
    for c in report.cells:
        row = []
        for col in _CSV_COLUMNS:
            value = getattr(c, col)
            if value is None:
                row.append("")
            elif col == "failure":
                row.append(str(value).replace(",", ";"))
            elif col == "n":
                row.append(str(value))
            else:
                row.append(repr(float(value)))
        lines.append(",".join(row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def estimate_file(
    input_path,
    out_path,
    report_path=None,
    *,
    eta: float = 0.01,
    sigma_sq: float | None = None,
    interval=None,
    mode: SymmetryMode = SymmetryMode.ASYMMETRIC,
    header: bool = False,
):
    """Estimate the mean matrix of a CSV file with NA-marked missing entries.

    Writes the estimate as CSV to ``out_path`` and, when ``report_path`` is
    given, a JSON diagnostics file (observed fraction, threshold, retained
    rank, no-data flag). Returns ``(EstimateReport, diagnostics dict)``.
    """
    values, mask = read_matrix_csv(input_path, header=header)
    data = MaskedMatrix(values=values, mask=mask, mode=mode)
    config = EstimatorConfig(eta=eta, sigma_sq=sigma_sq, interval=interval, mode=mode)
    report = usvt_estimate(data, config)
    write_matrix_csv(out_path, report.estimate, header=header)
    diagnostics = {
        "schema": 1,
        "shape": list(data.shape),
        "mode": mode.value,
        "eta": eta,
        "sigma_sq": sigma_sq,
        "interval": list(config.interval) if config.interval else None,
        "p_hat": report.p_hat,
        "q_hat": report.q_hat,
        "threshold": report.threshold,
        "retained_rank": report.retained_rank,
        "retained_indices": [int(v) for v in report.retained_indices],
        "no_data": report.no_data,
    }
    if report_path is not None:
        with open(report_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(json.dumps(diagnostics, sort_keys=True, indent=2, allow_nan=False) + "\n")
    return report, diagnostics
