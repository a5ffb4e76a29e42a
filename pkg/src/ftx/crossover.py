"""Classical-runtime fitting and quantum-classical crosspoint location.

The classical side is characterized from optimization traces in three
steps: extrapolate the ground-truth energy linearly in truncation error,
fit the tail of the error-vs-time curve as a power law to get a
time-to-accuracy estimate, and fit those estimates across system sizes
(exponentially for square geometries, power law for quasi-1d ones).  The
crosspoint is the smallest size at which the quantum runtime beats the
fitted classical curve.

No tensor-network computation happens here; traces are ingested, and the
package ships the published single-CPU benchmark endpoints as data files.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

__all__ = [
    "TracePoint",
    "FitKind",
    "FitResult",
    "CrossoverReport",
    "extrapolate_ground_energy",
    "fit_time_to_accuracy",
    "fit_size_scaling",
    "find_crosspoint",
    "read_trace",
    "load_classical_endpoints",
    "load_quantum_endpoints",
    "HARDWARE_SPEEDUP_BOUND",
]

# published single-CPU endpoints may improve by about this factor on
# GPU / multi-node hardware; reports carry it as a lower-bound band
HARDWARE_SPEEDUP_BOUND = 0.1


@dataclass(frozen=True)
class TracePoint:
    elapsed_s: float
    energy: float
    bond_dim: int
    trunc_error: Optional[float] = None

    def __post_init__(self):
        if self.bond_dim < 1:
            raise ValueError(f"bond dimension must be >= 1, got {self.bond_dim}")


class FitKind(Enum):
    LINEAR_EXTRAPOLATION = "linear_extrapolation"
    POWER_LAW = "power_law"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class FitResult:
    kind: FitKind
    params: tuple[float, float]  # (intercept, slope) in fit space
    residual: float

    def __post_init__(self):
        if not all(math.isfinite(p) for p in self.params):
            raise ValueError(f"fit parameters must be finite, got {self.params}")
        if self.residual < 0:
            raise ValueError("residual cannot be negative")

    def evaluate(self, x: float) -> float:
        a, b = self.params
        if self.kind is FitKind.LINEAR_EXTRAPOLATION:
            return a + b * x
        if self.kind is FitKind.EXPONENTIAL:
            return math.exp(a + b * x)
        return math.exp(a + b * math.log(x))


def _least_squares(xs, ys, kind: FitKind) -> FitResult:
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 2:
        raise ValueError("need at least two points to fit")
    if np.ptp(x) == 0:
        raise ValueError("degenerate fit: all abscissae identical")
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((intercept + slope * x - y) ** 2)))
    return FitResult(kind=kind, params=(float(intercept), float(slope)), residual=resid)


def extrapolate_ground_energy(
    points: Sequence[tuple[float, float]]
) -> FitResult:
    """Zero-truncation energy from (truncation error, energy) pairs."""
    if len(points) < 2:
        raise ValueError("need at least two (truncation error, energy) points")
    deltas = [p[0] for p in points]
    energies = [p[1] for p in points]
    return _least_squares(deltas, energies, FitKind.LINEAR_EXTRAPOLATION)


def fit_time_to_accuracy(
    trace: Sequence[TracePoint],
    e0: float,
    target: float,
    tail_fraction: float = 0.5,
    extrapolate: bool = True,
) -> float:
    """Seconds until the fitted energy error decays to `target`.

    Fits log(E - e0) against log(t) on the late part of the trace (by
    elapsed time) and inverts the power law.  With extrapolation disabled
    the target must already be reached within the observed error range.
    """
    if target <= 0:
        raise ValueError(f"target accuracy must be positive, got {target}")
    if not 0 < tail_fraction <= 1:
        raise ValueError(f"tail fraction must lie in (0, 1], got {tail_fraction}")
    usable = [p for p in trace if p.elapsed_s > 0]
    if len(usable) < 3:
        raise ValueError("need at least three trace points")
    t_end = max(p.elapsed_s for p in usable)
    cutoff = (1.0 - tail_fraction) * t_end
    tail = [p for p in usable if p.elapsed_s >= cutoff]
    errors = [p.energy - e0 for p in tail]
    if any(e <= 0 for e in errors):
        raise ValueError("tail contains energies at or below the extrapolated floor")
    if not extrapolate and target < min(errors):
        raise ValueError(
            f"target {target} below the smallest observed error {min(errors)} "
            "and extrapolation is disabled"
        )
    fit = _least_squares(
        [math.log(p.elapsed_s) for p in tail],
        [math.log(e) for e in errors],
        FitKind.POWER_LAW,
    )
    a, b = fit.params
    if b >= 0:
        raise ValueError("error does not decay along the trace tail")
    return math.exp((math.log(target) - a) / b)


def fit_size_scaling(
    sizes: Sequence[float], times: Sequence[float], form: FitKind
) -> FitResult:
    """Runtime-vs-size trend, exponential or power law."""
    if len(sizes) != len(times):
        raise ValueError("sizes and times must have equal length")
    if len(sizes) < 3:
        raise ValueError("need at least three points for a size-scaling fit")
    if any(t <= 0 for t in times):
        raise ValueError("runtimes must be positive")
    ys = [math.log(t) for t in times]
    if form is FitKind.EXPONENTIAL:
        return _least_squares(list(sizes), ys, FitKind.EXPONENTIAL)
    if form is FitKind.POWER_LAW:
        if any(s <= 0 for s in sizes):
            raise ValueError("power-law fit needs positive sizes")
        return _least_squares([math.log(s) for s in sizes], ys, FitKind.POWER_LAW)
    raise ValueError(f"unsupported size-scaling form {form}")


@dataclass(frozen=True)
class CrossoverReport:
    crosspoint: Optional[float]
    sizes: tuple[float, ...]
    classical_s: tuple[float, ...]
    quantum_s: tuple[Optional[float], ...]
    classical_lower_bound_s: tuple[float, ...]

    @property
    def found(self) -> bool:
        return self.crosspoint is not None


def find_crosspoint(
    classical: FitResult, quantum: Sequence[tuple[float, float]]
) -> CrossoverReport:
    """Smallest size at which the quantum runtime drops below the fit.

    Both curves are reported on the union grid; absence of a crossover in
    range is a regular result, not an error.
    """
    if not quantum:
        raise ValueError("need at least one quantum (size, seconds) point")
    qmap = {float(s): float(t) for s, t in quantum}
    sizes = sorted(qmap)
    crosspoint = None
    for s in sizes:
        if qmap[s] < classical.evaluate(s):
            crosspoint = s
            break
    classical_s = tuple(classical.evaluate(s) for s in sizes)
    return CrossoverReport(
        crosspoint=crosspoint,
        sizes=tuple(sizes),
        classical_s=classical_s,
        quantum_s=tuple(qmap[s] for s in sizes),
        classical_lower_bound_s=tuple(
            HARDWARE_SPEEDUP_BOUND * t for t in classical_s
        ),
    )


# ---------------------------------------------------------------------------
# data ingestion


def read_trace(path: Union[str, Path]) -> list[TracePoint]:
    """CSV with header elapsed_s,energy,bond_dim[,trunc_error]."""
    points = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            trunc = row.get("trunc_error")
            points.append(
                TracePoint(
                    elapsed_s=float(row["elapsed_s"]),
                    energy=float(row["energy"]),
                    bond_dim=int(row["bond_dim"]),
                    trunc_error=float(trunc) if trunc not in (None, "") else None,
                )
            )
    return points


def _data_rows(filename: str) -> list[dict]:
    ref = resources.files("ftx.data").joinpath(filename)
    with ref.open(newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def load_classical_endpoints(
    model: str,
    coupling: Optional[float] = None,
    geometry: str = "square",
    source: str = "dmrg-cpu-v1",
) -> list[tuple[float, float]]:
    """Published time-to-accuracy endpoints as (linear size, seconds)."""
    rows = _data_rows("classical_runtimes.csv")
    out = []
    for row in rows:
        if row["model"] != model or row["geometry"] != geometry:
            continue
        if source is not None and row["source"] != source:
            continue
        if coupling is not None and abs(float(row["coupling"]) - coupling) > 1e-12:
            continue
        out.append((float(row["size"]), float(row["seconds"])))
    if not out:
        raise ValueError(
            f"no classical endpoints for model={model!r} geometry={geometry!r}"
        )
    return sorted(out)


def load_quantum_endpoints(
    model: str, n_factories: int = 16, threads: int = 16
) -> list[tuple[float, float]]:
    """Estimated quantum runtimes as (linear size, seconds)."""
    rows = _data_rows("quantum_runtimes.csv")
    out = [
        (float(r["size"]), float(r["seconds"]))
        for r in rows
        if r["model"] == model
        and int(r["n_factories"]) == n_factories
        and int(r["threads"]) == threads
    ]
    if not out:
        raise ValueError(f"no quantum endpoints for model={model!r}")
    return sorted(out)


def load_quantum_rows(model: Optional[str] = None) -> list[dict]:
    """Full quantum-runtime reference rows (distance, qubits, repetitions)."""
    rows = _data_rows("quantum_runtimes.csv")
    return [r for r in rows if model is None or r["model"] == model]


def load_reference_beats(model: Optional[str] = None) -> list[dict]:
    """Scheduler reference beat counts per (model, size, threads, factories)."""
    rows = _data_rows("select_beats.csv")
    return [r for r in rows if model is None or r["model"] == model]
