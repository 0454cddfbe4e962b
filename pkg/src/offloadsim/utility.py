"""Per-edge utility scoring for offload candidates.

Each edge resource is scored on three normalized axes:

* CPU headroom: fraction of the CPU budget still free.
* Memory headroom: fraction of RAM left after subtracting the task
  footprint and the memory already in use.
* Link quality: received signal strength mapped linearly onto [0, 1]
  between a usable floor and a best-case ceiling.

A weighted sum combines the three into a single score per edge, and
scores from several robots are added edge-wise so the fleet can pick
the edge with the highest combined utility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import (
    InvalidBoundsError,
    InvalidSnapshotError,
    InvalidWeightsError,
    NoCandidatesError,
)

# Tolerance for the weight-simplex sum check.
WEIGHT_SUM_TOLERANCE = 1e-9


def clamp01(value: float) -> float:
    """Clamp a score into the closed unit interval."""
    return max(0.0, min(1.0, value))


@dataclass(frozen=True)
class DeviceSnapshot:
    """One profiler reading of an edge device.

    CPU figures are percentages; memory figures are megabytes. A
    reading where usage exceeds capacity is rejected outright rather
    than silently clamped, since it indicates a broken profiler.
    """

    edge_id: str
    t: float
    cpu_max: float
    cpu_used: float
    mem_max: float
    mem_used: float

    def __post_init__(self) -> None:
        if not (0.0 < self.cpu_max <= 100.0):
            raise InvalidSnapshotError(
                f"{self.edge_id}: cpu_max must be in (0, 100], got {self.cpu_max}"
            )
        if not (0.0 <= self.cpu_used <= self.cpu_max):
            raise InvalidSnapshotError(
                f"{self.edge_id}: cpu_used {self.cpu_used} outside [0, {self.cpu_max}]"
            )
        if self.mem_max <= 0.0:
            raise InvalidSnapshotError(
                f"{self.edge_id}: mem_max must be positive, got {self.mem_max}"
            )
        if not (0.0 <= self.mem_used <= self.mem_max):
            raise InvalidSnapshotError(
                f"{self.edge_id}: mem_used {self.mem_used} outside [0, {self.mem_max}]"
            )


@dataclass(frozen=True)
class NetworkSnapshot:
    """One RSSI reading for a robot-to-edge link, in dBm."""

    robot_id: str
    edge_id: str
    t: float
    rssi: float

    def __post_init__(self) -> None:
        if not (-120.0 <= self.rssi <= 0.0):
            raise InvalidSnapshotError(
                f"{self.robot_id}->{self.edge_id}: rssi {self.rssi} outside [-120, 0] dBm"
            )


@dataclass(frozen=True)
class NetworkBounds:
    """RSSI normalization range.

    ``min_rssi`` is the weakest signal considered usable for offloading
    and maps to a link score of 0; ``max_rssi`` maps to 1.
    """

    min_rssi: float = -85.0
    max_rssi: float = -30.0

    def __post_init__(self) -> None:
        if not (self.min_rssi < self.max_rssi):
            raise InvalidBoundsError(
                f"min_rssi {self.min_rssi} must be below max_rssi {self.max_rssi}"
            )


@dataclass(frozen=True)
class Weights:
    """Relative importance of the three utility axes.

    Each weight lies in [0, 1] and the three must sum to one. A vector
    that misses the simplex is rejected, never renormalized, so a typo
    in a config cannot silently change the trade-off.
    """

    w_cpu: float
    w_mem: float
    w_net: float

    def __post_init__(self) -> None:
        for name, w in (("w_cpu", self.w_cpu), ("w_mem", self.w_mem), ("w_net", self.w_net)):
            if not (0.0 <= w <= 1.0) or math.isnan(w):
                raise InvalidWeightsError(f"{name} must be in [0, 1], got {w}")
        total = self.w_cpu + self.w_mem + self.w_net
        if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
            raise InvalidWeightsError(f"weights must sum to 1, got {total}")


@dataclass(frozen=True)
class TaskSpec:
    """Resource demands of the collaborative task being offloaded."""

    task_id: str
    mem_footprint: float  # MB the task occupies on its host
    input_rate: float = 1.0  # messages per second per robot
    work_per_message: float = 100.0  # CPU-milliseconds at reference speed

    def __post_init__(self) -> None:
        if self.mem_footprint < 0.0:
            raise InvalidSnapshotError(f"mem_footprint must be >= 0, got {self.mem_footprint}")
        if self.input_rate < 0.0:
            raise InvalidSnapshotError(f"input_rate must be >= 0, got {self.input_rate}")
        if self.work_per_message <= 0.0:
            raise InvalidSnapshotError(
                f"work_per_message must be positive, got {self.work_per_message}"
            )


@dataclass(frozen=True)
class UtilityBreakdown:
    """Per-axis scores for one edge, plus the weighted total."""

    edge_id: str
    cpu: float
    mem: float
    net: float
    total: float
    sticky_bonus: float = 0.0


def cpu_utility(snapshot: DeviceSnapshot) -> float:
    """Fraction of CPU budget still free: (max - used) / max, clamped to [0, 1]."""
    if snapshot.cpu_max <= 0.0:
        raise InvalidSnapshotError(f"{snapshot.edge_id}: cpu_max must be positive")
    return clamp01((snapshot.cpu_max - snapshot.cpu_used) / snapshot.cpu_max)


def memory_utility(snapshot: DeviceSnapshot, task: TaskSpec) -> float:
    """Fraction of RAM left once the task footprint and current usage are
    subtracted: (max - footprint - used) / max, clamped to [0, 1].

    An edge that cannot even hold the task footprint clamps to 0 rather
    than going negative, so it never outranks a feasible edge.
    """
    if snapshot.mem_max <= 0.0:
        raise InvalidSnapshotError(f"{snapshot.edge_id}: mem_max must be positive")
    raw = (snapshot.mem_max - task.mem_footprint - snapshot.mem_used) / snapshot.mem_max
    return clamp01(raw)


def rssi_utility(reading: NetworkSnapshot, bounds: NetworkBounds) -> float:
    """Linear map of RSSI onto [0, 1] between the usable floor and the ceiling."""
    if not (bounds.min_rssi < bounds.max_rssi):
        raise InvalidBoundsError(
            f"min_rssi {bounds.min_rssi} must be below max_rssi {bounds.max_rssi}"
        )
    return clamp01((reading.rssi - bounds.min_rssi) / (bounds.max_rssi - bounds.min_rssi))


def total_utility(cpu: float, mem: float, net: float, weights: Weights) -> float:
    """Weighted sum of the three axis scores.

    The weight vector is re-validated here so a hand-built tuple that
    skipped the dataclass cannot sneak past the simplex constraint.
    """
    if isinstance(weights, tuple):
        weights = Weights(*weights)
    return weights.w_cpu * cpu + weights.w_mem * mem + weights.w_net * net


def sum_over_edges(tables: Mapping[str, Mapping[str, float]]) -> dict[str, float]:
    """Add per-robot utility tables edge-wise.

    ``tables`` maps robot id to that robot's edge->score table. The
    result covers the union of all edges seen; a robot missing an entry
    contributes 0 for that edge. Keys come back sorted so downstream
    iteration order is deterministic.
    """
    if not tables:
        raise NoCandidatesError("no utility tables to sum")
    edges: set[str] = set()
    for table in tables.values():
        edges.update(table.keys())
    if not edges:
        raise NoCandidatesError("utility tables name no edges")
    return {
        edge: sum(table.get(edge, 0.0) for table in tables.values())
        for edge in sorted(edges)
    }
