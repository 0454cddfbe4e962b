"""Radio link and message transport model.

Signal strength follows a log-distance path-loss law with optional
seeded shadowing noise, and throughput is a step function of RSSI in
the shape of discrete wireless rate tiers. Message delivery time is
base latency plus serialization at that throughput; a link below the
usable RSSI floor drops the message instead.

Shadowing is a pure function of (seed, endpoints, sample time), not a
stateful RNG stream, so evaluating the same link twice at the same
instant always yields the same value regardless of call order.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ConfigError

RSSI_FLOOR_DBM = -120.0
RSSI_CEILING_DBM = -20.0

# (minimum RSSI dBm, throughput Mbps), strongest tier first. Links at
# or above the scenario's usable floor but below every tier fall back
# to a 1 Mbps trickle; below the floor they carry nothing.
DEFAULT_RATE_TIERS: tuple[tuple[float, float], ...] = (
    (-50.0, 54.0),
    (-60.0, 36.0),
    (-70.0, 18.0),
    (-80.0, 6.0),
)


@dataclass(frozen=True)
class NodePose:
    """Planar position of a node at a moment in time."""

    node_id: str
    x: float
    y: float
    t: float = 0.0

    def __post_init__(self) -> None:
        for name, v in (("x", self.x), ("y", self.y), ("t", self.t)):
            if not math.isfinite(v):
                raise ConfigError(f"{self.node_id}: pose {name} must be finite, got {v}")


@dataclass(frozen=True)
class LinkModel:
    """Log-distance path-loss channel.

    ``ref_power_dbm`` is the received power at ``ref_distance`` meters;
    every decade of distance beyond that costs ``10 * path_loss_exp``
    dB. ``shadow_sigma`` is the standard deviation of the zero-mean
    Gaussian shadowing term in dB; zero disables it.
    """

    ref_power_dbm: float = -40.0
    ref_distance: float = 1.0
    path_loss_exp: float = 2.2
    shadow_sigma: float = 2.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not (1.5 <= self.path_loss_exp <= 6.0):
            raise ConfigError(
                f"path_loss_exp must be in [1.5, 6], got {self.path_loss_exp}"
            )
        if self.ref_distance <= 0.0:
            raise ConfigError(f"ref_distance must be positive, got {self.ref_distance}")
        if self.shadow_sigma < 0.0:
            raise ConfigError(f"shadow_sigma must be >= 0, got {self.shadow_sigma}")


@dataclass(frozen=True)
class Message:
    """A task payload in flight from a robot to an edge resource."""

    src: str
    dst: str
    size_bytes: int
    created_at: float
    seq: int = 0

    def __post_init__(self) -> None:
        if self.size_bytes <= 0:
            raise ConfigError(f"message size must be positive, got {self.size_bytes}")


@dataclass(frozen=True)
class Delivery:
    """Outcome of handing a message to the channel.

    ``arrival_at`` is None when the link was below the usable floor and
    the message was dropped.
    """

    message: Message
    sent_at: float
    throughput_mbps: float
    arrival_at: Optional[float]

    @property
    def dropped(self) -> bool:
        return self.arrival_at is None


def _shadowing_db(link: LinkModel, src: str, dst: str, t: float) -> float:
    if link.shadow_sigma == 0.0:
        return 0.0
    rng = random.Random(f"{link.seed}/shadow/{src}/{dst}/{t!r}")
    return rng.gauss(0.0, link.shadow_sigma)


def rssi_at(link: LinkModel, src_pose: NodePose, dst_pose: NodePose) -> float:
    """Received signal strength in dBm between two poses.

    Distances inside the reference distance clamp to the reference, and
    the result clamps into the physically plausible [-120, -20] dBm
    window. Shadowing is sampled at the source pose's timestamp.
    """
    d = math.hypot(src_pose.x - dst_pose.x, src_pose.y - dst_pose.y)
    d = max(d, link.ref_distance)
    rssi = link.ref_power_dbm - 10.0 * link.path_loss_exp * math.log10(d / link.ref_distance)
    rssi += _shadowing_db(link, src_pose.node_id, dst_pose.node_id, src_pose.t)
    return max(RSSI_FLOOR_DBM, min(RSSI_CEILING_DBM, rssi))


def validate_rate_tiers(tiers: Sequence[tuple[float, float]]) -> None:
    """Reject tier tables that would make throughput non-monotone in RSSI."""
    if not tiers:
        raise ConfigError("rate tier table must not be empty")
    for (hi_rssi, hi_rate), (lo_rssi, lo_rate) in zip(tiers, tiers[1:]):
        if not (hi_rssi > lo_rssi and hi_rate >= lo_rate):
            raise ConfigError(
                f"rate tiers must descend in rssi and rate: {tiers}"
            )


def throughput_of(
    rssi: float,
    min_rssi: float = -85.0,
    tiers: Sequence[tuple[float, float]] = DEFAULT_RATE_TIERS,
) -> float:
    """Map RSSI to link throughput in Mbps via the step tier table."""
    for tier_rssi, rate in tiers:
        if rssi >= tier_rssi:
            return rate
    if rssi >= min_rssi:
        return 1.0
    return 0.0


def deliver(
    msg: Message,
    rssi: float,
    now: float,
    base_latency: float = 0.005,
    min_rssi: float = -85.0,
    tiers: Sequence[tuple[float, float]] = DEFAULT_RATE_TIERS,
) -> Delivery:
    """Compute when a message sent now arrives, or drop it.

    Arrival is ``now + base_latency + bits / throughput``; a zero-rate
    link yields a drop rather than an infinite delay.
    """
    rate = throughput_of(rssi, min_rssi=min_rssi, tiers=tiers)
    if rate <= 0.0:
        return Delivery(msg, sent_at=now, throughput_mbps=0.0, arrival_at=None)
    tx_time = (msg.size_bytes * 8.0) / (rate * 1e6)
    return Delivery(msg, sent_at=now, throughput_mbps=rate, arrival_at=now + base_latency + tx_time)
