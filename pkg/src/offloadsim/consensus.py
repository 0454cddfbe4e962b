"""Fleet-wide consensus and task remapping.

Every robot runs the same executor logic over the same set of
proposals, so consensus needs no leader: the decision is a pure
function of (proposals, previous winner), and each robot arrives at
the identical result independently. A decision requires a quorum of at
least half the fleet (rounded up); short of that the round is deferred
and the previous winner stands.

Vote ties prefer the incumbent, then the smallest edge id, so a split
fleet cannot oscillate. The first quorate winner simply becomes the
task's home (launching is not a switch); after that an actual move
only happens when the winner changed AND differs from the last edge
the task was remapped to. The remap itself rebinds the task's
channels to the winner atomically, and re-applying the same plan is a
no-op.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .errors import ConfigError, RemapError


@dataclass(frozen=True)
class Decision:
    """Outcome of one consensus round.

    ``quorate`` is False when too few proposals arrived; the round then
    carries the previous winner forward with empty votes.
    """

    iteration: int
    winner: Optional[str]
    votes: dict[str, int]
    switched: bool
    quorate: bool = True


@dataclass
class AllocationMemory:
    """What the executor remembers between rounds."""

    last_remapped: Optional[str] = None
    history: list[tuple[int, str]] = field(default_factory=list)


@dataclass(frozen=True)
class RemapPlan:
    """An atomic rename of the task's channels onto the winning edge."""

    task_id: str
    target: str
    in_topics: tuple[str, ...]
    out_topics: tuple[str, ...]
    mapping: dict[str, str]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != sorted(self.in_topics):
            raise RemapError("mapping keys must be exactly the in topics")
        if sorted(self.mapping.values()) != sorted(self.out_topics):
            raise RemapError("mapping values must be exactly the out topics")
        if len(set(self.out_topics)) != len(self.out_topics):
            raise RemapError("out topics must be unique")


def quorum_size(total_robots: int) -> int:
    if total_robots <= 0:
        raise ConfigError(f"total_robots must be positive, got {total_robots}")
    return math.ceil(total_robots / 2)


def consensus(
    proposals: Mapping[str, str],
    previous: Optional[str],
    total_robots: int,
    iteration: int,
) -> Decision:
    """Plurality vote over the robots' proposed edges.

    Pure and symmetric: any robot evaluating the same proposals against
    the same previous winner computes the identical decision.
    """
    needed = quorum_size(total_robots)
    if len(proposals) < needed:
        return Decision(iteration, previous, {}, switched=False, quorate=False)
    votes: dict[str, int] = {}
    for robot_id in sorted(proposals):
        edge = proposals[robot_id]
        votes[edge] = votes.get(edge, 0) + 1
    votes = dict(sorted(votes.items()))
    top = max(votes.values())
    tied = [edge for edge, count in votes.items() if count == top]
    if previous in tied:
        winner = previous
    else:
        winner = min(tied)
    # The very first placement is not a switch: there is no incumbent
    # to switch away from, so a fleet with a single edge (or a stable
    # favorite) reports zero switches for its whole run.
    switched = previous is not None and winner != previous
    return Decision(iteration, winner, votes, switched=switched, quorate=True)


def decide_offload(
    decision: Decision,
    memory: AllocationMemory,
    channels: Sequence[str],
    task_id: str,
) -> Optional[RemapPlan]:
    """Turn a decision into a remap plan, or None when nothing moves.

    The first quorate winner is recorded as the task's initial home
    without a plan (launching is not remapping). After that, a plan is
    emitted only for a quorate decision whose winner both changed this
    round and differs from the last target actually remapped to; this
    guards against replaying a move after deferred rounds blurred the
    previous-winner bookkeeping.
    """
    if decision.quorate and decision.winner is not None:
        if memory.history and memory.history[-1][0] >= decision.iteration:
            raise ConfigError(
                f"decision iterations must increase, got {decision.iteration} "
                f"after {memory.history[-1][0]}"
            )
        memory.history.append((decision.iteration, decision.winner))
        if memory.last_remapped is None:
            memory.last_remapped = decision.winner
            return None
    if not decision.quorate or not decision.switched or decision.winner is None:
        return None
    if decision.winner == memory.last_remapped:
        return None
    in_topics = tuple(channels)
    mapping = {ch: f"{ch}@{decision.winner}" for ch in in_topics}
    plan = RemapPlan(
        task_id=task_id,
        target=decision.winner,
        in_topics=in_topics,
        out_topics=tuple(mapping[ch] for ch in in_topics),
        mapping=mapping,
    )
    memory.last_remapped = decision.winner
    return plan


@dataclass
class ChannelBinding:
    """Where one logical task channel currently points."""

    name: str
    mapped_to: str
    host: Optional[str] = None


class ChannelRegistry:
    """The single shared table of task channel bindings."""

    def __init__(self, names: Sequence[str]) -> None:
        self._bindings = {n: ChannelBinding(n, n, None) for n in names}

    def __contains__(self, name: str) -> bool:
        return name in self._bindings

    def binding(self, name: str) -> ChannelBinding:
        return self._bindings[name]

    def names(self) -> list[str]:
        return sorted(self._bindings)

    def host_of(self, name: str) -> Optional[str]:
        return self._bindings[name].host

    def snapshot(self) -> dict[str, tuple[str, Optional[str]]]:
        return {n: (b.mapped_to, b.host) for n, b in sorted(self._bindings.items())}


def apply_remap(plan: RemapPlan, registry: ChannelRegistry) -> ChannelRegistry:
    """Rebind every in-channel to its renamed form on the plan's target.

    All-or-nothing: the registry is checked for every channel before
    any binding changes, so an unknown channel leaves it untouched.
    """
    missing = [ch for ch in plan.in_topics if ch not in registry]
    if missing:
        raise RemapError(f"unknown channels in remap plan: {missing}")
    for ch in plan.in_topics:
        binding = registry.binding(ch)
        binding.mapped_to = plan.mapping[ch]
        binding.host = plan.target
    return registry


class ConsensusExecutor:
    """One robot's executor: votes in, decisions and remap plans out.

    Every robot runs one of these over the same proposal set each
    round; the harness applies at most one of the (identical) plans to
    the shared registry per iteration.
    """

    def __init__(self, robot_id: str, total_robots: int, task_id: str,
                 channels: Sequence[str]) -> None:
        quorum_size(total_robots)  # validate early
        self.robot_id = robot_id
        self.total_robots = total_robots
        self.task_id = task_id
        self.channels = tuple(channels)
        self.previous: Optional[str] = None
        self.memory = AllocationMemory()
        self.decisions: list[Decision] = []

    def on_proposals(
        self, proposals: Mapping[str, str], iteration: int
    ) -> tuple[Decision, Optional[RemapPlan]]:
        decision = consensus(proposals, self.previous, self.total_robots, iteration)
        if decision.quorate:
            self.previous = decision.winner
        plan = decide_offload(decision, self.memory, self.channels, self.task_id)
        self.decisions.append(decision)
        return decision, plan
