"""Canned scenario presets for experiments and the acceptance suite."""

from __future__ import annotations

from .config import EdgeSpec, ExecModel, RobotSpec, ScenarioConfig, SpikeModel
from .profiling import LoadSpike
from .utility import TaskSpec, Weights


def stress_scenario(seed: int = 1, scheme: str = "dynamic:both") -> ScenarioConfig:
    """Three robots, three heterogeneous edges, randomized load bursts.

    The first edge has half the compute capacity and a tighter memory
    situation, so a scheduler that reads the profilers should route
    work away from it; random CPU+memory bursts (a heavy vision job
    starting on an edge, for instance) periodically make whichever edge
    they land on unattractive. Robots produce messages for 240 seconds;
    the run ends when the full budget has been worked off or at the
    600-second cap, whichever is first.
    """
    robots = (
        RobotSpec("r1", x=0.0, y=0.0),
        RobotSpec("r2", x=8.0, y=0.0),
        RobotSpec("r3", x=0.0, y=8.0),
    )
    edges = (
        EdgeSpec("e1", x=4.0, y=4.0, mem_max=4096.0, base_cpu=25.0, base_mem=1800.0,
                 capacity_factor=0.5),
        EdgeSpec("e2", x=10.0, y=4.0, mem_max=4096.0, base_cpu=20.0, base_mem=1000.0,
                 capacity_factor=1.0),
        EdgeSpec("e3", x=4.0, y=10.0, mem_max=4096.0, base_cpu=20.0, base_mem=1000.0,
                 capacity_factor=1.0),
    )
    return ScenarioConfig(
        name="stress-3x3",
        robots=robots,
        edges=edges,
        task=TaskSpec("merge", mem_footprint=512.0, input_rate=2.0, work_per_message=80.0),
        scheme=scheme,
        spike_model=SpikeModel(
            rate=0.06,
            cpu_range=(50.0, 70.0),
            mem_range=(800.0, 1600.0),
            duration_range=(20.0, 60.0),
        ),
        # Hosting the merge costs real CPU (roughly 4 points per queued
        # message, capped at 40), so fixed placements concentrate load
        # on one edge while the scheduler spreads it.
        exec_model=ExecModel(cpu_per_message=4.0, task_cpu_cap=40.0),
        sticky_bonus=0.05,
        duration=600.0,
        nominal_duration=240.0,
        seed=seed,
    )


def flapping_scenario(sticky_bonus: float, seed: int = 1) -> ScenarioConfig:
    """Two equal edges whose loads alternate in a small square wave.

    Every ten seconds the busier edge swaps, moving each robot's
    utility difference between the two edges back and forth inside
    +/- 0.03 (CPU-only weights, 2.9 CPU points of swing, no noise).
    With no sticky bonus the fleet chases every swap; any bonus of at
    least the swing amplitude pins the first selection forever. No
    messages flow, isolating pure switching behavior.
    """
    half_period = 10.0
    duration = 300.0
    swing = 2.9  # CPU points; utility difference stays within +/- 0.029

    def alternating(first_busy: bool) -> tuple[LoadSpike, ...]:
        spikes = []
        start = 0.0 if first_busy else half_period
        t = start
        while t < duration:
            spikes.append(LoadSpike(start=t, duration=half_period, cpu_add=swing))
            t += 2.0 * half_period
        return tuple(spikes)

    robots = (
        RobotSpec("r1", x=0.0, y=0.0, input_rate=0.0),
        RobotSpec("r2", x=1.0, y=0.0, input_rate=0.0),
        RobotSpec("r3", x=0.0, y=1.0, input_rate=0.0),
    )
    edges = (
        EdgeSpec("e1", x=2.0, y=2.0, base_cpu=50.0, base_mem=1000.0, spikes=alternating(True)),
        EdgeSpec("e2", x=2.0, y=2.0, base_cpu=50.0, base_mem=1000.0, spikes=alternating(False)),
    )
    return ScenarioConfig(
        name="two-edge-flapping",
        robots=robots,
        edges=edges,
        task=TaskSpec("merge", mem_footprint=0.0, input_rate=0.0, work_per_message=80.0),
        scheme="dynamic:cpu",
        # pure CPU weighting so the crafted oscillation is the whole signal
        weights=Weights(1.0, 0.0, 0.0),
        sticky_bonus=sticky_bonus,
        noise_amp=0.0,
        duration=duration,
        seed=seed,
    )
