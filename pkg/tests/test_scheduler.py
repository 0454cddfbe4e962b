"""Tests for the per-robot scheduler: scoring, exchange, hysteresis."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from offloadsim.errors import ConfigError, NoCandidatesError
from offloadsim.profiling import EdgeData
from offloadsim.scheduler import (
    PeerTable,
    Scheduler,
    UtilityTableMsg,
    calculate_utility,
    exchange_and_sum,
    select_max_edge,
    validate_sticky_bonus,
)
from offloadsim.utility import (
    DeviceSnapshot,
    NetworkBounds,
    NetworkSnapshot,
    TaskSpec,
    Weights,
    cpu_utility,
)

TOL = 1e-12
TASK = TaskSpec("merge", mem_footprint=0.0)
BOUNDS = NetworkBounds()
CPU_ONLY = Weights(1.0, 0.0, 0.0)


def edge_view(edge_id, cpu_used, *, stale=False, robot_id="r1", rssi=-40.0, t=0.0):
    device = DeviceSnapshot(edge_id, t, 100.0, cpu_used, 4096.0, 0.0)
    network = NetworkSnapshot(robot_id, edge_id, t, rssi)
    return EdgeData(edge_id, device, network, 0.0, 0.0, stale)


def scheduler(robot_id="r1", h=0.05, weights=CPU_ONLY):
    return Scheduler(robot_id, TASK, BOUNDS, weights, sticky_bonus=h)


# ----------------------------------------------------------------- scoring

def test_sticky_bonus_keeps_incumbent_ahead_of_close_rival():
    view = {"e1": edge_view("e1", 50.0), "e2": edge_view("e2", 47.0)}
    table = calculate_utility(view, TASK, BOUNDS, CPU_ONLY,
                              selected_edge="e1", sticky_bonus=0.05)
    assert table["e1"] == pytest.approx(0.55, abs=TOL)
    assert table["e2"] == pytest.approx(0.53, abs=TOL)
    assert select_max_edge(table).max_edge == "e1"


def test_without_bonus_the_rival_wins():
    view = {"e1": edge_view("e1", 50.0), "e2": edge_view("e2", 47.0)}
    table = calculate_utility(view, TASK, BOUNDS, CPU_ONLY,
                              selected_edge="e1", sticky_bonus=0.0)
    assert select_max_edge(table).max_edge == "e2"


def test_stale_edge_scores_zero():
    view = {"e1": edge_view("e1", 0.0, stale=True), "e2": edge_view("e2", 90.0)}
    table = calculate_utility(view, TASK, BOUNDS, CPU_ONLY)
    assert table["e1"] == 0.0
    assert table["e2"] == pytest.approx(0.1, abs=TOL)


def test_absent_edge_scores_zero():
    view = {"e1": None, "e2": edge_view("e2", 40.0)}
    table = calculate_utility(view, TASK, BOUNDS, CPU_ONLY)
    assert table["e1"] == 0.0


def test_all_edges_absent_is_an_error():
    with pytest.raises(NoCandidatesError):
        calculate_utility({"e1": None, "e2": None}, TASK, BOUNDS, CPU_ONLY)
    with pytest.raises(NoCandidatesError):
        calculate_utility({}, TASK, BOUNDS, CPU_ONLY)


def test_sticky_bonus_not_granted_to_stale_incumbent():
    view = {"e1": edge_view("e1", 10.0, stale=True), "e2": edge_view("e2", 90.0)}
    table = calculate_utility(view, TASK, BOUNDS, CPU_ONLY,
                              selected_edge="e1", sticky_bonus=0.3)
    assert table["e1"] == 0.0


def test_sticky_bonus_range_enforced():
    validate_sticky_bonus(0.0)
    validate_sticky_bonus(0.5)
    with pytest.raises(ConfigError):
        validate_sticky_bonus(0.6)
    with pytest.raises(ConfigError):
        validate_sticky_bonus(-0.01)


# ------------------------------------------------------- exchange and vote

def test_three_identical_tables_sum_edgewise():
    own = {"e1": 0.4, "e2": 0.5}
    peers = {
        "r2": PeerTable({"e1": 0.4, "e2": 0.5}, received_at=10.0, iteration=3),
        "r3": PeerTable({"e1": 0.4, "e2": 0.5}, received_at=10.0, iteration=3),
    }
    summed = exchange_and_sum("r1", own, peers, now=10.0, staleness_window=3.0)
    assert summed == pytest.approx({"e1": 1.2, "e2": 1.5}, abs=TOL)
    assert select_max_edge(summed).max_edge == "e2"


def test_stale_peer_tables_are_excluded():
    own = {"e1": 0.4, "e2": 0.5}
    peers = {
        "r2": PeerTable({"e1": 0.9, "e2": 0.1}, received_at=1.0, iteration=0),
    }
    summed = exchange_and_sum("r1", own, peers, now=10.0, staleness_window=3.0)
    assert summed == pytest.approx(own, abs=TOL)


def test_exact_tie_goes_to_smallest_edge_id():
    assert select_max_edge({"e2": 1.0, "e1": 1.0}).max_edge == "e1"
    assert select_max_edge({"e9": 2.0, "e10": 2.0}).max_edge == "e10"  # lexicographic


def test_select_from_empty_table_is_an_error():
    with pytest.raises(NoCandidatesError):
        select_max_edge({})


# -------------------------------------------------------- scheduler object

def test_scheduler_round_trip_single_robot():
    sched = scheduler(h=0.0)
    view = {"e1": edge_view("e1", 60.0), "e2": edge_view("e2", 20.0)}
    msg = sched.build_table(view, now=1.0, iteration=0)
    assert msg.robot_id == "r1" and msg.iteration == 0
    proposal = sched.propose(view, now=1.0, iteration=0)
    assert proposal.max_edge == "e2"


def test_scheduler_uses_fresh_peer_tables():
    sched = scheduler(h=0.0)
    view = {"e1": edge_view("e1", 40.0), "e2": edge_view("e2", 45.0)}
    # Peers strongly prefer e2; combined vote should follow.
    peer = UtilityTableMsg("r2", 0, (("e1", 0.1), ("e2", 0.9)), sent_at=1.0)
    sched.observe_peer(peer, received_at=1.0)
    proposal = sched.propose(view, now=1.0, iteration=0)
    assert proposal.max_edge == "e2"
    assert proposal.table["e2"] == pytest.approx(0.55 + 0.9, abs=TOL)


def test_scheduler_ignores_its_own_broadcast():
    sched = scheduler()
    echo = UtilityTableMsg("r1", 0, (("e1", 9.9),), sent_at=1.0)
    sched.observe_peer(echo, received_at=1.0)
    assert sched.peers == {}


def test_all_stale_retains_previous_selection():
    sched = scheduler()
    sched.commit("e2")
    view = {"e1": edge_view("e1", 10.0, stale=True), "e2": edge_view("e2", 90.0, stale=True)}
    proposal = sched.propose(view, now=5.0, iteration=3)
    assert proposal.max_edge == "e2"


def test_all_stale_without_history_falls_back_to_scores():
    sched = scheduler()
    view = {"e1": edge_view("e1", 10.0, stale=True), "e2": edge_view("e2", 90.0, stale=True)}
    proposal = sched.propose(view, now=5.0, iteration=0)
    assert proposal.max_edge == "e1"  # all-zero table, smallest id wins


def test_commit_updates_the_incumbent():
    sched = scheduler()
    sched.commit("e7")
    assert sched.selected_edge == "e7"
    sched.commit(None)
    assert sched.selected_edge == "e7"


# -------------------------------------------------------------- properties

@given(
    incumbent_load=st.integers(min_value=0, max_value=100),
    rival_load=st.integers(min_value=0, max_value=100),
    h=st.floats(min_value=0.0, max_value=0.5, allow_nan=False),
)
def test_switch_proposed_iff_rival_beats_incumbent_plus_bonus(incumbent_load, rival_load, h):
    sched = scheduler(h=h)
    sched.commit("e1")
    view = {
        "e1": edge_view("e1", float(incumbent_load)),
        "e2": edge_view("e2", float(rival_load)),
    }
    proposal = sched.propose(view, now=1.0, iteration=1)
    score_a = cpu_utility(view["e1"].device)
    score_b = cpu_utility(view["e2"].device)
    if score_b > score_a + h:
        assert proposal.max_edge == "e2"
    else:
        assert proposal.max_edge == "e1"


@given(
    scores=st.dictionaries(
        keys=st.sampled_from([f"e{i}" for i in range(1, 11)]),
        values=st.floats(min_value=0.0, max_value=3.0, allow_nan=False),
        min_size=1,
        max_size=10,
    )
)
def test_select_max_edge_matches_bruteforce(scores):
    got = select_max_edge(scores).max_edge
    best = max(scores.values())
    expected = sorted(e for e, s in scores.items() if s == best)[0]
    assert got == expected
