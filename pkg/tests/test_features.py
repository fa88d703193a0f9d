"""Tests for the dialogue state and per-agent features."""

from __future__ import annotations

import numpy as np
import pytest

from dimdial.acts import Agent, DialogueAct, Function
from dimdial.manager import track_user_turn
from dimdial.ontology import Database, Ontology, query_matches
from dimdial.state import (
    FEATURE_SCHEMA_VERSION,
    DialogueState,
    NBestList,
    extract_features,
    feature_length,
    feature_names,
)
from dimdial.state.features import BELIEF_BINS, CONFIDENCE_BINS, MATCH_BINS


def _groups(agent: Agent, ontology: Ontology) -> list[list[str]]:
    """Names of every one-hot group an agent's features contain."""
    groups = []
    if agent in (Agent.TASK, Agent.ONE_DIM):
        for slot in ontology.informable_slots:
            groups.append([f"task.{slot}.belief.{b}" for b in BELIEF_BINS])
            groups.append([n for n in feature_names(Agent.TASK, ontology)
                           if n.startswith(f"task.{slot}.grounding.")])
        groups.append([f"task.matches.{b}" for b in MATCH_BINS])
    if agent in (Agent.AUTO_FEEDBACK, Agent.ONE_DIM):
        groups.append([f"feedback.confidence.{b}" for b in CONFIDENCE_BINS])
        groups.append([n for n in feature_names(Agent.AUTO_FEEDBACK, ontology)
                       if n.startswith("feedback.unconfirmed.")])
    return groups


def _observe(state: DialogueState, act: DialogueAct, confidence: float = 1.0) -> DialogueState:
    return track_user_turn(state, NBestList.of((act, confidence)))


class TestDialogueState:
    """Tests for the tracked dialogue state."""

    def test_initial_matches_everything(self, ontology: Ontology, database: Database):
        state = DialogueState.initial(ontology, database)
        assert state.db_matches == list(range(149))
        assert state.top_constraints() == {}
        assert state.entity_under_discussion is None

    def test_matches_follow_accepted_constraints(self, ontology: Ontology, database: Database):
        state = DialogueState.initial(ontology, database)
        _observe(state, DialogueAct.make(Function.INFORM, ("foodtype", "indian")), 0.9)
        expected = [e.id for e in query_matches(database, {"foodtype": "indian"})]
        assert state.db_matches == expected
        assert state.top_constraints() == {"foodtype": "indian"}

    def test_weak_evidence_below_threshold_is_not_a_constraint(self, ontology: Ontology,
                                                                database: Database):
        state = DialogueState.initial(ontology, database, belief_threshold=0.2)
        _observe(state, DialogueAct.make(Function.INFORM, ("foodtype", "indian")), 0.2)
        assert state.top_constraints() == {}
        assert len(state.db_matches) == 149

    def test_repeated_confirmation_stays_a_constraint(self, ontology: Ontology,
                                                      database: Database):
        state = DialogueState.initial(ontology, database)
        for _ in range(6):
            _observe(state, DialogueAct.make(Function.INFORM, ("foodtype", "indian")), 0.4)
        assert state.top_constraints() == {"foodtype": "indian"}

    def test_requests_tracked(self, ontology: Ontology, database: Database):
        state = DialogueState.initial(ontology, database)
        _observe(state, DialogueAct.make(Function.REQUEST, ("address", None)), 0.9)
        assert state.requested_slots() == ["address"]
        assert state.last_requested_slot == "address"
        state.answered_requests.add("address")
        assert state.pending_requests() == []

    def test_history_and_turns(self, ontology: Ontology, database: Database):
        state = DialogueState.initial(ontology, database)
        _observe(state, DialogueAct.make(Function.GREET))
        state.record_system_act(None)
        assert state.turn_count == 1
        assert len(state.history) == 1
        assert state.user_said_bye is False

    def test_to_record(self, ontology: Ontology, database: Database):
        state = DialogueState.initial(ontology, database)
        record = state.to_record()
        assert record["db_matches"] == 149
        assert set(record["grounding"]) == set(ontology.informable_slots)


class TestFeatures:
    """Tests for feature extraction."""

    def test_lengths(self, ontology: Ontology):
        assert feature_length(Agent.TASK, ontology) == 42
        assert feature_length(Agent.AUTO_FEEDBACK, ontology) == 10
        assert feature_length(Agent.SOCIAL_OBL_MAN, ontology) == 3
        assert feature_length(Agent.ONE_DIM, ontology) == 55

    def test_one_dim_is_concatenation(self, ontology: Ontology):
        assert feature_names(Agent.ONE_DIM, ontology) == (
            feature_names(Agent.TASK, ontology)
            + feature_names(Agent.AUTO_FEEDBACK, ontology)
            + feature_names(Agent.SOCIAL_OBL_MAN, ontology)
        )

    def test_names_unique(self, ontology: Ontology):
        names = feature_names(Agent.ONE_DIM, ontology)
        assert len(set(names)) == len(names)

    def test_schema_version(self):
        assert FEATURE_SCHEMA_VERSION == "features-v1"

    @pytest.mark.parametrize("agent", list(Agent))
    def test_binary_with_one_hot_groups(self, agent: Agent, ontology: Ontology,
                                        database: Database):
        """Each one-hot group has exactly one active feature at every turn."""
        state = DialogueState.initial(ontology, database)
        acts = [
            (DialogueAct.make(Function.INFORM, ("foodtype", "indian")), 0.9),
            (DialogueAct.make(Function.INFORM, ("area", "north"), ("near", "science_park")), 0.4),
            (DialogueAct.make(Function.REQUEST, ("address", None)), 0.7),
            (DialogueAct.make(Function.BYE), 0.2),
        ]
        for act, confidence in [(DialogueAct.make(Function.GREET), 1.0), *acts]:
            _observe(state, act, confidence)
            features = extract_features(state, agent)
            assert len(features) == feature_length(agent, ontology)
            assert set(np.unique(features.values)) <= {0.0, 1.0}
            values = features.as_dict()
            for group in _groups(agent, ontology):
                assert sum(values[name] for name in group) == 1.0, group

    def test_initial_task_features(self, ontology: Ontology, database: Database):
        features = extract_features(DialogueState.initial(ontology, database), Agent.TASK)
        active = features.active()
        assert "task.matches.5+" in active
        assert "task.foodtype.belief.unknown" in active
        assert "task.foodtype.grounding.unmentioned" in active
        assert "task.bias" in active
        assert "task.recommended" not in active

    def test_belief_bins(self, ontology: Ontology, database: Database):
        state = DialogueState.initial(ontology, database)
        _observe(state, DialogueAct.make(Function.INFORM, ("foodtype", "indian")), 0.9)
        active = extract_features(state, Agent.TASK).active()
        # 0.9 / 1.9 is below one half
        assert "task.foodtype.belief.le0.5" in active
        assert "task.foodtype.grounding.user_informed" in active

    def test_certain_belief_stays_in_lowest_bin(self, ontology: Ontology, database: Database):
        state = DialogueState.initial(ontology, database)
        _observe(state, DialogueAct.make(Function.INFORM, ("foodtype", "indian")), 1.0)
        active = extract_features(state, Agent.TASK).active()
        assert "task.foodtype.belief.le0.5" in active
        assert "task.foodtype.belief.le0.8" not in active

    def test_feedback_features(self, ontology: Ontology, database: Database):
        state = DialogueState.initial(ontology, database)
        _observe(state, DialogueAct.make(
            Function.INFORM, ("foodtype", "indian"), ("area", "north")), 0.45)
        active = extract_features(state, Agent.AUTO_FEEDBACK).active()
        assert active == ["feedback.confidence.le0.5", "feedback.unconfirmed.2", "feedback.bias"]

    def test_social_features(self, ontology: Ontology, database: Database):
        state = DialogueState.initial(ontology, database)
        _observe(state, DialogueAct.make(Function.BYE))
        assert extract_features(state, Agent.SOCIAL_OBL_MAN).active() == [
            "social.user_bye", "social.bias"
        ]
