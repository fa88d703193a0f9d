"""Full dialogue state tracked by the manager during one episode."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..acts import DialogueAct, Function
from ..ontology import Database, Ontology, query_matches
from .belief import BeliefState, top_value
from .grounding import GroundingState

DEFAULT_BELIEF_THRESHOLD = 0.0
DEFAULT_REQUEST_THRESHOLD = 0.2

USER = "user"
SYSTEM = "system"


@dataclass
class DialogueState:
    """Beliefs, grounding, history and database context of one dialogue.

    Confined to a single episode; ``db_matches`` is kept equal to the query
    result for the accepted top-hypothesis constraints.
    """

    ontology: Ontology
    database: Database
    beliefs: BeliefState
    grounding: GroundingState
    db_matches: list[int]
    history: list[tuple[str, DialogueAct]] = field(default_factory=list)
    entity_under_discussion: int | None = None
    turn_count: int = 0
    last_top_confidence: float = 0.0
    last_user_act: DialogueAct | None = None
    last_system_act: DialogueAct | None = None
    last_requested_slot: str | None = None
    questioned_pair: tuple[str, str] | None = None
    answered_requests: set[str] = field(default_factory=set)
    recommended: bool = False
    asserted_at: dict[str, int] = field(default_factory=dict)
    belief_threshold: float = DEFAULT_BELIEF_THRESHOLD
    request_threshold: float = DEFAULT_REQUEST_THRESHOLD

    @classmethod
    def initial(
        cls,
        ontology: Ontology,
        database: Database,
        belief_threshold: float = DEFAULT_BELIEF_THRESHOLD,
        request_threshold: float = DEFAULT_REQUEST_THRESHOLD,
    ) -> DialogueState:
        return cls(
            ontology=ontology,
            database=database,
            beliefs=BeliefState.initial(ontology),
            grounding=GroundingState.initial(ontology.informable_slots),
            db_matches=[e.id for e in database.entities],
            belief_threshold=belief_threshold,
            request_threshold=request_threshold,
        )

    def top_constraints(self) -> dict[str, str]:
        """Argmax value of every slot whose normalized top belief exceeds the threshold."""
        constraints = {}
        for slot in self.ontology.informable_slots:
            top = top_value(self.beliefs, slot)
            if top is not None and top[1] > self.belief_threshold:
                constraints[slot] = top[0]
        return constraints

    def refresh_matches(self) -> None:
        self.db_matches = [e.id for e in query_matches(self.database, self.top_constraints())]

    def requested_slots(self) -> list[str]:
        """Requestable slots (other than name) the user is believed to ask for."""
        return [
            slot for slot in self.ontology.requestable_slots
            if slot != "name" and self.beliefs.requested.get(slot, 0.0) > self.request_threshold
        ]

    def pending_requests(self) -> list[str]:
        return [slot for slot in self.requested_slots() if slot not in self.answered_requests]

    @property
    def user_said_bye(self) -> bool:
        return self.last_user_act is not None and self.last_user_act.function is Function.BYE

    @property
    def task_complete(self) -> bool:
        return self.recommended and not self.pending_requests()

    def record_user_act(self, act: DialogueAct) -> None:
        """Bookkeeping for the top user hypothesis of a turn."""
        self.last_user_act = act
        self.history.append((USER, act))
        if act.function is Function.REQUEST:
            for slot in act.slots():
                if self.ontology.is_requestable(slot):
                    self.last_requested_slot = slot
                    self.answered_requests.discard(slot)
        elif act.function is Function.PROP_QUESTION and act.pairs():
            self.questioned_pair = act.pairs()[0]
        elif act.function is Function.INFORM:
            for slot, _ in act.pairs():
                if self.ontology.is_informable(slot):
                    self.asserted_at[slot] = len(self.history)

    def record_system_act(self, act: DialogueAct | None) -> None:
        self.turn_count += 1
        self.last_system_act = act
        if act is not None:
            self.history.append((SYSTEM, act))

    def to_record(self) -> dict[str, Any]:
        """Structured summary for per-turn logs."""
        return {
            "turn": self.turn_count,
            "beliefs": self.beliefs.to_dict(),
            "grounding": self.grounding.to_dict(),
            "constraints": self.top_constraints(),
            "db_matches": len(self.db_matches),
            "entity_under_discussion": self.entity_under_discussion,
            "last_top_confidence": round(self.last_top_confidence, 6),
            "pending_requests": self.pending_requests(),
            "recommended": self.recommended,
        }
