"""Scripted manager that reads the simulated user's true goal.

It asks for each constraint the user has not mentioned, recommends the
lowest-id venue satisfying the goal, answers the open requests and says
goodbye. Its scores bound what a learned policy can reach in the simulator.
"""

from __future__ import annotations

import numpy as np

from ..acts import DialogueAct, Function, SystemAction
from ..config import ManagerConfig
from ..ontology import Database, Ontology, query_matches
from ..simulation import AgendaUser
from ..state import DialogueState, Grounding, NBestList
from .manager import SystemTurnRecord, track_user_turn


class OracleManager:
    """Goal-reading manager for one episode."""

    def __init__(
        self,
        ontology: Ontology,
        database: Database,
        user: AgendaUser,
        config: ManagerConfig | None = None,
    ) -> None:
        self.ontology = ontology
        self.database = database
        self.user = user
        self.config = config or ManagerConfig()
        self.closing = False
        self._asked: set[str] = set()
        self.state = self.reset()

    def reset(self) -> DialogueState:
        self.closing = False
        self._asked = set()
        self.state = DialogueState.initial(
            self.ontology, self.database,
            belief_threshold=self.config.belief_threshold,
            request_threshold=self.config.request_threshold,
        )
        return self.state

    def observe(self, nbest: NBestList) -> DialogueState:
        return track_user_turn(self.state, nbest)

    def _decide(self) -> tuple[SystemAction | None, DialogueAct | None]:
        goal = self.user.goal
        state = self.state
        if goal.received_recommendation is None:
            for slot in self.ontology.informable_slots:
                if (
                    slot in goal.informed_constraints
                    and slot not in self._asked
                    and state.grounding[slot] is Grounding.UNMENTIONED
                ):
                    self._asked.add(slot)
                    return SystemAction.ASK_SLOT, DialogueAct.make(Function.SET_QUESTION, (slot, None))
            entity = query_matches(self.database, goal.constraints)[0]
            content = [("name", entity.name)]
            content += [(s, entity.value(s)) for s in goal.informed_constraints]
            state.entity_under_discussion = entity.id
            state.recommended = True
            return SystemAction.RECOMMEND, DialogueAct.make(
                Function.RECOMMEND, *content, entity_ref=entity.id
            )
        pending = goal.unsatisfied_requests
        if pending:
            entity = self.database.get(goal.received_recommendation)
            state.answered_requests.add(pending[0])
            return SystemAction.ANSWER_SET, DialogueAct.make(
                Function.INFORM, (pending[0], entity.value(pending[0])), entity_ref=entity.id
            )
        return SystemAction.RETURN_GOODBYE, DialogueAct.make(Function.RETURN_GOODBYE)

    def respond(
        self, epsilon: float, rng: np.random.Generator
    ) -> tuple[SystemTurnRecord, DialogueAct | None]:
        output, act = self._decide()
        self.state.record_system_act(act)
        if output is SystemAction.RETURN_GOODBYE:
            self.closing = True
        return SystemTurnRecord((), output, act), act
