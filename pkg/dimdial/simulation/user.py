"""Agenda-based simulated user.

The user holds a goal sampled from a real venue and a stack of pending
acts. System acts are answered by pushing and popping that stack; the
goodbye at the bottom is only emitted once the goal is met. A system
returnGoodbye closes the dialogue only when it returns that goodbye;
before then the user carries on as after a turn without output.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..acts import DialogueAct, Function
from ..ontology import DONTCARE, Database, Entity

logger = logging.getLogger(__name__)

CONSTRAINT_PROBABILITY = 0.7
GREET_PROBABILITY = 0.5
MAX_REQUESTS = 3

TURN_REWARD = -1.0
SUCCESS_REWARD = 30.0

REQUEST_SLOTS = ("phonenumber", "address", "price", "postcode")


def _inform(slot: str, value: str) -> DialogueAct:
    return DialogueAct.make(Function.INFORM, (slot, value))


def _request(slot: str) -> DialogueAct:
    return DialogueAct.make(Function.REQUEST, (slot, None))


BYE = DialogueAct.make(Function.BYE)


@dataclass
class UserGoal:
    """What the user wants; ``constraints`` come from ``seed_entity``."""

    constraints: dict[str, str]
    requests: tuple[str, ...]
    seed_entity: int
    satisfied_requests: set[str] = field(default_factory=set)
    received_recommendation: int | None = None

    @property
    def informed_constraints(self) -> dict[str, str]:
        """Constraints other than dontcare."""
        return {s: v for s, v in self.constraints.items() if v != DONTCARE}

    @property
    def unsatisfied_requests(self) -> list[str]:
        return [s for s in self.requests if s not in self.satisfied_requests]

    def to_dict(self) -> dict[str, Any]:
        return {
            "constraints": dict(self.constraints),
            "requests": list(self.requests),
            "seed_entity": self.seed_entity,
            "satisfied_requests": sorted(self.satisfied_requests),
            "received_recommendation": self.received_recommendation,
        }


class Agenda:
    """Stack of pending user acts; the bottom goodbye is never popped."""

    def __init__(self, bottom: DialogueAct = BYE) -> None:
        self._stack: list[DialogueAct] = [bottom]

    def push(self, act: DialogueAct) -> None:
        self._stack.append(act)

    def push_all(self, acts: list[DialogueAct]) -> None:
        """Push ``acts`` so that ``acts[0]`` ends up on top."""
        for act in reversed(acts):
            self._stack.append(act)

    def peek(self) -> DialogueAct:
        return self._stack[-1]

    def pop(self) -> DialogueAct:
        if len(self._stack) == 1:
            return self._stack[0]
        return self._stack.pop()

    def pop_to_bottom(self) -> DialogueAct:
        del self._stack[1:]
        return self._stack[0]

    @property
    def only_bottom(self) -> bool:
        return len(self._stack) == 1

    def __len__(self) -> int:
        return len(self._stack)

    def acts(self) -> list[DialogueAct]:
        """Pending acts, top first."""
        return list(reversed(self._stack))


def sample_goal(db: Database, rng: np.random.Generator) -> tuple[UserGoal, Agenda]:
    """Draw a satisfiable goal and its opening agenda."""
    entity = db.entities[int(rng.integers(len(db.entities)))]
    constraints = {
        slot: entity.informable[slot] if rng.random() < CONSTRAINT_PROBABILITY else DONTCARE
        for slot in db.ontology.informable_slots
    }
    count = int(rng.integers(1, MAX_REQUESTS + 1))
    picked = rng.choice(len(REQUEST_SLOTS), size=count, replace=False)
    requests = tuple(REQUEST_SLOTS[int(i)] for i in picked)
    goal = UserGoal(constraints=constraints, requests=requests, seed_entity=entity.id)

    agenda = Agenda()
    informs = [_inform(s, v) for s, v in goal.informed_constraints.items()]
    order = rng.permutation(len(informs))
    opening = [informs[int(i)] for i in order]
    if rng.random() < GREET_PROBABILITY:
        opening.insert(0, DialogueAct.make(Function.GREET))
    agenda.push_all(opening)
    return goal, agenda


class AgendaUser:
    """Simulated user for one episode."""

    def __init__(self, database: Database, goal: UserGoal, agenda: Agenda) -> None:
        self.database = database
        self.goal = goal
        self.agenda = agenda
        self.last_act: DialogueAct | None = None
        self.dialogue_over = False

    @classmethod
    def start(cls, database: Database, rng: np.random.Generator) -> AgendaUser:
        goal, agenda = sample_goal(database, rng)
        return cls(database, goal, agenda)

    @property
    def goal_met(self) -> bool:
        goal = self.goal
        if goal.received_recommendation is None:
            return False
        entity = self.database.get(goal.received_recommendation)
        return entity.matches(goal.constraints) and not goal.unsatisfied_requests

    @property
    def said_bye(self) -> bool:
        """True iff the user's last act was its goodbye."""
        return self.last_act is not None and self.last_act.function is Function.BYE

    def is_success(self) -> bool:
        """True iff a matching venue was received and every request answered."""
        return self.goal_met

    def reward(self, terminal: bool) -> float:
        """-1 per system turn, plus 30 at a successful termination."""
        if terminal and self.dialogue_over and self.is_success():
            return TURN_REWARD + SUCCESS_REWARD
        return TURN_REWARD

    def _answered(self, act: DialogueAct) -> bool:
        return act.function is Function.REQUEST and all(
            s in self.goal.satisfied_requests for s in act.slots()
        )

    def _next(self) -> DialogueAct:
        """Next act from the agenda, skipping requests answered meanwhile."""
        if self.goal_met:
            return self.agenda.pop_to_bottom()
        while not self.agenda.only_bottom:
            act = self.agenda.pop()
            if not self._answered(act):
                return act
        if self.goal.received_recommendation is None:
            return _request("name")
        pending = self.goal.unsatisfied_requests
        if pending:
            return _request(pending[0])
        return self.agenda.peek()

    def _emit(self, act: DialogueAct) -> tuple[DialogueAct, bool]:
        self.last_act = act
        return act, self.dialogue_over

    def react(self, system_act: DialogueAct | None, rng: np.random.Generator) -> tuple[DialogueAct, bool]:
        """Answer one system act; returns the user act and whether the dialogue is over.

        ``None`` stands for a system turn without output (and for the
        opening turn).
        """
        if self.dialogue_over:
            return self._emit(BYE)
        if system_act is None:
            return self._emit(self._next())

        function = system_act.function
        if function is Function.RETURN_GOODBYE:
            if not self.said_bye:
                return self._emit(self._next())
            self.dialogue_over = True
            return self._emit(BYE)
        if function is Function.NEGATIVE_FEEDBACK:
            if self.last_act is not None:
                return self._emit(self.last_act)
            return self._emit(self._next())
        if function is Function.SET_QUESTION:
            return self._emit(self._answer_question(system_act))
        if function in (Function.PROP_QUESTION_FEEDBACK, Function.PROP_QUESTION):
            return self._emit(self._answer_check(system_act))
        if function is Function.RECOMMEND and system_act.entity_ref is not None:
            return self._emit(self._consider(system_act.entity_ref, rng))
        if function is Function.INFORM and system_act.entity_ref is None:
            return self._emit(self._no_match(rng))
        if function is Function.INFORM:
            self._take_answer(system_act)
        return self._emit(self._next())

    def _answer_question(self, system_act: DialogueAct) -> DialogueAct:
        for slot in system_act.slots():
            if slot in self.goal.constraints:
                return _inform(slot, self.goal.constraints[slot])
        return self._next()

    def _answer_check(self, system_act: DialogueAct) -> DialogueAct:
        pairs = [(s, v) for s, v in system_act.pairs() if s in self.goal.constraints]
        if not pairs:
            return self._next()
        slot, value = pairs[0]
        wanted = self.goal.constraints[slot]
        if value == wanted:
            return DialogueAct.make(Function.AFFIRM, (slot, value))
        self.agenda.push(_inform(slot, wanted))
        return DialogueAct.make(Function.DENY, (slot, value))

    def _consider(self, entity_id: int, rng: np.random.Generator) -> DialogueAct:
        if entity_id not in self.database:
            logger.debug("Recommendation of unknown entity %s ignored", entity_id)
            return self._next()
        entity: Entity = self.database.get(entity_id)
        violated = entity.violated(self.goal.constraints)
        if violated:
            slot = violated[int(rng.integers(len(violated)))]
            self.agenda.push(_inform(slot, self.goal.constraints[slot]))
            return self.agenda.pop()
        if self.goal.received_recommendation != entity_id:
            if self.goal.received_recommendation is not None:
                self.goal.satisfied_requests.clear()
            self.goal.received_recommendation = entity_id
            self.agenda.push_all([_request(s) for s in self.goal.unsatisfied_requests])
        return self._next()

    def _no_match(self, rng: np.random.Generator) -> DialogueAct:
        candidates = list(self.goal.informed_constraints) or list(self.goal.constraints)
        slot = candidates[int(rng.integers(len(candidates)))]
        self.agenda.push(_inform(slot, self.goal.constraints[slot]))
        return self.agenda.pop()

    def _take_answer(self, system_act: DialogueAct) -> None:
        if system_act.entity_ref != self.goal.received_recommendation:
            return
        for slot, _ in system_act.pairs():
            if slot in self.goal.requests:
                self.goal.satisfied_requests.add(slot)
