"""Summary actions of the one- and multi-dimensional managers and the
rule-based combination of per-dimension candidates."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum, IntEnum

from ..exceptions import ValidationError
from .taxonomy import Dimension


class SystemAction(IntEnum):
    """Output actions; values are the one-dimensional system's action indices."""

    NEGATIVE_FEEDBACK = 0
    PROP_Q_FEEDBACK = 1
    ANSWER_SET = 2
    ANSWER_PROP = 3
    RECOMMEND = 4
    RETURN_GOODBYE = 5
    ASK_SLOT = 6

    @property
    def dimension(self) -> Dimension:
        """Dimension of the dialogue act this action produces."""
        return _OUTPUT_DIMENSION[self]

    @property
    def description(self) -> str:
        return _DESCRIPTIONS[self]


_OUTPUT_DIMENSION = {
    SystemAction.NEGATIVE_FEEDBACK: Dimension.AUTO_FEEDBACK,
    SystemAction.PROP_Q_FEEDBACK: Dimension.AUTO_FEEDBACK,
    SystemAction.ANSWER_SET: Dimension.TASK,
    SystemAction.ANSWER_PROP: Dimension.TASK,
    SystemAction.RECOMMEND: Dimension.TASK,
    SystemAction.RETURN_GOODBYE: Dimension.SOCIAL_OBL_MAN,
    SystemAction.ASK_SLOT: Dimension.TASK,
}

_DESCRIPTIONS = {
    SystemAction.NEGATIVE_FEEDBACK: 'negative feedback ("could you repeat that please?")',
    SystemAction.PROP_Q_FEEDBACK: 'propositional question feedback ("did you say ...?")',
    SystemAction.ANSWER_SET: 'answer to setQuestion ("the address is ...")',
    SystemAction.ANSWER_PROP: 'answer to propQuestion ("yes" / "no, it serves ...")',
    SystemAction.RECOMMEND: "venue recommendation",
    SystemAction.RETURN_GOODBYE: 'returnGoodbye ("goodbye!"), closes the dialogue',
    SystemAction.ASK_SLOT: 'setQuestion ("what kind of food do you like?")',
}


class Agent(str, Enum):
    """MDP agents; the one-dimensional agent spans all three dimensions."""

    ONE_DIM = "OneDim"
    TASK = "Task"
    AUTO_FEEDBACK = "AutoFeedback"
    SOCIAL_OBL_MAN = "SocialOblMan"

    @property
    def dimension(self) -> Dimension | None:
        return None if self is Agent.ONE_DIM else Dimension(self.value)


MULTI_DIM_AGENTS = (Agent.TASK, Agent.AUTO_FEEDBACK, Agent.SOCIAL_OBL_MAN)


@dataclass(frozen=True)
class SummaryAction:
    """A policy-level action of one agent.

    ``output`` is the system action it stands for, or None for the agent's
    null action.
    """

    index: int
    agent: Agent
    label: str
    output: SystemAction | None

    @property
    def dimension(self) -> Dimension:
        if self.output is not None:
            return self.output.dimension
        assert self.agent.dimension is not None
        return self.agent.dimension

    @property
    def is_null(self) -> bool:
        return self.output is None


def _actions(agent: Agent, spec: list[tuple[str, SystemAction | None]]) -> tuple[SummaryAction, ...]:
    return tuple(SummaryAction(i, agent, label, out) for i, (label, out) in enumerate(spec))


ONE_DIM_ACTIONS = _actions(Agent.ONE_DIM, [
    ("negativeFeedback", SystemAction.NEGATIVE_FEEDBACK),
    ("propQFeedback", SystemAction.PROP_Q_FEEDBACK),
    ("answerSet", SystemAction.ANSWER_SET),
    ("answerProp", SystemAction.ANSWER_PROP),
    ("recommend", SystemAction.RECOMMEND),
    ("returnGoodbye", SystemAction.RETURN_GOODBYE),
    ("askSlot", SystemAction.ASK_SLOT),
])

TASK_ACTIONS = _actions(Agent.TASK, [
    ("askSlot", SystemAction.ASK_SLOT),
    ("recommend", SystemAction.RECOMMEND),
    ("answerSet", SystemAction.ANSWER_SET),
    ("answerProp", SystemAction.ANSWER_PROP),
    ("null", None),
])

FEEDBACK_ACTIONS = _actions(Agent.AUTO_FEEDBACK, [
    ("negativeFeedback", SystemAction.NEGATIVE_FEEDBACK),
    ("propQFeedback", SystemAction.PROP_Q_FEEDBACK),
    ("null", None),
])

SOCIAL_ACTIONS = _actions(Agent.SOCIAL_OBL_MAN, [
    ("returnGoodbye", SystemAction.RETURN_GOODBYE),
    ("null", None),
])

ACTION_SETS: dict[Agent, tuple[SummaryAction, ...]] = {
    Agent.ONE_DIM: ONE_DIM_ACTIONS,
    Agent.TASK: TASK_ACTIONS,
    Agent.AUTO_FEEDBACK: FEEDBACK_ACTIONS,
    Agent.SOCIAL_OBL_MAN: SOCIAL_ACTIONS,
}

NULL_BUCKET = "null"


def action_set(agent: Agent) -> tuple[SummaryAction, ...]:
    return ACTION_SETS[agent]


def _require(action: SummaryAction, agent: Agent) -> None:
    actions = ACTION_SETS[agent]
    if (
        action.agent is not agent
        or not 0 <= action.index < len(actions)
        or actions[action.index] != action
    ):
        raise ValidationError(
            f"Action '{action.label}' does not belong to the {agent.value} action set",
            field=agent.value, value=action.label,
        )


def combine_candidate_acts(
    task: SummaryAction,
    feedback: SummaryAction,
    social: SummaryAction,
) -> SystemAction | None:
    """Resolve one candidate per dimension into a single output action.

    Precedence: negative feedback cancels everything; a non-null task act
    drops feedback and social candidates; goodbye needs a null task act;
    propositional feedback is used only when nothing else was chosen. The
    all-null triple yields None (the system passes its turn).

    Raises:
        ValidationError: If an action is passed for the wrong dimension.
    """
    _require(task, Agent.TASK)
    _require(feedback, Agent.AUTO_FEEDBACK)
    _require(social, Agent.SOCIAL_OBL_MAN)

    if feedback.output is SystemAction.NEGATIVE_FEEDBACK:
        return SystemAction.NEGATIVE_FEEDBACK
    if task.output is not None:
        return task.output
    if social.output is SystemAction.RETURN_GOODBYE:
        return SystemAction.RETURN_GOODBYE
    if feedback.output is SystemAction.PROP_Q_FEEDBACK:
        return SystemAction.PROP_Q_FEEDBACK
    return None


def enumerate_combination_table() -> dict[int | str, int]:
    """Tally all 5x3x2 candidate triples by resolved output action index."""
    table: dict[int | str, int] = {int(a): 0 for a in SystemAction}
    table[NULL_BUCKET] = 0
    for task, feedback, social in itertools.product(TASK_ACTIONS, FEEDBACK_ACTIONS, SOCIAL_ACTIONS):
        output = combine_candidate_acts(task, feedback, social)
        table[NULL_BUCKET if output is None else int(output)] += 1
    return table
