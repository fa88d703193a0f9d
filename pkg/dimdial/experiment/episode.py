"""One simulated dialogue: user act, noisy channel, manager, reward."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from ..config import ErrorConfig
from ..manager import Manager
from ..policy import EpisodeTrace, TraceStep
from ..simulation import AgendaUser, corrupt
from .records import DialogueRecorder


@dataclass(frozen=True)
class EpisodeOutcome:
    """Trace and summary of a finished dialogue."""

    trace: EpisodeTrace
    total_reward: float
    discounted_return: float
    success: bool
    length: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "total_reward": self.total_reward,
            "discounted_return": round(self.discounted_return, 6),
            "success": self.success,
            "length": self.length,
        }


def run_episode(
    manager: Manager,
    user: AgendaUser,
    errors: ErrorConfig,
    epsilon: float,
    rng: np.random.Generator,
    max_system_turns: int = 30,
    gamma: float = 0.95,
    recorder: DialogueRecorder | None = None,
    episode: int | None = None,
) -> EpisodeOutcome:
    """Play one dialogue until the user's goodbye is returned or the turn cutoff.

    A goodbye before the user says bye does not end the dialogue. Every
    system turn costs 1; the closing turn earns 30 more when the user's
    goal is met. Hitting the cutoff is a failure.
    """
    state = manager.reset()
    ontology = state.ontology
    trace = EpisodeTrace()
    if recorder is not None:
        recorder.write({"event": "goal", "episode": episode, "goal": user.goal.to_dict()})

    user_act, over = user.react(None, rng)
    for turn in range(max_system_turns):
        nbest = corrupt(user_act, errors, rng, ontology)
        manager.observe(nbest)
        record, system_act = manager.respond(epsilon, rng)
        next_act, over = user.react(system_act, rng)
        terminal = over or turn == max_system_turns - 1
        reward = user.reward(terminal)
        trace.append(TraceStep(record.features, record.actions, reward))
        if recorder is not None:
            recorder.write({
                "event": "turn",
                "episode": episode,
                "turn": turn + 1,
                "user_act": user_act.to_notation(),
                "nbest": [[h.act.to_notation(), round(h.confidence, 6)] for h in nbest],
                "state": manager.state.to_record(),
                **record.to_dict(),
                "user_reply": next_act.to_notation(),
                "reward": reward,
            })
        user_act = next_act
        if over:
            break

    success = over and user.is_success()
    outcome = EpisodeOutcome(
        trace=trace,
        total_reward=trace.total_return,
        discounted_return=trace.discounted_return(gamma),
        success=success,
        length=len(trace),
    )
    if recorder is not None:
        recorder.write({"event": "outcome", "episode": episode, **outcome.to_dict()})
    return outcome
