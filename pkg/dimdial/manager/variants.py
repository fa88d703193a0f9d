"""One-dimensional and multi-dimensional manager variants."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from ..acts import MULTI_DIM_AGENTS, Agent
from ..exceptions import ValidationError
from ..ontology import Ontology
from ..policy import LinearQPolicy
from ..state import feature_length


@dataclass
class OneDimVariant:
    """A single MDP choosing among all seven output actions."""

    policy: LinearQPolicy
    frozen: frozenset[Agent] = field(default_factory=frozenset)
    name = "one-dim"

    def __post_init__(self) -> None:
        if self.policy.agent is not Agent.ONE_DIM:
            raise ValidationError("One-dim variant needs a OneDim policy",
                                  field="policy", value=self.policy.agent.value)
        if not self.frozen <= {Agent.ONE_DIM}:
            raise ValidationError("Only the OneDim agent can be frozen", field="frozen",
                                  value=sorted(a.value for a in self.frozen))

    @property
    def policies(self) -> dict[Agent, LinearQPolicy]:
        return {Agent.ONE_DIM: self.policy}


@dataclass
class MultiDimVariant:
    """Task, AutoFeedback and SocialOblMan MDPs run side by side."""

    task: LinearQPolicy
    feedback: LinearQPolicy
    social: LinearQPolicy
    frozen: frozenset[Agent] = field(default_factory=frozenset)
    name = "multi-dim"

    def __post_init__(self) -> None:
        for policy, agent in zip((self.task, self.feedback, self.social), MULTI_DIM_AGENTS):
            if policy.agent is not agent:
                raise ValidationError(f"Expected a {agent.value} policy", field="policy",
                                      value=policy.agent.value)
        if not self.frozen <= set(MULTI_DIM_AGENTS):
            raise ValidationError("Frozen agents must be multi-dim agents", field="frozen",
                                  value=sorted(a.value for a in self.frozen))

    @property
    def policies(self) -> dict[Agent, LinearQPolicy]:
        return {Agent.TASK: self.task, Agent.AUTO_FEEDBACK: self.feedback,
                Agent.SOCIAL_OBL_MAN: self.social}


ManagerVariant = OneDimVariant | MultiDimVariant


def one_dim_variant(
    ontology: Ontology,
    policy: LinearQPolicy | None = None,
    frozen: bool = False,
) -> OneDimVariant:
    """One-dim variant from a trained policy, or from zero weights."""
    policy = policy.copy() if policy else LinearQPolicy.zeros(
        Agent.ONE_DIM, feature_length(Agent.ONE_DIM, ontology)
    )
    return OneDimVariant(policy, frozenset({Agent.ONE_DIM}) if frozen else frozenset())


def multi_dim_variant(
    ontology: Ontology,
    sources: Mapping[Agent, LinearQPolicy] | None = None,
    frozen: Iterable[Agent] = (),
) -> MultiDimVariant:
    """Multi-dim variant; agents without a source policy start from zero weights."""
    sources = sources or {}
    policies = [
        sources[agent].copy() if agent in sources
        else LinearQPolicy.zeros(agent, feature_length(agent, ontology))
        for agent in MULTI_DIM_AGENTS
    ]
    return MultiDimVariant(*policies, frozen=frozenset(frozen))
