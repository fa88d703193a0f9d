"""Experimental settings: which variant to train and from which sources."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum

from ..acts import MULTI_DIM_AGENTS, Agent
from ..config import ExperimentConfig, TrainingConfig
from ..exceptions import ConfigurationError
from ..manager import ManagerVariant, multi_dim_variant, one_dim_variant
from ..ontology import Ontology
from ..policy import LinearQPolicy

PolicySet = Mapping[Agent, LinearQPolicy]

# Domain-independent agents whose policies carry over between domains.
TRANSFERRED_AGENTS = (Agent.AUTO_FEEDBACK, Agent.SOCIAL_OBL_MAN)


class Variant(str, Enum):
    ONE_DIM = "one-dim"
    MULTI_DIM = "multi-dim"
    TRANSFER = "multi-dim-transfer"
    TRANSFER_ADAPT = "multi-dim-transfer-adapt"

    @property
    def is_transfer(self) -> bool:
        return self in (Variant.TRANSFER, Variant.TRANSFER_ADAPT)

    @property
    def agents(self) -> tuple[Agent, ...]:
        return (Agent.ONE_DIM,) if self is Variant.ONE_DIM else MULTI_DIM_AGENTS

    @property
    def default_frozen(self) -> frozenset[Agent]:
        """Plain transfer keeps the loaded policies fixed; transfer+adapt updates them."""
        return frozenset(TRANSFERRED_AGENTS) if self is Variant.TRANSFER else frozenset()


@dataclass
class ExperimentSpec:
    """A variant, its configuration and (for transfer) the source policies.

    ``source_policies`` holds either one policy set shared by every run or
    one set per run.
    """

    variant: Variant
    config: ExperimentConfig = field(default_factory=ExperimentConfig)
    source_policies: Sequence[PolicySet] = ()
    freeze: frozenset[Agent] | None = None

    @property
    def training(self) -> TrainingConfig:
        return self.config.training

    @property
    def frozen_agents(self) -> frozenset[Agent]:
        return self.variant.default_frozen if self.freeze is None else self.freeze

    def validate(self) -> list[str]:
        problems = self.config.validate()
        if self.variant.is_transfer:
            if not self.source_policies:
                problems.append(
                    f"{self.variant.value} needs AutoFeedback and SocialOblMan source policies"
                )
            elif len(self.source_policies) not in (1, self.training.runs):
                problems.append(
                    f"expected 1 or {self.training.runs} source policy sets "
                    f"(got: {len(self.source_policies)})"
                )
            for i, sources in enumerate(self.source_policies):
                missing = [a.value for a in TRANSFERRED_AGENTS if a not in sources]
                if missing:
                    problems.append(f"source policy set {i} lacks {', '.join(missing)}")
        elif self.source_policies:
            problems.append(f"{self.variant.value} does not take source policies")
        if self.freeze is not None:
            allowed = set(TRANSFERRED_AGENTS) if self.variant.is_transfer else set()
            stray = sorted(a.value for a in self.freeze if a not in allowed)
            if stray:
                problems.append(
                    f"only transferred agents can be frozen in {self.variant.value} "
                    f"(got: {', '.join(stray)})"
                )
        return problems

    def require_valid(self) -> ExperimentSpec:
        problems = self.validate()
        if problems:
            raise ConfigurationError("Invalid experiment: " + "; ".join(problems))
        return self

    def sources_for_run(self, run_index: int) -> PolicySet:
        if not self.source_policies:
            return {}
        if len(self.source_policies) == 1:
            return self.source_policies[0]
        return self.source_policies[run_index]

    def build_variant(self, run_index: int, ontology: Ontology) -> ManagerVariant:
        """Fresh policies for one run; the task policy always starts at zero."""
        if self.variant is Variant.ONE_DIM:
            return one_dim_variant(ontology)
        sources = {
            agent: policy for agent, policy in self.sources_for_run(run_index).items()
            if agent in TRANSFERRED_AGENTS
        }
        return multi_dim_variant(ontology, sources, frozen=self.frozen_agents)
