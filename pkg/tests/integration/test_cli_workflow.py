"""Command-line workflows from training to evaluation and chat."""

from __future__ import annotations

import io
import json
import logging
import os
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest

from dimdial.acts import Agent
from dimdial.cli.main import main
from dimdial.ontology import generate_database
from dimdial.policy import read_policy_set
from dimdial.state import feature_length

TINY = ["--runs", "1", "--dialogues", "20", "--eval-dialogues", "5",
        "--checkpoint-interval", "10"]


@pytest.fixture(autouse=True)
def isolated_cli(tmp_path: Path):
    for var in ("DIMDIAL_LOG_FILE", "DIMDIAL_LOG_FORMAT"):
        os.environ.pop(var, None)
    logger = logging.getLogger("dimdial")
    handlers, level = list(logger.handlers), logger.level
    with patch("dimdial.config.CONFIG_DIR", tmp_path / "config"), \
            patch("dimdial.config.load_dotenv", None):
        yield
    logger.handlers = handlers
    logger.setLevel(level)


class TestTrainEvaluate:
    """Train with the CLI, then evaluate and chat with the result."""

    def test_one_dim_workflow(self, tmp_path: Path, capsys):
        out = tmp_path / "one-dim"
        assert main(["train", "--variant", "one-dim", "--seed", "1", *TINY, "-o", str(out)]) == 0

        lines = (out / "curve.csv").read_text().splitlines()
        assert lines[0] == "dialogues,mean_reward,mean_success,mean_length,std_reward"
        assert [line.split(",")[0] for line in lines[1:]] == ["0", "10", "20"]
        assert (out / "policies" / "run-00" / "OneDim.json").exists()
        capsys.readouterr()

        assert main(["evaluate", "--policies", str(out), "-n", "5", "--json"]) == 0
        results = json.loads(capsys.readouterr().out)
        assert set(results) == {"run-00"}
        assert results["run-00"]["dialogues"] == 5

        stdin = io.StringIO("inform(foodtype=indian)\n:quit\n")
        with patch("sys.stdin", stdin):
            assert main(["chat", "--policies", str(out / "policies" / "run-00")]) == 0
        assert "system:" in capsys.readouterr().out

    def test_transfer_from_saved_sources(self, tmp_path: Path):
        source = tmp_path / "multi-dim"
        assert main(["train", "--variant", "multi-dim", *TINY, "-o", str(source)]) == 0

        target = tmp_path / "transfer"
        assert main(["train", "--variant", "multi-dim-transfer", *TINY,
                     "--source-policies", str(source), "-o", str(target)]) == 0

        config = json.loads((target / "experiment.json").read_text())
        assert config["frozen_agents"] == ["AutoFeedback", "SocialOblMan"]
        ontology = generate_database(0).ontology
        agents = (Agent.AUTO_FEEDBACK, Agent.SOCIAL_OBL_MAN)
        lengths = {a: feature_length(a, ontology) for a in agents}
        before = read_policy_set(source / "policies" / "run-00", agents, lengths)
        after = read_policy_set(target / "policies" / "run-00", agents, lengths)
        for agent in agents:
            np.testing.assert_array_equal(after[agent].weights, before[agent].weights)

    def test_transfer_command_trains_its_own_source(self, tmp_path: Path):
        out = tmp_path / "adapt"
        assert main(["transfer", "--adapt", *TINY, "-o", str(out)]) == 0
        assert (out / "source" / "curve.csv").exists()
        config = json.loads((out / "experiment.json").read_text())
        assert config["variant"] == "multi-dim-transfer-adapt"
        assert config["frozen_agents"] == []

    def test_dialogue_logs(self, tmp_path: Path):
        out = tmp_path / "logged"
        assert main(["train", *TINY, "--log-dialogues", "-o", str(out)]) == 0
        assert (out / "dialogues-run00.jsonl").stat().st_size > 0

    def test_dialogue_logs_are_opt_in(self, tmp_path: Path):
        out = tmp_path / "quiet"
        assert main(["train", *TINY, "-o", str(out)]) == 0
        assert not list(out.glob("dialogues-run*.jsonl"))


@pytest.mark.slow
class TestReproducibleOutput:
    """Repeated training commands write identical curves."""

    def test_curve_csv_bitwise_identical(self, tmp_path: Path):
        args = ["train", "--variant", "multi-dim", "--seed", "42", "--runs", "2",
                "--dialogues", "2000"]
        first, second = tmp_path / "first", tmp_path / "second"
        assert main([*args, "-o", str(first)]) == 0
        assert main([*args, "-o", str(second)]) == 0
        assert (first / "curve.csv").read_bytes() == (second / "curve.csv").read_bytes()
