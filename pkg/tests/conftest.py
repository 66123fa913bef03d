import tomllib
from pathlib import Path
from typing import Iterable, Tuple

import numpy as np
import pytest

from coordgraph import file_utils
from coordgraph.config.app_config import ConfigManager, PathsConfig, PipelineConfig
from coordgraph.ingest.parser import parse_events
from coordgraph.model.censored_graph import CensoredGraph
from coordgraph.model.corpus import Corpus

BASE_DIR = Path(__file__).resolve().parent.parent

EventRow = Tuple[str, int, str, int, str]


def events_csv(rows: Iterable[EventRow]) -> bytes:
    lines = ["account_id,timestamp,url,label,campaign"]
    lines.extend(f"{a},{t},{u},{label},{c}" for a, t, u, label, c in rows)
    return ("\n".join(lines) + "\n").encode("utf-8")


def make_corpus(rows: Iterable[EventRow]) -> Corpus:
    corpus, _ = parse_events(events_csv(rows))
    return corpus


def make_graph(num_nodes: int, edges) -> CensoredGraph:
    return CensoredGraph.from_edges([f"n{k:02d}" for k in range(num_nodes)], edges)


def random_graph(rng: np.random.Generator, num_nodes: int, p: float) -> CensoredGraph:
    edges = [(i, j) for i in range(num_nodes) for j in range(i + 1, num_nodes) if rng.random() < p]
    return make_graph(num_nodes, edges)


@pytest.fixture
def mock_pipeline_config(monkeypatch, tmp_path) -> PipelineConfig:
    test_output_dir = tmp_path / "test_output_dir"
    test_output_dir.mkdir()

    pyproject_file = BASE_DIR / "pyproject.toml"

    if not file_utils.check_file_exists(pyproject_file):
        raise FileNotFoundError("pyproject.toml not found. Expected location: {}".format(pyproject_file))

    with pyproject_file.open("rb") as f:
        pyproject_data = tomllib.load(f)

    project = pyproject_data.get("project")
    metadata = pyproject_data.get("tool").get("coordgraph").get("metadata")

    test_pipeline_config = PipelineConfig(
        app_name=project.get("name"),
        app_version=project.get("version"),
        artifact_schema_version=metadata.get("artifact_schema_version"),
        paths=PathsConfig(events=test_output_dir / "events.csv", output_dir=test_output_dir),
    )

    monkeypatch.setattr(ConfigManager, "get_config", lambda: test_pipeline_config)

    return test_pipeline_config


@pytest.fixture
def clique_corpus() -> Corpus:
    """
    Five IO accounts sharing one url within a minute, plus two unrelated baseline accounts.
    """
    rows = [(f"io{k}", 1000 + 10 * k, "https://news.example.com/a", 1, "rus18") for k in range(5)]
    rows += [("base0", 5000, "https://other.org/x", 0, "baseline"),
             ("base1", 90000, "https://other.org/x", 0, "baseline")]
    return make_corpus(rows)
