import hashlib
import json
from fnmatch import fnmatch

import pandas as pd
import pytest

from coordgraph.artifacts import VOLATILE_PATTERNS
from coordgraph.main import EXIT_INPUT_ERROR, EXIT_OK, build_parser, config_overrides, main
from tests.conftest import events_csv

PIPELINE_CONFIG = """
[paths]
events = "{events}"
output_dir = "{out}"

[run]
threads = 1

[censor]
k_top = 200

[node2vec]
walk_length = 20
walks_per_node = 2
epochs = 1

[model]
# Few epochs keep predictions near the neutral band used by attribution.
max_epochs = 3

[attribution]
steps = 32

[evaluation]
tasks = ["A1"]
models = ["MLP"]
seeds = [0]

[sweep]
gamma_values = [0.54, inf]
k_values = [200]
"""


PIPELINE = ["synth", "courl", "censor", "encode", "train", "evaluate", "attribute", "sweep"]


def _config_file(tmp_path, events=None):
    tmp_path.mkdir(parents=True, exist_ok=True)
    out = tmp_path / "out"
    events = events or out / "events.csv"
    path = tmp_path / "coordgraph_config.toml"
    path.write_text(PIPELINE_CONFIG.format(events=events.as_posix(), out=out.as_posix()))
    return path, out


def test_seed_flag_overrides_evaluation_and_synth_seeds():
    args = build_parser().parse_args(["evaluate", "--seed", "4", "--threads", "2"])

    overrides = config_overrides(args)

    assert overrides["evaluation.seeds"] == [4]
    assert overrides["synth.seed"] == 4
    assert overrides["run.threads"] == 2
    assert overrides["paths.output_dir"] is None


def test_unknown_command_is_a_usage_error():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["deploy"])


def test_missing_config_file_exits_with_input_error(tmp_path):
    assert main(["courl", "--config", str(tmp_path / "missing.toml")]) == EXIT_INPUT_ERROR


def test_missing_events_file_exits_with_input_error(tmp_path):
    config, _ = _config_file(tmp_path)

    assert main(["courl", "--config", str(config)]) == EXIT_INPUT_ERROR


def test_missing_upstream_exits_with_input_error(tmp_path):
    events = tmp_path / "events.csv"
    events.write_bytes(events_csv([("a", 1, "https://x.org/1", 1, "rus18")]))
    config, out = _config_file(tmp_path, events)

    assert main(["censor", "--config", str(config)]) == EXIT_INPUT_ERROR
    assert "Missing input artifact" in (out / "logs" / "errors.log").read_text()


@pytest.mark.slow
def test_pipeline_end_to_end(tmp_path):
    config, out = _config_file(tmp_path)
    arguments = ["--config", str(config)]

    for command in PIPELINE:
        assert main([command, *arguments]) == EXIT_OK, command

    assert (out / "models" / "A1_seed0" / "model_MLP.pt").is_file()
    results = pd.read_csv(out / "results.csv")
    assert set(results["task"]) == {"A1", "A"}
    assert (out / "attribution" / "A1_seed0_MLP_groups.csv").is_file()
    manifest = json.loads((out / "manifests" / "train.manifest.json").read_text())
    assert "encoding/A1_seed0.csv" in manifest["inputs"]
    assert len(pd.read_csv(out / "sweep.csv")) >= 2


def _reproducible_digests(out):
    digests = {}
    for path in sorted(out.rglob("*")):
        key = path.relative_to(out).as_posix()
        if path.is_file() and not any(fnmatch(key, pattern) for pattern in VOLATILE_PATTERNS):
            digests[key] = hashlib.sha256(path.read_bytes()).hexdigest()
    return digests


@pytest.mark.slow
def test_rerun_with_the_same_config_is_byte_identical(tmp_path):
    digests = []
    for run in ("first", "second"):
        config, out = _config_file(tmp_path / run)
        for command in PIPELINE:
            assert main([command, "--config", str(config)]) == EXIT_OK, command
        digests.append(_reproducible_digests(out))

    assert "models/A1_seed0/model_MLP.pt" in digests[0]
    assert (tmp_path / "first" / "out" / "manifests" / "train.run_info.json").is_file()
    assert digests[0] == digests[1]
