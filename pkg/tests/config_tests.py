import pytest

from coordgraph import file_utils
from coordgraph.artifacts import ArtifactStore, config_hash
from coordgraph.config.app_config import THREADS_ENV_VAR, ConfigManager
from coordgraph.config.config_validator import ConfigValidator
from coordgraph.exceptions import ArtifactHashMismatchError, ConfigValidationError, MissingArtifactError


def _write_config(tmp_path, text: str):
    path = tmp_path / "coordgraph_config.toml"
    path.write_text(text)
    return path


def test_valid_default_config_passes(mock_pipeline_config):
    ConfigValidator.validate(mock_pipeline_config)

    assert mock_pipeline_config.run.threads >= 1


def test_validator_collects_every_problem(mock_pipeline_config):
    config = mock_pipeline_config.model_copy(deep=True)
    config.evaluation.tasks = ["A1", "Z9"]
    config.evaluation.seeds = [1, 1]
    config.model.hidden_activation = "softplus"
    config.sweep.k_values = []

    with pytest.raises(ConfigValidationError) as error:
        ConfigValidator.validate(config, require_events=True)

    problems = error.value.problems
    assert len(problems) == 5
    assert any(p.startswith("paths.events") for p in problems)
    assert any("Z9" in p for p in problems)


def test_load_config_applies_file_and_overrides(tmp_path):
    config_file = _write_config(tmp_path, "[censor]\ngamma_max = 0.43\nk_top = 1000\n\n[run]\nthreads = 2\n")

    config = ConfigManager.load_config(config_file, {"censor.k_top": 500, "paths.output_dir": str(tmp_path)})

    assert config.censor.gamma_max == 0.43
    assert config.censor.k_top == 500
    assert config.run.threads == 2
    assert config.paths.output_dir == tmp_path


def test_threads_fall_back_to_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(THREADS_ENV_VAR, "3")
    config_file = _write_config(tmp_path, "[run]\nthreads = 0\n")

    assert ConfigManager.load_config(config_file).run.threads == 3


def test_type_errors_become_config_problems(tmp_path):
    config_file = _write_config(tmp_path, "[censor]\nk_top = \"many\"\n")

    with pytest.raises(ConfigValidationError) as error:
        ConfigManager.load_config(config_file)

    assert error.value.problems[0].startswith("censor.k_top")


def test_missing_config_file_is_reported(tmp_path):
    with pytest.raises(FileNotFoundError):
        ConfigManager.load_config(tmp_path / "missing.toml")


def test_paths_and_threads_do_not_change_the_config_hash(mock_pipeline_config, tmp_path):
    moved = mock_pipeline_config.model_copy(deep=True)
    moved.paths.output_dir = tmp_path / "elsewhere"
    moved.run.threads = 16
    recensored = mock_pipeline_config.model_copy(deep=True)
    recensored.censor.k_top = 10

    assert config_hash(moved) == config_hash(mock_pipeline_config)
    assert config_hash(recensored) != config_hash(mock_pipeline_config)


def test_missing_upstream_manifest(mock_pipeline_config):
    store = ArtifactStore(mock_pipeline_config)

    with pytest.raises(MissingArtifactError):
        store.check_upstream(["courl"])


def test_upstream_from_another_config_needs_force(mock_pipeline_config):
    producer = ArtifactStore(mock_pipeline_config)
    output = producer.produced(producer.path("courls.csv"))
    file_utils.write_text_atomically(output, "account_i,account_j\n")
    manifest = producer.write_manifest("courl", seeds=[0])

    changed = mock_pipeline_config.model_copy(deep=True)
    changed.graph.n = 12

    assert list(manifest.outputs) == ["courls.csv"]
    ArtifactStore(mock_pipeline_config).check_upstream(["courl"])
    with pytest.raises(ArtifactHashMismatchError):
        ArtifactStore(changed).check_upstream(["courl"])
    ArtifactStore(changed, force=True).check_upstream(["courl"])
