import logging
import os
import threading
import tomllib
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from coordgraph import file_utils
from coordgraph.exceptions import ConfigValidationError
from coordgraph.model.censor_config import CensorConfig
from coordgraph.model.evaluation_config import EvaluationConfig
from coordgraph.model.encoding_flags import EncodingFlags
from coordgraph.model.graph_build_config import GraphBuildConfig
from coordgraph.model.ig_config import IGConfig
from coordgraph.model.inclusion_criteria import InclusionCriteria
from coordgraph.model.model_config import ModelConfig
from coordgraph.model.node2vec_config import Node2VecConfig
from coordgraph.model.sweep_config import SweepConfig
from coordgraph.model.synth_config import SynthConfig

log = logging.getLogger(__name__)

BASE_DIR = Path(__file__).resolve().parent.parent.parent
DEFAULT_CONFIG_FILE = BASE_DIR / "coordgraph_config.toml"
THREADS_ENV_VAR = "COORDGRAPH_THREADS"


class PathsConfig(BaseModel):
    events: Path = Path("output/events.csv")
    output_dir: Path = Path("output")


class RunConfig(BaseModel):
    threads: int = 0
    force: bool = False


# Default values can be overridden in coordgraph_config.toml
class PipelineConfig(BaseModel):
    app_name: str
    app_version: str
    artifact_schema_version: int

    paths: PathsConfig = Field(default_factory=PathsConfig)
    run: RunConfig = Field(default_factory=RunConfig)
    inclusion: InclusionCriteria = Field(default_factory=InclusionCriteria)
    censor: CensorConfig = Field(default_factory=CensorConfig)
    graph: GraphBuildConfig = Field(default_factory=GraphBuildConfig)
    encoding: EncodingFlags = Field(default_factory=EncodingFlags)
    node2vec: Node2VecConfig = Field(default_factory=Node2VecConfig)
    model: ModelConfig = Field(default_factory=ModelConfig)
    attribution: IGConfig = Field(default_factory=IGConfig)
    evaluation: EvaluationConfig = Field(default_factory=EvaluationConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    synth: SynthConfig = Field(default_factory=SynthConfig)

    def hashable_dump(self) -> Dict[str, Any]:
        # Paths and thread count never change results.
        return self.model_dump(mode="json", exclude={"paths", "run", "app_name", "app_version"})


class ConfigManager:
    _instance: Optional[PipelineConfig] = None
    _lock = threading.Lock()

    def __init__(self):
        raise RuntimeError("Constructor is not allowed. Use get_config() method.")

    @classmethod
    def get_config(cls) -> PipelineConfig:
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = ConfigManager.load_config()
        return cls._instance

    @classmethod
    def set_config(cls, config: PipelineConfig) -> None:
        with cls._lock:
            cls._instance = config

    @staticmethod
    def load_config(config_file: Optional[Path] = None,
                    overrides: Optional[Dict[str, Any]] = None) -> PipelineConfig:
        pyproject_file = BASE_DIR / "pyproject.toml"
        config_file = config_file or DEFAULT_CONFIG_FILE

        if not file_utils.check_file_exists(pyproject_file):
            raise FileNotFoundError("pyproject.toml not found. Expected location: {}".format(pyproject_file))

        if not file_utils.check_file_exists(config_file):
            raise FileNotFoundError("Config file not found. Expected location: {}".format(config_file))

        with pyproject_file.open("rb") as f:
            pyproject_data = tomllib.load(f)

        project = pyproject_data.get("project")
        metadata = pyproject_data.get("tool").get("coordgraph").get("metadata")

        with config_file.open("rb") as f:
            conf_data = tomllib.load(f)

        _apply_overrides(conf_data, overrides or {})
        _apply_threads_fallback(conf_data)

        try:
            return PipelineConfig(
                    app_name=project.get("name"),
                    app_version=project.get("version"),
                    artifact_schema_version=metadata.get("artifact_schema_version"),
                    **conf_data
            )
        except ValidationError as e:
            problems = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]
            raise ConfigValidationError(problems) from e


def _apply_overrides(conf_data: Dict[str, Any], overrides: Dict[str, Any]) -> None:
    """
    Applies dotted-key overrides, e.g. {"run.threads": 4, "paths.output_dir": "out"}.
    """
    for dotted_key, value in overrides.items():
        if value is None:
            continue
        section_name, _, key = dotted_key.rpartition(".")
        section = conf_data
        for part in filter(None, section_name.split(".")):
            section = section.setdefault(part, {})
        section[key] = value
        log.debug("Config override applied: %s=%s", dotted_key, value)


def _apply_threads_fallback(conf_data: Dict[str, Any]) -> None:
    run_section = conf_data.setdefault("run", {})
    if run_section.get("threads"):
        return

    load_dotenv()
    env_value = os.environ.get(THREADS_ENV_VAR)
    if env_value:
        try:
            run_section["threads"] = int(env_value)
            log.debug("Threads count taken from %s: %s", THREADS_ENV_VAR, env_value)
        except ValueError:
            log.warning("Ignoring non-integer %s value: %s", THREADS_ENV_VAR, env_value)
