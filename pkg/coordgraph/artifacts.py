import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, Iterable, List

from coordgraph import hashing_service, json_serializer
from coordgraph.config.app_config import PipelineConfig
from coordgraph.exceptions import ArtifactHashMismatchError, MissingArtifactError
from coordgraph.extractor import environment_extractor
from coordgraph.model.run_info import RunInfo
from coordgraph.model.run_manifest import RunManifest

log = logging.getLogger(__name__)

MANIFESTS_DIR = "manifests"
# Outside the reproducible artifact set: two runs of one config differ only here.
VOLATILE_PATTERNS = ("logs/*", f"{MANIFESTS_DIR}/*.run_info.json")


def config_hash(config: PipelineConfig) -> str:
    return hashing_service.calculate_payload_hash(config.hashable_dump())


class ArtifactStore:
    """
    Output-directory layout of one command run. Tracks the artifacts it reads and
    writes so the run manifest can list their hashes.
    """

    def __init__(self, config: PipelineConfig, force: bool = False):
        self.config = config
        self.root = Path(config.paths.output_dir)
        self.force = force
        self.config_hash = config_hash(config)
        self._inputs: Dict[str, Path] = {}
        self._outputs: Dict[str, Path] = {}

    def path(self, *parts: str) -> Path:
        path = self.root.joinpath(*parts)
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def directory(self, *parts: str) -> Path:
        path = self.root.joinpath(*parts)
        path.mkdir(parents=True, exist_ok=True)
        return path

    def task_path(self, directory: str, task: str, seed: int, suffix: str) -> Path:
        return self.path(directory, f"{task}_seed{seed}{suffix}")

    def manifest_path(self, command: str) -> Path:
        return self.path(MANIFESTS_DIR, f"{command}.manifest.json")

    def run_info_path(self, command: str) -> Path:
        return self.path(MANIFESTS_DIR, f"{command}.run_info.json")

    def require(self, name: str, path: Path) -> Path:
        path = Path(path)
        if not path.is_file():
            raise MissingArtifactError(name, path.resolve())
        self._inputs[self._key(path)] = path
        return path

    def produced(self, path: Path) -> Path:
        self._outputs[self._key(Path(path))] = Path(path)
        return path

    def check_upstream(self, commands: Iterable[str]) -> None:
        """
        Every upstream manifest must exist and carry the current config hash, unless forced.
        """
        for command in commands:
            manifest_path = self.require(f"{command} manifest", self.manifest_path(command))
            manifest = json_serializer.load_from_json(manifest_path, RunManifest)
            if manifest.config_hash == self.config_hash:
                continue
            if not self.force:
                raise ArtifactHashMismatchError(command, self.config_hash, manifest.config_hash)
            log.warning("Upstream '%s' artifacts were produced by another config (%s...). Continuing (--force).",
                        command, manifest.config_hash[:10])

    def write_manifest(self, command: str, seeds: List[int]) -> RunManifest:
        manifest = RunManifest(
                command=command,
                app_version=self.config.app_version,
                artifact_schema_version=self.config.artifact_schema_version,
                config_hash=self.config_hash,
                seeds=list(seeds),
                inputs={key: hashing_service.calculate_sha256_hash(p) for key, p in sorted(self._inputs.items())},
                outputs={key: hashing_service.calculate_sha256_hash(p) for key, p in sorted(self._outputs.items())},
        )
        json_serializer.serialize_to_json(manifest, self.manifest_path(command))
        run_info = RunInfo(command=command, config_hash=self.config_hash,
                           created_at=datetime.now(timezone.utc).isoformat(),
                           environment=environment_extractor.extract())
        json_serializer.serialize_to_json(run_info, self.run_info_path(command))
        log.info("Run manifest written: %s", self.manifest_path(command))
        return manifest

    def _key(self, path: Path) -> str:
        try:
            return path.resolve().relative_to(self.root.resolve()).as_posix()
        except ValueError:
            return path.resolve().as_posix()
