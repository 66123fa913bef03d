from typing import List


class CoordGraphError(Exception):
    pass


class ConfigValidationError(CoordGraphError):
    def __init__(self, problems: List[str]):
        super().__init__("Invalid configuration:\n" + "\n".join(f"|-{p}" for p in problems))
        self.problems: List[str] = problems


class CorpusError(CoordGraphError):
    pass


class DegenerateDataError(CoordGraphError):
    pass


class LayoutMismatchError(CoordGraphError):
    pass


class UnsupportedModelError(CoordGraphError):
    pass


class TrainingDivergedError(CoordGraphError):
    def __init__(self, reason: str, epoch: int, last_finite_loss: float | None):
        super().__init__(f"{reason} (epoch {epoch}, last finite loss {last_finite_loss})")
        self.epoch: int = epoch
        self.last_finite_loss: float | None = last_finite_loss


class MissingArtifactError(CoordGraphError):
    def __init__(self, artifact_name: str, expected_path):
        super().__init__(f"Missing input artifact '{artifact_name}'. Expected location: {expected_path}")
        self.artifact_name: str = artifact_name
        self.expected_path = expected_path


class ArtifactHashMismatchError(CoordGraphError):
    def __init__(self, artifact_name: str, expected_hash: str, actual_hash: str):
        super().__init__(f"Artifact '{artifact_name}' was produced by config {actual_hash[:10]}..., "
                         f"current config is {expected_hash[:10]}.... Use --force to ignore.")
        self.artifact_name: str = artifact_name


class NonFiniteInputError(CoordGraphError):
    def __init__(self, feature_index: int, row_index: int):
        super().__init__(f"Non-finite model input at row {row_index}, feature {feature_index}")
        self.feature_index: int = feature_index
        self.row_index: int = row_index
