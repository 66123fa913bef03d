import logging
from typing import List

from coordgraph import file_utils
from coordgraph.config.app_config import PipelineConfig
from coordgraph.exceptions import ConfigValidationError
from coordgraph.ingest.splits import TASK_REGISTRY
from coordgraph.extractor import environment_extractor
from coordgraph.model.ig_config import QUADRATURE_METHODS
from coordgraph.synth.scenarios import SCENARIO_NAMES

log = logging.getLogger(__name__)

ACTIVATIONS = ["relu", "sigmoid", "tanh", "identity"]
EDGE_TRANSFORMS = ["raw", "log1p"]
MATRIX_NORMALIZATIONS = ["product", "geometric"]
IG_TARGETS = ["probability", "logit"]


class ConfigValidator:
    @staticmethod
    def validate(config: PipelineConfig, require_events: bool = False) -> None:
        """
        Checks cross-field rules and collects every violation before raising.
        Benign settings are corrected in place with a warning.
        """
        problems: List[str] = []
        available_threads_count = environment_extractor.extract_cpu_threads()

        if require_events and not file_utils.check_file_exists(config.paths.events):
            problems.append(f"paths.events: events file does not exist: {config.paths.events}")
        if not file_utils.check_directory_exists(config.paths.output_dir):
            log.warning(f"Output directory does not exist: {config.paths.output_dir}. Will create it.")
            config.paths.output_dir.mkdir(parents=True, exist_ok=True)

        if config.run.threads < 0:
            problems.append("run.threads: threads count must be a non-negative integer.")
        elif config.run.threads == 0:
            log.warning("Threads count is set to 0. Will use all available CPU threads.")
            config.run.threads = max(available_threads_count, 1)
        elif config.run.threads > available_threads_count > 0:
            log.warning("Threads count is too large for the hardware. Using maximum available threads.")
            config.run.threads = available_threads_count

        model = config.model
        if any(width <= 0 for width in model.hidden_widths):
            problems.append("model.hidden_widths: every hidden width must be positive.")
        if model.hidden_activation not in ACTIVATIONS:
            problems.append(f"model.hidden_activation: expected one of {ACTIVATIONS}.")
        if model.message_activation not in ACTIVATIONS:
            problems.append(f"model.message_activation: expected one of {ACTIVATIONS}.")
        if model.edge_transform not in EDGE_TRANSFORMS:
            problems.append(f"model.edge_transform: expected one of {EDGE_TRANSFORMS}.")
        if not model.logreg_c_grid or any(c <= 0 for c in model.logreg_c_grid):
            problems.append("model.logreg_c_grid: grid must be non-empty with positive values.")
        if not model.rf_trees_grid or any(t < 1 for t in model.rf_trees_grid):
            problems.append("model.rf_trees_grid: grid must be non-empty with positive values.")
        if not model.rf_max_depth_grid or any(d < 0 for d in model.rf_max_depth_grid):
            problems.append("model.rf_max_depth_grid: grid must be non-empty; use 0 for unlimited depth.")
        if not model.rf_min_leaf_grid or any(m < 1 for m in model.rf_min_leaf_grid):
            problems.append("model.rf_min_leaf_grid: grid must be non-empty with positive values.")

        ig = config.attribution
        if ig.quadrature not in QUADRATURE_METHODS:
            problems.append(f"attribution.quadrature: expected one of {list(QUADRATURE_METHODS)}.")
        if ig.target not in IG_TARGETS:
            problems.append(f"attribution.target: expected one of {IG_TARGETS}.")
        if ig.max_band < ig.neutral_band:
            problems.append("attribution.max_band: must be greater than or equal to attribution.neutral_band.")

        evaluation = config.evaluation
        unknown_tasks = [t for t in evaluation.tasks if t not in TASK_REGISTRY]
        if unknown_tasks:
            problems.append(f"evaluation.tasks: unknown tasks {unknown_tasks}. Known: {sorted(TASK_REGISTRY)}.")
        if not evaluation.seeds:
            problems.append("evaluation.seeds: at least one seed is required.")
        if len(set(evaluation.seeds)) != len(evaluation.seeds):
            problems.append("evaluation.seeds: seeds must be unique.")
        if not evaluation.models:
            problems.append("evaluation.models: at least one model kind is required.")
        if evaluation.baseline_train_fraction + evaluation.baseline_val_fraction >= 1.0:
            problems.append("evaluation: baseline_train_fraction + baseline_val_fraction must leave a test share.")
        if evaluation.matrix_normalization not in MATRIX_NORMALIZATIONS:
            problems.append(f"evaluation.matrix_normalization: expected one of {MATRIX_NORMALIZATIONS}.")

        sweep = config.sweep
        if not sweep.gamma_values:
            problems.append("sweep.gamma_values: grid must be non-empty.")
        if any(g < 0 for g in sweep.gamma_values):
            problems.append("sweep.gamma_values: values must be non-negative.")
        if not sweep.k_values or any(k < 1 for k in sweep.k_values):
            problems.append("sweep.k_values: grid must be non-empty with positive values.")

        if config.synth.scenario not in SCENARIO_NAMES:
            problems.append(f"synth.scenario: unknown scenario {config.synth.scenario!r}. Known: {SCENARIO_NAMES}.")

        if problems:
            raise ConfigValidationError(problems)
