import logging
from typing import Dict, List, MutableMapping, Optional, Sequence, Tuple

import numpy as np

from coordgraph.censorship.domain_censor import build_content_features, censor_and_select, domain_frequency_table
from coordgraph.config.app_config import PipelineConfig
from coordgraph.coordination.courl_builder import symmetrize
from coordgraph.evaluation.metrics import binary_metrics, f1_percent, seed_statistics
from coordgraph.graph_encoding.encoder import assemble_encoding, compute_blocks
from coordgraph.graph_encoding.graph_builder import build_censored_graph, edge_vectors
from coordgraph.ingest.splits import define_splits, get_task
from coordgraph.model.censor_config import CensorConfig
from coordgraph.model.censored_feature_set import CensoredFeatureSet
from coordgraph.model.corpus import Corpus
from coordgraph.model.courl_map import CoUrlMap
from coordgraph.model.encoding_flags import BLOCK_ORDER, EncodingFlags
from coordgraph.model.metric_result import MetricResult, SeedMetrics
from coordgraph.model.model_config import ModelKind
from coordgraph.model.model_inputs import ModelInputs
from coordgraph.model.split_name import SplitName
from coordgraph.model.task_data import TaskData
from coordgraph.model.trained_model import TrainedModel
from coordgraph.models.inputs import assemble_inputs
from coordgraph.models.predictor import predict_probabilities
from coordgraph.models.trainer import train_model

log = logging.getLogger(__name__)

TaskCache = MutableMapping[Tuple[str, int], TaskData]


def prepare_task_data(corpus: Corpus, courl_map: CoUrlMap, task_name: str, seed: int, config: PipelineConfig,
                      blocks: Sequence[str] = tuple(BLOCK_ORDER)) -> TaskData:
    """
    Splits the corpus for one task and seed, builds the censored graph over the task's
    accounts (all splits, so the encodings are inductive over the whole graph) and
    computes the requested graph blocks.
    """
    task = get_task(task_name)
    evaluation = config.evaluation
    split_corpus = define_splits(corpus, task, seed, evaluation.val_fraction,
                                 evaluation.baseline_train_fraction, evaluation.baseline_val_fraction)
    split_of = split_corpus.split_assignment
    account_ids = sorted(a for a, s in split_of.items() if s != SplitName.EXCLUDED)

    def rows(split: SplitName) -> np.ndarray:
        return np.array([k for k, a in enumerate(account_ids) if split_of[a] == split], dtype=np.int64)

    symmetric = courl_map if courl_map.is_symmetric else symmetrize(courl_map)
    graph = build_censored_graph(symmetric, config.graph, account_ids)
    computed = compute_blocks(graph, config.node2vec, seed, blocks)
    return TaskData(task=task_name, seed=seed, corpus=split_corpus, account_ids=account_ids,
                    labels=split_corpus.labels(account_ids), train_rows=rows(SplitName.TRAIN),
                    val_rows=rows(SplitName.VAL), test_rows=rows(SplitName.TEST), graph=graph, blocks=computed,
                    edge_vectors=edge_vectors(symmetric, graph))


def content_features(data: TaskData, censor: CensorConfig) -> CensoredFeatureSet:
    """
    Domain vocabulary censored and ranked on the task's training split only.
    """
    table = domain_frequency_table(data.corpus, SplitName.TRAIN)
    vocabulary = censor_and_select(table, censor)
    return build_content_features(data.corpus, vocabulary, censor.standardize, data.account_ids)


def task_inputs(data: TaskData, content: CensoredFeatureSet, flags: EncodingFlags) -> ModelInputs:
    encoding = assemble_encoding(data.account_ids, data.blocks, flags, data.train_rows)
    return assemble_inputs(content, data.labels, encoding, data.graph, data.edge_vectors)


def select_graph_encoding(data: TaskData, content: CensoredFeatureSet, kind: ModelKind, config: PipelineConfig,
                          combinations: Optional[Sequence[EncodingFlags]] = None
                          ) -> Tuple[EncodingFlags, TrainedModel, Dict[str, float]]:
    """
    Trains one model per presence-flag combination and keeps the one with the best
    validation F1 (first in combination order on ties).
    """
    combinations = list(combinations or EncodingFlags.all_combinations())
    model_config = config.model.model_copy(update={"seed": data.seed})
    scores: Dict[str, float] = {}
    best: Optional[Tuple[EncodingFlags, TrainedModel]] = None
    for flags in combinations:
        inputs = task_inputs(data, content, flags)
        model = train_model(kind, inputs, data.train_rows, data.val_rows, model_config, _threads(config))
        probabilities = predict_probabilities(model, inputs)
        scores[flags.to_symbols()] = f1_percent(probabilities[data.val_rows], data.labels[data.val_rows],
                                                model_config.threshold)
        if best is None or scores[flags.to_symbols()] > scores[best[0].to_symbols()]:
            best = (flags, model)

    log.info("Graph encoding selected for %s on %s (seed %d).", kind.value, data.task, data.seed)
    log.info("|-Encoding: %s", best[0].to_symbols())
    log.info("|-F1(val): %.2f", scores[best[0].to_symbols()])
    return best[0], best[1], scores


def run_seed(data: TaskData, kind: ModelKind, config: PipelineConfig, censor: Optional[CensorConfig] = None,
             flags: Optional[EncodingFlags] = None) -> Tuple[SeedMetrics, TrainedModel, ModelInputs]:
    censor = censor or config.censor
    content = content_features(data, censor)
    if flags is None and config.evaluation.encoding_search:
        flags, model, _ = select_graph_encoding(data, content, kind, config)
        inputs = task_inputs(data, content, flags)
    else:
        flags = flags or config.encoding
        inputs = task_inputs(data, content, flags)
        model_config = config.model.model_copy(update={"seed": data.seed})
        model = train_model(kind, inputs, data.train_rows, data.val_rows, model_config, _threads(config))

    probabilities = predict_probabilities(model, inputs)
    threshold = model.config.threshold
    test = binary_metrics(probabilities[data.test_rows], data.labels[data.test_rows], threshold)
    metrics = SeedMetrics(seed=data.seed,
                          f1_val=f1_percent(probabilities[data.val_rows], data.labels[data.val_rows], threshold),
                          f1_test=test["f1"], auc_test=test["auc"], encoding=flags.to_symbols())
    return metrics, model, inputs


def run_task(corpus: Corpus, courl_map: CoUrlMap, task_name: str, kind: ModelKind, config: PipelineConfig,
             censor: Optional[CensorConfig] = None, flags: Optional[EncodingFlags] = None,
             seeds: Optional[Sequence[int]] = None, cache: Optional[TaskCache] = None) -> MetricResult:
    """
    Train and evaluate one model on one task for every seed; mean and sigma across seeds.
    Split and graph work is shared through `cache` when given.
    """
    censor = censor or config.censor
    seeds = list(config.evaluation.seeds if seeds is None else seeds)
    per_seed: List[SeedMetrics] = []
    for seed in seeds:
        data = cache.get((task_name, seed)) if cache is not None else None
        if data is None:
            data = prepare_task_data(corpus, courl_map, task_name, seed, config)
            if cache is not None:
                cache[(task_name, seed)] = data
        metrics, _, _ = run_seed(data, kind, config, censor, flags)
        per_seed.append(metrics)

    summary = {name: seed_statistics([getattr(m, name) for m in per_seed])
               for name in ("f1_val", "f1_test", "auc_test")}
    result = MetricResult(task=task_name, kind=kind, gamma_max=censor.gamma_max, k_top=censor.k_top,
                          encoding=median_encoding([EncodingFlags.from_symbols(m.encoding) for m in per_seed]),
                          f1_val=summary["f1_val"][0], f1_val_sigma=summary["f1_val"][1],
                          f1_test=summary["f1_test"][0], f1_test_sigma=summary["f1_test"][1],
                          auc_test=summary["auc_test"][0], auc_test_sigma=summary["auc_test"][1],
                          per_seed=per_seed)

    log.info("Task finished.")
    log.info("|-Task: %s", task_name)
    log.info("|-Model: %s", kind.value)
    log.info("|-Censor: %s", censor.describe())
    log.info("|-F1(val): %.2f +- %.2f", result.f1_val, result.f1_val_sigma)
    log.info("|-F1(test): %.2f +- %.2f", result.f1_test, result.f1_test_sigma)
    log.info("|-AUC(test): %.2f +- %.2f", result.auc_test, result.auc_test_sigma)
    return result


def median_encoding(flags: Sequence[EncodingFlags]) -> str:
    """
    Block-wise median of presence flags: a block is present when at least half of
    the encodings use it.
    """
    if not flags:
        return EncodingFlags().to_symbols()
    votes = {name: sum(getattr(f, name) for f in flags) for name in BLOCK_ORDER}
    return EncodingFlags(**{name: 2 * count >= len(flags) for name, count in votes.items()}).to_symbols()


def _threads(config: PipelineConfig) -> int:
    return max(1, config.run.threads)
