import logging
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd

from coordgraph import file_utils, json_serializer
from coordgraph.artifacts import ArtifactStore
from coordgraph.attribution.grouping import aggregate_subtask_attributions, attribution_subsets, \
    summarize_reports, write_attribution_tables
from coordgraph.attribution.integrated_gradients import attribute_subset, empirical_baseline
from coordgraph.censorship.domain_censor import build_content_features, domain_frequency_table, \
    vocabulary_frame, vocabulary_from_frame
from coordgraph.censorship.domain_report import domain_report
from coordgraph.config.app_config import PipelineConfig
from coordgraph.coordination.campaign_statistics import CdfMetric, campaign_cdf, campaign_courl_series, \
    cdf_distance_matrix, cross_campaign_matrix
from coordgraph.coordination.courl_builder import compute_courls, symmetrize
from coordgraph.coordination.courl_io import read_courl_csv, write_courl_csv
from coordgraph.evaluation.summary import table_summary
from coordgraph.exceptions import LayoutMismatchError
from coordgraph.evaluation.sweep import aggregate_by_family, results_frame, sweep, sweep_frame
from coordgraph.evaluation.task_runner import TaskCache, run_task
from coordgraph.graph_encoding.encoder import assemble_encoding, block_column_names, compute_blocks, \
    encoding_frame
from coordgraph.graph_encoding.graph_builder import build_censored_graph, edge_vectors, write_edge_list
from coordgraph.ingest.account_filter import account_statistics, filter_accounts
from coordgraph.ingest.parser import parse_events
from coordgraph.ingest.splits import apply_split_manifest, define_splits, get_task, read_split_manifest, \
    write_split_manifest
from coordgraph.model.corpus import Corpus
from coordgraph.model.courl_map import CoUrlMap
from coordgraph.model.graph_encoding import GraphEncoding
from coordgraph.model.model_inputs import ModelInputs
from coordgraph.model.run_manifest import RunManifest
from coordgraph.model.split_name import SplitName
from coordgraph.model.task_data import TaskData
from coordgraph.models.checkpoint import checkpoint_path, load_model, save_model, write_training_log
from coordgraph.models.inputs import assemble_inputs
from coordgraph.models.trainer import train_model
from coordgraph.synth.generator import generate_scenario, write_events
from coordgraph.synth.scenarios import scenario, write_scenario

log = logging.getLogger(__name__)

COMMANDS = ["synth", "courl", "censor", "encode", "train", "evaluate", "attribute", "sweep"]

# Upstream commands whose manifests must carry the current config hash.
UPSTREAM = {
    "synth": [],
    "courl": [],
    "censor": ["courl"],
    "encode": ["courl", "censor"],
    "train": ["censor", "encode"],
    "evaluate": ["courl"],
    "attribute": ["train"],
    "sweep": ["courl"],
}

COURL_FILE = "courls.csv"
DIRECTED_COURL_FILE = "courls_directed.csv"
ACCOUNT_FILTER_FILE = "account_filter.csv"
SPLITS_DIR = "splits"
VOCABULARY_DIR = "vocabulary"
DOMAIN_REPORT_DIR = "domain_report"
GRAPH_DIR = "graph"
ENCODING_DIR = "encoding"
MODELS_DIR = "models"
ATTRIBUTION_DIR = "attribution"


def cmd_synth(config: PipelineConfig, force: bool = False) -> RunManifest:
    store = ArtifactStore(config, force)
    value = scenario(config.synth.scenario, config.synth.seed)
    events = generate_scenario(value)

    events_path = Path(config.paths.events)
    write_events(events, events_path)
    store.produced(events_path)
    write_scenario(value, store.path("scenario.json"))
    store.produced(store.path("scenario.json"))
    return store.write_manifest("synth", [config.synth.seed])


def cmd_courl(config: PipelineConfig, force: bool = False) -> RunManifest:
    """
    Directed co-URL map, account filter and the coordination statistics exports.
    """
    store = ArtifactStore(config, force)
    corpus, report = parse_events(store.require("events", config.paths.events))
    json_serializer.serialize_to_json(report, store.produced(store.path("parse_report.json")))

    courl_map = compute_courls(corpus)
    symmetric = symmetrize(courl_map)
    write_courl_csv(symmetric, store.produced(store.path(COURL_FILE)))
    write_courl_csv(courl_map, store.produced(store.path(DIRECTED_COURL_FILE)))

    statistics = account_statistics(corpus, courl_map)
    filtered = filter_accounts(corpus, config.inclusion, statistics)
    file_utils.write_csv_atomically(store.produced(store.path(ACCOUNT_FILTER_FILE)),
                                    _account_filter_frame(filtered, statistics))

    retained = filtered.restrict(filtered.retained_ids)
    cdfs = [campaign_cdf(courl_map, retained, campaign) for campaign in retained.campaigns]
    for metric in CdfMetric:
        frame = cdf_distance_matrix(cdfs, metric).rename_axis("campaign").reset_index()
        file_utils.write_csv_atomically(store.produced(store.path(f"cdf_distances_{metric.value}.csv")), frame)

    matrix = cross_campaign_matrix(courl_map, retained, normalization=config.evaluation.matrix_normalization)
    json_serializer.serialize_to_json(matrix, store.produced(store.path("campaign_matrix.json")))
    file_utils.write_csv_atomically(store.produced(store.path("courl_series.csv")),
                                    campaign_courl_series(courl_map, retained))
    return store.write_manifest("courl", [])


def cmd_censor(config: PipelineConfig, force: bool = False) -> RunManifest:
    """
    Per task and seed: the split manifest, the censored vocabulary and the domain report.
    """
    store = ArtifactStore(config, force)
    store.check_upstream(UPSTREAM["censor"])
    corpus, _ = _filtered_corpus(store)

    for task in config.evaluation.tasks:
        for seed in config.evaluation.seeds:
            split_corpus = define_splits(corpus, get_task(task), seed, config.evaluation.val_fraction,
                                         config.evaluation.baseline_train_fraction,
                                         config.evaluation.baseline_val_fraction)
            write_split_manifest(split_corpus, task, seed,
                                 store.produced(store.task_path(SPLITS_DIR, task, seed, ".json")))

            vocabulary = vocabulary_frame(domain_frequency_table(split_corpus, SplitName.TRAIN), config.censor)
            file_utils.write_csv_atomically(store.produced(store.task_path(VOCABULARY_DIR, task, seed, ".csv")),
                                            vocabulary)

            censored = vocabulary.loc[vocabulary["censored"], "domain"]
            report = domain_report(split_corpus.restrict(_task_account_ids(split_corpus)), censored)
            file_utils.write_csv_atomically(store.produced(store.task_path(DOMAIN_REPORT_DIR, task, seed, ".csv")),
                                            report)
    return store.write_manifest("censor", config.evaluation.seeds)


def cmd_encode(config: PipelineConfig, force: bool = False) -> RunManifest:
    """
    Per task and seed: the censored graph edge list and the graph encoding of the
    configured presence flags.
    """
    store = ArtifactStore(config, force)
    store.check_upstream(UPSTREAM["encode"])
    corpus, symmetric = _filtered_corpus(store)

    for task in config.evaluation.tasks:
        for seed in config.evaluation.seeds:
            data = _task_data(store, corpus, symmetric, task, seed)
            write_edge_list(data.graph, store.produced(store.task_path(GRAPH_DIR, task, seed, "_edges.csv")))

            blocks = compute_blocks(data.graph, config.node2vec, seed, config.encoding.enabled_blocks)
            encoding = assemble_encoding(data.account_ids, blocks, config.encoding, data.train_rows)
            file_utils.write_csv_atomically(store.produced(store.task_path(ENCODING_DIR, task, seed, ".csv")),
                                            encoding_frame(encoding))
            log.info("Graph encoding written for %s (seed %d): %s", task, seed, config.encoding.to_symbols())
    return store.write_manifest("encode", config.evaluation.seeds)


def cmd_train(config: PipelineConfig, force: bool = False) -> RunManifest:
    """
    One checkpoint and training log per task, seed and configured model kind.
    """
    store = ArtifactStore(config, force)
    store.check_upstream(UPSTREAM["train"])
    corpus, symmetric = _filtered_corpus(store)

    for task in config.evaluation.tasks:
        for seed in config.evaluation.seeds:
            data = _task_data(store, corpus, symmetric, task, seed)
            inputs = _task_inputs(store, data)
            model_config = config.model.model_copy(update={"seed": seed})
            for kind in config.evaluation.models:
                model = train_model(kind, inputs, data.train_rows, data.val_rows, model_config,
                                    max(1, config.run.threads))
                directory = store.directory(MODELS_DIR, f"{task}_seed{seed}")
                save_model(model, store.produced(checkpoint_path(directory, kind)))
                write_training_log(model, store.produced(directory / f"training_{kind.value}.csv"))
    return store.write_manifest("train", config.evaluation.seeds)


def cmd_evaluate(config: PipelineConfig, force: bool = False) -> RunManifest:
    """
    Every configured model on every task over all seeds, with harmonic aggregates
    per family and the results-table summary.
    """
    store = ArtifactStore(config, force)
    store.check_upstream(UPSTREAM["evaluate"])
    corpus, symmetric = _filtered_corpus(store)

    cache: TaskCache = {}
    results, frames = [], []
    for kind in config.evaluation.models:
        kind_results = [run_task(corpus, symmetric, task, kind, config, cache=cache)
                        for task in config.evaluation.tasks]
        results.extend(kind_results)
        frames.append(results_frame(kind_results, aggregate_by_family(kind_results)))

    file_utils.write_csv_atomically(store.produced(store.path("results.csv")),
                                    pd.concat(frames, ignore_index=True))
    json_serializer.serialize_to_json(table_summary(results, config.evaluation.seeds),
                                      store.produced(store.path("summary.json")))
    return store.write_manifest("evaluate", config.evaluation.seeds)


def cmd_attribute(config: PipelineConfig, force: bool = False) -> RunManifest:
    """
    Integrated gradients of every trained deep model on the val, test and baseline
    subsets, grouped per input block, plus the mean over subtasks.
    """
    store = ArtifactStore(config, force)
    store.check_upstream(UPSTREAM["attribute"])
    corpus, symmetric = _filtered_corpus(store)

    kinds = [kind for kind in config.evaluation.models if kind.is_deep]
    if not kinds:
        log.warning("No differentiable model among evaluation.models; nothing to attribute.")

    summaries: Dict[Tuple[str, int], List] = {}
    for task in config.evaluation.tasks:
        for seed in config.evaluation.seeds:
            data = _task_data(store, corpus, symmetric, task, seed)
            inputs = _task_inputs(store, data)
            subsets = attribution_subsets(data.corpus, data.account_ids)
            for kind in kinds:
                directory = store.root / MODELS_DIR / f"{task}_seed{seed}"
                model = load_model(store.require(f"{kind.value} model", checkpoint_path(directory, kind)))
                baseline = empirical_baseline(model, inputs, config.attribution)
                reports = {subset: attribute_subset(model, inputs, subset, ids, baseline, config.attribution)
                           for subset, ids in subsets.items() if ids}
                summary = summarize_reports(task, seed, reports, inputs.layout, baseline,
                                            config.attribution.top_domains)
                name = f"{task}_seed{seed}_{kind.value}"
                json_serializer.serialize_to_json(summary, store.produced(store.path(ATTRIBUTION_DIR,
                                                                                     f"{name}.json")))
                groups_path = store.produced(store.path(ATTRIBUTION_DIR, f"{name}_groups.csv"))
                domains_path = store.produced(store.path(ATTRIBUTION_DIR, f"{name}_domains.csv"))
                write_attribution_tables(summary, groups_path, domains_path)
                summaries.setdefault((kind.value, seed), []).append(summary)

    for (kind, seed), members in sorted(summaries.items()):
        file_utils.write_csv_atomically(
                store.produced(store.path(ATTRIBUTION_DIR, f"aggregate_seed{seed}_{kind}.csv")),
                aggregate_subtask_attributions(members))
    return store.write_manifest("attribute", config.evaluation.seeds)


def cmd_sweep(config: PipelineConfig, force: bool = False) -> RunManifest:
    store = ArtifactStore(config, force)
    store.check_upstream(UPSTREAM["sweep"])
    corpus, symmetric = _filtered_corpus(store)

    grid = sweep(corpus, symmetric, config)
    file_utils.write_csv_atomically(store.produced(store.path("sweep.csv")), sweep_frame(grid))
    json_serializer.serialize_to_json(grid, store.produced(store.path("sweep.json")))
    return store.write_manifest("sweep", config.evaluation.seeds)


COMMAND_HANDLERS = {
    "synth": cmd_synth,
    "courl": cmd_courl,
    "censor": cmd_censor,
    "encode": cmd_encode,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "attribute": cmd_attribute,
    "sweep": cmd_sweep,
}


def _account_filter_frame(filtered: Corpus, statistics: Dict) -> pd.DataFrame:
    accounts = filtered.accounts[["account_id", "label", "campaign"]].copy()
    stats = pd.DataFrame([s.model_dump() for s in statistics.values()])
    frame = accounts.merge(stats, on="account_id", how="left") if not stats.empty else accounts
    frame["retained"] = frame["account_id"].map(
            lambda a: filtered.split_assignment.get(a) != SplitName.EXCLUDED)
    return frame


def _filtered_corpus(store: ArtifactStore) -> Tuple[Corpus, CoUrlMap]:
    """
    Corpus with the accounts excluded by the courl step, and the symmetrized co-URL map.
    """
    corpus, _ = parse_events(store.require("events", store.config.paths.events))
    symmetric = read_courl_csv(store.require("co-URL map", store.root / COURL_FILE), is_symmetric=True)
    frame = file_utils.read_csv(store.require("account filter", store.root / ACCOUNT_FILTER_FILE),
                                dtype={"account_id": str}, keep_default_na=False)
    excluded = frame.loc[~frame["retained"].astype(bool), "account_id"]
    corpus = corpus.with_splits({account_id: SplitName.EXCLUDED for account_id in excluded})
    return corpus, symmetric


def _task_account_ids(corpus: Corpus) -> List[str]:
    return sorted(a for a, s in corpus.split_assignment.items() if s != SplitName.EXCLUDED)


def _task_data(store: ArtifactStore, corpus: Corpus, symmetric: CoUrlMap, task: str, seed: int) -> TaskData:
    """
    Rebuilds the task's split and censored graph from the stored split manifest.
    """
    manifest = read_split_manifest(store.require("split manifest",
                                                 store.root / SPLITS_DIR / f"{task}_seed{seed}.json"))
    split_corpus = apply_split_manifest(corpus, manifest)
    account_ids = _task_account_ids(split_corpus)
    split_of = split_corpus.split_assignment

    def rows(split: SplitName) -> np.ndarray:
        return np.array([k for k, a in enumerate(account_ids) if split_of[a] == split], dtype=np.int64)

    graph = build_censored_graph(symmetric, store.config.graph, account_ids)
    return TaskData(task=task, seed=seed, corpus=split_corpus, account_ids=account_ids,
                    labels=split_corpus.labels(account_ids), train_rows=rows(SplitName.TRAIN),
                    val_rows=rows(SplitName.VAL), test_rows=rows(SplitName.TEST), graph=graph, blocks={},
                    edge_vectors=edge_vectors(symmetric, graph))


def _task_inputs(store: ArtifactStore, data: TaskData) -> ModelInputs:
    config = store.config
    vocabulary = file_utils.read_csv(
            store.require("vocabulary", store.root / VOCABULARY_DIR / f"{data.task}_seed{data.seed}.csv"),
            keep_default_na=False)
    content = build_content_features(data.corpus, vocabulary_from_frame(vocabulary), config.censor.standardize,
                                     data.account_ids)
    encoding = _read_encoding(store.require("graph encoding",
                                            store.root / ENCODING_DIR / f"{data.task}_seed{data.seed}.csv"),
                              data, config)
    return assemble_inputs(content, data.labels, encoding, data.graph, data.edge_vectors)


def _read_encoding(path: Path, data: TaskData, config: PipelineConfig) -> GraphEncoding:
    frame = file_utils.read_csv(path, dtype={"account_id": str}, keep_default_na=False)
    flags = config.encoding
    names = [name for block in flags.enabled_blocks for name in block_column_names(block)]
    if frame["account_id"].tolist() != data.account_ids or list(frame.columns[1:]) != names:
        raise LayoutMismatchError(f"Graph encoding {path} does not match the task accounts or the encoding flags "
                                  f"{flags.to_symbols()}; rerun encode.")

    block_columns, offset = {}, 0
    for block in flags.enabled_blocks:
        width = len(block_column_names(block))
        block_columns[block] = list(range(offset, offset + width))
        offset += width
    return GraphEncoding(account_ids=data.account_ids, flags=flags, matrix=frame[names].to_numpy(np.float64),
                         column_names=names, block_columns=block_columns)
