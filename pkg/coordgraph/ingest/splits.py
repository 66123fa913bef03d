import logging
import zlib
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

from coordgraph import json_serializer
from coordgraph.exceptions import CorpusError
from coordgraph.model.account_record import BASELINE_CAMPAIGN
from coordgraph.model.corpus import Corpus
from coordgraph.model.split_manifest import SplitManifest
from coordgraph.model.split_name import SplitName
from coordgraph.model.task_descriptor import TaskDescriptor

log = logging.getLogger(__name__)

# Operation -> (earlier campaign, later campaign), in task index order.
OPERATIONS: Dict[str, Tuple[str, str]] = {
    "rus": ("rus18", "rus20"),
    "chn": ("chn19", "chn20"),
    "iran": ("iran19", "iran21"),
}


def _build_task_registry() -> Dict[str, TaskDescriptor]:
    registry = {}
    for index, (operation, (earlier, later)) in enumerate(OPERATIONS.items(), start=1):
        others = [campaigns[0] for name, campaigns in OPERATIONS.items() if name != operation]
        registry[f"A{index}"] = TaskDescriptor(name=f"A{index}", operation=operation, train_campaigns=[earlier],
                                               val_campaign=earlier, test_campaign=later)
        registry[f"B{index}"] = TaskDescriptor(name=f"B{index}", operation=operation, train_campaigns=others,
                                               val_campaign=earlier, test_campaign=later)
    return dict(sorted(registry.items()))


TASK_REGISTRY: Dict[str, TaskDescriptor] = _build_task_registry()


def get_task(name: str) -> TaskDescriptor:
    if name not in TASK_REGISTRY:
        raise CorpusError(f"Unknown task {name!r}. Known tasks: {sorted(TASK_REGISTRY)}")
    return TASK_REGISTRY[name]


def campaign_wave(campaign: str) -> str:
    for earlier, later in OPERATIONS.values():
        if campaign == earlier:
            return "earlier"
        if campaign == later:
            return "later"
    return BASELINE_CAMPAIGN if campaign == BASELINE_CAMPAIGN else "other"


def define_splits(corpus: Corpus, task: TaskDescriptor, seed: int, val_fraction: float = 0.2,
                  baseline_train_fraction: float = 0.6, baseline_val_fraction: float = 0.2) -> Corpus:
    """
    Assigns train/val/test tags for one task; excluded accounts keep their tag and
    accounts outside the task's campaigns stay unassigned.

    Validation and test draws depend only on the seed and the operation's campaigns,
    so the paired A_k and B_k tasks share identical val/test sets.
    """
    known = set(corpus.campaigns)
    for campaign in [*task.train_campaigns, task.val_campaign, task.test_campaign, BASELINE_CAMPAIGN]:
        if campaign not in known:
            raise CorpusError(f"Task {task.name} references campaign {campaign!r} absent from the corpus. "
                              f"Known campaigns: {sorted(known)}")

    excluded = {a for a, s in corpus.split_assignment.items() if s == SplitName.EXCLUDED}
    retained = _retained_by_campaign(corpus, excluded)
    assignment: Dict[str, SplitName] = {a: SplitName.EXCLUDED for a in excluded}

    val_ids, val_rest = _draw(retained[task.val_campaign], [val_fraction], seed, task.val_campaign)
    baseline_train, baseline_val, baseline_test = _draw(
            retained[BASELINE_CAMPAIGN], [baseline_train_fraction, baseline_val_fraction], seed, BASELINE_CAMPAIGN)

    train_ids: List[str] = list(baseline_train)
    for campaign in task.train_campaigns:
        train_ids.extend(val_rest if campaign == task.val_campaign else retained[campaign])

    for split, ids in ((SplitName.TRAIN, train_ids),
                       (SplitName.VAL, [*val_ids, *baseline_val]),
                       (SplitName.TEST, [*retained[task.test_campaign], *baseline_test])):
        for account_id in ids:
            if account_id in assignment:
                raise CorpusError(f"Account {account_id} falls into two splits of task {task.name}")
            assignment[account_id] = split

    split_corpus = corpus.with_splits(assignment)
    log.info("Splits defined for task %s (seed %d):", task.name, seed)
    for split in (SplitName.TRAIN, SplitName.VAL, SplitName.TEST):
        ids = split_corpus.ids_in_split(split)
        positives = int(split_corpus.labels(ids).sum()) if ids else 0
        log.info("|-%s: %d accounts (%d IO, %d baseline)", split.value, len(ids), positives, len(ids) - positives)
    return split_corpus


def split_manifest(corpus: Corpus, task_name: str, seed: int) -> SplitManifest:
    return SplitManifest(task=task_name, seed=seed,
                         train=corpus.ids_in_split(SplitName.TRAIN),
                         val=corpus.ids_in_split(SplitName.VAL),
                         test=corpus.ids_in_split(SplitName.TEST))


def write_split_manifest(corpus: Corpus, task_name: str, seed: int, path: Path) -> SplitManifest:
    manifest = split_manifest(corpus, task_name, seed)
    json_serializer.serialize_to_json(manifest, path)
    return manifest


def read_split_manifest(path: Path) -> SplitManifest:
    return json_serializer.load_from_json(path, SplitManifest)


def apply_split_manifest(corpus: Corpus, manifest: SplitManifest) -> Corpus:
    assignment = {a: s for a, s in corpus.split_assignment.items() if s == SplitName.EXCLUDED}
    for split, ids in ((SplitName.TRAIN, manifest.train), (SplitName.VAL, manifest.val),
                       (SplitName.TEST, manifest.test)):
        for account_id in ids:
            if account_id in assignment:
                raise CorpusError(f"Split manifest assigns account {account_id} twice")
            assignment[account_id] = split
    return corpus.with_splits(assignment)


def _retained_by_campaign(corpus: Corpus, excluded: set) -> Dict[str, List[str]]:
    retained: Dict[str, List[str]] = {c: [] for c in corpus.campaigns}
    for account_id, campaign in zip(corpus.accounts["account_id"], corpus.accounts["campaign"]):
        if account_id not in excluded:
            retained[campaign].append(account_id)
    return retained


def _draw(account_ids: List[str], fractions: List[float], seed: int, stream: str) -> List[List[str]]:
    """
    Shuffles the sorted ids with a generator keyed on (seed, stream) and cuts
    consecutive shares; the remainder forms the last part.
    """
    rng = np.random.default_rng([seed, zlib.crc32(stream.encode("utf-8"))])
    shuffled = [account_ids[k] for k in rng.permutation(len(account_ids))] if account_ids else []

    parts, start = [], 0
    for fraction in fractions:
        size = int(round(fraction * len(shuffled)))
        if len(shuffled) >= len(fractions) + 1:
            size = max(size, 1)
        size = min(size, len(shuffled) - start)
        parts.append(sorted(shuffled[start:start + size]))
        start += size
    parts.append(sorted(shuffled[start:]))
    return parts
