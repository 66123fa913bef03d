import io
import logging
from pathlib import Path
from typing import BinaryIO, Tuple, Union

import numpy as np
import pandas as pd

from coordgraph.exceptions import CorpusError
from coordgraph.ingest.domain_extractor import extract_domain
from coordgraph.model.account_record import BASELINE_CAMPAIGN
from coordgraph.model.corpus import Corpus
from coordgraph.model.event_format import EVENT_COLUMNS, EventFormat
from coordgraph.model.parse_report import ParseReport

log = logging.getLogger(__name__)

EventSource = Union[bytes, BinaryIO, Path]

REASON_MALFORMED_LINE = "malformed_line"
REASON_EMPTY_ACCOUNT = "empty_account_id"
REASON_BAD_TIMESTAMP = "bad_timestamp"
REASON_NEGATIVE_TIMESTAMP = "negative_timestamp"
REASON_EMPTY_URL = "empty_url"
REASON_BAD_LABEL = "bad_label"
REASON_LABEL_CAMPAIGN_MISMATCH = "label_campaign_mismatch"
REASON_CONFLICTING_ACCOUNT = "conflicting_account_label"


def parse_events(source: EventSource, event_format: EventFormat = None) -> Tuple[Corpus, ParseReport]:
    """
    Reads delimited share events and groups them per account.

    Malformed rows are skipped and tallied by reason in the returned report; an
    unreadable stream or a missing column is fatal.
    """
    event_format = event_format or EventFormat()
    raw, malformed_lines = _read_frame(source, event_format)
    report = ParseReport(rows_read=len(raw) + malformed_lines)
    report.reject(REASON_MALFORMED_LINE, malformed_lines)

    frame = raw.rename(columns=dict(zip(event_format.columns, EVENT_COLUMNS)))
    for column in EVENT_COLUMNS:
        frame[column] = frame[column].str.strip()

    keep = _reject(frame, frame["account_id"] == "", REASON_EMPTY_ACCOUNT, report)

    is_integer = frame["timestamp"].str.fullmatch(r"[+-]?\d+")
    keep &= _reject(frame, keep & ~is_integer, REASON_BAD_TIMESTAMP, report)
    timestamps = pd.to_numeric(frame["timestamp"].where(is_integer, "0"), errors="coerce").fillna(-1)
    keep &= _reject(frame, keep & (timestamps < 0), REASON_NEGATIVE_TIMESTAMP, report)

    keep &= _reject(frame, keep & (frame["url"] == ""), REASON_EMPTY_URL, report)
    keep &= _reject(frame, keep & ~frame["label"].isin(["0", "1"]), REASON_BAD_LABEL, report)

    expected_label = np.where(frame["campaign"] == BASELINE_CAMPAIGN, "0", "1")
    keep &= _reject(frame, keep & ((frame["label"] != expected_label) | (frame["campaign"] == "")),
                    REASON_LABEL_CAMPAIGN_MISMATCH, report)

    frame = frame.loc[keep].copy()
    frame["timestamp"] = timestamps.loc[keep].astype(np.int64)
    frame["label"] = frame["label"].astype(np.int64)

    # An account keeps the label and campaign of its first row; contradicting rows are dropped.
    first_seen = frame.groupby("account_id", sort=False)["campaign"].transform("first")
    conflicting = frame["campaign"] != first_seen
    report.reject(REASON_CONFLICTING_ACCOUNT, int(conflicting.sum()))
    frame = frame.loc[~conflicting]

    frame["domain"] = frame["url"].map(extract_domain)
    corpus = Corpus.from_frames(frame, _account_table(frame))
    report.rows_loaded = len(frame)

    log.info("Parsed share events:")
    log.info("|-Rows read: %d", report.rows_read)
    log.info("|-Rows loaded: %d", report.rows_loaded)
    log.info("|-Accounts: %d", len(corpus))
    if report.rows_rejected:
        log.warning("|-Rows rejected: %d %s", report.rows_rejected, report.rejected_by_reason)

    return corpus, report


def serialize_events(corpus: Corpus, event_format: EventFormat = None) -> bytes:
    """
    Writes the corpus back into the delimited event format, one row per share,
    ordered by account and timestamp.
    """
    event_format = event_format or EventFormat()
    frame = corpus.events.merge(corpus.accounts[["account_id", "label", "campaign"]], on="account_id")
    frame = frame[EVENT_COLUMNS].rename(columns=dict(zip(EVENT_COLUMNS, event_format.columns)))
    text = frame.to_csv(index=False, sep=event_format.delimiter, lineterminator="\n")
    return text.encode(event_format.encoding)


def _read_frame(source: EventSource, event_format: EventFormat) -> Tuple[pd.DataFrame, int]:
    malformed_lines = []

    def _skip_malformed(fields):
        malformed_lines.append(fields)
        return None

    try:
        if isinstance(source, Path):
            source = source.read_bytes()
        if isinstance(source, bytes):
            source = io.BytesIO(source)
        frame = pd.read_csv(source, sep=event_format.delimiter, encoding=event_format.encoding,
                            dtype=str, keep_default_na=False, on_bad_lines=_skip_malformed, engine="python")
    except (OSError, UnicodeDecodeError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise CorpusError(f"Unreadable event stream: {e}") from e

    missing = [c for c in event_format.columns if c not in frame.columns]
    if missing:
        raise CorpusError(f"Event stream is missing required columns: {missing}")
    # Short rows come back with missing trailing fields.
    return frame[event_format.columns].fillna(""), len(malformed_lines)


def _reject(frame: pd.DataFrame, mask: pd.Series, reason: str, report: ParseReport) -> pd.Series:
    report.reject(reason, int(mask.sum()))
    return ~mask


def _account_table(frame: pd.DataFrame) -> pd.DataFrame:
    grouped = frame.groupby("account_id", sort=True)
    return pd.DataFrame({
        "account_id": grouped.size().index,
        "label": grouped["label"].first().to_numpy(),
        "campaign": grouped["campaign"].first().to_numpy(),
        "first_active": grouped["timestamp"].min().to_numpy(),
        "last_active": grouped["timestamp"].max().to_numpy(),
    })
