import logging
from pathlib import Path

import pandas as pd

from coordgraph.locking import LockManager, LockMode

log = logging.getLogger(__name__)

TEMP_SUFFIX = ".tmp"
CSV_FLOAT_FORMAT = "%.10g"


def check_file_exists(file_path: Path) -> bool:
    if file_path is None:
        log.error("check_file_exists: file_path parameter cannot be None")
        raise ValueError("check_file_exists: file_path parameter cannot be None")
    return Path(file_path).is_file()


def check_directory_exists(dir_path: Path) -> bool:
    if dir_path is None:
        log.error("check_directory_exists: dir_path parameter cannot be None")
        raise ValueError("check_directory_exists: dir_path parameter cannot be None")
    return Path(dir_path).is_dir()


def write_bytes_atomically(file_path: Path, content: bytes) -> None:
    """
    Writes to a temporary sibling first, then renames over the target.
    """
    if file_path is None:
        log.error("write_bytes_atomically: file_path parameter cannot be None")
        raise ValueError("write_bytes_atomically: file_path parameter cannot be None")

    p = Path(file_path)
    with LockManager.acquire_artifact_lock(p, LockMode.EXCLUSIVE):
        p.parent.mkdir(parents=True, exist_ok=True)
        temp_path = p.with_name(p.name + TEMP_SUFFIX)
        try:
            with open(temp_path, "wb") as f:
                f.write(content)
            temp_path.replace(p)
        except OSError as e:
            log.error(f"Error writing file {p}: {e}")
            if temp_path.exists():
                temp_path.unlink()
            raise

    log.debug(f"File saved successfully: {p.resolve()}")


def write_text_atomically(file_path: Path, content: str) -> None:
    write_bytes_atomically(file_path, content.encode("utf-8"))


def write_csv_atomically(file_path: Path, frame: pd.DataFrame) -> None:
    csv_text = frame.to_csv(index=False, lineterminator="\n", float_format=CSV_FLOAT_FORMAT)
    write_text_atomically(file_path, csv_text)


def read_bytes(file_path: Path) -> bytes:
    p = Path(file_path)
    if not p.is_file():
        raise FileNotFoundError(f"File not found: {p.resolve()}")

    with LockManager.acquire_artifact_lock(p, LockMode.SHARED):
        return p.read_bytes()


def read_csv(file_path: Path, **kwargs) -> pd.DataFrame:
    p = Path(file_path)
    if not p.is_file():
        raise FileNotFoundError(f"File not found: {p.resolve()}")

    with LockManager.acquire_artifact_lock(p, LockMode.SHARED):
        return pd.read_csv(p, **kwargs)
