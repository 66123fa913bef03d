import logging
import os
import threading
from pathlib import Path
from typing import Optional

from filelock import FileLock, Timeout

from coordgraph.locking.lock_mode import LockMode

log = logging.getLogger(__name__)


def lock_path_for(target_path: Path, lock_mode: LockMode, lock_suffix: str) -> Path:
    # Each reader locks its own file, so readers never wait for one another.
    if lock_mode == LockMode.SHARED:
        lock_suffix = f".read.{os.getpid()}.{threading.get_ident()}{lock_suffix}"
    return target_path.with_name(target_path.name + lock_suffix)


class ManagedFileLock:
    """
    Holds a filelock.FileLock beside the target for the duration of a with-block.
    The lock file is deleted on exit so it never lands among the run's artifacts.
    """

    def __init__(self, target_path: Path, lock_mode: LockMode, timeout: float, lock_suffix: str = ".lock"):
        self.target_path = target_path
        self.lock_mode = lock_mode
        self.timeout = timeout
        self.lock_file_path = lock_path_for(target_path, lock_mode, lock_suffix)
        self._lock: Optional[FileLock] = None

    def __enter__(self) -> "ManagedFileLock":
        self.lock_file_path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = FileLock(self.lock_file_path, timeout=self.timeout)
        try:
            self._lock.acquire()
        except Timeout:
            log.error("No %s lock on %s within %.1fs", self.lock_mode.value, self.target_path, self.timeout)
            raise
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> bool:
        if self._lock is not None and self._lock.is_locked:
            self._lock.release()
            self.lock_file_path.unlink(missing_ok=True)
        return False
