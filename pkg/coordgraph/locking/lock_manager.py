import logging
from pathlib import Path
from typing import Optional, ContextManager

from coordgraph.config.lock_config import LockConfig
from coordgraph.locking.file_lock import ManagedFileLock
from coordgraph.locking.lock_mode import LockMode

log = logging.getLogger(__name__)


class LockManager:
    """
    Factory for the locks used by the pipeline commands.
    """

    @staticmethod
    def acquire_run_lock(
            output_dir: Path,
            timeout: Optional[float] = None
    ) -> ContextManager[ManagedFileLock]:
        """
        Prevents two pipeline processes from writing into the same output directory.

        Usage:
            with LockManager.acquire_run_lock(output_dir):
                run_command(...)
        """
        timeout = timeout or LockConfig.DEFAULT_TIMEOUT

        if not output_dir.exists():
            output_dir.mkdir(parents=True, exist_ok=True)

        lock_path = output_dir / LockConfig.RUN_LOCK_NAME

        log.debug(f"Acquiring run lock at {lock_path}")
        return ManagedFileLock(
            target_path=lock_path,
            lock_mode=LockMode.EXCLUSIVE,
            timeout=timeout
        )

    @staticmethod
    def acquire_artifact_lock(
            artifact_path: Path,
            lock_mode: LockMode = LockMode.EXCLUSIVE,
            timeout: Optional[float] = None
    ) -> ContextManager[ManagedFileLock]:
        """
        SHARED for reads, EXCLUSIVE for writes of a single artifact file.
        """
        timeout = timeout or LockConfig.DEFAULT_TIMEOUT

        log.debug(f"Acquiring {lock_mode.value} lock for artifact {artifact_path.name}")
        return ManagedFileLock(
            target_path=artifact_path,
            lock_mode=lock_mode,
            timeout=timeout,
            lock_suffix=LockConfig.ARTIFACT_LOCK_SUFFIX
        )
