from coordgraph.locking.lock_manager import LockManager
from coordgraph.locking.file_lock import ManagedFileLock
from coordgraph.locking.lock_mode import LockMode

__all__ = ["LockManager", "ManagedFileLock", "LockMode"]
