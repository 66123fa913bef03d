import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict

from coordgraph.locking import LockManager, LockMode

log = logging.getLogger(__name__)

CHUNK_SIZE = 65536


def calculate_sha256_hash(file_path: Path) -> str:
    with LockManager.acquire_artifact_lock(file_path, LockMode.SHARED):
        if not file_path.is_file():
            log.error(f"Artifact not found at {file_path.name}")
            raise FileNotFoundError(f"Artifact not found at {file_path.resolve()}")

        log.debug(f"Calculating SHA256 for the file: {file_path.name}")

        sha256_hash = hashlib.sha256()

        try:
            with open(file_path, "rb") as f:

                while True:
                    chunk = f.read(CHUNK_SIZE)
                    if not chunk:
                        break

                    sha256_hash.update(chunk)

        except IOError as e:
            log.error(f"Error while reading file: {file_path.name}: {e}")
            raise RuntimeError(f"Could not read file for hashing: {e}")

        final_hash = sha256_hash.hexdigest()
        log.debug(f"SHA256 calculated. Hash: {final_hash[:10]}...")

        return final_hash


def calculate_payload_hash(payload: Dict[str, Any]) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
