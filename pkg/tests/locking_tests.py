import threading

import pytest
from filelock import Timeout

from coordgraph import file_utils
from coordgraph.locking import LockManager, LockMode


def test_second_run_on_the_same_output_directory_times_out(tmp_path):
    with LockManager.acquire_run_lock(tmp_path):
        with pytest.raises(Timeout):
            with LockManager.acquire_run_lock(tmp_path, timeout=0.1):
                pass

    assert list(tmp_path.iterdir()) == []


def test_shared_readers_do_not_wait_for_each_other(tmp_path):
    target = tmp_path / "courls.csv"
    seen = {}

    def read():
        with LockManager.acquire_artifact_lock(target, LockMode.SHARED, timeout=0.1) as lock:
            seen["lock_file"] = lock.lock_file_path

    with LockManager.acquire_artifact_lock(target, LockMode.SHARED) as first:
        reader = threading.Thread(target=read)
        reader.start()
        reader.join()

    assert seen["lock_file"] != first.lock_file_path
    assert list(tmp_path.iterdir()) == []


def test_atomic_write_leaves_no_lock_or_temp_files(tmp_path):
    target = tmp_path / "nested" / "results.csv"

    file_utils.write_text_atomically(target, "task,value\n")

    assert target.read_text() == "task,value\n"
    assert sorted(p.name for p in target.parent.iterdir()) == ["results.csv"]
