import platform
from functools import lru_cache
from importlib import metadata

import psutil
from cpuinfo import get_cpu_info

from coordgraph.config.app_config import ConfigManager
from coordgraph.model.environment import Environment

TRACKED_PACKAGES = ["numpy", "scipy", "pandas", "networkx", "scikit-learn", "gensim", "torch",
                    "torch-geometric", "captum", "tldextract"]


def extract() -> Environment:
    app_config = ConfigManager.get_config()

    return Environment(
            app_version=app_config.app_version,
            python_version=platform.python_version(),
            cpu_name=_extract_cpu_name(),
            cpu_threads=extract_cpu_threads(),
            ram_total_bytes=psutil.virtual_memory().total,
            package_versions=_extract_package_versions()
    )


def _extract_package_versions() -> dict[str, str]:
    versions = {}
    for package_name in TRACKED_PACKAGES:
        try:
            versions[package_name] = metadata.version(package_name)
        except metadata.PackageNotFoundError:
            versions[package_name] = "not installed"
    return versions


def _extract_cpu_name() -> str:
    cpu_info = _cpu_info()
    cpu_model = cpu_info.get('brand_raw')

    if cpu_model:
        return cpu_model
    else:
        return "unknown"


def extract_cpu_threads() -> int:
    cpu_info = _cpu_info()
    cpu_threads = cpu_info.get('count')

    if cpu_threads:
        return cpu_threads
    else:
        return -1


@lru_cache(maxsize=1)
def _cpu_info() -> dict:
    # py-cpuinfo reads the hardware in a subprocess; once per process is enough.
    return get_cpu_info()
