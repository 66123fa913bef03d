from typing import Dict

from pydantic import BaseModel


class Environment(BaseModel):
    app_version: str
    python_version: str
    cpu_name: str
    cpu_threads: int
    ram_total_bytes: int
    package_versions: Dict[str, str]
