from pydantic import BaseModel

from coordgraph.model.environment import Environment


# Wall-clock and host details of a run, kept apart from the reproducible manifest.
class RunInfo(BaseModel):
    command: str
    config_hash: str
    created_at: str
    environment: Environment
