from typing import Dict, List

from pydantic import BaseModel, Field


class RunManifest(BaseModel):
    """
    Provenance of one command run: which config produced which artifacts from which inputs.
    Holds nothing that changes between two runs of the same config.
    """
    command: str
    app_version: str
    artifact_schema_version: int
    config_hash: str
    seeds: List[int]
    # Artifact path relative to the output directory -> SHA-256.
    inputs: Dict[str, str] = Field(default_factory=dict)
    outputs: Dict[str, str] = Field(default_factory=dict)
