class LockConfig:
    DEFAULT_TIMEOUT = 5.0
    RUN_LOCK_NAME = ".coordgraph"
    ARTIFACT_LOCK_SUFFIX = ".lock"
