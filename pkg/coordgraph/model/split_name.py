from enum import Enum


class SplitName(str, Enum):
    TRAIN = "train"
    VAL = "val"
    TEST = "test"
    EXCLUDED = "excluded"
