import logging
from pathlib import Path
from typing import Type, TypeVar

from pydantic import BaseModel

from coordgraph import file_utils

log = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


def serialize_to_json(model: BaseModel, output_path: str | Path):
    p = Path(output_path)

    try:
        json_string = model.model_dump_json(indent=4)
        file_utils.write_text_atomically(p, json_string + "\n")
        log.debug(f"Json saved successfully: {p.resolve()}")

    except Exception as e:
        log.error(f"Error serializing json. Output path: {output_path}. Exception: {e}")
        raise


def load_from_json(input_path: str | Path, model_type: Type[ModelT]) -> ModelT:
    p = Path(input_path)

    if not p.is_file():
        raise FileNotFoundError(f"File not found for deserialization: {p.resolve()}")

    json_content = file_utils.read_bytes(p).decode("utf-8")
    try:
        model = model_type.model_validate_json(json_content)
        log.debug(f"Json loaded: {p.resolve()}")
        return model

    except Exception as e:
        raise ValueError(f"Error loading json file. Input path: {input_path}. Exception: {e}")
