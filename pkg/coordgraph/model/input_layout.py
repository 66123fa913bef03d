from typing import List

from pydantic import BaseModel

from coordgraph.model.encoding_flags import EncodingFlags


class InputLayout(BaseModel):
    """
    Column layout of a feature matrix: content domains first, then graph blocks.
    """
    retained_domains: List[str]
    flags: EncodingFlags
    column_names: List[str]

    @property
    def width(self) -> int:
        return len(self.column_names)

    def content_columns(self) -> List[int]:
        return list(range(len(self.retained_domains)))
