from pydantic import BaseModel, Field


class GraphBuildConfig(BaseModel):
    n: int = Field(default=10, ge=1)
    T: int = Field(default=15, ge=1, le=100)
    # Counts bins 1..T when set, otherwise bins 1..T-1 ("interarrival times less than T").
    inclusive_T: bool = False

    @property
    def last_bin(self) -> int:
        return self.T if self.inclusive_T else self.T - 1
