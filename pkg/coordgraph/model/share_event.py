from pydantic import BaseModel, Field, field_validator


class ShareEvent(BaseModel):
    account_id: str = Field(min_length=1)
    timestamp: int = Field(ge=0)
    url: str = Field(min_length=1)
    # Registered domain; empty until extracted or when the url has none.
    domain: str = ""

    @field_validator("domain")
    @classmethod
    def _domain_is_bare(cls, value: str) -> str:
        if value != value.lower() or "/" in value or ":" in value:
            raise ValueError(f"domain must be lowercase without scheme or path: {value!r}")
        return value
