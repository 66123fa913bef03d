from __future__ import annotations

from typing import List

from pydantic import BaseModel, Field, model_validator

KERNELS = ["exponential", "lognormal"]


class CampaignSpec(BaseModel):
    """
    One synthetic IO campaign: lead accounts post source URLs, the other accounts
    re-share them after a delay drawn from the coordination kernel.
    """
    name: str
    num_accounts: int = Field(ge=2)
    num_leads: int = Field(default=5, ge=1)
    # Seconds since the Unix epoch.
    start: int = Field(default=1_514_764_800, ge=0)
    duration_days: float = Field(default=180.0, gt=0.0)
    io_domain_pool: List[str]
    shared_domain_pool: List[str]
    io_domain_mix: float = Field(default=0.7, ge=0.0, le=1.0)
    kernel: str = "exponential"
    kernel_scale_minutes: float = Field(default=5.0, gt=0.0)
    # Log-space standard deviation of the lognormal kernel.
    kernel_sigma: float = Field(default=1.0, gt=0.0)
    shares_per_account: float = Field(default=260.0, ge=0.0)
    resharers_per_source: int = Field(default=10, ge=1)
    # Text-only posts per URL share.
    text_ratio: float = Field(default=0.5, ge=0.0)
    # Operation accounts that never coordinate: organic-looking shares of the shared
    # pool (Zipf popularity, as in the baseline) plus a few links into the IO pool.
    num_dormant: int = Field(default=0, ge=0)
    dormant_url_shares: float = Field(default=240.0, ge=0.0)
    dormant_io_shares: float = Field(default=24.0, ge=0.0)
    zipf_exponent: float = Field(default=1.1, gt=0.0)
    items_per_domain: int = Field(default=20, ge=1)
    seed: int = 0

    @model_validator(mode="after")
    def _check_spec(self) -> CampaignSpec:
        if not self.io_domain_pool or not self.shared_domain_pool:
            raise ValueError(f"Campaign {self.name}: domain pools must not be empty")
        if self.kernel not in KERNELS:
            raise ValueError(f"Campaign {self.name}: kernel must be one of {KERNELS}, got {self.kernel!r}")
        if self.num_leads >= self.num_accounts:
            raise ValueError(f"Campaign {self.name}: needs more accounts than leads")
        return self
