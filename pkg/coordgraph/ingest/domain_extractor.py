import logging
from functools import lru_cache

import tldextract

log = logging.getLogger(__name__)


@lru_cache(maxsize=1)
def _extractor() -> tldextract.TLDExtract:
    # Bundled public-suffix snapshot only; no network fetch and no on-disk cache,
    # so the same package version always yields the same domains.
    return tldextract.TLDExtract(suffix_list_urls=(), cache_dir=None, include_psl_private_domains=False)


@lru_cache(maxsize=262144)
def extract_domain(url: str) -> str:
    """
    Returns the registered domain (eTLD+1) of the url in lowercase, or an empty
    string when the url has no recognisable public suffix.
    """
    if not url or any(ch.isspace() for ch in url.strip()):
        return ""

    try:
        parts = _extractor()(url.strip())
    except ValueError as e:
        log.debug("Unparseable url %r: %s", url, e)
        return ""

    if not parts.domain or not parts.suffix:
        return ""
    return f"{parts.domain}.{parts.suffix}".lower()
