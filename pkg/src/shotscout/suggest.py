"""Search-as-you-type suggestions over the ingested vocabulary."""
from __future__ import annotations

from .errors import InvalidArgument
from .models import VocabularyEntry


def suggest(store, fragment: str, limit: int = 10, category: str | None = None) -> list[VocabularyEntry]:
    """Vocabulary entries whose label contains ``fragment`` (case-insensitive).

    Prefix matches rank before other substring matches; within each tier,
    shot_frequency descending, then label ascending (category ascending as
    the final tie). An empty fragment returns the top-frequency entries.
    """
    if not isinstance(limit, int) or limit < 1:
        raise InvalidArgument(f"limit must be a positive integer, got {limit!r}")
    needle = fragment.lower()
    prefixed: list[VocabularyEntry] = []
    contained: list[VocabularyEntry] = []
    for entry in store.vocabulary(category):
        if entry.label.startswith(needle):
            prefixed.append(entry)
        elif needle in entry.label:
            contained.append(entry)
    key = lambda e: (-e.shot_frequency, e.label, e.category)
    prefixed.sort(key=key)
    contained.sort(key=key)
    return (prefixed + contained)[:limit]
