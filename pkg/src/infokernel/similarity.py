"""Shared agreement-score type and percent formatting."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SimilarityResult:
    """Count of agreeing fingerprint bits out of a total."""

    matches: int
    total: int

    def __post_init__(self):
        if not 0 <= self.matches <= self.total:
            raise ValueError("matches must lie in [0, total]")

    @property
    def fraction(self) -> float:
        return self.matches / self.total

    @property
    def percent_text(self) -> str:
        return percent_string(self.matches, self.total)


def percent_string(matches: int, total: int) -> str:
    """Percentage with exactly 3 decimals, round half away from zero.

    Integer arithmetic so the text is identical on every platform.
    """
    if total <= 0:
        raise ValueError("total must be positive")
    milli = (200_000 * matches + total) // (2 * total)
    return f"{milli // 1000}.{milli % 1000:03d}"
