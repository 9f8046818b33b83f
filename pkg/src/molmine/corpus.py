"""Synthetic corpus generator: a desk-scale stand-in for a real dump.

Plants recoverable structures into each year bucket — directed stars,
bridge cliques, and single-direction noise pairs — padded with solo filler
publications. The padding arithmetic guarantees that under the default
thresholds (support 0.001, confidence 0.05, lift > 1) mining yields exactly
the planted directed edges:

* in-star, k leaves: one joint publication per (leaf, center) plus enough
  center solo publications that confidence(center => leaf) = 1/max(21, k)
  stays below 0.05 while confidence(leaf => center) = 1.
* out-star: the mirrored construction, padding every leaf instead.
* bridge clique: one joint publication over all members and nothing else,
  so every ordered pair fires (confidence 1) and forms a double bond.
* noise pair (P, Q): one joint publication plus 20 solo publications for Q,
  so P => Q fires but Q => P fails confidence.

All randomness (filler author choice, transaction order) flows from the one
explicit seed; identical arguments produce identical corpus bytes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from ._util import derive_seed
from .errors import ConfigError
from .ingest import Publication, write_jsonl

# confidence(X => Y) = co / n_X; keeping a padded author's publication count
# at >= 21 pins 1/21 < 0.05 under the default confidence threshold.
_PAD_TARGET = 21


@dataclass(frozen=True)
class CorpusProfile:
    """Planted structure counts, re-planted identically in every year."""

    stars: int = 1
    star_size: int = 8  # nuclei including the center
    star_direction: str = "in"  # edges point into ("in") or out of ("out") the center
    cliques: int = 1
    clique_size: int = 3
    noise_pairs: int = 5

    def validate(self) -> None:
        for field in ("stars", "cliques", "noise_pairs"):
            if getattr(self, field) < 0:
                raise ConfigError(f"{field} must be >= 0, got {getattr(self, field)}")
        if self.stars and self.star_size < 3:
            raise ConfigError(f"star_size must be >= 3, got {self.star_size}")
        if self.cliques and self.clique_size < 2:
            raise ConfigError(f"clique_size must be >= 2, got {self.clique_size}")
        if self.star_direction not in ("in", "out"):
            raise ConfigError(f"star_direction must be 'in' or 'out', got {self.star_direction!r}")
        if self.stars and self.star_direction == "out" and self.star_size - 1 > 20:
            # confidence(center => leaf) = 1/k must stay >= 0.05
            raise ConfigError("out-stars support at most 20 leaves (star_size <= 21)")

    @property
    def min_pubs_for_lift(self) -> int:
        """Smallest per-year publication count that keeps every planted lift > 1."""
        bound = 1
        if self.noise_pairs:
            bound = max(bound, _PAD_TARGET)
        if self.stars:
            k = self.star_size - 1
            if self.star_direction == "in":
                bound = max(bound, max(_PAD_TARGET, k))
            else:
                bound = max(bound, _PAD_TARGET * k)
        return bound

    @property
    def planted_authors(self) -> int:
        return (
            self.stars * self.star_size
            + self.cliques * self.clique_size
            + self.noise_pairs * 2
        )

    @property
    def planted_pubs_per_year(self) -> int:
        k = self.star_size - 1
        if self.star_direction == "in":
            per_star = k + max(0, _PAD_TARGET - k)
        else:
            per_star = k + k * (_PAD_TARGET - 1)
        return (
            self.stars * per_star
            + self.cliques
            + self.noise_pairs * _PAD_TARGET
        )


@dataclass(frozen=True)
class _Allocation:
    stars: tuple[tuple[str, tuple[str, ...]], ...]  # (center, leaves)
    cliques: tuple[tuple[str, ...], ...]
    noise_pairs: tuple[tuple[str, str], ...]
    background: tuple[str, ...]


def _allocate(n_authors: int, profile: CorpusProfile) -> _Allocation:
    if profile.planted_authors > n_authors:
        raise ConfigError(
            f"impossible profile: {profile.planted_authors} planted authors "
            f"exceed the {n_authors}-author pool"
        )
    width = max(1, len(str(max(0, n_authors - 1))))
    pool = [f"a{i:0{width}d}" for i in range(n_authors)]
    idx = 0
    stars = []
    for _ in range(profile.stars):
        center = pool[idx]
        leaves = tuple(pool[idx + 1 : idx + profile.star_size])
        stars.append((center, leaves))
        idx += profile.star_size
    cliques = []
    for _ in range(profile.cliques):
        cliques.append(tuple(pool[idx : idx + profile.clique_size]))
        idx += profile.clique_size
    pairs = []
    for _ in range(profile.noise_pairs):
        pairs.append((pool[idx], pool[idx + 1]))
        idx += 2
    return _Allocation(tuple(stars), tuple(cliques), tuple(pairs), tuple(pool[idx:]))


def _year_author_sets(
    n_pubs: int, profile: CorpusProfile, alloc: _Allocation, rng: random.Random
) -> list[list[str]]:
    sets: list[list[str]] = []
    for center, leaves in alloc.stars:
        for leaf in leaves:
            sets.append([leaf, center])
        if profile.star_direction == "in":
            sets.extend([center] for _ in range(max(0, _PAD_TARGET - len(leaves))))
        else:
            for leaf in leaves:
                sets.extend([leaf] for _ in range(_PAD_TARGET - 1))
    for members in alloc.cliques:
        sets.append(list(members))
    for p, q in alloc.noise_pairs:
        sets.append([p, q])
        sets.extend([q] for _ in range(_PAD_TARGET - 1))
    filler = n_pubs - len(sets)
    if filler > 0 and not alloc.background:
        raise ConfigError(
            "impossible profile: filler publications needed but every author is planted"
        )
    for _ in range(filler):
        sets.append([rng.choice(alloc.background)])
    rng.shuffle(sets)
    return sets


def generate_corpus(
    n_authors: int,
    n_pubs: int,
    years: tuple[int, int],
    seed: int,
    profile: CorpusProfile = CorpusProfile(),
) -> str:
    """Generate a deterministic synthetic corpus as JSONL text.

    ``n_pubs`` is the total across all years, spread as evenly as possible
    (earlier years receive the remainder). The planted structures recur in
    every year. Guarantees hold for the default thresholds provided each
    year holds between max(22, planted) and 1000 publications.
    """
    y0, y1 = years
    if y0 > y1:
        raise ConfigError(f"invalid year range {y0}:{y1}")
    if n_authors < 0 or n_pubs < 0:
        raise ConfigError("n_authors and n_pubs must be non-negative")
    if n_pubs == 0:
        return ""
    profile.validate()
    alloc = _allocate(n_authors, profile)

    n_years = y1 - y0 + 1
    base, remainder = divmod(n_pubs, n_years)
    planted = profile.planted_pubs_per_year
    has_planted = alloc.stars or alloc.cliques or alloc.noise_pairs

    pubs: list[Publication] = []
    for offset in range(n_years):
        year = y0 + offset
        quota = base + (1 if offset < remainder else 0)
        if has_planted:
            if quota < planted:
                raise ConfigError(
                    f"impossible profile: year {year} holds {quota} publications "
                    f"but planting needs {planted}"
                )
            if quota > 1000:
                raise ConfigError(
                    f"year {year} holds {quota} publications; support 0.001 needs <= 1000 "
                    "for planted rules to clear the default threshold"
                )
            if quota <= profile.min_pubs_for_lift:
                raise ConfigError(
                    f"year {year} holds {quota} publications; planted lift > 1 "
                    f"needs > {profile.min_pubs_for_lift}"
                )
        rng = random.Random(derive_seed(seed, "corpus", year))
        author_sets = _year_author_sets(quota, profile, alloc, rng)
        width = len(str(max(1, quota - 1)))
        for k, authors in enumerate(author_sets):
            pubs.append(Publication(id=f"p{year}_{k:0{width}d}", year=year, authors=tuple(authors)))
    return write_jsonl(pubs)
