import os
from pathlib import Path
from typing import Optional, Union

import simplejson

from modular_pi1.supersingular.ssenum import SupersingularCensus, census_from_dict, census_to_dict
from modular_pi1.utils.flexible_logger import Logger


def canonical_json(data, indent: Optional[int] = 2) -> str:
    """Sorted keys, fixed separators; parsing and re-dumping gives the same text."""
    separators = (",", ": ") if indent is not None else (",", ":")
    return simplejson.dumps(data, sort_keys=True, indent=indent, separators=separators, ensure_ascii=False)


class CensusCache:
    """
    On-disk cache of supersingular censuses, one JSON file per prime.

    The directory is created lazily on the first store. Every file records the
    format version it was written with; files with another version, or that
    fail to parse, are treated as absent and recomputed.
    """

    def __init__(
        self,
        cache_dir: Union[str, Path],
        format_version: int = 1,
        log_level: Optional[str] = None,
    ):
        """
        :param cache_dir: Directory holding census_<p>.json files.
        :param format_version: Version stamped into (and required from) every file.
        :param log_level: Level for the cache logger, None to take it from settings.
        """
        self.cache_dir = Path(cache_dir)
        self.format_version = format_version
        self.logger = Logger(name="census_cache", log_level=log_level)

    def census_path(self, p: int) -> Path:
        return self.cache_dir / f"census_{p}.json"

    def _create_directories(self):
        os.makedirs(self.cache_dir, exist_ok=True)

    def load(self, p: int) -> Optional[SupersingularCensus]:
        """Cached census for p, or None when there is no usable entry."""
        path = self.census_path(p)
        if not path.exists():
            self.logger.debug(f"cache miss for p={p}")
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                payload = simplejson.load(f)
            if payload.get("format_version") != self.format_version:
                self.logger.debug(f"cache entry for p={p} has another format version, recomputing")
                return None
            cached = census_from_dict(payload["census"])
        except (OSError, ValueError, KeyError, TypeError) as e:
            self.logger.warning(f"ignoring unreadable cache entry {path}: {e}")
            return None
        if cached.p != p:
            self.logger.warning(f"cache entry {path} holds p={cached.p}, recomputing")
            return None
        self.logger.debug(f"cache hit for p={p}")
        return cached

    def store(self, census: SupersingularCensus) -> Path:
        self._create_directories()
        path = self.census_path(census.p)
        payload = {"format_version": self.format_version, "census": census_to_dict(census)}
        tmp = path.with_suffix(".json.tmp")
        with open(tmp, "w", encoding="utf-8") as f:
            f.write(canonical_json(payload))
        os.replace(tmp, path)
        return path

    def get_or_compute(self, p: int, compute) -> SupersingularCensus:
        cached = self.load(p)
        if cached is not None:
            return cached
        fresh = compute(p)
        try:
            self.store(fresh)
        except OSError as e:
            self.logger.error(f"could not write cache entry for p={p}: {e}")
        return fresh
