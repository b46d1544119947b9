"""On-disk cache of graded bases, keyed by (k, space name, cutoff, engine version)."""

from __future__ import annotations

import fcntl
import json
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path

from . import ENGINE_VERSION
from .graded_linalg import GradedBasis

ENV_VAR = "PFVA_CACHE_DIR"


def default_cache_dir() -> Path | None:
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None


class BasisCache:
    """Directory of JSON files, one per (name, k, cutoff).

    A file written by another engine version, or one that fails to parse, is
    treated as a miss and overwritten on the next put.
    """

    def __init__(self, directory: str | os.PathLike, engine_version: str = ENGINE_VERSION):
        self.directory = Path(directory)
        self.engine_version = engine_version
        self.hits = 0
        self.misses = 0

    def path(self, name: str, k: int, cutoff: int) -> Path:
        return self.directory / f"{name}-k{k}-c{cutoff}.json"

    @contextmanager
    def _lock(self, shared: bool):
        self.directory.mkdir(parents=True, exist_ok=True)
        with open(self.directory / ".lock", "a") as fh:
            fcntl.flock(fh, fcntl.LOCK_SH if shared else fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def get(self, name: str, k: int, cutoff: int) -> GradedBasis | None:
        path = self.path(name, k, cutoff)
        if not path.exists():
            self.misses += 1
            return None
        with self._lock(shared=True):
            try:
                data = json.loads(path.read_text())
                if data.get("engine_version") != self.engine_version:
                    raise ValueError("engine version mismatch")
                if (data.get("name"), data.get("k"), data.get("cutoff")) != (name, k, cutoff):
                    raise ValueError("key mismatch")
                basis = GradedBasis.from_json(data["basis"])
            except (OSError, ValueError, KeyError, TypeError):
                self.misses += 1
                return None
        self.hits += 1
        return basis

    def put(self, name: str, k: int, cutoff: int, basis: GradedBasis) -> None:
        payload = {
            "engine_version": self.engine_version,
            "name": name,
            "k": k,
            "cutoff": cutoff,
            "basis": basis.to_json(),
        }
        text = json.dumps(payload, sort_keys=True)
        with self._lock(shared=False):
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
            try:
                with os.fdopen(fd, "w") as fh:
                    fh.write(text)
                os.replace(tmp, self.path(name, k, cutoff))
            except BaseException:
                Path(tmp).unlink(missing_ok=True)
                raise
