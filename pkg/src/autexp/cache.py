"""On-disk cache of order profiles: ``<root>/<schema-version>/<spec-hash>.json``.

Only profiles are stored. Witnesses are cheap to recompute and depend on the
search code, so they never go through here.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .groups.handle import build_group
from .groups.invariants import OrderProfile, order_profile
from .groups.spec import GroupSpec

CACHE_SCHEMA = "v1"


def spec_hash(spec: GroupSpec) -> str:
    key = f"{spec.text()}|{__version__}"
    return hashlib.sha256(key.encode()).hexdigest()[:24]


class ProfileCache:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.hits = 0
        self.misses = 0

    def path_for(self, spec: GroupSpec) -> Path:
        return self.root / CACHE_SCHEMA / f"{spec_hash(spec)}.json"

    def get(self, spec: GroupSpec) -> OrderProfile | None:
        path = self.path_for(spec)
        if not path.exists():
            return None
        data = json.loads(path.read_text())
        if data.get("spec") != spec.text() or data.get("version") != __version__:
            return None
        return OrderProfile.from_dict(data["profile"])

    def put(self, spec: GroupSpec, profile: OrderProfile) -> Path:
        path = self.path_for(spec)
        path.parent.mkdir(parents=True, exist_ok=True)
        doc = {"spec": spec.text(), "version": __version__, "profile": profile.to_dict()}
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh, sort_keys=True, indent=1)
        os.replace(tmp, path)
        return path

    def profile(self, spec: GroupSpec, cap: int | None = None) -> OrderProfile:
        cached = self.get(spec)
        if cached is not None:
            self.hits += 1
            return cached
        self.misses += 1
        prof = order_profile(build_group(spec, cap))
        self.put(spec, prof)
        return prof


def profile_of(spec: GroupSpec, cache: ProfileCache | None = None, cap: int | None = None) -> OrderProfile:
    if cache is None:
        return order_profile(build_group(spec, cap))
    return cache.profile(spec, cap)
