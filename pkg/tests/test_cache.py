from __future__ import annotations

import json

from autexp import __version__
from autexp.cache import CACHE_SCHEMA, ProfileCache, profile_of, spec_hash
from autexp.grammar import parse_group_spec
from autexp.groups import build_group, order_profile


def test_layout_and_hits(tmp_path):
    cache = ProfileCache(tmp_path)
    spec = parse_group_spec("PSL2(7)")
    first = cache.profile(spec)
    path = tmp_path / CACHE_SCHEMA / f"{spec_hash(spec)}.json"
    assert path.exists()
    data = json.loads(path.read_text())
    assert data["spec"] == "PSL2(7)" and data["version"] == __version__
    again = cache.profile(spec)
    assert first == again == order_profile(build_group(spec))
    assert (cache.hits, cache.misses) == (1, 1)


def test_equivalent_texts_share_an_entry(tmp_path):
    cache = ProfileCache(tmp_path)
    cache.profile(parse_group_spec("SL2(8)"))
    cache.profile(parse_group_spec("SL2( 2^3 )"))
    assert cache.hits == 1


def test_stale_entries_are_ignored(tmp_path):
    cache = ProfileCache(tmp_path)
    spec = parse_group_spec("C12")
    cache.profile(spec)
    path = cache.path_for(spec)
    data = json.loads(path.read_text())
    data["version"] = "0.0.0"
    path.write_text(json.dumps(data))
    assert cache.get(spec) is None


def test_profile_of_without_cache():
    assert profile_of(parse_group_spec("Q8")).exponent == 4


def test_profile_round_trip():
    prof = order_profile(build_group(parse_group_spec("GL2(3)")))
    assert type(prof).from_dict(json.loads(json.dumps(prof.to_dict()))) == prof
