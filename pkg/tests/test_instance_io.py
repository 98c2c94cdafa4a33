import json

import pytest

from data.builders import fixture_payloads, write_fixtures
from data.instance_io import dump_instance, load_instance, parse_instance, serialize
from tools.errors import InstanceParseError
from tools.set_runtime import resolve_path


@pytest.mark.parametrize("stem", ["qc2", "f2c2", "twisted_c2", "unstable_K", "noninvertible_f"])
def test_bundled_files_match_builders(stem):
    with open(resolve_path(f"data/fixtures/{stem}.json"), encoding="utf-8") as fh:
        on_disk = json.load(fh)
    assert on_disk == fixture_payloads()[stem]


@pytest.mark.parametrize("stem", ["qc2_smash", "pair_groupoid2", "qxq"])
def test_builders_load_like_files(stem, load):
    built = load_instance(fixture_payloads()[stem])
    inst = load(stem)
    assert (built.H.dim, built.A.dim, built.bundle.dim, built.K.dim) == \
        (inst.H.dim, inst.A.dim, inst.bundle.dim, inst.K.dim)


def test_serialized_instance_reloads(twisted):
    payload = serialize(twisted)
    assert payload["K"] == [["1", "0"]]
    again = load_instance(payload)
    assert again.passed
    assert again.pair.f == twisted.pair.f
    assert serialize(again) == payload


def test_serialize_needs_complete_instance(load):
    with pytest.raises(ValueError):
        serialize(load("broken_eps", strict=False))


def test_write_fixtures_round_trip(tmp_path):
    paths = write_fixtures(tmp_path)
    assert len(paths) == len(fixture_payloads())
    assert parse_instance(tmp_path / "qc2.json").passed


def test_missing_keys():
    with pytest.raises(InstanceParseError, match="missing keys"):
        load_instance({"field": "Q"})
    with pytest.raises(InstanceParseError):
        load_instance([1, 2])


def test_malformed_blocks():
    payload = fixture_payloads()["qc2"]
    with pytest.raises(InstanceParseError):
        load_instance(dict(payload, A=[1]))
    with pytest.raises(InstanceParseError):
        load_instance(dict(payload, H={k: v for k, v in payload["H"].items() if k != "comult"}))
    with pytest.raises(InstanceParseError):
        load_instance(dict(payload, M="regular"))


def test_float_scalars_rejected():
    payload = fixture_payloads()["qc2"]
    with pytest.raises(InstanceParseError, match="bad scalar"):
        load_instance(dict(payload, rho=[[[1.0]], [[1.0]]]))


def test_unreadable_files(tmp_path):
    with pytest.raises(InstanceParseError, match="cannot read"):
        parse_instance(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(InstanceParseError, match="invalid JSON"):
        parse_instance(bad)


def test_dump_creates_folders(tmp_path):
    path = dump_instance(fixture_payloads()["qc2"], tmp_path / "nested" / "qc2.json")
    assert path.exists()
    assert parse_instance(path).name == "qc2"
