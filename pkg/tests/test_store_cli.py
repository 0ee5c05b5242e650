import json

import pytest

from skewcyc import cli
from skewcyc.enumeration import census
from skewcyc.store import (
    MemoryStore,
    NotComputedError,
    SchemaMismatchError,
    Store,
    StoreEntry,
    VerificationFailedOnLoadError,
    emit_table,
)


@pytest.fixture()
def store(tmp_path):
    return Store(tmp_path / "store")


class TestStore:
    def test_save_load_round_trip(self, store):
        record = census(6, store)
        store._cache.clear()
        loaded = store.load(6)
        assert loaded == record

    def test_save_is_byte_deterministic(self, store, tmp_path):
        record = census(6, store)
        first = store.path_for(6).read_bytes()
        other = Store(tmp_path / "other")
        other.save(record)
        assert other.path_for(6).read_bytes() == first

    def test_missing_census(self, store):
        with pytest.raises(NotComputedError):
            store.load(6)

    def test_tampered_images_fail_on_load(self, store):
        census(6, store)
        path = store.path_for(6)
        lines = path.read_text().splitlines()
        entry = json.loads(lines[1])
        entry["images"] = entry["images"][:1] + entry["images"][1:][::-1]
        lines[1] = json.dumps(entry, separators=(",", ":"))
        path.write_text("\n".join(lines) + "\n")
        store._cache.clear()
        with pytest.raises(VerificationFailedOnLoadError):
            store.load(6)

    def test_tampered_metadata_fails_on_load(self, store):
        census(6, store)
        path = store.path_for(6)
        lines = path.read_text().splitlines()
        entry = json.loads(lines[1])
        entry["order"] += 1
        lines[1] = json.dumps(entry, separators=(",", ":"))
        path.write_text("\n".join(lines) + "\n")
        store._cache.clear()
        with pytest.raises(VerificationFailedOnLoadError):
            store.load(6)

    def test_schema_version_mismatch(self, store):
        census(6, store)
        path = store.path_for(6)
        lines = path.read_text().splitlines()
        entry = json.loads(lines[0])
        entry["schema_version"] = 99
        lines[0] = json.dumps(entry, separators=(",", ":"))
        path.write_text("\n".join(lines) + "\n")
        store._cache.clear()
        with pytest.raises(SchemaMismatchError):
            store.load(6)

    def test_store_entry_json_round_trip(self, store):
        record = census(8, store)
        for phi, cid in zip(record.morphisms, record.class_ids):
            entry = StoreEntry.from_morphism(phi, cid)
            assert StoreEntry.from_json(entry.to_json()) == entry


class TestEmitTable:
    def test_rows(self, store):
        for n in range(2, 13):
            census(n, store)
        out = emit_table(6, 6, store)
        assert out == "n,proper,automorphisms,total,classes\n6,2,2,4,1\n"
        # prime order: header only
        assert emit_table(7, 7, store) == "n,proper,automorphisms,total,classes\n"

    def test_md_format(self, store):
        census(6, store)
        out = emit_table(6, 6, store, fmt="md")
        assert "| 6 | 2 | 2 | 4 | 1 |" in out

    def test_missing_range_raises(self, store):
        with pytest.raises(NotComputedError):
            emit_table(2, 4, store)


class TestCli:
    def test_census_table_show(self, tmp_path, capsys):
        store_dir = str(tmp_path / "s")
        assert cli.main(["census", "--max", "12", "--store", store_dir]) == 0
        capsys.readouterr()
        assert cli.main(["table", "--from", "2", "--to", "12", "--store", store_dir]) == 0
        out = capsys.readouterr().out
        assert "12,4,4,8,2" in out
        assert cli.main(["show", "--n", "6", "--store", store_dir, "--proper-only"]) == 0
        out = capsys.readouterr().out
        assert "0,3,2,5,4,1" in out and "0,1,2,3,4,5" not in out

    def test_verify_exit_codes(self, capsys):
        assert cli.main(["verify", "--n", "6", "--perm", "0,3,2,5,4,1"]) == 0
        assert cli.main(["verify", "--perm", "0,2,1,3,5,4"]) == 2
        out = capsys.readouterr().out
        assert "element 1" in out  # witness from the failing candidate

    def test_oracle(self, tmp_path, capsys):
        store_dir = str(tmp_path / "s")
        assert cli.main(["oracle", "--n", "6", "--store", store_dir]) == 0
        assert cli.main(["oracle", "--n", "11", "--store", store_dir]) == 1

    def test_families(self, tmp_path, capsys):
        store_dir = str(tmp_path / "s")
        rc = cli.main(
            ["families", "--p", "3", "--check-against-census", "--store", store_dir]
        )
        assert rc == 0
        out = capsys.readouterr().out
        assert "4 proper skew morphisms" in out and "2 equivalence classes" in out

    def test_check(self, tmp_path, capsys):
        store_dir = str(tmp_path / "s")
        assert cli.main(["census", "--max", "10", "--store", store_dir]) == 0
        assert cli.main(["check", "--max", "10", "--store", store_dir]) == 0
        out = capsys.readouterr().out
        assert "all invariants hold" in out

    def test_table_missing_store_errors(self, tmp_path, capsys):
        rc = cli.main(["table", "--from", "2", "--to", "6", "--store", str(tmp_path / "x")])
        assert rc == 1
        assert "error" in capsys.readouterr().err

    def test_env_default_store(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("SKEWCYC_STORE", str(tmp_path / "env-store"))
        assert cli.main(["census", "--max", "6"]) == 0
        assert (tmp_path / "env-store" / "census_6.jsonl").exists()

    def test_parallel_census_matches_serial(self, tmp_path, capsys):
        serial = str(tmp_path / "serial")
        parallel = str(tmp_path / "parallel")
        assert cli.main(["census", "--max", "24", "--store", serial]) == 0
        assert cli.main(["census", "--max", "24", "--jobs", "2", "--store", parallel]) == 0
        for n in range(2, 25):
            a = (tmp_path / "serial" / f"census_{n}.jsonl").read_bytes()
            b = (tmp_path / "parallel" / f"census_{n}.jsonl").read_bytes()
            assert a == b
