import pytest

from riskpipe import demo
from riskpipe.bowtie import write_xml
from riskpipe.errors import EngineError
from riskpipe.heatmap import dump_risk
from riskpipe.service.store import ModelStore, load, persist
from riskpipe.transform import result_to_bytes, to_dag


def _populated():
    store = ModelStore()
    store.put("risks", "gateway", dump_risk(demo.gateway_risk()), None)
    store.put("bowties", "gateway", write_xml(demo.gateway_bowtie()), None)
    store.put(
        "dags", "gateway-deterministic",
        result_to_bytes(to_dag(demo.gateway_bowtie())), None,
    )
    return store


def _dir_bytes(root):
    return {
        str(p.relative_to(root)): p.read_bytes()
        for p in sorted(root.rglob("*")) if p.is_file()
    }


class TestRevisions:
    def test_create_then_update(self):
        store = ModelStore()
        first = store.put("risks", "r", b"v1", None)
        assert first.revision == 1
        second = store.put("risks", "r", b"v2", 1)
        assert second.revision == 2

    def test_create_conflicts_when_exists(self):
        store = ModelStore()
        store.put("risks", "r", b"v1", None)
        with pytest.raises(EngineError) as err:
            store.put("risks", "r", b"v2", None)
        assert err.value.code == "ALREADY_EXISTS"

    def test_stale_writer_conflicts(self):
        store = ModelStore()
        store.put("risks", "r", b"v1", None)
        store.put("risks", "r", b"v2", 1)
        with pytest.raises(EngineError) as err:
            store.put("risks", "r", b"v2-from-stale-reader", 1)
        assert err.value.code == "REVISION_CONFLICT"

    def test_update_of_missing_entity_conflicts(self):
        with pytest.raises(EngineError):
            ModelStore().put("risks", "ghost", b"x", 3)

    def test_unchanged_upsert_keeps_revision(self):
        store = ModelStore()
        a = store.upsert_unchanged_aware("dags", "d", b"same")
        b = store.upsert_unchanged_aware("dags", "d", b"same")
        c = store.upsert_unchanged_aware("dags", "d", b"different")
        assert (a.revision, b.revision, c.revision) == (1, 1, 2)


class TestPersistence:
    def test_empty_store_roundtrip(self, tmp_path):
        persist(ModelStore(), tmp_path)
        assert load(tmp_path).snapshot() == {"risks": {}, "bowties": {}, "dags": {}}

    def test_populated_roundtrip_preserves_revisions(self, tmp_path):
        store = _populated()
        store.put("risks", "gateway", dump_risk(demo.gateway_risk()), 1)
        persist(store, tmp_path)
        loaded = load(tmp_path)
        assert loaded.snapshot() == store.snapshot()
        assert loaded.get("risks", "gateway").revision == 2
        assert loaded.get("bowties", "gateway").data == store.get(
            "bowties", "gateway"
        ).data

    def test_byte_identical_repersist(self, tmp_path):
        store = _populated()
        first_dir = tmp_path / "a"
        second_dir = tmp_path / "b"
        persist(store, first_dir)
        persist(load(first_dir), second_dir)
        assert _dir_bytes(first_dir) == _dir_bytes(second_dir)

    def test_index_referencing_missing_file(self, tmp_path):
        persist(_populated(), tmp_path)
        (tmp_path / "bowties" / "gateway.xml").unlink()
        with pytest.raises(EngineError) as err:
            load(tmp_path)
        assert err.value.code == "NOT_FOUND"
        assert "gateway" in err.value.message

    def test_corrupt_entity_names_itself(self, tmp_path):
        persist(_populated(), tmp_path)
        (tmp_path / "risks" / "gateway.json").write_bytes(b"{not json")
        with pytest.raises(EngineError) as err:
            load(tmp_path)
        assert "gateway" in err.value.message
