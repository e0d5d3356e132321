"""SQLite persistence of rf tables"""

import pytest

from core.errors import CertificateError
from validation.rf_harness import ExperimentConfig, rf_upper_table
from validation.results_store import ResultsStore, compute_run_id, generate_report


@pytest.fixture
def store(tmp_path):
    store = ResultsStore(str(tmp_path / "results.db"))
    yield store
    store.close()


@pytest.fixture
def lamplighter_run():
    config = ExperimentConfig(max_n=2)
    return config, rf_upper_table(config)


def test_save_and_load_round_trip(store, lamplighter_run):
    config, rows = lamplighter_run
    run_id = store.save_run(config, rows, "0.1.0")
    loaded_config, loaded_rows = store.load_run(run_id)
    assert loaded_config == config
    assert loaded_rows == rows


def test_run_ids_are_deterministic(store, lamplighter_run):
    config, rows = lamplighter_run
    first = store.save_run(config, rows, "0.1.0")
    second = store.save_run(config, rows, "0.1.0")
    assert first == second == compute_run_id(config, "0.1.0", rows)
    assert [run["run_id"] for run in store.list_runs()] == [first]
    assert compute_run_id(config, "0.2.0", rows) != first


@pytest.mark.parametrize("group, family, max_n", [("integers", "cyclic", 5), ("lamplighter", "lamplighter", 3)])
def test_recomputed_runs_share_an_id(group, family, max_n):
    config = ExperimentConfig(group=group, max_n=max_n, witness_family=family, seed=11)
    first = compute_run_id(config, "0.1.0", rf_upper_table(config))
    reloaded = ExperimentConfig.from_config(config.to_config())
    assert compute_run_id(reloaded, "0.1.0", rf_upper_table(reloaded)) == first
    assert compute_run_id(ExperimentConfig(group=group, max_n=max_n, witness_family=family, seed=12),
                          "0.1.0", rf_upper_table(config)) != first


def test_tampered_order_is_rejected(store, lamplighter_run):
    config, rows = lamplighter_run
    run_id = store.save_run(config, rows, "0.1.0")
    store.conn.execute("UPDATE table_rows SET quotient_order = '22' WHERE n = 1")
    store.conn.commit()
    with pytest.raises(CertificateError):
        store.load_run(run_id)


def test_tampered_element_is_rejected(store, lamplighter_run):
    config, rows = lamplighter_run
    run_id = store.save_run(config, rows, "0.1.0")
    # t^2 dies in Z/2
    store.conn.execute("UPDATE table_rows SET worst_element = 't^2', "
                       "witness = '{\"kind\": \"cyclic\", \"p\": 2, \"order\": 2}', "
                       "quotient_order = '2' WHERE n = 1")
    store.conn.commit()
    with pytest.raises(CertificateError):
        store.load_run(run_id)


def test_unknown_run(store):
    with pytest.raises(CertificateError):
        store.load_run("missing")


def test_gint_rows_survive_storage(store, gint_params):
    config = ExperimentConfig(group="gint", max_n=2, witness_family="gint", params=gint_params)
    rows = rf_upper_table(config)
    _, loaded = store.load_run(store.save_run(config, rows, "0.1.0"))
    assert loaded == rows


def test_report(lamplighter_run):
    config, rows = lamplighter_run
    report = generate_report(config, rows)
    assert "RF TABLE" in report
    assert config.config_hash() in report
    assert "(no rows)" in generate_report(config, [])
