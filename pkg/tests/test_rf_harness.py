"""rf tables, fits and the lower probe"""

import json
import math

import pandas as pd
import pytest

from arithmetic.quadratic import find_small_prime_not_dividing
from core.d_functions import HallD
from core.errors import PreconditionError
from core.specs import CyclicCenter
from validation.rf_harness import (TABLE_LABEL, ExperimentConfig, chebotarev_fit, fastgrowth_spec,
                                   fit_power_bound, fit_table, laurent_fit, rf_lower_probe,
                                   rf_upper_table, rows_to_json, smallest_non_divisors,
                                   write_outputs)


@pytest.fixture
def integers_config():
    return ExperimentConfig(group="integers", max_n=4, witness_family="cyclic")


# ==================== CONFIG ====================

def test_config_validation(gint_params):
    with pytest.raises(PreconditionError):
        ExperimentConfig(group="bogus")
    with pytest.raises(PreconditionError):
        ExperimentConfig(group="integers", witness_family="lamplighter")
    with pytest.raises(PreconditionError):
        ExperimentConfig(group="gint", witness_family="gint")
    with pytest.raises(PreconditionError):
        ExperimentConfig(max_n=10 ** 6)
    with pytest.raises(PreconditionError):
        ExperimentConfig(max_n=-1)
    ExperimentConfig(group="gint", witness_family="gint", params=gint_params)


def test_config_round_trip_and_hash(gint_params, tmp_path):
    config = ExperimentConfig(group="gint", max_n=2, witness_family="gint", params=gint_params, seed=7)
    path = tmp_path / "experiment.json"
    path.write_text(json.dumps(config.to_config()))
    loaded = ExperimentConfig.from_file(str(path))
    assert loaded == config
    assert loaded.config_hash() == config.config_hash()
    assert len(config.config_hash()) == 16
    assert ExperimentConfig(seed=8).config_hash() != ExperimentConfig(seed=9).config_hash()


# ==================== TABLES ====================

def test_integers_table(integers_config):
    rows = rf_upper_table(integers_config)
    assert [row.n for row in rows] == [1, 2, 3, 4]
    assert [row.quotient_order for row in rows] == [2, 3, 3, 3]
    assert [row.worst_element for row in rows] == ["t", "t^2", "t^2", "t^4"]
    assert all(row.label == TABLE_LABEL for row in rows)


def test_lamplighter_table_is_monotone():
    rows = rf_upper_table(ExperimentConfig(max_n=3))
    orders = [row.quotient_order for row in rows]
    assert [row.n for row in rows] == [1, 2, 3]
    assert orders == sorted(orders)
    assert rows[0].quotient_order == 7
    assert rows[0].worst_element == "a_0"


@pytest.mark.slow
def test_lamplighter_orders_stay_under_quadratic_fit():
    rows = rf_upper_table(ExperimentConfig(max_n=8))
    assert [row.n for row in rows] == list(range(1, 9))
    fit = fit_table(rows[:6])
    for row in rows[6:]:
        assert row.quotient_order <= fit.constant * row.n ** 2, row.worst_element


def test_gint_table_rows_verify(gint_params):
    rows = rf_upper_table(ExperimentConfig(group="gint", max_n=2, witness_family="gint", params=gint_params))
    assert len(rows) == 2
    assert rows[0].quotient_order == 7


def test_empty_table():
    assert rf_upper_table(ExperimentConfig(max_n=0)) == []


def test_outputs(integers_config, tmp_path):
    rows = rf_upper_table(integers_config)
    csv_path = tmp_path / "out" / "table.csv"
    json_path = tmp_path / "out" / "table.json"
    write_outputs(rows, integers_config, "0.1.0", csv_path=str(csv_path), json_path=str(json_path))

    frame = pd.read_csv(csv_path)
    assert list(frame.columns) == ["n", "worst_element", "witness_kind", "order"]
    assert frame["order"].tolist() == [2, 3, 3, 3]

    payload = json.loads(json_path.read_text())
    assert payload["label"] == TABLE_LABEL
    assert payload["config_hash"] == integers_config.config_hash()
    assert payload == json.loads(rows_to_json(rows, integers_config, "0.1.0"))


# ==================== FITS ====================

def test_fit_power_bound():
    fit = fit_power_bound([1, 2, 4], [2, 8, 32], 2.0)
    assert fit.constant == pytest.approx(2.0)
    assert fit.slope == pytest.approx(2.0)
    assert fit.intercept == pytest.approx(math.log(2))
    with pytest.raises(PreconditionError):
        fit_power_bound([], [], 1.0)


def test_fit_table(integers_config):
    fit = fit_table(rf_upper_table(integers_config))
    assert fit.constant == pytest.approx(2.0)
    assert fit.samples == 4


def test_smallest_non_divisors():
    assert smallest_non_divisors(10).tolist() == [3, 2, 3, 2, 5, 2, 3, 2, 3]


def test_chebotarev_fit():
    fit = chebotarev_fit(1000)
    assert fit.constant == pytest.approx(3 / math.log(2))
    assert fit.samples == 999


@pytest.mark.slow
def test_chebotarev_fit_to_a_million(rng):
    fit = chebotarev_fit(10 ** 6)
    assert fit.samples == 10 ** 6 - 1
    assert fit.constant == pytest.approx(3 / math.log(2))
    ps = smallest_non_divisors(10 ** 6)
    for x in rng.integers(2, 10 ** 6 + 1, size=300):
        x = int(x)
        assert find_small_prime_not_dividing(x) == ps[x - 2]
        assert ps[x - 2] <= fit.constant * math.log(x)


def test_laurent_fit():
    fit = laurent_fit(count=30, seed=1, max_n=12)
    assert 0 < fit.samples <= 30
    assert fit.constant > 0


@pytest.mark.slow
def test_laurent_fit_on_five_hundred_instances():
    fit = laurent_fit(count=500, seed=0, max_n=40)
    assert fit.samples == 500
    assert fit.constant > 0
    assert fit.slope is not None


# ==================== LOWER PROBE ====================

def test_lower_probe_identity_growth():
    report = rf_lower_probe(fastgrowth_spec("identity"), 3)
    assert report.L == 6
    assert report.separable
    assert [w.q for w in report.quotients] == [4, 5, 7]
    assert [w.t_order for w in report.quotients] == [81, 243, 2187]
    assert report.smallest.q == 4
    assert report.to_record()["smallest"]["t_order"] == 81


def test_lower_probe_small_n():
    report = rf_lower_probe(fastgrowth_spec("identity"), 1)
    assert report.L == 1
    assert report.smallest.q == 2
    assert report.smallest.t_order == 9


def test_lower_probe_trivial_power():
    report = rf_lower_probe(fastgrowth_spec("identity", modulus=6), 3)
    assert not report.separable
    assert report.quotients == []
    assert report.smallest is None


def test_lower_probe_preconditions():
    with pytest.raises(PreconditionError):
        rf_lower_probe(CyclicCenter(HallD()), 3)
    with pytest.raises(PreconditionError):
        rf_lower_probe(fastgrowth_spec(), 0)
