"""End-to-end smoke tests for the Python module."""

import math
import os

import pytest

import metaplan


@pytest.fixture(scope="module")
def records():
    return metaplan.load_records(os.environ["METAPLAN_DATA"])


@pytest.fixture(scope="module")
def evals(records):
    return metaplan.evaluate_records(records)


def test_records_round_trip(records):
    assert len(records) == 17
    assert records[0].id == "CRP"
    assert records[0].replication_beta == 0.086
    text = metaplan.serialize_records(records)
    again = metaplan.parse_records(text)
    assert again == records


def test_default_evaluation(evals):
    by_id = {e.id: e for e in evals}
    crp = by_id["CRP"]
    assert round(crp.cp, 2) == 1.00
    assert crp.dlogp == pytest.approx(16.0, abs=0.05)
    assert crp.lcl == pytest.approx(0.010, abs=0.0005)
    assert crp.categories == {k: "I" for k in crp.categories}
    assert crp.selected_before and crp.selected_after

    lepr = by_id["LEPR"]
    assert lepr.de == pytest.approx(0.035, abs=0.001)
    assert not lepr.selected_before and lepr.selected_after
    assert not lepr.selection_anomalous

    # inapplicable p-value drop surfaces as None
    assert by_id["PPP1R3B"].dlogp is None
    assert by_id["PPP1R3B"].categories["dlogp"] == "III"


def test_config_round_trip(records):
    cfg = metaplan.RunConfig()
    assert cfg.pi0 == 1e-6
    cfg.set("pi0", "1e-4")
    assert cfg.pi0 == 1e-4
    cfg.evidence_source = "pooled"
    assert cfg.evidence_source == "pooled"
    cfg.validate()
    with pytest.raises(ValueError):
        cfg.set("pi0", "banana")
    cfg.pi0 = 2.0
    with pytest.raises(ValueError):
        cfg.validate()
    # the loosened prior changes the evaluation
    strict = metaplan.evaluate_records(records)
    cfg = metaplan.RunConfig()
    cfg.pi0 = 1e-2
    loose = metaplan.evaluate_records(records, cfg)
    assert loose[0].lfdr_after < strict[0].lfdr_after


def test_rendering(evals):
    table = metaplan.render_rank(evals)
    lines = table.splitlines()
    assert lines[0].startswith("# metaplan ")
    assert lines[1].split("\t") == [
        "id", "cp", "dlogp", "lcl", "kl_x1000", "de", "bf", "bfdr",
    ]
    assert "CRP\t1.00*\t16.0*\t0.010*\t3570*\t0.000*\t1-1\t1-1" in lines
    assert len(lines) == 19

    classify = metaplan.render_classify(evals, format="csv",
                                        version_header=False)
    assert classify.startswith("id,cp,")
    assert "LEPR,II,II,II,II,II,II,II" in classify


def test_sweeps_and_min_n(records):
    cfg = metaplan.RunConfig()
    points = metaplan.sweep_sample_size(records, cfg, criterion="de",
                                        grid=[2000.0, 20000.0])
    assert len(points) == 34
    lepr = [p for p in points if p.id == "LEPR"]
    assert lepr[0].axis_value == 2000.0
    assert lepr[0].value < lepr[1].value  # the shift grows with the panel

    priors = metaplan.sweep_prior(records, cfg, grid=[1e-8, 1e-4])
    assert {p.category for p in priors} <= {"I", "II", "III"}

    sall1 = next(r for r in records if r.id == "SALL1")
    hit = metaplan.min_sample_size(sall1, cfg, criterion="de", target=0.001)
    assert hit.attainable
    assert hit.sample_size == pytest.approx(14331.66, abs=0.01)
    assert hit.method == "bisection"

    miss = metaplan.min_sample_size(sall1, cfg, criterion="de", target=0.5)
    assert not miss.attainable
    assert math.isnan(miss.sample_size)


def test_version():
    assert metaplan.__version__.count(".") == 2
