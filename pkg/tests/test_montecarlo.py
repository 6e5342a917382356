"""Tests for the seeded Monte Carlo module."""

import json
import math

import pytest

from chancelab import montecarlo as mc

SEED = 0x5EED


def test_stream_determinism():
    a = mc.RngStream(SEED, 3).generator().random(16)
    b = mc.RngStream(SEED, 3).generator().random(16)
    assert (a == b).all()
    c = mc.RngStream(SEED, 4).generator().random(16)
    assert (a != c).any()


def test_substreams_distinct():
    base = mc.RngStream(SEED, 1)
    ids = {base.substream(i).stream_id for i in range(100)}
    assert len(ids) == 100
    assert base.substream(0).master_seed == SEED


def test_sim_report_json():
    rep = mc.SimReport("demo", 10, 0.5, 0.1, analytic_target=0.4, seed=7)
    parsed = json.loads(rep.to_json())
    assert set(parsed) == {"name", "seed", "n", "estimate", "se", "target", "z"}
    assert parsed["z"] == pytest.approx((0.5 - 0.4) / 0.1)
    with pytest.raises(ValueError):
        mc.SimReport("bad", 1, 0.0, -1.0)


def test_buffon_needle():
    rep = mc.buffon_needle(0.5, 2.0, 200_000, mc.RngStream(SEED, 1))
    assert rep.analytic_target == pytest.approx(1.0 / math.pi)
    assert abs(rep.z_score) < 4.0
    assert rep.extras["pi_estimate"] == pytest.approx(math.pi, abs=0.05)
    # same seed, same report
    again = mc.buffon_needle(0.5, 2.0, 200_000, mc.RngStream(SEED, 1))
    assert again.estimate == rep.estimate


def test_buffon_needle_geometry_guard():
    with pytest.raises(ValueError):
        mc.buffon_needle(1.0, 2.0, 10, mc.RngStream(SEED))
    with pytest.raises(ValueError):
        mc.buffon_needle(0.5, 2.0, 0, mc.RngStream(SEED))


def test_petersburg_single_game():
    rep = mc.petersburg(1, mc.RngStream(SEED, 9))
    assert rep.estimate == 2.0 ** (round(math.log2(rep.estimate)))
    assert rep.extras["capped_games"] == 0


def test_petersburg_batch():
    rep = mc.petersburg(2048, mc.RngStream(SEED, 5))
    assert rep.replications == 2048
    assert rep.estimate > 0.0
    assert rep.extras["max_tosses"] <= mc.PETERSBURG_TOSS_CAP


def test_neglect_threshold():
    assert mc.neglect_threshold(1e-4) == pytest.approx(13.2877, abs=1e-3)
    assert mc.neglect_threshold(0.5) == 1.0
    assert mc.neglect_threshold(1.0 / 1024.0) == pytest.approx(10.0)
    with pytest.raises(ValueError):
        mc.neglect_threshold(0.0)


def test_bertrand_models():
    for i, (model, target) in enumerate(sorted(mc.BERTRAND_TARGETS.items())):
        rep = mc.bertrand_chord(model, 100_000, mc.RngStream(SEED, 10 + i))
        assert rep.analytic_target == target
        assert abs(rep.z_score) < 4.0
    with pytest.raises(ValueError):
        mc.bertrand_chord("diagonal", 10, mc.RngStream(SEED))


def test_quincunx():
    hist, tv = mc.quincunx(20, 50_000, mc.RngStream(SEED, 6))
    assert hist.sum() == 50_000
    assert len(hist) == 21
    assert tv < 0.02
    small_hist, _ = mc.quincunx(1, 10_000, mc.RngStream(SEED, 6))
    assert small_hist[0] / 10_000 == pytest.approx(0.5, abs=0.03)


def test_encounter_mc():
    rep = mc.encounter_mc(60.0, 20.0, 200_000, mc.RngStream(SEED, 7))
    assert rep.analytic_target == pytest.approx(5.0 / 9.0)
    assert abs(rep.z_score) < 4.0
    with pytest.raises(ValueError):
        mc.encounter_mc(60.0, 61.0, 10, mc.RngStream(SEED))


def test_frequency_run():
    run = mc.frequency_run(0.5, 10_000, [10, 100, 10_000], mc.RngStream(SEED, 8))
    assert [n for n, _ in run] == [10, 100, 10_000]
    n, freq = run[-1]
    assert abs(freq - 0.5) < 3.0 * math.sqrt(0.25 / n)
    zeros = mc.frequency_run(0.0, 100, [50, 100], mc.RngStream(SEED))
    assert all(f == 0.0 for _, f in zeros)
    ones = mc.frequency_run(1.0, 100, [50, 100], mc.RngStream(SEED))
    assert all(f == 1.0 for _, f in ones)


def test_frequency_run_validation():
    with pytest.raises(ValueError):
        mc.frequency_run(0.5, 100, [50, 40], mc.RngStream(SEED))
    with pytest.raises(ValueError):
        mc.frequency_run(0.5, 100, [200], mc.RngStream(SEED))
    with pytest.raises(ValueError):
        mc.frequency_run(1.5, 100, [50], mc.RngStream(SEED))
