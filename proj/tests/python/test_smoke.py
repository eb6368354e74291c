# SPDX-License-Identifier: Apache-2.0
import math

import pytest

import irssim


def test_geometry():
    layout = irssim.IrsLayout()
    assert layout.unit_count() == 8192
    p = irssim.unit_position(layout, 65)
    assert (p.x, p.y, p.z) == (0.0, 0.005, 0.0)
    rus = irssim.place_rus(layout, 5)
    assert len(rus) == 5
    assert all(len(r.member_indices) == 16 for r in rus)
    with pytest.raises(IndexError):
        irssim.unit_position(layout, 0)


def test_codebook_and_delay():
    cb = irssim.build_codebook(4, 4)
    assert len(cb) == 16
    assert all(abs(v - 1) < 1e-15 for v in cb.codewords[0])

    rf = irssim.RfParams()
    f = irssim.subband_frequencies(rf)
    assert len(f) == 128
    t0 = 40e-9
    h = [c.conjugate() for c in irssim.steering_vector(f, t0)]
    grid = irssim.DelayGrid.defaults_for(rf)
    assert abs(irssim.estimate_delay(h, f, grid) - t0) < 0.05e-9


def test_trilaterate():
    anchors = [r.center for r in irssim.place_rus(irssim.IrsLayout(), 5)]
    truth = irssim.Point3(5, 3, 0)
    obs = [irssim.RangeObservation(a, irssim.distance(a, truth)) for a in anchors]
    est = irssim.trilaterate(obs)
    assert irssim.position_error(est.point, truth) < 1e-6
    with pytest.raises(ValueError):
        irssim.trilaterate(obs[:2])


def test_beam():
    g = [complex(0, 1), complex(2, 0)]
    h = [complex(1, 0), complex(0, 1)]
    theta = irssim.optimal_theta(g, h)
    snr = irssim.received_snr(g, h, theta, 1.0)
    assert snr == pytest.approx(9.0)


def test_config_and_sweep():
    cfg = irssim.parse_config('{"sigma_e": 0.0}')
    assert cfg.sigma_e == 0.0
    with pytest.raises(ValueError, match="sigma_e"):
        irssim.parse_config('{"sigma_e": 1.5}')

    trial = irssim.run_acquisition(cfg)
    assert not trial.acquisition_failed
    assert trial.position_error < 0.1
    assert trial.snr_proposed_db > trial.snr_upper_db - 1.0

    sweep = irssim.SweepSpec()
    sweep.start, sweep.stop, sweep.step = 2.0, 3.0, 1.0
    sweep.sigma_e = [0.0, 0.1]
    rows = irssim.run_sweep(cfg, sweep, 2, 1)
    assert len(rows) == 4
    text = irssim.results_csv(rows)
    assert text.splitlines()[0].startswith("ue_x,ue_y")
    assert len(text.splitlines()) == 5
    assert math.isfinite(irssim.aggregate_gain(rows))
    assert irssim.results_csv(irssim.run_sweep(cfg, sweep, 2, 3)) == text
    assert "<svg" in irssim.render_plot(rows, "snr")
