"""End-to-end smoke checks for the python bindings.

The heavy behavioural coverage lives in the C++ test suites; these only
verify that the binding layer round-trips data faithfully and that the
headline numbers match the frozen fixture.
"""

from pathlib import Path

import numpy as np
import pytest

import scot

DATA = Path(__file__).resolve().parents[2] / "tests" / "data" / "small_scene"


def test_polygon_construction_and_properties():
    p = scot.Polygon(
        [(0, 0), (4, 0), (4, 3), (0, 3)],
        holes=[[(1, 1), (2, 1), (2, 2), (1, 2)]],
    )
    assert p.area == pytest.approx(11.0, abs=1e-9)
    assert len(p.exterior) == 4
    assert len(p.holes) == 1
    assert p.bbox == (0.0, 0.0, 4.0, 3.0)


def test_polygon_accepts_numpy_rings():
    ring = np.array([[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]])
    assert scot.Polygon(ring).area == pytest.approx(4.0, abs=1e-9)


def test_validation_rejects_bowtie():
    with pytest.raises(scot.SelfIntersection):
        scot.Polygon([(0, 0), (2, 2), (2, 0), (0, 2)])


def test_iou_of_offset_unit_squares():
    a = scot.rect(0, 0, 1, 1)
    b = scot.rect(0.5, 0.5, 1, 1)
    assert scot.intersection_area(a, b) == pytest.approx(0.25, abs=1e-9)
    assert scot.iou(a, b) == pytest.approx(0.25 / 1.75, abs=1e-9)
    assert scot.area(b) == pytest.approx(1.0, abs=1e-9)


def test_match_frame_prefers_cardinality_over_iou():
    gt = [scot.rect(0, 0, 10, 10), scot.rect(0, 2, 10, 10)]
    props = [scot.rect(0, 0.5, 10, 10), scot.rect(0, -4.8, 10, 10)]
    result = scot.match_frame(gt, props)
    assert [(p.gt_index, p.prop_index) for p in result.pairs] == [(0, 1), (1, 0)]
    oracle = scot.brute_force_match(gt, props)
    assert result.iou_sum() == oracle.iou_sum()
    assert result.unmatched_gt == [] and result.unmatched_prop == []


def test_brute_force_rejects_large_inputs():
    polys = [scot.rect(3 * i, 0, 2, 2) for i in range(11)]
    with pytest.raises(scot.TooLarge):
        scot.brute_force_match(polys, polys)


def test_combine_arithmetic():
    assert scot.combine(0.40, 0.06, 2.0) == pytest.approx(0.1875, abs=1e-12)
    assert scot.combine(0.0, 0.0, 2.0) == 0.0


def test_mota_requires_ground_truth():
    with pytest.raises(scot.ZeroGroundTruth):
        scot.mota(scot.MatchCounts(), 0)


def test_clean_perturbation_scores_perfectly():
    scenario = scot.gen_scenario(
        scot.ScenarioSpec(
            n_initial_buildings=6, n_frames=6, construction_rate=0.7, seed=2024
        )
    )
    clean = scot.perturb(scenario.series, scot.PerturbationSpec(seed=1))
    assert clean.id_swaps == []
    scores = scot.score_aoi(scenario.series, clean.series)
    for name in ("f1", "f_track", "f_change", "f_scot", "mota"):
        assert getattr(scores, name) == 1.0, name


def test_id_swaps_become_mismatches():
    scenario = scot.gen_scenario(
        scot.ScenarioSpec(n_initial_buildings=8, n_frames=8, seed=7)
    )
    noisy = scot.perturb(
        scenario.series, scot.PerturbationSpec(id_swap_rate=0.2, seed=3)
    )
    scores = scot.score_aoi(scenario.series, noisy.series)
    assert scores.counts.mm == len(noisy.id_swaps)
    assert scores.counts.mm > 0


def test_propagate_ids_keeps_stable_ids():
    frames = [
        [scot.rect(0, 0, 4, 4), scot.rect(10, 0, 4, 4)],
        [scot.rect(0.5, 0, 4, 4), scot.rect(10, 0, 4, 4), scot.rect(20, 0, 4, 4)],
    ]
    series = scot.propagate_ids(frames)
    assert [f.id for f in series.frames[0].footprints] == ["0", "1"]
    assert [f.id for f in series.frames[1].footprints] == ["0", "1", "2"]


def test_mask_polygonize_rasterize_roundtrip():
    mask = np.zeros((8, 8), dtype=np.uint8)
    mask[2:5, 1:4] = 1
    polys = scot.polygonize_mask(mask, min_area=1.0)
    assert len(polys) == 1
    assert polys[0].area == 9.0
    back = scot.rasterize_polygons(polys, 8, 8)
    assert np.array_equal(back != 0, mask != 0)


def test_pgm_roundtrip(tmp_path):
    mask = np.zeros((5, 7), dtype=np.uint8)
    mask[1:4, 2:6] = 255
    path = tmp_path / "mask.pgm"
    scot.write_pgm(mask, path)
    assert np.array_equal(scot.read_pgm(path), mask)


def test_apply_filters_drops_small_footprints():
    frame = scot.Frame(
        "2020_01",
        [
            scot.Footprint("tiny", scot.rect(0, 0, 1, 1)),
            scot.Footprint("keep", scot.rect(5, 5, 10, 10)),
        ],
    )
    series = scot.TimeSeries("aoi", [frame])
    filtered = scot.apply_filters(series, scot.FilterPolicy(min_area=4.0))
    assert [f.id for f in filtered.frames[0].footprints] == ["keep"]


def test_series_roundtrip_through_disk(tmp_path):
    scenario = scot.gen_scenario(
        scot.ScenarioSpec(n_initial_buildings=5, n_frames=4, seed=5)
    )
    out = tmp_path / "aoi_5"
    scot.write_series(scenario.series, out)
    back = scot.load_series(out)
    assert back.aoi_id == "aoi_5"
    assert len(back.frames) == len(scenario.series.frames)
    scores = scot.score_aoi(scenario.series, back)
    assert scores.f1 == 1.0 and scores.f_track == 1.0 and scores.f_scot == 1.0


def test_fixture_scores_match_frozen_values():
    gt = scot.load_series(DATA / "gt" / "aoi_small")
    props = scot.load_series(DATA / "proposals" / "aoi_small")
    scores = scot.score_aoi(gt, props)
    assert scores.counts == scot.MatchCounts(
        tp=13, fp=0, fn=0, mm=1, tp_new=2, fp_new=1, fn_new=0
    )
    assert scores.total_gt == 13
    assert scores.f1 == pytest.approx(1.0, abs=1e-12)
    assert scores.f_track == pytest.approx(12 / 13, abs=1e-12)
    assert scores.f_change == pytest.approx(0.8, abs=1e-12)
    assert scores.f_scot == pytest.approx(0.8955223880597015, abs=1e-12)
    assert scores.mota == pytest.approx(12 / 13, abs=1e-12)


def test_dataset_loading_and_report_roundtrip(tmp_path):
    pairs = scot.load_dataset(DATA / "gt", DATA / "proposals")
    assert len(pairs) == 1
    assert pairs[0][0].aoi_id == "aoi_small"
    report = scot.score_dataset(pairs, scot.ScotConfig())
    assert report.per_aoi[0].f_scot == pytest.approx(0.8955223880597015, abs=1e-12)
    assert report.dataset.f_scot.stddev == 0.0

    path = tmp_path / "report.json"
    scot.write_report(report, path)
    back = scot.read_report(path)
    assert back.per_aoi[0].aoi_id == "aoi_small"
    assert back.per_aoi[0].f_scot == report.per_aoi[0].f_scot
    assert back.dataset.f_track.mean == report.dataset.f_track.mean
    assert back.config.beta == report.config.beta
