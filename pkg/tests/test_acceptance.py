"""End-to-end acceptance suite.

Each test covers one acceptance criterion and reports a single [PASS] or
[FAIL] line through the terminal reporter, so the lines show up in plain
pytest output without -s.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager

import numpy as np
import pytest

from preftiles import (
    FLAVORS,
    Importance,
    TilePoint,
    bottleneck_domain,
    canonical_importance,
    canonical_score_value,
    easiest_domain,
    ev_score,
    evr_score,
    expected_value,
    flavor_tile,
    grid_points,
    most_difficult_domain,
    preponderant_domain,
    ranking_score,
    summarize,
    tile_point_from_importance,
    two_class_satisfaction,
    weights_for_ev_score,
    weights_for_evr_score,
    weights_for_ranking_score,
)
from preftiles.config import parse_config
from preftiles.report import cmd_analyze, cmd_tiles

from conftest import (
    D1,
    D2,
    D3,
    demo_domain_set,
    random_domain_set,
    random_importance,
    random_space,
    random_two_class_set,
    random_variable,
    selector_grid,
    two_class_perf,
)

CELLS = ("tn", "fp", "fn", "tp")

TRIO_DOC = {
    "domains": [
        {"id": f"d{k + 1}", "confusion": dict(zip(CELLS, cells))}
        for k, cells in enumerate((D1, D2, D3))
    ],
    "grid": {"resolution": 16},
}


@pytest.fixture
def announce(request):
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    def _announce(text: str) -> None:
        if reporter is not None:
            reporter.write_line(text)
        else:
            print(text)

    return _announce


@contextmanager
def criterion(announce, name: str):
    try:
        yield
    except BaseException:
        announce(f"[FAIL] {name}")
        raise
    announce(f"[PASS] {name}")


def _timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


def test_criterion_1_equal_weight_mixture(announce):
    with criterion(
        announce,
        "criterion 1: equal-weight mixture of the three example domains "
        "matches the componentwise mean within 1e-12 in under 1 ms",
    ):
        trio = demo_domain_set()
        expected = np.array([(D1[k] + D2[k] + D3[k]) / 3.0 for k in range(4)])
        got = summarize(trio).masses
        assert np.max(np.abs(got - expected)) <= 1e-12
        assert np.max(np.abs(expected - np.array([0.37, 0.13, 0.07, 0.43]))) <= 1e-12
        best = min(_timed(lambda: summarize(trio)) for _ in range(5))
        assert best < 1e-3


@pytest.fixture(scope="module")
def random_suite():
    """1000 frozen random instances shared by criteria 2 and 3."""
    rng = np.random.default_rng(20250814)
    suite = []
    for _ in range(1000):
        space = random_space(rng)
        suite.append(
            {
                "domains": random_domain_set(rng, space),
                "variable": random_variable(rng, space),
                "denominator": random_variable(rng, space, 0.1, 2.0),
                "importance": random_importance(rng, space),
                "satisfaction": random_variable(rng, space, 0.0, 1.0),
            }
        )
    return suite


def test_criterion_2_weighted_mean_identity(announce, random_suite):
    with criterion(
        announce,
        "criterion 2: score of the mixture equals the weighted mean of "
        "per-domain scores within 1e-10 on 1000 random instances in under 5 s",
    ):
        start = time.perf_counter()
        for case in random_suite:
            domains = case["domains"]
            summary = summarize(domains)

            plain = ev_score(case["variable"])
            weights = weights_for_ev_score(domains)
            mean = sum(
                weights[e.id] * plain.evaluate(e.performance) for e in domains
            )
            assert abs(plain.evaluate(summary) - mean) <= 1e-10

            ratio = evr_score(case["variable"], case["denominator"])
            weights = weights_for_evr_score(domains, case["denominator"])
            mean = sum(
                weights[e.id] * ratio.evaluate(e.performance) for e in domains
            )
            assert abs(ratio.evaluate(summary) - mean) <= 1e-10

            rank = ranking_score(case["importance"], case["satisfaction"])
            weights = weights_for_ranking_score(domains, case["importance"])
            mean = sum(
                weights[e.id] * rank.evaluate(e.performance) for e in domains
            )
            assert abs(rank.evaluate(summary) - mean) <= 1e-10
        assert time.perf_counter() - start < 5.0


def test_criterion_3_dual_closed_forms(announce, random_suite):
    with criterion(
        announce,
        "criterion 3: both closed forms of the ratio-score weights agree "
        "within 1e-12 on the same random suite",
    ):
        for case in random_suite:
            domains = case["domains"]
            denominator = case["denominator"]
            direct = weights_for_evr_score(domains, denominator).values
            plain = weights_for_ev_score(domains).values
            summary_den = expected_value(summarize(domains), denominator)
            per_domain = np.array(
                [expected_value(e.performance, denominator) for e in domains]
            )
            alternate = plain * per_domain / summary_den
            assert np.max(np.abs(direct - alternate)) <= 1e-12


def test_criterion_4_named_score_points(announce):
    with criterion(
        announce,
        "criterion 4: the six classical score points match their textbook "
        "formulas within 1e-12 on 1000 random two-class performances",
    ):
        rng = np.random.default_rng(41001)
        for _ in range(1000):
            perf = two_class_perf(*(rng.random(4) + 0.02))
            tn, fp, fn, tp = perf.masses.tolist()
            classical = {
                "accuracy": tn + tp,
                "TNR": tn / (tn + fp),
                "TPR": tp / (fn + tp),
                "NPV": tn / (tn + fn),
                "PPV": tp / (fp + tp),
                "F1": 2 * tp / (2 * tp + fp + fn),
            }
            points = {
                "accuracy": TilePoint(0.5, 0.5),
                "TNR": TilePoint(0.0, 0.0),
                "TPR": TilePoint(1.0, 1.0),
                "NPV": TilePoint(0.0, 1.0),
                "PPV": TilePoint(1.0, 0.0),
                "F1": TilePoint(1.0, 0.5),
            }
            for name, point in points.items():
                got = canonical_score_value(perf, point)
                assert abs(got - classical[name]) <= 1e-12


def test_criterion_5_flavor_tiles_and_probes(announce, tmp_path):
    with criterion(
        announce,
        "criterion 5: N=16 flavor tiles agree pixel-for-pixel with the "
        "selectors; probe selections at (0.5,0.5) and near (1,1) are as expected",
    ):
        trio = demo_domain_set()
        points = grid_points(16)
        for flavor in FLAVORS:
            tile = flavor_tile(trio, flavor, 16)
            assert np.array_equal(tile.codes, selector_grid(trio, flavor, points, 16))

        doc = dict(TRIO_DOC, points=[[0.5, 0.5], [0.96875, 0.96875]])
        data = cmd_analyze(parse_config(json.dumps(doc)), tmp_path)
        center, corner = data["points"]

        sel = center["selections"]
        assert sel["easiest"]["winner"] == "d1" and sel["easiest"]["tie_set"] == ["d1"]
        assert sel["most_difficult"]["winner"] == "d3"
        assert sel["most_difficult"]["tie_set"] == ["d3"]
        assert sel["bottleneck"]["winner"] == "d3"
        assert sel["bottleneck"]["tie_set"] == ["d3"]
        assert sorted(sel["preponderant"]["tie_set"]) == ["d1", "d2", "d3"]

        sel = corner["selections"]
        assert sel["easiest"]["winner"] == "d1" and sel["easiest"]["tie_set"] == ["d1"]
        assert sel["most_difficult"]["winner"] == "d2"
        assert sel["most_difficult"]["tie_set"] == ["d2"]
        assert sel["preponderant"]["winner"] == "d1"
        assert sel["preponderant"]["tie_set"] == ["d1"]


def test_criterion_6_bottleneck_brute_force(announce):
    with criterion(
        announce,
        "criterion 6: bottleneck selection equals a brute-force ablation "
        "loop (identical tie sets) on 200 random instances in under 2 s",
    ):
        rng = np.random.default_rng(424242)
        start = time.perf_counter()
        for _ in range(200):
            space = random_space(rng)
            domains = random_domain_set(
                rng,
                space,
                n_domains=int(rng.integers(2, 6)),
                allow_zero_weights=False,
            )
            importance = random_importance(rng, space)
            satisfaction = random_variable(rng, space, 0.0, 1.0)
            sel = bottleneck_domain(domains, importance, satisfaction)

            values = []
            for entry in domains:
                rest = [e for e in domains if e.id != entry.id]
                lam = np.array([e.weight for e in rest])
                stacked = np.stack([e.performance.masses for e in rest])
                ablated = (lam[:, None] * stacked).sum(axis=0) / lam.sum()
                num = float(np.dot(ablated, importance.values * satisfaction.values))
                den = float(np.dot(ablated, importance.values))
                values.append(num / den)
            best = max(values)
            expected = tuple(
                e.id for e, v in zip(domains, values) if abs(v - best) <= 1e-9
            )
            assert sel.tie_set == expected
            assert sel.winner == expected[0]
        assert time.perf_counter() - start < 2.0


def test_criterion_7_importance_reparameterization(announce):
    with criterion(
        announce,
        "criterion 7: tie sets unchanged under importance rescaling "
        "(k in {1e-3, 1, 1e3}) and under non-canonical importances sharing (a, b)",
    ):
        rng = np.random.default_rng(7979)
        sat = two_class_satisfaction()
        for _ in range(200):
            domains = random_two_class_set(rng)
            a = float(rng.uniform(0.02, 0.98))
            b = float(rng.uniform(0.02, 0.98))
            canonical = canonical_importance(TilePoint(a, b))
            base = {
                "easiest": easiest_domain(domains, canonical, sat),
                "most_difficult": most_difficult_domain(domains, canonical, sat),
                "preponderant": preponderant_domain(domains, canonical),
                "bottleneck": bottleneck_domain(domains, canonical, sat),
            }
            for factor in (1e-3, 1.0, 1e3):
                scaled = canonical.scaled(factor)
                assert (
                    easiest_domain(domains, scaled, sat).tie_set
                    == base["easiest"].tie_set
                )
                assert (
                    most_difficult_domain(domains, scaled, sat).tie_set
                    == base["most_difficult"].tie_set
                )
                assert (
                    preponderant_domain(domains, scaled).tie_set
                    == base["preponderant"].tie_set
                )
                assert (
                    bottleneck_domain(domains, scaled, sat).tie_set
                    == base["bottleneck"].tie_set
                )

            alpha, beta = rng.uniform(0.2, 5.0, 2)
            shared = Importance.from_values(
                domains.space,
                [alpha * (1.0 - a), beta * (1.0 - b), beta * b, alpha * a],
            )
            recovered = tile_point_from_importance(shared)
            assert abs(recovered.a - a) <= 1e-12 and abs(recovered.b - b) <= 1e-12
            assert (
                easiest_domain(domains, shared, sat).tie_set == base["easiest"].tie_set
            )
            assert (
                most_difficult_domain(domains, shared, sat).tie_set
                == base["most_difficult"].tie_set
            )
            assert (
                bottleneck_domain(domains, shared, sat).tie_set
                == base["bottleneck"].tie_set
            )


def test_criterion_8_tiles_determinism(announce, tmp_path):
    with criterion(
        announce,
        "criterion 8: two tiles runs on the example config produce "
        "byte-identical PNG, SVG, and JSON artifacts",
    ):
        doc = dict(TRIO_DOC, outputs={"formats": ["png", "svg", "json"]})
        config = parse_config(json.dumps(doc))
        first, second = tmp_path / "first", tmp_path / "second"
        cmd_tiles(config, first)
        cmd_tiles(config, second)
        names = sorted(p.name for p in first.iterdir())
        assert names == sorted(p.name for p in second.iterdir())
        assert any(n.endswith(".png") for n in names)
        assert any(n.endswith(".svg") for n in names)
        assert any(n.endswith(".json") for n in names)
        for name in names:
            assert (first / name).read_bytes() == (second / name).read_bytes(), name
