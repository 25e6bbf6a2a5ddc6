import xml.etree.ElementTree as ET

import pytest

from assignbench import BenchConfig, emit_svg_plot, run_suite
from assignbench.bench import BenchRecord
from assignbench.errors import InsufficientDataError

NS = {"svg": "http://www.w3.org/2000/svg"}


def _records(solvers, sizes, base=1000):
    out = []
    for s_idx, s in enumerate(solvers):
        for k in sizes:
            for t in range(3):
                out.append(BenchRecord(s, k, 0, t, 1, 1, base * (s_idx + 1) * k + t, 10))
    return out


def _parse(svg):
    return ET.fromstring(svg)


def test_two_solvers_three_sizes():
    root = _parse(emit_svg_plot(_records(["brute", "hungarian"], [3, 4, 5])))
    assert root.tag.endswith("svg")
    assert len(root.findall(".//svg:polyline", NS)) == 2
    assert len(root.findall(".//svg:g[@class='legend-entry']", NS)) == 2


def test_single_solver():
    root = _parse(emit_svg_plot(_records(["hungarian"], [3, 4])))
    assert len(root.findall(".//svg:polyline", NS)) == 1


def test_all_skipped_solver_omitted():
    recs = _records(["hungarian"], [3, 4]) + [BenchRecord.marker("brute", k, 0, 0, "skipped") for k in (3, 4)]
    root = _parse(emit_svg_plot(recs))
    assert [p.get("data-solver") for p in root.findall(".//svg:polyline", NS)] == ["hungarian"]


def test_median_used():
    recs = [BenchRecord("hungarian", k, 0, t, 0, 0, v, 1)
            for k in (2, 3) for t, v in enumerate([10, 1000, 100])]
    root = _parse(emit_svg_plot(recs))
    dots = root.findall(".//svg:circle", NS)
    assert {d.get("data-median-ns") for d in dots} == {"100"}


@pytest.mark.parametrize("recs", [[], _records(["brute"], [3]),
                                  [BenchRecord.marker("brute", k, 0, 0, "skipped") for k in (3, 4)]])
def test_insufficient_data(recs):
    with pytest.raises(InsufficientDataError):
        emit_svg_plot(recs)


def _point_y(root, solver, k):
    for c in root.findall(".//svg:circle", NS):
        if c.get("data-solver") == solver and c.get("data-k") == str(k):
            return float(c.get("cy"))
    raise KeyError((solver, k))


def test_brute_above_hungarian_at_k10():
    recs = run_suite(BenchConfig(sizes=[3, 10], trials_per_size=1, seed=2, solvers=("brute", "hungarian")))
    root = _parse(emit_svg_plot(recs))
    # SVG y grows downward: "above" means a smaller y
    assert _point_y(root, "brute", 10) < _point_y(root, "hungarian", 10)
