import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pytest

from lexfig.charts import REQUIRED_COLUMNS, band_series, draw_band_chart, read_summary

from conftest import SUMMARY_HEADER, SUMMARY_ROWS


def test_read_summary_returns_row_dicts(summary_csv):
    rows = read_summary(summary_csv)
    assert len(rows) == len(SUMMARY_ROWS)
    assert rows[1] == {
        "nodes": "60",
        "algo": "ls",
        "params": "",
        "metric": "search_ms",
        "mean": "5.5",
        "p10": "1.0",
        "p90": "9.0",
    }


@pytest.mark.parametrize("col", REQUIRED_COLUMNS)
def test_read_summary_names_missing_column(tmp_path, col):
    header = ",".join(c for c in SUMMARY_HEADER.split(",") if c != col)
    path = tmp_path / "bad.csv"
    path.write_text(header + "\n")
    with pytest.raises(ValueError, match=repr(col)):
        read_summary(path)


def test_band_series_is_the_files_numbers(summary_csv):
    """The chart plots the file's cells verbatim, not recomputations."""
    series = band_series(read_summary(summary_csv), "search_ms")
    nodes, mean, p10, p90 = series[("ls", "")]
    assert nodes == (60, 120)
    assert mean == (5.5, 7.25)
    assert p10 == (1.0, 3.0)
    assert p90 == (9.0, 11.0)


def test_band_series_float_cells_survive_bitwise(summary_csv):
    series = band_series(read_summary(summary_csv), "cost_2")
    nodes, mean, p10, p90 = series[("ls", "")]
    assert mean == (0.30000000000000004,)
    assert p10 == (5.551115123125783e-17,)
    assert p90 == (64.25,)


def test_band_series_sorts_by_nodes(summary_csv):
    # the 120-node row comes first in the file
    series = band_series(read_summary(summary_csv), "search_ms")
    for nodes, _, _, _ in series.values():
        assert list(nodes) == sorted(nodes)


def test_band_series_groups_by_algo_and_params(summary_csv):
    series = band_series(read_summary(summary_csv), "search_ms")
    assert set(series) == {("ls", ""), ("ws", "alpha=0.5")}


def test_band_series_algo_filter(summary_csv):
    series = band_series(read_summary(summary_csv), "search_ms", algos=["ws"])
    assert set(series) == {("ws", "alpha=0.5")}


def test_band_series_unknown_metric_lists_available(summary_csv):
    with pytest.raises(ValueError) as err:
        band_series(read_summary(summary_csv), "cost_9")
    msg = str(err.value)
    assert "cost_9" in msg
    assert "search_ms" in msg and "cost_1" in msg


def test_band_series_empty_after_filter_raises(summary_csv):
    with pytest.raises(ValueError):
        band_series(read_summary(summary_csv), "search_ms", algos=["egs"])


def test_single_row_gives_single_point_degenerate_band(tmp_path):
    path = tmp_path / "one.csv"
    path.write_text(SUMMARY_HEADER + "\n" + "80,ls,,cost_1,2.0,2.0,2.0\n")
    series = band_series(read_summary(path), "cost_1")
    assert series == {("ls", ""): ((80,), (2.0,), (2.0,), (2.0,))}
    fig, ax = plt.subplots()
    try:
        draw_band_chart(ax, series, "cost_1")
        assert tuple(ax.lines[0].get_xdata()) == (80,)
    finally:
        plt.close(fig)


def test_draw_band_chart_one_line_per_series(summary_csv):
    series = band_series(read_summary(summary_csv), "search_ms")
    fig, ax = plt.subplots()
    try:
        draw_band_chart(ax, series, "search_ms")
        assert len(ax.lines) == len(series)
        labels = [t.get_text() for t in ax.get_legend().get_texts()]
        assert labels == ["ls", "ws alpha=0.5"]
        assert ax.get_xlabel() == "roadmap size (nodes)"
        assert ax.get_ylabel() == "search_ms"
    finally:
        plt.close(fig)


def test_draw_band_chart_band_matches_line_color(summary_csv):
    series = band_series(read_summary(summary_csv), "search_ms")
    fig, ax = plt.subplots()
    try:
        draw_band_chart(ax, series, "search_ms")
        from matplotlib.colors import to_rgba

        for line, band in zip(ax.lines, ax.collections):
            facecolor = tuple(band.get_facecolor()[0])
            assert facecolor == to_rgba(line.get_color(), alpha=0.25)
    finally:
        plt.close(fig)
