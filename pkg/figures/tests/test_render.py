"""Rendering is deterministic and refuses incomplete inputs."""

import pytest

from figures.cli import main
from figures.panels import (
    render_phase_figure,
    render_scan_figure,
    render_trace_figure,
    render_truth_table_figure,
)
from figures.schema import SchemaError
from tests.conftest import write_scan, write_trace


class TestRenderers:
    def test_scan_figure(self, tmp_path, scan_csv):
        b0 = write_scan(tmp_path / "b0.csv", center=0.119)
        b35 = write_scan(tmp_path / "b35.csv", center=0.1191)
        out = render_scan_figure(tmp_path / "fig2.png", scan_csv, b0, b35)
        assert out.stat().st_size > 1000

    def test_trace_figure(self, tmp_path, trace_csv):
        out = render_trace_figure(tmp_path / "fig3.png", trace_csv)
        assert out.exists()

    def test_phase_figure(self, tmp_path, trace_csv):
        other = write_trace(tmp_path / "other.csv")
        out = render_phase_figure(
            tmp_path / "fig4.svg",
            {"r_rp_rpp": trace_csv, "r_g_rpp": other},
        )
        assert out.exists()

    def test_truth_table_figure(self, tmp_path, truth_json):
        out = render_truth_table_figure(tmp_path / "fig5.png", truth_json)
        assert out.exists()

    def test_unsupported_format_rejected(self, tmp_path, trace_csv):
        with pytest.raises(ValueError):
            render_trace_figure(tmp_path / "fig3.pdf", trace_csv)

    def test_empty_input_renders_nothing(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("t,population,phase,fraction,norm\n")
        with pytest.raises(SchemaError):
            render_trace_figure(tmp_path / "fig.png", empty)
        assert not (tmp_path / "fig.png").exists()


class TestByteStability:
    @pytest.mark.parametrize("suffix", ["png", "svg"])
    def test_same_inputs_same_bytes(self, tmp_path, trace_csv, suffix):
        a = render_trace_figure(tmp_path / f"a.{suffix}", trace_csv)
        b = render_trace_figure(tmp_path / f"b.{suffix}", trace_csv)
        assert a.read_bytes() == b.read_bytes()

    def test_truth_table_stable(self, tmp_path, truth_json):
        a = render_truth_table_figure(tmp_path / "a.png", truth_json)
        b = render_truth_table_figure(tmp_path / "b.png", truth_json)
        assert a.read_bytes() == b.read_bytes()


class TestCli:
    def test_trace_subcommand(self, tmp_path, trace_csv):
        out = tmp_path / "fig3.png"
        assert main(["trace", "--trace", str(trace_csv), "--out", str(out)]) == 0
        assert out.exists()

    def test_schema_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("nope\n")
        assert main(["trace", "--trace", str(bad), "--out", str(tmp_path / "x.png")]) == 3

    def test_phases_requires_a_pattern(self, tmp_path):
        assert main(["phases", "--out", str(tmp_path / "x.png")]) == 2
