import json

from perfscore.figures import standard_panels, write_figures
from perfscore.optimize import GridSpec


def test_panel_set():
    names = [p.name for p in standard_panels()]
    assert names == [
        "fig1a_drift_c1", "fig1b_reversion_c1",
        "fig2_drift_c0.01", "fig2_drift_c1", "fig2_drift_c10",
        "fig3_reversion_c0.01", "fig3_reversion_c1", "fig3_reversion_c10",
        "fig4_drift_alpha0.1", "fig4_drift_alpha0.5", "fig4_drift_alpha0.9",
    ]
    assert all(p.config.audit.q == 2.0 for p in standard_panels())


def test_manifest_lists_outputs(tmp_path):
    manifest = write_figures(tmp_path, GridSpec(points=101), "both")
    data = json.loads(manifest.read_text())
    assert len(data["panels"]) == 11
    for entry in data["panels"]:
        assert (tmp_path / entry["csv"]).exists() and (tmp_path / entry["svg"]).exists()
        assert entry["rows"] == 3 * 99
        assert entry["config"]["grid"]["points"] == 101


def test_format_selection(tmp_path):
    write_figures(tmp_path, GridSpec(points=51), "svg")
    assert not list(tmp_path.glob("*.csv"))
    assert len(list(tmp_path.glob("*.svg"))) == 11
