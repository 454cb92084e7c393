import json
import shutil

import pytest

from tokscope import (
    distillation_delta,
    load_distribution,
    load_manifest,
    load_vocabulary,
    metrics_report,
    quantization_sweep,
    run_comparison,
)
from tokscope.compare import COMPARISON_COLUMNS
from tokscope.datafiles import published_table, published_table_names
from tokscope.errors import InsufficientRows, ManifestError

from conftest import FIXTURES


@pytest.fixture
def fixture_dir(tmp_path):
    """Copy of the static fixtures so tests can mutate manifests safely."""
    dst = tmp_path / "fixtures"
    shutil.copytree(FIXTURES, dst)
    return dst


def _analysis_args(bundle):
    return bundle["union"], bundle["words"], bundle["symbols"].characters


class TestManifest:
    def test_load(self, fixture_dir):
        manifest = load_manifest(fixture_dir / "manifest.json")
        assert [e.model_id for e in manifest.entries] == ["fx-base", "fx-distill", "fx-top2"]
        assert manifest.entries[0].vocab_path.exists()

    def test_duplicate_model_id(self, fixture_dir):
        doc = json.loads((fixture_dir / "manifest.json").read_text())
        doc.append(dict(doc[0]))
        bad = fixture_dir / "dup.json"
        bad.write_text(json.dumps(doc))
        with pytest.raises(ManifestError):
            load_manifest(bad)

    def test_missing_vocab_file(self, fixture_dir):
        doc = json.loads((fixture_dir / "manifest.json").read_text())
        doc[0]["vocab_path"] = "nonexistent.json"
        bad = fixture_dir / "badvocab.json"
        bad.write_text(json.dumps(doc))
        with pytest.raises(ManifestError):
            load_manifest(bad)

    def test_unknown_variant(self, fixture_dir):
        doc = json.loads((fixture_dir / "manifest.json").read_text())
        doc[0]["variant"] = "mystery"
        bad = fixture_dir / "badvariant.json"
        bad.write_text(json.dumps(doc))
        with pytest.raises(ManifestError):
            load_manifest(bad)


class TestComparison:
    def test_three_row_shape(self, fixture_dir, bundle):
        manifest = load_manifest(fixture_dir / "manifest.json")
        table = run_comparison(manifest, *_analysis_args(bundle))
        assert table.columns == COMPARISON_COLUMNS
        assert len(table.rows) == 3
        assert all(row.metrics is not None for row in table.rows)

    def test_row_equals_standalone_report(self, fixture_dir, bundle):
        manifest = load_manifest(fixture_dir / "manifest.json")
        table = run_comparison(manifest, *_analysis_args(bundle))
        vocab = load_vocabulary(fixture_dir / "tiny_vocab.json")
        dist = load_distribution(fixture_dir / "dump_base.json", vocab)
        standalone = metrics_report(dist, vocab, *_analysis_args(bundle))
        row = table.rows[0].metrics
        assert (row.pkp, row.stp, row.kap, row.stap, row.nlp) == (
            standalone.pkp, standalone.stp, standalone.kap,
            standalone.stap, standalone.nlp,
        )
        assert row.top_keywords == standalone.top_keywords
        assert row.formatting == standalone.formatting

    def test_row_level_failure_isolation(self, fixture_dir, bundle):
        doc = json.loads((fixture_dir / "manifest.json").read_text())
        doc[1]["dump_path"] = "missing_dump.json"
        bad = fixture_dir / "broken.json"
        bad.write_text(json.dumps(doc))
        table = run_comparison(load_manifest(bad), *_analysis_args(bundle))
        assert len(table.rows) == 3
        good = [row for row in table.rows if row.metrics is not None]
        failed = [row for row in table.rows if row.error]
        assert len(good) == 2
        assert len(failed) == 1
        assert failed[0].entry.model_id == "fx-distill"

    def test_dumpless_row_stays_blank(self, fixture_dir, bundle):
        doc = json.loads((fixture_dir / "manifest.json").read_text())
        del doc[2]["dump_path"]
        path = fixture_dir / "partial.json"
        path.write_text(json.dumps(doc))
        table = run_comparison(load_manifest(path), *_analysis_args(bundle))
        last = table.rows[2]
        assert last.metrics is None
        assert last.error is None


class TestDelta:
    def test_published_magnitude_pair(self, fixture_dir, bundle):
        # pkp 0.143 -> 0.0042 is a 97.1% relative reduction
        manifest = load_manifest(fixture_dir / "manifest.json")
        table = run_comparison(manifest, *_analysis_args(bundle))
        base = table.rows[0].metrics
        from dataclasses import replace

        synthetic_base = replace(base, pkp=0.143)
        synthetic_distilled = replace(base, model_id="distilled", pkp=0.0042)
        delta = distillation_delta(synthetic_base, synthetic_distilled)
        assert round(delta.metrics["pkp"]["relative_pct"], 1) == -97.1

    def test_identical_reports_zero_delta(self, fixture_dir, bundle):
        manifest = load_manifest(fixture_dir / "manifest.json")
        table = run_comparison(manifest, *_analysis_args(bundle))
        report = table.rows[0].metrics
        delta = distillation_delta(report, report)
        for cell in delta.metrics.values():
            assert cell["absolute"] == 0
            assert cell["relative_pct"] == 0
        assert delta.top_keyword_jaccard == 1.0

    def test_zero_base_reports_absent_relative(self, fixture_dir, bundle):
        from dataclasses import replace

        manifest = load_manifest(fixture_dir / "manifest.json")
        table = run_comparison(manifest, *_analysis_args(bundle))
        base = replace(table.rows[0].metrics, pkp=0.0)
        delta = distillation_delta(base, table.rows[1].metrics)
        assert delta.metrics["pkp"]["relative_pct"] is None
        assert delta.metrics["pkp"]["absolute"] is not None

    def test_absolute_delta_antisymmetry(self, fixture_dir, bundle):
        manifest = load_manifest(fixture_dir / "manifest.json")
        table = run_comparison(manifest, *_analysis_args(bundle))
        a, b = table.rows[0].metrics, table.rows[1].metrics
        forward = distillation_delta(a, b)
        backward = distillation_delta(b, a)
        for name in forward.metrics:
            assert forward.metrics[name]["absolute"] == pytest.approx(
                -backward.metrics[name]["absolute"], abs=1e-15
            )


class TestSweep:
    def test_reference_and_nearest(self, fixture_dir, bundle):
        manifest = load_manifest(fixture_dir / "sweep_manifest.json")
        table = run_comparison(manifest, *_analysis_args(bundle))
        summary = quantization_sweep(table)
        assert summary.reference == "fxq-ref"
        # the Q8_0 dump is bit-identical to the reference dump
        assert summary.nearest == "Q8_0"
        assert summary.distances["Q8_0"] == 0.0

    def test_threshold_flags(self, fixture_dir, bundle):
        manifest = load_manifest(fixture_dir / "sweep_manifest.json")
        table = run_comparison(manifest, *_analysis_args(bundle))
        summary = quantization_sweep(table, stp_threshold=0.4)
        assert "Q2_K" in summary.flagged
        assert "Q4_K_S" not in summary.flagged

    def test_insufficient_rows(self, fixture_dir, bundle):
        doc = json.loads((fixture_dir / "sweep_manifest.json").read_text())
        path = fixture_dir / "single.json"
        path.write_text(json.dumps(doc[:2]))
        table = run_comparison(load_manifest(path), *_analysis_args(bundle))
        with pytest.raises(InsufficientRows):
            quantization_sweep(table)

    def test_trajectories_in_manifest_order(self, fixture_dir, bundle):
        manifest = load_manifest(fixture_dir / "sweep_manifest.json")
        table = run_comparison(manifest, *_analysis_args(bundle))
        summary = quantization_sweep(table)
        assert [label for label, _ in summary.trajectories["stp"]] == [
            "Q8_0", "Q4_K_S", "Q2_K",
        ]

    def test_explicit_reference(self, fixture_dir, bundle):
        manifest = load_manifest(fixture_dir / "sweep_manifest.json")
        table = run_comparison(manifest, *_analysis_args(bundle))
        summary = quantization_sweep(table, reference_id="fxq-q8")
        assert summary.reference == "fxq-q8"
        assert "Q8_0" not in summary.distances


class TestPublishedTables:
    def test_every_bundled_table_loads(self):
        names = published_table_names()
        assert set(names) >= {
            "charset_proportions",
            "coldstart_stats_distill",
            "coldstart_stats_qwen_family",
            "formatting_probs",
            "keyword_coverage",
        }
        for name in names:
            table = published_table(name)
            assert table["rows"]
            assert len(table["columns"]) == len(table["keys"])
            for row in table["rows"]:
                for key in table["keys"]:
                    assert key in row

    def test_unknown_table(self):
        with pytest.raises(FileNotFoundError):
            published_table("nope")
