import json
from pathlib import Path

import pytest

from probelab import ProbeArena, Trace, replay_trace
from probelab.cli import main
from probelab.errors import InvalidParams, UnsupportedOp
from probelab.instances import IncParams, IncrementalInstance, appendix_rounds
from probelab.runner import parse_structure_id


class TestRunner:
    def test_lf_general_passes_incremental_trace(self):
        params = IncParams.derive(64, B=4, C=2, M=4, depth=2)
        trace = IncrementalInstance(params, seed=1).trace()
        report = replay_trace(trace, "lf-general", collect_rows=True)
        assert report.ok
        assert report.total_probes > 0
        assert report.rows
        # epoch tags recorded with closed spans
        assert set(report.tag_spans) >= {"1", "2", "mq:0"}
        for spans in report.tag_spans.values():
            assert all(t1 is not None for _, t1 in spans)

    def test_naive_passes_any_trace(self):
        params = IncParams.derive(64, B=4, C=2, M=4, depth=2)
        trace = IncrementalInstance(params, seed=2).trace()
        assert replay_trace(trace, "naive").ok
        assert replay_trace(appendix_rounds(32, 3, seed=0), "naive").ok

    def test_uf_rejects_nonroot_links(self):
        trace = Trace(ops=[("L", 0, 1), ("L", 1, 2)])  # 1 loses its root status
        with pytest.raises(UnsupportedOp):
            replay_trace(trace, "uf-amortized", n_nodes=4)

    def test_uf_accepts_root_links(self):
        trace = Trace(ops=[("L", 0, 1), ("L", 0, 2), ("Q", 1, 2, 1),
                           ("Q", 1, 3, 0)])
        report = replay_trace(trace, "uf-amortized", n_nodes=4)
        assert report.ok

    def test_lf_rejects_edge_deletions(self):
        trace = Trace(ops=[("I", 0, 1), ("D", 0, 1)])
        with pytest.raises(UnsupportedOp):
            replay_trace(trace, "lf-general", n_nodes=4)

    def test_expectation_failures_recorded(self):
        trace = Trace(ops=[("L", 0, 1), ("Q", 0, 1, 0)])  # truly connected
        report = replay_trace(trace, "lf-general", n_nodes=4)
        assert not report.ok
        assert report.failures[0]["index"] == 1

    def test_strict_replay_raises(self):
        from probelab.errors import ExpectationFailed
        trace = Trace(ops=[("L", 0, 1), ("Q", 0, 1, 0)])
        with pytest.raises(ExpectationFailed):
            replay_trace(trace, "lf-general", n_nodes=4, strict=True)

    def test_structure_id_parsing(self):
        assert parse_structure_id("uf-worstcase:8") == ("uf-worstcase", {"k": 8})
        with pytest.raises(InvalidParams):
            parse_structure_id("uf-worstcase")
        with pytest.raises(InvalidParams):
            parse_structure_id("lf-general:3")
        with pytest.raises(InvalidParams):
            parse_structure_id("wat")

    def test_run_csv_schema(self):
        trace = Trace(ops=[("L", 0, 1), ("F", 0, None)])
        report = replay_trace(trace, "lf-general", collect_rows=True)
        lines = list(report.csv_lines())
        assert lines[0] == "# schema: probelab-run-v1"
        assert lines[1].startswith("index,kind,")
        assert len(lines) == 4


class TestCli:
    def test_gen_run_stats_pipeline(self, tmp_path):
        out = tmp_path / "inc.trace"
        rc = main(["gen", "inc", "--n", "64", "--params",
                   '{"B": 4, "C": 2, "M": 4, "depth": 2}',
                   "--seed", "5", "--out", str(out)])
        assert rc == 0
        assert out.exists()
        assert Path(str(out) + ".params.json").exists()
        assert Path(str(out) + ".truth.json").exists()

        # determinism: regenerating gives byte-identical traces
        text1 = out.read_text()
        main(["gen", "inc", "--n", "64", "--params",
              '{"B": 4, "C": 2, "M": 4, "depth": 2}',
              "--seed", "5", "--out", str(out)])
        assert out.read_text() == text1

        csv_out = tmp_path / "run.csv"
        rc = main(["run", "--trace", str(out), "--structure", "lf-general",
                   "--out", str(csv_out)])
        assert rc == 0
        assert csv_out.read_text().startswith("# schema: probelab-run-v1")

        stats_out = tmp_path / "epochs.csv"
        rc = main(["stats", "--trace", str(out), "--structure", "lf-general",
                   "--out", str(stats_out)])
        assert rc == 0
        body = stats_out.read_text().splitlines()
        assert body[0] == "# schema: probelab-epochs-v1"
        assert len(body) == 2 + 2  # schema + header + one row per epoch

    def test_stats_dyn_emits_timeline_charges(self, tmp_path):
        out = tmp_path / "dyn.trace"
        main(["gen", "dyn", "--n", "36", "--params",
              '{"M": 4, "cols": 9, "C": 2}', "--seed", "3",
              "--out", str(out)])
        charges_out = tmp_path / "charges.csv"
        rc = main(["stats", "--trace", str(out), "--structure", "naive",
                   "--out", str(charges_out)])
        assert rc == 0
        lines = charges_out.read_text().splitlines()
        assert lines[0] == "# schema: probelab-charges-v1"
        assert len(lines) == 2 + 7  # internal nodes of an 8-leaf tree

    def test_gen_dyn_invalid_params_exit_code(self, tmp_path):
        rc = main(["gen", "dyn", "--n", "64", "--params",
                   '{"M": 4, "cols": 8}', "--out", str(tmp_path / "x.trace")])
        assert rc == 1

    def test_gen_appendix(self, tmp_path):
        out = tmp_path / "app.trace"
        rc = main(["gen", "appendix", "--n", "64", "--rounds", "3",
                   "--seed", "1", "--out", str(out)])
        assert rc == 0
        rc = main(["run", "--trace", str(out), "--structure", "lf-general"])
        assert rc == 0

    def test_run_expectation_failure_exit_code(self, tmp_path):
        out = tmp_path / "bad.trace"
        Trace(ops=[("L", 0, 1), ("Q", 0, 1, 0)]).write(out)
        rc = main(["run", "--trace", str(out), "--structure", "lf-general"])
        assert rc == 2

    def test_game_subcommand(self, tmp_path):
        out = tmp_path / "inc.trace"
        main(["gen", "inc", "--n", "64", "--params",
              '{"B": 4, "C": 2, "M": 4, "depth": 2}',
              "--seed", "6", "--out", str(out)])
        game_out = tmp_path / "game.json"
        rc = main(["game", "--trace", str(out), "--structure", "lf-general",
                   "--tags-a", "1", "--tags-b", "mq:0",
                   "--protocol", "bloom", "--p", "0.0625",
                   "--out", str(game_out)])
        assert rc == 0
        payload = json.loads(game_out.read_text())
        assert payload["answer"] is True
        assert payload["total_bits"] > 0

        rc = main(["game", "--trace", str(out), "--structure", "lf-general",
                   "--tags-a", "1", "--tags-b", "mq:0",
                   "--protocol", "nondet", "--out", str(game_out)])
        assert rc == 0
        payload = json.loads(game_out.read_text())
        assert payload["accept_a"] and payload["accept_b"]

    def test_gen_run_pipeline_reproducible_byte_for_byte(self, tmp_path):
        outs = []
        for tag in ("a", "b"):
            trace = tmp_path / f"{tag}.trace"
            run_csv = tmp_path / f"{tag}.csv"
            main(["gen", "inc", "--n", "64", "--params",
                  '{"B": 4, "C": 2, "M": 4, "depth": 2}',
                  "--seed", "11", "--out", str(trace)])
            main(["run", "--trace", str(trace), "--structure", "lf-general",
                  "--out", str(run_csv)])
            outs.append((trace.read_text(), run_csv.read_text()))
        assert outs[0] == outs[1]

    def test_report_suites(self, tmp_path):
        out = tmp_path / "tradeoff.csv"
        rc = main(["report", "tradeoff", "--n-exponents", "8",
                   "--ks", "2", "8", "--out", str(out)])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "# schema: probelab-tradeoff-v1"
        assert len(lines) == 4

        out2 = tmp_path / "amortized.csv"
        rc = main(["report", "amortized", "--n-exponents", "8",
                   "--out", str(out2)])
        assert rc == 0
        assert out2.read_text().startswith("# schema: probelab-amortized-v1")
